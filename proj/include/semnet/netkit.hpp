#pragma once
// Single-relational network analysis: geodesics, centralities, random-walk
// rankings, spreading activation and assortative mixing.
//
// Everything here is read-only over a Graph and safe to call concurrently.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semnet/graph.hpp"

namespace semnet::netkit {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct RankVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double sum() const;
};

struct GeodesicSummary {
  std::vector<std::uint32_t> eccentricities;
  std::uint32_t radius = 0;
  std::uint32_t diameter = 0;
};

// Hop counts from source; kUnreachable where no directed path exists.
std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source);

// nullopt when j is unreachable from i. Throws LookupError on bad indices.
std::optional<std::uint32_t> shortest_path_length(const Graph& g, VertexId i, VertexId j);

// Throws StructureError (naming an unreachable ordered pair) unless g is
// non-empty and strongly connected.
void require_strongly_connected(const Graph& g);
bool is_strongly_connected(const Graph& g);
// gcd of all cycle lengths of a strongly connected graph.
std::uint32_t period(const Graph& g);

GeodesicSummary geodesic_summary(const Graph& g);

// c(i) = 1 / sum_j s(i,j). Requires strong connectivity and n >= 2.
RankVector closeness(const Graph& g);

// b(i) = sum over ordered pairs (j,k), j != i != k, of the fraction of j->k
// geodesics passing through i.
RankVector betweenness(const Graph& g);

struct PowerIteration {
  double tol = 1e-10;
  std::size_t max_iter = 100'000;
};

// Stationary distribution of the uniform random walk. Requires every vertex
// to have an out-edge and the graph to be strongly connected and aperiodic.
RankVector stationary_distribution(const Graph& g, const PowerIteration& params = {});

// PageRank with teleport probability 1 - alpha; rank sinks jump uniformly.
RankVector pagerank(const Graph& g, double alpha = 0.85, const PowerIteration& params = {});

// L1 residual |pi C - pi| of a candidate PageRank vector.
double pagerank_residual(const Graph& g, double alpha, const RankVector& pi);

// Accumulates decayed energy: for t = 1..steps { pi += x; x = (delta x) A }.
// A is row-stochastic with all-zero rows at rank sinks. Not normalized.
RankVector spreading_activation(const Graph& g, const std::map<VertexId, double>& seeds,
                                std::size_t steps, double delta);

// Pearson correlation between tail and head values over all edges.
double assortativity_scalar(const Graph& g, const std::map<VertexId, double>& values);

// (sum_p e_pp - sum_p a_p b_p) / (1 - sum_p a_p b_p) with edge fractions.
double assortativity_nominal(const Graph& g, const std::map<VertexId, std::string>& labels);

// CSV rows "vertex,value" and a JSON object keyed by vertex.
std::string to_csv(const Graph& g, const RankVector& rank);
std::string to_json(const Graph& g, const RankVector& rank);
std::string to_csv(const Graph& g, const GeodesicSummary& summary);
std::string to_json(const Graph& g, const GeodesicSummary& summary);

}  // namespace semnet::netkit
