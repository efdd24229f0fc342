#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semnet/term.hpp"

namespace semnet {

class TripleStore;

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Directed graph in compressed sparse row form. Parallel identical edges are
// collapsed; successor lists are sorted.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<Term> vertices, std::vector<Edge> edges);

  // Vertices labelled urn:v:0 ... urn:v:{n-1}; handy for synthetic graphs.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const VertexId> successors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  const Term& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<Term>& vertices() const noexcept { return vertices_; }
  std::optional<VertexId> index_of(const Term& t) const;

  // All edges in (source, target) order.
  std::vector<Edge> edges() const;
  Graph reversed() const;

 private:
  std::vector<Term> vertices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::unordered_map<Term, VertexId, TermHash> index_;
};

// One vertex per distinct subject/object of triples using `predicate`,
// numbered in sorted term order; one edge per triple. Triples with literal
// objects are dropped unless include_literals is set.
Graph graph_from_store(const TripleStore& store, const Term& predicate,
                       bool include_literals = false);

}  // namespace semnet
