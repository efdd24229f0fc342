#include "semnet/netkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "csv.hpp"
#include "json.hpp"
#include "semnet/error.hpp"

namespace semnet::netkit {

double RankVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

namespace {

void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.vertex_count())
    throw LookupError("vertex index " + std::to_string(v) + " out of range [0, " +
                      std::to_string(g.vertex_count()) + ")");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

void normalize(std::vector<double>& v) {
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Graph& g, VertexId source) {
  check_vertex(g, source);
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    for (VertexId v : g.successors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::optional<std::uint32_t> shortest_path_length(const Graph& g, VertexId i, VertexId j) {
  check_vertex(g, j);
  auto d = bfs_distances(g, i)[j];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

bool is_strongly_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  auto fwd = bfs_distances(g, 0);
  auto bwd = bfs_distances(g.reversed(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (fwd[v] == kUnreachable || bwd[v] == kUnreachable) return false;
  return true;
}

void require_strongly_connected(const Graph& g) {
  if (g.vertex_count() == 0) throw StructureError("graph is empty");
  auto fwd = bfs_distances(g, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (fwd[v] == kUnreachable)
      throw StructureError("graph is not strongly connected: no path from " +
                           g.vertex(0).display() + " to " + g.vertex(v).display());
  auto bwd = bfs_distances(g.reversed(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (bwd[v] == kUnreachable)
      throw StructureError("graph is not strongly connected: no path from " +
                           g.vertex(v).display() + " to " + g.vertex(0).display());
}

std::uint32_t period(const Graph& g) {
  require_strongly_connected(g);
  auto level = bfs_distances(g, 0);
  std::int64_t p = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.successors(u))
      p = std::gcd(p, static_cast<std::int64_t>(level[u]) + 1 - static_cast<std::int64_t>(level[v]));
  return static_cast<std::uint32_t>(std::abs(p));
}

GeodesicSummary geodesic_summary(const Graph& g) {
  require_strongly_connected(g);
  GeodesicSummary out;
  out.eccentricities.resize(g.vertex_count());
  for (VertexId i = 0; i < g.vertex_count(); ++i) {
    auto d = bfs_distances(g, i);
    out.eccentricities[i] = *std::max_element(d.begin(), d.end());
  }
  out.radius = *std::min_element(out.eccentricities.begin(), out.eccentricities.end());
  out.diameter = *std::max_element(out.eccentricities.begin(), out.eccentricities.end());
  return out;
}

RankVector closeness(const Graph& g) {
  require_strongly_connected(g);
  if (g.vertex_count() < 2) throw DegenerateError("closeness needs at least two vertices");
  RankVector out;
  out.values.resize(g.vertex_count());
  for (VertexId i = 0; i < g.vertex_count(); ++i) {
    auto d = bfs_distances(g, i);
    std::uint64_t total = 0;
    for (auto x : d) total += x;
    out.values[i] = 1.0 / static_cast<double>(total);
  }
  return out;
}

RankVector betweenness(const Graph& g) {
  require_strongly_connected(g);
  const std::size_t n = g.vertex_count();
  RankVector out;
  out.values.assign(n, 0.0);

  std::vector<std::uint32_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<VertexId> order;
  order.reserve(n);

  // Brandes: one BFS per source, dependencies accumulated in reverse BFS order.
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      VertexId u = order[head];
      for (VertexId v : g.successors(u)) {
        if (dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          order.push_back(v);
        }
        if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
      }
    }
    for (std::size_t idx = order.size(); idx-- > 0;) {
      VertexId w = order[idx];
      for (VertexId v : g.successors(w)) {
        if (dist[v] == dist[w] + 1) delta[w] += sigma[w] / sigma[v] * (1.0 + delta[v]);
      }
      if (w != s) out.values[w] += delta[w];
    }
  }
  return out;
}

RankVector stationary_distribution(const Graph& g, const PowerIteration& params) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw StructureError("graph is empty");
  for (VertexId v = 0; v < n; ++v)
    if (g.out_degree(v) == 0)
      throw StructureError("rank sink " + g.vertex(v).display() +
                           " has no outgoing edges; stationary distribution undefined");
  if (auto p = period(g); p != 1)
    throw StructureError("graph is periodic (period " + std::to_string(p) +
                         "); stationary distribution is not unique");

  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < params.max_iter; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (VertexId u = 0; u < n; ++u) {
      const double share = pi[u] / static_cast<double>(g.out_degree(u));
      for (VertexId v : g.successors(u)) next[v] += share;
    }
    if (l1(next, pi) < params.tol) return RankVector{std::move(pi)};
    normalize(next);
    std::swap(pi, next);
  }
  throw ConvergenceError("stationary distribution did not converge in " +
                         std::to_string(params.max_iter) + " iterations");
}

namespace {

// pi C for C = alpha A + (1 - alpha) B, with rank-sink rows of A uniform.
// B is never materialized: its contribution is a scalar spread.
void pagerank_step(const Graph& g, double alpha, const std::vector<double>& pi,
                   std::vector<double>& next) {
  const std::size_t n = g.vertex_count();
  const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  double sink_mass = 0.0;
  std::fill(next.begin(), next.end(), 0.0);
  for (VertexId u = 0; u < n; ++u) {
    const std::size_t deg = g.out_degree(u);
    if (deg == 0) {
      sink_mass += pi[u];
      continue;
    }
    const double share = alpha * pi[u] / static_cast<double>(deg);
    for (VertexId v : g.successors(u)) next[v] += share;
  }
  const double spread = (alpha * sink_mass + (1.0 - alpha) * total) / static_cast<double>(n);
  for (double& x : next) x += spread;
}

}  // namespace

RankVector pagerank(const Graph& g, double alpha, const PowerIteration& params) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  const std::size_t n = g.vertex_count();
  if (n == 0) throw StructureError("graph is empty");

  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < params.max_iter; ++it) {
    pagerank_step(g, alpha, pi, next);
    if (l1(next, pi) < params.tol) return RankVector{std::move(pi)};
    normalize(next);
    std::swap(pi, next);
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(params.max_iter) +
                         " iterations");
}

double pagerank_residual(const Graph& g, double alpha, const RankVector& pi) {
  std::vector<double> next(g.vertex_count());
  pagerank_step(g, alpha, pi.values, next);
  return l1(next, pi.values);
}

RankVector spreading_activation(const Graph& g, const std::map<VertexId, double>& seeds,
                                std::size_t steps, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  const std::size_t n = g.vertex_count();
  std::vector<double> x(n, 0.0), pi(n, 0.0), next(n);
  for (const auto& [v, energy] : seeds) {
    check_vertex(g, v);
    if (!(energy >= 0.0)) throw ConfigError("seed energies must be non-negative");
    x[v] = energy;
  }
  for (std::size_t t = 1; t <= steps; ++t) {
    for (std::size_t i = 0; i < n; ++i) pi[i] += x[i];
    std::fill(next.begin(), next.end(), 0.0);
    for (VertexId u = 0; u < n; ++u) {
      const std::size_t deg = g.out_degree(u);
      if (deg == 0 || x[u] == 0.0) continue;  // energy leaks at sinks
      const double share = delta * x[u] / static_cast<double>(deg);
      for (VertexId v : g.successors(u)) next[v] += share;
    }
    std::swap(x, next);
  }
  return RankVector{std::move(pi)};
}

double assortativity_scalar(const Graph& g, const std::map<VertexId, double>& values) {
  const auto edges = g.edges();
  if (edges.size() < 2) throw DegenerateError("assortativity needs at least two edges");
  std::vector<double> tail, head;
  tail.reserve(edges.size());
  head.reserve(edges.size());
  auto value_of = [&](VertexId v) {
    auto it = values.find(v);
    if (it == values.end()) throw ConfigError("no value for vertex " + g.vertex(v).display());
    return it->second;
  };
  for (const auto& [u, v] : edges) {
    tail.push_back(value_of(u));
    head.push_back(value_of(v));
  }
  // Centered form of the raw-sum Pearson expression (identical after
  // dividing numerator and denominator by |E|^2), which cancels less.
  const double m = static_cast<double>(edges.size());
  const double mj = std::accumulate(tail.begin(), tail.end(), 0.0) / m;
  const double mk = std::accumulate(head.begin(), head.end(), 0.0) / m;
  double sjk = 0.0, sjj = 0.0, skk = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double dj = tail[i] - mj, dk = head[i] - mk;
    sjk += dj * dk;
    sjj += dj * dj;
    skk += dk * dk;
  }
  if (sjj == 0.0 || skk == 0.0)
    throw DegenerateError("assortativity undefined: endpoint values have zero variance");
  return sjk / std::sqrt(sjj * skk);
}

double assortativity_nominal(const Graph& g, const std::map<VertexId, std::string>& labels) {
  const auto edges = g.edges();
  if (edges.empty()) throw DegenerateError("assortativity needs at least one edge");
  auto label_of = [&](VertexId v) -> const std::string& {
    auto it = labels.find(v);
    if (it == labels.end()) throw ConfigError("no label for vertex " + g.vertex(v).display());
    return it->second;
  };
  std::map<std::string, double> e, a, b;
  for (const auto& [u, v] : edges) {
    const std::string& lu = label_of(u);
    const std::string& lv = label_of(v);
    a[lu] += 1.0;
    b[lv] += 1.0;
    if (lu == lv) e[lu] += 1.0;
  }
  const double m = static_cast<double>(edges.size());
  double trace = 0.0, ab = 0.0;
  for (const auto& [p, count] : e) trace += count / m;
  for (const auto& [p, count] : a)
    if (auto it = b.find(p); it != b.end()) ab += (count / m) * (it->second / m);
  if (1.0 - ab == 0.0)
    throw DegenerateError("assortativity undefined: every edge endpoint carries the same label");
  return (trace - ab) / (1.0 - ab);
}

std::string to_csv(const Graph& g, const RankVector& rank) {
  std::string out = "vertex,value\n";
  for (VertexId v = 0; v < rank.size(); ++v)
    out += detail::csv_field(g.vertex(v).display()) + "," + format_double(rank[v]) + "\n";
  return out;
}

std::string to_json(const Graph& g, const RankVector& rank) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (VertexId v = 0; v < rank.size(); ++v) j[g.vertex(v).display()] = rank[v];
  return j.dump(2);
}

std::string to_csv(const Graph& g, const GeodesicSummary& summary) {
  std::string out = "vertex,eccentricity\n";
  for (VertexId v = 0; v < summary.eccentricities.size(); ++v)
    out += detail::csv_field(g.vertex(v).display()) + "," +
           std::to_string(summary.eccentricities[v]) + "\n";
  out += "#radius," + std::to_string(summary.radius) + "\n";
  out += "#diameter," + std::to_string(summary.diameter) + "\n";
  return out;
}

std::string to_json(const Graph& g, const GeodesicSummary& summary) {
  nlohmann::ordered_json j;
  j["radius"] = summary.radius;
  j["diameter"] = summary.diameter;
  nlohmann::ordered_json ecc = nlohmann::ordered_json::object();
  for (VertexId v = 0; v < summary.eccentricities.size(); ++v)
    ecc[g.vertex(v).display()] = summary.eccentricities[v];
  j["eccentricities"] = std::move(ecc);
  return j.dump(2);
}

}  // namespace semnet::netkit
