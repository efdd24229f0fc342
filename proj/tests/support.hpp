#pragma once
// Hand-rolled generators and brute-force oracles shared by the test binaries.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semnet/graph.hpp"
#include "semnet/netkit.hpp"
#include "semnet/term.hpp"
#include "semnet/triple_store.hpp"
#include "semnet/walker.hpp"

namespace testing {

using semnet::Edge;
using semnet::Graph;
using semnet::Term;
using semnet::Triple;
using semnet::TripleStore;
using semnet::VertexId;

inline Term U(const std::string& iri) { return Term::uri(iri); }
inline Triple T(const std::string& s, const std::string& p, const std::string& o) {
  return {U(s), U(p), U(o)};
}

inline TripleStore store_of(const std::vector<Triple>& triples) {
  TripleStore s;
  for (const auto& t : triples) s.insert(t);
  return s;
}

inline std::string name(const std::string& prefix, std::size_t i) {
  return prefix + ":" + std::to_string(i);
}

// --- graph generators ---

inline Graph random_digraph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j && coin(rng)) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

// A random Hamiltonian cycle guarantees strong connectivity; extra edges
// (self-loops allowed when loops is set) are sprinkled on top.
inline Graph random_strong_digraph(std::size_t n, double p, std::mt19937_64& rng,
                                   bool loops = false) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n && n > 1; ++i) edges.emplace_back(perm[i], perm[(i + 1) % n]);
  std::bernoulli_distribution coin(p);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if ((i != j || loops) && coin(rng)) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

// --- path oracles ---

using DistMatrix = std::vector<std::vector<std::uint32_t>>;

inline DistMatrix floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::uint32_t inf = semnet::netkit::kUnreachable;
  DistMatrix d(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v] : g.edges())
    if (u != v) d[u][v] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j])
          d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Walks every geodesic j -> k explicitly and tallies interior vertices.
inline std::vector<double> betweenness_by_enumeration(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DistMatrix d = floyd_warshall(g);
  std::vector<double> b(n, 0.0);
  std::vector<VertexId> path;
  for (VertexId j = 0; j < n; ++j) {
    for (VertexId k = 0; k < n; ++k) {
      if (j == k || d[j][k] == semnet::netkit::kUnreachable) continue;
      std::vector<std::uint64_t> through(n, 0);
      std::uint64_t total = 0;
      std::function<void(VertexId)> dfs = [&](VertexId u) {
        if (u == k) {
          ++total;
          for (std::size_t x = 1; x + 1 < path.size(); ++x) ++through[path[x]];
          return;
        }
        for (VertexId v : g.successors(u)) {
          if (d[v][k] != semnet::netkit::kUnreachable && d[v][k] + 1 == d[u][k]) {
            path.push_back(v);
            dfs(v);
            path.pop_back();
          }
        }
      };
      path = {j};
      dfs(j);
      for (VertexId i = 0; i < n; ++i)
        if (i != j && i != k) b[i] += static_cast<double>(through[i]) / static_cast<double>(total);
    }
  }
  return b;
}

// --- spectral oracles (dense, Eigen) ---

inline Eigen::MatrixXd walk_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.successors(u)) a(u, v) = 1.0 / static_cast<double>(g.out_degree(u));
  return a;
}

inline Eigen::MatrixXd google_matrix(const Graph& g, double alpha) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = walk_matrix(g);
  for (Eigen::Index i = 0; i < n; ++i)
    if (g.out_degree(static_cast<VertexId>(i)) == 0) a.row(i).setConstant(1.0 / static_cast<double>(n));
  return alpha * a + (1.0 - alpha) * Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
}

// Solves pi (I - M) = 0 with sum(pi) = 1 by replacing one equation.
inline std::vector<double> stationary_by_solve(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd sys = (Eigen::MatrixXd::Identity(n, n) - m).transpose();
  sys.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd pi = sys.fullPivLu().solve(rhs);
  return std::vector<double>(pi.data(), pi.data() + n);
}

inline double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

// --- store generators ---

inline TripleStore random_store(std::size_t vertices, std::size_t predicates, std::size_t triples,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> v(0, vertices - 1), p(0, predicates - 1);
  TripleStore s;
  for (std::size_t i = 0; i < triples; ++i)
    s.insert(T(name("v", v(rng)), name("p", p(rng)), name("v", v(rng))));
  return s;
}

// Boolean transitive closure (Warshall) over an explicit relation.
inline std::set<std::pair<std::string, std::string>> transitive_closure(
    const std::set<std::pair<std::string, std::string>>& rel) {
  std::set<std::string> nodes;
  for (auto& [a, b] : rel) nodes.insert({a, b});
  std::vector<std::string> idx(nodes.begin(), nodes.end());
  const std::size_t n = idx.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  auto at = [&](const std::string& x) {
    return static_cast<std::size_t>(std::lower_bound(idx.begin(), idx.end(), x) - idx.begin());
  };
  for (auto& [a, b] : rel) r[at(a)][at(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.insert({idx[i], idx[j]});
  return out;
}

// Exhaustive binding enumeration: each pattern is tried against every
// triple with no index use.
inline std::vector<Term> nested_loop_join(const TripleStore& store, const semnet::WalkerQuery& q,
                                          const Term& at) {
  const auto triples = store.triples();
  std::set<Term> out;
  std::map<std::string, Term> b;
  auto unify = [&](const semnet::WalkerSlot& slot, const Term& val,
                   std::vector<std::string>& bound) -> bool {
    if (std::holds_alternative<semnet::CurrentPosition>(slot)) return val == at;
    if (auto* t = std::get_if<Term>(&slot)) return *t == val;
    const auto& name = std::get<semnet::Variable>(slot).name;
    if (auto it = b.find(name); it != b.end()) return it->second == val;
    b.emplace(name, val);
    bound.push_back(name);
    return true;
  };
  auto value = [&](const semnet::WalkerSlot& slot) -> Term {
    if (std::holds_alternative<semnet::CurrentPosition>(slot)) return at;
    if (auto* t = std::get_if<Term>(&slot)) return *t;
    return b.at(std::get<semnet::Variable>(slot).name);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == q.patterns.size()) {
      for (const auto& f : q.filters)
        if (value(f.lhs) == value(f.rhs)) return;
      out.insert(b.at("dest"));
      return;
    }
    for (const Triple& t : triples) {
      std::vector<std::string> bound;
      const auto& p = q.patterns[i];
      if (unify(p.s, t.s, bound) && unify(p.p, t.p, bound) && unify(p.o, t.o, bound)) rec(i + 1);
      for (const auto& n : bound) b.erase(n);
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

}  // namespace testing
