#include "semnet/graph.hpp"

#include <algorithm>

#include "semnet/error.hpp"
#include "semnet/triple_store.hpp"

namespace semnet {

Graph::Graph(std::vector<Term> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(vertices_[i], static_cast<VertexId>(i)).second)
      throw ConstraintError("duplicate vertex " + vertices_[i].display());
  }
  for (const auto& [u, v] : edges)
    if (u >= n || v >= n) throw LookupError("edge endpoint out of range");

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) ++offsets_[u + 1];
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  targets_.reserve(edges.size());
  for (const auto& [u, v] : edges) targets_.push_back(v);
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  std::vector<Term> vs;
  vs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) vs.push_back(Term::uri("urn:v:" + std::to_string(i)));
  return Graph(std::move(vs), std::move(edges));
}

std::optional<VertexId> Graph::index_of(const Term& t) const {
  if (auto it = index_.find(t); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(targets_.size());
  for (VertexId u = 0; u < vertex_count(); ++u)
    for (VertexId v : successors(u)) out.emplace_back(u, v);
  return out;
}

Graph Graph::reversed() const {
  auto es = edges();
  for (auto& [u, v] : es) std::swap(u, v);
  return Graph(vertices_, std::move(es));
}

Graph graph_from_store(const TripleStore& store, const Term& predicate, bool include_literals) {
  auto p = store.find(predicate);
  if (!p) return Graph{};

  std::vector<IdTriple> hits;
  store.scan(std::nullopt, *p, std::nullopt, [&](IdTriple t) {
    if (include_literals || !store.term(t.o).is_literal()) hits.push_back(t);
  });

  std::vector<Term> vertices;
  for (IdTriple t : hits) {
    vertices.push_back(store.term(t.s));
    vertices.push_back(store.term(t.o));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  auto index_of = [&](const Term& t) {
    return static_cast<VertexId>(std::lower_bound(vertices.begin(), vertices.end(), t) -
                                 vertices.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(hits.size());
  for (IdTriple t : hits) edges.emplace_back(index_of(store.term(t.s)), index_of(store.term(t.o)));
  return Graph(std::move(vertices), std::move(edges));
}

}  // namespace semnet
