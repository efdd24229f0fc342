#pragma once
// In-memory triple store with dictionary-encoded terms and three nested
// indices (s->p->o, p->o->s, o->s->p).
//
// Readers may share a const TripleStore across threads; any mutation needs
// exclusive access. Results returned by match() are independent copies.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semnet/term.hpp"

namespace semnet {

using TermId = std::uint32_t;

struct IdTriple {
  TermId s;
  TermId p;
  TermId o;

  friend bool operator==(const IdTriple&, const IdTriple&) = default;
  friend auto operator<=>(const IdTriple&, const IdTriple&) = default;
};

struct IdTripleHash {
  std::size_t operator()(const IdTriple& t) const noexcept;
};

class TripleStore {
 public:
  // Returns true iff t was not already present. Throws ConstraintError if t
  // violates the triple constraints.
  bool insert(const Triple& t);
  bool contains(const Triple& t) const;

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  // One binding per matching triple, ordered by the matched triple.
  std::vector<Bindings> match(const TriplePattern& pattern) const;

  // All triples in sorted order.
  std::vector<Triple> triples() const;

  // Dictionary access used by the engines.
  TermId intern(const Term& t);
  std::optional<TermId> find(const Term& t) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  // Id-level insertion; validates kinds of the referenced terms.
  bool insert(IdTriple t);
  bool contains(IdTriple t) const { return present_.contains(t); }
  Triple to_triple(IdTriple t) const { return {terms_[t.s], terms_[t.p], terms_[t.o]}; }

  // Triples in insertion order.
  const std::vector<IdTriple>& id_triples() const noexcept { return triples_; }

  // Calls f(IdTriple) for every triple agreeing with the bound positions.
  // Iteration order is unspecified. f must not mutate the store.
  template <class F>
  void scan(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
            F&& f) const;

 private:
  using Inner = std::unordered_map<TermId, std::vector<TermId>>;
  using Index = std::unordered_map<TermId, Inner>;

  static const std::vector<TermId>* lookup(const Index& idx, TermId a, TermId b);

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::vector<IdTriple> triples_;
  std::unordered_set<IdTriple, IdTripleHash> present_;
  Index spo_;
  Index pos_;
  Index osp_;
};

template <class F>
void TripleStore::scan(std::optional<TermId> s, std::optional<TermId> p,
                       std::optional<TermId> o, F&& f) const {
  if (s && p && o) {
    if (present_.contains({*s, *p, *o})) f(IdTriple{*s, *p, *o});
    return;
  }
  if (s && p) {
    if (auto* os = lookup(spo_, *s, *p))
      for (TermId x : *os) f(IdTriple{*s, *p, x});
    return;
  }
  if (p && o) {
    if (auto* ss = lookup(pos_, *p, *o))
      for (TermId x : *ss) f(IdTriple{x, *p, *o});
    return;
  }
  if (o && s) {
    if (auto* ps = lookup(osp_, *o, *s))
      for (TermId x : *ps) f(IdTriple{*s, x, *o});
    return;
  }
  if (s) {
    if (auto it = spo_.find(*s); it != spo_.end())
      for (const auto& [pp, os] : it->second)
        for (TermId x : os) f(IdTriple{*s, pp, x});
    return;
  }
  if (p) {
    if (auto it = pos_.find(*p); it != pos_.end())
      for (const auto& [oo, ss] : it->second)
        for (TermId x : ss) f(IdTriple{x, *p, oo});
    return;
  }
  if (o) {
    if (auto it = osp_.find(*o); it != osp_.end())
      for (const auto& [ss, ps] : it->second)
        for (TermId x : ps) f(IdTriple{ss, x, *o});
    return;
  }
  for (const IdTriple& t : triples_) f(t);
}

// Line-oriented N-Triples subset: <iri>, _:label, "lex" and "lex"^^<dt>
// tokens, '.'-terminated statements, '#' comment lines.

// Hands out fresh blank node labels b0, b1, ... Sharing one allocator across
// several documents keeps their blank nodes apart.
class BlankNodeAllocator {
 public:
  Term fresh();

 private:
  std::size_t next_ = 0;
};

std::vector<Triple> parse_ntriples(std::string_view text);
std::vector<Triple> parse_ntriples(std::string_view text, BlankNodeAllocator& blanks);

// Canonical document: one statement per line, lines sorted bytewise.
std::string serialize_ntriples(const TripleStore& store);

}  // namespace semnet
