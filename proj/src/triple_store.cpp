#include "semnet/triple_store.hpp"

#include <algorithm>

#include "semnet/error.hpp"

namespace semnet {

std::size_t IdTripleHash::operator()(const IdTriple& t) const noexcept {
  std::uint64_t h = t.s;
  h = h * 0x9e3779b97f4a7c15ULL + t.p;
  h = h * 0x9e3779b97f4a7c15ULL + t.o;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

TermId TripleStore::intern(const Term& t) {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  auto id = static_cast<TermId>(terms_.size());
  terms_.push_back(t);
  ids_.emplace(t, id);
  return id;
}

std::optional<TermId> TripleStore::find(const Term& t) const {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  return std::nullopt;
}

bool TripleStore::insert(const Triple& t) {
  validate(t);
  return insert(IdTriple{intern(t.s), intern(t.p), intern(t.o)});
}

bool TripleStore::insert(IdTriple t) {
  if (terms_[t.s].is_literal() || !terms_[t.p].is_uri())
    validate(to_triple(t));
  if (!present_.insert(t).second) return false;
  triples_.push_back(t);
  spo_[t.s][t.p].push_back(t.o);
  pos_[t.p][t.o].push_back(t.s);
  osp_[t.o][t.s].push_back(t.p);
  return true;
}

bool TripleStore::contains(const Triple& t) const {
  auto s = find(t.s), p = find(t.p), o = find(t.o);
  return s && p && o && present_.contains({*s, *p, *o});
}

const std::vector<TermId>* TripleStore::lookup(const Index& idx, TermId a, TermId b) {
  auto it = idx.find(a);
  if (it == idx.end()) return nullptr;
  auto jt = it->second.find(b);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::vector<Bindings> TripleStore::match(const TriplePattern& pattern) const {
  // Resolve concrete slots; an unknown concrete term cannot match anything.
  std::optional<TermId> bound[3];
  const Variable* vars[3] = {nullptr, nullptr, nullptr};
  const PatternSlot* slots[3] = {&pattern.s, &pattern.p, &pattern.o};
  for (int i = 0; i < 3; ++i) {
    if (const auto* t = std::get_if<Term>(slots[i])) {
      bound[i] = find(*t);
      if (!bound[i]) return {};
    } else {
      vars[i] = &std::get<Variable>(*slots[i]);
    }
  }

  std::vector<IdTriple> hits;
  scan(bound[0], bound[1], bound[2], [&](IdTriple t) {
    const TermId pos[3] = {t.s, t.p, t.o};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (vars[i] && vars[j] && vars[i]->name == vars[j]->name && pos[i] != pos[j]) return;
    hits.push_back(t);
  });

  std::vector<Triple> matched;
  matched.reserve(hits.size());
  for (IdTriple t : hits) matched.push_back(to_triple(t));
  std::sort(matched.begin(), matched.end());

  std::vector<Bindings> out;
  out.reserve(matched.size());
  for (const Triple& t : matched) {
    Bindings b;
    const Term* pos[3] = {&t.s, &t.p, &t.o};
    for (int i = 0; i < 3; ++i)
      if (vars[i]) b.emplace(vars[i]->name, *pos[i]);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Triple> TripleStore::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (IdTriple t : triples_) out.push_back(to_triple(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace semnet
