#include "semnet/owl.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "semnet/error.hpp"
#include "semnet/vocab.hpp"

namespace semnet {

namespace {

Term uri(std::string_view s) { return Term::uri(std::string(s)); }

std::optional<std::uint64_t> parse_cardinality(const Term& t) {
  if (!t.is_literal() || t.value().empty()) return std::nullopt;
  std::uint64_t v = 0;
  const char* first = t.value().data();
  const char* last = first + t.value().size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

std::vector<Term> objects(const TripleStore& st, TermId s, const std::optional<TermId>& p) {
  std::vector<Term> out;
  if (!p) return out;
  st.scan(s, *p, std::nullopt, [&](IdTriple u) { out.push_back(st.term(u.o)); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RestrictionScan extract_restrictions(const TripleStore& store) {
  RestrictionScan scan;
  auto type = store.find(uri(vocab::kRdfType));
  auto restriction = store.find(uri(vocab::kOwlRestriction));
  auto on_property = store.find(uri(vocab::kOwlOnProperty));
  auto max_card = store.find(uri(vocab::kOwlMaxCardinality));
  auto card = store.find(uri(vocab::kOwlCardinality));
  auto sub_class = store.find(uri(vocab::kRdfsSubClassOf));

  std::set<TermId> nodes;
  auto collect_subjects = [&](std::optional<TermId> p, std::optional<TermId> o) {
    if (!p) return;
    store.scan(std::nullopt, *p, o, [&](IdTriple u) { nodes.insert(u.s); });
  };
  if (restriction) collect_subjects(type, restriction);
  collect_subjects(on_property, std::nullopt);
  collect_subjects(max_card, std::nullopt);
  collect_subjects(card, std::nullopt);

  std::vector<TermId> ordered(nodes.begin(), nodes.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](TermId a, TermId b) { return store.term(a) < store.term(b); });

  for (TermId node : ordered) {
    const Term& node_term = store.term(node);
    auto props = objects(store, node, on_property);
    auto bounds = objects(store, node, max_card);
    auto exact = objects(store, node, card);
    bounds.insert(bounds.end(), exact.begin(), exact.end());

    if (props.size() != 1) {
      scan.warnings.push_back("restriction " + node_term.display() +
                              (props.empty() ? " has no owl:onProperty"
                                             : " has several owl:onProperty values") +
                              "; skipped");
      continue;
    }
    if (bounds.empty()) {
      scan.warnings.push_back("restriction " + node_term.display() +
                              " has no cardinality bound; skipped");
      continue;
    }
    std::optional<std::uint64_t> bound;
    for (const Term& b : bounds) {
      auto v = parse_cardinality(b);
      if (!v) {
        bound.reset();
        break;
      }
      bound = bound ? std::min(*bound, *v) : *v;
    }
    if (!bound) {
      scan.warnings.push_back("restriction " + node_term.display() +
                              " has a non-integer cardinality; skipped");
      continue;
    }

    std::vector<Term> classes;
    if (sub_class)
      store.scan(std::nullopt, *sub_class, node,
                 [&](IdTriple u) { classes.push_back(store.term(u.s)); });
    if (classes.empty()) {
      scan.warnings.push_back("restriction " + node_term.display() +
                              " is not attached to any class; skipped");
      continue;
    }
    std::sort(classes.begin(), classes.end());
    for (const Term& c : classes)
      scan.restrictions.push_back(Restriction{c, props.front(), *bound, node_term});
  }
  std::sort(scan.restrictions.begin(), scan.restrictions.end(),
            [](const Restriction& a, const Restriction& b) {
              return std::tie(a.on_class, a.node) < std::tie(b.on_class, b.node);
            });
  return scan;
}

// --- SameAsPartition --------------------------------------------------------

std::size_t SameAsPartition::index(const Term& t) {
  if (auto it = ids_.find(t); it != ids_.end()) return it->second;
  std::size_t i = terms_.size();
  terms_.push_back(t);
  parent_.push_back(i);
  ids_.emplace(t, i);
  return i;
}

std::size_t SameAsPartition::root(std::size_t i) const {
  while (parent_[i] != i) i = parent_[i];
  return i;
}

void SameAsPartition::add(const Term& t) { index(t); }

bool SameAsPartition::merge(const Term& a, const Term& b) {
  std::size_t ra = root(index(a));
  std::size_t rb = root(index(b));
  if (ra == rb) return false;
  // Smallest term stays the root so representatives are order independent.
  if (terms_[rb] < terms_[ra]) std::swap(ra, rb);
  parent_[rb] = ra;
  // Compress both original paths.
  for (std::size_t i : {index(a), index(b)}) {
    while (parent_[i] != ra) {
      std::size_t next = parent_[i];
      parent_[i] = ra;
      i = next;
    }
  }
  return true;
}

bool SameAsPartition::same(const Term& a, const Term& b) const {
  if (a == b) return true;
  auto ia = ids_.find(a), ib = ids_.find(b);
  if (ia == ids_.end() || ib == ids_.end()) return false;
  return root(ia->second) == root(ib->second);
}

Term SameAsPartition::representative(const Term& t) const {
  auto it = ids_.find(t);
  return it == ids_.end() ? t : terms_[root(it->second)];
}

std::vector<std::vector<Term>> SameAsPartition::classes() const {
  std::map<Term, std::vector<Term>> by_root;
  for (std::size_t i = 0; i < terms_.size(); ++i) by_root[terms_[root(i)]].push_back(terms_[i]);
  std::vector<std::vector<Term>> out;
  for (auto& [rep, members] : by_root) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// --- OWL materialization ----------------------------------------------------

namespace {

class OwlReasoner {
 public:
  OwlReasoner(TripleStore& store, const ReasonerLimits& limits)
      : st_(store),
        limits_(limits),
        type_(st_.intern(uri(vocab::kRdfType))),
        same_as_(st_.intern(uri(vocab::kOwlSameAs))),
        different_(st_.intern(uri(vocab::kOwlDifferentFrom))),
        symmetric_(st_.intern(uri(vocab::kOwlSymmetricProperty))),
        transitive_(st_.intern(uri(vocab::kOwlTransitiveProperty))) {}

  OwlResult run() {
    RestrictionScan scan = extract_restrictions(st_);
    result_.warnings = std::move(scan.warnings);
    bool changed = true;
    while (changed) {
      changed = false;
      changed |= symmetric_pass();
      changed |= transitive_pass();
      refresh_equalities();
      for (const Restriction& r : scan.restrictions) changed |= cardinality_pass(r);
    }
    return std::move(result_);
  }

 private:
  bool emit(IdTriple t, std::string_view rule, std::vector<IdTriple> premises) {
    if (!st_.insert(t)) return false;
    Entailment e{st_.to_triple(t), std::string(rule), {}};
    for (IdTriple p : premises) e.premises.push_back(st_.to_triple(p));
    result_.entailments.push_back(std::move(e));
    if (result_.entailments.size() > limits_.max_derived)
      throw ResourceLimitError("OWL materialization exceeded " +
                               std::to_string(limits_.max_derived) + " derived triples");
    return true;
  }

  std::vector<IdTriple> with_predicate(TermId p) const {
    std::vector<IdTriple> out;
    st_.scan(std::nullopt, p, std::nullopt, [&](IdTriple u) { out.push_back(u); });
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<IdTriple> typed(TermId cls) const {
    std::vector<IdTriple> out;
    st_.scan(std::nullopt, type_, cls, [&](IdTriple u) { out.push_back(u); });
    std::sort(out.begin(), out.end());
    return out;
  }

  bool symmetric_pass() {
    bool changed = false;
    for (IdTriple decl : typed(symmetric_)) {
      for (IdTriple t : with_predicate(decl.s)) {
        if (st_.term(t.o).is_literal()) continue;
        changed |= emit({t.o, t.p, t.s}, "symmetric", {decl, t});
      }
    }
    return changed;
  }

  bool transitive_pass() {
    bool changed = false;
    for (IdTriple decl : typed(transitive_)) {
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::pair<IdTriple, IdTriple>> joins;
        for (IdTriple a : with_predicate(decl.s))
          st_.scan(a.o, decl.s, std::nullopt, [&](IdTriple b) { joins.emplace_back(a, b); });
        for (auto [a, b] : joins) grew |= emit({a.s, decl.s, b.o}, "transitive", {decl, a, b});
        changed |= grew;
      }
    }
    return changed;
  }

  void refresh_equalities() {
    for (IdTriple t : with_predicate(same_as_)) {
      if (st_.term(t.o).is_literal()) continue;
      result_.same_as.merge(st_.term(t.s), st_.term(t.o));
    }
    differences_.clear();
    for (IdTriple t : with_predicate(different_))
      if (!st_.term(t.o).is_literal()) differences_.push_back(t);
  }

  // differentFrom is read symmetrically and lifted over sameAs classes.
  bool different(const Term& x, const Term& y) const {
    const auto& part = result_.same_as;
    for (IdTriple d : differences_) {
      const Term& a = st_.term(d.s);
      const Term& b = st_.term(d.o);
      if ((part.same(a, x) && part.same(b, y)) || (part.same(a, y) && part.same(b, x)))
        return true;
    }
    return false;
  }

  // Looks for more than `bound` pairwise-different classes among reps.
  bool has_different_clique(const std::vector<Term>& reps, std::size_t need,
                            std::vector<std::size_t>& chosen, std::size_t from) const {
    if (chosen.size() == need) return true;
    for (std::size_t i = from; i < reps.size(); ++i) {
      bool ok = std::all_of(chosen.begin(), chosen.end(),
                            [&](std::size_t j) { return different(reps[i], reps[j]); });
      if (!ok) continue;
      chosen.push_back(i);
      if (has_different_clique(reps, need, chosen, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }

  bool cardinality_pass(const Restriction& r) {
    auto cls = st_.find(r.on_class);
    auto prop = st_.find(r.on_property);
    if (!cls || !prop) return false;
    bool changed = false;

    for (IdTriple membership : typed(*cls)) {
      const TermId inst = membership.s;
      // Fillers in either direction: (inst p x) and (x p inst). Object values
      // only; literal fillers are not individuals and never merge.
      std::map<Term, IdTriple> fillers;
      st_.scan(inst, *prop, std::nullopt, [&](IdTriple u) {
        if (u.o != inst && !st_.term(u.o).is_literal()) fillers.try_emplace(st_.term(u.o), u);
      });
      st_.scan(std::nullopt, *prop, inst, [&](IdTriple u) {
        if (u.s != inst) fillers.try_emplace(st_.term(u.s), u);
      });
      if (fillers.empty()) continue;

      std::vector<std::pair<Term, IdTriple>> fs(fillers.begin(), fillers.end());
      if (r.max_cardinality == 1) {
        for (std::size_t i = 0; i < fs.size(); ++i) {
          for (std::size_t j = i + 1; j < fs.size(); ++j) {
            const Term& a = fs[i].first;
            const Term& b = fs[j].first;
            if (result_.same_as.same(a, b) || different(a, b)) continue;
            result_.same_as.merge(a, b);
            TermId ia = *st_.find(a), ib = *st_.find(b);
            std::vector<IdTriple> premises{fs[i].second, fs[j].second, membership};
            changed |= emit({ia, same_as_, ib}, "max-cardinality-merge", premises);
            changed |= emit({ib, same_as_, ia}, "max-cardinality-merge", premises);
          }
        }
      }

      std::vector<Term> reps;
      for (const auto& [t, _] : fs) reps.push_back(result_.same_as.representative(t));
      std::sort(reps.begin(), reps.end());
      reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

      bool clash = false;
      if (r.max_cardinality == 0) {
        clash = true;
      } else if (reps.size() > r.max_cardinality) {
        std::vector<std::size_t> chosen;
        clash = r.max_cardinality == 1 ||
                has_different_clique(reps, static_cast<std::size_t>(r.max_cardinality) + 1,
                                     chosen, 0);
      }
      if (!clash) continue;

      auto key = std::make_tuple(r.node, r.on_class, st_.term(inst));
      if (!clashes_.insert(key).second) continue;
      changed = true;

      Inconsistency inc{InconsistencyKind::CardinalityClash, r, st_.term(inst), {}};
      for (const auto& [t, triple] : fs) inc.culprits.push_back(st_.to_triple(triple));
      for (IdTriple d : differences_) {
        const Term& a = st_.term(d.s);
        const Term& b = st_.term(d.o);
        bool a_in = std::any_of(fs.begin(), fs.end(),
                                [&](const auto& f) { return result_.same_as.same(f.first, a); });
        bool b_in = std::any_of(fs.begin(), fs.end(),
                                [&](const auto& f) { return result_.same_as.same(f.first, b); });
        if (a_in && b_in) inc.culprits.push_back(st_.to_triple(d));
      }
      std::sort(inc.culprits.begin(), inc.culprits.end());
      inc.culprits.erase(std::unique(inc.culprits.begin(), inc.culprits.end()),
                         inc.culprits.end());
      result_.inconsistencies.push_back(std::move(inc));
    }
    return changed;
  }

  TripleStore& st_;
  ReasonerLimits limits_;
  TermId type_, same_as_, different_, symmetric_, transitive_;
  OwlResult result_;
  std::vector<IdTriple> differences_;
  std::set<std::tuple<Term, Term, Term>> clashes_;
};

}  // namespace

OwlResult materialize_owl(TripleStore& store, const ReasonerLimits& limits) {
  return OwlReasoner(store, limits).run();
}

std::string to_json(const std::vector<Inconsistency>& inconsistencies) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Inconsistency& inc : inconsistencies) {
    nlohmann::json j;
    j["kind"] = "cardinality-clash";
    j["restriction"] = {{"on_class", inc.restriction.on_class.display()},
                        {"on_property", inc.restriction.on_property.display()},
                        {"max_cardinality", inc.restriction.max_cardinality},
                        {"node", inc.restriction.node.display()}};
    j["instance"] = inc.instance.display();
    j["culprits"] = nlohmann::json::array();
    for (const Triple& t : inc.culprits) j["culprits"].push_back(to_ntriples_line(t));
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace semnet
