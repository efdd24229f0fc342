#pragma once
// OWL subset: symmetric and transitive properties, cardinality-driven
// owl:sameAs derivation and cardinality-clash detection.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "semnet/rdfs.hpp"
#include "semnet/triple_store.hpp"

namespace semnet {

struct Restriction {
  Term on_class;
  Term on_property;
  std::uint64_t max_cardinality = 0;
  Term node;  // the owl:Restriction resource, usually a blank node

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

struct RestrictionScan {
  std::vector<Restriction> restrictions;
  std::vector<std::string> warnings;  // malformed restrictions that were skipped
};

// Finds (C rdfs:subClassOf R) where R carries owl:onProperty plus
// owl:maxCardinality or owl:cardinality. Sorted by (class, node).
RestrictionScan extract_restrictions(const TripleStore& store);

// Union-find over terms. Classes are represented by their smallest term.
class SameAsPartition {
 public:
  void add(const Term& t);
  // Returns true if a and b were in different classes.
  bool merge(const Term& a, const Term& b);
  bool same(const Term& a, const Term& b) const;
  Term representative(const Term& t) const;
  // Non-singleton classes, each sorted, ordered by representative.
  std::vector<std::vector<Term>> classes() const;

 private:
  std::size_t index(const Term& t);
  std::size_t root(std::size_t i) const;

  std::vector<Term> terms_;
  std::vector<std::size_t> parent_;
  std::unordered_map<Term, std::size_t, TermHash> ids_;
};

enum class InconsistencyKind : std::uint8_t { CardinalityClash };

struct Inconsistency {
  InconsistencyKind kind = InconsistencyKind::CardinalityClash;
  Restriction restriction;
  Term instance;                // the restricted individual
  std::vector<Triple> culprits; // filler triples plus the differentFrom facts involved
};

struct OwlResult {
  std::vector<Entailment> entailments;
  std::vector<Inconsistency> inconsistencies;
  SameAsPartition same_as;
  std::vector<std::string> warnings;
};

// Runs the OWL rule families to a fixpoint. Expects rdf:type facts to be
// materialized already (see materialize_rdfs). Inconsistencies are reported,
// never thrown; the store stays usable.
OwlResult materialize_owl(TripleStore& store, const ReasonerLimits& limits = {});

// {"kind": ..., "restriction": {...}, "instance": ..., "culprits": [...]}
std::string to_json(const std::vector<Inconsistency>& inconsistencies);

}  // namespace semnet
