#pragma once
// Forward-chaining RDFS reasoning: four subsumption and six realization rules
// evaluated semi-naively to a fixpoint.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/triple_store.hpp"

namespace semnet {

enum class RdfsRule : std::uint8_t {
  SubClassResource,  // (x type Class) => (x subClassOf Resource)
  DatatypeLiteral,   // (x type Datatype) => (x subClassOf Literal)
  SubPropertyTrans,
  SubClassTrans,
  ResSubject,     // (x y z) => (x type Resource)
  PropPredicate,  // (x y z) => (y type Property)
  ResObject,      // (x y z) => (z type Resource), z not a literal
  TypeLift,       // (x type y) (y subClassOf z) => (x type z)
  DomainType,     // (w domain x) (y w z) => (y type x)
  RangeType,      // (w range x) (y w z) => (z type x), z not a literal
};

inline constexpr std::array<RdfsRule, 10> kAllRdfsRules = {
    RdfsRule::SubClassResource, RdfsRule::DatatypeLiteral, RdfsRule::SubPropertyTrans,
    RdfsRule::SubClassTrans,    RdfsRule::ResSubject,      RdfsRule::PropPredicate,
    RdfsRule::ResObject,        RdfsRule::TypeLift,        RdfsRule::DomainType,
    RdfsRule::RangeType};

std::string_view to_string(RdfsRule rule);

// A derived triple with the rule and premises that first produced it.
// Shared by the RDFS and OWL engines; rule holds the rule's name.
struct Entailment {
  Triple triple;
  std::string rule;
  std::vector<Triple> premises;
};

struct ReasonerLimits {
  std::size_t max_derived = 1'000'000;
};

// Insert-time strategy: adds every entailed triple to the store and returns
// the novel ones. Throws ResourceLimitError past limits.max_derived; triples
// derived before that point stay in the store.
std::vector<Entailment> materialize_rdfs(TripleStore& store, const ReasonerLimits& limits = {});

// Query-time strategy: answers the pattern against the entailment closure
// without touching the input store.
std::vector<Bindings> entails(const TripleStore& store, const TriplePattern& pattern,
                              const ReasonerLimits& limits = {});

// One JSON object per line: {"triple": "...", "rule": "...", "premises": [...]}.
std::string to_json_lines(const std::vector<Entailment>& entailments);

}  // namespace semnet
