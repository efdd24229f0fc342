#pragma once
// Non-Axiomatic Logic subset: inheritance judgments with <frequency,
// confidence> truth values, their RDF encoding through statement pointers,
// and the four syllogistic rules.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/triple_store.hpp"

namespace semnet::nal {

struct TruthValue {
  double frequency = 0.0;
  double confidence = 0.0;

  friend bool operator==(const TruthValue&, const TruthValue&) = default;
};

// Throws ConstraintError unless both components lie in [0,1].
void validate(const TruthValue& tv);

// subject -> predicate <f,c>, reified by `pointer`.
struct Judgment {
  Term subject;
  Term predicate;
  TruthValue truth;
  Term pointer;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// (c1 x c2 x ... x cn) -> predicate <f,c>. set_pointer names the product,
// statement_pointer reifies the inheritance statement.
struct ProductJudgment {
  std::vector<Term> components;
  Term predicate;
  TruthValue truth;
  Term set_pointer;
  Term statement_pointer;

  friend bool operator==(const ProductJudgment&, const ProductJudgment&) = default;
};

enum class Syllogism : std::uint8_t { Deduction, Induction, Abduction, Exemplification };

inline constexpr std::array<Syllogism, 4> kAllSyllogisms = {
    Syllogism::Deduction, Syllogism::Induction, Syllogism::Abduction,
    Syllogism::Exemplification};

std::string_view to_string(Syllogism rule);
// Accepts the lowercase rule name; throws ConfigError otherwise.
Syllogism syllogism_from_string(std::string_view name);

// Truth functions. k is the evidential horizon (k >= 1).
TruthValue deduction(TruthValue a, TruthValue b);
TruthValue induction(TruthValue a, TruthValue b, unsigned k);
TruthValue abduction(TruthValue a, TruthValue b, unsigned k);
TruthValue exemplification(TruthValue a, TruthValue b, unsigned k);

// Premise shapes:
//   deduction, exemplification: (x->y, y->z)
//   induction:                  (x->y, z->y)
//   abduction:                  (x->y, x->z)
// Conclusions: deduction and induction x->z, abduction y->z,
// exemplification z->x. The conclusion pointer is derived from the rule
// and both premise pointers, so the function is pure.
// Throws ShapeError on mismatched premises and DegenerateError if the
// conclusion would be x->x.
Judgment apply_syllogism(Syllogism rule, const Judgment& first, const Judgment& second,
                         unsigned k = 1);

std::vector<Triple> encode(const Judgment& j);
std::vector<Triple> encode(const ProductJudgment& j);

struct Knowledge {
  std::vector<Judgment> judgments;
  std::vector<ProductJudgment> products;
};

// Recovers every reified judgment from a store: pointers carrying both
// nal:frequency and nal:confidence. Results sorted by (subject, predicate).
// Throws ConstraintError on malformed encodings.
Knowledge decode(const TripleStore& store);

struct SaturationOptions {
  unsigned k = 1;
  std::size_t max_rounds = 4;
  std::size_t max_judgments = 100'000;
};

// Applies the enabled rules to every ordered pair of distinct judgments,
// round by round. Premise pairs are visited in (subject, predicate) order and
// rules in the order given; the first conclusion for a (subject, predicate)
// pair wins and later ones are dropped. Returns the input plus all
// conclusions, sorted by (subject, predicate).
std::vector<Judgment> saturate(std::span<const Judgment> kb, std::span<const Syllogism> rules,
                               const SaturationOptions& options = {});

}  // namespace semnet::nal
