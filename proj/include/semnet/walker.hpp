#pragma once
// Grammar-based walkers. A walker moves over the data graph while also
// moving over a grammar: a small graph whose nodes are destination queries
//
//   SELECT ?dest WHERE { pattern ('.' pattern)* FILTER(x != y)* }
//
// where '@' stands for the walker's current vertex.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "semnet/term.hpp"

namespace semnet {

class TripleStore;

struct CurrentPosition {
  friend bool operator==(CurrentPosition, CurrentPosition) = default;
};

using WalkerSlot = std::variant<Term, Variable, CurrentPosition>;

struct WalkerPattern {
  WalkerSlot s;
  WalkerSlot p;
  WalkerSlot o;
};

struct WalkerFilter {
  WalkerSlot lhs;
  WalkerSlot rhs;
};

struct WalkerQuery {
  std::vector<WalkerPattern> patterns;
  std::vector<WalkerFilter> filters;  // all are inequalities
  bool uses_position() const;
};

// Throws SyntaxError (line 1, column) or ConfigError (missing ?dest,
// unknown projection, unbound filter variable).
WalkerQuery parse_walker_query(std::string_view text);

// Distinct ?dest bindings with '@' := at, sorted.
std::vector<Term> eval_walker_query(const TripleStore& store, const WalkerQuery& q,
                                    const Term& at);

struct GrammarNode {
  std::optional<WalkerQuery> query;  // absent: halt node
  std::vector<std::pair<std::string, double>> transitions;
  std::optional<std::string> fallback;
};

struct Grammar {
  std::string start;
  std::map<std::string, GrammarNode> nodes;

  // Throws ConfigError on dangling ids, missing fallbacks or transition
  // probabilities not summing to 1 within 1e-9.
  void validate() const;
};

// {"start": id, "nodes": {id: {"query": text, "transitions": [[id, p], ...],
//  "fallback": id}}}. A node without "query" halts the walker.
Grammar parse_grammar(std::string_view json_text);

struct WalkOptions {
  std::size_t walkers = 1;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  // Walker i starts at starts[i % size]; empty samples uniformly from the
  // store's URI subjects and objects.
  std::vector<Term> starts;
  // 0 means one thread per hardware core.
  std::size_t threads = 0;
};

struct VisitCounts {
  std::map<Term, std::uint64_t> counts;
  std::uint64_t total = 0;
};

// Each step either moves to a uniformly chosen query result (counted at the
// destination) and follows a weighted transition, or, on an empty result,
// switches to the fallback node in place. Halt nodes end the walk.
VisitCounts run_random_walkers(const TripleStore& store, const Grammar& grammar,
                               const WalkOptions& options);

// Breadth-first distances over the abstract edge v -> eval(q, v).
std::map<Term, std::uint32_t> run_geodesic_walkers(const TripleStore& store,
                                                   const WalkerQuery& q, const Term& source,
                                                   std::uint32_t max_depth);

// "term,count,frequency" rows sorted by term.
std::string to_csv(const VisitCounts& visits);
std::string to_json(const VisitCounts& visits);

}  // namespace semnet
