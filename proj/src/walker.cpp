#include "semnet/walker.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <deque>
#include <exception>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "csv.hpp"
#include "json.hpp"
#include "semnet/error.hpp"
#include "semnet/triple_store.hpp"

namespace semnet {

bool WalkerQuery::uses_position() const {
  auto here = [](const WalkerSlot& s) { return std::holds_alternative<CurrentPosition>(s); };
  for (const auto& p : patterns)
    if (here(p.s) || here(p.p) || here(p.o)) return true;
  for (const auto& f : filters)
    if (here(f.lhs) || here(f.rhs)) return true;
  return false;
}

// --- query text -------------------------------------------------------------

namespace {

constexpr std::string_view kDest = "dest";

bool bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
         c == '/' || c == '#' || c == '.' || c == '~' || c == '%';
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : text_(text) {}

  WalkerQuery parse() {
    keyword("SELECT");
    skip_ws();
    if (!peek('?')) fail("expected projection variable");
    std::string proj = variable_name();
    if (proj != kDest) throw ConfigError("unknown projection ?" + proj + "; only ?dest is supported");
    keyword("WHERE");
    expect('{');

    WalkerQuery q;
    q.patterns.push_back(pattern());
    while (true) {
      skip_ws();
      if (peek('.')) {
        ++pos_;
        skip_ws();
        if (peek('}') || at_keyword("FILTER")) break;
        q.patterns.push_back(pattern());
        continue;
      }
      break;
    }
    while (true) {
      skip_ws();
      if (!at_keyword("FILTER")) break;
      keyword("FILTER");
      expect('(');
      WalkerSlot lhs = slot();
      skip_ws();
      if (text_.substr(pos_, 2) != "!=") fail("expected '!='");
      pos_ += 2;
      WalkerSlot rhs = slot();
      expect(')');
      q.filters.push_back({std::move(lhs), std::move(rhs)});
      skip_ws();
      if (peek('.')) ++pos_;
    }
    expect('}');
    skip_ws();
    if (pos_ < text_.size()) fail("trailing input");

    auto mentions = [&](const std::string& name) {
      auto is = [&](const WalkerSlot& s) {
        auto* v = std::get_if<Variable>(&s);
        return v && v->name == name;
      };
      return std::any_of(q.patterns.begin(), q.patterns.end(), [&](const WalkerPattern& p) {
        return is(p.s) || is(p.p) || is(p.o);
      });
    };
    if (!mentions(std::string(kDest))) throw ConfigError("?dest does not appear in any pattern");
    for (const auto& f : q.filters)
      for (const WalkerSlot* s : {&f.lhs, &f.rhs})
        if (auto* v = std::get_if<Variable>(s); v && !mentions(v->name))
          throw ConfigError("filter references unbound variable ?" + v->name);
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, 1, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    skip_ws();
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at_keyword(std::string_view kw) const {
    if (!iequals(text_.substr(pos_, kw.size()), kw)) return false;
    std::size_t end = pos_ + kw.size();
    return end >= text_.size() || !bare_char(text_[end]) || text_[end] == '.';
  }

  void keyword(std::string_view kw) {
    skip_ws();
    if (!at_keyword(kw)) fail("expected " + std::string(kw));
    pos_ += kw.size();
  }

  std::string variable_name() {
    ++pos_;  // '?'
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("empty variable name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term make_uri(std::string iri, std::size_t at) {
    try {
      return Term::uri(std::move(iri));
    } catch (const ConstraintError& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  std::string iri_token() {
    std::size_t at = pos_;
    if (peek('<')) {
      auto end = text_.find('>', pos_);
      if (end == std::string_view::npos) fail("unterminated IRI");
      std::string iri(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      make_uri(iri, at);
      return iri;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && bare_char(text_[pos_])) ++pos_;
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;  // statement terminator
    if (pos_ == start) fail("expected term");
    std::string iri(text_.substr(start, pos_ - start));
    make_uri(iri, at);
    return iri;
  }

  Term literal() {
    ++pos_;  // opening quote
    std::string lex;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated literal");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        char e = text_[pos_++];
        switch (e) {
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          case 'r': lex += '\r'; break;
          case '"': lex += '"'; break;
          case '\\': lex += '\\'; break;
          default: --pos_; fail("unknown escape");
        }
        continue;
      }
      lex += c;
    }
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      return Term::literal(std::move(lex), iri_token());
    }
    return Term::literal(std::move(lex));
  }

  WalkerSlot slot() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of query");
    if (peek('@')) {
      ++pos_;
      return CurrentPosition{};
    }
    if (peek('?')) return Variable{variable_name()};
    if (peek('"')) return literal();
    std::size_t at = pos_;
    return make_uri(iri_token(), at);
  }

  WalkerPattern pattern() {
    std::size_t at = (skip_ws(), pos_);
    WalkerPattern p{slot(), slot(), slot()};
    auto* pt = std::get_if<Term>(&p.p);
    if (pt && !pt->is_uri()) {
      pos_ = at;
      fail("predicate must be a URI");
    }
    if (auto* st = std::get_if<Term>(&p.s); st && st->is_literal()) {
      pos_ = at;
      fail("literal in subject position");
    }
    return p;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Query compiled against one store: constants become ids, variables become
// slots in a binding vector.
class CompiledQuery {
 public:
  CompiledQuery(const TripleStore& store, const WalkerQuery& q) : store_(store) {
    auto compile = [&](const WalkerSlot& s) {
      Slot out;
      if (std::holds_alternative<CurrentPosition>(s)) {
        out.kind = Slot::Here;
      } else if (auto* v = std::get_if<Variable>(&s)) {
        out.kind = Slot::Var;
        auto it = std::find(names_.begin(), names_.end(), v->name);
        out.var = static_cast<std::size_t>(it - names_.begin());
        if (it == names_.end()) names_.push_back(v->name);
      } else {
        const Term& t = std::get<Term>(s);
        out.kind = Slot::Const;
        if (auto id = store.find(t)) out.id = *id;
        else out.missing = t;
      }
      return out;
    };
    for (const auto& p : q.patterns) {
      patterns_.push_back({compile(p.s), compile(p.p), compile(p.o)});
      for (const Slot& s : patterns_.back())
        if (s.kind == Slot::Const && s.missing) never_matches_ = true;
    }
    for (const auto& f : q.filters) filters_.push_back({compile(f.lhs), compile(f.rhs)});
    dest_ = static_cast<std::size_t>(std::find(names_.begin(), names_.end(), kDest) -
                                     names_.begin());
    uses_position_ = q.uses_position();
  }

  // Sorted by term, distinct.
  std::vector<TermId> run(std::optional<TermId> at) const {
    std::vector<TermId> out;
    if (never_matches_ || (uses_position_ && !at)) return out;
    std::vector<std::optional<TermId>> binding(names_.size());
    std::vector<bool> done(patterns_.size(), false);
    join(at, binding, done, patterns_.size(), out);
    std::sort(out.begin(), out.end(),
              [&](TermId a, TermId b) { return store_.term(a) < store_.term(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Slot {
    enum Kind { Const, Var, Here } kind = Const;
    TermId id = 0;
    std::size_t var = 0;
    std::optional<Term> missing;  // constant absent from the store
  };

  std::optional<TermId> resolve(const Slot& s, std::optional<TermId> at,
                                const std::vector<std::optional<TermId>>& b) const {
    switch (s.kind) {
      case Slot::Const: return s.id;
      case Slot::Here: return at;
      case Slot::Var: return b[s.var];
    }
    return std::nullopt;
  }

  bool filters_pass(std::optional<TermId> at, const std::vector<std::optional<TermId>>& b) const {
    for (const auto& [l, r] : filters_) {
      if (l.missing || r.missing) {
        if (l.missing && r.missing && *l.missing == *r.missing) return false;
        continue;  // an absent constant differs from every stored term
      }
      if (resolve(l, at, b) == resolve(r, at, b)) return false;
    }
    return true;
  }

  void join(std::optional<TermId> at, std::vector<std::optional<TermId>>& b,
            std::vector<bool>& done, std::size_t remaining, std::vector<TermId>& out) const {
    if (remaining == 0) {
      if (filters_pass(at, b)) out.push_back(*b[dest_]);
      return;
    }
    // Most-bound pattern first.
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (done[i]) continue;
      int score = 0;
      for (const Slot& s : patterns_[i]) score += resolve(s, at, b).has_value();
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    const auto& pat = patterns_[best];
    auto s = resolve(pat[0], at, b), p = resolve(pat[1], at, b), o = resolve(pat[2], at, b);
    done[best] = true;
    store_.scan(s, p, o, [&](IdTriple t) {
      const TermId vals[3] = {t.s, t.p, t.o};
      std::vector<std::size_t> newly;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        const Slot& slot = pat[k];
        if (slot.kind != Slot::Var) continue;
        if (b[slot.var]) {
          ok = *b[slot.var] == vals[k];
        } else {
          b[slot.var] = vals[k];
          newly.push_back(slot.var);
        }
      }
      if (ok) join(at, b, done, remaining - 1, out);
      for (std::size_t v : newly) b[v].reset();
    });
    done[best] = false;
  }

  const TripleStore& store_;
  std::vector<std::string> names_;
  std::vector<std::array<Slot, 3>> patterns_;
  std::vector<std::pair<Slot, Slot>> filters_;
  std::size_t dest_ = 0;
  bool never_matches_ = false;
  bool uses_position_ = false;
};

}  // namespace

WalkerQuery parse_walker_query(std::string_view text) { return QueryParser(text).parse(); }

std::vector<Term> eval_walker_query(const TripleStore& store, const WalkerQuery& q,
                                    const Term& at) {
  CompiledQuery cq(store, q);
  std::vector<Term> out;
  for (TermId id : cq.run(store.find(at))) out.push_back(store.term(id));
  return out;
}

// --- grammar ----------------------------------------------------------------

void Grammar::validate() const {
  if (!nodes.contains(start)) throw ConfigError("grammar start node '" + start + "' is not defined");
  for (const auto& [id, node] : nodes) {
    if (!node.query) continue;
    if (!node.fallback) throw ConfigError("grammar node '" + id + "' has no fallback");
    if (!nodes.contains(*node.fallback))
      throw ConfigError("grammar node '" + id + "' falls back to unknown node '" +
                        *node.fallback + "'");
    if (node.transitions.empty())
      throw ConfigError("grammar node '" + id + "' has no transitions");
    double sum = 0.0;
    for (const auto& [target, prob] : node.transitions) {
      if (!nodes.contains(target))
        throw ConfigError("grammar node '" + id + "' transitions to unknown node '" + target + "'");
      if (!std::isfinite(prob) || prob < 0.0 || prob > 1.0)
        throw ConfigError("grammar node '" + id + "' has a transition probability outside [0,1]");
      sum += prob;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ConfigError("grammar node '" + id + "' transition probabilities sum to " +
                        std::to_string(sum));
  }
}

Grammar parse_grammar(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("grammar JSON: ") + e.what(), 1, e.byte);
  }
  Grammar g;
  try {
    g.start = j.at("start").get<std::string>();
    for (const auto& [id, node] : j.at("nodes").items()) {
      GrammarNode gn;
      if (node.contains("query")) {
        try {
          gn.query = parse_walker_query(node.at("query").get<std::string>());
        } catch (const SyntaxError& e) {
          throw ConfigError("grammar node '" + id + "': " + e.what());
        } catch (const ConfigError& e) {
          throw ConfigError("grammar node '" + id + "': " + e.what());
        }
      }
      if (node.contains("transitions"))
        for (const auto& t : node.at("transitions")) {
          if (!t.is_array() || t.size() != 2)
            throw ConfigError("grammar node '" + id + "': transitions must be [id, probability]");
          gn.transitions.emplace_back(t[0].get<std::string>(), t[1].get<double>());
        }
      if (node.contains("fallback")) gn.fallback = node.at("fallback").get<std::string>();
      g.nodes.emplace(id, std::move(gn));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grammar JSON: ") + e.what());
  }
  g.validate();
  return g;
}

// --- walkers ----------------------------------------------------------------

namespace {

struct CompiledNode {
  std::optional<CompiledQuery> query;
  std::vector<std::size_t> targets;
  std::vector<double> cumulative;
  std::size_t fallback = 0;
};

std::vector<TermId> uri_universe(const TripleStore& store) {
  std::vector<TermId> ids;
  for (const IdTriple& t : store.id_triples())
    for (TermId x : {t.s, t.o})
      if (store.term(x).is_uri()) ids.push_back(x);
  std::sort(ids.begin(), ids.end(),
            [&](TermId a, TermId b) { return store.term(a) < store.term(b); });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void walk_one(const std::vector<CompiledNode>& nodes,
              std::size_t start_node, std::optional<TermId> start, std::size_t steps,
              std::mt19937_64& rng, std::vector<std::uint64_t>& counts) {
  std::unordered_map<std::uint64_t, std::vector<TermId>> cache;
  std::size_t node = start_node;
  std::optional<TermId> at = start;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t step = 0; step < steps; ++step) {
    const CompiledNode& cn = nodes[node];
    if (!cn.query) break;
    const std::uint64_t key =
        (static_cast<std::uint64_t>(node) << 32) | (at ? *at : 0xffffffffu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, cn.query->run(at)).first;
    const auto& dests = it->second;
    if (dests.empty()) {
      node = cn.fallback;
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, dests.size() - 1);
    at = dests[pick(rng)];
    ++counts[*at];
    const double u = unit(rng);
    std::size_t k = 0;
    while (k + 1 < cn.cumulative.size() && u >= cn.cumulative[k]) ++k;
    node = cn.targets[k];
  }
}

}  // namespace

VisitCounts run_random_walkers(const TripleStore& store, const Grammar& grammar,
                               const WalkOptions& options) {
  grammar.validate();
  if (options.walkers == 0) throw ConfigError("walkers must be at least 1");

  std::map<std::string, std::size_t> index;
  for (const auto& [id, node] : grammar.nodes) index.emplace(id, index.size());
  std::vector<CompiledNode> nodes;
  for (const auto& [id, node] : grammar.nodes) {
    CompiledNode cn;
    if (node.query) {
      cn.query.emplace(store, *node.query);
      cn.fallback = index.at(*node.fallback);
      double acc = 0.0;
      for (const auto& [target, prob] : node.transitions) {
        acc += prob;
        cn.targets.push_back(index.at(target));
        cn.cumulative.push_back(acc);
      }
    }
    nodes.push_back(std::move(cn));
  }

  std::vector<std::optional<TermId>> starts(options.walkers);
  std::vector<TermId> universe;
  if (options.starts.empty()) {
    universe = uri_universe(store);
    if (universe.empty()) throw ConfigError("store has no URI vertices to start walkers from");
  } else {
    for (std::size_t i = 0; i < options.walkers; ++i) {
      const Term& t = options.starts[i % options.starts.size()];
      auto id = store.find(t);
      if (!id) throw LookupError("start vertex " + t.display() + " is not in the store");
      starts[i] = id;
    }
  }

  const std::uint32_t seed_lo = static_cast<std::uint32_t>(options.seed);
  const std::uint32_t seed_hi = static_cast<std::uint32_t>(options.seed >> 32);
  std::vector<std::vector<std::uint64_t>> per_walker(options.walkers);
  std::vector<std::exception_ptr> errors(options.walkers);
  auto run = [&](std::size_t w) {
    try {
      std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(w)};
      std::mt19937_64 rng(seq);
      std::optional<TermId> start = starts[w];
      if (!start) {
        std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
        start = universe[pick(rng)];
      }
      per_walker[w].assign(store.term_count(), 0);
      walk_one(nodes, index.at(grammar.start), start, options.steps, rng, per_walker[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, options.walkers);
  if (threads == 1) {
    for (std::size_t w = 0; w < options.walkers; ++w) run(w);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t w = t; w < options.walkers; w += threads) run(w);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::uint64_t> merged(store.term_count(), 0);
  for (const auto& counts : per_walker)
    for (std::size_t i = 0; i < counts.size(); ++i) merged[i] += counts[i];
  VisitCounts out;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i] == 0) continue;
    out.counts.emplace(store.term(static_cast<TermId>(i)), merged[i]);
    out.total += merged[i];
  }
  return out;
}

std::map<Term, std::uint32_t> run_geodesic_walkers(const TripleStore& store,
                                                   const WalkerQuery& q, const Term& source,
                                                   std::uint32_t max_depth) {
  CompiledQuery cq(store, q);
  std::map<Term, std::uint32_t> depth{{source, 0}};
  std::deque<std::pair<std::optional<TermId>, std::uint32_t>> frontier{{store.find(source), 0}};
  while (!frontier.empty()) {
    auto [at, d] = frontier.front();
    frontier.pop_front();
    if (d == max_depth) continue;
    for (TermId next : cq.run(at)) {
      if (depth.emplace(store.term(next), d + 1).second) frontier.emplace_back(next, d + 1);
    }
  }
  return depth;
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_csv(const VisitCounts& visits) {
  std::string out = "term,count,frequency\n";
  for (const auto& [term, count] : visits.counts) {
    double freq = visits.total ? static_cast<double>(count) / static_cast<double>(visits.total) : 0.0;
    out += detail::csv_field(term.display()) + "," + std::to_string(count) + "," +
           format_double(freq) + "\n";
  }
  return out;
}

std::string to_json(const VisitCounts& visits) {
  nlohmann::ordered_json j;
  j["total"] = visits.total;
  nlohmann::ordered_json rows = nlohmann::ordered_json::object();
  for (const auto& [term, count] : visits.counts) {
    double freq = visits.total ? static_cast<double>(count) / static_cast<double>(visits.total) : 0.0;
    rows[term.display()] = {{"count", count}, {"frequency", freq}};
  }
  j["visits"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace semnet
