#include "semnet/nal.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "semnet/error.hpp"
#include "semnet/vocab.hpp"

namespace semnet::nal {

namespace {

Term vocab_uri(std::string_view s) { return Term::uri(std::string(s)); }

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_real(const Term& t, std::string_view what) {
  if (!t.is_literal()) throw ConstraintError(std::string(what) + " must be a literal");
  double v = 0.0;
  const char* first = t.value().data();
  const char* last = first + t.value().size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ConstraintError(std::string(what) + " is not a number: '" + t.value() + "'");
  return v;
}

Term float_literal(double v) { return Term::literal(format_real(v), std::string(vocab::kXsdFloat)); }

// FNV-1a, used to mint deterministic statement pointers.
std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Term mint_pointer(Syllogism rule, const Term& a, const Term& b) {
  std::string key(to_string(rule));
  key += '\x1f';
  key += a.to_ntriples();
  key += '\x1f';
  key += b.to_ntriples();
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a(key);
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) hex[static_cast<std::size_t>(i)] = kHex[h & 0xF];
  return Term::uri("nal:" + std::string(to_string(rule)) + "-" + hex);
}

}  // namespace

void validate(const TruthValue& tv) {
  auto ok = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!ok(tv.frequency) || !ok(tv.confidence))
    throw ConstraintError("truth value <" + format_real(tv.frequency) + ", " +
                          format_real(tv.confidence) + "> outside [0,1]");
}

std::string_view to_string(Syllogism rule) {
  switch (rule) {
    case Syllogism::Deduction: return "deduction";
    case Syllogism::Induction: return "induction";
    case Syllogism::Abduction: return "abduction";
    case Syllogism::Exemplification: return "exemplification";
  }
  return "unknown";
}

Syllogism syllogism_from_string(std::string_view name) {
  for (Syllogism s : kAllSyllogisms)
    if (to_string(s) == name) return s;
  throw ConfigError("unknown syllogism '" + std::string(name) + "'");
}

TruthValue deduction(TruthValue a, TruthValue b) {
  return {a.frequency * b.frequency, a.frequency * a.confidence * b.frequency * b.confidence};
}

TruthValue induction(TruthValue a, TruthValue b, unsigned k) {
  const double w = a.frequency * a.confidence * b.confidence;
  return {a.frequency, w / (w + k)};
}

TruthValue abduction(TruthValue a, TruthValue b, unsigned k) {
  const double w = b.frequency * a.confidence * b.confidence;
  return {b.frequency, w / (w + k)};
}

TruthValue exemplification(TruthValue a, TruthValue b, unsigned k) {
  const double w = a.frequency * a.confidence * b.frequency * b.confidence;
  return {1.0, w / (w + k)};
}

namespace {

struct Conclusion {
  const Term* subject;
  const Term* predicate;
  TruthValue truth;
};

// nullopt when the premises do not have the rule's shape.
std::optional<Conclusion> conclude(Syllogism rule, const Judgment& a, const Judgment& b,
                                   unsigned k) {
  switch (rule) {
    case Syllogism::Deduction:
      if (a.predicate != b.subject) return std::nullopt;
      return Conclusion{&a.subject, &b.predicate, deduction(a.truth, b.truth)};
    case Syllogism::Induction:
      if (a.predicate != b.predicate) return std::nullopt;
      return Conclusion{&a.subject, &b.subject, induction(a.truth, b.truth, k)};
    case Syllogism::Abduction:
      if (a.subject != b.subject) return std::nullopt;
      return Conclusion{&a.predicate, &b.predicate, abduction(a.truth, b.truth, k)};
    case Syllogism::Exemplification:
      if (a.predicate != b.subject) return std::nullopt;
      return Conclusion{&b.predicate, &a.subject, exemplification(a.truth, b.truth, k)};
  }
  return std::nullopt;
}

std::string_view shape_of(Syllogism rule) {
  switch (rule) {
    case Syllogism::Deduction:
    case Syllogism::Exemplification: return "(x->y, y->z)";
    case Syllogism::Induction: return "(x->y, z->y)";
    case Syllogism::Abduction: return "(x->y, x->z)";
  }
  return "";
}

}  // namespace

Judgment apply_syllogism(Syllogism rule, const Judgment& first, const Judgment& second,
                         unsigned k) {
  if (k == 0) throw ConfigError("k must be a positive integer");
  auto c = conclude(rule, first, second, k);
  if (!c)
    throw ShapeError(std::string(to_string(rule)) + " needs " + std::string(shape_of(rule)) +
                     " premises");
  if (*c->subject == *c->predicate)
    throw DegenerateError(std::string(to_string(rule)) + " would conclude " +
                          c->subject->display() + " -> itself");
  return Judgment{*c->subject, *c->predicate, c->truth,
                  mint_pointer(rule, first.pointer, second.pointer)};
}

std::vector<Triple> encode(const Judgment& j) {
  validate(j.truth);
  const Term freq = vocab_uri(vocab::kNalFrequency);
  const Term conf = vocab_uri(vocab::kNalConfidence);
  return {{j.subject, j.pointer, j.predicate},
          {j.pointer, freq, float_literal(j.truth.frequency)},
          {j.pointer, conf, float_literal(j.truth.confidence)}};
}

std::vector<Triple> encode(const ProductJudgment& j) {
  validate(j.truth);
  if (j.components.size() < 2) throw ConstraintError("product needs at least two components");
  std::vector<Triple> out;
  out.reserve(j.components.size() + 3);
  for (std::size_t i = 0; i < j.components.size(); ++i)
    out.push_back({j.set_pointer,
                   Term::uri(std::string(vocab::kNalComponentPrefix) + std::to_string(i + 1)),
                   j.components[i]});
  out.push_back({j.set_pointer, j.statement_pointer, j.predicate});
  out.push_back({j.statement_pointer, vocab_uri(vocab::kNalFrequency),
                 float_literal(j.truth.frequency)});
  out.push_back({j.statement_pointer, vocab_uri(vocab::kNalConfidence),
                 float_literal(j.truth.confidence)});
  return out;
}

Knowledge decode(const TripleStore& store) {
  Knowledge kb;
  auto freq = store.find(vocab_uri(vocab::kNalFrequency));
  auto conf = store.find(vocab_uri(vocab::kNalConfidence));
  if (!freq || !conf) return kb;

  std::vector<TermId> pointers;
  store.scan(std::nullopt, *freq, std::nullopt, [&](IdTriple u) { pointers.push_back(u.s); });
  std::sort(pointers.begin(), pointers.end());
  pointers.erase(std::unique(pointers.begin(), pointers.end()), pointers.end());

  const std::string prefix(vocab::kNalComponentPrefix);
  for (TermId ptr : pointers) {
    const Term& pointer = store.term(ptr);
    auto single = [&](TermId pred, std::string_view what) {
      std::vector<TermId> vals;
      store.scan(ptr, pred, std::nullopt, [&](IdTriple u) { vals.push_back(u.o); });
      if (vals.size() != 1)
        throw ConstraintError(pointer.display() + " has " + std::to_string(vals.size()) + " " +
                              std::string(what) + " values");
      return parse_real(store.term(vals.front()), what);
    };
    std::vector<TermId> confs;
    store.scan(ptr, *conf, std::nullopt, [&](IdTriple u) { confs.push_back(u.o); });
    if (confs.empty()) continue;  // not a complete reification

    TruthValue tv{single(*freq, "nal:frequency"), single(*conf, "nal:confidence")};
    validate(tv);

    std::vector<IdTriple> stmts;
    store.scan(std::nullopt, ptr, std::nullopt, [&](IdTriple u) { stmts.push_back(u); });
    if (stmts.size() != 1)
      throw ConstraintError("statement pointer " + pointer.display() + " is used by " +
                            std::to_string(stmts.size()) + " statements");
    const Term& subject = store.term(stmts.front().s);
    const Term& predicate = store.term(stmts.front().o);

    // Product sets carry nal:_i component links.
    std::map<std::size_t, Term> components;
    store.scan(stmts.front().s, std::nullopt, std::nullopt, [&](IdTriple u) {
      const std::string& p = store.term(u.p).value();
      if (p.size() <= prefix.size() || p.compare(0, prefix.size(), prefix) != 0) return;
      std::size_t idx = 0;
      auto [end, ec] = std::from_chars(p.data() + prefix.size(), p.data() + p.size(), idx);
      if (ec == std::errc{} && end == p.data() + p.size() && idx >= 1)
        components.emplace(idx, store.term(u.o));
    });

    if (components.empty()) {
      if (subject == predicate)
        throw ConstraintError("self-inheritance judgment " + subject.display());
      kb.judgments.push_back(Judgment{subject, predicate, tv, pointer});
    } else {
      ProductJudgment pj{{}, predicate, tv, subject, pointer};
      std::size_t expected = 1;
      for (auto& [idx, term] : components) {
        if (idx != expected++)
          throw ConstraintError("product " + subject.display() + " has a gap in its components");
        pj.components.push_back(term);
      }
      if (pj.components.size() < 2)
        throw ConstraintError("product " + subject.display() + " has fewer than two components");
      kb.products.push_back(std::move(pj));
    }
  }

  std::sort(kb.judgments.begin(), kb.judgments.end(), [](const Judgment& a, const Judgment& b) {
    return std::tie(a.subject, a.predicate, a.pointer) < std::tie(b.subject, b.predicate, b.pointer);
  });
  std::sort(kb.products.begin(), kb.products.end(),
            [](const ProductJudgment& a, const ProductJudgment& b) {
              return std::tie(a.components, a.predicate, a.set_pointer) <
                     std::tie(b.components, b.predicate, b.set_pointer);
            });
  return kb;
}

std::vector<Judgment> saturate(std::span<const Judgment> kb, std::span<const Syllogism> rules,
                               const SaturationOptions& options) {
  if (options.k == 0) throw ConfigError("k must be a positive integer");
  auto by_terms = [](const Judgment& a, const Judgment& b) {
    return std::tie(a.subject, a.predicate, a.pointer) < std::tie(b.subject, b.predicate, b.pointer);
  };

  std::vector<Judgment> current(kb.begin(), kb.end());
  std::sort(current.begin(), current.end(), by_terms);
  std::set<std::pair<Term, Term>> known;
  for (const Judgment& j : current) known.emplace(j.subject, j.predicate);

  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    std::vector<Judgment> fresh;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = 0; j < current.size(); ++j) {
        if (i == j) continue;
        const Judgment& a = current[i];
        const Judgment& b = current[j];
        for (Syllogism rule : rules) {
          auto c = conclude(rule, a, b, options.k);
          if (!c || *c->subject == *c->predicate) continue;
          if (!known.emplace(*c->subject, *c->predicate).second) continue;
          fresh.push_back(Judgment{*c->subject, *c->predicate, c->truth,
                                   mint_pointer(rule, a.pointer, b.pointer)});
          if (current.size() + fresh.size() > options.max_judgments)
            throw ResourceLimitError("NAL saturation exceeded " +
                                     std::to_string(options.max_judgments) + " judgments");
        }
      }
    }
    if (fresh.empty()) break;
    current.insert(current.end(), std::make_move_iterator(fresh.begin()),
                   std::make_move_iterator(fresh.end()));
    std::sort(current.begin(), current.end(), by_terms);
  }
  return current;
}

}  // namespace semnet::nal
