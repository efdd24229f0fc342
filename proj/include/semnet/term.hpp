#pragma once
// Terms, triples and triple patterns: the atoms of every statement.

#include <compare>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace semnet {

enum class TermKind : std::uint8_t { Uri, Blank, Literal };

class Term {
 public:
  // Absolute IRI text; must be non-empty and contain a scheme separator ':'.
  static Term uri(std::string iri);
  // Document-scoped blank node label (without the "_:" prefix).
  static Term blank(std::string label);
  // Plain literal when datatype is empty, typed literal otherwise.
  static Term literal(std::string lexical, std::string datatype = {});

  TermKind kind() const noexcept { return kind_; }
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }

  bool is_uri() const noexcept { return kind_ == TermKind::Uri; }
  bool is_blank() const noexcept { return kind_ == TermKind::Blank; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }

  // N-Triples token: <iri>, _:label, "lex" or "lex"^^<dt>.
  std::string to_ntriples() const;
  // Human-oriented form used in reports: bare IRI text, _:label, or the
  // N-Triples literal token.
  std::string display() const;

  friend bool operator==(const Term&, const Term&) = default;
  // Ordered by value text first, then kind, then datatype.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(TermKind kind, std::string value, std::string datatype)
      : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

struct Triple {
  Term s;
  Term p;
  Term o;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

// Throws ConstraintError unless s is a URI/blank and p is a URI.
void validate(const Triple& t);

// One N-Triples statement, terminated by " .", without a newline.
std::string to_ntriples_line(const Triple& t);

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

inline Variable var(std::string name) { return Variable{std::move(name)}; }

using PatternSlot = std::variant<Term, Variable>;

struct TriplePattern {
  PatternSlot s;
  PatternSlot p;
  PatternSlot o;
};

// Variable name (without '?') to bound term.
using Bindings = std::map<std::string, Term>;

}  // namespace semnet
