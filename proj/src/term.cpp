#include "semnet/term.hpp"

#include "semnet/error.hpp"

namespace semnet {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line == 0 ? message
                      : "line " + std::to_string(line) +
                            (column ? ", column " + std::to_string(column) : std::string{}) +
                            ": " + message),
      line_(line),
      column_(column) {}

namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

bool looks_like_iri(std::string_view s) {
  if (s.empty()) return false;
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (char c : s)
    if (c == ' ' || c == '<' || c == '>' || c == '"' || c == '\n' || c == '\t') return false;
  return true;
}

}  // namespace

Term Term::uri(std::string iri) {
  if (!looks_like_iri(iri)) throw ConstraintError("not an absolute IRI: '" + iri + "'");
  return Term(TermKind::Uri, std::move(iri), {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw ConstraintError("blank node label must be non-empty");
  return Term(TermKind::Blank, std::move(label), {});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (!datatype.empty() && !looks_like_iri(datatype))
    throw ConstraintError("literal datatype is not an IRI: '" + datatype + "'");
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype));
}

std::string Term::to_ntriples() const {
  std::string out;
  switch (kind_) {
    case TermKind::Uri:
      out.reserve(value_.size() + 2);
      out += '<';
      out += value_;
      out += '>';
      break;
    case TermKind::Blank:
      out = "_:" + value_;
      break;
    case TermKind::Literal:
      out += '"';
      append_escaped(out, value_);
      out += '"';
      if (!datatype_.empty()) {
        out += "^^<";
        out += datatype_;
        out += '>';
      }
      break;
  }
  return out;
}

std::string Term::display() const {
  switch (kind_) {
    case TermKind::Uri: return value_;
    case TermKind::Blank: return "_:" + value_;
    case TermKind::Literal: return to_ntriples();
  }
  return value_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.value_.compare(b.value_); c != 0) return c < 0 ? std::strong_ordering::less
                                                                 : std::strong_ordering::greater;
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.datatype_.compare(b.datatype_); c != 0)
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  h ^= static_cast<std::size_t>(t.kind()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  if (!t.datatype().empty())
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

void validate(const Triple& t) {
  if (t.s.is_literal())
    throw ConstraintError("literal in subject position: " + to_ntriples_line(t));
  if (!t.p.is_uri())
    throw ConstraintError("predicate must be a URI: " + to_ntriples_line(t));
}

std::string to_ntriples_line(const Triple& t) {
  return t.s.to_ntriples() + ' ' + t.p.to_ntriples() + ' ' + t.o.to_ntriples() + " .";
}

}  // namespace semnet
