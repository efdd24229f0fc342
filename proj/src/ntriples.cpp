#include <algorithm>
#include <unordered_map>

#include "semnet/error.hpp"
#include "semnet/triple_store.hpp"

namespace semnet {

Term BlankNodeAllocator::fresh() { return Term::blank("b" + std::to_string(next_++)); }

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '-' || c == '.' || static_cast<unsigned char>(c) >= 0x80;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no,
             std::unordered_map<std::string, Term>& labels, BlankNodeAllocator& blanks)
      : line_(line), line_no_(line_no), labels_(labels), blanks_(blanks) {}

  Triple parse() {
    Term s = term();
    Term p = term();
    Term o = term();
    skip_ws();
    if (!eat('.')) fail("expected '.' after object");
    skip_ws();
    if (pos_ < line_.size() && line_[pos_] != '#') fail("unexpected text after '.'");
    Triple t{std::move(s), std::move(p), std::move(o)};
    if (t.s.is_literal()) constraint("literal in subject position");
    if (t.p.is_literal()) constraint("literal in predicate position");
    if (!t.p.is_uri()) constraint("blank node in predicate position");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_no_, pos_ + 1);
  }
  [[noreturn]] void constraint(const std::string& msg) const {
    throw ConstraintError("line " + std::to_string(line_no_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    if (pos_ < line_.size() && line_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string iri_body() {
    // Caller consumed '<'.
    auto end = line_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string body(line_.substr(pos_, end - pos_));
    if (body.find_first_of(" \t\"<") != std::string::npos) fail("invalid character in IRI");
    pos_ = end + 1;
    return body;
  }

  Term make_uri(std::string body) {
    try {
      return Term::uri(std::move(body));
    } catch (const ConstraintError& e) {
      fail(e.what());
    }
  }

  Term term() {
    skip_ws();
    if (pos_ >= line_.size()) fail("unexpected end of statement");
    char c = line_[pos_];
    if (c == '<') {
      ++pos_;
      return make_uri(iri_body());
    }
    if (c == '_') {
      if (line_.substr(pos_, 2) != "_:") fail("expected '_:' blank node label");
      pos_ += 2;
      std::size_t start = pos_;
      while (pos_ < line_.size() && is_label_char(line_[pos_])) ++pos_;
      // A label never ends in '.', so "_:a." is label "a" followed by the terminator.
      while (pos_ > start && line_[pos_ - 1] == '.') --pos_;
      if (pos_ == start) fail("empty blank node label");
      std::string label(line_.substr(start, pos_ - start));
      auto it = labels_.find(label);
      if (it == labels_.end()) it = labels_.emplace(label, blanks_.fresh()).first;
      return it->second;
    }
    if (c == '"') {
      ++pos_;
      std::string lexical = literal_body();
      if (line_.substr(pos_, 2) == "^^") {
        pos_ += 2;
        if (!eat('<')) fail("expected '<' after '^^'");
        std::string dt = iri_body();
        try {
          return Term::literal(std::move(lexical), std::move(dt));
        } catch (const ConstraintError& e) {
          fail(e.what());
        }
      }
      if (pos_ < line_.size() && line_[pos_] == '@') fail("language-tagged literals are not supported");
      return Term::literal(std::move(lexical));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > line_.size()) fail("truncated unicode escape");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = line_[pos_++];
      v <<= 4;
      if (h >= '0' && h <= '9') v |= static_cast<std::uint32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') v |= static_cast<std::uint32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') v |= static_cast<std::uint32_t>(h - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    return v;
  }

  std::string literal_body() {
    std::string out;
    while (true) {
      if (pos_ >= line_.size()) fail("unterminated literal");
      char c = line_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= line_.size()) fail("dangling escape");
      char e = line_[pos_++];
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, hex(4)); break;
        case 'U': append_utf8(out, hex(8)); break;
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, Term>& labels_;
  BlankNodeAllocator& blanks_;
};

}  // namespace

std::vector<Triple> parse_ntriples(std::string_view text) {
  BlankNodeAllocator blanks;
  return parse_ntriples(text, blanks);
}

std::vector<Triple> parse_ntriples(std::string_view text, BlankNodeAllocator& blanks) {
  std::vector<Triple> out;
  std::unordered_map<std::string, Term> labels;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back(LineParser(line, line_no, labels, blanks).parse());
  }
  return out;
}

std::string serialize_ntriples(const TripleStore& store) {
  std::vector<std::string> lines;
  lines.reserve(store.size());
  for (IdTriple t : store.id_triples()) lines.push_back(to_ntriples_line(store.to_triple(t)));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace semnet
