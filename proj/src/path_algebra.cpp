#include "semnet/path_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "csv.hpp"
#include "semnet/error.hpp"
#include "semnet/triple_store.hpp"

namespace semnet {

// --- SparseMatrix -----------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

SparseMatrix SparseMatrix::from_entries(std::size_t n, std::vector<Entry> entries) {
  for (const Entry& e : entries)
    if (e.row >= n || e.col >= n) throw LookupError("matrix entry out of range");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(n);
  for (std::size_t i = 0; i < entries.size();) {
    Entry acc = entries[i++];
    while (i < entries.size() && entries[i].row == acc.row && entries[i].col == acc.col)
      acc.value += entries[i++].value;
    if (acc.value == 0.0) continue;
    m.cols_.push_back(acc.col);
    m.vals_.push_back(acc.value);
    ++m.offsets_[acc.row + 1];
  }
  for (std::size_t r = 0; r < n; ++r) m.offsets_[r + 1] += m.offsets_[r];
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.cols_.push_back(static_cast<std::uint32_t>(i));
    m.vals_.push_back(1.0);
    m.offsets_[i + 1] = i + 1;
  }
  return m;
}

SparseMatrix SparseMatrix::ones(std::size_t n) {
  SparseMatrix m(n);
  m.cols_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.cols_.push_back(static_cast<std::uint32_t>(j));
    m.offsets_[i + 1] = (i + 1) * n;
  }
  m.vals_.assign(n * n, 1.0);
  return m;
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= n_ || col >= n_) throw LookupError("matrix index out of range");
  auto cols = row_columns(row);
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return 0.0;
  return vals_[offsets_[row] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<SparseMatrix::Entry> SparseMatrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k)
      out.push_back({static_cast<std::uint32_t>(r), cols_[k], vals_[k]});
  return out;
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> d(n_, std::vector<double>(n_, 0.0));
  for (const Entry& e : entries()) d[e.row][e.col] = e.value;
  return d;
}

bool SparseMatrix::is_boolean() const {
  return std::all_of(vals_.begin(), vals_.end(), [](double v) { return v == 1.0; });
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t(n_);
  t.cols_.resize(nnz());
  t.vals_.resize(nnz());
  for (std::uint32_t c : cols_) ++t.offsets_[c + 1];
  for (std::size_t r = 0; r < n_; ++r) t.offsets_[r + 1] += t.offsets_[r];
  std::vector<std::size_t> fill(t.offsets_.begin(), t.offsets_.end() - 1);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      std::size_t dst = fill[cols_[k]]++;
      t.cols_[dst] = static_cast<std::uint32_t>(r);
      t.vals_[dst] = vals_[k];
    }
  }
  return t;
}

namespace {

void require_same_dimension(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.dimension() != b.dimension())
    throw TypeError("dimension mismatch: " + std::to_string(a.dimension()) + " vs " +
                    std::to_string(b.dimension()));
}

}  // namespace

// Row-by-row (Gustavson) product with a dense accumulator per output row.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  require_same_dimension(a, b);
  const std::size_t n = a.dimension();
  std::vector<double> acc(n, 0.0);
  std::vector<bool> touched(n, false);
  std::vector<std::uint32_t> cols;
  std::vector<SparseMatrix::Entry> out;
  for (std::size_t i = 0; i < n; ++i) {
    cols.clear();
    auto ac = a.row_columns(i);
    auto av = a.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      auto bc = b.row_columns(ac[k]);
      auto bv = b.row_values(ac[k]);
      for (std::size_t l = 0; l < bc.size(); ++l) {
        if (!touched[bc[l]]) {
          touched[bc[l]] = true;
          cols.push_back(bc[l]);
        }
        acc[bc[l]] += av[k] * bv[l];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (std::uint32_t c : cols) {
      if (acc[c] != 0.0) out.push_back({static_cast<std::uint32_t>(i), c, acc[c]});
      acc[c] = 0.0;
      touched[c] = false;
    }
  }
  return SparseMatrix::from_entries(n, std::move(out));
}

SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b) {
  require_same_dimension(a, b);
  std::vector<SparseMatrix::Entry> out;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    auto ac = a.row_columns(i), bc = b.row_columns(i);
    auto av = a.row_values(i), bv = b.row_values(i);
    std::size_t x = 0, y = 0;
    while (x < ac.size() && y < bc.size()) {
      if (ac[x] < bc[y]) {
        ++x;
      } else if (bc[y] < ac[x]) {
        ++y;
      } else {
        out.push_back({static_cast<std::uint32_t>(i), ac[x], av[x] * bv[y]});
        ++x;
        ++y;
      }
    }
  }
  return SparseMatrix::from_entries(a.dimension(), std::move(out));
}

SparseMatrix complement(const SparseMatrix& a) {
  if (!a.is_boolean()) throw TypeError("complement is only defined for {0,1} matrices");
  const std::size_t n = a.dimension();
  std::vector<SparseMatrix::Entry> out;
  out.reserve(n * n - a.nnz());
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = a.row_columns(i);
    std::size_t k = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (k < cols.size() && cols[k] == j) {
        ++k;
        continue;
      }
      out.push_back({static_cast<std::uint32_t>(i), j, 1.0});
    }
  }
  return SparseMatrix::from_entries(n, std::move(out));
}

SparseMatrix mask_out(const SparseMatrix& a, const SparseMatrix& mask) {
  require_same_dimension(a, mask);
  if (!mask.is_boolean()) throw TypeError("complement is only defined for {0,1} matrices");
  std::vector<SparseMatrix::Entry> out;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    auto ac = a.row_columns(i), mc = mask.row_columns(i);
    auto av = a.row_values(i);
    std::size_t y = 0;
    for (std::size_t x = 0; x < ac.size(); ++x) {
      while (y < mc.size() && mc[y] < ac[x]) ++y;
      if (y < mc.size() && mc[y] == ac[x]) continue;
      out.push_back({static_cast<std::uint32_t>(i), ac[x], av[x]});
    }
  }
  return SparseMatrix::from_entries(a.dimension(), std::move(out));
}

// --- RelationTensor ---------------------------------------------------------

RelationTensor::RelationTensor(std::vector<Term> vertices, std::map<Term, SparseMatrix> slices)
    : vertices_(std::move(vertices)), slices_(std::move(slices)) {
  if (!std::is_sorted(vertices_.begin(), vertices_.end()))
    std::sort(vertices_.begin(), vertices_.end());
  for (const auto& [p, m] : slices_)
    if (m.dimension() != vertices_.size())
      throw TypeError("slice " + p.display() + " does not match the vertex count");
}

std::optional<std::uint32_t> RelationTensor::index_of(const Term& t) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), t);
  if (it == vertices_.end() || *it != t) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

const SparseMatrix& RelationTensor::slice(const Term& predicate) const {
  auto it = slices_.find(predicate);
  if (it == slices_.end()) throw LookupError("no slice for predicate " + predicate.display());
  return it->second;
}

RelationTensor tensor_from_store(const TripleStore& store, const std::vector<Term>& predicates,
                                 bool include_literals) {
  if (predicates.empty()) throw ConfigError("tensor needs at least one predicate");
  std::map<Term, std::vector<IdTriple>> hits;
  std::vector<Term> vertices;
  for (const Term& p : predicates) {
    auto& list = hits[p];
    auto pid = store.find(p);
    if (!pid) continue;
    store.scan(std::nullopt, *pid, std::nullopt, [&](IdTriple t) {
      if (!include_literals && store.term(t.o).is_literal()) return;
      list.push_back(t);
      vertices.push_back(store.term(t.s));
      vertices.push_back(store.term(t.o));
    });
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  auto idx = [&](const Term& t) {
    return static_cast<std::uint32_t>(std::lower_bound(vertices.begin(), vertices.end(), t) -
                                      vertices.begin());
  };
  std::map<Term, SparseMatrix> slices;
  for (const auto& [p, list] : hits) {
    std::vector<SparseMatrix::Entry> entries;
    entries.reserve(list.size());
    for (IdTriple t : list) entries.push_back({idx(store.term(t.s)), idx(store.term(t.o)), 1.0});
    slices.emplace(p, SparseMatrix::from_entries(vertices.size(), std::move(entries)));
  }
  return RelationTensor(std::move(vertices), std::move(slices));
}

// --- PathExpr ---------------------------------------------------------------

PathExpr PathExpr::slice(Term predicate) {
  if (!predicate.is_uri()) throw TypeError("slice predicate must be a URI");
  PathExpr e(Op::Slice);
  e.predicate_ = std::move(predicate);
  return e;
}

PathExpr PathExpr::transpose(PathExpr inner) {
  PathExpr e(Op::Transpose);
  e.lhs_ = std::make_shared<const PathExpr>(std::move(inner));
  return e;
}

PathExpr PathExpr::product(PathExpr a, PathExpr b) {
  PathExpr e(Op::Product);
  e.lhs_ = std::make_shared<const PathExpr>(std::move(a));
  e.rhs_ = std::make_shared<const PathExpr>(std::move(b));
  return e;
}

PathExpr PathExpr::hadamard(PathExpr a, PathExpr b) {
  PathExpr e(Op::Hadamard);
  e.lhs_ = std::make_shared<const PathExpr>(std::move(a));
  e.rhs_ = std::make_shared<const PathExpr>(std::move(b));
  return e;
}

PathExpr PathExpr::ones() { return PathExpr(Op::Ones); }
PathExpr PathExpr::identity() { return PathExpr(Op::Identity); }

PathExpr PathExpr::complement(PathExpr inner) {
  if (!inner.is_boolean())
    throw TypeError("not() needs a {0,1}-valued operand, got " + inner.to_string());
  PathExpr e(Op::Complement);
  e.lhs_ = std::make_shared<const PathExpr>(std::move(inner));
  return e;
}

bool PathExpr::is_boolean() const {
  switch (op_) {
    case Op::Slice:
    case Op::Ones:
    case Op::Identity:
    case Op::Complement: return true;
    case Op::Transpose: return lhs_->is_boolean();
    case Op::Hadamard: return lhs_->is_boolean() && rhs_->is_boolean();
    case Op::Product: return false;
  }
  return false;
}

std::set<Term> PathExpr::slices() const {
  std::set<Term> out;
  if (op_ == Op::Slice) out.insert(*predicate_);
  for (const auto* child : {lhs_.get(), rhs_.get()}) {
    if (!child) continue;
    auto sub = child->slices();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::string PathExpr::to_string() const {
  switch (op_) {
    case Op::Slice: return "slice('" + predicate_->value() + "')";
    case Op::Transpose: return "t(" + lhs_->to_string() + ")";
    case Op::Product: return "(" + lhs_->to_string() + " * " + rhs_->to_string() + ")";
    case Op::Hadamard: return "(" + lhs_->to_string() + " & " + rhs_->to_string() + ")";
    case Op::Ones: return "ones";
    case Op::Identity: return "id";
    case Op::Complement: return "not(" + lhs_->to_string() + ")";
  }
  return "?";
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  PathExpr parse() {
    PathExpr e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, 1, pos_ + 1); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  PathExpr expr() {
    PathExpr e = product();
    while (eat('&')) e = PathExpr::hadamard(std::move(e), product());
    return e;
  }

  PathExpr product() {
    PathExpr e = factor();
    while (eat('*')) e = PathExpr::product(std::move(e), factor());
    return e;
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != '\'' && text_[pos_] != '"'))
      fail("expected quoted IRI");
    char q = text_[pos_++];
    auto end = text_.find(q, pos_);
    if (end == std::string_view::npos) fail("unterminated quoted IRI");
    std::string body(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    if (body.size() >= 2 && body.front() == '<' && body.back() == '>')
      body = body.substr(1, body.size() - 2);
    return body;
  }

  PathExpr factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      PathExpr e = expr();
      expect(')');
      return e;
    }
    const std::size_t at = pos_;
    std::string name = identifier();
    if (name.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (name == "ones") return PathExpr::ones();
    if (name == "id") return PathExpr::identity();
    if (name == "slice") {
      expect('(');
      std::size_t iri_at = pos_;
      std::string iri = quoted();
      expect(')');
      try {
        return PathExpr::slice(Term::uri(std::move(iri)));
      } catch (const ConstraintError& e) {
        pos_ = iri_at;
        fail(e.what());
      }
    }
    if (name == "t" || name == "not") {
      expect('(');
      PathExpr inner = expr();
      expect(')');
      if (name == "t") return PathExpr::transpose(std::move(inner));
      return PathExpr::complement(std::move(inner));
    }
    pos_ = at;
    fail("unknown operator '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

SparseMatrix eval(const PathExpr& e, const RelationTensor& tensor) {
  using Op = PathExpr::Op;
  const std::size_t n = tensor.dimension();
  switch (e.op()) {
    case Op::Slice: return tensor.slice(e.predicate());
    case Op::Ones: return SparseMatrix::ones(n);
    case Op::Identity: return SparseMatrix::identity(n);
    case Op::Transpose: return eval(e.lhs(), tensor).transposed();
    case Op::Product: return multiply(eval(e.lhs(), tensor), eval(e.rhs(), tensor));
    case Op::Complement: return complement(eval(e.lhs(), tensor));
    case Op::Hadamard: {
      // Filters against ones or a complement never build a dense operand.
      const PathExpr& l = e.lhs();
      const PathExpr& r = e.rhs();
      if (r.op() == Op::Ones) return eval(l, tensor);
      if (l.op() == Op::Ones) return eval(r, tensor);
      if (r.op() == Op::Complement) return mask_out(eval(l, tensor), eval(r.lhs(), tensor));
      if (l.op() == Op::Complement) return mask_out(eval(r, tensor), eval(l.lhs(), tensor));
      return hadamard(eval(l, tensor), eval(r, tensor));
    }
  }
  throw TypeError("unknown path operation");
}

}  // namespace

PathExpr parse_path_expr(std::string_view text) { return ExprParser(text).parse(); }

SparseMatrix eval_path_expr(const PathExpr& expr, const RelationTensor& tensor) {
  return eval(expr, tensor);
}

Graph to_graph(const SparseMatrix& m, const std::vector<Term>& vertices) {
  if (m.dimension() != vertices.size()) throw TypeError("vertex list does not match matrix");
  std::vector<Edge> edges;
  for (const auto& e : m.entries()) edges.emplace_back(e.row, e.col);
  return Graph(vertices, std::move(edges));
}

std::string to_csv(const SparseMatrix& m, const std::vector<Term>& vertices) {
  if (m.dimension() != vertices.size()) throw TypeError("vertex list does not match matrix");
  std::ostringstream os;
  os.precision(17);
  os << "row,col,value\n";
  for (const auto& e : m.entries())
    os << detail::csv_field(vertices[e.row].display()) << ','
       << detail::csv_field(vertices[e.col].display()) << ',' << e.value << '\n';
  return os.str();
}

}  // namespace semnet
