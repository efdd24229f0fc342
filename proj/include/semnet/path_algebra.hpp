#pragma once
// Multi-relational path algebra over a relation tensor: traverse (matrix
// product), transpose, and filter (Hadamard product), with a small textual
// expression language:
//
//   expr    := product ('&' product)*
//   product := factor ('*' factor)*
//   factor  := slice('<iri>') | t(expr) | not(expr) | ones | id | (expr)
//
// '*' binds tighter than '&'. not(X) is 1 - X and is only defined for
// {0,1}-valued X.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/graph.hpp"
#include "semnet/term.hpp"

namespace semnet {

class TripleStore;

// Square sparse matrix in compressed sparse row form. Explicit zeros are
// never stored.
class SparseMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    double value;
  };

  explicit SparseMatrix(std::size_t n = 0);
  // Duplicate coordinates are summed; resulting zeros are dropped.
  static SparseMatrix from_entries(std::size_t n, std::vector<Entry> entries);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix ones(std::size_t n);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return cols_.size(); }
  double at(std::size_t row, std::size_t col) const;

  std::span<const std::uint32_t> row_columns(std::size_t row) const {
    return {cols_.data() + offsets_[row], cols_.data() + offsets_[row + 1]};
  }
  std::span<const double> row_values(std::size_t row) const {
    return {vals_.data() + offsets_[row], vals_.data() + offsets_[row + 1]};
  }

  std::vector<Entry> entries() const;
  std::vector<std::vector<double>> to_dense() const;
  bool is_boolean() const;
  SparseMatrix transposed() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b);
// 1 - a; throws TypeError unless a is {0,1}-valued.
SparseMatrix complement(const SparseMatrix& a);
// a o (1 - mask) for boolean mask, without building the dense complement.
SparseMatrix mask_out(const SparseMatrix& a, const SparseMatrix& mask);

// Stack of {0,1} adjacency slices over one shared vertex numbering.
class RelationTensor {
 public:
  RelationTensor(std::vector<Term> vertices, std::map<Term, SparseMatrix> slices);

  std::size_t dimension() const noexcept { return vertices_.size(); }
  const std::vector<Term>& vertices() const noexcept { return vertices_; }
  std::optional<std::uint32_t> index_of(const Term& t) const;
  // Throws LookupError for unknown predicates.
  const SparseMatrix& slice(const Term& predicate) const;
  bool has_slice(const Term& predicate) const { return slices_.contains(predicate); }
  const std::map<Term, SparseMatrix>& slices() const noexcept { return slices_; }

 private:
  std::vector<Term> vertices_;
  std::map<Term, SparseMatrix> slices_;
};

// Vertex universe: subjects and non-literal objects of triples using any of
// the predicates (literal objects too with include_literals), sorted.
RelationTensor tensor_from_store(const TripleStore& store, const std::vector<Term>& predicates,
                                 bool include_literals = false);

class PathExpr {
 public:
  enum class Op : std::uint8_t { Slice, Transpose, Product, Hadamard, Ones, Identity, Complement };

  static PathExpr slice(Term predicate);
  static PathExpr transpose(PathExpr e);
  static PathExpr product(PathExpr a, PathExpr b);
  static PathExpr hadamard(PathExpr a, PathExpr b);
  static PathExpr ones();
  static PathExpr identity();
  // Throws TypeError if e is not {0,1}-valued.
  static PathExpr complement(PathExpr e);

  Op op() const noexcept { return op_; }
  const Term& predicate() const { return *predicate_; }
  const PathExpr& lhs() const { return *lhs_; }
  const PathExpr& rhs() const { return *rhs_; }

  // True when every evaluation is {0,1}-valued (products count paths).
  bool is_boolean() const;
  std::set<Term> slices() const;
  std::string to_string() const;

 private:
  explicit PathExpr(Op op) : op_(op) {}

  Op op_;
  std::optional<Term> predicate_;
  std::shared_ptr<const PathExpr> lhs_;
  std::shared_ptr<const PathExpr> rhs_;
};

// Throws SyntaxError (column = 1-based offset) or TypeError.
PathExpr parse_path_expr(std::string_view text);

// Throws LookupError if a referenced slice is missing.
SparseMatrix eval_path_expr(const PathExpr& expr, const RelationTensor& tensor);

// Edge (i,j) wherever m(i,j) != 0.
Graph to_graph(const SparseMatrix& m, const std::vector<Term>& vertices);

// Coordinate list "row,col,value", one line per stored entry.
std::string to_csv(const SparseMatrix& m, const std::vector<Term>& vertices);

}  // namespace semnet
