#include "doctest.h"

#include <random>

#include "semnet/error.hpp"
#include "semnet/netkit.hpp"
#include "semnet/path_algebra.hpp"
#include "semnet/triple_store.hpp"
#include "support.hpp"

using namespace semnet;
using testing::T;
using testing::U;

namespace {

SparseMatrix random_boolean(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<SparseMatrix::Entry> e;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (coin(rng)) e.push_back({i, j, 1.0});
  return SparseMatrix::from_entries(n, e);
}

std::vector<std::vector<double>> dense_product(const std::vector<std::vector<double>>& a,
                                               const std::vector<std::vector<double>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("sparse matrix basics") {
  auto m = SparseMatrix::from_entries(3, {{0, 1, 1.0}, {0, 1, 2.0}, {2, 0, 1.0}, {1, 1, 0.0}});
  CHECK(m.nnz() == 2);
  CHECK(m.at(0, 1) == 3.0);
  CHECK(m.at(1, 1) == 0.0);
  CHECK_FALSE(m.is_boolean());
  CHECK(SparseMatrix::identity(3).nnz() == 3);
  CHECK(SparseMatrix::ones(3).nnz() == 9);
  CHECK(m.transposed().at(1, 0) == 3.0);
  CHECK_THROWS_AS(complement(m), TypeError);
  CHECK_THROWS_AS(multiply(m, SparseMatrix::identity(2)), TypeError);
  CHECK(complement(SparseMatrix::identity(3)).nnz() == 6);
}

TEST_CASE("tensor_from_store") {
  auto s = testing::store_of({T("a:a", "a:p", "a:b"), T("a:b", "a:p", "a:c"),
                              T("a:a", "a:p", "a:c"), T("a:x", "a:q", "a:y")});
  auto one = tensor_from_store(s, {U("a:p")});
  CHECK(one.dimension() == 3);
  CHECK(one.slice(U("a:p")).nnz() == 3);
  auto two = tensor_from_store(s, {U("a:p"), U("a:q")});
  CHECK(two.dimension() == 5);
  CHECK(two.slice(U("a:q")).at(*two.index_of(U("a:x")), *two.index_of(U("a:y"))) == 1.0);
  CHECK_THROWS_AS(two.slice(U("a:r")), LookupError);
  CHECK_THROWS_AS(tensor_from_store(s, {}), ConfigError);
}

TEST_CASE("parse_path_expr") {
  auto e = parse_path_expr("(slice('lanl:authored') * t(slice('lanl:authored'))) & not(id)");
  CHECK(e.op() == PathExpr::Op::Hadamard);
  CHECK(e.lhs().op() == PathExpr::Op::Product);
  CHECK(e.rhs().op() == PathExpr::Op::Complement);
  CHECK(parse_path_expr("id").op() == PathExpr::Op::Identity);
  CHECK(parse_path_expr("slice('<a:p>')").predicate() == U("a:p"));

  // '*' binds tighter than '&'.
  auto p = parse_path_expr("slice('a:p') & slice('a:q') * slice('a:r')");
  CHECK(p.op() == PathExpr::Op::Hadamard);
  CHECK(p.rhs().op() == PathExpr::Op::Product);

  CHECK_THROWS_AS(parse_path_expr("slice('a:x') &"), SyntaxError);
  CHECK_THROWS_AS(parse_path_expr("slice('a:x'"), SyntaxError);
  CHECK_THROWS_AS(parse_path_expr("bogus"), SyntaxError);
  CHECK_THROWS_AS(parse_path_expr("not(slice('a:p') * slice('a:p'))"), TypeError);
  try {
    parse_path_expr("ones & ) ");
    FAIL("expected syntax error");
  } catch (const SyntaxError& err) {
    CHECK(err.column() == 8);
  }
}

TEST_CASE("eval: path counts") {
  auto s = testing::store_of({T("a:a", "a:p", "a:b"), T("a:b", "a:p", "a:c")});
  auto tensor = tensor_from_store(s, {U("a:p")});
  auto sq = eval_path_expr(parse_path_expr("slice('a:p') * slice('a:p')"), tensor);
  CHECK(sq.nnz() == 1);
  CHECK(sq.at(*tensor.index_of(U("a:a")), *tensor.index_of(U("a:c"))) == 1.0);
  CHECK_THROWS_AS(eval_path_expr(parse_path_expr("slice('a:z')"), tensor), LookupError);

  // Two authors sharing 19 articles.
  TripleStore co;
  for (int i = 0; i < 19; ++i) {
    co.insert(T("lanl:marko", "lanl:authored", testing::name("art", i)));
    co.insert(T("lanl:johan", "lanl:authored", testing::name("art", i)));
  }
  co.insert(T("lanl:marko", "lanl:authored", "art:solo"));
  auto ct = tensor_from_store(co, {U("lanl:authored")});
  auto z = eval_path_expr(
      parse_path_expr("(slice('lanl:authored') * t(slice('lanl:authored'))) & not(id)"), ct);
  auto m = *ct.index_of(U("lanl:marko")), j = *ct.index_of(U("lanl:johan"));
  CHECK(z.at(m, j) == 19.0);
  CHECK(z.at(j, m) == 19.0);
  for (std::size_t i = 0; i < ct.dimension(); ++i) CHECK(z.at(i, i) == 0.0);
}

TEST_CASE("property: algebraic laws on random slices") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + round % 12;
    auto a = random_boolean(n, 0.3, rng), b = random_boolean(n, 0.3, rng);
    CHECK(a.transposed().transposed() == a);
    CHECK(multiply(a, b).transposed() == multiply(b.transposed(), a.transposed()));
    CHECK(multiply(a, b).to_dense() == dense_product(a.to_dense(), b.to_dense()));
    CHECK(hadamard(a, SparseMatrix::ones(n)) == a);
    CHECK(hadamard(a, SparseMatrix(n)).nnz() == 0);
    CHECK(mask_out(a, b) == hadamard(a, complement(b)));
    auto nd = hadamard(a, complement(SparseMatrix::identity(n)));
    for (std::size_t i = 0; i < n; ++i) CHECK(nd.at(i, i) == 0.0);
  }
}

TEST_CASE("property: coauthorship matches brute-force typed path counting") {
  std::mt19937_64 rng(13);
  auto expr = parse_path_expr("(slice('r:a') * t(slice('r:a'))) & not(id)");
  for (int round = 0; round < 50; ++round) {
    TripleStore s = testing::random_store(8, 1, 20, rng);
    std::vector<Triple> edges;
    for (const auto& t : s.triples()) edges.push_back({t.s, U("r:a"), t.o});
    TripleStore r = testing::store_of(edges);
    auto tensor = tensor_from_store(r, {U("r:a")});
    auto z = eval_path_expr(expr, tensor);
    const auto& vs = tensor.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j) {
        double count = 0;
        if (i != j)
          for (const auto& x : vs)
            if (r.contains({vs[i], U("r:a"), x}) && r.contains({vs[j], U("r:a"), x})) ++count;
        CHECK(z.at(i, j) == count);
      }
  }
}

TEST_CASE("slice evaluation agrees with graph_from_store") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 20; ++round) {
    TripleStore s = testing::random_store(12, 1, 30, rng);
    auto tensor = tensor_from_store(s, {U("p:0")});
    Graph a = to_graph(eval_path_expr(parse_path_expr("slice('p:0')"), tensor), tensor.vertices());
    Graph b = graph_from_store(s, U("p:0"));
    CHECK(a.vertices() == b.vertices());
    CHECK(a.edges() == b.edges());
  }
}

TEST_CASE("csv export") {
  auto s = testing::store_of({T("a:a", "a:p", "a:b")});
  auto tensor = tensor_from_store(s, {U("a:p")});
  CHECK(to_csv(tensor.slice(U("a:p")), tensor.vertices()) == "row,col,value\na:a,a:b,1\n");
}
