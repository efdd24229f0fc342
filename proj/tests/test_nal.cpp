#include "doctest.h"

#include <random>

#include "semnet/error.hpp"
#include "semnet/nal.hpp"
#include "semnet/triple_store.hpp"
#include "support.hpp"

using namespace semnet;
using namespace semnet::nal;
using testing::U;

namespace {

Judgment J(const std::string& s, const std::string& p, double f, double c,
           const std::string& ptr) {
  return Judgment{U(s), U(p), TruthValue{f, c}, U(ptr)};
}

const Judgment* find(const std::vector<Judgment>& v, const std::string& s, const std::string& p) {
  for (const auto& j : v)
    if (j.subject == U(s) && j.predicate == U(p)) return &j;
  return nullptr;
}

}  // namespace

TEST_CASE("truth functions") {
  auto d = deduction({0.5, 0.5}, {0.9, 0.9});
  CHECK(d.frequency == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(d.confidence == doctest::Approx(0.2025).epsilon(1e-12));

  auto i = induction({0.45, 0.2025}, {0.9, 0.9}, 1);
  CHECK(i.frequency == doctest::Approx(0.45));
  CHECK(std::abs(i.confidence - 0.0758) < 1e-4);

  auto a = abduction({0.6, 0.5}, {0.8, 0.9}, 1);
  CHECK(a.frequency == doctest::Approx(0.8));
  CHECK(a.confidence == doctest::Approx(0.8 * 0.5 * 0.9 / (0.8 * 0.5 * 0.9 + 1)));

  auto e = exemplification({0.6, 0.5}, {0.8, 0.9}, 2);
  const double w = 0.6 * 0.5 * 0.8 * 0.9;
  CHECK(e.frequency == 1.0);
  CHECK(e.confidence == doctest::Approx(w / (w + 2)));

  auto zero = deduction({0.0, 0.7}, {0.9, 0.9});
  CHECK(zero.frequency == 0.0);
  CHECK(zero.confidence == 0.0);
}

TEST_CASE("apply_syllogism shapes") {
  auto a = J("lanl:marko", "lanl:Person", 0.5, 0.5, "lanl:1");
  auto b = J("lanl:Person", "lanl:Mammal", 0.9, 0.9, "lanl:2");
  auto c = apply_syllogism(Syllogism::Deduction, a, b);
  CHECK(c.subject == U("lanl:marko"));
  CHECK(c.predicate == U("lanl:Mammal"));
  CHECK(c.pointer != a.pointer);
  CHECK(c.pointer == apply_syllogism(Syllogism::Deduction, a, b).pointer);

  auto dog = J("lanl:Dog", "lanl:Mammal", 0.9, 0.9, "lanl:3");
  auto ind = apply_syllogism(Syllogism::Induction, c, dog, 1);
  CHECK(ind.subject == U("lanl:marko"));
  CHECK(ind.predicate == U("lanl:Dog"));
  CHECK(std::abs(ind.truth.confidence - 0.0758) < 1e-4);

  CHECK_THROWS_AS(apply_syllogism(Syllogism::Deduction, a, dog), ShapeError);
  auto back = J("lanl:Person", "lanl:marko", 0.9, 0.9, "lanl:4");
  CHECK_THROWS_AS(apply_syllogism(Syllogism::Deduction, a, back), DegenerateError);
  CHECK_THROWS_AS(apply_syllogism(Syllogism::Induction, a, b, 0), ConfigError);

  auto x1 = J("a:x", "a:y", 0.7, 0.6, "a:1");
  auto x2 = J("a:x", "a:z", 0.4, 0.8, "a:2");
  auto ab = apply_syllogism(Syllogism::Abduction, x1, x2);
  CHECK(ab.subject == U("a:y"));
  CHECK(ab.predicate == U("a:z"));
  auto ex = apply_syllogism(Syllogism::Exemplification, a, b);
  CHECK(ex.subject == U("lanl:Mammal"));
  CHECK(ex.predicate == U("lanl:marko"));
}

TEST_CASE("encode and decode") {
  auto j = J("lanl:marko", "lanl:Person", 0.9, 0.8, "lanl:1234");
  auto triples = encode(j);
  REQUIRE(triples.size() == 3);
  CHECK(triples[0] == testing::T("lanl:marko", "lanl:1234", "lanl:Person"));
  CHECK(triples[1].o == Term::literal("0.9", "xsd:float"));
  CHECK(triples[2].o == Term::literal("0.8", "xsd:float"));

  ProductJudgment pj{{U("lanl:apepe"), U("lanl:marko")}, U("lanl:friend"), {0.8, 0.5},
                     U("lanl:2345"), U("lanl:3456")};
  auto pt = encode(pj);
  CHECK(pt.size() == 5);
  CHECK(pt[0].p == U("nal:_1"));
  CHECK(pt.back() == Triple{U("lanl:3456"), U("nal:confidence"), Term::literal("0.5", "xsd:float")});

  TripleStore s;
  for (auto& t : triples) s.insert(t);
  for (auto& t : pt) s.insert(t);
  auto kb = decode(s);
  REQUIRE(kb.judgments.size() == 1);
  CHECK(kb.judgments[0] == j);
  REQUIRE(kb.products.size() == 1);
  CHECK(kb.products[0] == pj);

  CHECK_THROWS_AS(encode(J("a:x", "a:y", 1.5, 0.5, "a:p")), ConstraintError);
}

TEST_CASE("property: decode inverts encode on random judgments") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> v(0, 999);
  std::vector<Judgment> js;
  TripleStore s;
  for (int i = 0; i < 100; ++i) {
    js.push_back(J(testing::name("s", i), testing::name("c", v(rng)), u(rng), u(rng),
                   testing::name("ptr", i)));
    for (auto& t : encode(js.back())) s.insert(t);
  }
  auto back = decode(s).judgments;
  std::sort(js.begin(), js.end(), [](const Judgment& a, const Judgment& b) {
    return std::tie(a.subject, a.predicate) < std::tie(b.subject, b.predicate);
  });
  CHECK(back == js);
}

TEST_CASE("saturate: worked sequence") {
  std::vector<Judgment> kb{J("lanl:marko", "lanl:Person", 0.5, 0.5, "lanl:1"),
                           J("lanl:Person", "lanl:Mammal", 0.9, 0.9, "lanl:2"),
                           J("lanl:Dog", "lanl:Mammal", 0.9, 0.9, "lanl:3")};
  std::vector<Syllogism> rules{Syllogism::Deduction, Syllogism::Induction};
  auto out = saturate(kb, rules, {1, 2, 100000});
  auto* mammal = find(out, "lanl:marko", "lanl:Mammal");
  REQUIRE(mammal);
  CHECK(mammal->truth.frequency == doctest::Approx(0.45));
  CHECK(mammal->truth.confidence == doctest::Approx(0.2025));
  auto* dog = find(out, "lanl:marko", "lanl:Dog");
  REQUIRE(dog);
  CHECK(dog->truth.frequency == doctest::Approx(0.45));
  CHECK(std::abs(dog->truth.confidence - 0.0758) < 1e-4);

  CHECK(saturate({}, rules).empty());
  std::vector<Judgment> single{kb[0]};
  CHECK(saturate(single, kAllSyllogisms).size() == 1);
}

TEST_CASE("saturate: deterministic and capped") {
  std::vector<Judgment> kb;
  for (int i = 0; i < 12; ++i)
    kb.push_back(J(testing::name("n", i), testing::name("n", (i + 1) % 12), 0.8, 0.7,
                   testing::name("p", i)));
  auto a = saturate(kb, kAllSyllogisms);
  std::reverse(kb.begin(), kb.end());
  auto b = saturate(kb, kAllSyllogisms);
  CHECK(a == b);
  CHECK_THROWS_AS(saturate(kb, kAllSyllogisms, {1, 4, 20}), ResourceLimitError);
}

TEST_CASE("saturate: adding evidence changes derived truth") {
  std::vector<Syllogism> rules{Syllogism::Deduction};
  std::vector<Judgment> kb{J("a:x", "a:y", 0.9, 0.9, "a:1"), J("a:y", "a:z", 0.9, 0.9, "a:2")};
  auto before = find(saturate(kb, rules), "a:x", "a:z")->truth;
  kb.push_back(J("a:x", "a:z", 0.1, 0.3, "a:3"));
  auto after = find(saturate(kb, rules), "a:x", "a:z")->truth;
  CHECK(before != after);
}

TEST_CASE("property: truth-value closure and confidence bounds") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<unsigned> kk(1, 10);
  for (int i = 0; i < 2000; ++i) {
    TruthValue a{u(rng), u(rng)}, b{u(rng), u(rng)};
    unsigned k = kk(rng);
    for (auto tv : {deduction(a, b), induction(a, b, k), abduction(a, b, k), exemplification(a, b, k)}) {
      CHECK(tv.frequency >= 0.0);
      CHECK(tv.frequency <= 1.0);
      CHECK(tv.confidence >= 0.0);
      CHECK(tv.confidence <= 1.0);
    }
    auto d = deduction(a, b);
    CHECK(d.confidence <= std::min(a.confidence, b.confidence));
    CHECK(induction(a, b, k).confidence <= 1.0 / (1.0 + k) + 1e-15);
    CHECK(abduction(a, b, k).confidence <= 1.0 / (1.0 + k) + 1e-15);
  }
  CHECK(induction({1, 1}, {1, 1}, 1).confidence == doctest::Approx(0.5));
}
