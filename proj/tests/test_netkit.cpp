#include "doctest.h"

#include <random>

#include "semnet/error.hpp"
#include "semnet/netkit.hpp"
#include "semnet/triple_store.hpp"
#include "support.hpp"

using namespace semnet;
using namespace semnet::netkit;
using testing::T;
using testing::U;

namespace {

Graph chain3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

Graph bidirectional_star(std::size_t leaves) {
  std::vector<Edge> e;
  for (VertexId i = 1; i <= leaves; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, 0);
  }
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace

TEST_CASE("graph_from_store") {
  auto s = testing::store_of({T("a:a", "a:p", "a:b"), T("a:b", "a:p", "a:c"),
                              T("a:a", "a:p", "a:c"), T("a:a", "a:q", "a:z"),
                              Triple{U("a:a"), U("a:p"), Term::literal("7")}});
  Graph g = graph_from_store(s, U("a:p"));
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.vertex(0) == U("a:a"));
  CHECK(graph_from_store(s, U("a:p"), true).vertex_count() == 4);
  CHECK(graph_from_store(s, U("a:missing")).vertex_count() == 0);
}

TEST_CASE("shortest paths") {
  Graph g = chain3();
  CHECK(shortest_path_length(g, 0, 2) == 2u);
  CHECK(shortest_path_length(g, 1, 1) == 0u);
  CHECK_FALSE(shortest_path_length(g, 2, 0).has_value());
  CHECK_THROWS_AS(shortest_path_length(g, 0, 9), LookupError);
}

TEST_CASE("geodesic summary") {
  auto c4 = geodesic_summary(testing::cycle(4));
  CHECK(c4.radius == 3);
  CHECK(c4.diameter == 3);
  auto star = geodesic_summary(bidirectional_star(4));
  CHECK(star.eccentricities[0] == 1);
  CHECK(star.eccentricities[1] == 2);
  CHECK(star.radius == 1);
  CHECK(star.diameter == 2);
  CHECK_THROWS_AS(geodesic_summary(chain3()), StructureError);
}

TEST_CASE("closeness") {
  auto c3 = closeness(testing::cycle(3));
  for (double v : c3.values) CHECK(v == doctest::Approx(1.0 / 3.0));
  auto star = closeness(bidirectional_star(4));
  CHECK(star[0] == doctest::Approx(0.25));
  CHECK(star[1] == doctest::Approx(1.0 / 7.0));

  // Adding a far vertex lowers every score.
  Graph bigger = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}});
  auto after = closeness(bigger);
  for (VertexId v = 0; v < 3; ++v) CHECK(after[v] < c3[v]);
  CHECK_THROWS_AS(closeness(Graph::from_edges(1, {})), DegenerateError);
}

TEST_CASE("betweenness") {
  for (double v : betweenness(testing::cycle(3)).values) CHECK(v == doctest::Approx(1.0));
  Graph path = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  auto b = betweenness(path);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == doctest::Approx(2.0));
  CHECK(b[2] == 0.0);
}

TEST_CASE("period and stationary distribution") {
  CHECK(period(testing::cycle(4)) == 4);
  CHECK(period(testing::complete(3)) == 1);
  auto pi = stationary_distribution(testing::complete(3));
  for (double v : pi.values) CHECK(v == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(stationary_distribution(testing::cycle(2)), StructureError);
  CHECK_THROWS_AS(stationary_distribution(chain3()), StructureError);
}

TEST_CASE("pagerank") {
  auto one = pagerank(Graph::from_edges(1, {}));
  CHECK(one[0] == doctest::Approx(1.0));
  for (double alpha : {0.3, 0.85, 1.0}) {
    auto pr = pagerank(testing::complete(4), alpha);
    for (double v : pr.values) CHECK(v == doctest::Approx(0.25));
  }
  Graph c = chain3();
  auto pr = pagerank(c, 0.85, {1e-13, 100000});
  auto oracle = testing::stationary_by_solve(testing::google_matrix(c, 0.85));
  CHECK(testing::l1(pr.values, oracle) < 1e-10);
  CHECK_THROWS_AS(pagerank(c, 0.0), ConfigError);
  CHECK_THROWS_AS(pagerank(c, 1.5), ConfigError);
}

TEST_CASE("spreading activation") {
  Graph two = testing::cycle(2);
  auto pi = spreading_activation(two, {{0, 1.0}}, 3, 0.5);
  CHECK(pi[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-15));
  auto once = spreading_activation(testing::complete(4), {{2, 3.0}}, 1, 0.9);
  CHECK(once.values == std::vector<double>{0, 0, 3.0, 0});
  auto none = spreading_activation(testing::complete(4), {{1, 2.0}}, 5, 0.0);
  CHECK(none.values == std::vector<double>{0, 2.0, 0, 0});
  CHECK_THROWS_AS(spreading_activation(two, {{0, 1.0}}, 3, 1.5), ConfigError);
}

TEST_CASE("assortativity") {
  // Endpoints of each edge share a value; values vary across edges.
  Graph pairs = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
  std::map<VertexId, double> same{{0, 1}, {1, 1}, {2, 2}, {3, 2}, {4, 5}, {5, 5}};
  CHECK(assortativity_scalar(pairs, same) == doctest::Approx(1.0).epsilon(1e-12));
  std::map<VertexId, double> anti{{0, 1}, {1, -1}, {2, 2}, {3, -2}, {4, 5}, {5, -5}};
  CHECK(assortativity_scalar(pairs, anti) == doctest::Approx(-1.0).epsilon(1e-12));
  std::map<VertexId, double> flat{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  CHECK_THROWS_AS(assortativity_scalar(pairs, flat), DegenerateError);

  std::map<VertexId, std::string> lab{{0, "a"}, {1, "a"}, {2, "b"}, {3, "b"}, {4, "a"}, {5, "a"}};
  CHECK(assortativity_nominal(pairs, lab) == doctest::Approx(1.0));
  Graph cross = Graph::from_edges(4, {{0, 2}, {1, 3}, {2, 0}, {3, 1}});
  std::map<VertexId, std::string> two{{0, "a"}, {1, "a"}, {2, "b"}, {3, "b"}};
  CHECK(assortativity_nominal(cross, two) < 0.0);
  std::map<VertexId, std::string> one{{0, "a"}, {1, "a"}, {2, "a"}, {3, "a"}};
  CHECK_THROWS_AS(assortativity_nominal(cross, one), DegenerateError);
}

TEST_CASE("property: geodesics against Floyd-Warshall") {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 40; ++round) {
    Graph g = testing::random_digraph(20, 0.12, rng);
    auto d = testing::floyd_warshall(g);
    for (VertexId i = 0; i < 20; ++i) {
      auto bfs = bfs_distances(g, i);
      for (VertexId j = 0; j < 20; ++j) CHECK(bfs[j] == d[i][j]);
    }
    // Triangle inequality on reachable triples.
    for (VertexId i = 0; i < 20; ++i)
      for (VertexId j = 0; j < 20; ++j)
        for (VertexId k = 0; k < 20; ++k)
          if (d[i][j] != kUnreachable && d[j][k] != kUnreachable) CHECK(d[i][k] <= d[i][j] + d[j][k]);
  }
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_strong_digraph(30, 0.05, rng);
    auto s = geodesic_summary(g);
    auto d = testing::floyd_warshall(g);
    for (VertexId i = 0; i < 30; ++i)
      CHECK(s.eccentricities[i] == *std::max_element(d[i].begin(), d[i].end()));
    CHECK(s.radius <= s.diameter);
  }
}

TEST_CASE("property: betweenness against path enumeration") {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 40; ++round) {
    std::uniform_int_distribution<std::size_t> n(2, 8);
    Graph g = testing::random_strong_digraph(n(rng), 0.25, rng);
    auto b = betweenness(g);
    auto oracle = testing::betweenness_by_enumeration(g);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  }
}

TEST_CASE("property: spectral rankings") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_strong_digraph(10, 0.2, rng, true);
    if (period(g) != 1) continue;
    auto pi = stationary_distribution(g, {1e-13, 1000000});
    auto oracle = testing::stationary_by_solve(testing::walk_matrix(g));
    CHECK(testing::l1(pi.values, oracle) < 1e-8);
    CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-9));
    // alpha -> 1 approaches the plain walk.
    auto pr = pagerank(g, 1.0, {1e-13, 1000000});
    CHECK(testing::l1(pr.values, pi.values) < 1e-9);
  }
  for (int round = 0; round < 20; ++round) {
    Graph g = testing::random_digraph(40, 0.05, rng);
    auto pr = pagerank(g, 0.85);
    CHECK(pagerank_residual(g, 0.85, pr) < 1e-8);
    for (double v : pr.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("property: scalar assortativity is a Pearson correlation") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> z;
  for (int round = 0; round < 30; ++round) {
    Graph g = testing::random_digraph(20, 0.15, rng);
    std::map<VertexId, double> vals, affine;
    for (VertexId v = 0; v < 20; ++v) {
      vals[v] = z(rng);
      affine[v] = 3.5 * vals[v] - 2.0;
    }
    const auto edges = g.edges();
    if (edges.size() < 2) continue;
    double mx = 0, my = 0;
    for (auto [a, b] : edges) {
      mx += vals[a];
      my += vals[b];
    }
    mx /= edges.size();
    my /= edges.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (auto [a, b] : edges) {
      sxy += (vals[a] - mx) * (vals[b] - my);
      sxx += (vals[a] - mx) * (vals[a] - mx);
      syy += (vals[b] - my) * (vals[b] - my);
    }
    double r = assortativity_scalar(g, vals);
    CHECK(r == doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-12));
    CHECK(std::abs(assortativity_scalar(g, affine) - r) < 1e-12);
  }
}

TEST_CASE("exports") {
  Graph g = testing::cycle(3);
  auto csv = to_csv(g, closeness(g));
  CHECK(csv.rfind("vertex,value\n", 0) == 0);
  CHECK(to_json(g, geodesic_summary(g)).find("\"diameter\": 2") != std::string::npos);
}
