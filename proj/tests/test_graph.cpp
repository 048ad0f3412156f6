#include <doctest.h>

#include <algorithm>
#include <set>

#include "mdkit/error.hpp"
#include "mdkit/graph.hpp"
#include "mdkit/random.hpp"
#include "oracle.hpp"

using namespace mdkit;

TEST_SUITE("graph") {

TEST_CASE("from_edges builds simple graphs") {
  Graph p3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(p3.vertex_count() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.adjacent(0, 1));
  CHECK(p3.adjacent(1, 0));
  CHECK_FALSE(p3.adjacent(0, 2));

  Graph single = Graph::from_edges(1, std::vector<Edge>{});
  CHECK(single.vertex_count() == 1);
  CHECK(single.edge_count() == 0);

  Graph dup = Graph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}, {0, 1}});
  CHECK(dup.edge_count() == 1);
}

TEST_CASE("from_edges rejects bad edges and names them") {
  try {
    Graph::from_edges(2, std::vector<Edge>{{0, 5}});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find('5') != std::string::npos);
  }
  CHECK_THROWS_AS(Graph::from_edges(2, std::vector<Edge>{{1, 1}}), InputError);
  CHECK_THROWS_AS(Graph::from_edges(2, std::vector<Edge>{{0, 1}}, {"a", "a"}), InputError);
}

TEST_CASE("all-pairs distances") {
  DistanceMatrix d = all_pairs_distances(oracle::path(3));
  CHECK(d(0, 2) == 2);
  CHECK(d(2, 0) == 2);

  DistanceMatrix iso = all_pairs_distances(Graph::from_edges(2, std::vector<Edge>{}));
  CHECK(iso(0, 1) == kUnreachable);
  CHECK(iso(0, 0) == 0);

  DistanceMatrix c6 = all_pairs_distances(oracle::cycle(6));
  CHECK(c6(0, 3) == 3);
  CHECK(c6(1, 4) == 3);
}

TEST_CASE("all-pairs distances agree with Floyd-Warshall") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.between(1, 40);
    std::vector<Edge> edges;
    const int percent = rng.between(2, 30);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.chance(percent)) edges.emplace_back(u, v);
      }
    }
    Graph g = Graph::from_edges(n, edges);
    DistanceMatrix d = all_pairs_distances(g);
    oracle::Matrix ref = oracle::floyd(g);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) REQUIRE(d(u, v) == ref[u][v]);
    }
  }
}

TEST_CASE("twins") {
  TwinReport k3 = twins(oracle::clique(3));
  CHECK(k3.true_twin_pairs == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(k3.false_twin_pairs.empty());

  TwinReport star = twins(oracle::star(3));
  CHECK(star.false_twin_pairs == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(star.true_twin_pairs.empty());

  TwinReport c6 = twins(oracle::cycle(6));
  CHECK(c6.true_twin_pairs.empty());
  CHECK(c6.false_twin_pairs.empty());
}

TEST_CASE("twins agree with neighborhood comparison") {
  Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    Graph g = trial % 2 ? random_twin_triple_graph(rng, rng.between(3, 12))
                        : random_connected_graph(rng, rng.between(1, 12), 40);
    std::vector<Edge> tt, ft;
    for (int u = 0; u < g.vertex_count(); ++u) {
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        if (g.adjacent(u, v) && oracle::neighborhood(g, u, true) == oracle::neighborhood(g, v, true)) {
          tt.emplace_back(u, v);
        }
        if (!g.adjacent(u, v) && oracle::neighborhood(g, u, false) == oracle::neighborhood(g, v, false)) {
          ft.emplace_back(u, v);
        }
      }
    }
    TwinReport r = twins(g);
    REQUIRE(r.true_twin_pairs == tt);
    REQUIRE(r.false_twin_pairs == ft);
  }
}

TEST_CASE("twins are equidistant from every other vertex") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_twin_triple_graph(rng, rng.between(3, 20));
    CHECK(twin_distance_violations(g, all_pairs_distances(g)).empty());
  }
  // Disconnected graphs compare the sentinel like any other value.
  Graph split = oracle::disjoint({oracle::star(3), oracle::clique(3)});
  CHECK(twin_distance_violations(split, all_pairs_distances(split)).empty());
}

TEST_CASE("induced P3s") {
  CHECK(induced_p3s(oracle::path(3)) == std::vector<std::array<Vertex, 3>>{{0, 1, 2}});
  CHECK(induced_p3s(oracle::clique(3)).empty());
  CHECK(induced_p3s(oracle::cycle(4)).size() == 4);
  CHECK_FALSE(first_induced_p3(oracle::clique(4)).has_value());
}

TEST_CASE("no induced P3 exactly when every component is a clique") {
  Rng rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.between(1, 10);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.chance(trial % 2 ? 15 : 60)) edges.emplace_back(u, v);
      }
    }
    Graph g = Graph::from_edges(n, edges);
    oracle::Matrix d = oracle::floyd(g);
    bool cluster = true;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (d[u][v] != oracle::kInf && d[u][v] > 1) cluster = false;
      }
    }
    REQUIRE(induced_p3s(g).empty() == cluster);
    REQUIRE(first_induced_p3(g).has_value() == !cluster);
  }
}

TEST_CASE("complement") {
  CHECK(complement(oracle::clique(3)).edge_count() == 0);
  CHECK(complement(Graph::from_edges(2, std::vector<Edge>{})).edges() == std::vector<Edge>{{0, 1}});

  Graph c5c = complement(oracle::cycle(5));
  CHECK(c5c.edge_count() == 5);
  for (int v = 0; v < 5; ++v) CHECK(c5c.degree(v) == 2);
  CHECK(component_count(c5c) == 1);

  Graph labelled = Graph::from_edges(3, std::vector<Edge>{{0, 1}}, {"a", "b", "c"});
  Graph twice = complement(complement(labelled));
  CHECK(twice == labelled);
  CHECK(complement(labelled).labels() == labelled.labels());
}

TEST_CASE("acyclicity") {
  CHECK(is_acyclic(oracle::path(5)));
  CHECK(is_acyclic(oracle::star(4)));
  CHECK(is_acyclic(Graph::from_edges(3, std::vector<Edge>{})));
  CHECK_FALSE(is_acyclic(oracle::cycle(3)));
  CHECK_FALSE(is_acyclic(oracle::disjoint({oracle::path(2), oracle::cycle(4)})));
}

TEST_CASE("vertex removal compacts ids") {
  Graph p3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}}, {"a", "b", "c"});
  InducedSubgraph r = remove_vertices(p3, std::vector<Vertex>{1});
  CHECK(r.graph.vertex_count() == 2);
  CHECK(r.graph.edge_count() == 0);
  CHECK(r.original_id == std::vector<Vertex>{0, 2});
  CHECK(r.graph.labels() == std::vector<std::string>{"a", "c"});

  InducedSubgraph k3 = remove_vertices(oracle::clique(3), std::vector<Vertex>{0});
  CHECK(k3.graph == oracle::clique(2));

  CHECK_THROWS_AS(remove_vertices(p3, std::vector<Vertex>{3}), InputError);
}

TEST_CASE("components") {
  Graph g = oracle::disjoint({oracle::path(2), Graph::from_edges(1, std::vector<Edge>{}), oracle::clique(3)});
  CHECK(component_count(g) == 3);
  CHECK(connected_components(g) ==
        std::vector<std::vector<Vertex>>{{0, 1}, {2}, {3, 4, 5}});
  CHECK(component_count(Graph{}) == 0);
}

}  // TEST_SUITE
