#include "doctest.h"

#include "dsamp/conflict.hpp"
#include "dsamp/error.hpp"

#include "oracles.hpp"

#include <numeric>
#include <sstream>

using namespace dsamp;

TEST_CASE("three-via graph") {
  TechRules r;
  Layout l = Layout::from_points({{0, 0}, {25, 0}, {100, 0}}, 10);
  ConflictGraph g = build_graph(l, r);
  REQUIRE(g.num_edges() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, true});

  Layout bent = Layout::from_points({{0, 0}, {20, 15}, {100, 0}}, 10);
  ConflictGraph h = build_graph(bent, r);
  REQUIRE(h.num_edges() == 1);
  CHECK_FALSE(h.edges()[0].dsa);
  r.tech = Tech::Unrestricted;
  CHECK(build_graph(bent, r).edges()[0].dsa);

  CHECK(build_graph(Layout{}, TechRules{}).num_vertices() == 0);
}

TEST_CASE("conflict threshold is strict unless inclusive") {
  TechRules r;
  Layout l = Layout::from_points({{0, 0}, {41, 0}}, 10); // border distance 31
  CHECK(build_graph(l, r).num_edges() == 0);
  r.inclusive_conflict = true;
  CHECK(build_graph(l, r).num_edges() == 1);
}

TEST_CASE("grid index matches pairwise scan") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Layout l = generate_random_layout(50 + 37 * seed, 0.8 + 0.1 * (seed % 7), seed);
    for (double litho : {31.0, 41.0, 49.0})
      for (Tech t : {Tech::Axis193i, Tech::Unrestricted}) {
        TechRules r;
        r.litho_dist = litho;
        r.tech = t;
        const auto want = oracle::pairwise_graph(l, r);
        const auto got = oracle::edge_sets(build_graph(l, r));
        CHECK(got.e == want.e);
        CHECK(got.f == want.f);
      }
  }
}

TEST_CASE("graph is invariant under via order") {
  Layout l = generate_random_layout(120, 1.5, 5);
  std::vector<std::pair<double, double>> xy;
  for (auto it = l.vias().rbegin(); it != l.vias().rend(); ++it)
    xy.emplace_back(it->x, it->y);
  Layout rev = Layout::from_points(xy, l.diameter());
  const int n = static_cast<int>(l.size());
  auto a = oracle::edge_sets(build_graph(l, TechRules{}));
  auto b = oracle::edge_sets(build_graph(rev, TechRules{}));
  oracle::EdgeSets mapped;
  for (auto [u, v] : b.e)
    mapped.e.insert({std::min(n - 1 - u, n - 1 - v), std::max(n - 1 - u, n - 1 - v)});
  CHECK(mapped.e == a.e);
}

TEST_CASE("components") {
  Layout l = Layout::from_points({{0, 0}, {25, 0}, {100, 0}}, 10);
  auto comps = connected_components(build_graph(l, TechRules{}));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].vertices == std::vector<int>{0, 1});
  CHECK(comps[1].vertices == std::vector<int>{2});
  CHECK(comps[0].graph.num_edges() == 1);

  Layout big = generate_random_layout(300, 1.1, 9);
  ConflictGraph g = build_graph(big, TechRules{});
  auto parts = connected_components(g);
  std::size_t nv = 0, ne = 0, nf = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    nv += parts[i].vertices.size();
    ne += parts[i].graph.num_edges();
    nf += parts[i].graph.num_dsa_edges();
    if (i > 0)
      CHECK(parts[i - 1].vertices.size() >= parts[i].vertices.size());
  }
  CHECK(nv == 300);
  CHECK(ne == g.num_edges());
  CHECK(nf == g.num_dsa_edges());
}

TEST_CASE("component statistics") {
  auto k3 = ConflictGraph::from_edges(3, {{0, 1, true}, {1, 2, true}, {0, 2, true}});
  auto s = component_stats(k3);
  CHECK(s.omega == 3);
  CHECK(s.delta == 2);
  CHECK(s.density == 1.0);

  auto one = component_stats(ConflictGraph::from_edges(1, {}));
  CHECK(one.omega == 1);
  CHECK(one.delta == 0);

  auto c5 = ConflictGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  auto t = component_stats(c5);
  CHECK(t.omega == 2);
  CHECK(t.delta == 2);
  CHECK(t.density == 1.0);
}

TEST_CASE("maximum clique against brute force") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Layout l = generate_random_layout(14, 1.0 + 0.1 * (seed % 5), seed);
    TechRules r;
    r.litho_dist = 49;
    ConflictGraph g = build_graph(l, r);
    const int n = g.num_vertices();
    int best = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      bool clique = true;
      for (int u = 0; u < n && clique; ++u)
        for (int v = u + 1; v < n && clique; ++v)
          if ((s >> u & 1u) && (s >> v & 1u) && !g.adjacent(u, v))
            clique = false;
      if (clique)
        best = std::max(best, std::popcount(s));
    }
    auto k = maximum_clique(g);
    CHECK(static_cast<int>(k.size()) == best);
    for (std::size_t a = 0; a < k.size(); ++a)
      for (std::size_t b = a + 1; b < k.size(); ++b)
        CHECK(g.adjacent(k[a], k[b]));
  }
}

TEST_CASE("graph dump round trip and validation") {
  auto g = ConflictGraph::from_edges(4, {{0, 1, true}, {2, 3, false}, {1, 0, false}});
  CHECK(g.num_edges() == 2);
  CHECK(g.num_dsa_edges() == 1);
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == "n 4\ne 0 1 dsa\ne 2 3\n");
  std::istringstream in(out.str());
  CHECK(read_graph(in).edges() == g.edges());
  CHECK_THROWS_AS(ConflictGraph::from_edges(2, {{1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(ConflictGraph::from_edges(2, {{0, 2}}), InvalidArgument);
}
