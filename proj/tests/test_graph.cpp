#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"

using namespace ssg;
using ssg::test::load_fixture;
using ssg::test::parse_path;

namespace {

// brute-force DFS over edge sequences, independent of enumerate_paths
int count_paths_dfs(const Graph& g, int v, int d) {
  if (d == 0) return 1;
  int total = 0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.edge_src(e) == v) total += count_paths_dfs(g, g.edge_rng(e), d - 1);
  return total;
}

}  // namespace

TEST_CASE("vertex composition is the identity case") {
  auto a = load_fixture("odometer2.json");
  const Graph& g = a->graph();
  Path v = Path::at_vertex(0);
  CHECK(compose_paths(g, v, v) == v);
}

TEST_CASE("single vertex graphs compose freely") {
  auto a = load_fixture("odometer2.json");
  const Graph& g = a->graph();
  Path e1 = parse_path(g, "e1");
  Path e2 = parse_path(g, "e2");
  Path e1e2 = compose_paths(g, e1, e2);
  CHECK(e1e2.length() == 2);
  CHECK(path_str(g, e1e2) == "e1e2");
}

TEST_CASE("two-vertex fixture composition follows the src/rng table") {
  auto a = load_fixture("twovertex.json");
  const Graph& g = a->graph();
  // src(f0) = v1 = rng(e1), so f0 e1 composes
  Path f0 = parse_path(g, "f0");
  Path e1 = parse_path(g, "e1");
  Path f0e1 = compose_paths(g, f0, e1);
  CHECK(path_str(g, f0e1) == "f0e1");
  CHECK(g.vertex_id(f0e1.rng(g)) == "v0");
  CHECK(g.vertex_id(f0e1.src()) == "v1");
  // src(e0) = v0 = rng(f0): composes as well
  Path e0 = parse_path(g, "e0");
  CHECK(path_str(g, compose_paths(g, e0, f0)) == "e0f0");
  // mismatched pair errors
  Path f1 = parse_path(g, "f1");
  CHECK_THROWS_AS(compose_paths(g, e0, f1), ComposabilityError);
}

TEST_CASE("enumerate_paths base cases and the O2 window") {
  auto a = load_fixture("odometer2.json");
  const Graph& g = a->graph();
  auto zero = enumerate_paths(g, 0, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].is_vertex());

  auto two = enumerate_paths(g, 0, 2);
  REQUIRE(two.size() == 4);
  CHECK(path_str(g, two[0]) == "e1e1");
  CHECK(path_str(g, two[1]) == "e1e2");
  CHECK(path_str(g, two[2]) == "e2e1");
  CHECK(path_str(g, two[3]) == "e2e2");
}

TEST_CASE("two-vertex fixture: length-1 paths from v0 are the edges with src v0") {
  auto a = load_fixture("twovertex.json");
  const Graph& g = a->graph();
  auto one = enumerate_paths(g, g.vertex_index("v0"), 1);
  std::set<std::string> ids;
  for (const auto& p : one) ids.insert(path_str(g, p));
  CHECK(ids == std::set<std::string>{"e0", "f1"});
}

TEST_CASE("enumeration counts satisfy the adjacency recursion up to depth 6") {
  for (const char* fx : {"odometer2.json", "odometer3.json", "twovertex.json", "bs23.json"}) {
    auto a = load_fixture(fx);
    const Graph& g = a->graph();
    for (int v = 0; v < g.num_vertices(); ++v)
      for (int d = 0; d <= 6; ++d) {
        auto paths = enumerate_paths(g, v, d);
        CHECK(static_cast<int>(paths.size()) == count_paths_dfs(g, v, d));
        for (const auto& p : paths) {
          CHECK(p.length() == d);
          CHECK(p.src() == v);
        }
        std::set<std::vector<int>> seen;
        for (const auto& p : paths) seen.insert(p.edges);
        CHECK(seen.size() == paths.size());
      }
  }
}

TEST_CASE("compose_paths is associative whenever defined") {
  auto a = load_fixture("twovertex.json");
  const Graph& g = a->graph();
  std::vector<Path> all;
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int d = 0; d <= 3; ++d)
      for (auto& p : enumerate_paths(g, v, d)) all.push_back(p);
  int tested = 0;
  for (const auto& x : all)
    for (const auto& y : all) {
      if (x.src() != y.rng(g)) continue;
      Path xy = compose_paths(g, x, y);
      for (const auto& z : all) {
        if (y.src() != z.rng(g)) continue;
        Path yz = compose_paths(g, y, z);
        CHECK(compose_paths(g, xy, z) == compose_paths(g, x, yz));
        ++tested;
      }
    }
  CHECK(tested > 100);
}

TEST_CASE("graph validation rejects malformed input") {
  CHECK_THROWS_AS(Graph::make({}, {}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"v", "v"}, {{"e", "v", "v"}}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"v"}, {{"e", "v", "v"}, {"e", "v", "v"}}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"v"}, {{"e", "v", "w"}}), ValidationError);
  // a vertex receiving no edge violates the source-free requirement
  CHECK_THROWS_AS(Graph::make({"u", "v"}, {{"e", "v", "v"}, {"f", "u", "v"}}), ValidationError);
  CHECK_THROWS_AS(Graph::make({"v"}, {{"", "v", "v"}}), ValidationError);
}

TEST_CASE("unknown vertex lookup throws") {
  auto a = load_fixture("odometer2.json");
  CHECK_THROWS_AS(a->graph().vertex_index("nope"), UnknownVertex);
  CHECK_THROWS_AS(enumerate_paths(a->graph(), 7, 1), UnknownVertex);
}
