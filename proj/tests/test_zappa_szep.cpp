#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "helpers.hpp"

using namespace ssg;
using ssg::test::load_fixture;
using ssg::test::parse_path;

namespace {

ZSElement zs(const Path& mu, std::uint64_t p) { return ZSElement{mu, p}; }

}  // namespace

TEST_CASE("identity element") {
  auto a = factory_odometer(2);
  Path v = Path::at_vertex(0);
  CHECK(zs_equals(zs_multiply(*a, zs(v, 0), zs(v, 0)), zs(v, 0)));
}

TEST_CASE("odometer relation v e_n = e_1 v") {
  for (int n : {2, 3}) {
    auto a = factory_odometer(n);
    const Graph& g = a->graph();
    Path v = Path::at_vertex(0);
    Path en = parse_path(g, g.edge_id(n - 1));
    Path e1 = parse_path(g, "e1");
    ZSElement lhs = zs_multiply(*a, zs(v, 1), zs(en, 0));
    ZSElement rhs = zs_multiply(*a, zs(e1, 0), zs(v, 1));
    CHECK(zs_equals(lhs, rhs));
    CHECK(zs_equals(lhs, zs(e1, 1)));
  }
}

TEST_CASE("Baumslag-Solitar relation a^n b = b a^m") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    auto a = factory_bs(n, m);
    const Graph& g = a->graph();
    Path v = Path::at_vertex(0);
    Path e1 = parse_path(g, "e1");
    ZSElement lhs = zs_multiply(*a, zs(v, n), zs(e1, 0));
    ZSElement rhs = zs_multiply(*a, zs(e1, 0), zs(v, m));
    CHECK(zs_equals(lhs, rhs));
    CHECK(zs_equals(lhs, zs(e1, m)));
  }
}

TEST_CASE("zs_equals distinguishes components") {
  auto a = factory_bs(2, 3);
  const Graph& g = a->graph();
  CHECK(zs_equals(zs(parse_path(g, "e1"), 2), zs(parse_path(g, "e1"), 2)));
  CHECK_FALSE(zs_equals(zs(parse_path(g, "e1"), 2), zs(parse_path(g, "e2"), 2)));
  CHECK_FALSE(zs_equals(zs(parse_path(g, "e1"), 2), zs(parse_path(g, "e1"), 3)));
}

TEST_CASE("composability guard on the two-vertex fixture") {
  auto a = load_fixture("twovertex.json");
  const Graph& g = a->graph();
  // (e0, 0) . (f1, 0): rng(0.f1) = v1 != v0 = src(e0)
  CHECK_THROWS_AS(zs_multiply(*a, zs(parse_path(g, "e0"), 0), zs(parse_path(g, "f1"), 0)),
                  ComposabilityError);
  // with p = 1 the action flips f1 to f0, and rng(f0) = v0 matches
  ZSElement prod = zs_multiply(*a, zs(parse_path(g, "e0"), 1), zs(parse_path(g, "f1"), 0));
  CHECK(path_str(g, prod.mu) == "e0f0");
  CHECK(prod.p == 3);  // 1|_(f1) = 3
}

TEST_CASE("associativity on composable triples") {
  for (const char* which : {"bs23", "twovertex"}) {
    ActionPtr a = std::string(which) == "bs23" ? factory_bs(2, 3)
                                               : load_fixture("twovertex.json");
    const Graph& g = a->graph();
    std::vector<ZSElement> elems;
    for (int v = 0; v < g.num_vertices(); ++v)
      for (int d = 0; d <= 2; ++d)
        for (auto& mu : enumerate_paths(g, v, d))
          for (std::uint64_t p = 0; p <= 2; ++p) elems.push_back(zs(mu, p));
    long tested = 0;
    for (const auto& x : elems)
      for (const auto& y : elems)
        for (const auto& z : elems) {
          bool xy_ok = true, yz_ok = true;
          ZSElement xy, yz;
          try {
            xy = zs_multiply(*a, x, y);
          } catch (const ComposabilityError&) {
            xy_ok = false;
          }
          try {
            yz = zs_multiply(*a, y, z);
          } catch (const ComposabilityError&) {
            yz_ok = false;
          }
          if (!xy_ok || !yz_ok) continue;
          CHECK(zs_equals(zs_multiply(*a, xy, z), zs_multiply(*a, x, yz)));
          ++tested;
        }
    CHECK(tested > 500);
  }
}

TEST_CASE("left and right identities") {
  auto a = load_fixture("twovertex.json");
  const Graph& g = a->graph();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int d = 0; d <= 2; ++d)
      for (auto& mu : enumerate_paths(g, v, d))
        for (std::uint64_t p = 0; p <= 2; ++p) {
          ZSElement x = zs(mu, p);
          ZSElement lid = zs(Path::at_vertex(mu.rng(g)), 0);
          CHECK(zs_equals(zs_multiply(*a, lid, x), x));
          // the right identity sits at the vertex p^{-1}.src(mu)
          Path rv = a->act_inverse(p, Path::at_vertex(mu.src()));
          CHECK(zs_equals(zs_multiply(*a, x, zs(rv, 0)), x));
        }
}

TEST_CASE("the loop generators of BS+(n,m) are free up to length 4") {
  auto a = factory_bs(2, 3);
  const Graph& g = a->graph();
  std::vector<ZSElement> gens{zs(parse_path(g, "e1"), 0), zs(parse_path(g, "e2"), 0)};
  std::map<std::vector<int>, ZSElement> products;
  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int i = 0; i < 2; ++i) {
          auto ww = w;
          ww.push_back(i);
          next.push_back(ww);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  int distinct = 0;
  for (const auto& w : words) {
    if (w.empty()) continue;
    ZSElement prod = gens[w[0]];
    for (size_t i = 1; i < w.size(); ++i) prod = zs_multiply(*a, prod, gens[w[i]]);
    for (const auto& [w2, p2] : products) CHECK_FALSE(zs_equals(prod, p2));
    products.emplace(w, prod);
    ++distinct;
  }
  CHECK(distinct == 2 + 4 + 8 + 16);
}

TEST_CASE("factory_bs(n,1) coincides with factory_odometer(n)") {
  for (int n : {1, 2, 3}) {
    auto bs = factory_bs(n, 1);
    auto od = factory_odometer(n);
    CHECK(bs->graph() == od->graph());
    for (int e = 0; e < bs->graph().num_edges(); ++e) {
      CHECK(bs->eperm(e) == od->eperm(e));
      CHECK(bs->rho(e) == od->rho(e));
    }
  }
}

TEST_CASE("factory_odometer(1) is the single commuting loop") {
  auto a = factory_odometer(1);
  CHECK(a->graph().num_edges() == 1);
  CHECK(a->rho(0) == 1);
  CHECK(a->verify_axioms(3, 3).pass());
}

TEST_CASE("factory_bs(2,3) passes the axiom sweep at depth 5") {
  CHECK(factory_bs(2, 3)->verify_axioms(5, 4).pass());
}

TEST_CASE("the shipped fixtures match the factories") {
  CHECK(load_fixture("odometer2.json")->graph() == factory_odometer(2)->graph());
  auto fx = load_fixture("bs23.json");
  auto fa = factory_bs(2, 3);
  for (int e = 0; e < fx->graph().num_edges(); ++e) CHECK(fx->rho(e) == fa->rho(e));
  auto tv = load_fixture("twovertex.json");
  auto tf = factory_two_vertex_swap();
  CHECK(tv->graph() == tf->graph());
  for (int e = 0; e < tv->graph().num_edges(); ++e) {
    CHECK(tv->eperm(e) == tf->eperm(e));
    CHECK(tv->rho(e) == tf->rho(e));
  }
}
