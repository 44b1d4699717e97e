#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace ssg;
using nlohmann::json;
using ssg::test::load_fixture;

namespace {

bool atoms_equal(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  if (!a.is_mapped()) return true;
  return a.label == b.label && a.phase == b.phase;
}

bool reps_equal(const AtomicRep& x, const AtomicRep& y) {
  if (x.dim() != y.dim() || x.label_names != y.label_names ||
      x.label_vertex != y.label_vertex || x.window_depth != y.window_depth)
    return false;
  for (int l = 0; l < x.dim(); ++l) {
    if (!atoms_equal(x.vmap[l], y.vmap[l])) return false;
    if (!atoms_equal(x.vstar[l], y.vstar[l])) return false;
  }
  for (int e = 0; e < x.graph().num_edges(); ++e)
    for (int l = 0; l < x.dim(); ++l) {
      if (!atoms_equal(x.smap[e][l], y.smap[e][l])) return false;
      if (!atoms_equal(x.sstar[e][l], y.sstar[e][l])) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("graph and action documents round-trip") {
  for (const char* fx : {"odometer2.json", "bs32.json", "twovertex.json"}) {
    auto a = load_fixture(fx);
    json j = action_to_json(*a);
    auto b = action_from_json(j);
    CHECK(a->graph() == b->graph());
    for (int v = 0; v < a->graph().num_vertices(); ++v) CHECK(a->vperm(v) == b->vperm(v));
    for (int e = 0; e < a->graph().num_edges(); ++e) {
      CHECK(a->eperm(e) == b->eperm(e));
      CHECK(a->rho(e) == b->rho(e));
    }
  }
}

TEST_CASE("strict schemas reject unknown or missing keys") {
  json g{{"vertices", {"v"}},
         {"edges", {{{"id", "e"}, {"src", "v"}, {"rng", "v"}}}},
         {"extra", 1}};
  CHECK_THROWS_AS(graph_from_json(g), SchemaError);
  json g2{{"vertices", {"v"}}};
  CHECK_THROWS_AS(graph_from_json(g2), SchemaError);
  json g3{{"vertices", {"v"}},
          {"edges", {{{"id", "e"}, {"src", "v"}, {"rng", "v"}, {"weight", 2}}}}};
  CHECK_THROWS_AS(graph_from_json(g3), SchemaError);
  json a{{"graph", {{"vertices", {"v"}}, {"edges", {{{"id", "e"}, {"src", "v"}, {"rng", "v"}}}}}},
         {"vperm", {{"v", "v"}}},
         {"eperm", {{"e", "e"}}},
         {"rho", {{"e", -3}}}};
  CHECK_THROWS_AS(action_from_json(a), SchemaError);
}

TEST_CASE("malformed permutations are rejected on load") {
  json a{{"graph",
          {{"vertices", {"v"}},
           {"edges",
            {{{"id", "e1"}, {"src", "v"}, {"rng", "v"}},
             {{"id", "e2"}, {"src", "v"}, {"rng", "v"}}}}}},
         {"vperm", {{"v", "v"}}},
         {"eperm", {{"e1", "e1"}, {"e2", "e1"}}},
         {"rho", {{"e1", 0}, {"e2", 1}}}};
  CHECK_THROWS_AS(action_from_json(a), ValidationError);
}

TEST_CASE("phases round-trip exactly") {
  for (auto [num, den] : std::vector<std::pair<int, int>>{{0, 1}, {1, 5}, {3, 8}, {7, 9}}) {
    Phase p = Phase::rotation(num, den);
    CHECK(phase_from_json(phase_to_json(p)) == p);
  }
  Phase f = Phase::from_complex({0.6, 0.8});
  CHECK(phase_from_json(phase_to_json(f)) == f);
}

TEST_CASE("atomic representation dumps reload to an equal value") {
  auto a = load_fixture("twovertex.json");
  std::vector<AtomicRep> reps;
  reps.push_back(build_left_regular(a, 0, 3));
  reps.push_back(build_c_lambda(a, 0, Phase::rotation(1, 5), 3));
  reps.push_back(build_inductive_ck(2, {1, 2, 2, 1, 2, 1, 1}, 3));
  reps.push_back(build_cycle_ck(2, {2}, Phase::rotation(1, 3), false, 3));
  for (const auto& rep : reps) {
    json j = atomic_to_json(rep);
    AtomicRep back = atomic_from_json(j);
    CHECK(reps_equal(rep, back));
    // and the serialization itself is stable
    CHECK(atomic_to_json(back) == j);
  }
}

TEST_CASE("rep loader rejects broken tables") {
  auto a = load_fixture("odometer2.json");
  AtomicRep rep = build_c_lambda(a, 0, Phase::one(), 2);
  json j = atomic_to_json(rep);
  json bad = j;
  bad["vmap"][0] = json{{"to", 10000}};
  CHECK_THROWS_AS(atomic_from_json(bad), SchemaError);
  json bad2 = j;
  bad2["smap"].erase("e1");
  CHECK_THROWS_AS(atomic_from_json(bad2), SchemaError);
}

TEST_CASE("reports serialize with their verdicts") {
  auto a = load_fixture("odometer3.json");
  json ax = axiom_report_to_json(a->verify_axioms(2, 2));
  CHECK(ax["pass"] == true);
  AtomicRep rep = build_left_regular(a, 0, 3);
  json rel = relation_report_to_json(verify_relations(rep, 2));
  CHECK(rel["pass"] == true);
  CHECK(rel["ck_on_interior"] == false);
}
