#include "ssg/zappa_szep.hpp"

namespace ssg {

ZSElement zs_multiply(const SelfSimilarAction& a, const ZSElement& x, const ZSElement& y) {
  Path pnu = a.act(x.p, y.mu);
  if (x.mu.src() != pnu.rng(a.graph()))
    throw ComposabilityError("zs product undefined: src(" + path_str(a.graph(), x.mu) +
                             ") != rng(" + std::to_string(x.p) + "." +
                             path_str(a.graph(), y.mu) + ")");
  ZSElement out;
  out.mu = compose_paths(a.graph(), x.mu, pnu);
  out.p = a.restrict(x.p, y.mu) + y.p;
  return out;
}

std::string zs_str(const Graph& g, const ZSElement& x) {
  std::string mu = x.mu.is_vertex() ? (g.num_vertices() == 1 ? "∅" : path_str(g, x.mu))
                                    : path_str(g, x.mu);
  return "(" + mu + ", " + std::to_string(x.p) + ")";
}

namespace {

std::string loop_id(int i, int n) {
  std::string s = std::to_string(i);
  std::string w = std::to_string(n);
  while (s.size() < w.size()) s = "0" + s;
  return "e" + s;
}

}  // namespace

ActionPtr factory_bs(int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("factory_bs requires n, m >= 1");
  std::vector<EdgeSpec> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({loop_id(i, n), "v", "v"});
  Graph g = Graph::make({"v"}, edges);
  std::map<std::string, std::string> vperm{{"v", "v"}};
  std::map<std::string, std::string> eperm;
  std::map<std::string, std::uint64_t> rho;
  for (int i = 1; i <= n; ++i) {
    eperm[loop_id(i, n)] = loop_id(i == n ? 1 : i + 1, n);
    rho[loop_id(i, n)] = (i == n) ? static_cast<std::uint64_t>(m) : 0;
  }
  return SelfSimilarAction::make(g, vperm, eperm, rho);
}

ActionPtr factory_odometer(int n) { return factory_bs(n, 1); }

ActionPtr factory_two_vertex_swap() {
  Graph g = Graph::make({"v0", "v1"}, {{"e0", "v0", "v0"},
                                       {"e1", "v1", "v1"},
                                       {"f0", "v1", "v0"},
                                       {"f1", "v0", "v1"}});
  return SelfSimilarAction::make(
      g, {{"v0", "v1"}, {"v1", "v0"}},
      {{"e0", "e1"}, {"e1", "e0"}, {"f0", "f1"}, {"f1", "f0"}},
      {{"e0", 3}, {"e1", 1}, {"f0", 3}, {"f1", 3}});
}

}  // namespace ssg
