#include "ssg/action.hpp"

#include <algorithm>

namespace ssg {

namespace {

std::vector<int> perm_from_map(const Graph& g, const std::map<std::string, std::string>& m,
                               bool vertices) {
  int n = vertices ? g.num_vertices() : g.num_edges();
  std::vector<int> perm(n, -1);
  auto index = [&](const std::string& id) {
    return vertices ? g.vertex_index(id) : g.edge_index(id);
  };
  for (const auto& [from, to] : m) perm[index(from)] = index(to);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0)
      throw ValidationError(std::string(vertices ? "vperm" : "eperm") + " missing entry for " +
                            (vertices ? g.vertex_id(i) : g.edge_id(i)));
  }
  std::vector<int> hit(n, 0);
  for (int i = 0; i < n; ++i) hit[perm[i]]++;
  for (int i = 0; i < n; ++i) {
    if (hit[i] != 1)
      throw ValidationError(std::string(vertices ? "vperm" : "eperm") + " is not a bijection at " +
                            (vertices ? g.vertex_id(i) : g.edge_id(i)));
  }
  return perm;
}

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = perm[j];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> path_key(const Path& p) {
  std::vector<int> k;
  k.reserve(p.edges.size() + 1);
  k.push_back(p.base);
  k.insert(k.end(), p.edges.begin(), p.edges.end());
  return k;
}

}  // namespace

std::shared_ptr<SelfSimilarAction> SelfSimilarAction::build(
    Graph g, const std::map<std::string, std::string>& vperm,
    const std::map<std::string, std::string>& eperm,
    const std::map<std::string, std::uint64_t>& rho) {
  auto a = std::shared_ptr<SelfSimilarAction>(new SelfSimilarAction());
  a->graph_ = std::move(g);
  a->vperm_ = perm_from_map(a->graph_, vperm, true);
  a->eperm_ = perm_from_map(a->graph_, eperm, false);
  a->rho_.assign(a->graph_.num_edges(), 0);
  for (const auto& [id, w] : rho) a->rho_[a->graph_.edge_index(id)] = w;
  for (int e = 0; e < a->graph_.num_edges(); ++e) {
    if (!rho.count(a->graph_.edge_id(e)))
      throw ValidationError("rho missing entry for edge " + a->graph_.edge_id(e));
  }

  a->vperm_inv_.assign(a->graph_.num_vertices(), 0);
  for (int v = 0; v < a->graph_.num_vertices(); ++v) a->vperm_inv_[a->vperm_[v]] = v;
  a->eperm_inv_.assign(a->graph_.num_edges(), 0);
  for (int e = 0; e < a->graph_.num_edges(); ++e) a->eperm_inv_[a->eperm_[e]] = e;

  OrbitTable& t = a->orbits_;
  t.vertex_orbits = cycles_of(a->vperm_);
  t.edge_orbits = cycles_of(a->eperm_);
  t.vertex_orbit_of.assign(a->graph_.num_vertices(), -1);
  t.vertex_pos.assign(a->graph_.num_vertices(), -1);
  t.edge_orbit_of.assign(a->graph_.num_edges(), -1);
  t.edge_pos.assign(a->graph_.num_edges(), -1);
  t.m_v.assign(a->graph_.num_vertices(), 0);
  t.m_e.assign(a->graph_.num_edges(), 0);
  for (size_t o = 0; o < t.vertex_orbits.size(); ++o)
    for (size_t i = 0; i < t.vertex_orbits[o].size(); ++i) {
      int v = t.vertex_orbits[o][i];
      t.vertex_orbit_of[v] = static_cast<int>(o);
      t.vertex_pos[v] = static_cast<int>(i);
      t.m_v[v] = t.vertex_orbits[o].size();
    }
  for (size_t o = 0; o < t.edge_orbits.size(); ++o)
    for (size_t i = 0; i < t.edge_orbits[o].size(); ++i) {
      int e = t.edge_orbits[o][i];
      t.edge_orbit_of[e] = static_cast<int>(o);
      t.edge_pos[e] = static_cast<int>(i);
      t.m_e[e] = t.edge_orbits[o].size();
    }
  a->orbit_rho_sum_.assign(t.edge_orbits.size(), 0);
  for (int e = 0; e < a->graph_.num_edges(); ++e)
    a->orbit_rho_sum_[t.edge_orbit_of[e]] += a->rho_[e];
  return a;
}

ActionPtr SelfSimilarAction::make(Graph g, const std::map<std::string, std::string>& vperm,
                                  const std::map<std::string, std::string>& eperm,
                                  const std::map<std::string, std::uint64_t>& rho) {
  auto a = build(std::move(g), vperm, eperm, rho);
  auto bad = a->structural_violations();
  if (!bad.empty()) throw ValidationError(bad.front().axiom + ": " + bad.front().witness);
  return a;
}

ActionPtr SelfSimilarAction::make_unchecked(Graph g,
                                            const std::map<std::string, std::string>& vperm,
                                            const std::map<std::string, std::string>& eperm,
                                            const std::map<std::string, std::uint64_t>& rho) {
  return build(std::move(g), vperm, eperm, rho);
}

std::vector<AxiomViolation> SelfSimilarAction::structural_violations() const {
  std::vector<AxiomViolation> out;
  for (int e = 0; e < graph_.num_edges(); ++e) {
    int f = eperm_[e];
    if (graph_.edge_rng(f) != vperm_[graph_.edge_rng(e)])
      out.push_back({"automorphism", "rng(1." + graph_.edge_id(e) + ") = " +
                                         graph_.vertex_id(graph_.edge_rng(f)) +
                                         " but 1.rng(" + graph_.edge_id(e) + ") = " +
                                         graph_.vertex_id(vperm_[graph_.edge_rng(e)])});
    if (graph_.edge_src(f) != vperm_[graph_.edge_src(e)])
      out.push_back({"automorphism", "src(1." + graph_.edge_id(e) + ") = " +
                                         graph_.vertex_id(graph_.edge_src(f)) +
                                         " but 1.src(" + graph_.edge_id(e) + ") = " +
                                         graph_.vertex_id(vperm_[graph_.edge_src(e)])});
    // (S4) for the generator: rho(e) = 1 mod |orbit of src(e)|
    std::uint64_t mv = orbits_.m_v[graph_.edge_src(e)];
    if (rho_[e] % mv != 1 % mv)
      out.push_back({"S4", "1|_" + graph_.edge_id(e) + " = " + std::to_string(rho_[e]) +
                               " is not 1 mod " + std::to_string(mv) + " = |orbit of " +
                               graph_.vertex_id(graph_.edge_src(e)) + "|"});
  }
  return out;
}

int SelfSimilarAction::act_vertex(std::uint64_t n, int v) const {
  const auto& cyc = orbits_.vertex_orbits[orbits_.vertex_orbit_of[v]];
  std::uint64_t len = cyc.size();
  return cyc[(orbits_.vertex_pos[v] + n % len) % len];
}

int SelfSimilarAction::act_edge(std::uint64_t n, int e) const {
  const auto& cyc = orbits_.edge_orbits[orbits_.edge_orbit_of[e]];
  std::uint64_t len = cyc.size();
  return cyc[(orbits_.edge_pos[e] + n % len) % len];
}

std::uint64_t SelfSimilarAction::restrict_edge(std::uint64_t n, int e) const {
  // n|_e = sum_{i<n} rho(i.e); regrouped over full orbit cycles
  const auto& cyc = orbits_.edge_orbits[orbits_.edge_orbit_of[e]];
  std::uint64_t len = cyc.size();
  std::uint64_t full = n / len, rem = n % len;
  std::uint64_t total = full * orbit_rho_sum_[orbits_.edge_orbit_of[e]];
  int pos = orbits_.edge_pos[e];
  for (std::uint64_t i = 0; i < rem; ++i) total += rho_[cyc[(pos + i) % len]];
  return total;
}

Path SelfSimilarAction::act_one(const Path& mu) const {
  if (mu.is_vertex()) return Path::at_vertex(vperm_[mu.base]);
  auto key = path_key(mu);
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = act1_cache_.find(key);
    if (it != act1_cache_.end()) return it->second;
  }
  // 1.(e nu) = (1.e)((1|_e).nu)
  int e = mu.edges.front();
  Path nu;
  nu.edges.assign(mu.edges.begin() + 1, mu.edges.end());
  nu.base = mu.base;
  Path nu2 = act(rho_[e], nu);
  Path out;
  out.edges.reserve(mu.edges.size());
  out.edges.push_back(eperm_[e]);
  out.edges.insert(out.edges.end(), nu2.edges.begin(), nu2.edges.end());
  out.base = nu2.base;
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    act1_cache_.emplace(std::move(key), out);
  }
  return out;
}

std::uint64_t SelfSimilarAction::restrict_one(const Path& mu) const {
  if (mu.is_vertex()) return 1;  // p|_v = p
  auto key = path_key(mu);
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = r1_cache_.find(key);
    if (it != r1_cache_.end()) return it->second;
  }
  // 1|_(e nu) = (1|_e)|_nu
  int e = mu.edges.front();
  Path nu;
  nu.edges.assign(mu.edges.begin() + 1, mu.edges.end());
  nu.base = mu.base;
  std::uint64_t out = restrict(rho_[e], nu);
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    r1_cache_.emplace(std::move(key), out);
  }
  return out;
}

Path SelfSimilarAction::act(std::uint64_t n, const Path& mu) const {
  if (mu.is_vertex()) return Path::at_vertex(act_vertex(n, mu.base));
  Path cur = mu;
  for (std::uint64_t i = 0; i < n; ++i) cur = act_one(cur);
  return cur;
}

std::uint64_t SelfSimilarAction::restrict(std::uint64_t n, const Path& mu) const {
  if (mu.is_vertex()) return n;
  // n|_mu = sum_{i<n} 1|_(i.mu)
  std::uint64_t total = 0;
  Path cur = mu;
  for (std::uint64_t i = 0; i < n; ++i) {
    total += restrict_one(cur);
    cur = act_one(cur);
  }
  return total;
}

Path SelfSimilarAction::act_inverse(std::uint64_t n, const Path& mu) const {
  if (mu.is_vertex()) {
    const auto& cyc = orbits_.vertex_orbits[orbits_.vertex_orbit_of[mu.base]];
    std::uint64_t len = cyc.size();
    std::uint64_t back = (len - n % len) % len;
    return Path::at_vertex(cyc[(orbits_.vertex_pos[mu.base] + back) % len]);
  }
  // invert one step at a time: the inverse of 1.(e nu) = (1.e)((1|_e).nu)
  Path cur = mu;
  for (std::uint64_t i = 0; i < n; ++i) {
    Path prev;
    int e1 = cur.edges.front();
    int e = eperm_inv_[e1];
    Path nu2;
    nu2.edges.assign(cur.edges.begin() + 1, cur.edges.end());
    nu2.base = cur.base;
    Path nu = act_inverse(rho_[e], nu2);
    prev.edges.reserve(cur.edges.size());
    prev.edges.push_back(e);
    prev.edges.insert(prev.edges.end(), nu.edges.begin(), nu.edges.end());
    prev.base = nu.base;
    cur = prev;
  }
  return cur;
}

bool SelfSimilarAction::check_assumption_A() const {
  for (const auto& orbit : orbits_.edge_orbits) {
    bool ok = false;
    for (int e : orbit)
      if (rho_[e] != 0) ok = true;
    if (!ok) return false;
  }
  return true;
}

std::uint64_t SelfSimilarAction::big_M(int e0) const {
  const auto& orbit = orbits_.edge_orbits[orbits_.edge_orbit_of[e0]];
  std::uint64_t m = 0;
  for (int f : orbit) m += rho_[f];
  if (m == 0)
    throw AssumptionAViolated("restriction vanishes on the whole orbit of " + graph_.edge_id(e0));
  return m;
}

Intertwiner SelfSimilarAction::find_intertwiner(int e, std::int64_t k) const {
  Intertwiner it;
  if (k <= 0) {
    it.q = 0;
    it.p = 0;
    it.f = e;
    return it;
  }
  std::uint64_t orbit_sum = orbit_rho_sum_[orbits_.edge_orbit_of[e]];
  if (orbit_sum == 0)
    throw AssumptionAViolated("no q with q|_" + graph_.edge_id(e) + " >= " + std::to_string(k) +
                              ": restriction vanishes on the orbit");
  std::uint64_t q = 0;
  while (true) {
    std::uint64_t p = restrict_edge(q, e);
    if (p >= static_cast<std::uint64_t>(k)) {
      it.q = q;
      it.p = p;
      it.f = act_edge(q, e);
      return it;
    }
    ++q;
  }
}

AxiomReport SelfSimilarAction::verify_axioms(int depth, int path_depth) const {
  if (path_depth < 0) path_depth = depth;
  AxiomReport rep;
  for (auto& v : structural_violations()) rep.violations.push_back(v);
  rep.checks += graph_.num_edges() * 3;

  std::vector<Path> all;
  for (int v = 0; v < graph_.num_vertices(); ++v)
    for (int d = 0; d <= path_depth; ++d)
      for (auto& p : enumerate_paths(graph_, v, d)) all.push_back(p);

  auto wit = [&](const Path& mu) { return path_str(graph_, mu); };

  // identity axioms: 0.mu = mu and 0|_mu = 0
  for (const auto& mu : all) {
    ++rep.checks;
    if (act(0, mu) != mu)
      rep.violations.push_back({"S4'", "0." + wit(mu) + " != " + wit(mu)});
    if (restrict(0, mu) != 0)
      rep.violations.push_back({"S4'", "0|_" + wit(mu) + " != 0"});
  }

  // (S2'): p|_v = p
  for (int v = 0; v < graph_.num_vertices(); ++v)
    for (int p = 1; p <= depth; ++p) {
      ++rep.checks;
      if (restrict(p, Path::at_vertex(v)) != static_cast<std::uint64_t>(p))
        rep.violations.push_back({"S2'", std::to_string(p) + "|_" + graph_.vertex_id(v)});
    }

  // length preservation and src/rng equivariance of the action
  for (const auto& mu : all)
    for (int p = 1; p <= depth; ++p) {
      ++rep.checks;
      Path pmu = act(p, mu);
      if (pmu.length() != mu.length())
        rep.violations.push_back({"length", std::to_string(p) + "." + wit(mu)});
      if (pmu.rng(graph_) != act_vertex(p, mu.rng(graph_)))
        rep.violations.push_back({"rng-equivariance", std::to_string(p) + "." + wit(mu)});
      if (pmu.src() != act_vertex(restrict(p, mu), mu.src()))
        rep.violations.push_back({"src-equivariance", std::to_string(p) + "." + wit(mu)});
    }

  // (S1') and (S3') over composable pairs
  for (const auto& mu : all) {
    for (const auto& nu : all) {
      if (mu.src() != nu.rng(graph_)) continue;
      Path munu = compose_paths(graph_, mu, nu);
      for (int p = 1; p <= depth; ++p) {
        ++rep.checks;
        Path lhs = act(p, munu);
        Path rhs = compose_paths(graph_, act(p, mu), act(restrict(p, mu), nu));
        if (lhs != rhs)
          rep.violations.push_back(
              {"S1'", std::to_string(p) + ".(" + wit(mu) + " " + wit(nu) + ")"});
        if (restrict(p, munu) != restrict(restrict(p, mu), nu))
          rep.violations.push_back(
              {"S3'", std::to_string(p) + "|_(" + wit(mu) + " " + wit(nu) + ")"});
      }
    }
  }

  // (S5'): (p+q)|_mu = p|_(q.mu) + q|_mu
  for (const auto& mu : all)
    for (int p = 1; p <= depth; ++p)
      for (int q = 1; q <= depth; ++q) {
        ++rep.checks;
        if (restrict(p + q, mu) != restrict(p, act(q, mu)) + restrict(q, mu))
          rep.violations.push_back(
              {"S5'", "(" + std::to_string(p) + "+" + std::to_string(q) + ")|_" + wit(mu)});
      }

  // act(p,.) is a bijection on paths of each length
  for (int p = 1; p <= depth; ++p) {
    std::vector<Path> imgs;
    imgs.reserve(all.size());
    for (const auto& mu : all) imgs.push_back(act(p, mu));
    std::sort(imgs.begin(), imgs.end());
    ++rep.checks;
    if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end())
      rep.violations.push_back({"bijectivity", "act(" + std::to_string(p) + ", .) not injective"});
  }

  return rep;
}

}  // namespace ssg
