#include "ssg/atomic.hpp"

#include <algorithm>
#include <tuple>

#include "ssg/zappa_szep.hpp"

namespace ssg {

Atom AtomicRep::apply(const Gen& g, int label) const {
  switch (g.kind) {
    case Gen::Kind::V:
      return vmap[label];
    case Gen::Kind::Vstar:
      return vstar[label];
    case Gen::Kind::S:
      return smap[g.id][label];
    case Gen::Kind::Sstar:
      return sstar[g.id][label];
    case Gen::Kind::P:
      return label_vertex[label] == g.id ? Atom::mapped(label) : Atom::zero();
  }
  return Atom::zero();
}

Atom AtomicRep::apply_word(const GenWord& w, int label) const {
  Atom cur = Atom::mapped(label);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Atom next = apply(*it, cur.label);
    if (!next.is_mapped()) return next;
    cur = Atom::mapped(next.label, next.phase * cur.phase);
  }
  return cur;
}

bool AtomicRep::v_total() const {
  for (int l = 0; l < dim(); ++l)
    if (!vmap[l].is_mapped() || !vstar[l].is_mapped()) return false;
  return true;
}

void AtomicRep::recompute_interior() {
  int cap = 2 * window_depth + 16;
  int n = dim();
  interior_depth.assign(n, cap);
  bool vfree = v_total();
  int ne = graph().num_edges();

  auto contribution = [&](const Atom& a, int cost) -> int {
    if (a.is_zero()) return cap;
    if (a.is_boundary()) return 0;
    return std::min(cap, interior_depth[a.label] + cost);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int l = 0; l < n; ++l) {
      int d = cap;
      d = std::min(d, contribution(vmap[l], vfree ? 0 : 1));
      d = std::min(d, contribution(vstar[l], vfree ? 0 : 1));
      for (int e = 0; e < ne; ++e) {
        d = std::min(d, contribution(smap[e][l], 1));
        d = std::min(d, contribution(sstar[e][l], 1));
      }
      if (d < interior_depth[l]) {
        interior_depth[l] = d;
        changed = true;
      }
    }
  }
}

bool AtomicRep::label_hit_by_s(int label) const {
  for (int e = 0; e < graph().num_edges(); ++e)
    if (sstar[e][label].is_mapped()) return true;
  return false;
}

bool AtomicRep::label_s_hit_unresolved(int label) const {
  bool any_boundary = false;
  for (int e = 0; e < graph().num_edges(); ++e) {
    if (sstar[e][label].is_mapped()) return false;
    if (sstar[e][label].is_boundary()) any_boundary = true;
  }
  return any_boundary;
}

std::vector<int> AtomicRep::wandering_labels() const {
  std::vector<int> out;
  for (int l = 0; l < dim(); ++l) {
    bool unhit = true;
    for (int e = 0; e < graph().num_edges(); ++e)
      if (!sstar[e][l].is_zero()) unhit = false;
    if (unhit) out.push_back(l);
  }
  return out;
}

void AtomicRep::validate() const {
  int n = dim();
  int ne = graph().num_edges();
  if (static_cast<int>(label_vertex.size()) != n || static_cast<int>(vmap.size()) != n ||
      static_cast<int>(vstar.size()) != n || static_cast<int>(smap.size()) != ne ||
      static_cast<int>(sstar.size()) != ne)
    throw ValidationError("atomic rep: inconsistent table sizes");

  std::vector<int> vhit(n, 0);
  for (int l = 0; l < n; ++l) {
    if (vmap[l].is_mapped()) {
      vhit[vmap[l].label]++;
      const Atom& back = vstar[vmap[l].label];
      if (!back.is_mapped() || back.label != l || back.phase != vmap[l].phase.conj())
        throw ValidationError("atomic rep: vstar not inverse to vmap at " + label_names[l]);
    }
  }
  for (int l = 0; l < n; ++l)
    if (vhit[l] > 1) throw ValidationError("atomic rep: V not injective at " + label_names[l]);

  std::vector<int> shit(n, 0);
  for (int e = 0; e < ne; ++e) {
    std::vector<int> ehit(n, 0);
    for (int l = 0; l < n; ++l) {
      const Atom& a = smap[e][l];
      if (label_vertex[l] != graph().edge_src(e)) {
        if (!a.is_zero())
          throw ValidationError("atomic rep: S_" + graph().edge_id(e) + " nonzero outside I_v at " +
                                label_names[l]);
        continue;
      }
      if (a.is_mapped()) {
        if (label_vertex[a.label] != graph().edge_rng(e))
          throw ValidationError("atomic rep: S_" + graph().edge_id(e) +
                                " image outside I_(rng) at " + label_names[l]);
        ehit[a.label]++;
        shit[a.label]++;
        const Atom& back = sstar[e][a.label];
        if (!back.is_mapped() || back.label != l || back.phase != a.phase.conj())
          throw ValidationError("atomic rep: sstar not inverse to smap at " + label_names[l]);
      }
    }
    for (int l = 0; l < n; ++l)
      if (ehit[l] > 1)
        throw ValidationError("atomic rep: S_" + graph().edge_id(e) + " not injective");
  }
  for (int l = 0; l < n; ++l)
    if (shit[l] > 1)
      throw ValidationError("atomic rep: S ranges not disjoint at " + label_names[l]);
}

// ---------------------------------------------------------------------------
// relation verification

namespace {

GenWord word_v(int p, bool star) {
  GenWord w;
  for (int i = 0; i < p; ++i) w.push_back(star ? Gen::Vstar() : Gen::V());
  return w;
}

void append(GenWord& w, const GenWord& tail) { w.insert(w.end(), tail.begin(), tail.end()); }

}  // namespace

RelationReport verify_relations(const AtomicRep& rep, int d) {
  RelationReport out;
  const Graph& g = rep.graph();
  const SelfSimilarAction& a = *rep.action;
  int n = rep.dim();
  int ne = g.num_edges();

  auto compare = [&](const std::string& rel, const GenWord& lhs, const GenWord& rhs,
                     const std::string& what) {
    for (int l = 0; l < n; ++l) {
      Atom x = rep.apply_word(lhs, l);
      Atom y = rep.apply_word(rhs, l);
      if (x.is_boundary() || y.is_boundary()) {
        ++out.skipped;
        continue;
      }
      ++out.checked;
      bool ok;
      if (x.is_zero() && y.is_zero())
        ok = true;
      else if (x.is_mapped() && y.is_mapped())
        ok = x.label == y.label && x.phase == y.phase;
      else
        ok = false;
      if (!ok)
        out.violations.push_back({rel, what + " on label " + rep.label_names[l]});
    }
  };

  // TCK structure
  for (int e = 0; e < ne; ++e) {
    std::vector<int> ehit(n, 0);
    for (int l = 0; l < n; ++l) {
      const Atom& s = rep.smap[e][l];
      ++out.checked;
      if (rep.label_vertex[l] == g.edge_src(e)) {
        if (s.is_zero())
          out.violations.push_back({"TCK2", "S_" + g.edge_id(e) + " kills a label of I_(src) " +
                                                rep.label_names[l]});
        if (s.is_mapped()) {
          if (rep.label_vertex[s.label] != g.edge_rng(e))
            out.violations.push_back({"TCK2", "S_" + g.edge_id(e) + " image leaves I_(rng)"});
          ehit[s.label]++;
        }
      } else if (!s.is_zero()) {
        out.violations.push_back(
            {"TCK2", "S_" + g.edge_id(e) + " nonzero outside I_(src) at " + rep.label_names[l]});
      }
    }
    for (int l = 0; l < n; ++l)
      if (ehit[l] > 1)
        out.violations.push_back({"TCK2", "S_" + g.edge_id(e) + " not injective at " +
                                              rep.label_names[l]});
  }
  for (int l = 0; l < n; ++l) {
    int hits = 0;
    for (int e = 0; e < ne; ++e)
      if (rep.sstar[e][l].is_mapped()) ++hits;
    ++out.checked;
    if (hits > 1)
      out.violations.push_back({"TCK3", "label " + rep.label_names[l] + " hit by " +
                                            std::to_string(hits) + " edges"});
  }

  // CK on interior: no interior label is left unhit
  out.ck_on_interior = true;
  for (int l = 0; l < n; ++l) {
    if (!rep.is_interior(l, 1)) continue;
    bool unhit = true;
    for (int e = 0; e < ne; ++e)
      if (!rep.sstar[e][l].is_zero()) unhit = false;
    if (unhit) out.ck_on_interior = false;
  }

  out.v_unitary_on_window = true;
  for (int l = 0; l < n; ++l)
    if (rep.vmap[l].is_zero() || rep.vstar[l].is_zero()) out.v_unitary_on_window = false;
  out.nc_hypothesis = out.v_unitary_on_window || out.ck_on_interior;

  int pmax = std::max(1, std::min(d, 3));
  for (int p = 1; p <= pmax; ++p) {
    // (SS) / (NC) on vertices
    for (int v = 0; v < g.num_vertices(); ++v) {
      int pv = a.act_vertex(p, v);
      GenWord lhs = word_v(p, false);
      lhs.push_back(Gen::P(v));
      GenWord rhs{Gen::P(pv)};
      append(rhs, word_v(p, false));
      compare("SS", lhs, rhs, "V^" + std::to_string(p) + " S_" + g.vertex_id(v));

      GenWord lhs2 = word_v(p, true);
      lhs2.push_back(Gen::P(pv));
      GenWord rhs2{Gen::P(v)};
      append(rhs2, word_v(p, true));
      compare("NC", lhs2, rhs2, "V*^" + std::to_string(p) + " S_" + g.vertex_id(pv));
    }
    // (SS) / (NC) / technical identities on edges
    for (int e = 0; e < ne; ++e) {
      int pe = a.act_edge(p, e);
      std::uint64_t pr = a.restrict_edge(p, e);
      if (pr > static_cast<std::uint64_t>(4 * d + 8)) continue;  // keep words bounded
      int prn = static_cast<int>(pr);

      GenWord lhs = word_v(p, false);
      lhs.push_back(Gen::S(e));
      GenWord rhs{Gen::S(pe)};
      append(rhs, word_v(prn, false));
      compare("SS", lhs, rhs, "V^" + std::to_string(p) + " S_" + g.edge_id(e));

      GenWord lhs2 = word_v(p, true);
      lhs2.push_back(Gen::S(pe));
      GenWord rhs2{Gen::S(e)};
      append(rhs2, word_v(prn, true));
      compare("NC", lhs2, rhs2, "V*^" + std::to_string(p) + " S_" + g.edge_id(pe));

      // V^p S_e S_e* = S_(p.e) S_(p.e)* V^p
      GenWord l3 = word_v(p, false);
      l3.push_back(Gen::S(e));
      l3.push_back(Gen::Sstar(e));
      GenWord r3{Gen::S(pe), Gen::Sstar(pe)};
      append(r3, word_v(p, false));
      compare("technical-i", l3, r3, "V^" + std::to_string(p) + " S_" + g.edge_id(e) + " S*");

      // V^p* S_(p.f) S_(p.f)* = S_f S_f* V^p*   (stated with e = p.f)
      GenWord l4 = word_v(p, true);
      l4.push_back(Gen::S(pe));
      l4.push_back(Gen::Sstar(pe));
      GenWord r4{Gen::S(e), Gen::Sstar(e)};
      append(r4, word_v(p, true));
      compare("technical-ii", l4, r4, "V*^" + std::to_string(p) + " S_" + g.edge_id(pe) + " S*");
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// traceback helpers

STraceTable s_traceback(const AtomicRep& rep) {
  int n = rep.dim();
  int ne = rep.graph().num_edges();
  STraceTable out(n);
  // 0 = unvisited, 1 = in progress, 2 = done
  std::vector<int> state(n, 0);

  auto parent_of = [&](int l) -> std::tuple<int, int, Phase, bool> {
    // returns (edge, parent, phase of S_e parent -> l, resolved)
    for (int e = 0; e < ne; ++e) {
      const Atom& b = rep.sstar[e][l];
      if (b.is_mapped()) return {e, b.label, b.phase.conj(), true};
    }
    return {-1, -1, Phase::one(), false};
  };

  std::vector<int> stack;
  for (int l0 = 0; l0 < n; ++l0) {
    if (state[l0] == 2) continue;
    stack.clear();
    int l = l0;
    while (true) {
      if (state[l] == 2) break;
      if (state[l] == 1) {
        // found a cycle: everything on the stack from l onwards is cyclic
        for (int x : stack) {
          out[x].kind = STrace::Kind::cycle;
          state[x] = 2;
        }
        break;
      }
      state[l] = 1;
      stack.push_back(l);
      auto [e, parent, ph, resolved] = parent_of(l);
      if (!resolved) {
        if (rep.label_s_hit_unresolved(l))
          out[l].kind = STrace::Kind::boundary;
        else {
          out[l].kind = STrace::Kind::rooted;  // wandering root
          out[l].root = l;
        }
        state[l] = 2;
        stack.pop_back();
        break;
      }
      l = parent;
    }
    // unwind the stack against the resolved tail
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (state[x] == 2) continue;
      auto [e, parent, ph, resolved] = parent_of(x);
      const STrace& pt = out[parent];
      STrace& t = out[x];
      if (pt.kind == STrace::Kind::rooted) {
        t.kind = STrace::Kind::rooted;
        t.root = pt.root;
        t.path.clear();
        t.path.push_back(e);
        t.path.insert(t.path.end(), pt.path.begin(), pt.path.end());
        t.phase = ph * pt.phase;
      } else {
        t.kind = pt.kind;  // cycle or boundary propagates
      }
      state[x] = 2;
    }
  }
  return out;
}

VTraceTable v_traceback(const AtomicRep& rep, int max_steps) {
  int n = rep.dim();
  VTraceTable out(n);
  for (int l = 0; l < n; ++l) {
    VTrace t;
    int cur = l;
    Phase acc = Phase::one();
    while (true) {
      const Atom& b = rep.vstar[cur];
      if (b.is_zero()) {
        t.kind = VTrace::Kind::kernel;
        t.root = cur;
        t.phase = acc.conj();  // V^steps root = phase . label
        break;
      }
      if (b.is_boundary()) {
        t.kind = VTrace::Kind::boundary;
        break;
      }
      if (t.steps >= max_steps) {
        t.kind = VTrace::Kind::boundary;
        break;
      }
      acc = acc * b.phase;
      cur = b.label;
      ++t.steps;
      if (cur == l) {
        t.kind = VTrace::Kind::cycle;
        break;
      }
    }
    out[l] = t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// builders

namespace {

struct LabelTable {
  std::vector<std::string> names;
  std::vector<int> vertex;
  int add(const std::string& name, int v) {
    names.push_back(name);
    vertex.push_back(v);
    return static_cast<int>(names.size()) - 1;
  }
};

void init_tables(AtomicRep& rep, const LabelTable& t) {
  rep.label_names = t.names;
  rep.label_vertex = t.vertex;
  int n = rep.dim();
  int ne = rep.graph().num_edges();
  rep.vmap.assign(n, Atom::zero());
  rep.vstar.assign(n, Atom::zero());
  rep.smap.assign(ne, std::vector<Atom>(n, Atom::zero()));
  rep.sstar.assign(ne, std::vector<Atom>(n, Atom::zero()));
}

// derive sstar from smap; `missing` decides zero vs boundary for unhit labels
template <typename F>
void invert_smap(AtomicRep& rep, F&& missing) {
  int n = rep.dim();
  int ne = rep.graph().num_edges();
  rep.sstar.assign(ne, std::vector<Atom>(n, Atom::zero()));
  std::vector<bool> hit(n, false);
  for (int e = 0; e < ne; ++e)
    for (int l = 0; l < n; ++l)
      if (rep.smap[e][l].is_mapped()) {
        rep.sstar[e][rep.smap[e][l].label] = Atom::mapped(l, rep.smap[e][l].phase.conj());
        hit[rep.smap[e][l].label] = true;
      }
  for (int l = 0; l < n; ++l) {
    if (hit[l]) continue;
    Atom def = missing(l);
    if (def.is_boundary())
      for (int e = 0; e < ne; ++e) rep.sstar[e][l] = Atom::boundary();
  }
}

// derive vstar from vmap; `missing` decides zero vs boundary for labels
// outside the image
template <typename F>
void invert_vmap(AtomicRep& rep, F&& missing) {
  int n = rep.dim();
  rep.vstar.assign(n, Atom::zero());
  std::vector<bool> hit(n, false);
  for (int l = 0; l < n; ++l)
    if (rep.vmap[l].is_mapped()) {
      rep.vstar[rep.vmap[l].label] = Atom::mapped(l, rep.vmap[l].phase.conj());
      hit[rep.vmap[l].label] = true;
    }
  for (int l = 0; l < n; ++l)
    if (!hit[l]) rep.vstar[l] = missing(l);
}

}  // namespace

AtomicRep build_left_regular(const ActionPtr& a, int v, int depth) {
  const Graph& g = a->graph();
  AtomicRep rep;
  rep.action = a;
  rep.window_depth = depth;

  LabelTable t;
  std::map<std::pair<Path, std::uint64_t>, int> index;
  std::vector<std::pair<Path, std::uint64_t>> data;
  for (int p = 0; p <= depth; ++p) {
    int vp = a->act_vertex(p, v);
    for (int len = 0; len <= depth; ++len)
      for (auto& mu : enumerate_paths(g, vp, len)) {
        int id = t.add("(" + path_str(g, mu) + "," + std::to_string(p) + ")", mu.rng(g));
        index[{mu, static_cast<std::uint64_t>(p)}] = id;
        data.push_back({mu, static_cast<std::uint64_t>(p)});
      }
  }
  init_tables(rep, t);

  for (int l = 0; l < rep.dim(); ++l) {
    const auto& [mu, p] = data[l];
    // V: (mu, p) -> (1.mu, 1|_mu + p)
    std::uint64_t p2 = a->restrict(1, mu) + p;
    if (p2 <= static_cast<std::uint64_t>(depth))
      rep.vmap[l] = Atom::mapped(index.at({a->act(1, mu), p2}));
    else
      rep.vmap[l] = Atom::boundary();
    // S_e: (mu, p) -> (e mu, p)
    for (int e : g.edges_with_src(rep.label_vertex[l])) {
      if (mu.length() + 1 <= depth) {
        Path emu;
        emu.edges.reserve(mu.edges.size() + 1);
        emu.edges.push_back(e);
        emu.edges.insert(emu.edges.end(), mu.edges.begin(), mu.edges.end());
        emu.base = mu.base;
        rep.smap[e][l] = Atom::mapped(index.at({emu, p}));
      } else {
        rep.smap[e][l] = Atom::boundary();
      }
    }
  }

  invert_vmap(rep, [&](int l) {
    // true kernel: p < 1|_(inverse action of mu)
    const auto& [mu, p] = data[l];
    Path mu0 = a->act_inverse(1, mu);
    return p < a->restrict(1, mu0) ? Atom::zero() : Atom::boundary();
  });
  invert_smap(rep, [&](int l) {
    // unhit labels are exactly the (v', 0)-type vertices or paths whose first
    // edge was stripped... here: (mu,p) is in Ran S_e iff mu nonempty; the
    // parent always sits in the window, so missing means true zero
    (void)l;
    return Atom::zero();
  });
  rep.recompute_interior();
  rep.validate();
  return rep;
}

AtomicRep extend_unitary_from_wandering(const AtomicRep& shift_part,
                                        const std::map<int, std::pair<int, Phase>>& u0) {
  AtomicRep rep = shift_part;
  const SelfSimilarAction& a = *rep.action;

  std::vector<int> wander = rep.wandering_labels();
  std::vector<bool> is_w(rep.dim(), false);
  for (int w : wander) is_w[w] = true;

  if (u0.size() != wander.size())
    throw WanderingMismatch("U0 domain has " + std::to_string(u0.size()) + " labels, wandering space has " +
                            std::to_string(wander.size()));
  std::vector<int> hit(rep.dim(), 0);
  for (const auto& [w, tgt] : u0) {
    if (w < 0 || w >= rep.dim() || !is_w[w])
      throw WanderingMismatch("U0 defined on non-wandering label");
    if (!is_w[tgt.first]) throw WanderingMismatch("U0 image not wandering");
    if (rep.label_vertex[tgt.first] != a.vperm(rep.label_vertex[w]))
      throw WanderingMismatch("U0 does not map S_v W to S_(1.v) W at label " +
                              rep.label_names[w]);
    hit[tgt.first]++;
  }
  for (int w : wander)
    if (hit[w] != 1) throw WanderingMismatch("U0 is not a bijection on the wandering labels");

  auto u0_pow = [&](int w, std::uint64_t k) {
    int cur = w;
    Phase ph = Phase::one();
    for (std::uint64_t i = 0; i < k; ++i) {
      const auto& [nxt, f] = u0.at(cur);
      ph = ph * f;
      cur = nxt;
    }
    return std::make_pair(cur, ph);
  };

  STraceTable trace = s_traceback(rep);
  for (int l = 0; l < rep.dim(); ++l)
    if (trace[l].kind != STrace::Kind::rooted)
      throw WrongType("S-part is not pure shift on the window at label " + rep.label_names[l]);

  for (int l = 0; l < rep.dim(); ++l) {
    const STrace& t = trace[l];
    Path mu;
    mu.edges = t.path;
    mu.base = rep.label_vertex[t.root];
    std::uint64_t k = a.restrict(1, mu);
    Path mu1 = a.act(1, mu);
    auto [w2, dphase] = u0_pow(t.root, k);
    // walk S along 1.mu starting from w2 (rightmost edge applied first)
    Atom cur = Atom::mapped(w2, Phase::one());
    for (auto it = mu1.edges.rbegin(); it != mu1.edges.rend() && cur.is_mapped(); ++it) {
      Atom nxt = rep.smap[*it][cur.label];
      if (!nxt.is_mapped()) {
        cur = nxt;
        break;
      }
      cur = Atom::mapped(nxt.label, nxt.phase * cur.phase);
    }
    if (!cur.is_mapped()) {
      rep.vmap[l] = Atom::boundary();
      continue;
    }
    rep.vmap[l] = Atom::mapped(cur.label, t.phase.conj() * dphase * cur.phase);
  }

  invert_vmap(rep, [&](int) { return Atom::boundary(); });
  rep.recompute_interior();
  rep.validate();
  return rep;
}

AtomicRep build_unitary_pure(const ActionPtr& a, int u, int alpha, const Phase& lambda,
                             int depth) {
  const Graph& g = a->graph();
  const auto& orb = a->orbits();
  int m = static_cast<int>(orb.m_v[u]);

  AtomicRep rep;
  rep.action = a;
  rep.window_depth = depth;

  LabelTable t;
  std::map<std::tuple<int, int, Path>, int> index;
  std::vector<std::tuple<int, int, Path>> data;
  for (int i = 1; i <= m; ++i) {
    int ui = a->act_vertex(i - 1, u);
    for (int j = 1; j <= alpha; ++j)
      for (int len = 0; len <= depth; ++len)
        for (auto& mu : enumerate_paths(g, ui, len)) {
          int id = t.add("xi[" + std::to_string(i) + "," + std::to_string(j) + ";" +
                             path_str(g, mu) + "]",
                         mu.rng(g));
          index[{i, j, mu}] = id;
          data.push_back({i, j, mu});
        }
  }
  init_tables(rep, t);

  for (int l = 0; l < rep.dim(); ++l) {
    const auto& [i, j, mu] = data[l];
    for (int e : g.edges_with_src(rep.label_vertex[l])) {
      if (mu.length() + 1 <= depth) {
        Path emu;
        emu.edges.push_back(e);
        emu.edges.insert(emu.edges.end(), mu.edges.begin(), mu.edges.end());
        emu.base = mu.base;
        rep.smap[e][l] = Atom::mapped(index.at({i, j, emu}));
      } else {
        rep.smap[e][l] = Atom::boundary();
      }
    }
  }
  invert_smap(rep, [](int) { return Atom::zero(); });
  rep.recompute_interior();

  // the wandering labels are xi[i,j;(u_i)]; U0 walks the m*alpha cycle and
  // picks up lambda at the wrap
  std::map<int, std::pair<int, Phase>> u0;
  auto wlabel = [&](int i, int j) { return index.at({i, j, Path::at_vertex(a->act_vertex(i - 1, u))}); };
  for (int j = 1; j <= alpha; ++j)
    for (int i = 1; i <= m; ++i) {
      int pos = (j - 1) * m + (i - 1);
      int nxt = (pos + 1) % (m * alpha);
      int i2 = nxt % m + 1, j2 = nxt / m + 1;
      Phase ph = (pos == m * alpha - 1) ? lambda : Phase::one();
      u0[wlabel(i, j)] = {wlabel(i2, j2), ph};
    }
  return extend_unitary_from_wandering(rep, u0);
}

AtomicRep build_c_lambda(const ActionPtr& a, int u, const Phase& lambda, int depth) {
  return build_unitary_pure(a, u, 1, lambda, depth);
}

// ---------------------------------------------------------------------------
// odometer CK builders

namespace {

// letters are 1-based; edge index = letter - 1 in factory_odometer graphs
struct OdoWord {
  std::vector<int> letters;  // range-first, like Path::edges
  bool all_of(int letter) const {
    for (int x : letters)
      if (x != letter) return false;
    return true;
  }
};

bool is_power_of_smaller_block(const std::vector<int>& w) {
  int L = static_cast<int>(w.size());
  for (int d = 1; d < L; ++d) {
    if (L % d != 0) continue;
    bool periodic = true;
    for (int i = 0; i < L; ++i)
      if (w[i] != w[i % d]) periodic = false;
    if (periodic) return true;
  }
  return false;
}

std::string letters_str(const std::vector<int>& letters) {
  std::string s;
  for (int x : letters) s += std::to_string(x);
  return s.empty() ? "-" : s;
}

// odometer step on a letter word: flip the leading run of n to 1 and bump the
// first non-n letter; defined only when some letter != n
std::vector<int> odo_step(const std::vector<int>& w, int n) {
  std::vector<int> out = w;
  for (auto& x : out) {
    if (x == n) {
      x = 1;
    } else {
      x += 1;
      break;
    }
  }
  return out;
}

std::vector<int> odo_step_back(const std::vector<int>& w, int n) {
  std::vector<int> out = w;
  for (auto& x : out) {
    if (x == 1) {
      x = n;
    } else {
      x -= 1;
      break;
    }
  }
  return out;
}

}  // namespace

AtomicRep build_inductive_ck(int n, const std::vector<int>& word_prefix, int depth) {
  if (n < 2) throw ValidationError("inductive builder requires n >= 2");
  for (int x : word_prefix)
    if (x < 1 || x > n) throw ValidationError("word letter out of range");
  if (word_prefix.empty()) throw ValidationError("empty word prefix");
  if (is_power_of_smaller_block(word_prefix))
    throw PeriodicWordRejected("word prefix " + letters_str(word_prefix) +
                               " is a repeated block");
  {
    bool has_non_n = false, has_non_1 = false;
    int scan = std::min<int>(depth + 1, static_cast<int>(word_prefix.size()));
    for (int i = 0; i < scan; ++i) {
      if (word_prefix[i] != n) has_non_n = true;
      if (word_prefix[i] != 1) has_non_1 = true;
    }
    if (!has_non_n || !has_non_1)
      throw ValidationError("word prefix needs a letter != n and a letter != 1 within the window");
  }

  ActionPtr a = factory_odometer(n);
  int L = static_cast<int>(word_prefix.size());
  auto w_at = [&](int k) { return word_prefix[k - 1]; };  // 1-based

  AtomicRep rep;
  rep.action = a;
  rep.window_depth = depth;

  // canonical labels: (k, mu) with k in 0..L and mu not ending with w_k
  LabelTable t;
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<std::pair<int, std::vector<int>>> data;
  auto canonical = [&](int k, std::vector<int> mu) {
    while (k >= 1 && !mu.empty() && mu.back() == w_at(k)) {
      mu.pop_back();
      --k;
    }
    return std::make_pair(k, std::move(mu));
  };
  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int x = 1; x <= n; ++x) {
          auto ww = w;
          ww.push_back(x);
          next.push_back(ww);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (int k = 0; k <= L; ++k)
    for (const auto& mu : words) {
      if (k >= 1 && !mu.empty() && mu.back() == w_at(k)) continue;
      int id = t.add("(k=" + std::to_string(k) + ";" + letters_str(mu) + ")", 0);
      index[{k, mu}] = id;
      data.push_back({k, mu});
    }
  init_tables(rep, t);

  auto find = [&](int k, const std::vector<int>& mu) -> Atom {
    if (static_cast<int>(mu.size()) > depth) return Atom::boundary();
    auto it = index.find({k, mu});
    if (it == index.end()) return Atom::boundary();
    return Atom::mapped(it->second);
  };

  for (int l = 0; l < rep.dim(); ++l) {
    const auto& [k, mu] = data[l];
    // S_i prepends the letter i
    for (int e = 0; e < n; ++e) {
      std::vector<int> emu;
      emu.push_back(e + 1);
      emu.insert(emu.end(), mu.begin(), mu.end());
      auto [k2, mu2] = canonical(k, std::move(emu));
      rep.smap[e][l] = find(k2, mu2);
    }
    // V: rewrite using the first letter != n in mu w_{k+1} w_{k+2} ...
    bool mu_all_n = true;
    for (int x : mu)
      if (x != n) mu_all_n = false;
    if (!mu_all_n) {
      auto [k2, mu2] = canonical(k, odo_step(mu, n));
      rep.vmap[l] = find(k2, mu2);
    } else {
      int s = k + 1;
      while (s <= L && w_at(s) == n) ++s;
      if (s > L) {
        rep.vmap[l] = Atom::boundary();
      } else {
        std::vector<int> target(mu.size() + (s - 1 - k), 1);
        target.push_back(w_at(s) + 1);
        auto [k2, mu2] = canonical(s, std::move(target));
        rep.vmap[l] = find(k2, mu2);
      }
    }
  }

  invert_vmap(rep, [](int) { return Atom::boundary(); });
  invert_smap(rep, [&](int l) {
    // only the deepest word label is hit from outside the window
    const auto& [k, mu] = data[l];
    return (k == L && mu.empty()) ? Atom::boundary() : Atom::zero();
  });
  rep.recompute_interior();
  rep.validate();
  return rep;
}

namespace {

// shared machinery for the cycle-type families: labels (i, mu) standing for
// S_mu zeta_i with mu not ending in the cycle letter at i; stripping a cycle
// letter advances i and picks up lambda at the wrap
struct CycleFamily {
  std::vector<int> word;  // cycle letters, 1-based
  Phase lambda;
  int n = 0;

  int letter(int i) const { return word[i]; }
  int L() const { return static_cast<int>(word.size()); }

  // returns (i', mu', phase)
  std::tuple<int, std::vector<int>, Phase> canonical(int i, std::vector<int> mu) const {
    Phase ph = Phase::one();
    while (!mu.empty() && mu.back() == letter(i)) {
      mu.pop_back();
      if (i == L() - 1) ph = ph * lambda;
      i = (i + 1) % L();
    }
    return {i, std::move(mu), ph};
  }
};

}  // namespace

AtomicRep build_cycle_ck(int n, const std::vector<int>& cycle_word, const Phase& lambda,
                         bool eta0_in_ran_v, int depth) {
  if (n < 2) throw ValidationError("cycle builder requires n >= 2");
  if (cycle_word.empty()) throw NonPrimitiveWord("empty cycle word");
  for (int x : cycle_word)
    if (x < 1 || x > n) throw ValidationError("cycle letter out of range");
  if (is_power_of_smaller_block(cycle_word))
    throw NonPrimitiveWord("cycle word " + letters_str(cycle_word) + " is a proper power");

  ActionPtr a = factory_odometer(n);
  AtomicRep rep;
  rep.action = a;
  rep.window_depth = depth;

  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= depth; ++len) {
    size_t before = words.size();
    for (size_t t0 = 0; t0 < before; ++t0)
      if (static_cast<int>(words[t0].size()) == len - 1)
        for (int x = 1; x <= n; ++x) {
          auto ww = words[t0];
          ww.push_back(x);
          words.push_back(ww);
        }
  }

  bool paired = (cycle_word.size() == 1 && cycle_word[0] == n) ||
                (cycle_word.size() == 1 && cycle_word[0] == 1 && eta0_in_ran_v);
  bool pure_branch = cycle_word.size() == 1 && cycle_word[0] == 1 && !eta0_in_ran_v;

  if (paired || pure_branch) {
    // families: X (1-cycle of n on xi_0) and Y (1-cycle of 1 on eta_0);
    // the pure branch keeps only Y
    CycleFamily fx{{n}, lambda, n};
    CycleFamily fy{{1}, lambda, n};

    LabelTable t;
    std::map<std::pair<int, std::vector<int>>, int> index;  // side: 0 = X, 1 = Y
    std::vector<std::pair<int, std::vector<int>>> data;
    auto add_side = [&](int side, int avoid) {
      for (const auto& mu : words) {
        if (!mu.empty() && mu.back() == avoid) continue;
        int id = t.add(std::string(side == 0 ? "xi[" : "eta[") + letters_str(mu) + "]", 0);
        index[{side, mu}] = id;
        data.push_back({side, mu});
      }
    };
    if (paired) add_side(0, n);
    add_side(1, 1);
    init_tables(rep, t);

    auto find = [&](int side, const std::vector<int>& mu, const Phase& ph) -> Atom {
      if (static_cast<int>(mu.size()) > depth) return Atom::boundary();
      return Atom::mapped(index.at({side, mu}), ph);
    };

    for (int l = 0; l < rep.dim(); ++l) {
      const auto& [side, mu] = data[l];
      const CycleFamily& fam = (side == 0) ? fx : fy;
      for (int e = 0; e < n; ++e) {
        std::vector<int> emu;
        emu.push_back(e + 1);
        emu.insert(emu.end(), mu.begin(), mu.end());
        auto [i2, mu2, ph] = fam.canonical(0, std::move(emu));
        (void)i2;
        rep.smap[e][l] = find(side, mu2, ph);
      }
      bool all_n = true;
      for (int x : mu)
        if (x != n) all_n = false;
      if (side == 0) {
        if (mu.empty()) {
          // V xi_0 = eta_0
          rep.vmap[l] = find(1, {}, Phase::one());
        } else {
          // mu does not end with n, so it has a letter != n
          auto [i2, mu2, ph] = fx.canonical(0, odo_step(mu, n));
          (void)i2;
          rep.vmap[l] = find(0, mu2, ph);
        }
      } else {
        if (!all_n) {
          auto [i2, mu2, ph] = fy.canonical(0, odo_step(mu, n));
          (void)i2;
          rep.vmap[l] = find(1, mu2, ph);
        } else {
          // eta = S_(n^t) eta_0 = conj(lambda) S_(n^t 1) eta_0
          std::vector<int> nu = mu;
          nu.push_back(1);
          std::vector<int> target(nu.size() - 1, 1);
          target.push_back(2);
          if (static_cast<int>(target.size()) > depth)
            rep.vmap[l] = Atom::boundary();
          else
            rep.vmap[l] = find(1, target, lambda.conj());
        }
      }
    }

    if (pure_branch) {
      int eta0 = index.at({1, {}});
      invert_vmap(rep, [&](int l) { return l == eta0 ? Atom::zero() : Atom::boundary(); });
    } else {
      invert_vmap(rep, [](int) { return Atom::boundary(); });
    }
    invert_smap(rep, [](int) { return Atom::zero(); });
    rep.recompute_interior();
    rep.validate();
    return rep;
  }

  // general primitive cycle of length >= 2 (or a single letter strictly
  // between 1 and n): the unique unitary from the inductive-type rewriting
  CycleFamily fam{cycle_word, lambda, n};
  int L = fam.L();

  LabelTable t;
  std::map<std::pair<int, std::vector<int>>, int> index;
  std::vector<std::pair<int, std::vector<int>>> data;
  for (int i = 0; i < L; ++i)
    for (const auto& mu : words) {
      if (!mu.empty() && mu.back() == fam.letter(i)) continue;
      int id = t.add("zeta[" + std::to_string(i) + ";" + letters_str(mu) + "]", 0);
      index[{i, mu}] = id;
      data.push_back({i, mu});
    }
  init_tables(rep, t);

  auto find = [&](int i, const std::vector<int>& mu, const Phase& ph) -> Atom {
    if (static_cast<int>(mu.size()) > depth) return Atom::boundary();
    return Atom::mapped(index.at({i, mu}), ph);
  };

  for (int l = 0; l < rep.dim(); ++l) {
    const auto& [i, mu] = data[l];
    for (int e = 0; e < n; ++e) {
      std::vector<int> emu;
      emu.push_back(e + 1);
      emu.insert(emu.end(), mu.begin(), mu.end());
      auto [i2, mu2, ph] = fam.canonical(i, std::move(emu));
      rep.smap[e][l] = find(i2, mu2, ph);
    }
    bool all_n = true;
    for (int x : mu)
      if (x != n) all_n = false;
    if (!all_n) {
      auto [i2, mu2, ph] = fam.canonical(i, odo_step(mu, n));
      rep.vmap[l] = find(i2, mu2, ph);
    } else {
      // extend backwards around the cycle until a letter != n enters
      int j = i;
      Phase acc = Phase::one();
      std::vector<int> nu = mu;
      while (true) {
        int prev = (j - 1 + L) % L;
        if (prev == L - 1) acc = acc * lambda.conj();
        nu.push_back(fam.letter(prev));
        j = prev;
        if (fam.letter(prev) != n) break;
      }
      auto stepped = odo_step(nu, n);
      auto [i2, mu2, ph] = fam.canonical(j, std::move(stepped));
      Atom res = find(i2, mu2, ph);
      if (res.is_mapped())
        rep.vmap[l] = Atom::mapped(res.label, acc * res.phase);
      else
        rep.vmap[l] = res;
    }
  }

  invert_vmap(rep, [](int) { return Atom::boundary(); });
  invert_smap(rep, [](int) { return Atom::zero(); });
  rep.recompute_interior();
  rep.validate();
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<UnitaryPureComponent> decompose_unitary_pure(const AtomicRep& rep) {
  const SelfSimilarAction& a = *rep.action;
  std::vector<int> wander = rep.wandering_labels();
  std::vector<bool> is_w(rep.dim(), false);
  for (int w : wander) is_w[w] = true;

  for (int w : wander) {
    const Atom& t = rep.vmap[w];
    if (!t.is_mapped() || !is_w[t.label])
      throw UnsupportedInfiniteMultiplicity(
          "V does not close into cycles on the wandering labels within the window");
  }

  std::vector<UnitaryPureComponent> out;
  std::vector<bool> done(rep.dim(), false);
  for (int start : wander) {
    if (done[start]) continue;
    // walk the V-cycle
    std::vector<int> cyc;
    std::vector<Phase> scale;  // gamma_t with V xi'_t = xi'_(t+1)
    Phase acc = Phase::one();
    int cur = start;
    while (true) {
      cyc.push_back(cur);
      scale.push_back(acc);
      done[cur] = true;
      const Atom& t = rep.vmap[cur];
      acc = acc * t.phase;
      cur = t.label;
      if (cur == start) break;
      if (done[cur])
        throw UnsupportedInfiniteMultiplicity("wandering V-orbit is not a simple cycle");
    }
    Phase lambda_total = acc;
    int v1 = rep.label_vertex[start];
    int m = static_cast<int>(a.orbits().m_v[v1]);
    int len = static_cast<int>(cyc.size());
    if (len % m != 0)
      throw WrongType("wandering V-cycle length is not a multiple of the vertex orbit size");
    int alpha = len / m;

    Phase beta = lambda_total.conj().principal_root(alpha);
    for (int k = 1; k <= alpha; ++k) {
      Phase omega = Phase::rotation(k, alpha);
      Phase bw = beta * omega;
      UnitaryPureComponent comp;
      comp.lambda = bw.conj();
      comp.vertex_orbit = a.orbits().vertex_orbit_of[v1];
      for (int j = 1; j <= alpha; ++j) {
        int pos = (j - 1) * m;
        comp.eta.push_back({cyc[pos], bw.pow(j - 1) * scale[pos]});
      }
      out.push_back(std::move(comp));
    }
  }

  std::sort(out.begin(), out.end(), [](const UnitaryPureComponent& x, const UnitaryPureComponent& y) {
    auto zx = x.lambda.value(), zy = y.lambda.value();
    if (std::abs(zx.real() - zy.real()) > 1e-12) return zx.real() < zy.real();
    return zx.imag() < zy.imag();
  });
  return out;
}

}  // namespace ssg
