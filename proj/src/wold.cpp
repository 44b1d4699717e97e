#include "ssg/wold.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <numeric>

namespace ssg {

std::string wold_type_name(WoldType t) {
  switch (t) {
    case WoldType::unitary_ck: return "unitary+CK";
    case WoldType::pure_ck: return "pure+CK";
    case WoldType::unitary_pure_shift: return "unitary+pure-shift";
    case WoldType::left_regular: return "left-regular";
    case WoldType::inconclusive: return "inconclusive";
  }
  return "?";
}

Eigen::MatrixXcd wandering_projection(const MatrixRep& rep, int v) {
  Eigen::MatrixXcd w = rep.P(v);
  for (int e : rep.graph().edges_with_rng(v)) w -= rep.S[e] * rep.S[e].adjoint();
  return w;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> v_split(const MatrixRep& rep, int n_max) {
  int n = rep.dim();
  if (rep.interior_cols(rep.v_margin_free ? 1 : n_max).empty())
    throw InteriorTooSmall("v_split: no interior columns at margin " + std::to_string(n_max));
  // ran V^k is decreasing, so the intersection up to n_max is ran V^(n_max)
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < n_max; ++i) G = rep.V * G;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(G);
  qr.setThreshold(0.5);
  int r = static_cast<int>(qr.rank());
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd range = Q.leftCols(r);
  Eigen::MatrixXcd p_u = range * range.adjoint();

  Eigen::MatrixXcd ker = Eigen::MatrixXcd::Identity(n, n) - rep.V * rep.V.adjoint();
  Eigen::MatrixXcd p_s = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd vk = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < n_max; ++i) {
    p_s += vk * ker * vk.adjoint();
    vk = rep.V * vk;
  }
  return {p_u, p_s};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

WoldReport classify(const AtomicRep& rep) {
  WoldReport out;
  const Graph& g = rep.graph();
  int n = rep.dim();
  out.comp_of.assign(n, -1);

  STraceTable st = s_traceback(rep);
  VTraceTable vt = v_traceback(rep, n + 1);

  RelationReport rel = verify_relations(rep, 1);
  bool ck_interior = rel.ck_on_interior;

  UnionFind uf(n);
  for (int l = 0; l < n; ++l) {
    if (rep.vmap[l].is_mapped()) uf.unite(l, rep.vmap[l].label);
    for (int e = 0; e < g.num_edges(); ++e)
      if (rep.smap[e][l].is_mapped()) uf.unite(l, rep.smap[e][l].label);
  }

  std::map<int, std::vector<int>> groups;
  for (int l = 0; l < n; ++l) groups[uf.find(l)].push_back(l);

  for (int v = 0; v < g.num_vertices(); ++v) out.wandering_dim[g.vertex_id(v)] = 0;
  for (int w : rep.wandering_labels()) out.wandering_dim[g.vertex_id(rep.label_vertex[w])]++;

  for (auto& [root, labels] : groups) {
    WoldComponent comp;
    comp.labels = labels;
    comp.dim_window = static_cast<int>(labels.size());
    for (int l : labels)
      if (rep.is_interior(l, 1)) comp.dim_interior++;

    bool s_rooted = false, s_cycle = false, s_boundary = false;
    bool v_kernel = false, v_cycle = false, v_boundary = false;
    for (int l : labels) {
      switch (st[l].kind) {
        case STrace::Kind::rooted: s_rooted = true; break;
        case STrace::Kind::cycle: s_cycle = true; break;
        case STrace::Kind::boundary: s_boundary = true; break;
      }
      switch (vt[l].kind) {
        case VTrace::Kind::kernel: v_kernel = true; break;
        case VTrace::Kind::cycle: v_cycle = true; break;
        case VTrace::Kind::boundary: v_boundary = true; break;
      }
    }

    // S side: wandering-rooted labels form the shift part; cycles or
    // window-exiting tracebacks sit on the CK side provided CK holds where
    // visible
    enum { SHIFT, CK, UNK } s_side;
    if (s_rooted && !s_cycle && !s_boundary)
      s_side = SHIFT;
    else if (!s_rooted && (s_cycle || s_boundary))
      s_side = (s_cycle || ck_interior) ? CK : UNK;
    else
      s_side = UNK;

    enum { UNITARY, PURE, VUNK } v_side;
    if (v_kernel && !v_cycle)
      v_side = PURE;
    else if (!v_kernel && (v_cycle || v_boundary))
      v_side = UNITARY;
    else
      v_side = VUNK;

    if (s_side == UNK || v_side == VUNK) {
      comp.type = WoldType::inconclusive;
      out.inconclusive = true;
      comp.evidence = "mixed traceback evidence";
    } else if (s_side == CK && v_side == UNITARY) {
      comp.type = WoldType::unitary_ck;
      comp.evidence = v_cycle && !v_boundary ? "cycles" : "window-boundary";
    } else if (s_side == CK && v_side == PURE) {
      comp.type = WoldType::pure_ck;
      comp.evidence = "kernel";
    } else if (s_side == SHIFT && v_side == UNITARY) {
      comp.type = WoldType::unitary_pure_shift;
      comp.evidence = v_cycle && !v_boundary ? "cycles" : "window-boundary";
    } else {
      comp.type = WoldType::left_regular;
      comp.evidence = "kernel";
    }

    if (s_side == SHIFT) {
      // attach to the orbit of the wandering roots
      for (int l : labels)
        if (st[l].kind == STrace::Kind::rooted) {
          comp.vertex_orbit = rep.action->orbits().vertex_orbit_of[rep.label_vertex[st[l].root]];
          break;
        }
      // multiplicity: wandering labels per orbit vertex for the unitary case,
      // kernel wandering vectors for the left-regular case
      std::vector<int> wl;
      for (int l : labels) {
        bool unhit = true;
        for (int e = 0; e < g.num_edges(); ++e)
          if (!rep.sstar[e][l].is_zero()) unhit = false;
        if (unhit) wl.push_back(l);
      }
      if (comp.type == WoldType::left_regular) {
        int a = 0;
        for (int l : wl)
          if (rep.vstar[l].is_zero()) ++a;
        comp.alpha = a;
      } else if (comp.vertex_orbit >= 0) {
        int m = static_cast<int>(
            rep.action->orbits().vertex_orbits[comp.vertex_orbit].size());
        comp.alpha = static_cast<int>(wl.size()) / m;
      }
    }

    out.components.push_back(std::move(comp));
  }

  // stable order: by smallest label
  std::sort(out.components.begin(), out.components.end(),
            [](const WoldComponent& a, const WoldComponent& b) {
              return a.labels.front() < b.labels.front();
            });
  for (size_t c = 0; c < out.components.size(); ++c)
    for (int l : out.components[c].labels) out.comp_of[l] = static_cast<int>(c);

  for (int l = 0; l < n; ++l) {
    if (!rep.is_interior(l, 1)) continue;
    out.dim_interior++;
    if (st[l].kind != STrace::Kind::rooted) out.dim_hc_interior++;
    if (vt[l].kind == VTrace::Kind::kernel)
      out.dim_hs_interior++;
    else
      out.dim_hu_interior++;
  }
  return out;
}

WoldReport classify(const MatrixRep& rep, int n_max) {
  WoldReport out;
  const Graph& g = rep.graph();
  int n = rep.dim();
  out.comp_of.assign(n, -1);

  Eigen::MatrixXcd pint = rep.interior_projection(1);
  int dim_int = static_cast<int>(std::lround(pint.real().trace()));
  out.dim_interior = dim_int;

  // H_C approximated by the range of sum_{|mu| = d} S_mu S_mu^*
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(n, n);
  for (int d = 0; d < n_max; ++d) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(n, n);
    for (int e = 0; e < g.num_edges(); ++e) next += rep.S[e] * q * rep.S[e].adjoint();
    q = next;
  }
  auto [p_u, p_s] = v_split(rep, n_max);

  auto interior_trace = [&](const Eigen::MatrixXcd& p) {
    return (pint * p * pint).real().trace();
  };
  auto margin_of = [&](const Eigen::MatrixXcd& p) {
    Eigen::MatrixXcd h = (p + p.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    double worst = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      double x = es.eigenvalues()(i);
      worst = std::max(worst, std::min(std::abs(x), std::abs(1.0 - x)));
    }
    return worst;
  };

  double hc = interior_trace(q);
  double hu = interior_trace(p_u);
  double hs = interior_trace(p_s);
  out.dim_hc_interior = static_cast<int>(std::lround(hc));
  out.dim_hu_interior = static_cast<int>(std::lround(hu));
  out.dim_hs_interior = static_cast<int>(std::lround(hs));
  out.notes.push_back("projection margins: hc=" + std::to_string(margin_of(q)) +
                      " hu=" + std::to_string(margin_of(p_u)) +
                      " hs=" + std::to_string(margin_of(p_s)));

  for (int v = 0; v < g.num_vertices(); ++v) {
    Eigen::MatrixXcd w = wandering_projection(rep, v);
    out.wandering_dim[g.vertex_id(v)] =
        static_cast<int>(std::lround((pint * w * pint).real().trace()));
  }

  // four block dimensions
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  struct Block {
    WoldType t;
    Eigen::MatrixXcd p;
  };
  std::vector<Block> blocks{{WoldType::unitary_ck, q * p_u},
                            {WoldType::pure_ck, q * p_s},
                            {WoldType::unitary_pure_shift, (I - q) * p_u},
                            {WoldType::left_regular, (I - q) * p_s}};
  for (auto& b : blocks) {
    int d = static_cast<int>(std::lround(interior_trace(b.p)));
    if (d <= 0) continue;
    WoldComponent comp;
    comp.type = b.t;
    comp.dim_interior = d;
    comp.dim_window = static_cast<int>(std::lround(b.p.real().trace()));
    comp.evidence = "numeric";
    out.components.push_back(std::move(comp));
  }
  return out;
}

}  // namespace ssg
