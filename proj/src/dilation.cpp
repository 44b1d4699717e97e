#include "ssg/dilation.hpp"

#include <algorithm>

namespace ssg {

namespace {

int act_vertex_signed(const SelfSimilarAction& a, std::int64_t k, int v) {
  std::int64_t m = static_cast<std::int64_t>(a.orbits().m_v[v]);
  std::int64_t kk = ((k % m) + m) % m;
  return a.act_vertex(static_cast<std::uint64_t>(kk), v);
}

// V^t (t >= 0) or V*^(-t) (t < 0) applied to a label
Atom v_power(const AtomicRep& rep, std::int64_t t, int label) {
  Atom cur = Atom::mapped(label);
  std::int64_t steps = t >= 0 ? t : -t;
  for (std::int64_t i = 0; i < steps; ++i) {
    const Atom& step = (t >= 0) ? rep.vmap[cur.label] : rep.vstar[cur.label];
    if (!step.is_mapped()) return step;
    cur = Atom::mapped(step.label, step.phase * cur.phase);
  }
  return cur;
}

struct PureDilation {
  AtomicRep hat;
  std::vector<int> kernel;         // original labels spanning ker V*
  std::vector<int> kernel_pos;     // original label -> position in kernel, or -1
  VTraceTable traces;              // per original label
  int K = 0;

  int idx(int wpos, int k) const { return wpos * (2 * K + 1) + (k + K); }
  std::pair<int, int> unidx(int hat_label) const {
    return {hat_label / (2 * K + 1), hat_label % (2 * K + 1) - K};
  }
  // J e_l as a hat atom; boundary when the grid position falls outside [-K,K]
  Atom transport(int orig_label) const {
    const VTrace& t = traces[orig_label];
    if (t.kind != VTrace::Kind::kernel || t.steps > K) return Atom::boundary();
    return Atom::mapped(idx(kernel_pos[t.root], t.steps), t.phase.conj());
  }
};

PureDilation build_pure_dilation(const AtomicRep& rep, int K, int q_extra) {
  const SelfSimilarAction& a = *rep.action;
  const Graph& g = rep.graph();
  PureDilation out;
  out.K = K;
  out.kernel_pos.assign(rep.dim(), -1);
  for (int l = 0; l < rep.dim(); ++l)
    if (rep.vstar[l].is_zero()) {
      out.kernel_pos[l] = static_cast<int>(out.kernel.size());
      out.kernel.push_back(l);
    }
  if (out.kernel.empty()) throw WrongType("V has no wandering space on the window");
  out.traces = v_traceback(rep, rep.dim() + 1);
  for (int l = 0; l < rep.dim(); ++l)
    if (out.traces[l].kind == VTrace::Kind::cycle)
      throw WrongType("V has a unitary part on the window (cycle at label " +
                      rep.label_names[l] + ")");

  AtomicRep& hat = out.hat;
  hat.action = rep.action;
  hat.window_depth = std::max(rep.window_depth, K);
  int nw = static_cast<int>(out.kernel.size());
  int n = nw * (2 * K + 1);
  hat.label_names.resize(n);
  hat.label_vertex.resize(n);
  for (int wp = 0; wp < nw; ++wp)
    for (int k = -K; k <= K; ++k) {
      int id = out.idx(wp, k);
      hat.label_names[id] =
          "[" + rep.label_names[out.kernel[wp]] + "|" + std::to_string(k) + "]";
      hat.label_vertex[id] =
          act_vertex_signed(a, k, rep.label_vertex[out.kernel[wp]]);
    }
  hat.vmap.assign(n, Atom::boundary());
  hat.vstar.assign(n, Atom::boundary());
  int ne = g.num_edges();
  hat.smap.assign(ne, std::vector<Atom>(n, Atom::zero()));
  hat.sstar.assign(ne, std::vector<Atom>(n, Atom::zero()));

  for (int wp = 0; wp < nw; ++wp)
    for (int k = -K; k <= K; ++k) {
      int id = out.idx(wp, k);
      if (k < K) hat.vmap[id] = Atom::mapped(out.idx(wp, k + 1));
      if (k > -K) hat.vstar[id] = Atom::mapped(out.idx(wp, k - 1));

      int w = out.kernel[wp];
      for (int e = 0; e < ne; ++e) {
        if (hat.label_vertex[id] != g.edge_src(e)) continue;  // stays zero
        Intertwiner it = a.find_intertwiner(e, -static_cast<std::int64_t>(k));
        std::uint64_t q = it.q + static_cast<std::uint64_t>(q_extra) * a.orbits().m_e[e];
        std::uint64_t p = a.restrict_edge(q, e);
        int f = a.act_edge(q, e);
        // S_e (w ox e_k) = (V^q)^* J( S_f V^(p+k) w )
        std::int64_t pk = static_cast<std::int64_t>(p) + k;
        Atom x = v_power(rep, pk, w);
        if (!x.is_mapped()) {
          hat.smap[e][id] = Atom::boundary();
          continue;
        }
        Atom y = rep.smap[f][x.label];
        if (!y.is_mapped()) {
          hat.smap[e][id] = y.is_zero() ? Atom::zero() : Atom::boundary();
          continue;
        }
        const VTrace& t = out.traces[y.label];
        if (t.kind != VTrace::Kind::kernel) {
          hat.smap[e][id] = Atom::boundary();
          continue;
        }
        std::int64_t k2 = static_cast<std::int64_t>(t.steps) - static_cast<std::int64_t>(q);
        if (k2 < -K || k2 > K) {
          hat.smap[e][id] = Atom::boundary();
          continue;
        }
        hat.smap[e][id] = Atom::mapped(out.idx(out.kernel_pos[t.root], static_cast<int>(k2)),
                                       x.phase * y.phase * t.phase.conj());
      }
    }

  // invert the S-maps; unhit labels are genuinely wandering exactly when they
  // carry an original label that is wandering in the input window
  {
    std::vector<bool> hit(n, false);
    for (int e = 0; e < ne; ++e)
      for (int l = 0; l < n; ++l)
        if (hat.smap[e][l].is_mapped()) {
          hat.sstar[e][hat.smap[e][l].label] =
              Atom::mapped(l, hat.smap[e][l].phase.conj());
          hit[hat.smap[e][l].label] = true;
        }
    for (int l = 0; l < n; ++l) {
      if (hit[l]) continue;
      auto [wp, k] = out.unidx(l);
      bool genuinely_wandering = false;
      if (k >= 0) {
        Atom y = v_power(rep, k, out.kernel[wp]);
        if (y.is_mapped()) {
          bool unhit = true;
          for (int e = 0; e < ne; ++e)
            if (!rep.sstar[e][y.label].is_zero()) unhit = false;
          genuinely_wandering = unhit;
        }
      }
      if (!genuinely_wandering)
        for (int e = 0; e < ne; ++e) hat.sstar[e][l] = Atom::boundary();
    }
  }

  hat.recompute_interior();
  hat.validate();
  return out;
}

Gen adjoint_of(const Gen& g) {
  switch (g.kind) {
    case Gen::Kind::V: return Gen::Vstar();
    case Gen::Kind::Vstar: return Gen::V();
    case Gen::Kind::S: return Gen::Sstar(g.id);
    case Gen::Kind::Sstar: return Gen::S(g.id);
    case Gen::Kind::P: return g;
  }
  return g;
}

// Compression identities are asserted for elements of the non-selfadjoint
// algebra (words in V and the S_e), their adjoints, and A* B combinations;
// these are exactly the forms a dilation must preserve. Words with an adjoint
// between analytic factors may leak through the complement by design.
std::vector<GenWord> compression_words(int ne, int maxlen) {
  GenWord analytic{Gen::V()};
  for (int e = 0; e < ne; ++e) analytic.push_back(Gen::S(e));
  std::vector<GenWord> words;
  std::vector<GenWord> level{{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<GenWord> next;
    for (const auto& w : level)
      for (const auto& g : analytic) {
        GenWord w2 = w;
        w2.push_back(g);
        next.push_back(w2);
      }
    words.insert(words.end(), next.begin(), next.end());
    level = std::move(next);
  }
  size_t analytic_count = words.size();
  for (size_t i = 0; i < analytic_count; ++i) {
    GenWord adj;
    for (auto it = words[i].rbegin(); it != words[i].rend(); ++it)
      adj.push_back(adjoint_of(*it));
    words.push_back(adj);
  }
  for (const auto& x : analytic)
    for (const auto& y : analytic) words.push_back({adjoint_of(x), y});
  return words;
}

double atom_mismatch(const Atom& x, const Atom& y) {
  if (x.is_zero() && y.is_zero()) return 0.0;
  if (x.is_mapped() && y.is_mapped()) {
    if (x.label != y.label) return std::sqrt(2.0);
    return std::abs(x.phase.value() - y.phase.value());
  }
  return 1.0;
}

}  // namespace

AtomicRep dilate_atomic_pure(const AtomicRep& rep) {
  bool has_kernel = false;
  for (int l = 0; l < rep.dim(); ++l)
    if (rep.vstar[l].is_zero()) has_kernel = true;
  if (!has_kernel) return rep;  // nothing to extend
  return build_pure_dilation(rep, rep.window_depth, 0).hat;
}

AtomicRep dilate_atomic_pure_with(const AtomicRep& rep, int K, int q_extra) {
  return build_pure_dilation(rep, K, q_extra).hat;
}

DilationResult dilate_pure_case(const MatrixRep& rep, int K) {
  if (!rep.atoms)
    throw UnsupportedRepStructure("pure-case dilation needs the structural label maps");
  const AtomicRep& at = *rep.atoms;
  if (!at.action->check_assumption_A())
    throw AssumptionAViolated("some edge orbit has identically zero restriction");

  PureDilation pd = build_pure_dilation(at, K, 0);
  DilationResult out;
  out.tag = "pure-case-Z";
  out.big = from_atomic(pd.hat);

  // embedding on the reachable original labels
  for (int l = 0; l < at.dim(); ++l)
    if (pd.transport(l).is_mapped()) out.embed_domain.push_back(l);
  out.embed = Eigen::MatrixXcd::Zero(out.big.dim(), static_cast<int>(out.embed_domain.size()));
  for (size_t c = 0; c < out.embed_domain.size(); ++c) {
    Atom t = pd.transport(out.embed_domain[c]);
    out.embed(t.label, static_cast<int>(c)) = t.phase.value();
  }
  out.embed_isometry_dev =
      (out.embed.adjoint() * out.embed -
       Eigen::MatrixXcd::Identity(out.embed.cols(), out.embed.cols()))
          .cwiseAbs()
          .maxCoeff();

  // the embedded copy of the original space occupies the nonnegative half of
  // the grid
  int n = out.big.dim();
  out.subspace_projection = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < n; ++l)
    if (pd.unidx(l).second >= 0) out.subspace_projection(l, l) = 1.0;

  // compression identities word by word, phase-exact through the transport:
  // J(W e_l) must equal the projection of W^(J e_l) back to the grid half
  // carrying the original space
  int ne = at.graph().num_edges();
  for (const GenWord& w : compression_words(ne, 3)) {
    for (int l : out.embed_domain) {
      Atom lhs0 = at.apply_word(w, l);
      Atom dom = pd.transport(l);
      Atom rhs = pd.hat.apply_word(w, dom.label);
      if (lhs0.is_boundary() || rhs.is_boundary()) continue;
      Atom lhs = Atom::zero();
      if (lhs0.is_mapped()) {
        Atom tl = pd.transport(lhs0.label);
        if (!tl.is_mapped()) continue;
        lhs = Atom::mapped(tl.label, lhs0.phase * tl.phase);
      }
      if (rhs.is_mapped()) {
        if (pd.unidx(rhs.label).second < 0)
          rhs = Atom::zero();  // killed by the compression
        else
          rhs = Atom::mapped(rhs.label, dom.phase * rhs.phase);
      }
      ++out.compression_checks;
      out.compression_max_dev = std::max(out.compression_max_dev, atom_mismatch(lhs, rhs));
    }
  }

  RelationReport in_rel = verify_relations(at, 1);
  RelationReport out_rel = verify_relations(pd.hat, 1);
  out.input_ck = in_rel.ck_on_interior;
  out.output_ck_on_interior = out_rel.ck_on_interior;

  out.offcorner_norm = offcorner_norm(out);
  out.nontrivial = out.offcorner_norm >= 0.05;
  out.notes.push_back("grid [-" + std::to_string(K) + "," + std::to_string(K) + "], wandering dim " +
                      std::to_string(pd.kernel.size()));
  return out;
}

DilationResult dilate_unitary_pure(const AtomicRep& rep, int e0) {
  const SelfSimilarAction& a = *rep.action;
  const Graph& g = rep.graph();
  int ne = g.num_edges();

  STraceTable st = s_traceback(rep);
  for (int l = 0; l < rep.dim(); ++l)
    if (st[l].kind != STrace::Kind::rooted)
      throw WrongType("S-part is not pure shift on the window");
  for (int l = 0; l < rep.dim(); ++l)
    if (!rep.vmap[l].is_mapped() || !rep.vstar[l].is_mapped())
      throw WrongType("V is not unitary on the window");

  std::vector<int> wander = rep.wandering_labels();
  int vorb = a.orbits().vertex_orbit_of[g.edge_src(e0)];
  for (int w : wander)
    if (a.orbits().vertex_orbit_of[rep.label_vertex[w]] != vorb)
      throw WrongType("wandering vertices do not lie in the orbit of src(" + g.edge_id(e0) + ")");

  int q = static_cast<int>(a.orbits().m_e[e0]);
  int m = static_cast<int>(a.orbits().m_v[g.edge_src(e0)]);
  std::uint64_t M = a.big_M(e0);

  // rotate the orbit enumeration so the restriction on the last edge is nonzero
  int r = -1;
  for (int cand = 0; cand < q; ++cand)
    if (a.rho(a.act_edge((cand + q - 1) % q, e0)) != 0) {
      r = cand;
      break;
    }
  if (r < 0) throw AssumptionAViolated("orbit of " + g.edge_id(e0) + " has zero restriction");
  int e0r = a.act_edge(r, e0);

  // position of rng(e0) inside the vertex orbit, counted from src(e0); for a
  // loop this is 0 and the embedding exponent below reduces to j|_(e0) - j.
  // For non-loop orbits the exponent keeps the embedded copy of each W_(v_i)
  // at vertex v_i, which is what the S_mu-extension of J needs.
  int coff = -1;
  for (int k = 0; k < m; ++k)
    if (a.act_vertex(static_cast<std::uint64_t>(k), g.edge_src(e0r)) == g.edge_rng(e0r)) {
      coff = k;
      break;
    }
  if (coff < 0)
    throw WrongType("rng(" + g.edge_id(e0) + ") lies outside the vertex orbit of src");

  // shift part on the fiber: labels (l, j), S = S ox I
  int nl = rep.dim();
  int Mi = static_cast<int>(M);
  auto idx = [&](int l, int j) { return l * Mi + j; };
  AtomicRep shift;
  shift.action = rep.action;
  shift.window_depth = rep.window_depth;
  int n = nl * Mi;
  shift.label_names.resize(n);
  shift.label_vertex.resize(n);
  for (int l = 0; l < nl; ++l)
    for (int j = 0; j < Mi; ++j) {
      shift.label_names[idx(l, j)] = rep.label_names[l] + "&w" + std::to_string(j);
      shift.label_vertex[idx(l, j)] = rep.label_vertex[l];
    }
  shift.vmap.assign(n, Atom::zero());
  shift.vstar.assign(n, Atom::zero());
  shift.smap.assign(ne, std::vector<Atom>(n, Atom::zero()));
  shift.sstar.assign(ne, std::vector<Atom>(n, Atom::zero()));
  for (int e = 0; e < ne; ++e)
    for (int l = 0; l < nl; ++l)
      for (int j = 0; j < Mi; ++j) {
        const Atom& s = rep.smap[e][l];
        shift.smap[e][idx(l, j)] =
            s.is_mapped() ? Atom::mapped(idx(s.label, j), s.phase) : s;
        const Atom& s2 = rep.sstar[e][l];
        shift.sstar[e][idx(l, j)] =
            s2.is_mapped() ? Atom::mapped(idx(s2.label, j), s2.phase) : s2;
      }
  shift.recompute_interior();

  // U0 on the fiber wandering space: shift the fiber with U, wrap with
  // U^{-(M-q-1)}
  std::map<int, std::pair<int, Phase>> u0;
  std::int64_t wrap_exp = -(static_cast<std::int64_t>(M) - q - 1);
  for (int w : wander) {
    for (int j = 0; j + 1 < Mi; ++j) {
      const Atom& s = rep.vmap[w];
      u0[idx(w, j)] = {idx(s.label, j + 1), s.phase};
    }
    Atom s = v_power(rep, wrap_exp, w);
    u0[idx(w, Mi - 1)] = {idx(s.label, 0), s.phase};
  }

  AtomicRep hat = extend_unitary_from_wandering(shift, u0);

  DilationResult out;
  out.tag = "unitary-pure-M";
  out.big = from_atomic(hat);

  // J on the wandering space, then extended over the shift structure
  double nf = 1.0 / std::sqrt(static_cast<double>(q) / static_cast<double>(m));
  std::map<int, std::vector<std::pair<int, std::complex<double>>>> jcol;
  for (int w : wander) {
    std::vector<std::pair<int, std::complex<double>>> col;
    for (int j = 0; j < q; ++j) {
      int ej = a.act_edge(static_cast<std::uint64_t>(j), e0r);
      std::uint64_t je = a.restrict_edge(static_cast<std::uint64_t>(j), e0r);
      std::int64_t texp = static_cast<std::int64_t>(je) - j - coff;
      Atom x = v_power(rep, texp, w);
      Atom y = rep.smap[ej][x.label];
      if (y.is_zero()) continue;  // inactive summand: wrong vertex component
      if (!y.is_mapped()) throw InteriorTooSmall("window depth < 1 for the embedding");
      col.push_back({idx(y.label, static_cast<int>(je)),
                     nf * (x.phase * y.phase).value()});
    }
    jcol[w] = std::move(col);
  }

  std::vector<std::vector<std::pair<int, std::complex<double>>>> cols;
  for (int l = 0; l < nl; ++l) {
    const STrace& t = st[l];
    std::vector<std::pair<int, std::complex<double>>> col;
    bool ok = true;
    for (const auto& [hl, coef] : jcol[t.root]) {
      Atom cur = Atom::mapped(hl);
      for (auto it = t.path.rbegin(); it != t.path.rend() && cur.is_mapped(); ++it) {
        Atom nx = hat.smap[*it][cur.label];
        if (!nx.is_mapped()) {
          cur = nx;
          break;
        }
        cur = Atom::mapped(nx.label, nx.phase * cur.phase);
      }
      if (!cur.is_mapped()) {
        ok = false;
        break;
      }
      col.push_back({cur.label, t.phase.conj().value() * cur.phase.value() * coef});
    }
    if (ok) {
      out.embed_domain.push_back(l);
      cols.push_back(std::move(col));
    }
  }
  out.embed = Eigen::MatrixXcd::Zero(out.big.dim(), static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [hl, coef] : cols[c]) out.embed(hl, static_cast<int>(c)) = coef;
  out.embed_isometry_dev =
      (out.embed.adjoint() * out.embed -
       Eigen::MatrixXcd::Identity(out.embed.cols(), out.embed.cols()))
          .cwiseAbs()
          .maxCoeff();
  out.subspace_projection = out.embed * out.embed.adjoint();

  // compression identities, numerically: J^* (word)^ J = word, column by
  // column over embedded labels with enough margin on both sides
  MatrixRep orig = from_atomic(rep);
  for (const GenWord& w : compression_words(ne, 3)) {
    int margin = orig.word_margin(w) + 1;
    std::vector<int> cols_embed;
    for (size_t c = 0; c < out.embed_domain.size(); ++c)
      if (rep.is_interior(out.embed_domain[c], margin)) cols_embed.push_back(static_cast<int>(c));
    if (cols_embed.empty()) continue;
    Eigen::MatrixXcd block(out.big.dim(), static_cast<int>(cols_embed.size()));
    for (size_t i = 0; i < cols_embed.size(); ++i) block.col(i) = out.embed.col(cols_embed[i]);
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      block = out.big.gen_matrix(*it) * block;
    Eigen::MatrixXcd comp = out.embed.adjoint() * block;  // |domain| x cols
    std::vector<int> orig_cols;
    for (int i : cols_embed) orig_cols.push_back(out.embed_domain[i]);
    Eigen::MatrixXcd expect = orig.eval_on_cols(w, orig_cols);  // n_orig x cols
    for (size_t i = 0; i < cols_embed.size(); ++i) {
      Eigen::VectorXcd cr(out.embed.cols());
      for (size_t c2 = 0; c2 < out.embed_domain.size(); ++c2)
        cr(static_cast<int>(c2)) = expect(out.embed_domain[c2], static_cast<int>(i));
      double d = (comp.col(i) - cr).norm();
      ++out.compression_checks;
      out.compression_max_dev = std::max(out.compression_max_dev, d);
    }
  }

  out.input_ck = false;
  out.output_ck_on_interior = verify_relations(hat, 1).ck_on_interior;
  out.offcorner_norm = offcorner_norm(out);
  out.nontrivial = out.offcorner_norm >= 0.05;
  out.notes.push_back("fiber dim M=" + std::to_string(M) + ", orbit rotation r=" +
                      std::to_string(r) + ", q=" + std::to_string(q) + ", m=" + std::to_string(m));
  return out;
}

DilationResult dilate_unitary_pure(const MatrixRep& rep, int e0) {
  if (!rep.atoms)
    throw UnsupportedRepStructure("unitary-pure dilation needs the structural label maps");
  return dilate_unitary_pure(*rep.atoms, e0);
}

double offcorner_norm(const DilationResult& d) {
  int n = d.big.dim();
  Eigen::MatrixXcd P = d.subspace_projection;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(n, n) - P;
  Eigen::MatrixXcd Pi = d.big.interior_projection(1);
  double worst = 0.0;
  std::vector<Eigen::MatrixXcd> gens{d.big.V, d.big.V.adjoint()};
  for (const auto& s : d.big.S) {
    gens.push_back(s);
    gens.push_back(s.adjoint());
  }
  for (const auto& G : gens) {
    worst = std::max(worst, operator_norm(Pi * (Q * G * P) * Pi));
    worst = std::max(worst, operator_norm(Pi * (P * G * Q) * Pi));
  }
  return worst;
}

bool check_trivial(const DilationResult& d, double tol) {
  // Frobenius norm dominates the operator norm, so small here is conclusive
  int n = d.big.dim();
  Eigen::MatrixXcd P = d.subspace_projection;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(n, n) - P;
  Eigen::MatrixXcd Pi = d.big.interior_projection(1);
  std::vector<Eigen::MatrixXcd> gens{d.big.V, d.big.V.adjoint()};
  for (const auto& s : d.big.S) {
    gens.push_back(s);
    gens.push_back(s.adjoint());
  }
  for (const auto& G : gens) {
    if ((Pi * (Q * G * P) * Pi).norm() > tol) return false;
    if ((Pi * (P * G * Q) * Pi).norm() > tol) return false;
  }
  return true;
}

DilationResult direct_sum_dilation(const MatrixRep& rep, const MatrixRep& other) {
  if (!(rep.graph() == other.graph()))
    throw ValidationError("direct sum requires representations over the same graph");
  DilationResult out;
  out.tag = "direct-sum";
  int n1 = rep.dim(), n2 = other.dim();
  int n = n1 + n2;
  MatrixRep big;
  big.action = rep.action;
  big.window_depth = std::min(rep.window_depth, other.window_depth);
  big.v_margin_free = rep.v_margin_free && other.v_margin_free;
  big.labels = rep.labels;
  for (const auto& s : other.labels) big.labels.push_back("sum2:" + s);
  big.label_vertex = rep.label_vertex;
  big.label_vertex.insert(big.label_vertex.end(), other.label_vertex.begin(),
                          other.label_vertex.end());
  big.interior_depth = rep.interior_depth;
  big.interior_depth.insert(big.interior_depth.end(), other.interior_depth.begin(),
                            other.interior_depth.end());
  big.V = Eigen::MatrixXcd::Zero(n, n);
  big.V.topLeftCorner(n1, n1) = rep.V;
  big.V.bottomRightCorner(n2, n2) = other.V;
  for (int e = 0; e < rep.graph().num_edges(); ++e) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    s.topLeftCorner(n1, n1) = rep.S[e];
    s.bottomRightCorner(n2, n2) = other.S[e];
    big.S.push_back(std::move(s));
  }
  out.big = std::move(big);
  out.embed = Eigen::MatrixXcd::Zero(n, n1);
  out.embed.topLeftCorner(n1, n1) = Eigen::MatrixXcd::Identity(n1, n1);
  for (int l = 0; l < n1; ++l) out.embed_domain.push_back(l);
  out.subspace_projection = out.embed * out.embed.adjoint();
  out.embed_isometry_dev = 0.0;
  out.offcorner_norm = offcorner_norm(out);
  out.nontrivial = out.offcorner_norm >= 0.05;
  return out;
}

}  // namespace ssg
