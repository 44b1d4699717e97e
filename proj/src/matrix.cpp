#include "ssg/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ssg {

Eigen::MatrixXcd MatrixRep::P(int v) const {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int l = 0; l < dim(); ++l)
    if (label_vertex[l] == v) p(l, l) = 1.0;
  return p;
}

Eigen::MatrixXcd MatrixRep::gen_matrix(const Gen& g) const {
  switch (g.kind) {
    case Gen::Kind::V:
      return V;
    case Gen::Kind::Vstar:
      return V.adjoint();
    case Gen::Kind::S:
      return S[g.id];
    case Gen::Kind::Sstar:
      return S[g.id].adjoint();
    case Gen::Kind::P:
      return P(g.id);
  }
  return Eigen::MatrixXcd::Zero(dim(), dim());
}

Eigen::MatrixXcd MatrixRep::eval(const GenWord& w) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim(), dim());
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = gen_matrix(*it) * acc;
  return acc;
}

Eigen::MatrixXcd MatrixRep::eval_on_cols(const GenWord& w, const std::vector<int>& cols) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim(), static_cast<int>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) acc(cols[i], static_cast<int>(i)) = 1.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->kind) {
      case Gen::Kind::V:
        acc = V * acc;
        break;
      case Gen::Kind::Vstar:
        acc = V.adjoint() * acc;
        break;
      case Gen::Kind::S:
        acc = S[it->id] * acc;
        break;
      case Gen::Kind::Sstar:
        acc = S[it->id].adjoint() * acc;
        break;
      case Gen::Kind::P:
        for (int l = 0; l < dim(); ++l)
          if (label_vertex[l] != it->id) acc.row(l).setZero();
        break;
    }
  }
  return acc;
}

int MatrixRep::word_margin(const GenWord& w) const {
  int m = 0;
  for (const auto& g : w) {
    switch (g.kind) {
      case Gen::Kind::V:
      case Gen::Kind::Vstar:
        if (!v_margin_free) ++m;
        break;
      case Gen::Kind::S:
      case Gen::Kind::Sstar:
        ++m;
        break;
      case Gen::Kind::P:
        break;
    }
  }
  return m;
}

std::vector<int> MatrixRep::interior_cols(int margin) const {
  std::vector<int> out;
  for (int l = 0; l < dim(); ++l)
    if (interior_depth[l] >= margin) out.push_back(l);
  return out;
}

Eigen::MatrixXcd MatrixRep::interior_projection(int margin) const {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int l = 0; l < dim(); ++l)
    if (interior_depth[l] >= margin) p(l, l) = 1.0;
  return p;
}

MatrixRep from_atomic(const AtomicRep& rep) {
  MatrixRep m;
  m.action = rep.action;
  m.window_depth = rep.window_depth;
  m.labels = rep.label_names;
  m.label_vertex = rep.label_vertex;
  m.interior_depth = rep.interior_depth;
  m.v_margin_free = rep.v_total();
  int n = rep.dim();
  m.V = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < n; ++l)
    if (rep.vmap[l].is_mapped()) m.V(rep.vmap[l].label, l) = rep.vmap[l].phase.value();
  m.S.assign(rep.graph().num_edges(), Eigen::MatrixXcd::Zero(n, n));
  for (int e = 0; e < rep.graph().num_edges(); ++e)
    for (int l = 0; l < n; ++l)
      if (rep.smap[e][l].is_mapped())
        m.S[e](rep.smap[e][l].label, l) = rep.smap[e][l].phase.value();
  m.atoms = rep;
  return m;
}

MatrixRep build_fock(const ActionPtr& a, int v, int path_depth, int sg_depth) {
  const Graph& g = a->graph();
  MatrixRep m;
  m.action = a;
  m.window_depth = std::min(path_depth, sg_depth);

  std::map<std::pair<Path, std::uint64_t>, int> index;
  std::vector<std::pair<Path, std::uint64_t>> data;
  for (int p = 0; p <= sg_depth; ++p) {
    int vp = a->act_vertex(p, v);
    for (int len = 0; len <= path_depth; ++len)
      for (auto& mu : enumerate_paths(g, vp, len)) {
        index[{mu, static_cast<std::uint64_t>(p)}] = static_cast<int>(data.size());
        data.push_back({mu, static_cast<std::uint64_t>(p)});
        m.labels.push_back("(" + path_str(g, mu) + "," + std::to_string(p) + ")");
        m.label_vertex.push_back(mu.rng(g));
      }
  }
  int n = static_cast<int>(data.size());
  m.V = Eigen::MatrixXcd::Zero(n, n);
  m.S.assign(g.num_edges(), Eigen::MatrixXcd::Zero(n, n));

  // the structural bookkeeping mirrors the matrix entries so the interior
  // table and downstream consumers see the same truncation
  AtomicRep at;
  at.action = a;
  at.window_depth = m.window_depth;
  at.label_names = m.labels;
  at.label_vertex = m.label_vertex;
  at.vmap.assign(n, Atom::zero());
  at.vstar.assign(n, Atom::zero());
  at.smap.assign(g.num_edges(), std::vector<Atom>(n, Atom::zero()));
  at.sstar.assign(g.num_edges(), std::vector<Atom>(n, Atom::zero()));

  for (int l = 0; l < n; ++l) {
    const auto& [mu, p] = data[l];
    // V d_(mu,p) = d_(1.mu, 1|_mu + p)
    std::uint64_t p2 = a->restrict(1, mu) + p;
    if (p2 <= static_cast<std::uint64_t>(sg_depth)) {
      int t = index.at({a->act(1, mu), p2});
      m.V(t, l) = 1.0;
      at.vmap[l] = Atom::mapped(t);
    } else {
      at.vmap[l] = Atom::boundary();
    }
    // S_e d_(mu,p) = d_(e mu, p) when src(e) = rng(mu)
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edge_src(e) != mu.rng(g)) continue;
      if (mu.length() + 1 <= path_depth) {
        Path emu;
        emu.edges.push_back(e);
        emu.edges.insert(emu.edges.end(), mu.edges.begin(), mu.edges.end());
        emu.base = mu.base;
        int t = index.at({emu, p});
        m.S[e](t, l) = 1.0;
        at.smap[e][l] = Atom::mapped(t);
      } else {
        at.smap[e][l] = Atom::boundary();
      }
    }
  }

  for (int l = 0; l < n; ++l)
    if (at.vmap[l].is_mapped()) at.vstar[at.vmap[l].label] = Atom::mapped(l);
  for (int l = 0; l < n; ++l) {
    bool hit = false;
    for (int l2 = 0; l2 < n; ++l2)
      if (at.vmap[l2].is_mapped() && at.vmap[l2].label == l) hit = true;
    if (!hit) {
      const auto& [mu, p] = data[l];
      Path mu0 = a->act_inverse(1, mu);
      at.vstar[l] = p < a->restrict(1, mu0) ? Atom::zero() : Atom::boundary();
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    for (int l = 0; l < n; ++l)
      if (at.smap[e][l].is_mapped())
        at.sstar[e][at.smap[e][l].label] = Atom::mapped(l);
  at.recompute_interior();
  m.interior_depth = at.interior_depth;
  m.v_margin_free = at.v_total();
  m.atoms = std::move(at);
  return m;
}

IdentityCheck check_identity(const MatrixRep& rep, const GenWord& lhs, const GenWord& rhs) {
  IdentityCheck out;
  out.lhs = word_str(rep.graph(), lhs);
  out.rhs = word_str(rep.graph(), rhs);
  int margin = std::max(rep.word_margin(lhs), rep.word_margin(rhs));
  std::vector<int> cols = rep.interior_cols(margin);
  if (cols.empty())
    throw InteriorTooSmall("no column has interior margin " + std::to_string(margin) + " for " +
                           out.lhs + " vs " + out.rhs);
  Eigen::MatrixXcd L = rep.eval_on_cols(lhs, cols);
  Eigen::MatrixXcd R = rep.eval_on_cols(rhs, cols);
  out.cols_checked = static_cast<long>(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) {
    double d = (L.col(i) - R.col(i)).norm();
    if (d > out.max_dev) {
      out.max_dev = d;
      out.witness_col = cols[i];
    }
  }
  return out;
}

Eigen::MatrixXcd compress(const MatrixRep& big, const Eigen::MatrixXcd& J, const GenWord& word) {
  Eigen::MatrixXcd gram = J.adjoint() * J;
  double dev = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-12) throw NotIsometry("embedding deviates from isometry by " + std::to_string(dev));
  Eigen::MatrixXcd acc = J;
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = big.gen_matrix(*it) * acc;
  return J.adjoint() * acc;
}

std::string word_str(const Graph& g, const GenWord& w) {
  if (w.empty()) return "I";
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += " ";
    switch (x.kind) {
      case Gen::Kind::V: s += "V"; break;
      case Gen::Kind::Vstar: s += "V*"; break;
      case Gen::Kind::S: s += "S_" + g.edge_id(x.id); break;
      case Gen::Kind::Sstar: s += "S_" + g.edge_id(x.id) + "*"; break;
      case Gen::Kind::P: s += "S_" + g.vertex_id(x.id); break;
    }
  }
  return s;
}

FamilyCheck check_toeplitz_family(const Graph& g, const Eigen::MatrixXcd& V,
                                  const std::vector<Eigen::MatrixXcd>& S,
                                  const std::vector<Eigen::MatrixXcd>& P) {
  FamilyCheck out;
  int n = static_cast<int>(V.rows());
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  out.v_isometry_dev = (V.adjoint() * V - I).cwiseAbs().maxCoeff();
  for (int e = 0; e < g.num_edges(); ++e) {
    double d = (S[e].adjoint() * S[e] - P[g.edge_src(e)]).cwiseAbs().maxCoeff();
    out.tck2_dev = std::max(out.tck2_dev, d);
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
    for (int e : g.edges_with_rng(v)) sum += S[e] * S[e].adjoint();
    Eigen::MatrixXcd diff = P[v] - sum;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((diff + diff.adjoint()) / 2.0);
    double mn = es.eigenvalues().minCoeff();
    out.tck3_excess = std::max(out.tck3_excess, std::max(0.0, -mn));
  }
  return out;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.norm() < 1e-300) return 0.0;
  // power iteration on m^* m; deterministic start
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols());
  for (int i = 0; i < m.cols(); ++i) v(i) += std::complex<double>(0.0, 1.0 / (i + 2.0));
  v.normalize();
  double last = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    double n = w.norm();
    if (n < 1e-300) return 0.0;
    v = w / n;
    double cur = std::sqrt(n);
    if (it > 10 && std::abs(cur - last) < 1e-13 * std::max(1.0, cur)) return cur;
    last = cur;
  }
  return last;
}

}  // namespace ssg
