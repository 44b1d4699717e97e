#ifndef SSG_MATRIX_HPP
#define SSG_MATRIX_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "ssg/atomic.hpp"

namespace ssg {

// Truncated dense-matrix realization of a representation. Columns outside the
// domain of the underlying partial maps are zero; the interior table records
// how many generator applications a basis column survives before touching the
// truncation boundary. Identity checks only ever quantify over columns with
// enough margin.
struct MatrixRep {
  ActionPtr action;
  int window_depth = 0;
  std::vector<std::string> labels;
  std::vector<int> label_vertex;
  std::vector<int> interior_depth;
  bool v_margin_free = false;  // V/V* do not consume interior margin
  Eigen::MatrixXcd V;
  std::vector<Eigen::MatrixXcd> S;      // per edge
  std::optional<AtomicRep> atoms;       // structural metadata when available

  int dim() const { return static_cast<int>(labels.size()); }
  const Graph& graph() const { return action->graph(); }

  Eigen::MatrixXcd P(int v) const;      // diagonal vertex projection
  Eigen::MatrixXcd gen_matrix(const Gen& g) const;
  Eigen::MatrixXcd eval(const GenWord& w) const;
  // word applied to the given basis columns only
  Eigen::MatrixXcd eval_on_cols(const GenWord& w, const std::vector<int>& cols) const;

  int word_margin(const GenWord& w) const;
  std::vector<int> interior_cols(int margin) const;
  Eigen::MatrixXcd interior_projection(int margin) const;
};

MatrixRep from_atomic(const AtomicRep& rep);

// Direct truncation of the Fock-type representation on K_v, built from the
// defining formulas S_nu d_(mu,p) = d_(nu mu,p), V d_(mu,p) = d_(1.mu, 1|_mu + p).
// Fills the same label layout as build_left_regular when both depths agree.
MatrixRep build_fock(const ActionPtr& a, int v, int path_depth, int sg_depth);

struct IdentityCheck {
  std::string lhs, rhs;
  double max_dev = 0.0;
  int witness_col = -1;
  long cols_checked = 0;
  bool pass(double tol) const { return max_dev <= tol; }
};

// max over interior columns x of ||(L-R)x||; throws InteriorTooSmall when no
// column has the margin for the longer word
IdentityCheck check_identity(const MatrixRep& rep, const GenWord& lhs, const GenWord& rhs);

// J^* (word evaluated in big) J with an isometry guard on J
Eigen::MatrixXcd compress(const MatrixRep& big, const Eigen::MatrixXcd& J, const GenWord& word);

std::string word_str(const Graph& g, const GenWord& w);

// deviations of a raw operator family from the Toeplitz-Cuntz-Krieger axioms;
// used by the dilation triviality harness
struct FamilyCheck {
  double v_isometry_dev = 0.0;   // ||V*V - I||_max
  double tck2_dev = 0.0;         // max_e ||S_e*S_e - P_(src e)||_max
  double tck3_excess = 0.0;      // max_v max(0, -lambda_min(P_v - sum S_e S_e*))
};
FamilyCheck check_toeplitz_family(const Graph& g, const Eigen::MatrixXcd& V,
                                  const std::vector<Eigen::MatrixXcd>& S,
                                  const std::vector<Eigen::MatrixXcd>& P);

double operator_norm(const Eigen::MatrixXcd& m);

}  // namespace ssg

#endif
