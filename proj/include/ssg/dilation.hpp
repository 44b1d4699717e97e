#ifndef SSG_DILATION_HPP
#define SSG_DILATION_HPP

#include <string>
#include <vector>

#include "ssg/matrix.hpp"

namespace ssg {

struct DilationResult {
  MatrixRep big;
  Eigen::MatrixXcd embed;           // isometry from the embedded original labels
  std::vector<int> embed_domain;    // original label indices carried by embed
  // projection onto the embedded copy of the original space within the
  // window; can be strictly larger than embed*embed^* when the window of the
  // original representation ends before the embedding grid does
  Eigen::MatrixXcd subspace_projection;
  std::string tag;                  // pure-case-Z | unitary-pure-M | block | direct-sum
  bool nontrivial = false;
  double offcorner_norm = 0.0;
  double embed_isometry_dev = 0.0;
  double compression_max_dev = 0.0;
  long compression_checks = 0;
  bool input_ck = false;
  bool output_ck_on_interior = false;
  std::vector<std::string> notes;
};

// Z-shift dilation for a representation whose V-part is pure: the original
// space is re-coordinatized as ker V* tensor l2(N) and extended to a
// two-sided grid [-K, K]; edge operators are assembled columnwise through
// minimal intertwiners q.e = f, q|_e = p with p + k >= 0.
DilationResult dilate_pure_case(const MatrixRep& rep, int K);

// symbolic form of the same construction; K is the window depth of the input;
// a representation with no wandering space for V is returned unchanged
AtomicRep dilate_atomic_pure(const AtomicRep& rep);

// q_extra shifts every intertwiner by that many orbit periods; exposed so the
// well-definedness of the columnwise assembly can be tested against a second
// valid choice
AtomicRep dilate_atomic_pure_with(const AtomicRep& rep, int K, int q_extra);

// dilation of a unitary + pure-shift representation on the orbit of src(e0),
// on the original space tensored with a fiber of dimension M = sum of the
// generator restriction over the orbit of e0
DilationResult dilate_unitary_pure(const AtomicRep& rep, int e0);
DilationResult dilate_unitary_pure(const MatrixRep& rep, int e0);

// true iff the embedded subspace reduces every generator within tol
// (all four off-corner blocks of V, V*, S_e, S_e* vanish on the interior)
bool check_trivial(const DilationResult& d, double tol);

// largest off-corner block norm over the generators, measured on the interior
double offcorner_norm(const DilationResult& d);

// direct-sum dilation of a representation with an arbitrary second summand;
// always trivial, used as a control
DilationResult direct_sum_dilation(const MatrixRep& rep, const MatrixRep& other);

}  // namespace ssg

#endif
