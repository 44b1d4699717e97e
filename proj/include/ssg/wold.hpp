#ifndef SSG_WOLD_HPP
#define SSG_WOLD_HPP

#include <map>
#include <string>
#include <vector>

#include "ssg/matrix.hpp"

namespace ssg {

enum class WoldType { unitary_ck, pure_ck, unitary_pure_shift, left_regular, inconclusive };

std::string wold_type_name(WoldType t);

struct WoldComponent {
  WoldType type = WoldType::inconclusive;
  int dim_window = 0;
  int dim_interior = 0;
  int vertex_orbit = -1;  // for shift-side components
  int alpha = 0;          // wandering multiplicity where meaningful
  std::string evidence;   // "cycles", "window-boundary", "kernel", ...
  std::vector<int> labels;
};

struct WoldReport {
  std::vector<WoldComponent> components;
  std::map<std::string, int> wandering_dim;  // vertex id -> dim W_v on the window
  int dim_hc_interior = 0;                   // CK side
  int dim_hu_interior = 0;                   // V unitary side
  int dim_hs_interior = 0;                   // V pure side
  int dim_interior = 0;
  std::vector<int> comp_of;                  // label -> component index
  bool inconclusive = false;
  std::vector<std::string> notes;

  bool has_type(WoldType t) const {
    for (const auto& c : components)
      if (c.type == t) return true;
    return false;
  }
};

// projection S_v - sum_{e in vE^1} S_e S_e*  (edges with range v)
Eigen::MatrixXcd wandering_projection(const MatrixRep& rep, int v);

// (P_U, P_S): projection onto the intersection of the ranges of V^n, n <= n_max,
// and the complement assembled from V^n(ker V*); both restricted to interior
// columns
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> v_split(const MatrixRep& rep, int n_max);

// exact label-combinatorial classification
WoldReport classify(const AtomicRep& rep);

// numeric classification through wandering projections and the V-split;
// returns block dimensions with singular-value margins in the notes
WoldReport classify(const MatrixRep& rep, int n_max);

}  // namespace ssg

#endif
