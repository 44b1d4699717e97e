#ifndef SSG_ATOMIC_HPP
#define SSG_ATOMIC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssg/action.hpp"
#include "ssg/phase.hpp"

namespace ssg {

// Outcome of applying a generator to a basis label. `boundary` means the true
// image exists but lies outside the materialized window; claims are never
// made across boundaries.
struct Atom {
  enum class Kind { mapped, zero, boundary };
  Kind kind = Kind::zero;
  int label = -1;
  Phase phase;

  static Atom mapped(int label, Phase ph = Phase::one()) { return {Kind::mapped, label, ph}; }
  static Atom zero() { return {Kind::zero, -1, Phase::one()}; }
  static Atom boundary() { return {Kind::boundary, -1, Phase::one()}; }
  bool is_mapped() const { return kind == Kind::mapped; }
  bool is_zero() const { return kind == Kind::zero; }
  bool is_boundary() const { return kind == Kind::boundary; }
};

// Generators of a Toeplitz representation, as applied to single labels.
struct Gen {
  enum class Kind { V, Vstar, S, Sstar, P } kind;
  int id = -1;  // edge index for S/Sstar, vertex index for P

  static Gen V() { return {Kind::V, -1}; }
  static Gen Vstar() { return {Kind::Vstar, -1}; }
  static Gen S(int e) { return {Kind::S, e}; }
  static Gen Sstar(int e) { return {Kind::Sstar, e}; }
  static Gen P(int v) { return {Kind::P, v}; }
};
using GenWord = std::vector<Gen>;

// An exact symbolic representation: phase-weighted partial injections V and
// S_e on a finite window of a countable labeled basis. The vertex partition
// realizes the projections S_v. All identity checking on this engine is
// phase-exact.
struct AtomicRep {
  ActionPtr action;
  int window_depth = 0;
  std::vector<std::string> label_names;
  std::vector<int> label_vertex;         // label -> vertex index (the sets I_v)
  std::vector<Atom> vmap, vstar;         // per label
  std::vector<std::vector<Atom>> smap;   // [edge][label]
  std::vector<std::vector<Atom>> sstar;  // [edge][label]
  std::vector<int> interior_depth;       // computed; see recompute_interior()

  int dim() const { return static_cast<int>(label_names.size()); }
  const Graph& graph() const { return action->graph(); }

  Atom apply(const Gen& g, int label) const;
  Atom apply_word(const GenWord& w, int label) const;  // rightmost factor first

  // max d such that every generator word of length <= d keeps the label inside
  // the window; V/Vstar steps are free when both are total bijections on the
  // window (v_total())
  void recompute_interior();
  bool v_total() const;
  bool is_interior(int label, int margin) const { return interior_depth[label] >= margin; }

  // labels not hit by any S_e within the window and not flagged as hit from
  // outside; these span the wandering space of the S-part
  std::vector<int> wandering_labels() const;
  bool label_hit_by_s(int label) const;           // by an in-window Smap entry
  bool label_s_hit_unresolved(int label) const;   // all sstar entries boundary

  void validate() const;  // structural invariants; throws ValidationError
};

struct RelationViolation {
  std::string relation;
  std::string witness;
};

struct RelationReport {
  long checked = 0;
  long skipped = 0;
  std::vector<RelationViolation> violations;
  bool ck_on_interior = false;    // every interior label is hit by exactly one S_e
  bool v_unitary_on_window = false;
  bool nc_hypothesis = false;     // V unitary on window or CK on interior
  bool pass() const { return violations.empty(); }
};

// (SS), (NC), TCK1-3, CK-ness and the two covariance identities
// V^p S_e S_e* = S_(p.e) S_(p.e)* V^p and V^p* S_e S_e* = S_f S_f* V^p*
// (e = p.f), all phase-exact on labels whose orbits stay inside the window.
RelationReport verify_relations(const AtomicRep& rep, int d);

// Fock-type representation restricted to K_v: labels (mu, p) with
// s(mu) = p.v, |mu| <= depth, p <= depth.
AtomicRep build_left_regular(const ActionPtr& a, int v, int depth);

// unitary + pure shift atomic representation attached to the orbit of u with
// wandering multiplicity alpha and cycle phase lambda; alpha = 1 recovers the
// one-parameter family c^lambda
AtomicRep build_unitary_pure(const ActionPtr& a, int u, int alpha, const Phase& lambda, int depth);
AtomicRep build_c_lambda(const ActionPtr& a, int u, const Phase& lambda, int depth);

// U0: wandering label -> (wandering label, phase); must map the S_v-wandering
// labels bijectively onto the S_(1.v)-wandering ones. Extends uniquely to the
// whole window via U(S_mu xi) = S_(1.mu) U0^(1|_mu) xi.
AtomicRep extend_unitary_from_wandering(const AtomicRep& shift_part,
                                        const std::map<int, std::pair<int, Phase>>& u0);

// CK atomic family over the odometer with n loops, of the backward-infinite
// word type; word_prefix lists the trailing letters e1 e2 e3 ... (1-based
// letter values). The unique unitary making it a Toeplitz representation is
// attached.
AtomicRep build_inductive_ck(int n, const std::vector<int>& word_prefix, int depth);

// CK atomic family over the odometer whose S-part cycles over a primitive
// word. Single-letter words give the two special pairings; eta0_in_ran_v
// selects the branch for the 1-cycle of the letter 1.
AtomicRep build_cycle_ck(int n, const std::vector<int>& cycle_word, const Phase& lambda,
                         bool eta0_in_ran_v, int depth);

// Where a label lands when traced backwards through the S-maps: at a
// wandering root (pure-shift side), in a cycle, or at the window edge.
struct STrace {
  enum class Kind { rooted, cycle, boundary } kind = Kind::rooted;
  int root = -1;
  std::vector<int> path;  // S_path(root) = phase . label, range-first
  Phase phase;
};
using STraceTable = std::vector<STrace>;
STraceTable s_traceback(const AtomicRep& rep);

// Backwards V-trace: terminates in ker V* (kernel), cycles, or leaves the
// window.
struct VTrace {
  enum class Kind { kernel, cycle, boundary } kind = Kind::kernel;
  int root = -1;
  int steps = 0;
  Phase phase;  // V^steps(root) = phase . label
};
using VTraceTable = std::vector<VTrace>;
VTraceTable v_traceback(const AtomicRep& rep, int max_steps);

// one irreducible unitary + pure-shift component
struct UnitaryPureComponent {
  Phase lambda;                 // eigenvalue conj(beta*omega_k)
  int vertex_orbit = -1;        // orbit index in the action's OrbitTable
  // eta-vector as a phase-weighted combination of window labels
  std::vector<std::pair<int, Phase>> eta;
};

// Splits a unitary + pure-shift atomic representation into its irreducible
// components by reading the V-cycles over the wandering labels; eigenvalues
// come back sorted by (re, im).
std::vector<UnitaryPureComponent> decompose_unitary_pure(const AtomicRep& rep);

}  // namespace ssg

#endif
