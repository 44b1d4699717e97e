#ifndef SSG_ACTION_HPP
#define SSG_ACTION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssg/graph.hpp"

namespace ssg {

struct OrbitTable {
  std::vector<std::vector<int>> vertex_orbits;  // cycles of the vertex permutation
  std::vector<std::vector<int>> edge_orbits;    // cycles of the edge permutation
  std::vector<int> vertex_orbit_of;             // vertex -> orbit index
  std::vector<int> edge_orbit_of;               // edge -> orbit index
  std::vector<int> vertex_pos;                  // position of vertex inside its cycle
  std::vector<int> edge_pos;
  std::vector<std::uint64_t> m_e;               // edge -> |orbit of e|
  std::vector<std::uint64_t> m_v;               // vertex -> |orbit of v|
};

struct Intertwiner {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  int f = -1;
};

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

struct AxiomReport {
  long checks = 0;
  std::vector<AxiomViolation> violations;
  bool pass() const { return violations.empty(); }
};

// A self-similar N-action on a finite graph, given by its generator data: a
// vertex permutation, an edge permutation intertwining src/rng, and the
// restriction weight of the generator on each edge. Everything else (n on a
// path, n restricted to a path) is derived by the generating recursion
//   1.(e nu) = (1.e)((1|_e).nu),   1|_(e nu) = (1|_e)|_nu,
//   n.mu = 1.((n-1).mu),           n|_mu = 1|_((n-1).mu) + (n-1)|_mu,
// memoized per path so repeated window sweeps stay cheap.
class SelfSimilarAction {
 public:
  static std::shared_ptr<const SelfSimilarAction> make(Graph g,
                                                       const std::map<std::string, std::string>& vperm,
                                                       const std::map<std::string, std::string>& eperm,
                                                       const std::map<std::string, std::uint64_t>& rho);
  // skips the structural validation; for negative tests
  static std::shared_ptr<const SelfSimilarAction> make_unchecked(
      Graph g, const std::map<std::string, std::string>& vperm,
      const std::map<std::string, std::string>& eperm,
      const std::map<std::string, std::uint64_t>& rho);

  const Graph& graph() const { return graph_; }
  int vperm(int v) const { return vperm_[v]; }
  int eperm(int e) const { return eperm_[e]; }
  std::uint64_t rho(int e) const { return rho_[e]; }
  const OrbitTable& orbits() const { return orbits_; }

  // validation as performed by make(); returns violations instead of throwing
  std::vector<AxiomViolation> structural_violations() const;

  int act_vertex(std::uint64_t n, int v) const;
  int act_edge(std::uint64_t n, int e) const;
  std::uint64_t restrict_edge(std::uint64_t n, int e) const;

  Path act(std::uint64_t n, const Path& mu) const;
  std::uint64_t restrict(std::uint64_t n, const Path& mu) const;
  Path act_inverse(std::uint64_t n, const Path& mu) const;

  bool check_assumption_A() const;
  // M = sum of the generator restriction over the orbit of e0;
  // throws AssumptionAViolated when M = 0
  std::uint64_t big_M(int e0) const;
  // smallest q with q|_e >= k (q = 0 when k <= 0); f = q.e, p = q|_e
  Intertwiner find_intertwiner(int e, std::int64_t k) const;

  AxiomReport verify_axioms(int depth, int path_depth = -1) const;

 private:
  SelfSimilarAction() = default;
  static std::shared_ptr<SelfSimilarAction> build(Graph g,
                                                  const std::map<std::string, std::string>& vperm,
                                                  const std::map<std::string, std::string>& eperm,
                                                  const std::map<std::string, std::uint64_t>& rho);

  Path act_one(const Path& mu) const;                 // 1.mu (memoized)
  std::uint64_t restrict_one(const Path& mu) const;   // 1|_mu (memoized)

  Graph graph_;
  std::vector<int> vperm_, eperm_;
  std::vector<int> vperm_inv_, eperm_inv_;
  std::vector<std::uint64_t> rho_;
  OrbitTable orbits_;
  std::vector<std::uint64_t> orbit_rho_sum_;  // per edge orbit

  struct PathKeyHash {
    size_t operator()(const std::vector<int>& k) const {
      size_t h = 1469598103934665603ull;
      for (int x : k) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  mutable std::mutex cache_mu_;
  mutable std::unordered_map<std::vector<int>, Path, PathKeyHash> act1_cache_;
  mutable std::unordered_map<std::vector<int>, std::uint64_t, PathKeyHash> r1_cache_;
};

using ActionPtr = std::shared_ptr<const SelfSimilarAction>;

}  // namespace ssg

#endif
