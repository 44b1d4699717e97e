#ifndef SSG_ZAPPA_SZEP_HPP
#define SSG_ZAPPA_SZEP_HPP

#include <cstdint>
#include <string>

#include "ssg/action.hpp"

namespace ssg {

// An element (mu, p) of the self-similar product E* |><| N, stored in normal
// form. Multiplication is (mu, p)(nu, q) = (mu (p.nu), p|_nu + q) whenever
// src(mu) = rng(p.nu).
struct ZSElement {
  Path mu;
  std::uint64_t p = 0;

  bool operator==(const ZSElement& o) const { return mu == o.mu && p == o.p; }
};

ZSElement zs_multiply(const SelfSimilarAction& a, const ZSElement& x, const ZSElement& y);

inline bool zs_equals(const ZSElement& x, const ZSElement& y) { return x == y; }

std::string zs_str(const Graph& g, const ZSElement& x);

// single vertex, n loops e1..en, the n-cycle edge permutation; the generator
// restricts to 0 except on the last loop where it restricts to 1 (odometer)
// or to m (Baumslag-Solitar)
ActionPtr factory_odometer(int n);
ActionPtr factory_bs(int n, int m);

// two vertices with a loop at each and a 2-cycle of connecting edges; the
// swap action with restriction weights 3,1,3,3
ActionPtr factory_two_vertex_swap();

}  // namespace ssg

#endif
