#ifndef SSG_TEST_HELPERS_HPP
#define SSG_TEST_HELPERS_HPP

#include <string>

#include "ssg/json_io.hpp"
#include "ssg/zappa_szep.hpp"

namespace ssg::test {

inline std::string fixture(const std::string& name) {
  return std::string(SSG_FIXTURES_DIR) + "/" + name;
}

inline ActionPtr load_fixture(const std::string& name, bool validate = true) {
  return load_action_file(fixture(name), validate);
}

inline Path parse_path(const Graph& g, const std::string& spec) {
  // comma separated edge ids; "@v" for the empty path at v
  if (spec.empty() || spec == "-") throw ValidationError("empty path spec");
  if (spec[0] == '@') return Path::at_vertex(g.vertex_index(spec.substr(1)));
  std::vector<int> edges;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) edges.push_back(g.edge_index(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return Path::of_edges(g, edges);
}

// definitional one-step oracle for the action: 1.(e nu) = (1.e)((1|_e).nu)
// and 1|_(e nu) = (1|_e)|_nu, unrolled literally with no memoization and no
// closed forms; exponential in the path length, fine on tiny windows
struct SlowAction {
  const SelfSimilarAction& a;

  Path act1(const Path& mu) const {
    if (mu.is_vertex()) return Path::at_vertex(a.vperm(mu.base));
    int e = mu.edges.front();
    Path nu;
    nu.edges.assign(mu.edges.begin() + 1, mu.edges.end());
    nu.base = mu.base;
    Path nu2 = act(a.rho(e), nu);
    Path out;
    out.edges.push_back(a.eperm(e));
    out.edges.insert(out.edges.end(), nu2.edges.begin(), nu2.edges.end());
    out.base = nu2.base;
    return out;
  }
  Path act(std::uint64_t n, const Path& mu) const {
    Path cur = mu;
    for (std::uint64_t i = 0; i < n; ++i) cur = act1(cur);
    return cur;
  }
  std::uint64_t restrict1(const Path& mu) const {
    if (mu.is_vertex()) return 1;
    int e = mu.edges.front();
    Path nu;
    nu.edges.assign(mu.edges.begin() + 1, mu.edges.end());
    nu.base = mu.base;
    return restrict(a.rho(e), nu);
  }
  std::uint64_t restrict(std::uint64_t n, const Path& mu) const {
    std::uint64_t total = 0;
    Path cur = mu;
    for (std::uint64_t i = 0; i < n; ++i) {
      total += restrict1(cur);
      cur = act1(cur);
    }
    return total;
  }
};

}  // namespace ssg::test

#endif
