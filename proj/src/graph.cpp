#include "ssg/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ssg {

Graph Graph::make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
  if (vertices.empty()) throw ValidationError("graph must have at least one vertex");
  std::sort(vertices.begin(), vertices.end());
  for (const auto& v : vertices) {
    if (v.empty()) throw ValidationError("empty vertex id");
  }
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw ValidationError("duplicate vertex id");

  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });

  Graph g;
  g.vertex_ids_ = std::move(vertices);
  std::map<std::string, int> vidx;
  for (int i = 0; i < g.num_vertices(); ++i) vidx[g.vertex_ids_[i]] = i;

  std::set<std::string> seen;
  for (const auto& e : edges) {
    if (e.id.empty()) throw ValidationError("empty edge id");
    if (!seen.insert(e.id).second) throw ValidationError("duplicate edge id: " + e.id);
    auto s = vidx.find(e.src);
    auto r = vidx.find(e.rng);
    if (s == vidx.end()) throw ValidationError("edge " + e.id + " has unknown src " + e.src);
    if (r == vidx.end()) throw ValidationError("edge " + e.id + " has unknown rng " + e.rng);
    g.edge_ids_.push_back(e.id);
    g.edge_src_.push_back(s->second);
    g.edge_rng_.push_back(r->second);
  }

  g.by_src_.assign(g.num_vertices(), {});
  g.by_rng_.assign(g.num_vertices(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    g.by_src_[g.edge_src_[e]].push_back(e);
    g.by_rng_[g.edge_rng_[e]].push_back(e);
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.by_rng_[v].empty())
      throw ValidationError("vertex " + g.vertex_ids_[v] +
                            " receives no edge (graph must be source-free)");
  }
  return g;
}

int Graph::vertex_index(const std::string& id) const {
  auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) throw UnknownVertex("unknown vertex: " + id);
  return static_cast<int>(it - vertex_ids_.begin());
}

int Graph::edge_index(const std::string& id) const {
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id);
  if (it == edge_ids_.end() || *it != id) throw UnknownEdge("unknown edge: " + id);
  return static_cast<int>(it - edge_ids_.begin());
}

Path Path::of_edges(const Graph& g, std::vector<int> edge_seq) {
  Path p;
  if (edge_seq.empty()) throw ValidationError("Path::of_edges requires at least one edge");
  for (size_t i = 0; i + 1 < edge_seq.size(); ++i) {
    if (g.edge_src(edge_seq[i]) != g.edge_rng(edge_seq[i + 1]))
      throw ComposabilityError("edges " + g.edge_id(edge_seq[i]) + " and " +
                               g.edge_id(edge_seq[i + 1]) + " do not compose");
  }
  p.base = g.edge_src(edge_seq.back());
  p.edges = std::move(edge_seq);
  return p;
}

Path compose_paths(const Graph& g, const Path& mu, const Path& nu) {
  if (mu.src() != nu.rng(g))
    throw ComposabilityError("cannot compose: src(" + path_str(g, mu) + ") = " +
                             g.vertex_id(mu.src()) + " but rng(" + path_str(g, nu) + ") = " +
                             g.vertex_id(nu.rng(g)));
  Path out;
  out.edges = mu.edges;
  out.edges.insert(out.edges.end(), nu.edges.begin(), nu.edges.end());
  out.base = nu.base;
  return out;
}

std::vector<Path> enumerate_paths(const Graph& g, int v, int d) {
  if (v < 0 || v >= g.num_vertices()) throw UnknownVertex("vertex index out of range");
  if (d == 0) return {Path::at_vertex(v)};
  std::vector<Path> shorter = enumerate_paths(g, v, d - 1);
  std::vector<Path> out;
  // prepend edges in id order; inner order is inherited, giving lexicographic
  // order on the edge sequence
  for (int e = 0; e < g.num_edges(); ++e) {
    for (const Path& nu : shorter) {
      if (g.edge_src(e) == nu.rng(g)) {
        Path p;
        p.edges.reserve(nu.edges.size() + 1);
        p.edges.push_back(e);
        p.edges.insert(p.edges.end(), nu.edges.begin(), nu.edges.end());
        p.base = v;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::string path_str(const Graph& g, const Path& p) {
  if (p.is_vertex()) return "(" + g.vertex_id(p.base) + ")";
  std::string s;
  for (int e : p.edges) s += g.edge_id(e);
  return s;
}

}  // namespace ssg
