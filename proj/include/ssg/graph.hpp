#ifndef SSG_GRAPH_HPP
#define SSG_GRAPH_HPP

#include <string>
#include <vector>

#include "ssg/errors.hpp"

namespace ssg {

struct EdgeSpec {
  std::string id;
  std::string src;
  std::string rng;
};

// A finite directed graph with named vertices and edges. Vertices and edges
// are sorted by id on construction so every enumeration downstream is
// reproducible. Every vertex must receive at least one edge (no sources),
// which keeps Cuntz-Krieger sums well-posed.
class Graph {
 public:
  static Graph make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edge_ids_.size()); }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& edge_id(int e) const { return edge_ids_[e]; }

  int vertex_index(const std::string& id) const;  // throws UnknownVertex
  int edge_index(const std::string& id) const;    // throws UnknownEdge

  int edge_src(int e) const { return edge_src_[e]; }
  int edge_rng(int e) const { return edge_rng_[e]; }

  // edges sorted by id
  const std::vector<int>& edges_with_src(int v) const { return by_src_[v]; }
  const std::vector<int>& edges_with_rng(int v) const { return by_rng_[v]; }

  bool operator==(const Graph& o) const {
    return vertex_ids_ == o.vertex_ids_ && edge_ids_ == o.edge_ids_ &&
           edge_src_ == o.edge_src_ && edge_rng_ == o.edge_rng_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<int> edge_src_;
  std::vector<int> edge_rng_;
  std::vector<std::vector<int>> by_src_;
  std::vector<std::vector<int>> by_rng_;
};

// A finite directed path. Edges are listed range-first: the path e1 e2 ... ek
// has rng = rng(e1) and src = src(ek). A length-0 path is a vertex; `base`
// always holds the source vertex so the empty case needs no special casing.
struct Path {
  std::vector<int> edges;
  int base = -1;

  static Path at_vertex(int v) {
    Path p;
    p.base = v;
    return p;
  }
  static Path of_edges(const Graph& g, std::vector<int> edge_seq);

  int length() const { return static_cast<int>(edges.size()); }
  bool is_vertex() const { return edges.empty(); }
  int src() const { return base; }
  int rng(const Graph& g) const { return edges.empty() ? base : g.edge_rng(edges.front()); }

  bool operator==(const Path& o) const { return edges == o.edges && base == o.base; }
  bool operator!=(const Path& o) const { return !(*this == o); }
  bool operator<(const Path& o) const {
    if (edges.size() != o.edges.size()) return edges.size() < o.edges.size();
    if (edges != o.edges) return edges < o.edges;
    return base < o.base;
  }
};

// mu . nu, defined when src(mu) = rng(nu)
Path compose_paths(const Graph& g, const Path& mu, const Path& nu);

// all paths of length d with source v, in lexicographic edge-id order
std::vector<Path> enumerate_paths(const Graph& g, int v, int d);

std::string path_str(const Graph& g, const Path& p);

}  // namespace ssg

#endif
