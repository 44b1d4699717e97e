#include "ssg/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ssg {

using nlohmann::json;

namespace {

void require_object(const json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) allowed.insert(k);
  for (const char* k : optional) allowed.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(where + ": unknown key '" + it.key() + "'");
  for (const char* k : required)
    if (!j.contains(k)) throw SchemaError(where + ": missing key '" + std::string(k) + "'");
}

std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_string()) throw SchemaError(where + "." + it.key() + ": expected a string");
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

}  // namespace

Graph graph_from_json(const json& j) {
  require_object(j, {"vertices", "edges"}, {}, "graph");
  if (!j["vertices"].is_array()) throw SchemaError("graph.vertices: expected an array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw SchemaError("graph.vertices: entries must be strings");
    vertices.push_back(v.get<std::string>());
  }
  if (!j["edges"].is_array()) throw SchemaError("graph.edges: expected an array");
  std::vector<EdgeSpec> edges;
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    require_object(e, {"id", "src", "rng"}, {}, "graph.edges[" + std::to_string(i) + "]");
    edges.push_back({e["id"].get<std::string>(), e["src"].get<std::string>(),
                     e["rng"].get<std::string>()});
  }
  return Graph::make(std::move(vertices), std::move(edges));
}

json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back(g.vertex_id(v));
  j["edges"] = json::array();
  for (int e = 0; e < g.num_edges(); ++e)
    j["edges"].push_back(
        {{"id", g.edge_id(e)}, {"src", g.vertex_id(g.edge_src(e))}, {"rng", g.vertex_id(g.edge_rng(e))}});
  return j;
}

ActionPtr action_from_json(const json& j, bool validate) {
  require_object(j, {"graph", "vperm", "eperm", "rho"}, {}, "action");
  Graph g = graph_from_json(j["graph"]);
  auto vperm = string_map(j["vperm"], "action.vperm");
  auto eperm = string_map(j["eperm"], "action.eperm");
  if (!j["rho"].is_object()) throw SchemaError("action.rho: expected an object");
  std::map<std::string, std::uint64_t> rho;
  for (auto it = j["rho"].begin(); it != j["rho"].end(); ++it) {
    if (!it.value().is_number_unsigned() && !it.value().is_number_integer())
      throw SchemaError("action.rho." + it.key() + ": expected a nonnegative integer");
    auto v = it.value().get<std::int64_t>();
    if (v < 0) throw SchemaError("action.rho." + it.key() + ": negative restriction");
    rho[it.key()] = static_cast<std::uint64_t>(v);
  }
  return validate ? SelfSimilarAction::make(g, vperm, eperm, rho)
                  : SelfSimilarAction::make_unchecked(g, vperm, eperm, rho);
}

json action_to_json(const SelfSimilarAction& a) {
  const Graph& g = a.graph();
  json j;
  j["graph"] = graph_to_json(g);
  json vp = json::object(), ep = json::object(), rh = json::object();
  for (int v = 0; v < g.num_vertices(); ++v) vp[g.vertex_id(v)] = g.vertex_id(a.vperm(v));
  for (int e = 0; e < g.num_edges(); ++e) {
    ep[g.edge_id(e)] = g.edge_id(a.eperm(e));
    rh[g.edge_id(e)] = a.rho(e);
  }
  j["vperm"] = vp;
  j["eperm"] = ep;
  j["rho"] = rh;
  return j;
}

Phase phase_from_json(const json& j) {
  if (j.is_number_integer() && j.get<int>() == 1) return Phase::one();
  if (j.is_object() && j.contains("num")) {
    require_object(j, {"num", "den"}, {}, "phase");
    return Phase::rotation(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
  }
  require_object(j, {"re", "im"}, {}, "phase");
  return Phase::from_complex({j["re"].get<double>(), j["im"].get<double>()});
}

json phase_to_json(const Phase& p) {
  if (p.is_exact()) return json{{"num", p.num()}, {"den", p.den()}};
  auto z = p.value();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

namespace {

json atom_to_json(const Atom& a) {
  if (a.is_zero()) return "zero";
  if (a.is_boundary()) return "boundary";
  json j{{"to", a.label}};
  if (!a.phase.is_one()) j["phase"] = phase_to_json(a.phase);
  return j;
}

Atom atom_from_json(const json& j, int dim, const std::string& where) {
  if (j.is_string()) {
    if (j == "zero") return Atom::zero();
    if (j == "boundary") return Atom::boundary();
    throw SchemaError(where + ": unknown atom tag '" + j.get<std::string>() + "'");
  }
  require_object(j, {"to"}, {"phase"}, where);
  int to = j["to"].get<int>();
  if (to < 0 || to >= dim) throw SchemaError(where + ": target out of range");
  Phase ph = j.contains("phase") ? phase_from_json(j["phase"]) : Phase::one();
  return Atom::mapped(to, ph);
}

std::vector<Atom> atoms_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(where + ": expected an array of " + std::to_string(dim) + " atoms");
  std::vector<Atom> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(atom_from_json(j[i], dim, where + "[" + std::to_string(i) + "]"));
  return out;
}

json atoms_to_json(const std::vector<Atom>& v) {
  json j = json::array();
  for (const auto& a : v) j.push_back(atom_to_json(a));
  return j;
}

}  // namespace

AtomicRep atomic_from_json(const json& j) {
  require_object(j, {"action", "depth", "labels", "vmap", "vstar", "smap", "sstar"}, {}, "rep");
  AtomicRep rep;
  rep.action = action_from_json(j["action"]);
  rep.window_depth = j["depth"].get<int>();
  const Graph& g = rep.graph();
  if (!j["labels"].is_array()) throw SchemaError("rep.labels: expected an array");
  for (size_t i = 0; i < j["labels"].size(); ++i) {
    const auto& l = j["labels"][i];
    require_object(l, {"name", "vertex"}, {}, "rep.labels[" + std::to_string(i) + "]");
    rep.label_names.push_back(l["name"].get<std::string>());
    rep.label_vertex.push_back(g.vertex_index(l["vertex"].get<std::string>()));
  }
  int n = rep.dim();
  rep.vmap = atoms_from_json(j["vmap"], n, "rep.vmap");
  rep.vstar = atoms_from_json(j["vstar"], n, "rep.vstar");
  rep.smap.assign(g.num_edges(), {});
  rep.sstar.assign(g.num_edges(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    const std::string id = g.edge_id(e);
    if (!j["smap"].contains(id)) throw SchemaError("rep.smap: missing edge " + id);
    if (!j["sstar"].contains(id)) throw SchemaError("rep.sstar: missing edge " + id);
    rep.smap[e] = atoms_from_json(j["smap"][id], n, "rep.smap." + id);
    rep.sstar[e] = atoms_from_json(j["sstar"][id], n, "rep.sstar." + id);
  }
  if (j["smap"].size() != static_cast<size_t>(g.num_edges()))
    throw SchemaError("rep.smap: unknown edge key");
  if (j["sstar"].size() != static_cast<size_t>(g.num_edges()))
    throw SchemaError("rep.sstar: unknown edge key");
  rep.recompute_interior();
  rep.validate();
  return rep;
}

json atomic_to_json(const AtomicRep& rep) {
  const Graph& g = rep.graph();
  json j;
  j["action"] = action_to_json(*rep.action);
  j["depth"] = rep.window_depth;
  j["labels"] = json::array();
  for (int l = 0; l < rep.dim(); ++l)
    j["labels"].push_back(
        {{"name", rep.label_names[l]}, {"vertex", g.vertex_id(rep.label_vertex[l])}});
  j["vmap"] = atoms_to_json(rep.vmap);
  j["vstar"] = atoms_to_json(rep.vstar);
  j["smap"] = json::object();
  j["sstar"] = json::object();
  for (int e = 0; e < g.num_edges(); ++e) {
    j["smap"][g.edge_id(e)] = atoms_to_json(rep.smap[e]);
    j["sstar"][g.edge_id(e)] = atoms_to_json(rep.sstar[e]);
  }
  return j;
}

json axiom_report_to_json(const AxiomReport& r) {
  json j;
  j["checks"] = r.checks;
  j["pass"] = r.pass();
  j["violations"] = json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
  return j;
}

json relation_report_to_json(const RelationReport& r) {
  json j;
  j["checked"] = r.checked;
  j["skipped"] = r.skipped;
  j["pass"] = r.pass();
  j["ck_on_interior"] = r.ck_on_interior;
  j["v_unitary_on_window"] = r.v_unitary_on_window;
  j["violations"] = json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"relation", v.relation}, {"witness", v.witness}});
  return j;
}

json wold_to_json(const WoldReport& r) {
  json j;
  j["dim_interior"] = r.dim_interior;
  j["dim_hc_interior"] = r.dim_hc_interior;
  j["dim_hu_interior"] = r.dim_hu_interior;
  j["dim_hs_interior"] = r.dim_hs_interior;
  j["inconclusive"] = r.inconclusive;
  j["wandering_dim"] = r.wandering_dim;
  j["notes"] = r.notes;
  j["components"] = json::array();
  for (const auto& c : r.components) {
    json cj{{"type", wold_type_name(c.type)},
            {"dim_window", c.dim_window},
            {"dim_interior", c.dim_interior},
            {"evidence", c.evidence}};
    if (c.vertex_orbit >= 0) cj["vertex_orbit"] = c.vertex_orbit;
    if (c.alpha > 0) cj["alpha"] = c.alpha;
    j["components"].push_back(cj);
  }
  return j;
}

std::string wold_table(const WoldReport& r) {
  std::ostringstream os;
  os << "component  type                  dim(window)  dim(interior)  alpha  evidence\n";
  for (size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    os << i << "          ";
    std::string t = wold_type_name(c.type);
    os << t << std::string(t.size() < 22 ? 22 - t.size() : 1, ' ');
    os << c.dim_window << "  " << c.dim_interior << "  " << c.alpha << "  " << c.evidence << "\n";
  }
  os << "interior dims: total " << r.dim_interior << ", CK side " << r.dim_hc_interior
     << ", V-unitary " << r.dim_hu_interior << ", V-pure " << r.dim_hs_interior << "\n";
  return os.str();
}

json dilation_to_json(const DilationResult& d) {
  json j;
  j["tag"] = d.tag;
  j["dim_big"] = d.big.dim();
  j["dim_embedded"] = static_cast<int>(d.embed_domain.size());
  j["nontrivial"] = d.nontrivial;
  j["offcorner_norm"] = d.offcorner_norm;
  j["embed_isometry_dev"] = d.embed_isometry_dev;
  j["compression_max_dev"] = d.compression_max_dev;
  j["compression_checks"] = d.compression_checks;
  j["input_ck"] = d.input_ck;
  j["output_ck_on_interior"] = d.output_ck_on_interior;
  j["notes"] = d.notes;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}

ActionPtr load_action_file(const std::string& path, bool validate) {
  return action_from_json(load_json_file(path), validate);
}

}  // namespace ssg
