// Batch front door: load action/representation documents, run verifications,
// emit reports. Exit codes: 0 all checks pass, 1 a reported violation,
// 2 input/schema errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ssg/dilation.hpp"
#include "ssg/json_io.hpp"
#include "ssg/wold.hpp"
#include "ssg/zappa_szep.hpp"

using namespace ssg;
using nlohmann::json;

namespace {

Path parse_path_arg(const Graph& g, const std::string& spec) {
  if (spec.empty()) throw SchemaError("empty path argument");
  if (spec == "∅" || spec == "-") {
    if (g.num_vertices() != 1)
      throw SchemaError("the empty path needs a vertex: use @<vertex-id>");
    return Path::at_vertex(0);
  }
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

ZSElement parse_zs_arg(const Graph& g, const std::string& spec) {
  auto comma = spec.rfind(',');
  if (comma == std::string::npos) throw SchemaError("expected \"<path>,<p>\": " + spec);
  ZSElement x;
  x.p = std::stoull(spec.substr(comma + 1));
  x.mu = parse_path_arg(g, spec.substr(0, comma));
  return x;
}

std::string plain_path(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.num_vertices() == 1 ? "∅" : "@" + g.vertex_id(p.base);
  std::string s;
  for (int e : p.edges) s += g.edge_id(e);
  return s;
}

struct RepSpec {
  std::string builder = "left-regular";
  std::string vertex;
  int depth = 4;
  int alpha = 1;
  std::int64_t lambda_num = 0, lambda_den = 1;
  int loops = 2;
  std::string word;
  bool eta0_in_ran = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--builder", builder,
                    "left-regular | c-lambda | unitary-pure | inductive | cycle")
        ->check(CLI::IsMember({"left-regular", "c-lambda", "unitary-pure", "inductive", "cycle"}));
    cmd->add_option("--vertex", vertex, "base vertex id (defaults to the first vertex)");
    cmd->add_option("--depth", depth, "window depth")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", alpha, "wandering multiplicity for unitary-pure");
    cmd->add_option("--lambda-num", lambda_num, "cycle phase exp(2*pi*i*num/den): numerator");
    cmd->add_option("--lambda-den", lambda_den, "cycle phase denominator");
    cmd->add_option("--loops", loops, "number of loops n for the odometer builders");
    cmd->add_option("--word", word, "letter word, e.g. 12212 (inductive prefix or cycle)");
    cmd->add_flag("--eta0-in-ran", eta0_in_ran, "cycle of 1: take the branch with eta0 in ran V");
  }

  AtomicRep build(const ActionPtr& action) const {
    Phase lambda = Phase::rotation(lambda_num, lambda_den);
    std::vector<int> letters;
    for (char c : word) {
      if (c < '1' || c > '9') throw SchemaError("word letters must be 1..9");
      letters.push_back(c - '0');
    }
    if (builder == "inductive") return build_inductive_ck(loops, letters, depth);
    if (builder == "cycle") return build_cycle_ck(loops, letters, lambda, eta0_in_ran, depth);
    if (!action) throw SchemaError("builder " + builder + " needs an action document");
    int v = vertex.empty() ? 0 : action->graph().vertex_index(vertex);
    if (builder == "left-regular") return build_left_regular(action, v, depth);
    if (builder == "c-lambda") return build_c_lambda(action, v, lambda, depth);
    return build_unitary_pure(action, v, alpha, lambda, depth);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for self-similar semigroup actions on graphs: "
               "representations, Wold decompositions, dilations"};
  app.require_subcommand(1);

  std::string action_file, rep_file, out_file;
  int depth = 4, path_depth = -1, window = 6, reldepth = 3;
  std::uint64_t nval = 1;
  std::string path_arg, xarg, yarg, mode = "pure", orbit_edge, engine = "atomic";
  double tol = 1e-10;
  bool as_json = false;

  auto* vax = app.add_subcommand("verify-axioms", "bounded-exhaustive action axiom sweep");
  vax->add_option("action", action_file)->required();
  vax->add_option("--depth", depth, "max semigroup element (default 4)");
  vax->add_option("--path-depth", path_depth, "max path length (defaults to --depth)");
  vax->add_flag("--json", as_json);

  auto* act_cmd = app.add_subcommand("act", "apply n to a path");
  act_cmd->add_option("action", action_file)->required();
  act_cmd->add_option("--n", nval)->required();
  act_cmd->add_option("--path", path_arg, "comma-separated edge ids, range end first")->required();

  auto* res_cmd = app.add_subcommand("restrict", "restriction n|_path");
  res_cmd->add_option("action", action_file)->required();
  res_cmd->add_option("--n", nval)->required();
  res_cmd->add_option("--path", path_arg)->required();

  auto* orb = app.add_subcommand("orbits", "orbit table and structural constants");
  orb->add_option("action", action_file)->required();
  orb->add_flag("--json", as_json);

  auto* zs = app.add_subcommand("zs-mul", "product in the self-similar category");
  zs->add_option("action", action_file)->required();
  zs->add_option("x", xarg, "\"<mu>,<p>\" with mu comma-separated edges, ∅ or @v")
      ->required();
  zs->add_option("y", yarg)->required();

  RepSpec rspec;
  auto* brep = app.add_subcommand("build-rep", "build a representation and verify its relations");
  brep->add_option("action", action_file, "action document (odometer builders may omit it)");
  rspec.attach(brep);
  brep->add_option("--engine", engine, "atomic | matrix")
      ->check(CLI::IsMember({"atomic", "matrix"}));
  brep->add_option("--out", out_file, "write the representation document here");
  brep->add_option("--relations-depth", reldepth, "verification depth (default 3)");

  auto* wold_cmd = app.add_subcommand("wold", "classify a representation document");
  wold_cmd->add_option("rep", rep_file)->required();
  wold_cmd->add_flag("--json", as_json);

  auto* dil = app.add_subcommand("dilate", "construct and verify a dilation");
  dil->add_option("rep", rep_file)->required();
  dil->add_option("--mode", mode)->check(CLI::IsMember({"pure", "unitary-pure"}));
  dil->add_option("--orbit-edge", orbit_edge, "edge id whose orbit drives the fiber");
  dil->add_option("--window", window, "grid half-width K for the pure case");

  auto* chk = app.add_subcommand("check-dilation", "construct a dilation and test triviality");
  chk->add_option("rep", rep_file)->required();
  chk->add_option("--mode", mode)->check(CLI::IsMember({"pure", "unitary-pure"}));
  chk->add_option("--orbit-edge", orbit_edge);
  chk->add_option("--window", window);
  chk->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vax) {
      auto a = load_action_file(action_file);
      AxiomReport r = a->verify_axioms(depth, path_depth);
      if (as_json)
        std::cout << axiom_report_to_json(r).dump(2) << "\n";
      else {
        std::cout << (r.pass() ? "PASS" : "FAIL") << " (" << r.checks << " checks)\n";
        for (const auto& v : r.violations)
          std::cout << "  " << v.axiom << ": " << v.witness << "\n";
      }
      return r.pass() ? 0 : 1;
    }

    if (*act_cmd || *res_cmd) {
      auto a = load_action_file(action_file);
      Path mu = parse_path_arg(a->graph(), path_arg);
      if (*act_cmd)
        std::cout << plain_path(a->graph(), a->act(nval, mu)) << "\n";
      else
        std::cout << a->restrict(nval, mu) << "\n";
      return 0;
    }

    if (*orb) {
      auto a = load_action_file(action_file);
      const auto& t = a->orbits();
      const Graph& g = a->graph();
      json j;
      j["vertex_orbits"] = json::array();
      for (const auto& o : t.vertex_orbits) {
        json names = json::array();
        for (int v : o) names.push_back(g.vertex_id(v));
        j["vertex_orbits"].push_back(names);
      }
      j["edge_orbits"] = json::array();
      j["m_e"] = json::object();
      j["orbit_restriction_sum"] = json::object();
      for (const auto& o : t.edge_orbits) {
        json names = json::array();
        for (int e : o) names.push_back(g.edge_id(e));
        j["edge_orbits"].push_back(names);
        std::uint64_t sum = 0;
        for (int e : o) sum += a->rho(e);
        j["orbit_restriction_sum"][g.edge_id(o.front())] = sum;
      }
      for (int e = 0; e < g.num_edges(); ++e) j["m_e"][g.edge_id(e)] = t.m_e[e];
      j["assumption_A"] = a->check_assumption_A();
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*zs) {
      auto a = load_action_file(action_file);
      ZSElement x = parse_zs_arg(a->graph(), xarg);
      ZSElement y = parse_zs_arg(a->graph(), yarg);
      ZSElement p = zs_multiply(*a, x, y);
      std::cout << "(" << plain_path(a->graph(), p.mu) << ", " << p.p << ")\n";
      return 0;
    }

    if (*brep) {
      ActionPtr a;
      if (!action_file.empty()) a = load_action_file(action_file);
      AtomicRep rep = rspec.build(a);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << atomic_to_json(rep).dump(2) << "\n";
      }
      json report;
      RelationReport rel = verify_relations(rep, reldepth);
      report["relations"] = relation_report_to_json(rel);
      bool ok = rel.pass();
      if (engine == "matrix") {
        MatrixRep m = from_atomic(rep);
        json checks = json::array();
        const Graph& g = m.graph();
        auto add = [&](const GenWord& lhs, const GenWord& rhs) {
          try {
            IdentityCheck c = check_identity(m, lhs, rhs);
            checks.push_back({{"lhs", c.lhs},
                              {"rhs", c.rhs},
                              {"max_dev", c.max_dev},
                              {"cols", c.cols_checked},
                              {"pass", c.pass(1e-10)}});
            ok = ok && c.pass(1e-10);
          } catch (const InteriorTooSmall& e) {
            checks.push_back({{"lhs", word_str(g, lhs)},
                              {"rhs", word_str(g, rhs)},
                              {"skipped", e.what()}});
          }
        };
        for (int e = 0; e < g.num_edges(); ++e) {
          GenWord rhs{Gen::S(rep.action->eperm(e))};
          for (std::uint64_t i = 0; i < rep.action->rho(e); ++i) rhs.push_back(Gen::V());
          add({Gen::V(), Gen::S(e)}, rhs);
          add({Gen::Sstar(e), Gen::S(e)}, {Gen::P(g.edge_src(e))});
        }
        report["identity_checks"] = checks;
      }
      std::cout << report.dump(2) << "\n";
      return ok ? 0 : 1;
    }

    if (*wold_cmd) {
      AtomicRep rep = atomic_from_json(load_json_file(rep_file));
      WoldReport r = classify(rep);
      if (as_json)
        std::cout << wold_to_json(r).dump(2) << "\n";
      else
        std::cout << wold_table(r);
      return r.inconclusive ? 1 : 0;
    }

    if (*dil || *chk) {
      AtomicRep rep = atomic_from_json(load_json_file(rep_file));
      DilationResult d;
      if (mode == "pure") {
        d = dilate_pure_case(from_atomic(rep), window);
      } else {
        int e0 = orbit_edge.empty() ? 0 : rep.graph().edge_index(orbit_edge);
        d = dilate_unitary_pure(rep, e0);
      }
      if (*chk) {
        bool trivial = check_trivial(d, tol);
        std::cout << (trivial ? "trivial" : "nontrivial") << " (offcorner norm "
                  << d.offcorner_norm << ")\n";
        return 0;
      }
      std::cout << dilation_to_json(d).dump(2) << "\n";
      bool ok = d.embed_isometry_dev <= 1e-12 && d.compression_max_dev <= 1e-10;
      return ok ? 0 : 1;
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
