#ifndef SSG_JSON_IO_HPP
#define SSG_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "ssg/atomic.hpp"
#include "ssg/dilation.hpp"
#include "ssg/wold.hpp"

namespace ssg {

// All loaders enforce a strict schema: unknown keys are rejected with the
// offending JSON path in the message.

Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

ActionPtr action_from_json(const nlohmann::json& j, bool validate = true);
nlohmann::json action_to_json(const SelfSimilarAction& a);

Phase phase_from_json(const nlohmann::json& j);
nlohmann::json phase_to_json(const Phase& p);

AtomicRep atomic_from_json(const nlohmann::json& j);
nlohmann::json atomic_to_json(const AtomicRep& rep);

nlohmann::json axiom_report_to_json(const AxiomReport& r);
nlohmann::json relation_report_to_json(const RelationReport& r);
nlohmann::json wold_to_json(const WoldReport& r);
std::string wold_table(const WoldReport& r);
nlohmann::json dilation_to_json(const DilationResult& d);

nlohmann::json load_json_file(const std::string& path);
ActionPtr load_action_file(const std::string& path, bool validate = true);

}  // namespace ssg

#endif
