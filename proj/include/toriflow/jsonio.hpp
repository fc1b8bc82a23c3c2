// JSON parsing/serialization for problem inputs and common outputs.
//
// Problem files come in two shapes, distinguished by their keys:
//   flow graph:      {"vertices": [...], "arcs": [{"id","tail","head",
//                     "lower","upper"}...], "demand": {vertex: int}}
//   transportation:  {"rows": [...], "cols": [...], "lower": null|matrix,
//                     "upper": null|matrix}   (matrices row-major, nested
//                     or flat)
// Flows are {"values": {arcId: int}} or a bare coordinate array; rankings
// are arrays of point indices (most expensive first).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toriflow/graph.hpp"

namespace toriflow {

using json = nlohmann::json;

struct ParsedProblem {
    FlowPolytopeSpec spec;
    std::optional<TransportationSpec> transport;  // set when input was tabular
};

json load_json_file(const std::string& path);

ParsedProblem problem_from_json(const json& j);
ParsedProblem load_problem(const std::string& path);

json spec_to_json(const FlowPolytopeSpec& spec);
json transportation_to_json(const TransportationSpec& t);

IntegerFlow flow_from_json(const json& j, const FlowPolytopeSpec& spec);
json flow_to_json(const IntegerFlow& f, const FlowPolytopeSpec& spec);

std::vector<int> ranking_from_json(const json& j, int num_points);

json points_to_json(const std::vector<Vec>& pts);

}  // namespace toriflow
