#include "toriflow/jsonio.hpp"

#include <fstream>

namespace toriflow {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

Coord as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<Coord>();
}

std::vector<Coord> int_array(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<Coord> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(as_int(e, what));
    return out;
}

// Accepts null, a nested m x n array, or a flat array of length m*n.
std::optional<std::vector<Coord>> bound_matrix(const json& j, int m, int n,
                                               const char* what) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array()) bad(std::string(what) + " must be null or an array");
    std::vector<Coord> out;
    if (!j.empty() && j[0].is_array()) {
        if (static_cast<int>(j.size()) != m) bad(std::string(what) + " row count mismatch");
        for (const auto& row : j) {
            if (static_cast<int>(row.size()) != n)
                bad(std::string(what) + " column count mismatch");
            for (const auto& e : row) out.push_back(as_int(e, what));
        }
    } else {
        out = int_array(j, what);
        if (static_cast<int>(out.size()) != m * n)
            bad(std::string(what) + " must have m*n entries");
    }
    return out;
}

std::string vertex_id(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    bad("vertex ids must be strings or integers");
}

FlowPolytopeSpec graph_from_json(const json& j) {
    FlowPolytopeSpec spec;
    if (!j.contains("vertices") || !j.contains("arcs"))
        bad("flow graph needs \"vertices\" and \"arcs\"");
    for (const auto& v : j.at("vertices")) spec.graph.add_vertex(vertex_id(v));
    for (const auto& a : j.at("arcs")) {
        if (!a.is_object()) bad("each arc must be an object");
        std::string tail = vertex_id(a.at("tail"));
        std::string head = vertex_id(a.at("head"));
        int ti = spec.graph.find_vertex(tail);
        int hi = spec.graph.find_vertex(head);
        if (ti < 0) bad("unknown arc tail: " + tail);
        if (hi < 0) bad("unknown arc head: " + head);
        std::string id = a.contains("id") ? a.at("id").get<std::string>()
                                          : tail + "->" + head;
        Coord lo = a.contains("lower") ? as_int(a.at("lower"), "arc lower") : 0;
        if (!a.contains("upper")) bad("arc " + id + " needs an upper bound");
        Coord hi_b = as_int(a.at("upper"), "arc upper");
        spec.graph.add_arc(id, ti, hi, lo, hi_b);
    }
    spec.demand.assign(static_cast<size_t>(spec.num_vertices()), 0);
    if (j.contains("demand")) {
        const auto& d = j.at("demand");
        if (!d.is_object()) bad("\"demand\" must map vertex ids to integers");
        for (auto it = d.begin(); it != d.end(); ++it) {
            int vi = spec.graph.find_vertex(it.key());
            if (vi < 0) bad("demand references unknown vertex: " + it.key());
            spec.demand[static_cast<size_t>(vi)] = as_int(it.value(), "demand");
        }
    }
    spec.validate();
    return spec;
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        bad("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

ParsedProblem problem_from_json(const json& j) {
    if (!j.is_object()) bad("problem must be a JSON object");
    ParsedProblem p;
    if (j.contains("rows")) {
        TransportationSpec t;
        t.rows = int_array(j.at("rows"), "rows");
        if (!j.contains("cols")) bad("transportation spec needs \"cols\"");
        t.cols = int_array(j.at("cols"), "cols");
        if (j.contains("lower"))
            t.lower = bound_matrix(j.at("lower"), t.m(), t.n(), "lower");
        if (j.contains("upper"))
            t.upper = bound_matrix(j.at("upper"), t.m(), t.n(), "upper");
        t.validate();
        p.transport = t;
        p.spec = transportation_as_flow(t);
    } else {
        p.spec = graph_from_json(j);
    }
    return p;
}

ParsedProblem load_problem(const std::string& path) {
    return problem_from_json(load_json_file(path));
}

json spec_to_json(const FlowPolytopeSpec& spec) {
    json arcs = json::array();
    for (const Arc& a : spec.graph.arcs)
        arcs.push_back({{"id", a.id},
                        {"tail", spec.graph.vertices[static_cast<size_t>(a.tail)]},
                        {"head", spec.graph.vertices[static_cast<size_t>(a.head)]},
                        {"lower", a.lower},
                        {"upper", a.upper}});
    json demand = json::object();
    for (int v = 0; v < spec.num_vertices(); ++v)
        demand[spec.graph.vertices[static_cast<size_t>(v)]] = spec.demand[static_cast<size_t>(v)];
    return {{"vertices", spec.graph.vertices}, {"arcs", arcs}, {"demand", demand}};
}

json transportation_to_json(const TransportationSpec& t) {
    json j{{"rows", t.rows}, {"cols", t.cols}, {"lower", nullptr}, {"upper", nullptr}};
    auto emit = [&](const std::vector<Coord>& flat) {
        json rows = json::array();
        for (int i = 0; i < t.m(); ++i) {
            json row = json::array();
            for (int k = 0; k < t.n(); ++k)
                row.push_back(flat[static_cast<size_t>(i * t.n() + k)]);
            rows.push_back(row);
        }
        return rows;
    };
    if (t.lower) j["lower"] = emit(*t.lower);
    if (t.upper) j["upper"] = emit(*t.upper);
    return j;
}

IntegerFlow flow_from_json(const json& j, const FlowPolytopeSpec& spec) {
    IntegerFlow f;
    size_t na = static_cast<size_t>(spec.num_arcs());
    if (j.is_array()) {
        f.values = int_array(j, "flow");
    } else if (j.is_object() && j.contains("values")) {
        const auto& v = j.at("values");
        if (v.is_array()) {
            f.values = int_array(v, "flow values");
        } else if (v.is_object()) {
            f.values.assign(na, 0);
            std::vector<bool> seen(na, false);
            for (auto it = v.begin(); it != v.end(); ++it) {
                int a = spec.graph.find_arc(it.key());
                if (a < 0) bad("flow references unknown arc: " + it.key());
                f.values[static_cast<size_t>(a)] = as_int(it.value(), "flow value");
                seen[static_cast<size_t>(a)] = true;
            }
            for (size_t a = 0; a < na; ++a)
                if (!seen[a]) bad("flow missing arc: " + spec.graph.arcs[a].id);
        } else {
            bad("\"values\" must be an array or object");
        }
    } else {
        bad("flow must be an array or {\"values\": ...}");
    }
    if (f.values.size() != na) bad("flow has wrong number of coordinates");
    return f;
}

json flow_to_json(const IntegerFlow& f, const FlowPolytopeSpec& spec) {
    json values = json::object();
    for (size_t a = 0; a < f.values.size(); ++a)
        values[spec.graph.arcs[a].id] = f.values[a];
    return {{"values", values}};
}

std::vector<int> ranking_from_json(const json& j, int num_points) {
    if (!j.is_array()) bad("ranking must be an array of point indices");
    std::vector<int> r;
    std::vector<bool> seen(static_cast<size_t>(num_points), false);
    for (const auto& e : j) {
        Coord v = as_int(e, "ranking entry");
        if (v < 0 || v >= num_points) bad("ranking index out of range");
        if (seen[static_cast<size_t>(v)]) bad("ranking repeats an index");
        seen[static_cast<size_t>(v)] = true;
        r.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(r.size()) != num_points)
        bad("ranking must list every point exactly once");
    return r;
}

json points_to_json(const std::vector<Vec>& pts) {
    json out = json::array();
    for (const Vec& p : pts) out.push_back(p);
    return out;
}

}  // namespace toriflow
