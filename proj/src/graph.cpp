#include "toriflow/graph.hpp"

#include <map>
#include <numeric>
#include <set>

namespace toriflow {

int DirectedGraph::vertex_index(const std::string& id) const {
    int i = find_vertex(id);
    if (i < 0) throw InputError("unknown vertex id: " + id);
    return i;
}

int DirectedGraph::find_vertex(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return static_cast<int>(i);
    return -1;
}

int DirectedGraph::find_arc(const std::string& id) const {
    for (size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].id == id) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> DirectedGraph::validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size()) throw InputError("duplicate vertex ids");
    std::set<std::string> as;
    std::vector<std::string> warnings;
    for (const Arc& a : arcs) {
        if (!as.insert(a.id).second) throw InputError("duplicate arc id: " + a.id);
        if (a.tail < 0 || a.tail >= static_cast<int>(vertices.size()) ||
            a.head < 0 || a.head >= static_cast<int>(vertices.size()))
            throw InputError("arc endpoint out of range: " + a.id);
        if (a.tail == a.head)
            warnings.push_back("loop arc " + a.id + " carries no conservation constraint");
    }
    return warnings;
}

void FlowPolytopeSpec::validate() const {
    graph.validate();
    if (demand.size() != graph.vertices.size())
        throw InputError("demand vector length does not match vertex count");
    for (const Arc& a : graph.arcs) {
        if (a.lower < 0) throw InputError("negative lower bound on arc " + a.id);
        if (a.lower > a.upper)
            throw InputError("lower bound exceeds upper bound on arc " + a.id);
    }
    Coord total = std::accumulate(demand.begin(), demand.end(), Coord(0));
    if (total != 0) throw InputError("demands do not sum to zero");
}

void TransportationSpec::validate() const {
    if (rows.empty() || cols.empty()) throw InputError("empty margins");
    for (Coord r : rows)
        if (r < 0) throw InputError("negative row margin");
    for (Coord c : cols)
        if (c < 0) throw InputError("negative column margin");
    Coord sr = std::accumulate(rows.begin(), rows.end(), Coord(0));
    Coord sc = std::accumulate(cols.begin(), cols.end(), Coord(0));
    if (sr != sc) throw InputError("row and column margins have different totals");
    size_t mn = rows.size() * cols.size();
    if (lower && lower->size() != mn) throw InputError("lower bound matrix shape mismatch");
    if (upper && upper->size() != mn) throw InputError("upper bound matrix shape mismatch");
}

IMat incidence_matrix(const DirectedGraph& g) {
    IMat m(static_cast<int>(g.vertices.size()), static_cast<int>(g.arcs.size()));
    for (size_t j = 0; j < g.arcs.size(); ++j) {
        const Arc& a = g.arcs[j];
        if (a.tail == a.head) continue;  // loop column stays zero
        m.at(a.tail, static_cast<int>(j)) -= 1;
        m.at(a.head, static_cast<int>(j)) += 1;
    }
    return m;
}

std::optional<std::string> validate_flow(const FlowPolytopeSpec& spec,
                                         const IntegerFlow& f) {
    if (f.values.size() != spec.graph.arcs.size())
        return "flow has wrong number of arc values";
    for (size_t j = 0; j < f.values.size(); ++j) {
        const Arc& a = spec.graph.arcs[j];
        if (f.values[j] < a.lower)
            return "flow below lower bound on arc " + a.id;
        if (f.values[j] > a.upper)
            return "flow above upper bound on arc " + a.id;
    }
    std::vector<Coord> net(spec.graph.vertices.size(), 0);
    for (size_t j = 0; j < f.values.size(); ++j) {
        const Arc& a = spec.graph.arcs[j];
        if (a.tail == a.head) continue;
        net[static_cast<size_t>(a.head)] += f.values[j];
        net[static_cast<size_t>(a.tail)] -= f.values[j];
    }
    for (size_t v = 0; v < net.size(); ++v)
        if (net[v] != spec.demand[v])
            return "conservation violated at vertex " + spec.graph.vertices[v];
    return std::nullopt;
}

FlowPolytopeSpec transportation_as_flow(const TransportationSpec& t) {
    t.validate();
    FlowPolytopeSpec spec;
    int m = t.m(), n = t.n();
    for (int i = 0; i < m; ++i) spec.graph.vertices.push_back("r" + std::to_string(i));
    for (int j = 0; j < n; ++j) spec.graph.vertices.push_back("c" + std::to_string(j));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            Arc a;
            a.id = "a" + std::to_string(i) + "_" + std::to_string(j);
            a.tail = i;
            a.head = m + j;
            size_t k = static_cast<size_t>(i) * n + j;
            a.lower = t.lower ? (*t.lower)[k] : 0;
            a.upper = t.upper ? (*t.upper)[k] : std::min(t.rows[static_cast<size_t>(i)],
                                                         t.cols[static_cast<size_t>(j)]);
            spec.graph.arcs.push_back(a);
        }
    }
    for (int i = 0; i < m; ++i) spec.demand.push_back(-t.rows[static_cast<size_t>(i)]);
    for (int j = 0; j < n; ++j) spec.demand.push_back(t.cols[static_cast<size_t>(j)]);
    spec.validate();
    return spec;
}

FlowPolytopeSpec homogenize(const FlowPolytopeSpec& spec) {
    spec.validate();
    for (Coord d : spec.demand)
        if (d != 0) return spec;  // nonzero demand already forces a hyperplane off 0
    FlowPolytopeSpec out = spec;
    int v0 = out.num_vertices();
    out.graph.vertices.push_back("_h0");
    out.graph.vertices.push_back("_h1");
    Arc a;
    a.id = "_unit";
    a.tail = v0;
    a.head = v0 + 1;
    a.lower = 1;
    a.upper = 1;
    out.graph.arcs.push_back(a);
    out.demand.push_back(-1);
    out.demand.push_back(1);
    out.homogenized = true;
    out.validate();
    return out;
}

}  // namespace toriflow
