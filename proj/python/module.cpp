// Python bindings: a Problem handle wrapping a flow polytope spec plus
// module-level constructors for the worst-case families and the acceptance
// suite.  Heterogeneous results come back as plain dicts so callers can
// json-dump them directly.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "toriflow/acceptance.hpp"
#include "toriflow/cells.hpp"
#include "toriflow/common.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/markov.hpp"
#include "toriflow/netflow.hpp"
#include "toriflow/order.hpp"
#include "toriflow/toric.hpp"
#include "toriflow/transform.hpp"
#include "toriflow/triangulate.hpp"
#include "toriflow/worstcase.hpp"

namespace py = pybind11;
using namespace toriflow;

namespace {

struct Problem {
    FlowPolytopeSpec spec;
};

using ArcTuple = std::tuple<std::string, std::string, std::string, Coord, Coord>;

Problem make_transportation(std::vector<Coord> rows, std::vector<Coord> cols) {
    TransportationSpec t;
    t.rows = std::move(rows);
    t.cols = std::move(cols);
    t.validate();
    return Problem{transportation_as_flow(t)};
}

Problem make_flow_graph(const std::vector<std::string>& vertices,
                        const std::vector<ArcTuple>& arcs,
                        const std::map<std::string, Coord>& demand) {
    FlowPolytopeSpec spec;
    for (const std::string& v : vertices) spec.graph.add_vertex(v);
    for (const auto& [id, tail, head, lower, upper] : arcs) {
        int t = spec.graph.find_vertex(tail), h = spec.graph.find_vertex(head);
        if (t < 0) throw InputError("arc references unknown vertex: " + tail);
        if (h < 0) throw InputError("arc references unknown vertex: " + head);
        spec.graph.add_arc(id, t, h, lower, upper);
    }
    spec.demand.assign(vertices.size(), 0);
    for (const auto& [name, d] : demand) {
        int v = spec.graph.find_vertex(name);
        if (v < 0) throw InputError("demand references unknown vertex: " + name);
        spec.demand[static_cast<size_t>(v)] = d;
    }
    spec.validate();
    return Problem{spec};
}

Caps make_caps(long long cap_points, double cap_seconds = 0.0, int degree_cap = 0) {
    Caps c;
    c.max_points = cap_points;
    c.max_seconds = cap_seconds;
    c.degree_cap = degree_cap;
    return c;
}

std::vector<Vec> problem_points(const Problem& p, long long cap_points) {
    return enumerate_lattice_points(p.spec, make_caps(cap_points)).points;
}

py::list binomials_to_pairs(const std::vector<Binomial>& bs) {
    py::list out;
    for (const Binomial& b : bs) out.append(py::make_tuple(b.lead, b.trail));
    return out;
}

TermOrder order_for(int n, const std::optional<std::vector<int>>& ranking) {
    return ranking ? order_from_ranking(*ranking) : grevlex_order(n);
}

py::dict gb_dict(const Problem& p, const std::optional<std::vector<int>>& ranking,
                 long long cap_points, double cap_seconds, int degree_cap) {
    FlowPolytopeSpec hspec = homogenize(p.spec);
    PointList pts = enumerate_lattice_points(hspec, make_caps(cap_points));
    GBResult gb = toric_groebner_basis(pts.points, order_for(pts.size(), ranking),
                                       make_caps(cap_points, cap_seconds, degree_cap));
    Coord maxdeg = 0;
    for (const Binomial& b : gb.basis) maxdeg = std::max(maxdeg, b.degree());
    py::dict d;
    d["status"] = gb.status == GBStatus::complete          ? "complete"
                  : gb.status == GBStatus::degree_truncated ? "degree_truncated"
                                                            : "time_truncated";
    d["homogenized"] = hspec.homogenized;
    d["points"] = pts.points;
    d["basis"] = binomials_to_pairs(gb.basis);
    d["max_degree"] = maxdeg;
    return d;
}

py::dict triangulate_dict(const Problem& p, const std::optional<std::vector<int>>& ranking,
                          long long cap_points) {
    PointList pts = enumerate_lattice_points(p.spec, make_caps(cap_points));
    Triangulation tri = pull_triangulate(p.spec, pts, ranking.value_or(std::vector<int>{}));
    py::dict d;
    d["dimension"] = tri.dim;
    d["simplices"] = tri.simplices;
    d["unimodular"] = is_unimodular(pts.points, tri);
    return d;
}

py::list cells_list(const Problem& p, long long cap_points) {
    PointList pts = enumerate_lattice_points(p.spec, make_caps(cap_points));
    py::list out;
    for (const Cell& c : covering_cells(p.spec, pts)) {
        py::dict d;
        d["offset"] = c.offset;
        d["point_ids"] = c.point_ids;
        out.append(d);
    }
    return out;
}

std::vector<Vec> decompose_list(const Problem& p, const Vec& flow, int k) {
    DecomposeResult dec = decompose_flow(p.spec, IntegerFlow{flow}, k);
    if (!dec.ok()) throw InputError("flow does not decompose: " + dec.error);
    std::vector<Vec> parts;
    for (const IntegerFlow& f : dec.decomposition->parts) parts.push_back(f.values);
    return parts;
}

MoveSet moves_for(const Problem& p, long long cap_points, int move_degree) {
    PointList pts = enumerate_lattice_points(p.spec, make_caps(cap_points));
    MoveSet all = generate_moves_deg23(p.spec, pts), used;
    for (const Binomial& b : all.moves)
        if (b.degree() <= move_degree) used.moves.push_back(b);
    return used;
}

py::dict fiber_check_dict(const Problem& p, const Vec& target, int k, int move_degree,
                          long long cap_points) {
    PointList pts = enumerate_lattice_points(p.spec, make_caps(cap_points));
    MoveSet used = moves_for(p, cap_points, move_degree);
    Fiber fiber = enumerate_fiber(pts, target, k, make_caps(cap_points));
    FiberConnectivity conn = fiber_connected(fiber, used);
    py::dict d;
    d["fiber_size"] = fiber.elements.size();
    d["connected"] = conn.connected;
    d["components"] = conn.components.size();
    return d;
}

py::dict sample_dict(const Problem& p, const Vec& target, int k, long long steps,
                     std::uint64_t seed, long long burn_in, long long cap_points) {
    PointList pts = enumerate_lattice_points(p.spec, make_caps(cap_points));
    MoveSet moves = generate_moves_deg23(p.spec, pts);
    std::map<Vec, long long> visits;
    Vec final_state =
        sample_fiber(p.spec, pts, target, k, moves, steps, seed, burn_in, &visits);
    py::dict tally;
    for (const auto& [state, count] : visits)
        tally[py::tuple(py::cast(state))] = count;
    py::dict d;
    d["final_state"] = final_state;
    d["visits"] = tally;
    d["points"] = pts.points;
    return d;
}

py::dict bipartize_dict(const Problem& p, long long cap_points) {
    BipartizeResult bp = bipartize(p.spec);
    PointList pts = enumerate_lattice_points(bp.original, make_caps(cap_points));
    py::list phi;
    for (int i = 0; i < pts.size(); ++i)
        phi.append(py::make_tuple(pts[i], bp.forward(pts[i])));
    py::dict d;
    d["slack_cap"] = bp.slack_cap;
    d["transformed"] = Problem{bp.transformed};
    d["phi"] = phi;
    return d;
}

py::list named_tables(const std::vector<Vec>& tables, const std::vector<std::string>& names,
                      int cols) {
    py::list out;
    for (size_t i = 0; i < tables.size(); ++i) {
        std::vector<std::vector<Coord>> rows;
        for (size_t p = 0; p < tables[i].size(); p += static_cast<size_t>(cols))
            rows.emplace_back(tables[i].begin() + static_cast<long>(p),
                              tables[i].begin() + static_cast<long>(p) + cols);
        out.append(py::make_tuple(names[i], rows));
    }
    return out;
}

py::dict instance_dict(const WorstCaseInstance& inst) {
    CoverReport cover = covering_certificate(inst);
    py::dict cert;
    cert["necessity"] = cover.necessity;
    cert["privacy"] = cover.privacy;
    cert["failures"] = cover.failures;
    py::dict d;
    d["family"] = inst.family == WorstCaseFamily::birkhoff ? "birkhoff"
                  : inst.family == WorstCaseFamily::transportation
                      ? "transportation"
                      : "transportation_smooth";
    d["row_margins"] = inst.margins.rows;
    d["col_margins"] = inst.margins.cols;
    d["degree"] = inst.degree();
    d["lead"] = named_tables(inst.lead_tables, inst.lead_names, inst.table_cols());
    d["trail"] = named_tables(inst.trail_tables, inst.trail_names, inst.table_cols());
    d["certificate"] = cert;
    d["problem"] = Problem{inst.spec};
    return d;
}

py::list acceptance_list() {
    AcceptanceReport rep = run_acceptance(nullptr);
    py::list out;
    for (const CriterionResult& c : rep.criteria) {
        py::dict d;
        d["number"] = c.number;
        d["title"] = c.title;
        d["passed"] = c.passed;
        d["detail"] = c.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "toric ideals of flow and transportation polytopes";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    py::class_<Problem>(m, "Problem")
        .def_property_readonly("num_arcs",
                               [](const Problem& p) { return p.spec.num_arcs(); })
        .def_property_readonly("num_vertices",
                               [](const Problem& p) { return p.spec.num_vertices(); })
        .def_property_readonly("arc_ids",
                               [](const Problem& p) {
                                   std::vector<std::string> ids;
                                   for (const Arc& a : p.spec.graph.arcs) ids.push_back(a.id);
                                   return ids;
                               })
        .def("points", &problem_points, py::arg("cap_points") = 1000000,
             "enumerate the lattice points")
        .def("cells", &cells_list, py::arg("cap_points") = 1000000,
             "covering unit-window cells")
        .def("decompose", &decompose_list, py::arg("flow"), py::arg("k"),
             "write a flow as a sum of k lattice points")
        .def("groebner_basis", &gb_dict, py::arg("ranking") = py::none(),
             py::arg("cap_points") = 1000000, py::arg("cap_seconds") = 0.0,
             py::arg("degree_cap") = 0,
             "reduced Groebner basis of the toric ideal")
        .def("triangulate", &triangulate_dict, py::arg("ranking") = py::none(),
             py::arg("cap_points") = 1000000, "subdivide-and-pull triangulation")
        .def("moves",
             [](const Problem& p, long long cap_points, int move_degree) {
                 return binomials_to_pairs(moves_for(p, cap_points, move_degree).moves);
             },
             py::arg("cap_points") = 1000000, py::arg("move_degree") = 3,
             "degree-<=3 fiber moves as (lead, trail) exponent pairs")
        .def("fiber_check", &fiber_check_dict, py::arg("target"), py::arg("k"),
             py::arg("move_degree") = 3, py::arg("cap_points") = 1000000,
             "connectivity of one fiber under the moves")
        .def("sample", &sample_dict, py::arg("target"), py::arg("k"), py::arg("steps"),
             py::arg("seed"), py::arg("burn_in") = 0, py::arg("cap_points") = 1000000,
             "uniform random walk over one fiber")
        .def("bipartize", &bipartize_dict, py::arg("cap_points") = 1000000,
             "vertex-splitting bipartite transform with the point map");

    m.def("transportation", &make_transportation, py::arg("rows"), py::arg("cols"),
          "transportation polytope T(rows, cols) as a flow problem");
    m.def("flow_graph", &make_flow_graph, py::arg("vertices"), py::arg("arcs"),
          py::arg("demand"),
          "flow polytope from (id, tail, head, lower, upper) arcs and a demand map");
    m.def("birkhoff_family",
          [](int n) { return instance_dict(birkhoff_family(n)); }, py::arg("n"),
          "degree-2n relation family in the Birkhoff polytope B_{2n}");
    m.def("transport_family",
          [](int mm, int nn, bool smooth) {
              WorstCaseInstance inst = transport_family(mm, nn);
              if (smooth) inst = smooth_shift(inst);
              return instance_dict(inst);
          },
          py::arg("m"), py::arg("n"), py::arg("smooth") = false,
          "degree-m(n-2)/2 relation family in an m x n transportation polytope");
    m.def("run_acceptance", &acceptance_list, "run the acceptance criteria");
}
