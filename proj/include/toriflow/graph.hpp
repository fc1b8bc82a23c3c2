// Domain types: directed graphs with arc bounds, flow polytope specs,
// transportation specs, integer flows.
//
// A flow polytope is { f >= 0 : for each vertex v, inflow(f,v) - outflow(f,v)
// = demand(v), and lower <= f <= upper arcwise }.  The constraint matrix is
// totally unimodular, so the polytope has integral vertices.  Transportation
// polytopes (m x n tables with fixed row/column sums) are the special case of
// complete bipartite graphs; the conversion keeps entries in row-major order
// so table vectors and flow vectors coincide.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toriflow/common.hpp"
#include "toriflow/intlinalg.hpp"

namespace toriflow {

struct Arc {
    std::string id;
    int tail = 0;   // vertex index
    int head = 0;   // vertex index
    Coord lower = 0;
    Coord upper = 0;
};

struct DirectedGraph {
    std::vector<std::string> vertices;  // ids, unique
    std::vector<Arc> arcs;              // ids unique; order defines coordinates

    int vertex_index(const std::string& id) const;  // throws on unknown id
    int find_vertex(const std::string& id) const;   // -1 on unknown id
    int find_arc(const std::string& id) const;      // -1 on unknown id
    void add_vertex(const std::string& id) { vertices.push_back(id); }
    void add_arc(const std::string& id, int tail, int head, Coord lower, Coord upper) {
        arcs.push_back(Arc{id, tail, head, lower, upper});
    }
    // Validates id uniqueness and endpoint indices; returns warnings
    // (currently: loops, which carry no conservation constraint).
    std::vector<std::string> validate() const;
};

struct FlowPolytopeSpec {
    DirectedGraph graph;
    std::vector<Coord> demand;  // per vertex; inflow - outflow = demand
    bool homogenized = false;   // true if an auxiliary unit arc was appended

    int num_arcs() const { return static_cast<int>(graph.arcs.size()); }
    int num_vertices() const { return static_cast<int>(graph.vertices.size()); }
    // Throws InputError unless lower<=upper arcwise and demands sum to zero.
    void validate() const;
};

struct TransportationSpec {
    std::vector<Coord> rows;  // length m, row sums
    std::vector<Coord> cols;  // length n, column sums
    // optional entrywise bounds, row-major m*n
    std::optional<std::vector<Coord>> lower;
    std::optional<std::vector<Coord>> upper;

    int m() const { return static_cast<int>(rows.size()); }
    int n() const { return static_cast<int>(cols.size()); }
    void validate() const;  // margins nonnegative, equal sums, bound shapes
};

struct IntegerFlow {
    std::vector<Coord> values;  // per arc, in arc order
};

// Vertex-by-arc incidence matrix: -1 at tail, +1 at head, loop columns zero.
IMat incidence_matrix(const DirectedGraph& g);

// nullopt when valid; otherwise a description of the violated constraint.
std::optional<std::string> validate_flow(const FlowPolytopeSpec& spec,
                                         const IntegerFlow& f);

// Bipartite-graph flow spec whose lattice points are the tables of `t` in
// row-major order. Vertices: r0..r{m-1}, c0..c{n-1}; arc i->j has id
// "a<i>_<j>", bounds from t (default lower 0, upper min(rows[i], cols[j])).
// Row vertices carry demand -rows[i] (flow leaves), column vertices +cols[j].
FlowPolytopeSpec transportation_as_flow(const TransportationSpec& t);

// If the polytope already lies on an affine hyperplane missing the origin
// (any nonzero demand does this), returns spec unchanged. Otherwise appends
// two fresh vertices joined by one arc with lower = upper = 1 and marks the
// spec homogenized, realizing {1} x F.
FlowPolytopeSpec homogenize(const FlowPolytopeSpec& spec);

}  // namespace toriflow
