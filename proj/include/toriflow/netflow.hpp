// Integer feasibility for flow specs and decomposition of flows into sums of
// k in-bounds flows ("k-part decomposition").  Transportation specs with unit
// effective bounds make this the classical decomposition of a doubly
// stochastic-style table into permutation-style tables.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toriflow/graph.hpp"

namespace toriflow {

struct CutCertificate {
    // S-side vertex indices of a violated cut: the demand into the set
    // exceeds what bounds let cross. Empty when feasible.
    std::vector<int> vertex_set;
    Coord demand_into = 0;  // required net flow into the set
    Coord capacity_in = 0;  // max net flow into the set permitted by bounds
    std::string describe(const FlowPolytopeSpec& spec) const;
};

struct FeasibilityResult {
    std::optional<IntegerFlow> flow;   // set iff feasible
    std::optional<CutCertificate> cut; // set iff infeasible
    bool feasible() const { return flow.has_value(); }
};

// Finds an integer point of the spec or a violated-cut certificate.
// Deterministic (Edmonds-Karp over arcs in declaration order).
FeasibilityResult find_integer_flow(const FlowPolytopeSpec& spec);

struct Decomposition {
    std::vector<IntegerFlow> parts;  // each in bounds, summing to the input
};

struct DecomposeResult {
    std::optional<Decomposition> decomposition;
    std::string error;  // set iff decomposition is not
    bool ok() const { return decomposition.has_value(); }
};

// Decompose `total` (a flow for the spec with demands k*spec.demand) into k
// flows of `spec`. Greedy one-part-at-a-time with exact per-arc windows
// max(l, rest-(j-1)u) <= part <= min(u, rest-(j-1)l), which never dead-ends:
// rest/j is a rational point of every stage polytope and the stage system is
// totally unimodular, so a decomposition exists whenever `total` sits inside
// the k-dilated bounds (the only failure mode, reported in `error`).
DecomposeResult decompose_flow(const FlowPolytopeSpec& spec, const IntegerFlow& total,
                               int k);

// Convenience for tables: decompose an m x n table with margins k*(r,c) into
// k tables with margins (r,c), honoring t's entry bounds.
DecomposeResult decompose_table(const TransportationSpec& t, const std::vector<Coord>& table,
                                int k);

}  // namespace toriflow
