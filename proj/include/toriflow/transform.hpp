// Reduction of an arbitrary flow polytope to a bipartite one.
//
// Every vertex v splits into a tail copy v' and a head copy v''. An arc
// (v,w) becomes (v',w'') with the same bounds, and a slack arc (v',v'')
// is added per vertex. With N at least every vertex's total in- and
// out-capacity, demands d'(v') = -N and d'(v'') = N + d(v) make
//
//   f  |->  (f, N - outflow(f,v) for each v)
//
// a bijection between the lattice points of F(G) and F(G'); it is degree-
// linear, so it identifies the fibers, relations, and Markov moves of the
// two polytopes. The slack arcs need no upper bound; we cap them at N,
// which slack values never exceed.
#pragma once

#include <string>
#include <vector>

#include "toriflow/common.hpp"
#include "toriflow/graph.hpp"

namespace toriflow {

struct BipartizeResult {
    FlowPolytopeSpec original;
    FlowPolytopeSpec transformed;
    Coord slack_cap = 0;  // N; also the finite stand-in for the unbounded slack arcs

    // Lattice point of F(original) -> lattice point of F(transformed):
    // appends N - outflow(v) per vertex. Throws InputError off the polytope.
    Vec forward(const Vec& f) const;
    // Inverse: drops the slack coordinates. Throws InputError off F(transformed).
    Vec backward(const Vec& g) const;
};

// Splits every vertex; the result's arcs are the original arcs in order
// (tail copy -> head copy) followed by one slack arc per vertex in vertex
// order, so forward/backward are append/truncate.
BipartizeResult bipartize(const FlowPolytopeSpec& spec);

struct IsoReport {
    bool ok = true;
    std::string detail;  // first failure, empty when ok
    int points = 0;      // shared lattice point count
    // index k-1 = degree k, for k = 1..k_max
    std::vector<long long> fibers_per_degree;
    std::vector<long long> relations_per_degree;        // original side
    std::vector<long long> relations_per_degree_right;  // transformed side
    int moves = 0;        // degree <= 3 move count, original side
    int moves_right = 0;  // transformed side (cell structure may differ)
    long long fibers_checked = 0;  // fibers compared for move connectivity
};

// Checks that `forward` really is a degree-preserving monoid isomorphism on
// lattice points, up to degree k_max: the point sets correspond bijectively,
// and for every degree the fibers (multisets of points grouped by their sum)
// of the two polytopes match under element-wise relabeling. Relation counts
// per degree are reported for both sides, and each fiber of degree <= 3 must
// have the same connectivity under either side's own generated move set.
// Caps bound the enumeration work.
IsoReport verify_semigroup_iso(const BipartizeResult& bp, int k_max,
                               const Caps& caps = Caps{});

}  // namespace toriflow
