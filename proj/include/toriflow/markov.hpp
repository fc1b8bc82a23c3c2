// Degree <= 3 Markov moves for flow polytopes, fiber enumeration and
// connectivity, the distance-reduction rewrite step, and a fiber sampler.
//
// The generating move set combines every quadratic relation of the full
// configuration with the cubic relations local to each covering cell: higher
// cross-cell relations are consequences, so this pool connects every fiber.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toriflow/cells.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"
#include "toriflow/toric.hpp"

namespace toriflow {

struct MoveSet {
    std::vector<Binomial> moves;  // sorted, deduplicated, lexicographic lead
    int size() const { return static_cast<int>(moves.size()); }
};

// All degree-2 binomial relations among the points plus the degree-3
// relations with support inside a single covering cell (supports disjoint
// after cancelling, images equal).
MoveSet generate_moves_deg23(const FlowPolytopeSpec& spec, const PointList& pts);

struct Fiber {
    Vec target;                 // common weighted point sum
    int degree = 0;             // multiset size k
    std::vector<Vec> elements;  // exponent vectors over the points
};

// Every exponent vector of total degree k whose weighted point sum is
// `target`.  Caps bound the element count and wall time.
Fiber enumerate_fiber(const PointList& pts, const Vec& target, int k,
                      const Caps& caps = Caps{});

struct FiberConnectivity {
    bool connected = true;
    std::vector<std::vector<int>> components;  // indices into fiber.elements
};

// Moves connect two elements when u - lead + trail = v (or the reverse).
FiberConnectivity fiber_connected(const Fiber& fiber, const MoveSet& moves);

// Number of coordinates where the two vectors differ.
int hamming(const Vec& a, const Vec& b);

struct SupportDistance {
    int distance = 0;
    int from = -1, to = -1;  // point ids realizing the minimum
};

// Minimum Hamming distance between a support point of u and one of v.
SupportDistance support_distance(const Vec& u, const Vec& v, const PointList& pts);

struct PatternWitness {
    int i1, i2, j1, j2;
    int variant;         // 1: exact pattern; 2: one entry off
    bool flip_in_first;  // variant 2: whether the off entry lies in m
};

// Scans two 0/1 matrices (given row-major with shape rows x cols) for the
// crossing pattern: m has the identity 2x2 on rows {i1,i2} x columns
// {j1,j2} while n has the anti-identity there -- exactly (variant 1) or with
// a single entry off anywhere in the eight (variant 2).  First witness in
// scan order, or none.
std::optional<PatternWitness> forbidden_pattern(const Vec& m, const Vec& n, int rows,
                                                int cols);

struct ReduceResult {
    std::optional<Vec> reduced;
    std::string reason;  // set iff reduced is not
    bool ok() const { return reduced.has_value(); }
};

// One distance-reduction step: find support points M1 of u and N1 of v at
// minimal Hamming distance exhibiting the crossing pattern (exact on the M1
// side), swap the pattern inside M1 to obtain Mtilde, and rebalance with a
// single degree-3 move using two more support points of u.  The result u'
// satisfies support_distance(u', v) <= support_distance(u, v) - 2.  Both u
// and v must live in one covering cell of the row-major rows x cols
// transportation-style spec.
ReduceResult distance_reduce(const Vec& u, const Vec& v, const FlowPolytopeSpec& spec,
                             const PointList& pts, int rows, int cols);

// Lazy symmetric random walk on the fiber of `target` in degree k, started
// from a greedy decomposition of the target.  Proposals are uniform over
// (move, direction); inapplicable proposals stay put, which keeps the
// uniform distribution stationary on the reachable component.  Deterministic
// given the seed.  `visits`, when given, receives a tally of the state after
// every step past the first `burn_in` steps.
Vec sample_fiber(const FlowPolytopeSpec& spec, const PointList& pts, const Vec& target,
                 int k, const MoveSet& moves, long long steps, std::uint64_t seed,
                 long long burn_in = 0, std::map<Vec, long long>* visits = nullptr);

}  // namespace toriflow
