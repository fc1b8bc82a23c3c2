// Monomial orders on point variables.  An order is an integer weight per
// variable refined by total degree and then reverse lexicographic comparison
// with respect to a ranking (a permutation of the variables, most expensive
// first; the last-ranked variable is the revlex-cheapest one).
//
// The built-in "subdivide and pull" order weights point p by sum_a p_a^2.
// On each unit-window cell with offset k that weight restricts to the affine
// function sum_a ((2 k_a + 1) x_a - k_a (k_a + 1)), and any point outside the
// window sits strictly above it, so the weights induce exactly the covering
// cells as the domains of linearity of the lower hull.
#pragma once

#include <vector>

#include "toriflow/common.hpp"

namespace toriflow {

struct TermOrder {
    Vec weights;                 // per variable, nonnegative
    std::vector<int> order_pos;  // order_pos[v] = rank, 0 = most expensive

    int n() const { return static_cast<int>(order_pos.size()); }
    // +1 when a is the larger monomial, -1 when b is, 0 when equal.
    int compare(const Vec& a, const Vec& b) const;
};

// Graded reverse lex, variables in index order (0 most expensive).
TermOrder grevlex_order(int n);

// Graded reverse lex with variable `last_var` moved to the cheapest slot
// (the order used to saturate that variable away).
TermOrder grevlex_with_last(int n, int last_var);

// ranking lists every variable exactly once, most expensive first.
// Empty weights mean all-zero.
TermOrder order_from_ranking(const std::vector<int>& ranking, Vec weights = {});

// w_p = sum_a p_a^2 for each point.
Vec squared_height_weights(const std::vector<Vec>& pts);

// Squared heights refined by the ranking (identity ranking when empty).
TermOrder subdivide_pull_order(const std::vector<Vec>& pts,
                               const std::vector<int>& ranking = {});

}  // namespace toriflow
