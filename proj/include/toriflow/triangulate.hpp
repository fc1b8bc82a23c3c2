// Pulling triangulations of unit-window cells and of whole flow polytopes.
//
// A cell's faces are exactly the subsets cut out by freezing some window
// coordinates to an endpoint, so the pulling recursion (cone the cheapest
// point over the pulled facets) never needs a convex hull: facet candidates
// are "freeze one free coordinate", filtered to affine codimension one.
// Triangulating every maximal covering cell with a shared point ranking
// produces a triangulation of the full polytope: recursions on shared faces
// are memoized by point set, so neighboring cells agree on the boundary.
#pragma once

#include <map>
#include <vector>

#include "toriflow/cells.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"

namespace toriflow {

struct Triangulation {
    std::vector<std::vector<int>> simplices;  // point ids, each sorted
    int dim = -1;                             // affine dimension triangulated
};

// Pulling triangulation of one cell's point set. `ranking` permutes all
// point ids (most expensive first); the ranking-last point is pulled first.
// Identity ranking when empty.
Triangulation pull_triangulate_cell(const PointList& pts, const Cell& cell,
                                    const std::vector<int>& ranking = {});

// Union of pulled triangulations of all maximal covering cells.
Triangulation pull_triangulate(const FlowPolytopeSpec& spec, const PointList& pts,
                               const std::vector<int>& ranking = {});

// True iff every maximal simplex spans the saturated difference lattice of
// the configuration with determinant +-1 (so all simplices have equal,
// minimal lattice volume).
bool is_unimodular(const std::vector<Vec>& pts, const Triangulation& tri);

// Minimal non-faces of the simplicial complex, as sorted id sets, found by
// increasing size up to max_size (default: dim + 2).
std::vector<std::vector<int>> minimal_non_faces(const Triangulation& tri, int num_points,
                                                int max_size = 0);

// Checks that every minimal non-face that is not contained in a single
// covering cell has exactly two elements; returns the offending non-faces.
std::vector<std::vector<int>> cross_cell_non_quadratic_non_faces(
    const FlowPolytopeSpec& spec, const PointList& pts, const Triangulation& tri);

}  // namespace toriflow
