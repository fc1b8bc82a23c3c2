// Unit-window cells of a flow polytope.  A cell is the set of lattice points
// with k_a <= f_a <= min(k_a + 1, u_a) for an integer offset vector k.  The
// canonical assignment sends a point to the cell with k_a = f_a, except
// k_a = f_a - 1 when f_a = u_a; that rule partitions the lattice points.
// Several consumers (move generation, triangulation) instead need every
// inclusion-maximal nonempty cell, which the covering enumeration provides.
#pragma once

#include <utility>
#include <vector>

#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"

namespace toriflow {

struct Cell {
    Vec offset;                  // k
    Vec lo, hi;                  // clipped windows: lo = max(l,k), hi = min(u,k+1)
    std::vector<int> point_ids;  // indices into the ambient PointList, sorted
};

// Canonical cell offset of a single lattice point.
Vec cell_offset_of(const FlowPolytopeSpec& spec, const Vec& point);

// Canonical cells: one per distinct canonical offset among pts, each holding
// exactly the points assigned to it.  Sorted by offset.
std::vector<Cell> canonical_cells(const FlowPolytopeSpec& spec, const PointList& pts);

// All nonempty cells that are maximal under point-set inclusion.  Every point
// of pts lies in at least one returned cell, and each cell lists all points
// of pts inside its window (not just canonically assigned ones).
std::vector<Cell> covering_cells(const FlowPolytopeSpec& spec, const PointList& pts);

// Subproblem spec whose lattice points are exactly the cell's points.
FlowPolytopeSpec cell_subspec(const FlowPolytopeSpec& spec, const Cell& cell);

std::vector<Vec> cell_points(const PointList& pts, const Cell& cell);

// Reflection x -> lo + hi - x of a cell within its own windows.  Returns the
// spec-with-cell whose lattice points are exactly the reflected points.
std::pair<FlowPolytopeSpec, Cell> complement_cell(const FlowPolytopeSpec& spec,
                                                  const Cell& cell);

}  // namespace toriflow
