// Lattice-point enumeration for flow polytope specs.  Points come out in
// lexicographic order of their coordinate vectors (arc declaration order),
// which fixes the canonical point indexing used by every other module.
#pragma once

#include <map>
#include <vector>

#include "toriflow/common.hpp"
#include "toriflow/graph.hpp"

namespace toriflow {

struct PointList {
    std::vector<Vec> points;
    std::map<Vec, int> index;  // point -> position

    int size() const { return static_cast<int>(points.size()); }
    const Vec& operator[](int i) const { return points[static_cast<size_t>(i)]; }
    int find(const Vec& p) const {
        auto it = index.find(p);
        return it == index.end() ? -1 : it->second;
    }
    void push(const Vec& p) {
        if (index.emplace(p, size()).second) points.push_back(p);
    }
};

// DFS with per-vertex interval pruning. Throws CapExceeded when more than
// caps.max_points points exist.
PointList enumerate_lattice_points(const FlowPolytopeSpec& spec,
                                   const Caps& caps = Caps{});

// True iff all points lie on one affine hyperplane h.x = 1 (h rational),
// i.e. the configuration is homogeneous. Empty lists count as homogeneous.
bool points_homogeneous(const std::vector<Vec>& pts);

}  // namespace toriflow
