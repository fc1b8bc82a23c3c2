#include "toriflow/cells.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toriflow {

namespace {

Cell make_cell(const FlowPolytopeSpec& spec, Vec offset) {
    Cell c;
    c.offset = std::move(offset);
    size_t na = static_cast<size_t>(spec.num_arcs());
    c.lo.resize(na);
    c.hi.resize(na);
    for (size_t a = 0; a < na; ++a) {
        const Arc& arc = spec.graph.arcs[a];
        c.lo[a] = std::max(arc.lower, c.offset[a]);
        c.hi[a] = std::min(arc.upper, c.offset[a] + 1);
    }
    return c;
}

bool in_window(const Cell& c, const Vec& p) {
    for (size_t a = 0; a < p.size(); ++a)
        if (p[a] < c.lo[a] || p[a] > c.hi[a]) return false;
    return true;
}

}  // namespace

Vec cell_offset_of(const FlowPolytopeSpec& spec, const Vec& point) {
    check(static_cast<int>(point.size()) == spec.num_arcs(), "point/arc size mismatch");
    Vec k(point.size());
    for (size_t a = 0; a < point.size(); ++a) {
        const Arc& arc = spec.graph.arcs[a];
        check(point[a] >= arc.lower && point[a] <= arc.upper, "point outside arc bounds");
        k[a] = (point[a] == arc.upper && arc.upper > arc.lower) ? point[a] - 1 : point[a];
    }
    return k;
}

std::vector<Cell> canonical_cells(const FlowPolytopeSpec& spec, const PointList& pts) {
    std::map<Vec, std::vector<int>> groups;
    for (int i = 0; i < pts.size(); ++i)
        groups[cell_offset_of(spec, pts[i])].push_back(i);
    std::vector<Cell> out;
    out.reserve(groups.size());
    for (auto& [offset, ids] : groups) {
        Cell c = make_cell(spec, offset);
        c.point_ids = ids;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Cell> covering_cells(const FlowPolytopeSpec& spec, const PointList& pts) {
    // Candidate offsets: for each point p, every k with k_a in
    // {p_a - 1, p_a} ∩ [l_a, u_a - 1] (or k_a = l_a when the arc is fixed).
    std::set<Vec> offsets;
    size_t na = static_cast<size_t>(spec.num_arcs());
    for (int i = 0; i < pts.size(); ++i) {
        const Vec& p = pts[i];
        std::vector<Vec> choices(na);
        for (size_t a = 0; a < na; ++a) {
            const Arc& arc = spec.graph.arcs[a];
            Coord kmax = std::max(arc.lower, arc.upper - 1);
            for (Coord k : {p[a] - 1, p[a]})
                if (k >= arc.lower && k <= kmax) choices[a].push_back(k);
            check(!choices[a].empty(), "point admits no window offset");
        }
        Vec k(na);
        std::vector<size_t> pos(na, 0);
        for (;;) {
            for (size_t a = 0; a < na; ++a) k[a] = choices[a][pos[a]];
            offsets.insert(k);
            size_t a = 0;
            while (a < na && ++pos[a] == choices[a].size()) pos[a++] = 0;
            if (a == na) break;
        }
    }

    // Materialize point sets, dedupe, then keep the maximal ones.
    std::map<std::vector<int>, Vec> by_support;  // point ids -> smallest offset
    for (const Vec& k : offsets) {
        Cell c = make_cell(spec, k);
        std::vector<int> ids;
        for (int i = 0; i < pts.size(); ++i)
            if (in_window(c, pts[i])) ids.push_back(i);
        if (ids.empty()) continue;
        auto [it, fresh] = by_support.emplace(std::move(ids), k);
        if (!fresh && k < it->second) it->second = k;
    }
    std::vector<Cell> out;
    for (auto& [ids, k] : by_support) {
        bool dominated = false;
        for (auto& [other, k2] : by_support) {
            if (other.size() <= ids.size()) continue;
            if (std::includes(other.begin(), other.end(), ids.begin(), ids.end())) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        Cell c = make_cell(spec, k);
        c.point_ids = ids;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const Cell& a, const Cell& b) { return a.offset < b.offset; });
    return out;
}

FlowPolytopeSpec cell_subspec(const FlowPolytopeSpec& spec, const Cell& cell) {
    FlowPolytopeSpec sub = spec;
    for (size_t a = 0; a < sub.graph.arcs.size(); ++a) {
        sub.graph.arcs[a].lower = cell.lo[a];
        sub.graph.arcs[a].upper = cell.hi[a];
    }
    return sub;
}

std::vector<Vec> cell_points(const PointList& pts, const Cell& cell) {
    std::vector<Vec> out;
    out.reserve(cell.point_ids.size());
    for (int id : cell.point_ids) out.push_back(pts[id]);
    return out;
}

std::pair<FlowPolytopeSpec, Cell> complement_cell(const FlowPolytopeSpec& spec,
                                                  const Cell& cell) {
    // x -> lo + hi - x maps the window [lo, hi] onto itself and negates the
    // conservation constraint relative to the net flow of lo + hi.
    FlowPolytopeSpec sub = cell_subspec(spec, cell);
    size_t nv = static_cast<size_t>(spec.num_vertices());
    Vec s(nv, 0);
    for (size_t a = 0; a < sub.graph.arcs.size(); ++a) {
        const Arc& arc = sub.graph.arcs[a];
        if (arc.tail == arc.head) continue;
        Coord tot = cell.lo[a] + cell.hi[a];
        s[static_cast<size_t>(arc.tail)] -= tot;
        s[static_cast<size_t>(arc.head)] += tot;
    }
    for (size_t v = 0; v < nv; ++v) sub.demand[v] = s[v] - spec.demand[v];
    Cell image = cell;  // same windows; reflected points live in the same box
    image.point_ids.clear();
    return {std::move(sub), std::move(image)};
}

}  // namespace toriflow
