#include "toriflow/triangulate.hpp"

#include <algorithm>
#include <set>

#include "toriflow/intlinalg.hpp"

namespace toriflow {

namespace {

// Pulling recursion over point-id sets, memoized so that shared faces of
// different cells are triangulated identically.
struct Puller {
    const PointList& pts;
    std::vector<int> pull_pos;  // position in the ranking; max = pulled first
    std::map<std::vector<int>, std::vector<std::vector<int>>> memo;

    Puller(const PointList& p, const std::vector<int>& ranking) : pts(p) {
        int n = p.size();
        pull_pos.resize(static_cast<size_t>(n));
        if (ranking.empty()) {
            for (int i = 0; i < n; ++i) pull_pos[static_cast<size_t>(i)] = i;
            return;
        }
        if (static_cast<int>(ranking.size()) != n)
            throw InputError("ranking length != number of points");
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int pos = 0; pos < n; ++pos) {
            int id = ranking[static_cast<size_t>(pos)];
            if (id < 0 || id >= n || seen[static_cast<size_t>(id)])
                throw InputError("ranking is not a permutation of the point ids");
            seen[static_cast<size_t>(id)] = true;
            pull_pos[static_cast<size_t>(id)] = pos;
        }
    }

    std::vector<Vec> coords(const std::vector<int>& ids) const {
        std::vector<Vec> v;
        v.reserve(ids.size());
        for (int id : ids) v.push_back(pts[id]);
        return v;
    }

    const std::vector<std::vector<int>>& pull(const std::vector<int>& ids) {
        auto it = memo.find(ids);
        if (it != memo.end()) return it->second;

        int d = affine_dim(coords(ids));
        std::vector<std::vector<int>> out;
        if (static_cast<int>(ids.size()) == d + 1) {
            out.push_back(ids);  // already a simplex
        } else {
            // pulled point: the ranking-last (cheapest) member
            int v = ids[0];
            for (int id : ids)
                if (pull_pos[static_cast<size_t>(id)] > pull_pos[static_cast<size_t>(v)]) v = id;

            // Every facet arises by freezing one coordinate at its min or max
            // over the set (the set is cut from a box by such freezes, so any
            // facet has a single newly tight bound).  Keep the codim-1 ones.
            std::set<std::vector<int>> facets;
            size_t na = pts[ids[0]].size();
            for (size_t a = 0; a < na; ++a) {
                Coord lo = pts[ids[0]][a], hi = lo;
                for (int id : ids) {
                    lo = std::min(lo, pts[id][a]);
                    hi = std::max(hi, pts[id][a]);
                }
                if (lo == hi) continue;
                for (Coord val : {lo, hi}) {
                    std::vector<int> sub;
                    for (int id : ids)
                        if (pts[id][a] == val) sub.push_back(id);
                    if (sub.empty() || sub.size() == ids.size()) continue;
                    if (affine_dim(coords(sub)) != d - 1) continue;
                    facets.insert(std::move(sub));
                }
            }
            check(!facets.empty(), "pulling recursion found no facets");

            for (const auto& f : facets) {
                if (std::binary_search(f.begin(), f.end(), v)) continue;
                for (const auto& s : pull(f)) {
                    std::vector<int> simplex = s;
                    simplex.insert(std::lower_bound(simplex.begin(), simplex.end(), v), v);
                    out.push_back(std::move(simplex));
                }
            }
            std::sort(out.begin(), out.end());
            check(std::adjacent_find(out.begin(), out.end()) == out.end(),
                  "pulling produced a duplicate simplex");
        }
        return memo.emplace(ids, std::move(out)).first->second;
    }
};

bool is_face(const std::vector<int>& f, const std::vector<std::vector<int>>& simplices) {
    for (const auto& s : simplices)
        if (std::includes(s.begin(), s.end(), f.begin(), f.end())) return true;
    return false;
}

}  // namespace

Triangulation pull_triangulate_cell(const PointList& pts, const Cell& cell,
                                    const std::vector<int>& ranking) {
    check(!cell.point_ids.empty(), "cannot triangulate an empty cell");
    std::vector<int> ids = cell.point_ids;
    std::sort(ids.begin(), ids.end());
    Puller puller(pts, ranking);
    Triangulation tri;
    tri.dim = affine_dim(puller.coords(ids));
    tri.simplices = puller.pull(ids);
    return tri;
}

Triangulation pull_triangulate(const FlowPolytopeSpec& spec, const PointList& pts,
                               const std::vector<int>& ranking) {
    check(pts.size() > 0, "cannot triangulate an empty point set");
    Puller puller(pts, ranking);
    std::set<std::vector<int>> simplices;
    for (const Cell& cell : covering_cells(spec, pts)) {
        std::vector<int> ids = cell.point_ids;
        std::sort(ids.begin(), ids.end());
        for (const auto& s : puller.pull(ids)) simplices.insert(s);
    }
    Triangulation tri;
    tri.dim = affine_dim(pts.points);
    tri.simplices.assign(simplices.begin(), simplices.end());
    return tri;
}

bool is_unimodular(const std::vector<Vec>& pts, const Triangulation& tri) {
    std::set<int> used;
    for (const auto& s : tri.simplices) used.insert(s.begin(), s.end());
    if (used.empty()) return true;
    int base = *used.begin();
    size_t n = pts[static_cast<size_t>(base)].size();
    std::vector<Vec> diffs;
    for (int id : used) {
        Vec d(n);
        for (size_t a = 0; a < n; ++a)
            d[a] = pts[static_cast<size_t>(id)][a] - pts[static_cast<size_t>(base)][a];
        diffs.push_back(std::move(d));
    }
    std::vector<Vec> lattice = saturated_span_basis(diffs, static_cast<int>(n));
    int r = static_cast<int>(lattice.size());
    for (const auto& s : tri.simplices) {
        if (static_cast<int>(s.size()) != r + 1) return false;
        IMat c(r, r);
        for (int i = 1; i <= r; ++i) {
            Vec d(n);
            for (size_t a = 0; a < n; ++a)
                d[a] = pts[static_cast<size_t>(s[static_cast<size_t>(i)])][a] -
                       pts[static_cast<size_t>(s[0])][a];
            auto coeff = solve_in_basis(lattice, d);
            if (!coeff) return false;  // edge leaves the difference lattice
            for (int j = 0; j < r; ++j) c.at(i - 1, j) = (*coeff)[static_cast<size_t>(j)];
        }
        Coord dt = det(std::move(c));
        if (dt != 1 && dt != -1) return false;
    }
    return true;
}

std::vector<std::vector<int>> minimal_non_faces(const Triangulation& tri, int num_points,
                                                int max_size) {
    if (max_size <= 0) max_size = tri.dim + 2;
    std::vector<std::vector<int>> found;
    std::vector<int> cur;

    // Depth-first over sorted subsets, extending only faces: any extension of
    // a non-face strictly contains it, so it cannot be a *minimal* non-face.
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) >= max_size) return;
        for (int next = start; next < num_points; ++next) {
            cur.push_back(next);
            if (is_face(cur, tri.simplices)) {
                self(self, next + 1);
            } else {
                bool minimal = true;
                for (size_t drop = 0; drop + 1 < cur.size() && minimal; ++drop) {
                    std::vector<int> sub = cur;
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                    minimal = is_face(sub, tri.simplices);
                }
                if (minimal) found.push_back(cur);
            }
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

std::vector<std::vector<int>> cross_cell_non_quadratic_non_faces(
    const FlowPolytopeSpec& spec, const PointList& pts, const Triangulation& tri) {
    std::vector<std::vector<int>> cell_sets;
    for (const Cell& cell : covering_cells(spec, pts)) {
        std::vector<int> ids = cell.point_ids;
        std::sort(ids.begin(), ids.end());
        cell_sets.push_back(std::move(ids));
    }
    std::vector<std::vector<int>> bad;
    for (const auto& f : minimal_non_faces(tri, pts.size())) {
        bool in_cell = false;
        for (const auto& c : cell_sets)
            if (std::includes(c.begin(), c.end(), f.begin(), f.end())) {
                in_cell = true;
                break;
            }
        if (!in_cell && f.size() != 2) bad.push_back(f);
    }
    return bad;
}

}  // namespace toriflow
