#include "toriflow/enumerate.hpp"

#include <algorithm>
#include <chrono>

#include "toriflow/intlinalg.hpp"

namespace toriflow {

namespace {

struct Enumerator {
    const FlowPolytopeSpec& spec;
    const Caps& caps;
    int na, nv;
    // suffix_lo[i][v] / suffix_hi[i][v]: extreme net contribution to vertex v
    // achievable by arcs i..na-1 (arc (t,h) contributes -f to t, +f to h).
    std::vector<std::vector<Coord>> suffix_lo, suffix_hi;
    Vec cur;       // coordinates assigned so far
    Vec net;       // net flow into each vertex from assigned arcs
    PointList out;
    std::chrono::steady_clock::time_point t0;
    long long steps = 0;

    explicit Enumerator(const FlowPolytopeSpec& s, const Caps& c)
        : spec(s), caps(c), na(s.num_arcs()), nv(s.num_vertices()) {
        suffix_lo.assign(static_cast<size_t>(na) + 1, std::vector<Coord>(static_cast<size_t>(nv), 0));
        suffix_hi = suffix_lo;
        for (int i = na - 1; i >= 0; --i) {
            const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
            suffix_lo[static_cast<size_t>(i)] = suffix_lo[static_cast<size_t>(i) + 1];
            suffix_hi[static_cast<size_t>(i)] = suffix_hi[static_cast<size_t>(i) + 1];
            if (a.tail == a.head) continue;  // loop arcs do not move flow
            suffix_lo[static_cast<size_t>(i)][static_cast<size_t>(a.tail)] -= a.upper;
            suffix_hi[static_cast<size_t>(i)][static_cast<size_t>(a.tail)] -= a.lower;
            suffix_lo[static_cast<size_t>(i)][static_cast<size_t>(a.head)] += a.lower;
            suffix_hi[static_cast<size_t>(i)][static_cast<size_t>(a.head)] += a.upper;
        }
        cur.assign(static_cast<size_t>(na), 0);
        net.assign(static_cast<size_t>(nv), 0);
        t0 = std::chrono::steady_clock::now();
    }

    bool feasible_suffix(int i) const {
        for (int v = 0; v < nv; ++v) {
            Coord need = spec.demand[static_cast<size_t>(v)] - net[static_cast<size_t>(v)];
            if (need < suffix_lo[static_cast<size_t>(i)][static_cast<size_t>(v)] ||
                need > suffix_hi[static_cast<size_t>(i)][static_cast<size_t>(v)])
                return false;
        }
        return true;
    }

    void tick() {
        if (caps.max_seconds > 0 && (++steps & 0xfff) == 0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (el > caps.max_seconds) throw CapExceeded("enumeration exceeded time cap");
        }
    }

    void dfs(int i) {
        tick();
        if (!feasible_suffix(i)) return;
        if (i == na) {
            if (static_cast<long long>(out.size()) >= caps.max_points)
                throw CapExceeded("enumeration exceeded point cap");
            out.push(cur);
            return;
        }
        const Arc& a = spec.graph.arcs[static_cast<size_t>(i)];
        for (Coord f = a.lower; f <= a.upper; ++f) {
            cur[static_cast<size_t>(i)] = f;
            if (a.tail != a.head) {
                net[static_cast<size_t>(a.tail)] -= f;
                net[static_cast<size_t>(a.head)] += f;
            }
            dfs(i + 1);
            if (a.tail != a.head) {
                net[static_cast<size_t>(a.tail)] += f;
                net[static_cast<size_t>(a.head)] -= f;
            }
        }
        cur[static_cast<size_t>(i)] = a.lower;
    }
};

}  // namespace

PointList enumerate_lattice_points(const FlowPolytopeSpec& spec, const Caps& caps) {
    spec.validate();
    Enumerator e(spec, caps);
    e.dfs(0);
    return std::move(e.out);
}

bool points_homogeneous(const std::vector<Vec>& pts) {
    if (pts.empty()) return true;
    size_t n = pts[0].size();
    IMat plain(static_cast<int>(pts.size()), static_cast<int>(n));
    IMat augmented(static_cast<int>(pts.size()), static_cast<int>(n) + 1);
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = 0; j < n; ++j) {
            plain.at(static_cast<int>(i), static_cast<int>(j)) = pts[i][j];
            augmented.at(static_cast<int>(i), static_cast<int>(j)) = pts[i][j];
        }
        augmented.at(static_cast<int>(i), static_cast<int>(n)) = 1;
    }
    // h.x = 1 solvable over Q  <=>  appending the all-ones column keeps rank.
    return rank(plain) == rank(augmented);
}

}  // namespace toriflow
