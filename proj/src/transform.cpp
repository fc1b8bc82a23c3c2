#include "toriflow/transform.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "toriflow/enumerate.hpp"
#include "toriflow/markov.hpp"

namespace toriflow {

namespace {

// Sum of f over the arcs leaving v (loops included; they cancel against the
// matching inflow term, so the slack formula stays consistent).
Coord outflow(const FlowPolytopeSpec& spec, const Vec& f, int v) {
    Coord s = 0;
    for (int j = 0; j < spec.num_arcs(); ++j)
        if (spec.graph.arcs[j].tail == v) s += f[j];
    return s;
}

}  // namespace

BipartizeResult bipartize(const FlowPolytopeSpec& spec) {
    spec.validate();
    const int nv = spec.num_vertices();
    const int na = spec.num_arcs();

    Coord n_cap = 0;
    for (int v = 0; v < nv; ++v) {
        Coord out = 0, in = 0;
        for (const Arc& a : spec.graph.arcs) {
            if (a.tail == v) out += a.upper;
            if (a.head == v) in += a.upper;
        }
        n_cap = std::max({n_cap, out, in});
    }

    BipartizeResult res;
    res.original = spec;
    res.slack_cap = n_cap;

    FlowPolytopeSpec& out = res.transformed;
    // tail copies first, then head copies: arcs run copy-to-copy, so the
    // result is bipartite by construction
    for (const std::string& id : spec.graph.vertices) out.graph.add_vertex(id + "'");
    for (const std::string& id : spec.graph.vertices) out.graph.add_vertex(id + "''");
    for (const Arc& a : spec.graph.arcs)
        out.graph.add_arc(a.id, a.tail, nv + a.head, a.lower, a.upper);
    for (int v = 0; v < nv; ++v)
        out.graph.add_arc("_slack_" + spec.graph.vertices[v], v, nv + v, 0, n_cap);
    out.demand.assign(2 * nv, -n_cap);
    for (int v = 0; v < nv; ++v) out.demand[nv + v] = n_cap + spec.demand[v];
    out.validate();

    (void)na;
    return res;
}

Vec BipartizeResult::forward(const Vec& f) const {
    if (auto bad = validate_flow(original, IntegerFlow{f}))
        throw InputError("forward: " + *bad);
    Vec g = f;
    for (int v = 0; v < original.num_vertices(); ++v)
        g.push_back(slack_cap - outflow(original, f, v));
    check(!validate_flow(transformed, IntegerFlow{g}), "forward image must be a lattice point");
    return g;
}

Vec BipartizeResult::backward(const Vec& g) const {
    if (auto bad = validate_flow(transformed, IntegerFlow{g}))
        throw InputError("backward: " + *bad);
    Vec f(g.begin(), g.begin() + original.num_arcs());
    check(!validate_flow(original, IntegerFlow{f}), "backward image must be a lattice point");
    return f;
}

IsoReport verify_semigroup_iso(const BipartizeResult& bp, int k_max, const Caps& caps) {
    if (k_max < 1) throw InputError("k_max must be at least 1");
    IsoReport rep;

    PointList left = enumerate_lattice_points(bp.original, caps);
    PointList right = enumerate_lattice_points(bp.transformed, caps);
    rep.points = left.size();

    auto fail = [&rep](std::string why) {
        rep.ok = false;
        if (rep.detail.empty()) rep.detail = std::move(why);
    };

    if (left.size() != right.size())
        fail("point counts differ: " + std::to_string(left.size()) + " vs " +
             std::to_string(right.size()));

    // point bijection: forward must hit every right point exactly once
    std::vector<int> to_right(left.size(), -1);
    std::vector<char> hit(right.size(), 0);
    for (int i = 0; i < left.size() && rep.ok; ++i) {
        int j = right.find(bp.forward(left[i]));
        if (j < 0) {
            fail("image of point " + std::to_string(i) + " is not a lattice point");
            break;
        }
        if (hit[j]) fail("two points map to the same image");
        hit[j] = 1;
        to_right[i] = j;
    }

    MoveSet moves_l, moves_r;
    if (rep.ok) {
        moves_l = generate_moves_deg23(bp.original, left);
        moves_r = generate_moves_deg23(bp.transformed, right);
        rep.moves = moves_l.size();
        rep.moves_right = moves_r.size();
    }

    const int n = left.size();
    for (int k = 1; k <= k_max && rep.ok; ++k) {
        // fibers on each side: multisets of k points grouped by their sum.
        // The relabeled multisets must induce the same grouping.
        std::map<Vec, long long> left_fibers, right_fibers;
        std::map<Vec, Vec> left_to_right_image;  // left sum -> right sum, must be 1:1
        std::map<Vec, Vec> right_seen_from;
        std::map<Vec, std::vector<Vec>> left_elems;  // kept only for k <= 3
        long long total = 0;

        Vec picks;
        auto rec = [&](auto&& self, int from) -> void {
            if (static_cast<int>(picks.size()) == k) {
                if (++total > caps.max_points)
                    throw CapExceeded("fiber census larger than the point cap");
                Vec lsum(bp.original.num_arcs(), 0), rsum(bp.transformed.num_arcs(), 0);
                for (int id : picks) {
                    for (size_t t = 0; t < lsum.size(); ++t) lsum[t] += left[id][t];
                    const Vec& rp = right[to_right[id]];
                    for (size_t t = 0; t < rsum.size(); ++t) rsum[t] += rp[t];
                }
                ++left_fibers[lsum];
                ++right_fibers[rsum];
                auto [it, fresh] = left_to_right_image.emplace(lsum, rsum);
                if (!fresh && it->second != rsum)
                    fail("one degree-" + std::to_string(k) + " fiber splits in the image");
                auto [rit, rfresh] = right_seen_from.emplace(rsum, lsum);
                if (!rfresh && rit->second != lsum)
                    fail("two degree-" + std::to_string(k) + " fibers merge in the image");
                if (k <= 3) {
                    Vec expo(n, 0);
                    for (int id : picks) ++expo[id];
                    left_elems[lsum].push_back(std::move(expo));
                }
                return;
            }
            for (int id = from; id < n; ++id) {
                picks.push_back(id);
                self(self, id);
                picks.pop_back();
            }
        };
        rec(rec, 0);

        rep.fibers_per_degree.push_back(static_cast<long long>(left_fibers.size()));
        if (left_fibers.size() != right_fibers.size())
            fail("degree-" + std::to_string(k) + " fiber counts differ");
        long long rel_l = 0, rel_r = 0;
        for (const auto& [sum, sz] : left_fibers) rel_l += sz * (sz - 1) / 2;
        for (const auto& [sum, sz] : right_fibers) rel_r += sz * (sz - 1) / 2;
        rep.relations_per_degree.push_back(rel_l);
        rep.relations_per_degree_right.push_back(rel_r);
        if (rel_l != rel_r)
            fail("degree-" + std::to_string(k) + " relation counts differ");

        // moves transfer: corresponding fibers must agree on connectivity
        // under each side's own move set
        for (auto& [lsum, elems] : left_elems) {
            if (!rep.ok || elems.size() < 2) continue;
            std::vector<Vec> relems;
            for (const Vec& e : elems) {
                Vec re(n, 0);
                for (int i = 0; i < n; ++i) re[to_right[i]] = e[i];
                relems.push_back(std::move(re));
            }
            Fiber fl{lsum, k, elems};
            Fiber fr{left_to_right_image[lsum], k, std::move(relems)};
            ++rep.fibers_checked;
            if (fiber_connected(fl, moves_l).connected !=
                fiber_connected(fr, moves_r).connected)
                fail("a degree-" + std::to_string(k) +
                     " fiber changes move connectivity under the transform");
        }
    }
    return rep;
}

}  // namespace toriflow
