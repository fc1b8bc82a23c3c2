#include "toriflow/markov.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "toriflow/netflow.hpp"

namespace toriflow {

namespace {

Vec point_sum(const PointList& pts, const std::vector<int>& ids) {
    Vec s(pts[ids[0]].size(), 0);
    for (int id : ids)
        for (size_t a = 0; a < s.size(); ++a) s[a] += pts[id][a];
    return s;
}

// exponent vector of a multiset of point ids
Vec expo_of(int n, const std::vector<int>& ids) {
    Vec e(static_cast<size_t>(n), 0);
    for (int id : ids) ++e[static_cast<size_t>(id)];
    return e;
}

Binomial canonical_move(Vec u, Vec v) {
    if (u < v) std::swap(u, v);
    Binomial b;
    b.lead = std::move(u);
    b.trail = std::move(v);
    return b;
}

std::vector<int> support_of(const Vec& u) {
    std::vector<int> s;
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] > 0) s.push_back(static_cast<int>(i));
    return s;
}

Vec image_of(const PointList& pts, const Vec& expo) {
    Vec img(pts[0].size(), 0);
    for (size_t j = 0; j < expo.size(); ++j)
        if (expo[j])
            for (size_t a = 0; a < img.size(); ++a)
                img[a] += expo[j] * pts[static_cast<int>(j)][a];
    return img;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

MoveSet generate_moves_deg23(const FlowPolytopeSpec& spec, const PointList& pts) {
    int n = pts.size();
    std::set<Binomial> pool;

    // quadratic relations across the whole configuration: two distinct
    // multisets {i,j}, {k,l} sharing an index would force two equal points,
    // so groups of equal pairwise sums are automatically support-disjoint
    std::map<Vec, std::vector<std::vector<int>>> by_sum;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) by_sum[point_sum(pts, {i, j})].push_back({i, j});
    for (const auto& [sum, group] : by_sum)
        for (size_t s = 0; s < group.size(); ++s)
            for (size_t t = s + 1; t < group.size(); ++t)
                pool.insert(canonical_move(expo_of(n, group[s]), expo_of(n, group[t])));

    // cubic relations inside each covering cell, with common factors
    // cancelled (a shared index reduces the relation to a quadratic one)
    for (const Cell& cell : covering_cells(spec, pts)) {
        const auto& ids = cell.point_ids;
        std::map<Vec, std::vector<std::vector<int>>> by_sum3;
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = a; b < ids.size(); ++b)
                for (size_t c = b; c < ids.size(); ++c)
                    by_sum3[point_sum(pts, {ids[a], ids[b], ids[c]})].push_back(
                        {ids[a], ids[b], ids[c]});
        for (const auto& [sum, group] : by_sum3)
            for (size_t s = 0; s < group.size(); ++s)
                for (size_t t = s + 1; t < group.size(); ++t) {
                    const auto& A = group[s];
                    const auto& B = group[t];
                    bool shared = false;
                    for (int x : A)
                        shared = shared || std::find(B.begin(), B.end(), x) != B.end();
                    if (shared) continue;
                    pool.insert(canonical_move(expo_of(n, A), expo_of(n, B)));
                }
    }

    MoveSet out;
    out.moves.assign(pool.begin(), pool.end());
    return out;
}

Fiber enumerate_fiber(const PointList& pts, const Vec& target, int k, const Caps& caps) {
    if (k < 1) throw InputError("fiber degree must be at least 1");
    int n = pts.size();
    if (n == 0) throw InputError("no points");
    size_t na = pts[0].size();
    if (target.size() != na) throw InputError("target dimension mismatch");

    // suffix coordinate ranges for pruning
    std::vector<Vec> suf_min(static_cast<size_t>(n) + 1, Vec(na, 0));
    std::vector<Vec> suf_max(static_cast<size_t>(n) + 1, Vec(na, 0));
    for (int i = n - 1; i >= 0; --i) {
        for (size_t a = 0; a < na; ++a) {
            Coord v = pts[i][a];
            suf_min[static_cast<size_t>(i)][a] =
                i == n - 1 ? v : std::min(v, suf_min[static_cast<size_t>(i) + 1][a]);
            suf_max[static_cast<size_t>(i)][a] =
                i == n - 1 ? v : std::max(v, suf_max[static_cast<size_t>(i) + 1][a]);
        }
    }

    Fiber fiber;
    fiber.target = target;
    fiber.degree = k;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(caps.max_seconds));
    long long ticks = 0;

    Vec expo(static_cast<size_t>(n), 0);
    Vec rest = target;
    auto rec = [&](auto&& self, int from, int left) -> void {
        if ((++ticks & 0xfff) == 0 && caps.max_seconds > 0 &&
            std::chrono::steady_clock::now() > deadline)
            throw CapExceeded("fiber enumeration exceeded the time cap");
        if (left == 0) {
            for (size_t a = 0; a < na; ++a)
                if (rest[a] != 0) return;
            if (static_cast<long long>(fiber.elements.size()) >= caps.max_points)
                throw CapExceeded("fiber larger than the point cap");
            fiber.elements.push_back(expo);
            return;
        }
        if (from >= n) return;
        for (size_t a = 0; a < na; ++a) {
            if (rest[a] < left * suf_min[static_cast<size_t>(from)][a]) return;
            if (rest[a] > left * suf_max[static_cast<size_t>(from)][a]) return;
        }
        // multiplicity of point `from`: 0..left
        for (int m = 0; m <= left; ++m) {
            if (m > 0) {
                expo[static_cast<size_t>(from)] += 1;
                for (size_t a = 0; a < na; ++a) rest[a] -= pts[from][a];
            }
            self(self, from + 1, left - m);
        }
        expo[static_cast<size_t>(from)] = 0;
        for (size_t a = 0; a < na; ++a) rest[a] += left * pts[from][a];
    };
    rec(rec, 0, k);
    return fiber;
}

FiberConnectivity fiber_connected(const Fiber& fiber, const MoveSet& moves) {
    int n = static_cast<int>(fiber.elements.size());
    FiberConnectivity out;
    if (n == 0) return out;

    std::map<Vec, int> index;
    for (int i = 0; i < n; ++i) index.emplace(fiber.elements[static_cast<size_t>(i)], i);

    Dsu dsu(n);
    for (int i = 0; i < n; ++i) {
        const Vec& u = fiber.elements[static_cast<size_t>(i)];
        for (const Binomial& mv : moves.moves) {
            bool applies = true;
            for (size_t t = 0; t < u.size() && applies; ++t)
                if (u[t] < mv.lead[t]) applies = false;
            if (!applies) continue;
            Vec v = u;
            for (size_t t = 0; t < u.size(); ++t) v[t] += mv.trail[t] - mv.lead[t];
            auto it = index.find(v);
            if (it != index.end()) dsu.unite(i, it->second);
        }
    }

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[dsu.find(i)].push_back(i);
    for (auto& [root, members] : groups) out.components.push_back(std::move(members));
    out.connected = out.components.size() == 1;
    return out;
}

int hamming(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("hamming distance needs equal shapes");
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

SupportDistance support_distance(const Vec& u, const Vec& v, const PointList& pts) {
    auto su = support_of(u);
    auto sv = support_of(v);
    if (su.empty() || sv.empty()) throw InputError("support distance of a zero vector");
    SupportDistance best;
    best.distance = -1;
    for (int i : su)
        for (int j : sv) {
            int d = hamming(pts[i], pts[j]);
            if (best.distance < 0 || d < best.distance) best = {d, i, j};
        }
    return best;
}

std::optional<PatternWitness> forbidden_pattern(const Vec& m, const Vec& n, int rows,
                                                int cols) {
    if (static_cast<size_t>(rows) * static_cast<size_t>(cols) != m.size() ||
        m.size() != n.size())
        throw InputError("pattern scan shape mismatch");
    for (size_t t = 0; t < m.size(); ++t)
        if ((m[t] != 0 && m[t] != 1) || (n[t] != 0 && n[t] != 1))
            throw InputError("pattern scan expects 0/1 matrices");
    auto at = [cols](const Vec& x, int i, int j) {
        return x[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    };
    // pass 1: exact; pass 2: one entry off
    for (int pass = 1; pass <= 2; ++pass)
        for (int i1 = 0; i1 < rows; ++i1)
            for (int i2 = i1 + 1; i2 < rows; ++i2)
                for (int j1 = 0; j1 < cols; ++j1)
                    for (int j2 = 0; j2 < cols; ++j2) {
                        if (j1 == j2) continue;
                        int miss_m = (at(m, i1, j1) != 1) + (at(m, i2, j2) != 1) +
                                     (at(m, i1, j2) != 0) + (at(m, i2, j1) != 0);
                        int miss_n = (at(n, i1, j2) != 1) + (at(n, i2, j1) != 1) +
                                     (at(n, i1, j1) != 0) + (at(n, i2, j2) != 0);
                        if (pass == 1 && miss_m + miss_n == 0)
                            return PatternWitness{i1, i2, j1, j2, 1, false};
                        if (pass == 2 && miss_m + miss_n == 1)
                            return PatternWitness{i1, i2, j1, j2, 2, miss_m == 1};
                    }
    return std::nullopt;
}

ReduceResult distance_reduce(const Vec& u, const Vec& v, const FlowPolytopeSpec& spec,
                             const PointList& pts, int rows, int cols) {
    ReduceResult out;
    int n = pts.size();
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw InputError("exponent vector length mismatch");
    Coord deg = std::accumulate(u.begin(), u.end(), Coord(0));
    if (deg != std::accumulate(v.begin(), v.end(), Coord(0)))
        throw InputError("exponent vectors have different degrees");
    if (image_of(pts, u) != image_of(pts, v))
        throw InputError("exponent vectors are not in one fiber");
    if (deg < 3) {
        out.reason = "degree below 3";
        return out;
    }

    auto su = support_of(u);
    auto sv = support_of(v);

    // the rewrite happens inside one covering cell
    const Cell* home = nullptr;
    auto cells = covering_cells(spec, pts);
    for (const Cell& cell : cells) {
        bool all = true;
        for (int id : su)
            all = all && std::binary_search(cell.point_ids.begin(), cell.point_ids.end(), id);
        for (int id : sv)
            all = all && std::binary_search(cell.point_ids.begin(), cell.point_ids.end(), id);
        if (all) {
            home = &cell;
            break;
        }
    }
    if (!home) {
        out.reason = "supports are not contained in one cell";
        return out;
    }
    auto local = [&](int id) {
        Vec loc = pts[id];
        for (size_t a = 0; a < loc.size(); ++a) loc[a] -= home->lo[a];
        return loc;
    };

    int l = support_distance(u, v, pts).distance;
    auto sub = cell_subspec(spec, *home);

    auto at = [cols](const Vec& x, int i, int j) {
        return x[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    };

    for (int m1 : su)
        for (int n1 : sv) {
            if (hamming(pts[m1], pts[n1]) != l) continue;
            Vec mloc = local(m1), nloc = local(n1);
            // crossing pattern, exact on the m side so the swap stays 0/1
            for (int i1 = 0; i1 < rows; ++i1)
                for (int i2 = i1 + 1; i2 < rows; ++i2)
                    for (int j1 = 0; j1 < cols; ++j1)
                        for (int j2 = 0; j2 < cols; ++j2) {
                            if (j1 == j2) continue;
                            if (at(mloc, i1, j1) != 1 || at(mloc, i2, j2) != 1 ||
                                at(mloc, i1, j2) != 0 || at(mloc, i2, j1) != 0)
                                continue;
                            int miss = (at(nloc, i1, j2) != 1) + (at(nloc, i2, j1) != 1) +
                                       (at(nloc, i1, j1) != 0) + (at(nloc, i2, j2) != 0);
                            if (miss > 1) continue;

                            Vec tilde = pts[m1];
                            auto idx = [cols](int i, int j) {
                                return static_cast<size_t>(i) * static_cast<size_t>(cols) +
                                       static_cast<size_t>(j);
                            };
                            tilde[idx(i1, j1)] -= 1;
                            tilde[idx(i2, j2)] -= 1;
                            tilde[idx(i1, j2)] += 1;
                            tilde[idx(i2, j1)] += 1;
                            int tilde_id = pts.find(tilde);
                            check(tilde_id >= 0, "pattern swap left the point set");

                            // two more support points of u covering the new ones
                            Vec avail = u;
                            avail[static_cast<size_t>(m1)] -= 1;
                            for (int m2 = 0; m2 < n; ++m2) {
                                if (avail[static_cast<size_t>(m2)] <= 0) continue;
                                for (int m3 = m2; m3 < n; ++m3) {
                                    Coord have = avail[static_cast<size_t>(m3)];
                                    if (m3 == m2) have -= 1;
                                    if (have <= 0) continue;
                                    Vec a2 = local(m2), a3 = local(m3);
                                    if (a2[idx(i1, j2)] + a3[idx(i1, j2)] < 1) continue;
                                    if (a2[idx(i2, j1)] + a3[idx(i2, j1)] < 1) continue;

                                    Vec table = pts[m1];
                                    for (size_t t = 0; t < table.size(); ++t)
                                        table[t] += pts[m2][t] + pts[m3][t] - tilde[t];
                                    auto dec = decompose_flow(sub, IntegerFlow{table}, 2);
                                    if (!dec.ok()) continue;

                                    Vec cand = u;
                                    cand[static_cast<size_t>(m1)] -= 1;
                                    cand[static_cast<size_t>(m2)] -= 1;
                                    cand[static_cast<size_t>(m3)] -= 1;
                                    cand[static_cast<size_t>(tilde_id)] += 1;
                                    for (const auto& part : dec.decomposition->parts) {
                                        int pid = pts.find(part.values);
                                        check(pid >= 0, "decomposition left the point set");
                                        cand[static_cast<size_t>(pid)] += 1;
                                    }
                                    check(image_of(pts, cand) == image_of(pts, u),
                                          "rewrite changed the fiber");
                                    if (support_distance(cand, v, pts).distance > l - 2)
                                        continue;
                                    out.reduced = std::move(cand);
                                    return out;
                                }
                            }
                        }
        }
    out.reason = "no reducible pattern";
    return out;
}

Vec sample_fiber(const FlowPolytopeSpec& spec, const PointList& pts, const Vec& target,
                 int k, const MoveSet& moves, long long steps, std::uint64_t seed,
                 long long burn_in, std::map<Vec, long long>* visits) {
    if (k < 1) throw InputError("fiber degree must be at least 1");
    if (burn_in < 0 || burn_in > steps) throw InputError("burn-in must lie in [0, steps]");
    auto dec = decompose_flow(spec, IntegerFlow{target}, k);
    if (!dec.ok()) throw InputError("no starting point: " + dec.error);

    int n = pts.size();
    Vec state(static_cast<size_t>(n), 0);
    for (const auto& part : dec.decomposition->parts) {
        int pid = pts.find(part.values);
        check(pid >= 0, "decomposition part is not an enumerated point");
        state[static_cast<size_t>(pid)] += 1;
    }

    Rng rng(seed);
    for (long long step = 0; step < steps; ++step) {
        // lazy walk: hold with probability 1/2 for aperiodicity
        if (!moves.moves.empty() && rng.below(2) == 0) {
            std::uint64_t pick = rng.below(2 * static_cast<std::uint64_t>(moves.moves.size()));
            const Binomial& mv = moves.moves[static_cast<size_t>(pick / 2)];
            const Vec& off = pick % 2 == 0 ? mv.lead : mv.trail;
            const Vec& on = pick % 2 == 0 ? mv.trail : mv.lead;
            bool applies = true;
            for (size_t t = 0; t < state.size() && applies; ++t)
                if (state[t] < off[t]) applies = false;
            // the proposal is symmetric (each (move, direction) has a unique
            // inverse), so staying put on inapplicable proposals already
            // leaves the uniform distribution invariant: accept always
            if (applies) {
                Coord before = std::accumulate(state.begin(), state.end(), Coord(0));
                for (size_t t = 0; t < state.size(); ++t) state[t] += on[t] - off[t];
                check(std::accumulate(state.begin(), state.end(), Coord(0)) == before,
                      "move changed the degree");
            }
        }
        if (visits && step >= burn_in) ++(*visits)[state];
    }
    check(image_of(pts, state) == target, "walk left the fiber");
    return state;
}

}  // namespace toriflow
