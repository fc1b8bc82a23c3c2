#include "toriflow/toric.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "toriflow/enumerate.hpp"
#include "toriflow/intlinalg.hpp"

namespace toriflow {

namespace {

Coord total_degree(const Vec& m) {
    return std::accumulate(m.begin(), m.end(), Coord(0));
}

bool divides(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double budget;  // <= 0: unlimited
    explicit Clock(double seconds) : budget(seconds) {}
    bool expired() const {
        return budget > 0 &&
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > budget;
    }
    double remaining() const {
        if (budget <= 0) return 0;
        double left = budget - std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - t0).count();
        return std::max(left, 1e-9);
    }
};

// One rewrite pass: if some basis lead divides m, replace by the trail.
bool reduce_step(Vec& m, const std::vector<Binomial>& basis) {
    Coord deg = total_degree(m);
    for (const Binomial& g : basis) {
        if (total_degree(g.lead) > deg) continue;
        if (!divides(g.lead, m)) continue;
        for (size_t i = 0; i < m.size(); ++i) m[i] += g.trail[i] - g.lead[i];
        return true;
    }
    return false;
}

}  // namespace

Coord Binomial::degree() const { return total_degree(lead); }

std::optional<Binomial> make_binomial(Vec u, Vec v, const TermOrder& order) {
    check(u.size() == v.size(), "binomial term size mismatch");
    for (size_t i = 0; i < u.size(); ++i) {
        Coord m = std::min(u[i], v[i]);
        u[i] -= m;
        v[i] -= m;
    }
    int c = order.compare(u, v);
    if (c == 0) return std::nullopt;
    Binomial b;
    b.lead = c > 0 ? std::move(u) : std::move(v);
    b.trail = c > 0 ? std::move(v) : std::move(u);
    return b;
}

GBResult buchberger(std::vector<Binomial> gens, const TermOrder& order, const Caps& caps) {
    GBResult res;
    Clock clock(caps.max_seconds);
    std::vector<Binomial>& basis = res.basis;
    std::vector<std::uint64_t> lead_mask;  // support of the lead, first 64 vars
    std::vector<Coord> lead_deg;
    std::set<Binomial> known;

    auto mask_of = [](const Vec& m) {
        std::uint64_t t = 0;
        for (size_t i = 0; i < m.size() && i < 64; ++i)
            if (m[i]) t |= 1ull << i;
        return t;
    };

    auto reduce_lead_once = [&](Vec& m) -> bool {
        Coord mdeg = total_degree(m);
        std::uint64_t mmask = mask_of(m);
        for (size_t gi = 0; gi < basis.size(); ++gi) {
            if (lead_deg[gi] > mdeg) continue;
            if (lead_mask[gi] & ~mmask) continue;  // support not contained
            const Binomial& g = basis[gi];
            if (!divides(g.lead, m)) continue;
            for (size_t t = 0; t < m.size(); ++t) m[t] += g.trail[t] - g.lead[t];
            return true;
        }
        return false;
    };

    // weak normal form: rewrite the larger term until it is irreducible,
    // re-normalizing (cancel + orient) after every step
    auto weak_nf = [&](Binomial g) -> std::optional<Binomial> {
        for (;;) {
            if (!reduce_lead_once(g.lead)) return g;
            auto b = make_binomial(std::move(g.lead), std::move(g.trail), order);
            if (!b) return std::nullopt;
            g = std::move(*b);
        }
    };

    // pair queue keyed by (lcm degree, lcm, i, j): normal selection strategy
    std::set<std::tuple<Coord, Vec, int, int>> queue;
    auto lcm_of = [](const Vec& a, const Vec& b) {
        Vec l(a.size());
        for (size_t t = 0; t < a.size(); ++t) l[t] = std::max(a[t], b[t]);
        return l;
    };

    // Gebauer-Moeller update for a newly appended element
    auto update_pairs = [&](int t) {
        const Vec& new_lead = basis[static_cast<size_t>(t)].lead;

        struct Cand {
            Coord deg;
            Vec lcm;
            int i;
            bool coprime;
        };
        std::vector<Cand> cands;
        cands.reserve(static_cast<size_t>(t));
        for (int i = 0; i < t; ++i) {
            const Vec& li = basis[static_cast<size_t>(i)].lead;
            Vec l = lcm_of(li, new_lead);
            bool coprime = true;
            for (size_t v = 0; v < l.size(); ++v)
                if (li[v] > 0 && new_lead[v] > 0) {
                    coprime = false;
                    break;
                }
            cands.push_back({total_degree(l), std::move(l), i, coprime});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.deg != b.deg) return a.deg < b.deg;
            if (a.lcm != b.lcm) return a.lcm < b.lcm;
            return a.i < b.i;
        });

        // keep a candidate if its leads are coprime (it may still kill
        // others) or no surviving/pending candidate's lcm divides its lcm.
        // degree-sorted processing means a proper divisor was processed
        // earlier (check `kept`); a pending divisor must be an identical lcm,
        // i.e. the immediate successor.
        std::vector<Cand> kept;
        for (size_t c = 0; c < cands.size(); ++c) {
            bool drop = false;
            if (!cands[c].coprime) {
                if (c + 1 < cands.size() && cands[c + 1].lcm == cands[c].lcm) drop = true;
                for (size_t k = 0; k < kept.size() && !drop; ++k)
                    if (divides(kept[k].lcm, cands[c].lcm)) drop = true;
            }
            if (!drop) kept.push_back(cands[c]);
        }

        // old pairs killed by the new lead (chain criterion)
        for (auto it = queue.begin(); it != queue.end();) {
            const auto& [deg, l, i, j] = *it;
            bool kill = divides(new_lead, l) &&
                        lcm_of(basis[static_cast<size_t>(i)].lead, new_lead) != l &&
                        lcm_of(basis[static_cast<size_t>(j)].lead, new_lead) != l;
            it = kill ? queue.erase(it) : std::next(it);
        }

        for (Cand& c : kept)
            if (!c.coprime) queue.emplace(c.deg, std::move(c.lcm), c.i, t);
    };

    auto append = [&](Binomial b) {
        lead_mask.push_back(mask_of(b.lead));
        lead_deg.push_back(b.degree());
        basis.push_back(std::move(b));
        update_pairs(static_cast<int>(basis.size()) - 1);
    };

    for (const Binomial& g : gens) {
        // re-orient under this order: gens may come from a run under another one
        auto b = make_binomial(g.lead, g.trail, order);
        if (!b) continue;
        auto nf = weak_nf(std::move(*b));
        if (!nf || known.count(*nf)) continue;
        known.insert(*nf);
        append(std::move(*nf));
    }

    while (!queue.empty()) {
        if (clock.expired()) {
            res.status = GBStatus::time_truncated;
            return res;
        }
        auto [deg, lcm, i, j] = *queue.begin();
        queue.erase(queue.begin());
        if (caps.degree_cap > 0 && deg > caps.degree_cap) {
            // queue is degree-sorted: everything left is over the cap
            res.status = GBStatus::degree_truncated;
            break;
        }
        ++res.spairs_processed;
        Vec u = lcm, v = lcm;
        {
            const Binomial& f = basis[static_cast<size_t>(i)];
            const Binomial& g = basis[static_cast<size_t>(j)];
            for (size_t t = 0; t < lcm.size(); ++t) {
                u[t] += f.trail[t] - f.lead[t];
                v[t] += g.trail[t] - g.lead[t];
            }
        }
        auto s = make_binomial(std::move(u), std::move(v), order);
        if (!s) continue;
        auto nf = weak_nf(std::move(*s));
        if (!nf || known.count(*nf)) continue;
        known.insert(*nf);
        append(std::move(*nf));
    }
    return res;
}

std::vector<Binomial> reduced_basis(std::vector<Binomial> gb, const TermOrder& order) {
    // minimalize: drop elements whose lead another lead divides
    std::sort(gb.begin(), gb.end(), [&](const Binomial& a, const Binomial& b) {
        int c = order.compare(a.lead, b.lead);
        if (c != 0) return c < 0;
        return a.trail < b.trail;
    });
    std::vector<Binomial> kept;
    for (const Binomial& g : gb) {
        bool redundant = false;
        for (const Binomial& h : kept)
            if (divides(h.lead, g.lead)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(g);
    }
    // tail-reduce: normal form of each trail against the whole basis
    for (Binomial& g : kept) {
        while (reduce_step(g.trail, kept)) {
        }
    }
    std::sort(kept.begin(), kept.end(), [&](const Binomial& a, const Binomial& b) {
        int c = order.compare(a.lead, b.lead);
        if (c != 0) return c < 0;
        return order.compare(a.trail, b.trail) < 0;
    });
    return kept;
}

std::vector<Binomial> lattice_ideal_generators(const std::vector<Vec>& points,
                                               const TermOrder& order) {
    check(!points.empty(), "no points");
    int dim = static_cast<int>(points[0].size());
    int n = static_cast<int>(points.size());
    IMat A(dim, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < dim; ++i) A.at(i, j) = points[static_cast<size_t>(j)][static_cast<size_t>(i)];
    std::vector<Binomial> gens;
    for (const Vec& z : kernel_basis(A)) {
        Vec u(static_cast<size_t>(n), 0), v(static_cast<size_t>(n), 0);
        for (int t = 0; t < n; ++t) {
            if (z[static_cast<size_t>(t)] > 0) u[static_cast<size_t>(t)] = z[static_cast<size_t>(t)];
            if (z[static_cast<size_t>(t)] < 0) v[static_cast<size_t>(t)] = -z[static_cast<size_t>(t)];
        }
        auto b = make_binomial(std::move(u), std::move(v), order);
        check(b.has_value(), "kernel basis vector is zero");
        gens.push_back(std::move(*b));
    }
    return gens;
}

GBResult toric_groebner_basis(const std::vector<Vec>& points, const TermOrder& order,
                              const Caps& caps) {
    if (!points_homogeneous(points))
        throw InputError("point configuration is not homogeneous; homogenize the spec first");
    check(order.n() == static_cast<int>(points.size()), "order size != point count");
    int n = static_cast<int>(points.size());
    Clock clock(caps.max_seconds);

    std::vector<Binomial> current = lattice_ideal_generators(points, order);
    GBResult res;
    // saturate one variable at a time; support-disjoint binomials make the
    // divide step implicit (see header)
    for (int i = 0; i < n; ++i) {
        Caps stage;
        stage.max_seconds = caps.max_seconds > 0 ? clock.remaining() : 0;
        auto sat = buchberger(current, grevlex_with_last(n, i), stage);
        if (sat.status == GBStatus::time_truncated) {
            res.basis = std::move(sat.basis);
            res.status = GBStatus::time_truncated;
            return res;
        }
        res.spairs_processed += sat.spairs_processed;
        current = std::move(sat.basis);
        // re-expressing against the new order happens inside the next run
    }
    Caps final_caps = caps;
    if (caps.max_seconds > 0) final_caps.max_seconds = clock.remaining();
    auto fin = buchberger(current, order, final_caps);
    res.spairs_processed += fin.spairs_processed;
    res.status = fin.status;
    if (fin.status == GBStatus::time_truncated) {
        res.basis = std::move(fin.basis);
        return res;
    }
    res.basis = reduced_basis(std::move(fin.basis), order);
    if (caps.degree_cap > 0) {
        // the survivors form exactly the cap-truncated reduced basis
        size_t before = res.basis.size();
        std::erase_if(res.basis, [&](const Binomial& g) {
            return g.degree() > caps.degree_cap;
        });
        if (res.basis.size() != before) res.status = GBStatus::degree_truncated;
    }
    return res;
}

Vec normal_form(Vec m, const std::vector<Binomial>& basis, const TermOrder& order) {
    (void)order;
    while (reduce_step(m, basis)) {
    }
    return m;
}

bool reduces_to_zero(const Vec& u, const Vec& v, const std::vector<Binomial>& basis,
                     const TermOrder& order) {
    return normal_form(u, basis, order) == normal_form(v, basis, order);
}

std::vector<Vec> initial_monomials(const std::vector<Binomial>& basis) {
    std::vector<Vec> leads;
    leads.reserve(basis.size());
    for (const Binomial& g : basis) leads.push_back(g.lead);
    return leads;
}

}  // namespace toriflow
