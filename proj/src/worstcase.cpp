#include "toriflow/worstcase.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "toriflow/netflow.hpp"

namespace toriflow {

namespace {

Vec table_sum(const std::vector<Vec>& tables) {
    check(!tables.empty(), "relation side must be nonempty");
    Vec s(tables[0].size(), 0);
    for (const Vec& t : tables) {
        check(t.size() == s.size(), "relation tables must share a shape");
        for (size_t p = 0; p < s.size(); ++p) s[p] += t[p];
    }
    return s;
}

// shared tail of every constructor: margins -> spec, identity and
// membership checks. Any failure here is a bug in the construction.
void finish(WorstCaseInstance& inst) {
    inst.margins.validate();
    inst.spec = transportation_as_flow(inst.margins);
    check(inst.lead_tables.size() == inst.trail_tables.size(),
          "relation degrees must agree");
    check(table_sum(inst.lead_tables) == table_sum(inst.trail_tables),
          "relation identity failed");
    for (const Vec& t : inst.lead_tables)
        check(!validate_flow(inst.spec, IntegerFlow{t}), "lead table off the polytope");
    for (const Vec& t : inst.trail_tables)
        check(!validate_flow(inst.spec, IntegerFlow{t}), "trail table off the polytope");
    inst.ranking_tail = inst.lead_tables;
    inst.ranking_tail.push_back(inst.trail_tables[0]);
}

}  // namespace

WorstCaseInstance birkhoff_family(int n) {
    if (n < 2) throw InputError("birkhoff family needs n >= 2");
    const int d = 2 * n;
    auto idx = [d](int r, int c) { return static_cast<size_t>(r * d + c); };

    // n x n building blocks, embedded at block offsets (br, bc):
    //   M^i  : single one at (i, i)
    //   Mt^i : single one at (i+1 mod n, i)
    //   N^i  : identity minus the (i, i) one
    //   Nt^i : row i+1 mod n and column i deleted leave an identity
    auto block_m = [&](Vec& t, int br, int bc, int i) { t[idx(br + i, bc + i)] += 1; };
    auto block_mt = [&](Vec& t, int br, int bc, int i) {
        t[idx(br + (i + 1) % n, bc + i)] += 1;
    };
    auto block_n = [&](Vec& t, int br, int bc, int i) {
        for (int j = 0; j < n; ++j)
            if (j != i) t[idx(br + j, bc + j)] += 1;
    };
    auto block_nt = [&](Vec& t, int br, int bc, int i) {
        int rdel = (i + 1) % n, cdel = i;
        for (int j = 0; j < n; ++j) {
            if (j == rdel) continue;
            for (int k = 0; k < n; ++k) {
                if (k == cdel) continue;
                if (j - (j > rdel ? 1 : 0) == k - (k > cdel ? 1 : 0))
                    t[idx(br + j, bc + k)] += 1;
            }
        }
    };

    WorstCaseInstance inst;
    inst.family = WorstCaseFamily::birkhoff;
    inst.pn = n;
    inst.margins.rows.assign(static_cast<size_t>(d), 1);
    inst.margins.cols.assign(static_cast<size_t>(d), 1);

    for (int i = 0; i < n; ++i) {
        Vec a(static_cast<size_t>(d * d), 0), b = a;
        block_m(a, 0, 0, i);
        block_n(a, 0, n, i);
        block_nt(a, n, 0, i);
        block_mt(a, n, n, i);
        block_mt(b, 0, 0, i);
        block_nt(b, 0, n, i);
        block_n(b, n, 0, i);
        block_m(b, n, n, i);
        inst.lead_tables.push_back(a);
        inst.lead_names.push_back("A" + std::to_string(i + 1));
        inst.lead_tables.push_back(b);
        inst.lead_names.push_back("B" + std::to_string(i + 1));
    }
    // keep the A block together, then the B block, as displayed
    std::vector<Vec> leads;
    std::vector<std::string> lead_names;
    for (size_t k = 0; k < inst.lead_tables.size(); k += 2) {
        leads.push_back(inst.lead_tables[k]);
        lead_names.push_back(inst.lead_names[k]);
    }
    for (size_t k = 1; k < inst.lead_tables.size(); k += 2) {
        leads.push_back(inst.lead_tables[k]);
        lead_names.push_back(inst.lead_names[k]);
    }
    inst.lead_tables = std::move(leads);
    inst.lead_names = std::move(lead_names);

    // J_n: ones on the diagonal and the cyclic subdiagonal;
    // S_n: tridiagonal with 2n-3 at the corner diagonal entries, 2n-4 inside
    Vec jn(static_cast<size_t>(n * n), 0), sn = jn;
    for (int j = 0; j < n; ++j) {
        jn[static_cast<size_t>(j * n + j)] = 1;
        jn[static_cast<size_t>(((j + 1) % n) * n + j)] = 1;
        sn[static_cast<size_t>(j * n + j)] =
            (j == 0 || j == n - 1) ? 2 * n - 3 : 2 * n - 4;
        if (j + 1 < n) {
            sn[static_cast<size_t>(j * n + j + 1)] = 1;
            sn[static_cast<size_t>((j + 1) * n + j)] = 1;
        }
    }
    Vec expected(static_cast<size_t>(d * d), 0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Coord jv = jn[static_cast<size_t>(j * n + k)];
            Coord sv = sn[static_cast<size_t>(j * n + k)];
            expected[idx(j, k)] = jv;
            expected[idx(n + j, n + k)] = jv;
            expected[idx(j, n + k)] = sv;
            expected[idx(n + j, k)] = sv;
        }
    Vec total = table_sum(inst.lead_tables);
    check(total == expected, "birkhoff relation identity failed");

    // trail: the identity plus a decomposition of the rest into 2n-1
    // permutation matrices (the displayed sum names them M_j)
    Vec id(static_cast<size_t>(d * d), 0), rest = total;
    for (int j = 0; j < d; ++j) id[idx(j, j)] = 1;
    for (size_t p = 0; p < rest.size(); ++p) rest[p] -= id[p];
    DecomposeResult parts = decompose_table(inst.margins, rest, d - 1);
    check(parts.ok(), "birkhoff trail decomposition failed");
    inst.trail_tables.push_back(id);
    inst.trail_names.push_back("I");
    for (size_t j = 0; j < parts.decomposition->parts.size(); ++j) {
        inst.trail_tables.push_back(parts.decomposition->parts[j].values);
        inst.trail_names.push_back("M" + std::to_string(j + 1));
    }

    for (int i = 0; i < n; ++i) {
        Vec m(static_cast<size_t>(n * n), 0), mt = m, nn = m, nt = m;
        m[static_cast<size_t>(i * n + i)] = 1;
        mt[static_cast<size_t>(((i + 1) % n) * n + i)] = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) nn[static_cast<size_t>(j * n + j)] = 1;
        int rdel = (i + 1) % n, cdel = i;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (j != rdel && k != cdel &&
                    j - (j > rdel ? 1 : 0) == k - (k > cdel ? 1 : 0))
                    nt[static_cast<size_t>(j * n + k)] = 1;
        std::string si = std::to_string(i + 1);
        inst.named.push_back({"M" + si, n, n, m});
        inst.named.push_back({"Mtilde" + si, n, n, mt});
        inst.named.push_back({"N" + si, n, n, nn});
        inst.named.push_back({"Ntilde" + si, n, n, nt});
    }
    inst.named.push_back({"J", n, n, jn});
    inst.named.push_back({"S", n, n, sn});
    for (size_t k = 0; k < inst.lead_tables.size(); ++k)
        inst.named.push_back({inst.lead_names[k], d, d, inst.lead_tables[k]});

    finish(inst);
    return inst;
}

WorstCaseInstance transport_family(int m, int n) {
    if (m < 2 || n < 4 || m % 2 != 0 || n % 2 != 0)
        throw InputError("transport family needs even m >= 2 and even n >= 4");
    const int mh = m / 2, nh = n / 2;
    auto idx = [n](int r, int c) { return static_cast<size_t>(r * n + c); };

    // place an mh x nh block b at block offsets (br, bc); b(j,k) callable
    auto fill = [&](Vec& t, int br, int bc, auto&& b) {
        for (int j = 0; j < mh; ++j)
            for (int k = 0; k < nh; ++k) t[idx(br + j, bc + k)] += b(j, k);
    };
    auto ones_at = [](int i, int j) {
        return [i, j](int r, int c) -> Coord { return r == i && c == j ? 1 : 0; };
    };
    auto zeros_at = [](int i, int j) {
        return [i, j](int r, int c) -> Coord { return r == i && c == j ? 0 : 1; };
    };
    auto all_ones = [](int, int) -> Coord { return 1; };
    auto all_zero = [](int, int) -> Coord { return 0; };
    auto first_col = [](int, int c) -> Coord { return c == 0 ? 1 : 0; };
    auto not_first_col = [](int, int c) -> Coord { return c == 0 ? 0 : 1; };

    WorstCaseInstance inst;
    inst.family = WorstCaseFamily::transportation;
    inst.pm = m;
    inst.pn = n;
    inst.margins.rows.assign(static_cast<size_t>(m), nh);
    inst.margins.cols.assign(static_cast<size_t>(n), mh);

    const size_t sz = static_cast<size_t>(m * n);
    for (int i = 0; i < mh; ++i)
        for (int j = 1; j < nh; ++j) {
            Vec a(sz, 0), b(sz, 0);
            fill(a, 0, 0, ones_at(i, 0));
            fill(a, 0, nh, zeros_at(i, j));
            fill(a, mh, 0, zeros_at(i, 0));
            fill(a, mh, nh, ones_at(i, j));
            fill(b, 0, 0, ones_at(i, j));
            fill(b, 0, nh, zeros_at(i, 0));
            fill(b, mh, 0, zeros_at(i, j));
            fill(b, mh, nh, ones_at(i, 0));
            std::string suffix = std::to_string(i + 1) + std::to_string(j + 1);
            inst.lead_tables.push_back(a);
            inst.lead_names.push_back("A" + suffix);
            inst.lead_tables.push_back(b);
            inst.lead_names.push_back("B" + suffix);
        }

    Vec c_mat(sz, 0), d_mat(sz, 0), e_mat(sz, 0);
    fill(c_mat, 0, 0, first_col);
    fill(c_mat, 0, nh, not_first_col);
    fill(c_mat, mh, 0, not_first_col);
    fill(c_mat, mh, nh, first_col);
    fill(d_mat, 0, nh, all_ones);
    fill(d_mat, mh, 0, all_ones);
    fill(d_mat, 0, 0, all_zero);
    fill(e_mat, 0, 0, all_ones);
    fill(e_mat, mh, nh, all_ones);

    inst.trail_tables.push_back(e_mat);
    inst.trail_names.push_back("E");
    for (int r = 0; r < nh - 2; ++r) {
        inst.trail_tables.push_back(c_mat);
        inst.trail_names.push_back("C");
    }
    for (int r = 0; r < (m * (n - 2) - n) / 2 + 1; ++r) {
        inst.trail_tables.push_back(d_mat);
        inst.trail_names.push_back("D");
    }
    check(inst.degree() == m * (n - 2) / 2, "transport relation degree is off");

    inst.named.push_back({"C", m, n, c_mat});
    inst.named.push_back({"D", m, n, d_mat});
    inst.named.push_back({"E", m, n, e_mat});
    for (size_t k = 0; k < inst.lead_tables.size(); ++k)
        inst.named.push_back({inst.lead_names[k], m, n, inst.lead_tables[k]});

    finish(inst);
    return inst;
}

WorstCaseInstance smooth_shift(const WorstCaseInstance& inst) {
    if (inst.family != WorstCaseFamily::transportation)
        throw InputError("smooth shift applies to the plain transportation family");
    const int m = inst.pm, n = inst.pn;
    const Coord shift = static_cast<Coord>(m) * n;

    WorstCaseInstance out = inst;
    out.family = WorstCaseFamily::transportation_smooth;
    auto shift_table = [&](Vec& t) {
        for (int r = 0; r < m; ++r) t[static_cast<size_t>(r * n + n - 1)] += shift;
    };
    for (Vec& t : out.lead_tables) shift_table(t);
    for (Vec& t : out.trail_tables) shift_table(t);
    for (NamedMatrix& nm : out.named)
        if (nm.rows == m && nm.cols == n) shift_table(nm.entries);
    for (Coord& r : out.margins.rows) r += shift;
    out.margins.cols.back() += static_cast<Coord>(m) * shift;
    out.ranking_tail.clear();

    finish(out);
    return out;
}

CoverReport covering_certificate(const WorstCaseInstance& inst) {
    CoverReport rep;
    // any entrywise offset shared by every table (the smooth shift adds one
    // to the last column) is structural padding; the covering facts live on
    // the offset-free tables, and x -> x - offset is a lattice isomorphism
    Vec offset = inst.trail_tables[0];
    for (const std::vector<Vec>* side : {&inst.lead_tables, &inst.trail_tables})
        for (const Vec& t : *side)
            for (size_t p = 0; p < offset.size(); ++p)
                offset[p] = std::min(offset[p], t[p]);

    Vec minimal = inst.trail_tables[0];
    std::vector<Vec> fam = inst.lead_tables;
    for (size_t p = 0; p < offset.size(); ++p) {
        minimal[p] -= offset[p];
        for (Vec& f : fam) f[p] -= offset[p];
    }

    // the family must cover every one-entry of the minimal element at all
    for (size_t p = 0; p < minimal.size(); ++p) {
        if (minimal[p] < 1) continue;
        bool covered = false;
        for (const Vec& f : fam) covered = covered || f[p] >= 1;
        if (!covered) {
            rep.necessity = false;
            rep.failures.push_back("entry " + std::to_string(p) +
                                   " of the minimal element is uncovered");
        }
    }

    for (size_t i = 0; i < fam.size(); ++i) {
        bool necessary = false, private_one = false;
        for (size_t p = 0; p < minimal.size(); ++p) {
            if (fam[i][p] < 1) continue;
            bool alone = true;
            for (size_t j = 0; j < fam.size(); ++j)
                if (j != i && fam[j][p] >= 1) alone = false;
            if (!alone) continue;
            private_one = true;
            if (minimal[p] >= 1) necessary = true;
        }
        if (!necessary) {
            rep.necessity = false;
            rep.failures.push_back(inst.lead_names[i] +
                                   " is not needed to cover the minimal element");
        }
        if (!private_one) {
            rep.privacy = false;
            rep.failures.push_back(inst.lead_names[i] +
                                   " has no one-entry of its own");
        }
    }
    return rep;
}

PointedRelation relation_in_points(const WorstCaseInstance& inst, const PointList& pts) {
    PointedRelation rel;
    rel.lead.assign(static_cast<size_t>(pts.size()), 0);
    rel.trail = rel.lead;
    auto locate = [&](const Vec& t) {
        int id = pts.find(t);
        if (id < 0) throw InputError("relation table is not among the points");
        return id;
    };
    for (const Vec& t : inst.lead_tables) ++rel.lead[static_cast<size_t>(locate(t))];
    for (const Vec& t : inst.trail_tables) ++rel.trail[static_cast<size_t>(locate(t))];

    std::vector<int> tail;
    std::set<int> in_tail;
    for (const Vec& t : inst.ranking_tail) {
        int id = locate(t);
        check(in_tail.insert(id).second, "ranking tail repeats a point");
        tail.push_back(id);
    }
    for (int id = 0; id < pts.size(); ++id)
        if (!in_tail.count(id)) rel.ranking.push_back(id);
    rel.ranking.insert(rel.ranking.end(), tail.begin(), tail.end());
    return rel;
}

}  // namespace toriflow
