#include <doctest.h>

#include <algorithm>
#include <set>

#include "toriflow/enumerate.hpp"
#include "toriflow/toric.hpp"
#include "toriflow/worstcase.hpp"

using namespace toriflow;

namespace {

Vec sum_tables(const std::vector<Vec>& ts) {
    Vec s(ts.at(0).size(), 0);
    for (const Vec& t : ts)
        for (size_t p = 0; p < s.size(); ++p) s[p] += t[p];
    return s;
}

// positions of the ones of a permutation table, one column index per row
std::vector<int> perm_of(const Vec& t, int d) {
    std::vector<int> cols;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (t[static_cast<size_t>(r * d + c)] == 1) cols.push_back(c);
    return cols;
}

bool is_permutation_table(const Vec& t, int d) {
    for (Coord x : t)
        if (x != 0 && x != 1) return false;
    for (int r = 0; r < d; ++r) {
        Coord row = 0, col = 0;
        for (int k = 0; k < d; ++k) {
            row += t[static_cast<size_t>(r * d + k)];
            col += t[static_cast<size_t>(k * d + r)];
        }
        if (row != 1 || col != 1) return false;
    }
    return true;
}

const Vec& named_entry(const WorstCaseInstance& inst, const std::string& name) {
    for (const NamedMatrix& nm : inst.named)
        if (nm.name == name) return nm.entries;
    static Vec missing;
    REQUIRE(false);
    return missing;
}

}  // namespace

TEST_CASE("birkhoff family: the n=3 instance matches the displayed matrices") {
    WorstCaseInstance inst = birkhoff_family(3);
    CHECK(inst.degree() == 6);
    CHECK(inst.table_rows() == 6);
    CHECK(inst.lead_names == std::vector<std::string>{"A1", "A2", "A3", "B1", "B2", "B3"});

    // A_1 and B_1 as displayed, one column index per row
    CHECK(perm_of(inst.lead_tables[0], 6) == std::vector<int>{0, 4, 5, 1, 3, 2});
    CHECK(perm_of(inst.lead_tables[3], 6) == std::vector<int>{4, 0, 5, 3, 1, 2});

    // the total of both sides: diagonal blocks J_3, off-diagonal blocks S_3
    Vec expected{
        1, 0, 1, 3, 1, 0,  //
        1, 1, 0, 1, 2, 1,  //
        0, 1, 1, 0, 1, 3,  //
        3, 1, 0, 1, 0, 1,  //
        1, 2, 1, 1, 1, 0,  //
        0, 1, 3, 0, 1, 1,  //
    };
    CHECK(sum_tables(inst.lead_tables) == expected);
    CHECK(sum_tables(inst.trail_tables) == expected);

    // trail: identity first, then 2n-1 = 5 permutation matrices
    CHECK(inst.trail_tables.size() == 6);
    CHECK(perm_of(inst.trail_tables[0], 6) == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(named_entry(inst, "J") == Vec{1, 0, 1, 1, 1, 0, 0, 1, 1});
    CHECK(named_entry(inst, "S") == Vec{3, 1, 0, 1, 2, 1, 0, 1, 3});
}

TEST_CASE("birkhoff family: every member is a permutation matrix") {
    for (int n = 2; n <= 4; ++n) {
        WorstCaseInstance inst = birkhoff_family(n);
        CHECK(inst.degree() == 2 * n);
        CHECK(inst.trail_tables.size() == static_cast<size_t>(2 * n));
        for (const Vec& t : inst.lead_tables) CHECK(is_permutation_table(t, 2 * n));
        for (const Vec& t : inst.trail_tables) CHECK(is_permutation_table(t, 2 * n));
        std::set<Vec> distinct(inst.lead_tables.begin(), inst.lead_tables.end());
        CHECK(distinct.size() == inst.lead_tables.size());
    }
    CHECK_THROWS_AS(birkhoff_family(1), InputError);
}

TEST_CASE("birkhoff family: n=2 relation sits in the reduced basis") {
    WorstCaseInstance inst = birkhoff_family(2);
    PointList pts = enumerate_lattice_points(inst.spec, Caps{});
    CHECK(pts.size() == 24);

    PointedRelation rel = relation_in_points(inst, pts);
    TermOrder order = order_from_ranking(rel.ranking);
    CHECK(order.compare(rel.lead, rel.trail) == 1);

    Caps caps;
    caps.max_seconds = 120.0;
    GBResult gb = toric_groebner_basis(pts.points, order, caps);
    REQUIRE(gb.status == GBStatus::complete);
    CHECK(reduces_to_zero(rel.lead, rel.trail, gb.basis, order));

    bool lead_in_initial_ideal = false;
    for (const Binomial& b : gb.basis) lead_in_initial_ideal |= b.lead == rel.lead;
    CHECK(lead_in_initial_ideal);
    Coord deg = 0;
    for (Coord e : rel.lead) deg += e;
    CHECK(deg == 4);
}

TEST_CASE("transport family: smallest instance m=2, n=4") {
    WorstCaseInstance inst = transport_family(2, 4);
    CHECK(inst.degree() == 2);
    CHECK(inst.margins.rows == std::vector<Coord>{2, 2});
    CHECK(inst.margins.cols == std::vector<Coord>{1, 1, 1, 1});
    CHECK(inst.lead_names == std::vector<std::string>{"A12", "B12"});
    CHECK(inst.trail_names == std::vector<std::string>{"E", "D"});
    CHECK(inst.lead_tables[0] == Vec{1, 0, 1, 0, 0, 1, 0, 1});
    CHECK(inst.lead_tables[1] == Vec{0, 1, 0, 1, 1, 0, 1, 0});

    PointList pts = enumerate_lattice_points(inst.spec, Caps{});
    CHECK(pts.size() == 6);
    PointedRelation rel = relation_in_points(inst, pts);
    TermOrder order = order_from_ranking(rel.ranking);
    CHECK(order.compare(rel.lead, rel.trail) == 1);

    GBResult gb = toric_groebner_basis(pts.points, order, Caps{});
    REQUIRE(gb.status == GBStatus::complete);
    CHECK(reduces_to_zero(rel.lead, rel.trail, gb.basis, order));
    bool found = false;
    for (const Binomial& b : gb.basis) found |= b.lead == rel.lead;
    CHECK(found);
}

TEST_CASE("transport family: margins and row/column sums are forced") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {4, 4}, {4, 6}, {6, 6}}) {
        WorstCaseInstance inst = transport_family(m, n);
        CHECK(inst.degree() == m * (n - 2) / 2);
        for (const Vec& t : inst.lead_tables) {
            for (int r = 0; r < m; ++r) {
                Coord s = 0;
                for (int c = 0; c < n; ++c) s += t[static_cast<size_t>(r * n + c)];
                CHECK(s == n / 2);
            }
            for (int c = 0; c < n; ++c) {
                Coord s = 0;
                for (int r = 0; r < m; ++r) s += t[static_cast<size_t>(r * n + c)];
                CHECK(s == m / 2);
            }
        }
    }
    CHECK_THROWS_AS(transport_family(3, 6), InputError);
    CHECK_THROWS_AS(transport_family(2, 3), InputError);
    CHECK_THROWS_AS(transport_family(2, 2), InputError);
    CHECK_THROWS_AS(transport_family(0, 4), InputError);
}

TEST_CASE("transport family: m=n=6 totals match the displayed block pattern") {
    WorstCaseInstance inst = transport_family(6, 6);
    CHECK(inst.degree() == 12);
    CHECK(inst.margins.rows == std::vector<Coord>(6, 3));
    CHECK(inst.margins.cols == std::vector<Coord>(6, 3));
    // 2 C's, 10 D's, one E on the trail side
    CHECK(std::count(inst.trail_names.begin(), inst.trail_names.end(), "C") == 1);
    CHECK(std::count(inst.trail_names.begin(), inst.trail_names.end(), "D") == 10);

    Vec total = sum_tables(inst.lead_tables);
    CHECK(total == sum_tables(inst.trail_tables));
    // left half rows: n/2-1 then ones; right half: (m(n-2)-n)/2+1 then
    // m(n-2)/2 - 1, mirrored in the lower blocks
    for (int r = 0; r < 3; ++r) {
        CHECK(total[static_cast<size_t>(r * 6 + 0)] == 2);
        CHECK(total[static_cast<size_t>(r * 6 + 1)] == 1);
        CHECK(total[static_cast<size_t>(r * 6 + 2)] == 1);
        CHECK(total[static_cast<size_t>(r * 6 + 3)] == 10);
        CHECK(total[static_cast<size_t>(r * 6 + 4)] == 11);
        CHECK(total[static_cast<size_t>(r * 6 + 5)] == 11);
        CHECK(total[static_cast<size_t>((3 + r) * 6 + 0)] == 10);
        CHECK(total[static_cast<size_t>((3 + r) * 6 + 3)] == 2);
        CHECK(total[static_cast<size_t>((3 + r) * 6 + 4)] == 1);
    }
}

TEST_CASE("transport family: example matrix A_12 for m=n=6") {
    WorstCaseInstance inst = transport_family(6, 6);
    CHECK(inst.lead_names[0] == "A12");
    CHECK(inst.lead_tables[0] == Vec{
              1, 0, 0, 1, 0, 1,  //
              0, 0, 0, 1, 1, 1,  //
              0, 0, 0, 1, 1, 1,  //
              0, 1, 1, 0, 1, 0,  //
              1, 1, 1, 0, 0, 0,  //
              1, 1, 1, 0, 0, 0,  //
          });
}

TEST_CASE("smooth shift: margins move as displayed") {
    WorstCaseInstance smooth = smooth_shift(transport_family(6, 6));
    CHECK(smooth.family == WorstCaseFamily::transportation_smooth);
    CHECK(smooth.margins.rows == std::vector<Coord>(6, 39));
    CHECK(smooth.margins.cols == std::vector<Coord>{3, 3, 3, 3, 3, 219});
    CHECK(smooth.degree() == 12);
    CHECK(sum_tables(smooth.lead_tables) == sum_tables(smooth.trail_tables));

    // small case recomputed from the formulas: r_i = n/2 + mn, c_last = m^2 n + m/2
    WorstCaseInstance small = smooth_shift(transport_family(2, 4));
    CHECK(small.margins.rows == std::vector<Coord>{10, 10});
    CHECK(small.margins.cols == std::vector<Coord>{1, 1, 1, 17});
    // shifting touched only the last column
    for (size_t k = 0; k < small.lead_tables.size(); ++k)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 4; ++c) {
                Coord before = transport_family(2, 4).lead_tables[k][static_cast<size_t>(r * 4 + c)];
                Coord after = small.lead_tables[k][static_cast<size_t>(r * 4 + c)];
                CHECK(after == before + (c == 3 ? 8 : 0));
            }

    CHECK_THROWS_AS(smooth_shift(birkhoff_family(2)), InputError);
    CHECK_THROWS_AS(smooth_shift(smooth), InputError);
}

TEST_CASE("covering certificate: both facts hold for the paper instances") {
    CoverReport b3 = covering_certificate(birkhoff_family(3));
    CHECK(b3.ok());
    CHECK(b3.necessity);
    CHECK(b3.privacy);
    CHECK(b3.failures.empty());

    CoverReport t66 = covering_certificate(transport_family(6, 6));
    CHECK(t66.ok());
    CHECK(t66.failures.empty());

    CHECK(covering_certificate(birkhoff_family(2)).ok());
    CHECK(covering_certificate(transport_family(2, 4)).ok());
    CHECK(covering_certificate(smooth_shift(transport_family(2, 4))).ok());
    // the shift pads every last-column entry, so this certifies through the
    // offset-free view
    CHECK(covering_certificate(smooth_shift(transport_family(6, 6))).ok());
    CHECK(covering_certificate(smooth_shift(transport_family(4, 8))).ok());
}

TEST_CASE("covering certificate: a duplicated member loses privacy") {
    WorstCaseInstance inst = birkhoff_family(3);
    inst.lead_tables[1] = inst.lead_tables[0];
    CoverReport rep = covering_certificate(inst);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.privacy);
    CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("relation in points: ranking is a permutation with the family last") {
    WorstCaseInstance inst = birkhoff_family(2);
    PointList pts = enumerate_lattice_points(inst.spec, Caps{});
    PointedRelation rel = relation_in_points(inst, pts);

    std::vector<int> sorted = rel.ranking;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < pts.size(); ++i) CHECK(sorted[static_cast<size_t>(i)] == i);
    // cheapest = identity matrix, preceded by the four family members
    CHECK(pts[rel.ranking.back()] == inst.trail_tables[0]);
    for (int k = 2; k <= 5; ++k) {
        const Vec& p = pts[rel.ranking[rel.ranking.size() - static_cast<size_t>(k)]];
        CHECK(std::count(inst.lead_tables.begin(), inst.lead_tables.end(), p) == 1);
    }

    // a point list missing a family member is rejected
    PointList small;
    small.push(inst.lead_tables[0]);
    CHECK_THROWS_AS(relation_in_points(inst, small), InputError);
}