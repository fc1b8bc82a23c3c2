#include <doctest.h>

#include <numeric>

#include "toriflow/cells.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/order.hpp"

using namespace toriflow;

namespace {

Vec expo(std::initializer_list<Coord> xs) { return Vec(xs); }

FlowPolytopeSpec trans(std::vector<Coord> rows, std::vector<Coord> cols) {
    TransportationSpec t;
    t.rows = std::move(rows);
    t.cols = std::move(cols);
    return transportation_as_flow(t);
}

}  // namespace

TEST_CASE("grevlex hand comparisons") {
    auto o = grevlex_order(3);
    // same degree: fewer of the cheapest differing variable wins
    CHECK(o.compare(expo({0, 2, 0}), expo({1, 0, 1})) == 1);   // x1^2 > x0 x2
    CHECK(o.compare(expo({1, 0, 1}), expo({0, 2, 0})) == -1);
    CHECK(o.compare(expo({1, 0, 0}), expo({0, 1, 0})) == 1);   // x0 > x1
    CHECK(o.compare(expo({0, 1, 0}), expo({0, 0, 1})) == 1);   // x1 > x2
    CHECK(o.compare(expo({2, 0, 0}), expo({1, 1, 0})) == 1);
    // degree dominates
    CHECK(o.compare(expo({0, 0, 3}), expo({1, 1, 0})) == 1);
    CHECK(o.compare(expo({1, 1, 1}), expo({1, 1, 1})) == 0);
}

TEST_CASE("weights dominate degree and revlex") {
    auto o = order_from_ranking({0, 1, 2}, {0, 1, 4});
    // segment 0,1,2 with squared heights: the extremes beat the middle
    CHECK(o.compare(expo({1, 0, 1}), expo({0, 2, 0})) == 1);  // 4 > 2
    CHECK(o.compare(expo({0, 0, 1}), expo({0, 3, 0})) == 1);  // weight 4 > 3
}

TEST_CASE("order properties: antisymmetry, multiplicativity, positivity") {
    Rng rng(31337);
    auto o = order_from_ranking({3, 0, 2, 1, 4}, {2, 0, 1, 5, 0});
    for (int trial = 0; trial < 300; ++trial) {
        Vec a(5), b(5), c(5);
        for (int v = 0; v < 5; ++v) {
            a[static_cast<size_t>(v)] = static_cast<Coord>(rng.below(4));
            b[static_cast<size_t>(v)] = static_cast<Coord>(rng.below(4));
            c[static_cast<size_t>(v)] = static_cast<Coord>(rng.below(4));
        }
        int ab = o.compare(a, b);
        CHECK(o.compare(b, a) == -ab);
        CHECK(o.compare(a, a) == 0);
        Vec ac(5), bc(5);
        for (int v = 0; v < 5; ++v) {
            ac[static_cast<size_t>(v)] = a[static_cast<size_t>(v)] + c[static_cast<size_t>(v)];
            bc[static_cast<size_t>(v)] = b[static_cast<size_t>(v)] + c[static_cast<size_t>(v)];
        }
        CHECK(o.compare(ac, bc) == ab);  // translation invariance
        if (a != Vec(5, 0)) CHECK(o.compare(a, Vec(5, 0)) == 1);
        // totality: distinct monomials always compare strictly
        if (a != b) CHECK(ab != 0);
    }
}

TEST_CASE("grevlex_with_last makes the chosen variable cheapest") {
    for (int n : {3, 5}) {
        for (int i = 0; i < n; ++i) {
            auto o = grevlex_with_last(n, i);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Vec ei(static_cast<size_t>(n), 0), ej(static_cast<size_t>(n), 0);
                ei[static_cast<size_t>(i)] = 1;
                ej[static_cast<size_t>(j)] = 1;
                CHECK(o.compare(ei, ej) == -1);
            }
            // remaining variables keep their relative order
            std::vector<int> seen;
            for (int v = 0; v < n; ++v)
                if (v != i) seen.push_back(o.order_pos[static_cast<size_t>(v)]);
            CHECK(std::is_sorted(seen.begin(), seen.end()));
        }
    }
}

TEST_CASE("ranking semantics: earlier in the list = more expensive") {
    auto o = order_from_ranking({2, 0, 1});
    Vec e0 = expo({1, 0, 0}), e1 = expo({0, 1, 0}), e2 = expo({0, 0, 1});
    CHECK(o.compare(e2, e0) == 1);
    CHECK(o.compare(e0, e1) == 1);
    CHECK(o.compare(e2, e1) == 1);

    CHECK_THROWS_AS(order_from_ranking({0, 0, 1}), InputError);
    CHECK_THROWS_AS(order_from_ranking({0, 1, 5}), InputError);
    CHECK_THROWS_AS(order_from_ranking({0, 1}, {1, 2, 3}), InputError);
    CHECK_THROWS_AS(order_from_ranking({0, 1}, {1, -2}), InputError);
}

TEST_CASE("squared heights restrict to explicit affine functions on cells") {
    Rng rng(2024);
    // covers transportation and general graphs
    std::vector<FlowPolytopeSpec> specs;
    specs.push_back(trans({2, 2}, {2, 2}));
    specs.push_back(trans({1, 1, 1}, {1, 1, 1}));
    specs.push_back(trans({2, 2}, {1, 1, 1, 1}));
    specs.push_back(trans({3, 2}, {2, 2, 1}));
    for (const auto& spec : specs) {
        auto pts = enumerate_lattice_points(spec);
        auto w = squared_height_weights(pts.points);
        auto cells = covering_cells(spec, pts);
        for (const Cell& cell : cells) {
            // h_a = 2 k_a + 1, c = -sum k_a (k_a + 1)
            Vec h(cell.offset.size());
            Coord c = 0;
            for (size_t a = 0; a < cell.offset.size(); ++a) {
                h[a] = 2 * cell.offset[a] + 1;
                c -= cell.offset[a] * (cell.offset[a] + 1);
            }
            std::vector<bool> inside(static_cast<size_t>(pts.size()), false);
            for (int id : cell.point_ids) inside[static_cast<size_t>(id)] = true;
            for (int q = 0; q < pts.size(); ++q) {
                Coord val = c;
                for (size_t a = 0; a < h.size(); ++a) val += h[a] * pts[q][a];
                if (inside[static_cast<size_t>(q)]) {
                    CHECK(val == w[static_cast<size_t>(q)]);
                } else {
                    CHECK(val < w[static_cast<size_t>(q)]);
                }
            }
        }
    }
    (void)rng;
}

TEST_CASE("subdivide-and-pull order prefers higher squared height") {
    auto spec = trans({2, 2}, {2, 2});
    auto pts = enumerate_lattice_points(spec);
    auto o = subdivide_pull_order(pts.points);
    REQUIRE(o.n() == 3);
    CHECK(o.weights == Vec{8, 4, 8});  // w([0,2,2,0]) = 8, w([1,1,1,1]) = 4
    // x_outer^2 vs x_outer' x_mid etc.
    CHECK(o.compare(expo({1, 0, 1}), expo({0, 2, 0})) == 1);
    CHECK_THROWS_AS(subdivide_pull_order(pts.points, {0, 1}), InputError);
}
