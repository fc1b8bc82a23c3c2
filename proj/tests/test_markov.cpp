#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "toriflow/cells.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"
#include "toriflow/markov.hpp"

using namespace toriflow;

namespace {

TransportationSpec tspec(std::vector<Coord> rows, std::vector<Coord> cols) {
    TransportationSpec t;
    t.rows = std::move(rows);
    t.cols = std::move(cols);
    return t;
}

Vec image_of(const PointList& pts, const Vec& expo) {
    Vec img(pts[0].size(), 0);
    for (size_t j = 0; j < expo.size(); ++j)
        for (size_t a = 0; a < img.size(); ++a)
            img[a] += expo[j] * pts[static_cast<int>(j)][a];
    return img;
}

// split B_3 point ids into even and odd permutations via inversion counts
void birkhoff_parity(const PointList& pts, std::vector<int>& evens, std::vector<int>& odds) {
    for (int idx = 0; idx < pts.size(); ++idx) {
        std::vector<int> sigma(3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (pts[idx][static_cast<size_t>(3 * r + c)] == 1) sigma[static_cast<size_t>(r)] = c;
        int inv = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (sigma[static_cast<size_t>(a)] > sigma[static_cast<size_t>(b)]) ++inv;
        (inv % 2 == 0 ? evens : odds).push_back(idx);
    }
}

Vec expo_of(int n, const std::vector<int>& ids) {
    Vec e(static_cast<size_t>(n), 0);
    for (int id : ids) ++e[static_cast<size_t>(id)];
    return e;
}

// all exponent vectors over n points with the given total degree
void all_expos(int n, int deg, std::vector<Vec>& out) {
    Vec cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == n - 1) {
            cur[static_cast<size_t>(var)] = left;
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[static_cast<size_t>(var)] = k;
            self(self, var + 1, left - k);
        }
    };
    if (n > 0) rec(rec, 0, deg);
}

}  // namespace

TEST_CASE("move generation on the frozen small configurations") {
    // B_3: no quadrics, exactly the even/odd cubic
    auto spec3 = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts3 = enumerate_lattice_points(spec3);
    auto moves3 = generate_moves_deg23(spec3, pts3);
    REQUIRE(moves3.size() == 1);
    CHECK(moves3.moves[0].degree() == 3);
    std::vector<int> evens, odds;
    birkhoff_parity(pts3, evens, odds);
    Vec even_expo = expo_of(pts3.size(), evens), odd_expo = expo_of(pts3.size(), odds);
    CHECK(((moves3.moves[0].lead == even_expo && moves3.moves[0].trail == odd_expo) ||
           (moves3.moves[0].lead == odd_expo && moves3.moves[0].trail == even_expo)));

    // two-point configurations without relations
    auto spec1 = transportation_as_flow(tspec({1, 1}, {1, 1}));
    auto pts1 = enumerate_lattice_points(spec1);
    CHECK(generate_moves_deg23(spec1, pts1).size() == 0);

    auto spec2 = transportation_as_flow(tspec({2, 1}, {1, 2}));
    auto pts2 = enumerate_lattice_points(spec2);
    CHECK(generate_moves_deg23(spec2, pts2).size() == 0);

    // segment: the single quadric x0 x2 = x1^2 (a cross-cell relation)
    auto seg = transportation_as_flow(tspec({2, 2}, {2, 2}));
    auto ptsS = enumerate_lattice_points(seg);
    auto movesS = generate_moves_deg23(seg, ptsS);
    REQUIRE(movesS.size() == 1);
    CHECK(movesS.moves[0].lead == Vec{1, 0, 1});
    CHECK(movesS.moves[0].trail == Vec{0, 2, 0});
}

TEST_CASE("every generated move is a genuine relation") {
    for (auto spec : {transportation_as_flow(tspec({2, 2}, {1, 1, 1, 1})),
                      transportation_as_flow(tspec({2, 2, 1}, {2, 2, 1})),
                      transportation_as_flow(tspec({3, 2}, {2, 2, 1}))}) {
        auto pts = enumerate_lattice_points(spec);
        auto moves = generate_moves_deg23(spec, pts);
        for (const Binomial& mv : moves.moves) {
            Coord dl = std::accumulate(mv.lead.begin(), mv.lead.end(), Coord(0));
            Coord dt = std::accumulate(mv.trail.begin(), mv.trail.end(), Coord(0));
            CHECK(dl == dt);
            CHECK((dl == 2 || dl == 3));
            CHECK(image_of(pts, mv.lead) == image_of(pts, mv.trail));
            for (size_t t = 0; t < mv.lead.size(); ++t)
                CHECK((mv.lead[t] == 0 || mv.trail[t] == 0));  // cancelled
        }
    }
}

TEST_CASE("fiber enumeration matches the exhaustive multiset oracle") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);

    // degree 1: the fiber of a point is that point
    auto f1 = enumerate_fiber(pts, pts[2], 1);
    REQUIRE(f1.elements.size() == 1);
    CHECK(f1.elements[0] == expo_of(6, {2}));
    CHECK(enumerate_fiber(pts, Vec(9, 7), 1).elements.empty());

    // degree 3 over J_3: exactly the even and the odd triple
    Vec j3(9, 1);
    auto f3 = enumerate_fiber(pts, j3, 3);
    std::vector<int> evens, odds;
    birkhoff_parity(pts, evens, odds);
    std::set<Vec> expect{expo_of(6, evens), expo_of(6, odds)};
    CHECK(std::set<Vec>(f3.elements.begin(), f3.elements.end()) == expect);

    // oracle: walk all degree-3 exponent vectors
    std::vector<Vec> all;
    all_expos(6, 3, all);
    int matching = 0;
    for (const Vec& e : all)
        if (image_of(pts, e) == j3) ++matching;
    CHECK(matching == 2);

    // the triple {P,P,P} lies in the fiber of 3P
    Vec p0 = pts[0];
    Vec triple(p0.size());
    for (size_t a = 0; a < p0.size(); ++a) triple[a] = 3 * p0[a];
    auto ftriple = enumerate_fiber(pts, triple, 3);
    CHECK(std::find(ftriple.elements.begin(), ftriple.elements.end(), expo_of(6, {0, 0, 0})) !=
          ftriple.elements.end());

    // caps are honored
    Caps tiny;
    tiny.max_points = 1;
    CHECK_THROWS_AS(enumerate_fiber(pts, j3, 3, tiny), CapExceeded);
}

TEST_CASE("birkhoff fiber needs the cubic move") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    auto fiber = enumerate_fiber(pts, Vec(9, 1), 3);
    REQUIRE(fiber.elements.size() == 2);

    MoveSet none;  // all degree-2 moves of B_3 (there are none)
    auto broken = fiber_connected(fiber, none);
    CHECK(!broken.connected);
    CHECK(broken.components.size() == 2);

    auto full = fiber_connected(fiber, generate_moves_deg23(spec, pts));
    CHECK(full.connected);
    CHECK(full.components.size() == 1);

    Fiber empty;
    CHECK(fiber_connected(empty, none).connected);
}

TEST_CASE("small transportation fibers are connected by the generated moves") {
    for (auto spec : {transportation_as_flow(tspec({2, 2}, {2, 2})),
                      transportation_as_flow(tspec({2, 1}, {1, 1, 1})),
                      transportation_as_flow(tspec({2, 2}, {1, 1, 1, 1})),
                      transportation_as_flow(tspec({2, 2, 1}, {2, 2, 1})),
                      transportation_as_flow(tspec({2, 2, 2}, {2, 2, 2}))}) {
        auto pts = enumerate_lattice_points(spec);
        auto moves = generate_moves_deg23(spec, pts);
        for (int k = 2; k <= 3; ++k) {
            std::vector<Vec> all;
            all_expos(pts.size(), k, all);
            std::map<Vec, std::vector<Vec>> fibers;
            for (const Vec& e : all) fibers[image_of(pts, e)].push_back(e);
            for (auto& [target, elements] : fibers) {
                Fiber f;
                f.target = target;
                f.degree = k;
                f.elements = std::move(elements);
                CHECK(fiber_connected(f, moves).connected);
            }
        }
    }
}

TEST_CASE("hamming and support distance") {
    CHECK(hamming({1, 0, 0, 1}, {1, 0, 0, 1}) == 0);
    CHECK(hamming({1, 0, 0, 1}, {0, 1, 1, 0}) == 4);
    CHECK_THROWS_AS(hamming({1, 0}, {1, 0, 0}), InputError);

    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    std::vector<int> evens, odds;
    birkhoff_parity(pts, evens, odds);
    auto sd = support_distance(expo_of(6, evens), expo_of(6, odds), pts);
    CHECK(sd.distance == 4);  // a transposition away from some even partner
    CHECK(hamming(pts[sd.from], pts[sd.to]) == 4);

    // distinct same-margin matrices always differ in at least 4 cells
    for (int i = 0; i < pts.size(); ++i)
        for (int j = 0; j < pts.size(); ++j)
            if (i != j) CHECK(hamming(pts[i], pts[j]) >= 4);
}

TEST_CASE("forbidden pattern scan") {
    // identity vs anti-identity: the exact crossing pattern
    Vec id{1, 0, 0, 1}, anti{0, 1, 1, 0};
    auto w = forbidden_pattern(id, anti, 2, 2);
    REQUIRE(w.has_value());
    CHECK(w->variant == 1);
    CHECK(w->i1 == 0);
    CHECK(w->i2 == 1);
    CHECK(w->j1 == 0);
    CHECK(w->j2 == 1);

    CHECK(!forbidden_pattern(id, id, 2, 2).has_value());

    // flipping any single entry still matches as variant 2
    for (int side = 0; side < 2; ++side)
        for (size_t t = 0; t < 4; ++t) {
            Vec m = id, n = anti;
            Vec& target = side == 0 ? m : n;
            target[t] = 1 - target[t];
            auto v2 = forbidden_pattern(m, n, 2, 2);
            REQUIRE(v2.has_value());
            CHECK(v2->variant == 2);
            CHECK(v2->flip_in_first == (side == 0));
        }

    // two flips erase the witness
    Vec m2{0, 0, 0, 1}, n2{0, 1, 1, 1};
    CHECK(!forbidden_pattern(m2, n2, 2, 2).has_value());

    CHECK_THROWS_AS(forbidden_pattern({2, 0, 0, 1}, anti, 2, 2), InputError);
}

TEST_CASE("distance reduce lands the even/odd pair on a shared point") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    std::vector<int> evens, odds;
    birkhoff_parity(pts, evens, odds);
    Vec u = expo_of(6, evens), v = expo_of(6, odds);

    REQUIRE(support_distance(u, v, pts).distance == 4);
    auto red = distance_reduce(u, v, spec, pts, 3, 3);
    REQUIRE(red.ok());
    CHECK(image_of(pts, *red.reduced) == image_of(pts, u));
    CHECK(std::accumulate(red.reduced->begin(), red.reduced->end(), Coord(0)) == 3);
    // same-margin matrices cannot be at distance 2, so the drop by 2 means
    // the rewritten multiset shares a matrix with v
    CHECK(support_distance(*red.reduced, v, pts).distance == 0);
}

TEST_CASE("distance reduce reports unusable inputs") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);

    // degree 2 is below the rewrite's reach
    Vec u2 = expo_of(6, {0, 1}), v2 = u2;
    auto res = distance_reduce(u2, v2, spec, pts, 3, 3);
    CHECK(!res.ok());
    CHECK(res.reason == "degree below 3");

    // different fibers are rejected outright
    Vec a = expo_of(6, {0, 0, 0}), b = expo_of(6, {1, 1, 1});
    CHECK_THROWS_AS(distance_reduce(a, b, spec, pts, 3, 3), InputError);

    // identical supports: no crossing pattern anywhere
    Vec same = expo_of(6, {0, 1, 2});
    auto stuck = distance_reduce(same, same, spec, pts, 3, 3);
    CHECK(!stuck.ok());
    CHECK(stuck.reason == "no reducible pattern");
}

TEST_CASE("distance reduce drops the distance on all reducible fiber pairs") {
    int successes = 0;
    for (auto spec : {transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1})),
                      transportation_as_flow(tspec({2, 1, 1}, {2, 1, 1})),
                      transportation_as_flow(tspec({2, 2, 1}, {2, 2, 1}))}) {
        auto pts = enumerate_lattice_points(spec);
        std::vector<Vec> all;
        all_expos(pts.size(), 3, all);
        std::map<Vec, std::vector<Vec>> fibers;
        for (const Vec& e : all) fibers[image_of(pts, e)].push_back(e);
        for (auto& [target, elements] : fibers) {
            if (elements.size() < 2) continue;
            for (const Vec& u : elements)
                for (const Vec& v : elements) {
                    if (u == v) continue;
                    int before = support_distance(u, v, pts).distance;
                    auto red = distance_reduce(u, v, spec, pts, 3, 3);
                    if (!red.ok()) continue;
                    ++successes;
                    CHECK(image_of(pts, *red.reduced) == target);
                    CHECK(support_distance(*red.reduced, v, pts).distance <= before - 2);
                }
        }
    }
    CHECK(successes > 0);
}

TEST_CASE("fiber sampler: determinism, laziness, uniformity") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    auto moves = generate_moves_deg23(spec, pts);
    Vec j3(9, 1);

    std::map<Vec, long long> visits;
    Vec final1 = sample_fiber(spec, pts, j3, 3, moves, 10000, 42, 0, &visits);
    Vec final2 = sample_fiber(spec, pts, j3, 3, moves, 10000, 42);
    CHECK(final1 == final2);

    REQUIRE(visits.size() == 2);  // both fiber elements visited
    long long total = 0;
    for (auto& [state, cnt] : visits) total += cnt;
    CHECK(total == 10000);
    for (auto& [state, cnt] : visits) {
        double freq = static_cast<double>(cnt) / static_cast<double>(total);
        CHECK(freq > 0.45);
        CHECK(freq < 0.55);
    }

    // burn-in trims the tally but not the trajectory
    std::map<Vec, long long> tail;
    Vec final3 = sample_fiber(spec, pts, j3, 3, moves, 10000, 42, 4000, &tail);
    CHECK(final3 == final1);
    long long tail_total = 0;
    for (auto& [state, cnt] : tail) tail_total += cnt;
    CHECK(tail_total == 6000);
    CHECK_THROWS_AS(sample_fiber(spec, pts, j3, 3, moves, 10, 1, 11), InputError);

    // singleton fiber: the walk stays put
    Vec p2 = pts[2];
    Vec single = sample_fiber(spec, pts, p2, 1, moves, 100, 7);
    Vec e2(6, 0);
    e2[2] = 1;
    CHECK(single == e2);

    // unreachable target
    CHECK_THROWS_AS(sample_fiber(spec, pts, Vec(9, 7), 3, moves, 10, 1), InputError);
}
