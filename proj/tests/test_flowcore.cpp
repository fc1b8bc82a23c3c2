#include <doctest.h>

#include <algorithm>
#include <set>

#include "toriflow/cells.hpp"
#include "toriflow/enumerate.hpp"
#include "toriflow/graph.hpp"
#include "toriflow/jsonio.hpp"

using namespace toriflow;

namespace {

TransportationSpec tspec(std::vector<Coord> rows, std::vector<Coord> cols) {
    TransportationSpec t;
    t.rows = std::move(rows);
    t.cols = std::move(cols);
    return t;
}

// Exhaustive oracle: walk the full bounds box and keep conservative vectors.
std::set<Vec> brute_points(const FlowPolytopeSpec& spec) {
    std::set<Vec> out;
    size_t na = static_cast<size_t>(spec.num_arcs());
    Vec f(na);
    for (size_t a = 0; a < na; ++a) f[a] = spec.graph.arcs[a].lower;
    for (;;) {
        if (!validate_flow(spec, IntegerFlow{f})) out.insert(f);
        size_t a = 0;
        while (a < na && ++f[a] > spec.graph.arcs[a].upper)
            f[a++] = spec.graph.arcs[a].lower;
        if (a == na) break;
    }
    return out;
}

FlowPolytopeSpec random_spec(Rng& rng, int nv, int na, Coord bmax) {
    FlowPolytopeSpec spec;
    for (int v = 0; v < nv; ++v)
        spec.graph.add_vertex("v" + std::to_string(v));
    Vec witness;
    for (int a = 0; a < na; ++a) {
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(nv)));
        int h = static_cast<int>(rng.below(static_cast<std::uint64_t>(nv - 1)));
        if (h >= t) ++h;  // no loops, keeps the oracle simple
        Coord lo = static_cast<Coord>(rng.below(2));
        Coord hi = lo + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(bmax)));
        spec.graph.add_arc("e" + std::to_string(a), t, h, lo, hi);
        witness.push_back(lo + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))));
    }
    // Demand of a random in-bounds flow, so the polytope is never empty.
    spec.demand.assign(static_cast<size_t>(nv), 0);
    for (int a = 0; a < na; ++a) {
        const Arc& arc = spec.graph.arcs[static_cast<size_t>(a)];
        spec.demand[static_cast<size_t>(arc.tail)] -= witness[static_cast<size_t>(a)];
        spec.demand[static_cast<size_t>(arc.head)] += witness[static_cast<size_t>(a)];
    }
    return spec;
}

}  // namespace

TEST_CASE("transportation conversion: margins, bounds, demands") {
    auto spec = transportation_as_flow(tspec({2, 1}, {1, 2}));
    CHECK(spec.num_vertices() == 4);
    CHECK(spec.num_arcs() == 4);
    CHECK(spec.demand == Vec{-2, -1, 1, 2});
    // default effective bound min(r_i, c_j)
    CHECK(spec.graph.arcs[0].upper == 1);  // min(2,1)
    CHECK(spec.graph.arcs[1].upper == 2);  // min(2,2)
    CHECK(spec.graph.arcs[2].upper == 1);
    CHECK(spec.graph.arcs[3].upper == 1);
    CHECK(spec.graph.arcs[1].id == "a0_1");
    CHECK(spec.graph.arcs[2].tail == 1);
    CHECK(spec.graph.arcs[2].head == 2);
}

TEST_CASE("lattice points of tiny transportation polytopes") {
    auto two = enumerate_lattice_points(transportation_as_flow(tspec({2, 1}, {1, 2})));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Vec{0, 2, 1, 0});
    CHECK(two[1] == Vec{1, 1, 0, 1});

    auto seg = enumerate_lattice_points(transportation_as_flow(tspec({2, 2}, {2, 2})));
    REQUIRE(seg.size() == 3);
    CHECK(seg[0] == Vec{0, 2, 2, 0});
    CHECK(seg[1] == Vec{1, 1, 1, 1});
    CHECK(seg[2] == Vec{2, 0, 0, 2});

    auto b3 = enumerate_lattice_points(transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1})));
    CHECK(b3.size() == 6);  // permutation matrices
    for (const Vec& p : b3.points) {
        Coord s = 0;
        for (Coord x : p) {
            CHECK((x == 0 || x == 1));
            s += x;
        }
        CHECK(s == 3);
    }

    auto rows2 = enumerate_lattice_points(transportation_as_flow(tspec({2, 2}, {1, 1, 1, 1})));
    CHECK(rows2.size() == 6);  // choose the two columns served by row 0

    // magic 3x3 counts with equal margins r: 6, 21, 55
    CHECK(enumerate_lattice_points(transportation_as_flow(tspec({2, 2, 2}, {2, 2, 2}))).size() == 21);
    CHECK(enumerate_lattice_points(transportation_as_flow(tspec({3, 3, 3}, {3, 3, 3}))).size() == 55);
}

TEST_CASE("enumeration output is lexicographically sorted and indexed") {
    auto pts = enumerate_lattice_points(transportation_as_flow(tspec({3, 2}, {2, 2, 1})));
    CHECK(std::is_sorted(pts.points.begin(), pts.points.end()));
    for (int i = 0; i < pts.size(); ++i) CHECK(pts.find(pts[i]) == i);
    CHECK(pts.find(Vec(static_cast<size_t>(5), 99)) == -1);
}

TEST_CASE("enumeration agrees with exhaustive box filtering") {
    Rng rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        auto spec = random_spec(rng, 3 + static_cast<int>(rng.below(2)),
                                4 + static_cast<int>(rng.below(3)), 3);
        auto fast = enumerate_lattice_points(spec);
        auto slow = brute_points(spec);
        REQUIRE(fast.size() == static_cast<int>(slow.size()));
        for (const Vec& p : fast.points) CHECK(slow.count(p) == 1);
    }
}

TEST_CASE("point cap raises") {
    Caps caps;
    caps.max_points = 5;
    CHECK_THROWS_AS(
        enumerate_lattice_points(transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1})), caps),
        CapExceeded);
}

TEST_CASE("canonical cell assignment") {
    auto spec = transportation_as_flow(tspec({2, 2}, {2, 2}));
    // at the upper bound the offset steps back by one
    CHECK(cell_offset_of(spec, {0, 2, 2, 0}) == Vec{0, 1, 1, 0});
    CHECK(cell_offset_of(spec, {1, 1, 1, 1}) == Vec{1, 1, 1, 1});
    CHECK(cell_offset_of(spec, {2, 0, 0, 2}) == Vec{1, 0, 0, 1});

    auto pts = enumerate_lattice_points(spec);
    auto canon = canonical_cells(spec, pts);
    CHECK(canon.size() == 3);  // partition: one singleton per point
    int covered = 0;
    for (const Cell& c : canon) covered += static_cast<int>(c.point_ids.size());
    CHECK(covered == pts.size());
}

TEST_CASE("covering cells are maximal and cover every point") {
    auto spec = transportation_as_flow(tspec({2, 2}, {2, 2}));
    auto pts = enumerate_lattice_points(spec);
    auto cover = covering_cells(spec, pts);
    // the middle point joins both neighbors; the three canonical singletons
    // collapse to two maximal windows
    REQUIRE(cover.size() == 2);
    CHECK(cover[0].point_ids == std::vector<int>{0, 1});
    CHECK(cover[1].point_ids == std::vector<int>{1, 2});
    CHECK(cover[0].offset == Vec{0, 1, 1, 0});
    CHECK(cover[1].offset == Vec{1, 0, 0, 1});
}

TEST_CASE("birkhoff polytope is one unit cell") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    auto canon = canonical_cells(spec, pts);
    REQUIRE(canon.size() == 1);
    CHECK(canon[0].offset == Vec(static_cast<size_t>(9), 0));
    CHECK(static_cast<int>(canon[0].point_ids.size()) == 6);
    auto cover = covering_cells(spec, pts);
    REQUIRE(cover.size() == 1);
    CHECK(cover[0].point_ids.size() == 6);
}

TEST_CASE("covering cells on random specs: coverage, maximality, windows") {
    Rng rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        auto spec = random_spec(rng, 3, 5, 3);
        auto pts = enumerate_lattice_points(spec);
        auto cover = covering_cells(spec, pts);
        std::set<int> seen;
        for (const Cell& c : cover) {
            // window really is the clipped unit box
            for (size_t a = 0; a < c.lo.size(); ++a) {
                CHECK(c.lo[a] >= spec.graph.arcs[a].lower);
                CHECK(c.hi[a] <= spec.graph.arcs[a].upper);
                CHECK(c.hi[a] - c.lo[a] <= 1);
                CHECK(c.lo[a] <= c.hi[a]);
            }
            // listed points = all points inside the window
            auto sub = cell_subspec(spec, c);
            auto inside = enumerate_lattice_points(sub);
            CHECK(static_cast<int>(c.point_ids.size()) == inside.size());
            for (int id : c.point_ids) {
                CHECK(inside.find(pts[id]) >= 0);
                seen.insert(id);
            }
        }
        if (pts.size() > 0) CHECK(static_cast<int>(seen.size()) == pts.size());
        for (size_t i = 0; i < cover.size(); ++i)
            for (size_t j = 0; j < cover.size(); ++j)
                if (i != j)
                    CHECK(!std::includes(cover[i].point_ids.begin(), cover[i].point_ids.end(),
                                         cover[j].point_ids.begin(), cover[j].point_ids.end()));
    }
}

TEST_CASE("complement cell reflects points and flips margins") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto pts = enumerate_lattice_points(spec);
    auto cell = canonical_cells(spec, pts)[0];
    auto [comp_spec, comp_cell] = complement_cell(spec, cell);
    CHECK(comp_spec.demand == Vec{-2, -2, -2, 2, 2, 2});
    auto comp_pts = enumerate_lattice_points(comp_spec);
    REQUIRE(comp_pts.size() == 6);
    for (const Vec& p : pts.points) {
        Vec r(p.size());
        for (size_t a = 0; a < p.size(); ++a) r[a] = cell.lo[a] + cell.hi[a] - p[a];
        CHECK(comp_pts.find(r) >= 0);
    }
    // reflecting twice returns the original spec's demands
    auto [back, back_cell] = complement_cell(comp_spec, comp_cell);
    CHECK(back.demand == spec.demand);
}

TEST_CASE("homogenize leaves inhomogeneous specs alone, lifts circulations") {
    auto b3 = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    CHECK(homogenize(b3).num_arcs() == b3.num_arcs());

    FlowPolytopeSpec circ;
    circ.graph.add_vertex("a");
    circ.graph.add_vertex("b");
    circ.graph.add_arc("ab", 0, 1, 0, 2);
    circ.graph.add_arc("ba", 1, 0, 0, 2);
    circ.demand = {0, 0};
    auto pts = enumerate_lattice_points(circ);
    REQUIRE(pts.size() == 3);  // (0,0),(1,1),(2,2)
    CHECK(!points_homogeneous(pts.points));

    auto lifted = homogenize(circ);
    CHECK(lifted.homogenized);
    CHECK(lifted.num_arcs() == 3);
    CHECK(lifted.graph.arcs[2].lower == 1);
    CHECK(lifted.graph.arcs[2].upper == 1);
    auto lpts = enumerate_lattice_points(lifted);
    CHECK(lpts.size() == 3);
    CHECK(points_homogeneous(lpts.points));

    // fixed arcs sit in degenerate windows
    auto cells = covering_cells(lifted, lpts);
    for (const Cell& c : cells) {
        CHECK(c.lo[2] == 1);
        CHECK(c.hi[2] == 1);
    }
}

TEST_CASE("transportation points lie on a common hyperplane") {
    auto pts = enumerate_lattice_points(transportation_as_flow(tspec({2, 1}, {1, 2})));
    CHECK(points_homogeneous(pts.points));
}

TEST_CASE("dimension of transportation polytopes is (m-1)(n-1)") {
    CHECK(affine_dim(enumerate_lattice_points(
              transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}))).points) == 4);
    CHECK(affine_dim(enumerate_lattice_points(
              transportation_as_flow(tspec({2, 2}, {2, 2}))).points) == 1);
    CHECK(affine_dim(enumerate_lattice_points(
              transportation_as_flow(tspec({2, 2}, {1, 1, 1, 1}))).points) == 3);
}

TEST_CASE("incidence matrix kernel matches cycle space dimension") {
    auto spec = transportation_as_flow(tspec({1, 1, 1}, {1, 1, 1}));
    auto ker = kernel_basis(incidence_matrix(spec.graph));
    CHECK(ker.size() == 4);  // arcs - vertices + components = 9 - 6 + 1
}

TEST_CASE("flow validation pinpoints violations") {
    auto spec = transportation_as_flow(tspec({2, 1}, {1, 2}));
    CHECK(!validate_flow(spec, IntegerFlow{{0, 2, 1, 0}}));
    auto below = validate_flow(spec, IntegerFlow{{-1, 3, 2, -1}});
    REQUIRE(below.has_value());
    CHECK(below->find("lower bound") != std::string::npos);
    auto above = validate_flow(spec, IntegerFlow{{2, 0, -1, 2}});
    REQUIRE(above.has_value());
    CHECK(above->find("upper bound") != std::string::npos);
    auto cons = validate_flow(spec, IntegerFlow{{1, 1, 1, 1}});
    REQUIRE(cons.has_value());
    CHECK(cons->find("conservation") != std::string::npos);
}

TEST_CASE("problem json: transportation form") {
    json j = {{"rows", {2, 1}}, {"cols", {1, 2}}, {"lower", nullptr}, {"upper", nullptr}};
    auto p = problem_from_json(j);
    REQUIRE(p.transport.has_value());
    CHECK(p.spec.num_arcs() == 4);
    CHECK(enumerate_lattice_points(p.spec).size() == 2);

    // nested and flat bound matrices are both accepted
    json nested = {{"rows", {2, 1}}, {"cols", {1, 2}},
                   {"upper", {{1, 1}, {1, 1}}}};
    json flat = {{"rows", {2, 1}}, {"cols", {1, 2}}, {"upper", {1, 1, 1, 1}}};
    auto a = problem_from_json(nested);
    auto b = problem_from_json(flat);
    CHECK(a.spec.graph.arcs[1].upper == 1);
    CHECK(b.spec.graph.arcs[1].upper == 1);
    CHECK(enumerate_lattice_points(a.spec).size() == 1);  // forced [1,1,0,1]
}

TEST_CASE("problem json: flow graph form and round trip") {
    json j = {
        {"vertices", {"s", "m", "t"}},
        {"arcs",
         {{{"id", "e1"}, {"tail", "s"}, {"head", "m"}, {"lower", 0}, {"upper", 2}},
          {{"id", "e2"}, {"tail", "m"}, {"head", "t"}, {"lower", 0}, {"upper", 2}}}},
        {"demand", {{"s", -1}, {"t", 1}}},
    };
    auto p = problem_from_json(j);
    CHECK(!p.transport.has_value());
    CHECK(p.spec.demand == Vec{-1, 0, 1});
    auto pts = enumerate_lattice_points(p.spec);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0] == Vec{1, 1});

    auto again = problem_from_json(spec_to_json(p.spec));
    CHECK(again.spec.graph.vertices == p.spec.graph.vertices);
    CHECK(again.spec.demand == p.spec.demand);
    REQUIRE(again.spec.num_arcs() == p.spec.num_arcs());
    for (int a = 0; a < p.spec.num_arcs(); ++a) {
        CHECK(again.spec.graph.arcs[static_cast<size_t>(a)].id ==
              p.spec.graph.arcs[static_cast<size_t>(a)].id);
        CHECK(again.spec.graph.arcs[static_cast<size_t>(a)].upper ==
              p.spec.graph.arcs[static_cast<size_t>(a)].upper);
    }
}

TEST_CASE("problem json: malformed inputs raise InputError") {
    CHECK_THROWS_AS(problem_from_json(json{{"rows", {1, 2}}}), InputError);
    CHECK_THROWS_AS(problem_from_json(json{{"rows", {1}}, {"cols", {2}}}), InputError);
    CHECK_THROWS_AS(problem_from_json(json::array()), InputError);
    json missing_upper = {{"vertices", {"a", "b"}},
                          {"arcs", {{{"tail", "a"}, {"head", "b"}}}}};
    CHECK_THROWS_AS(problem_from_json(missing_upper), InputError);
    json bad_vertex = {{"vertices", {"a"}},
                       {"arcs", json::array()},
                       {"demand", {{"zzz", 1}}}};
    CHECK_THROWS_AS(problem_from_json(bad_vertex), InputError);
}

TEST_CASE("flow json forms") {
    auto spec = transportation_as_flow(tspec({2, 1}, {1, 2}));
    auto from_array = flow_from_json(json::parse("[0,2,1,0]"), spec);
    CHECK(from_array.values == Vec{0, 2, 1, 0});
    json obj = {{"values", {{"a0_0", 1}, {"a0_1", 1}, {"a1_0", 0}, {"a1_1", 1}}}};
    CHECK(flow_from_json(obj, spec).values == Vec{1, 1, 0, 1});
    json missing = {{"values", {{"a0_0", 1}}}};
    CHECK_THROWS_AS(flow_from_json(missing, spec), InputError);
    auto round = flow_from_json(flow_to_json(from_array, spec), spec);
    CHECK(round.values == from_array.values);
}

TEST_CASE("ranking json validation") {
    auto r = ranking_from_json(json::parse("[2,0,1]"), 3);
    CHECK(r == std::vector<int>{2, 0, 1});
    CHECK_THROWS_AS(ranking_from_json(json::parse("[0,1]"), 3), InputError);
    CHECK_THROWS_AS(ranking_from_json(json::parse("[0,0,1]"), 3), InputError);
    CHECK_THROWS_AS(ranking_from_json(json::parse("[0,1,3]"), 3), InputError);
}
