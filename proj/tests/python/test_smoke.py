"""Smoke tests for the python bindings."""

import pytest

import toriflow


def test_points_smallest_spec():
    prob = toriflow.transportation([1, 1], [1, 1])
    pts = prob.points()
    assert sorted(pts) == [[0, 1, 1, 0], [1, 0, 0, 1]]
    assert prob.num_arcs == 4
    assert prob.num_vertices == 4


def test_birkhoff3_groebner_and_fiber():
    prob = toriflow.transportation([1, 1, 1], [1, 1, 1])
    pts = prob.points()
    assert len(pts) == 6

    gb = prob.groebner_basis()
    assert gb["status"] == "complete"
    assert len(gb["basis"]) == 1
    assert gb["max_degree"] == 3

    j3 = [1] * 9
    assert prob.fiber_check(j3, 3, move_degree=2) == {
        "fiber_size": 2,
        "connected": False,
        "components": 2,
    }
    assert prob.fiber_check(j3, 3)["connected"] is True


def test_decompose_roundtrip():
    prob = toriflow.transportation([2, 1], [1, 1, 1])
    pts = prob.points()
    total = [a + b for a, b in zip(pts[0], pts[1])]
    parts = prob.decompose(total, 2)
    assert len(parts) == 2
    assert [sum(c) for c in zip(*parts)] == total
    with pytest.raises(ValueError):
        prob.decompose([99] * prob.num_arcs, 2)


def test_flow_graph_and_bipartize():
    prob = toriflow.flow_graph(
        vertices=["a", "b", "c"],
        arcs=[
            ("ab", "a", "b", 0, 2),
            ("bc", "b", "c", 0, 2),
            ("ca", "c", "a", 0, 2),
        ],
        demand={"a": 0, "b": 0, "c": 0},
    )
    assert len(prob.points()) == 3

    bp = prob.bipartize()
    assert bp["transformed"].num_vertices == 6
    assert len(bp["phi"]) == 3
    for point, image in bp["phi"]:
        assert image[: len(point)] == point


def test_worstcase_families():
    b3 = toriflow.birkhoff_family(3)
    assert b3["degree"] == 6
    assert b3["certificate"]["necessity"] and b3["certificate"]["privacy"]
    assert [name for name, _ in b3["lead"]] == ["A1", "A2", "A3", "B1", "B2", "B3"]

    t66 = toriflow.transport_family(6, 6, smooth=True)
    assert t66["row_margins"] == [39] * 6
    assert t66["col_margins"] == [3, 3, 3, 3, 3, 219]


def test_sampler_deterministic():
    prob = toriflow.transportation([1, 1, 1], [1, 1, 1])
    j3 = [1] * 9
    one = prob.sample(j3, 3, steps=500, seed=11, burn_in=100)
    two = prob.sample(j3, 3, steps=500, seed=11, burn_in=100)
    assert one["final_state"] == two["final_state"]
    assert one["visits"] == two["visits"]
    assert sum(one["visits"].values()) == 400


def test_triangulation_unimodular():
    prob = toriflow.transportation([2, 2], [2, 2])
    tri = prob.triangulate()
    assert tri["unimodular"] is True
    assert len(prob.points()) == 3
