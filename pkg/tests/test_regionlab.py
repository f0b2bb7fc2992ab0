import pytest

from coxcat.arrangement import build
from coxcat.exactnum import Rat
from coxcat.regionlab import (
    bounded_count,
    enumerate_regions,
    feasible,
    is_bounded_region,
    is_connected,
    region_count,
    region_graph,
    restriction_classes,
    sign_vector,
    signs_from_str,
    signs_to_str,
)


def test_feasible_braid2():
    arr = build("braid", 2)  # one hyperplane x1 = x2
    w = feasible(arr, (1,))
    assert w is not None and w[0] - w[1] > 0
    assert sign_vector(arr, w) == (1,)


def test_feasible_contradictory_strip():
    # cat-c n=1: points -1, -1/2, 0 on the line; demand x > 0 and x < -1
    arr = build("cat-c", 1)
    assert feasible(arr, (-1, -1, 1)) is None


def test_feasible_threshold_all_positive():
    arr = build("threshold", 3)
    w = feasible(arr, (1,) * 3)
    assert w is not None
    assert all(h.evaluate(w) > 0 for h in arr.hyperplanes)


def test_enumerate_braid3():
    assert region_count(build("braid", 3)) == 6


def test_enumerate_cat_d2():
    assert region_count(build("cat-d", 2)) == 16


def test_enumerate_threshold3():
    assert region_count(build("threshold", 3)) == 8


def test_witness_reproduces_its_sign_vector():
    arr = build("cat-b", 2)
    for signs, witness in enumerate_regions(arr).items():
        assert sign_vector(arr, witness) == signs


def test_bounded_cat_c1():
    arr = build("cat-c", 1)
    assert bounded_count(arr) == 2
    # the leftmost ray is unbounded
    left = tuple(-1 for _ in arr.hyperplanes)
    assert not is_bounded_region(arr, left)


def test_central_arrangement_has_no_bounded_regions():
    arr = build("type-c", 2)
    assert bounded_count(arr) == 0


def test_bounded_pointed_n1():
    assert bounded_count(build("pointed", 1)) == 6


def test_relative_boundedness_of_braid():
    # braid regions contain lines but their intersections with the span of
    # the normals are full-dimensional cones, still unbounded
    assert bounded_count(build("braid", 3)) == 0


def test_bounded_rejects_non_region():
    arr = build("cat-c", 1)
    with pytest.raises(ValueError, match="not a region"):
        is_bounded_region(arr, (1, -1, 1))


def test_region_graph_braid2():
    g = region_graph(build("braid", 2))
    assert len(g) == 2 and all(len(v) == 1 for v in g.values())


def test_region_graph_boolean2_is_4_cycle():
    g = region_graph(build("boolean", 2))
    assert len(g) == 4 and all(len(v) == 2 for v in g.values())
    assert is_connected(g)


def test_region_graph_cat_c1_is_path():
    g = region_graph(build("cat-c", 1))
    degs = sorted(len(v) for v in g.values())
    assert degs == [1, 1, 2, 2]


@pytest.mark.parametrize(
    "family,n,m",
    [("braid", 3, None), ("cat-c", 2, None), ("pointed", 1, None), ("raney", 2, 1)],
)
def test_region_graph_connected(family, n, m):
    assert is_connected(region_graph(build(family, n, m)))


@pytest.mark.parametrize(
    "subfam,ambfam,n",
    [("cat-d", "cat-c", 2), ("threshold", "type-c", 3), ("boolean", "type-c", 2)],
)
def test_subarrangement_partitions_regions(subfam, ambfam, n):
    sub, amb = build(subfam, n), build(ambfam, n)
    fibers = restriction_classes(sub, amb)
    assert len(fibers) == region_count(sub)
    assert sum(len(v) for v in fibers.values()) == region_count(amb)


def test_sign_string_codec():
    assert signs_to_str((1, -1, 1)) == "+-+"
    assert signs_from_str("+-+") == (1, -1, 1)


def test_empty_arrangement_single_region():
    arr = build("type-d", 1)
    assert region_count(arr) == 1
    assert bounded_count(arr) == 1  # relatively bounded: the span is {0}
