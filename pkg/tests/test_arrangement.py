import json

import pytest

from coxcat.arrangement import (
    Arrangement,
    FAMILY_TAGS,
    Hyperplane,
    build,
    rank,
    scale_to_integer,
)
from coxcat.exactnum import Rat


def test_cat_c_n2_has_12_hyperplanes():
    assert len(build("cat-c", 2)) == 12


def test_braid_n3_has_3_hyperplanes():
    assert len(build("braid", 3)) == 3


def test_raney_2_1_exact_hyperplanes():
    hyps = [
        ([int(a) for a in h.normal], int(h.offset))
        for h in build("raney", 2, m=1).hyperplanes
    ]
    assert hyps == [
        ([1, 0], 0),   # x1 = 0
        ([0, 1], 0),   # x2 = 0
        ([2, -1], 0),  # x1 = x2/2
        ([1, -1], 0),  # x1 = x2
        ([1, -2], 0),  # x1 = 2 x2
    ]


def test_rank_examples():
    assert rank(build("braid", 3)) == 2
    assert rank(build("type-d", 1)) == 0  # empty arrangement on the line
    assert rank(build("cat-c", 2)) == 2


def test_scale_pointed_n1():
    scaled = scale_to_integer(build("pointed", 1))
    assert [int(h.offset) for h in scaled.hyperplanes] == [-5, -3, -2, -1, 0, 1, 3]


def test_scale_braid_unchanged():
    arr = build("braid", 3)
    assert scale_to_integer(arr) == arr


def test_scale_cat_b_n2_integral():
    scaled = scale_to_integer(build("cat-b", 2))
    assert all(Rat(h.offset).denominator == 1 for h in scaled.hyperplanes)


def test_build_deterministic():
    assert build("cat-d", 3) == build("cat-d", 3)


@pytest.mark.parametrize("family", FAMILY_TAGS)
def test_no_proportional_hyperplanes(family):
    m = 2 if family in ("cat-c-ext", "raney") else None
    for n in (1, 2, 3):
        arr = build(family, n, m)
        keys = {h.key() for h in arr.hyperplanes}
        assert len(keys) == len(arr.hyperplanes)


@pytest.mark.parametrize("n", range(1, 6))
def test_cat_c_hyperplane_count_formula(n):
    assert len(build("cat-c", n)) == 3 * n + 3 * n * (n - 1)


def test_duplicate_canonicalization():
    # 2x = 0 and x = 0 collapse to one canonical form
    assert Hyperplane.make([2], 0) == Hyperplane.make([1], 0)
    assert Hyperplane.make([-1, 1], Rat(1, 2)) == Hyperplane.make([2, -2], -1)


def test_json_roundtrip_exact():
    arr = build("pointed", 2)
    blob = arr.to_json_str()
    assert '"-5/2"' in blob  # exact rational strings, never decimals
    assert Arrangement.from_json(json.loads(blob)) == arr


def test_bad_specs_rejected():
    with pytest.raises(ValueError):
        build("no-such-family", 2)
    with pytest.raises(ValueError):
        build("cat-c-ext", 2)  # missing m
    with pytest.raises(ValueError):
        build("braid", 2, m=1)  # stray m
    with pytest.raises(ValueError):
        build("braid", 0)
