from math import comb, factorial

import pytest

from coxcat.arrangement import build
from coxcat.movelab import (
    MOVE_SYSTEMS,
    canonical,
    canonical_count,
    classes,
    is_ct_maximal,
    is_st_maximal,
    is_type_b_sketch,
    is_type_d_sketch,
    lex_key,
    moves,
    universe,
    verify_moves_against_geometry,
)
from coxcat.regionlab import region_count
from coxcat.sketchlib import ReflSketch, enumerate_pointed, enumerate_sketches, parse_sketch
from coxcat.statlab import fubini_numbers


def test_d_move_chain_worked_example():
    s1 = parse_sketch("a(-1,-1) a(2,0) a(-2,-1) a(-1,0) | a(1,0) a(2,1) a(-2,0) a(1,1)")
    s2 = parse_sketch("a(-1,-1) a(2,0) a(-2,-1) a(1,0) | a(-1,0) a(2,1) a(-2,0) a(1,1)")
    s3 = parse_sketch("a(-1,-1) a(-2,-1) a(2,0) a(1,0) | a(-1,0) a(-2,0) a(2,1) a(1,1)")
    s4 = parse_sketch("a(-1,-1) a(-2,-1) a(2,0) a(-1,0) | a(1,0) a(-2,0) a(2,1) a(1,1)")
    sysd = MOVE_SYSTEMS["cat-d"]
    assert s2 in moves(sysd, s1)
    assert s3 in moves(sysd, s2)
    assert s4 in moves(sysd, s3)


def test_d_move_is_involution_on_refl_sketches():
    sysd = MOVE_SYSTEMS["type-d"]
    sk = ReflSketch((3, -1, 2))
    (other,) = moves(sysd, sk)
    assert moves(sysd, other) == {sk}


def test_ct_center_move_n1():
    # the sketch with conjugate letters in positions 2n, 2n+1 has the center
    # swap as a neighbor
    sk = parse_sketch("aa;1")
    swapped = parse_sketch("ab;1")
    assert swapped in moves(MOVE_SYSTEMS["cat-threshold"], sk)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_refl_class_counts(n):
    uni = universe(MOVE_SYSTEMS["boolean"], n)
    a = fubini_numbers(n)
    expect = {
        "boolean": 2 ** n,
        "type-d": 2 ** (n - 1) * factorial(n),
        "braid": factorial(n),
        "braid-boolean": factorial(n + 1),
        "fubini": 2 * a[n],
        "threshold": 2 * (a[n] - n * a[n - 1]) if n >= 2 else 1,
    }
    for family, want in expect.items():
        assert len(classes(MOVE_SYSTEMS[family], uni)) == want


def test_cat_d_classes_n2():
    cls = classes(MOVE_SYSTEMS["cat-d"], enumerate_sketches(2))
    assert len(cls) == 16
    assert set(len(c) for c in cls) <= {2, 4}


def test_t_move_classes_n2():
    a = fubini_numbers(2)
    cls = classes(MOVE_SYSTEMS["threshold"], universe(MOVE_SYSTEMS["threshold"], 2))
    assert len(cls) == 2 * (a[2] - 2 * a[1]) == 2


def test_universe_not_closed_error():
    uni = enumerate_sketches(1)
    with pytest.raises(ValueError, match="not closed"):
        classes(MOVE_SYSTEMS["cat-d"], uni[:1])


def test_canonical_fubini_worked_example():
    got = canonical("fubini", ReflSketch((5, -4, -1, 2, 6, 3)))
    assert got.second_half == (5, -1, -4, 2, 3, 6)


def test_canonical_threshold_worked_example():
    got = canonical("threshold", ReflSketch((3, -6, -2, 1, 4, -5)))
    assert got.second_half == (-2, -3, -6, 1, 4, -5)


def test_canonical_boolean_and_braid_worked_examples():
    assert canonical("boolean", ReflSketch((3, -2, -1, 4))).second_half == (-1, -2, 3, 4)
    assert canonical("braid", ReflSketch((-2, -3, 1, 4))).second_half == (3, 2, 1, 4)


def test_canonical_idempotent_and_class_constant():
    for family in ("boolean", "type-d", "braid", "braid-boolean", "fubini", "threshold"):
        for cls in classes(MOVE_SYSTEMS[family], universe(MOVE_SYSTEMS[family], 3)):
            canons = {canonical(family, sk) for sk in cls}
            assert len(canons) == 1
            (c,) = canons
            assert canonical(family, c) == c
            assert c in cls


def test_one_type_d_sketch_per_class():
    for n in (2, 3):
        cls = classes(MOVE_SYSTEMS["cat-d"], enumerate_sketches(n))
        for c in cls:
            assert sum(1 for sk in c if is_type_d_sketch(sk)) == 1


def test_threshold_lemma_blocks_stable():
    # T-equivalent sketches with first block > 1: same blocks, same order
    from coxcat.movelab import _blocks

    for cls in classes(MOVE_SYSTEMS["threshold"], universe(MOVE_SYSTEMS["threshold"], 3)):
        stable = [
            [frozenset(abs(v) for v in blk) for blk in _blocks(sk.second_half)]
            for sk in cls
            if len(_blocks(sk.second_half)[0]) > 1
        ]
        assert all(b == stable[0] for b in stable)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ct_st_maximal_counts(n):
    uni = enumerate_sketches(n)
    assert sum(1 for sk in uni if is_ct_maximal(sk)) == region_count(
        build("cat-threshold", n)
    )
    assert sum(1 for sk in uni if is_st_maximal(sk)) == region_count(
        build("shi-threshold", n)
    )


def test_maximal_sketch_is_lex_largest_of_its_class():
    uni = enumerate_sketches(2)
    for family, pred in [("cat-threshold", is_ct_maximal), ("shi-threshold", is_st_maximal)]:
        for cls in classes(MOVE_SYSTEMS[family], uni):
            picks = [sk for sk in cls if pred(sk)]
            assert picks == [min(cls, key=lex_key)]


def test_beta_plus_alpha_plus_adjacency_is_not_maximal():
    # abab;1,2 contains the factor a(1,1) a(2,0): a positive beta followed by
    # a positive alpha
    sk = parse_sketch("abab;1,2")
    letters = sk.letters
    from coxcat.sketchlib import L

    assert (letters[1], letters[2]) == (L(1, 1), L(2, 0))
    assert not is_ct_maximal(sk)
    assert not is_st_maximal(sk)


def test_type_b_canonical_counts():
    assert canonical_count("cat-b", 1) == 4
    assert canonical_count("cat-b", 2) == 2 ** 2 * factorial(2) * comb(4, 2)
    assert canonical_count("cat-bc", 1) == 6
    assert canonical_count("cat-bc", 2) == 2 * factorial(2) * comb(6, 3)


def test_pointed_class_canonicals():
    uni = enumerate_pointed(2)
    for family, pred in [("cat-b", is_type_b_sketch)]:
        for cls in classes(MOVE_SYSTEMS[family], uni):
            assert sum(1 for sk in cls if pred(sk)) == 1
            assert canonical(family, next(iter(cls))) in cls


@pytest.mark.parametrize(
    "family,n",
    [
        ("cat-d", 2),
        ("cat-threshold", 2),
        ("shi-threshold", 2),
        ("cat-b", 2),
        ("cat-bc", 2),
        ("boolean", 3),
        ("braid", 3),
        ("fubini", 3),
        ("threshold", 3),
    ],
)
def test_verify_moves_against_geometry(family, n):
    sys_ = MOVE_SYSTEMS[family]
    report = verify_moves_against_geometry(sys_, build(family, n), build(sys_.ambient, n))
    assert report.passed, report.mismatches
    assert report.class_count == report.region_count


def test_bounded_type_d_class_counts():
    # bounded regions of the type D Catalan deformation, counted through the
    # bounded type D sketches
    from coxcat.sketchlib import is_bounded_sketch

    for n, want in [(2, 4), (3, 120)]:
        cnt = sum(
            1
            for sk in enumerate_sketches(n)
            if is_type_d_sketch(sk) and is_bounded_sketch(sk, "cat-d")
        )
        assert cnt == want
