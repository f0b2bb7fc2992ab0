import itertools
from math import comb, factorial

import pytest

from coxcat.arrangement import build
from coxcat.regionlab import enumerate_regions, is_bounded_region, sign_vector
from coxcat.sketchlib import (
    ArcDiagram,
    B,
    L,
    PointedSketch,
    ReflSketch,
    SymmetricSketch,
    alphabet_m,
    alphabet_pointed,
    ballot_words,
    compact_form,
    decompose_nnp,
    enumerate_m_sketches,
    enumerate_pointed,
    enumerate_sketches,
    interlinked_pieces,
    is_bounded_sketch,
    is_interlinked,
    is_m_sketch,
    is_pointed_sketch,
    is_symmetric_sketch,
    m_pair_from_sketch,
    pair_from_sketch,
    parse_sketch,
    point_beta_involution,
    pointed_pair_from_sketch,
    pointed_sketch_from_pair,
    pointed_words,
    realize,
    signed_perms,
    sketch_from_pair,
    tall_word_to_pointed,
    to_arc_diagram,
    to_lattice_path,
)

WORKED_SKETCH = (
    "a(-3,-1) a(-3,0) a(1,0) a(-2,-1) a(1,1) a(2,0) | "
    "a(-2,0) a(-1,-1) a(2,1) a(-1,0) a(3,0) a(3,1)"
)
NNP_SKETCH = (
    "a(3,0) a(2,0) a(-1,-1) a(3,1) a(1,0) a(2,1) | "
    "a(-2,-1) a(-1,0) a(-3,-1) a(1,1) a(-2,0) a(-3,0)"
)


def test_worked_example_is_a_sketch():
    sk = parse_sketch(WORKED_SKETCH)
    assert is_symmetric_sketch(sk.letters, 3)


def test_beta_before_own_alpha_is_invalid():
    # swap a(1,0) and a(1,1): the shifted letter comes first
    sk = parse_sketch(WORKED_SKETCH)
    letters = list(sk.letters)
    i, j = letters.index(L(1, 0)), letters.index(L(1, 1))
    letters[i], letters[j] = letters[j], letters[i]
    assert not is_symmetric_sketch(tuple(letters), 3)


def test_duplicate_letter_is_invalid():
    sk = parse_sketch(WORKED_SKETCH)
    letters = list(sk.letters)
    letters[0] = letters[1]
    assert not is_symmetric_sketch(tuple(letters), 3)


def test_predicate_by_brute_force_n1():
    words = {
        w
        for w in itertools.permutations(alphabet_m(1, 1))
        if is_symmetric_sketch(w, 1)
    }
    assert words == {sk.letters for sk in enumerate_sketches(1)}
    assert len(words) == 4


def test_pair_of_worked_example():
    sk = parse_sketch(WORKED_SKETCH)
    word, perm = pair_from_sketch(sk)
    assert word == "abaaba"
    assert perm == (-3, 1, -2)
    assert sketch_from_pair(word, perm, 3) == sk


def test_pair_roundtrip_all_n2():
    for sk in enumerate_sketches(2):
        word, perm = pair_from_sketch(sk)
        assert sketch_from_pair(word, perm, 2) == sk


def test_sketch_counts():
    assert len(enumerate_sketches(2)) == 2 ** 2 * factorial(2) * comb(4, 2) == 48
    for n in (1, 2, 3):
        sks = enumerate_sketches(n)
        assert len(set(sks)) == len(sks) == 2 ** n * factorial(n) * comb(2 * n, n)


def test_ballot_word_count_against_brute_force():
    for n in range(1, 7):
        brute = sum(
            1
            for w in itertools.product("ab", repeat=2 * n)
            if all(w[:k].count("a") >= w[:k].count("b") for k in range(2 * n + 1))
        )
        assert brute == comb(2 * n, n)
        assert sum(1 for _ in ballot_words(2 * n)) == brute


def test_mirror_and_order_structure():
    from coxcat.sketchlib import conj, is_alpha

    for sk in enumerate_sketches(2):
        letters = sk.letters
        for p in range(8):
            assert letters[7 - p] == conj(letters[p])
        subs = [x.sub for x in letters if is_alpha(x)]
        assert subs[2:] == [-subs[1], -subs[0]]


def test_m_sketch_counts():
    for n, m in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        sks = enumerate_m_sketches(n, m)
        assert len(set(sks)) == len(sks) == 2 ** n * factorial(n) * comb((m + 1) * n, n)


def test_m_sketch_predicate_brute_force():
    words = {
        w for w in itertools.permutations(alphabet_m(1, 2)) if is_m_sketch(w, 1, 2)
    }
    assert words == {sk.letters for sk in enumerate_m_sketches(1, 2)}


def test_m1_matches_symmetric():
    assert {sk.letters for sk in enumerate_m_sketches(2, 1)} == {
        sk.letters for sk in enumerate_sketches(2)
    }


def test_worked_2_sketch():
    sk = parse_sketch(
        "a(2,0) a(-1,-2) a(2,1) a(-1,-1) a(1,0) a(-2,-2) | "
        "a(2,2) a(-1,0) a(1,1) a(-2,-1) a(1,2) a(-2,0)"
    )
    assert is_m_sketch(sk.letters, 2, 2)
    assert m_pair_from_sketch(sk) == ("aabbaa", (2, -1))


def test_pointed_counts():
    for n in (1, 2):
        sks = enumerate_pointed(n)
        assert len(set(sks)) == len(sks) == 2 ** n * factorial(n) * comb(2 * n + 2, n)


def test_pointed_brute_force_n1():
    words = {
        w
        for w in itertools.permutations(alphabet_pointed(1))
        if is_pointed_sketch(w, 1)
    }
    assert words == {sk.letters for sk in enumerate_pointed(1)}
    assert len(words) == 8


def test_pointed_worked_example():
    sk = parse_sketch(
        "b(-3/2) a(2,0) a(-1,-1) b(-1/2) a(1,0) a(2,1) | "
        "a(-2,-1) a(-1,0) b(1/2) a(1,1) a(-2,0) b(3/2)"
    )
    assert is_pointed_sketch(sk.letters, 2)
    word, pointer, perm = pointed_pair_from_sketch(sk)
    assert (word, pointer, perm) == ("aaabab", 3, (2, -1))
    assert pointed_sketch_from_pair(word, pointer, perm, 2) == sk
    assert compact_form(sk) == "aaaBab;2,-1"


def test_pointed_word_involution():
    for n in (1, 2, 3):
        for word, pointer in pointed_words(n):
            tall = point_beta_involution(word, pointer)
            assert tall.count("a") >= n + 2
            assert tall_word_to_pointed(tall, n) == (word, pointer)


def test_realize_simple_chain():
    # x1 < x1+1 < -x1-1 < -x1 forces x1 < -1
    sk = sketch_from_pair("ab", (1,), 1)
    x = realize(sk, build("cat-c", 1))
    assert x[0] < -1


def test_realize_pointed_between_halves():
    # region with -1/2 < x1 < 0: the sketch m A p a | B P b M
    sk = PointedSketch(
        letters=(
            B(-3), L(-1, -1), B(-1), L(1, 0),
            L(-1, 0), B(1), L(1, 1), B(3),
        ),
        n=1,
    )
    assert is_pointed_sketch(sk.letters, 1)
    x = realize(sk, build("pointed", 1))
    assert -R(1, 2) < x[0] < 0


def R(a, b):
    from coxcat.exactnum import Rat

    return Rat(a, b)


@pytest.mark.parametrize(
    "family,enum,n",
    [
        ("cat-c", enumerate_sketches, 1),
        ("cat-c", enumerate_sketches, 2),
        ("pointed", enumerate_pointed, 1),
        ("pointed", enumerate_pointed, 2),
    ],
)
def test_realize_bijection(family, enum, n):
    arr = build(family, n)
    regions = enumerate_regions(arr)
    seen = set()
    for sk in enum(n):
        sv = sign_vector(arr, realize(sk, arr))
        assert sv in regions
        seen.add(sv)
    assert len(seen) == len(regions) == len(enum(n))


def test_lattice_path_worked_example():
    sk = parse_sketch(WORKED_SKETCH)
    path = to_lattice_path(sk)
    assert path.steps == (1, -1, 1, 1, -1, 1)  # U D U U D U
    assert path.labels == (-3, 1, -2)


def test_minimal_path():
    sk = sketch_from_pair("ab", (1,), 1)
    assert to_lattice_path(sk).steps == (1, -1)


def test_arc_diagram_worked_example():
    sk = parse_sketch(NNP_SKETCH)
    d = to_arc_diagram(sk)

    def num(p):  # position 1..12 -> element of [-6,6] minus 0
        return p - 7 if p <= 6 else p - 6

    blocks = sorted((tuple(num(p) for p in ps), lab) for ps, lab in d.blocks)
    assert blocks == [
        ((-6, -3), 3),
        ((-5, -1), 2),
        ((-4, 2), -1),
        ((-2, 4), 1),
        ((1, 5), -2),
        ((3, 6), -3),
    ]


def test_bounded_sketch_counts():
    for n in (1, 2, 3):
        cnt = sum(1 for sk in enumerate_sketches(n) if is_bounded_sketch(sk, "cat-c"))
        assert cnt == 2 ** n * factorial(n) * comb(2 * n - 1, n)
    for n in (1, 2):
        cnt = sum(1 for sk in enumerate_pointed(n) if is_bounded_sketch(sk, "pointed"))
        assert cnt == 2 ** n * factorial(n) * comb(2 * n + 1, n + 1)


def test_bounded_sketch_agrees_with_geometry():
    for family, enum in [("cat-c", enumerate_sketches), ("pointed", enumerate_pointed)]:
        for n in (1, 2):
            arr = build(family, n)
            for sk in enum(n):
                sv = sign_vector(arr, realize(sk, arr))
                assert is_bounded_sketch(sk, family) == is_bounded_region(
                    arr, sv, check=False
                )


def test_bounded_m_sketch_agrees_with_geometry():
    arr = build("cat-c-ext", 2, 2)
    for sk in enumerate_m_sketches(2, 2):
        sv = sign_vector(arr, realize(sk, arr))
        assert is_bounded_sketch(sk, "cat-c-ext") == is_bounded_region(
            arr, sv, check=False
        )


def test_decompose_worked_figure():
    # symmetric 2-non-nesting partition with a 3-chain on each flank
    d = ArcDiagram(
        size=12,
        blocks=(((1, 2, 3), 2), ((4, 5, 7), 1), ((6, 8, 9), -1), ((10, 11, 12), -2)),
    )
    bounded, unbounded = decompose_nnp(d)
    assert [b[0] for b in bounded.blocks] == [(4, 5, 7), (6, 8, 9)]
    assert [b[0] for b in unbounded.blocks] == [(10, 11, 12)]
    # reassembly: mirror of the unbounded part is the left flank
    mirror = {tuple(sorted(13 - p for p in ps)) for ps, _ in unbounded.blocks}
    assert mirror == {(1, 2, 3)}


def test_decompose_interlinked_and_trivial():
    sk = sketch_from_pair("aa", (1,), 1)
    d = to_arc_diagram(sk)
    assert is_interlinked(d)
    bounded, unbounded = decompose_nnp(d)
    assert bounded.blocks == d.blocks and unbounded.blocks == ()

    sk = sketch_from_pair("ab", (1,), 1)
    bounded, unbounded = decompose_nnp(to_arc_diagram(sk))
    assert bounded.blocks == ()
    assert [b[0] for b in unbounded.blocks] == [(3, 4)]


def test_interlinked_pieces_ordering():
    d = ArcDiagram(size=8, blocks=(((1, 2), 1), ((3, 5), 2), ((4, 6), -2), ((7, 8), -1)))
    pieces = interlinked_pieces(d)
    assert [len(p) for p in pieces] == [1, 2, 1]


def test_refl_sketch_word():
    sk = ReflSketch(second_half=(-4, 2, 1, -3))
    assert sk.word() == (3, -1, -2, 4, -4, 2, 1, -3)


def test_parse_compact_forms():
    sk = parse_sketch("abaaba;-3,1,-2")
    assert sk == parse_sketch(WORKED_SKETCH)
    refl = parse_sketch("5,-4,-1,2,6,3")
    assert isinstance(refl, ReflSketch) and refl.second_half == (5, -4, -1, 2, 6, 3)


def test_signed_perm_count():
    assert sum(1 for _ in signed_perms(3)) == 48
