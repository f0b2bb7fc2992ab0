"""Move systems on sketches, equivalence classes, and canonical forms.

A move on a sketch crosses exactly one hyperplane missing from the
sub-arrangement: flipping that hyperplane's inequality reverses the order of
every letter pair whose value difference lies on it (such pairs come in
mirror orbits of size one or two).  The crossing is possible precisely when
all those pairs are adjacent in the word, and the rewrite swaps each of them.
Instantiating this engine with the missing set of each sub-arrangement
reproduces the per-family move descriptions (binary swaps of adjacent
letters, the center swap, the paired mid-letter swap, and so on).

Classes are computed by breadth-first search over a closed universe of
sketches; canonical representatives per family pick the unique class member
satisfying that family's structural conditions.  verify_moves_against_geometry
realizes every sketch and referees the whole construction against the region
oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import regionlab, sketchlib
from .arrangement import Arrangement, Hyperplane, build
from .exactnum import Rat
from .sketchlib import (
    Letter,
    L,
    B,
    MSketch,
    PointedSketch,
    ReflSketch,
    SymmetricSketch,
    conj,
    is_alpha,
    letter_value_form,
)


@dataclass(frozen=True)
class MoveSystem:
    """A family of moves: sketches of the ambient arrangement, equivalence =
    lying in the same region of the sub-arrangement."""

    name: str     # sub-arrangement family tag
    ambient: str  # ambient family tag whose sketches are moved
    kind: str     # refl | symmetric | pointed


MOVE_SYSTEMS = {
    "boolean": MoveSystem("boolean", "type-c", "refl"),
    "type-d": MoveSystem("type-d", "type-c", "refl"),
    "braid": MoveSystem("braid", "type-c", "refl"),
    "braid-boolean": MoveSystem("braid-boolean", "type-c", "refl"),
    "fubini": MoveSystem("fubini", "type-c", "refl"),
    "threshold": MoveSystem("threshold", "type-c", "refl"),
    "cat-d": MoveSystem("cat-d", "cat-c", "symmetric"),
    "cat-threshold": MoveSystem("cat-threshold", "cat-c", "symmetric"),
    "shi-threshold": MoveSystem("shi-threshold", "cat-c", "symmetric"),
    "cat-b": MoveSystem("cat-b", "pointed", "pointed"),
    "cat-bc": MoveSystem("cat-bc", "pointed", "pointed"),
}


def _word_letters(sk):
    if isinstance(sk, ReflSketch):
        return tuple(L(v, 0) for v in sk.word())
    return sk.letters


def _from_word(sk, letters):
    if isinstance(sk, ReflSketch):
        half = len(letters) // 2
        return ReflSketch(second_half=tuple(x.sub for x in letters[half:]))
    if isinstance(sk, SymmetricSketch):
        return SymmetricSketch(letters=letters, n=sk.n)
    if isinstance(sk, MSketch):
        return MSketch(letters=letters, n=sk.n, m=sk.m)
    return PointedSketch(letters=letters, n=sk.n)


def _alphabet_for(sys: MoveSystem, n: int):
    if sys.kind == "refl":
        return [L(i, 0) for i in range(1, n + 1)] + [L(-i, 0) for i in range(1, n + 1)]
    if sys.kind == "symmetric":
        return sketchlib.alphabet_m(n, 1)
    return sketchlib.alphabet_pointed(n)


@lru_cache(maxsize=None)
def _crossing_pairs(sys_name: str, n: int):
    """For each missing hyperplane, the letter pairs whose order it controls."""
    sys = MOVE_SYSTEMS[sys_name]
    ambient = build(sys.ambient, n)
    sub = build(sys.name, n)
    missing = {h.key() for h in ambient.hyperplanes} - {h.key() for h in sub.hyperplanes}
    alphabet = _alphabet_for(sys, n)
    pairs_by_key = {}
    for x, y in itertools.combinations(alphabet, 2):
        cx, kx = letter_value_form(x, n)
        cy, ky = letter_value_form(y, n)
        coeffs = tuple(a - b for a, b in zip(cx, cy))
        if all(c == 0 for c in coeffs):
            continue  # constant difference: never a hyperplane
        h = Hyperplane.make(coeffs, ky - kx)
        pairs_by_key.setdefault(h.key(), []).append((x, y))
    return tuple(
        tuple(pairs_by_key[k]) for k in sorted(missing) if k in pairs_by_key
    )


def moves(sys: MoveSystem, sk):
    """All sketches reachable from sk by one move of the system."""
    _check_kind(sys, sk)
    word = _word_letters(sk)
    pos = {x: p for p, x in enumerate(word)}
    out = set()
    for pairs in _crossing_pairs(sys.name, _sketch_n(sk)):
        spots = []
        for x, y in pairs:
            p, q = pos[x], pos[y]
            if p > q:
                p, q = q, p
            if q != p + 1:
                spots = None
                break
            spots.append(p)
        if spots is None:
            continue
        new = list(word)
        for p in spots:
            new[p], new[p + 1] = new[p + 1], new[p]
        out.add(_from_word(sk, tuple(new)))
    return out


def _sketch_n(sk) -> int:
    return sk.n


def _check_kind(sys: MoveSystem, sk):
    want = {
        "refl": ReflSketch,
        "symmetric": SymmetricSketch,
        "pointed": PointedSketch,
    }[sys.kind]
    if not isinstance(sk, want):
        raise TypeError("move system %r wants %s sketches" % (sys.name, want.__name__))


def universe(sys: MoveSystem, n: int):
    """All sketches the system acts on."""
    if sys.kind == "refl":
        return [ReflSketch(second_half=p) for p in sketchlib.signed_perms(n)]
    if sys.kind == "symmetric":
        return sketchlib.enumerate_sketches(n)
    return sketchlib.enumerate_pointed(n)


def classes(sys: MoveSystem, sketches):
    """Partition a move-closed universe into move-equivalence classes.

    Classes come back sorted by their least member so runs are reproducible.
    """
    pool = set(sketches)
    seen = set()
    out = []
    for sk in sketches:
        if sk in seen:
            continue
        comp = {sk}
        frontier = [sk]
        while frontier:
            cur = frontier.pop()
            for nxt in moves(sys, cur):
                if nxt not in pool:
                    raise ValueError(
                        "universe not closed: %s -> %s escapes" % (cur, nxt)
                    )
                if nxt not in comp:
                    comp.add(nxt)
                    frontier.append(nxt)
        seen |= comp
        out.append(frozenset(comp))
    out.sort(key=lambda c: min(_sort_key(s) for s in c))
    return out


def _sort_key(sk):
    if isinstance(sk, ReflSketch):
        return sk.second_half
    return sk.letters


# ---------------------------------------------------------------------------
# canonical representatives
# ---------------------------------------------------------------------------


def _blocks(perm):
    """Maximal runs of equal sign in a signed permutation."""
    out = []
    for v in perm:
        if out and (out[-1][-1] > 0) == (v > 0):
            out[-1].append(v)
        else:
            out.append([v])
    return out


def _sort_blocks(perm):
    out = []
    for blk in _blocks(perm):
        out += sorted(blk, key=abs)
    return tuple(out)


def _canonical_refl(family: str, perm):
    if family == "boolean":
        # absolute values ascending, each value keeping its sign
        return tuple(sorted(perm, key=abs))
    if family == "type-d":
        return perm if perm[0] > 0 else (-perm[0],) + perm[1:]
    if family == "braid":
        # ascending x-order: negatives of the first half then positives,
        # read off the full word left to right
        n = len(perm)
        asc = [-perm[k] for k in range(n - 1, -1, -1) if perm[k] < 0]
        asc += [perm[k] for k in range(n) if perm[k] > 0]
        return tuple(asc)
    if family == "braid-boolean":
        pos = [v for v in perm if v > 0]
        neg = [v for v in perm if v < 0]
        return tuple(pos + neg)
    if family == "fubini":
        return _sort_blocks(perm)
    if family == "threshold":
        if len(perm) < 2:
            raise ValueError("threshold canonical forms need n >= 2")
        if len(_blocks(perm)[0]) == 1:
            perm = (-perm[0],) + perm[1:]
        return _sort_blocks(perm)
    raise ValueError("no canonical form for family %r" % family)


def is_type_d_sketch(sk: SymmetricSketch) -> bool:
    """Canonical representatives of type D Catalan regions.

    The first half must end with a beta-letter, and the n-th alpha-letter
    must carry a negative subscript whenever the letter following it is an
    alpha-letter or its own beta-letter.
    """
    n = sk.n
    word = sk.letters
    if is_alpha(word[2 * n - 1]):
        return False
    apos = [p for p, x in enumerate(word) if is_alpha(x)]
    k = apos[n - 1]
    nth = word[k]
    follower = word[k + 1]
    own_beta = L(nth.sub, 1) if nth.sub > 0 else L(nth.sub, 0)
    if is_alpha(follower) or follower == own_beta:
        return nth.sub < 0
    return True


def is_type_b_sketch(sk: PointedSketch) -> bool:
    """First half ends with a beta-letter and the pointed beta immediately
    follows the (n+1)-th alpha-letter."""
    word, pointer, _ = sketchlib.pointed_pair_from_sketch(sk)
    return word[-1] == "b" and pointer > 0 and word[pointer - 1] == "a"


def is_type_bc_sketch(sk: PointedSketch) -> bool:
    """The pointed beta immediately follows the (n+1)-th alpha-letter."""
    word, pointer, _ = sketchlib.pointed_pair_from_sketch(sk)
    return pointer > 0 and word[pointer - 1] == "a"


_CANONICAL_PREDICATES = {
    "cat-d": is_type_d_sketch,
    "cat-b": is_type_b_sketch,
    "cat-bc": is_type_bc_sketch,
    "cat-threshold": lambda sk: is_ct_maximal(sk),
    "shi-threshold": lambda sk: is_st_maximal(sk),
}


def canonical(family: str, sk):
    """The canonical member of sk's move-equivalence class."""
    if isinstance(sk, ReflSketch):
        return ReflSketch(second_half=_canonical_refl(family, sk.second_half))
    pred = _CANONICAL_PREDICATES[family]
    sys = MOVE_SYSTEMS[family]
    comp = {sk}
    frontier = [sk]
    while frontier:
        cur = frontier.pop()
        for nxt in moves(sys, cur):
            if nxt not in comp:
                comp.add(nxt)
                frontier.append(nxt)
    picks = [s for s in comp if pred(s)]
    if len(picks) != 1:
        raise ValueError(
            "expected one canonical sketch per class, found %d" % len(picks)
        )
    return picks[0]


def canonical_count(family: str, n: int) -> int:
    """Number of canonical sketches of the family at size n."""
    sys = MOVE_SYSTEMS[family]
    if sys.kind == "refl":
        seen = {_canonical_refl(family, p) for p in sketchlib.signed_perms(n)}
        return len(seen)
    pred = _CANONICAL_PREDICATES[family]
    return sum(1 for sk in universe(sys, n) if pred(sk))


# ---------------------------------------------------------------------------
# lexicographically maximal sketches for the threshold deformations
# ---------------------------------------------------------------------------


def _rank(x: Letter, n: int) -> int:
    """Rank in the letter order: alphas above betas, positives above
    negatives, larger subscript first within each group (0 = largest)."""
    if is_alpha(x):
        base = 0
    else:
        base = 2 * n
    if x.sub > 0:
        return base + (n - x.sub)
    return base + n + (-x.sub - 1)


def _maximality_conditions(sk: SymmetricSketch, shi: bool) -> bool:
    n = sk.n
    word = sk.letters
    size = 4 * n
    pos = {x: p for p, x in enumerate(word)}

    def beta_of(a: Letter) -> Letter:
        return L(a.sub, 1) if a.sub > 0 else L(a.sub, 0)

    def alpha_of(b: Letter) -> Letter:
        return L(b.sub, 0) if b.sub > 0 else L(b.sub, -1)

    # (1) a beta followed by an alpha
    for p in range(size - 1):
        x, y = word[p], word[p + 1]
        if not is_alpha(x) and is_alpha(y):
            if shi:
                if not (x.sub < 0 and y.sub > 0 and abs(x.sub) != abs(y.sub)):
                    return False
            else:
                if not ((x.sub > 0) != (y.sub > 0) and abs(x.sub) != abs(y.sub)):
                    return False
    # (2) consecutive same-sign alphas whose betas are also consecutive
    for p in range(size - 1):
        x, y = word[p], word[p + 1]
        if is_alpha(x) and is_alpha(y) and (x.sub > 0) == (y.sub > 0):
            bx, by = beta_of(x), beta_of(y)
            if pos[by] == pos[bx] + 1 and not (x.sub > y.sub):
                return False
    # (3) the middle alphas
    apos = [p for p, x in enumerate(word) if is_alpha(x)]
    if apos[n] == apos[n - 1] + 1:
        nth = word[apos[n - 1]]
        if nth.sub < 0:
            return False
        if n >= 2:
            if apos[n - 1] != apos[n - 2] + 1:
                return False
            prev = word[apos[n - 2]]
            if prev.sub < 0:
                bprev, bnth = beta_of(prev), beta_of(nth)
                if pos[bnth] == pos[bprev] + 1:
                    if not (prev.sub > word[apos[n]].sub):
                        return False
    # (4) the betas flanking the center
    x, y = word[2 * n - 2], word[2 * n]
    if not is_alpha(x) and not is_alpha(y):
        same = (x.sub < 0 and y.sub < 0) if shi else ((x.sub > 0) == (y.sub > 0))
        if same and pos[alpha_of(y)] == pos[alpha_of(x)] + 1:
            if not (x.sub > y.sub):
                return False
    return True


def is_ct_maximal(sk: SymmetricSketch) -> bool:
    """Largest sketch (in the letter order) within its Catalan-threshold class."""
    return _maximality_conditions(sk, shi=False)


def is_st_maximal(sk: SymmetricSketch) -> bool:
    """Largest sketch within its Shi-threshold class."""
    return _maximality_conditions(sk, shi=True)


def lex_key(sk: SymmetricSketch):
    """Rank tuple of the word; lexicographically SMALLEST key = largest sketch."""
    n = sk.n
    return tuple(_rank(x, n) for x in sk.letters)


# ---------------------------------------------------------------------------
# geometry referee
# ---------------------------------------------------------------------------


@dataclass
class MoveReport:
    passed: bool
    class_count: int
    region_count: int
    mismatches: list = field(default_factory=list)


def verify_moves_against_geometry(sys: MoveSystem, sub: Arrangement, ambient: Arrangement, sketches=None) -> MoveReport:
    """Realize every sketch and referee moves against the region oracle.

    Checks that (i) each move flips exactly one inequality, and only of a
    hyperplane outside the sub-arrangement, and (ii) move classes coincide
    with the fibers of the map sending a sketch's region to the
    sub-arrangement region containing it.
    """
    if not ambient.contains_arrangement(sub):
        raise ValueError("sub must be a sub-arrangement of ambient")
    n = ambient.n
    if sketches is None:
        sketches = universe(sys, n)
    sub_idx = [ambient.index_of(h) for h in sub.hyperplanes]
    sub_set = set(sub_idx)
    mism = []
    signs = {}
    for sk in sketches:
        x = sketchlib.realize(sk, ambient)
        signs[sk] = regionlab.sign_vector(ambient, x)
    if len(set(signs.values())) != len(signs):
        mism.append("distinct sketches realized to the same region")
    for sk in sketches:
        for nxt in moves(sys, sk):
            if sk not in moves(sys, nxt):
                mism.append("move not symmetric: %s -> %s" % (sk, nxt))
            diff = [
                i for i, (a, b) in enumerate(zip(signs[sk], signs[nxt])) if a != b
            ]
            if len(diff) != 1 or diff[0] in sub_set:
                mism.append(
                    "move %s -> %s flips %s" % (sk, nxt, diff)
                )
    fibers = {}
    for sk in sketches:
        key = tuple(signs[sk][i] for i in sub_idx)
        fibers.setdefault(key, set()).add(sk)
    move_classes = classes(sys, list(sketches))
    fiber_sets = {frozenset(v) for v in fibers.values()}
    if fiber_sets != set(move_classes):
        mism.append("move classes differ from sub-arrangement fibers")
    region_count = len(regionlab.enumerate_regions(sub))
    if len(move_classes) != region_count:
        mism.append(
            "class count %d != sub-arrangement regions %d"
            % (len(move_classes), region_count)
        )
    return MoveReport(
        passed=not mism,
        class_count=len(move_classes),
        region_count=region_count,
        mismatches=mism,
    )
