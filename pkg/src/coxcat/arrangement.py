"""Exact rational hyperplane arrangements and builders for every supported family.

A hyperplane is stored as <normal, x> = offset with the normal scaled to
coprime integers whose first nonzero entry is positive, so that proportional
equations collapse to one canonical form (e.g. 2x_1 = 0 and x_1 = 0).

All Catalan-type families are built in translated coordinates (constants like
-2,-1,0 instead of -1,0,1), which is where the sketch combinatorics lives; a
translation does not change the intersection poset.  Hyperplane order within
an arrangement is the documented generation order of its builder and is
stable: sign vectors are aligned with it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .exactnum import Rat, rat, rat_str

HALF = Rat(1, 2)


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane <normal, x> = offset in canonical form."""

    normal: tuple
    offset: object

    @staticmethod
    def make(normal, offset) -> "Hyperplane":
        normal = [Rat(a) for a in normal]
        offset = Rat(offset)
        if all(a == 0 for a in normal):
            raise ValueError("zero normal vector")
        # clear denominators jointly, then divide the normal's integer content
        denlcm = 1
        for a in list(normal) + [offset]:
            d = int(a.denominator)
            denlcm = denlcm * d // gcd(denlcm, d)
        ints = [int(a * denlcm) for a in normal]
        off = offset * denlcm
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        ints = [v // g for v in ints]
        off = off / g
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            ints = [-v for v in ints]
            off = -off
        return Hyperplane(tuple(Rat(v) for v in ints), off)

    def key(self):
        return (self.normal, self.offset)

    def evaluate(self, point):
        """<normal, point> - offset."""
        acc = -self.offset
        for a, x in zip(self.normal, point):
            acc += a * Rat(x)
        return acc

    def to_json(self):
        return {
            "normal": [rat_str(a) for a in self.normal],
            "offset": rat_str(self.offset),
        }

    @staticmethod
    def from_json(d) -> "Hyperplane":
        return Hyperplane.make([rat(s) for s in d["normal"]], rat(d["offset"]))


FAMILY_TAGS = (
    "braid",
    "boolean",
    "type-c",
    "type-d",
    "braid-boolean",
    "fubini",
    "threshold",
    "catalan-a",
    "cat-c",
    "cat-c-ext",
    "cat-d",
    "pointed",
    "cat-b",
    "cat-bc",
    "cat-threshold",
    "shi-threshold",
    "raney",
)

_NEEDS_M = {"cat-c-ext", "raney"}


@dataclass(frozen=True)
class Arrangement:
    """Dimension, ordered hyperplane list, and the family spec that built it."""

    n: int
    hyperplanes: tuple
    family: str = "custom"
    m: int = None

    def __post_init__(self):
        keys = [h.key() for h in self.hyperplanes]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate hyperplanes (up to scalar multiple)")

    def __len__(self):
        return len(self.hyperplanes)

    def index_of(self, h: Hyperplane) -> int:
        for i, g in enumerate(self.hyperplanes):
            if g.key() == h.key():
                return i
        raise KeyError("hyperplane not in arrangement")

    def contains_arrangement(self, other: "Arrangement") -> bool:
        mine = {h.key() for h in self.hyperplanes}
        return all(h.key() in mine for h in other.hyperplanes)

    def to_json(self):
        return {
            "n": self.n,
            "family": self.family,
            "m": self.m,
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json())

    @staticmethod
    def from_json(d) -> "Arrangement":
        return Arrangement(
            n=int(d["n"]),
            hyperplanes=tuple(Hyperplane.from_json(h) for h in d["hyperplanes"]),
            family=d.get("family", "custom"),
            m=d.get("m"),
        )


def _unit(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


def _pair(n, i, j, ci, cj):
    v = [0] * n
    v[i] = ci
    v[j] = cj
    return v


def _singles(n, levels):
    """x_i = level, i ascending then level ascending."""
    out = []
    for i in range(n):
        for lv in levels:
            out.append((_unit(n, i), lv))
    return out


def _pairs(n, kinds):
    """For each i<j (lex), each (ci, cj, levels) kind with levels ascending."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for ci, cj, levels in kinds:
                for lv in levels:
                    out.append((_pair(n, i, j, ci, cj), lv))
    return out


def _build_braid(n, m):
    return _pairs(n, [(1, -1, [0])])


def _build_boolean(n, m):
    return _singles(n, [0])


def _build_type_c(n, m):
    return _singles(n, [0]) + _pairs(n, [(1, 1, [0]), (1, -1, [0])])


def _build_type_d(n, m):
    return _pairs(n, [(1, 1, [0]), (1, -1, [0])])


def _build_braid_boolean(n, m):
    return _singles(n, [0]) + _pairs(n, [(1, -1, [0])])


def _build_fubini(n, m):
    return _singles(n, [0]) + _pairs(n, [(1, 1, [0])])


def _build_threshold(n, m):
    return _pairs(n, [(1, 1, [0])])


def _build_catalan_a(n, m):
    return _pairs(n, [(1, -1, [-1, 0, 1])])


def _build_cat_c_ext(n, m):
    # translated m-Catalan of type C: 2x_i in -2m..0, x_i+x_j in -2m..0,
    # x_i-x_j in -m..m
    out = []
    for i in range(n):
        for lv in range(-2 * m, 1):
            out.append((_unit(n, i, 2), lv))
    out += _pairs(
        n,
        [
            (1, 1, list(range(-2 * m, 1))),
            (1, -1, list(range(-m, m + 1))),
        ],
    )
    return out


def _build_cat_c(n, m):
    return _build_cat_c_ext(n, 1)


def _build_cat_d(n, m):
    return _pairs(n, [(1, 1, [-2, -1, 0]), (1, -1, [-1, 0, 1])])


_POINTED_LEVELS = [
    Rat(-5, 2),
    Rat(-3, 2),
    Rat(-1),
    Rat(-1, 2),
    Rat(0),
    HALF,
    Rat(3, 2),
]


def _build_pointed(n, m):
    return _singles(n, _POINTED_LEVELS) + _pairs(
        n, [(1, 1, [-2, -1, 0]), (1, -1, [-1, 0, 1])]
    )


def _build_cat_b(n, m):
    return _singles(n, [Rat(-3, 2), Rat(-1, 2), HALF]) + _pairs(
        n, [(1, 1, [-2, -1, 0]), (1, -1, [-1, 0, 1])]
    )


def _build_cat_bc(n, m):
    return _singles(n, [Rat(-3, 2), Rat(-1), Rat(-1, 2), Rat(0), HALF]) + _pairs(
        n, [(1, 1, [-2, -1, 0]), (1, -1, [-1, 0, 1])]
    )


def _build_cat_threshold(n, m):
    return _pairs(n, [(1, 1, [-2, -1, 0])])


def _build_shi_threshold(n, m):
    return _pairs(n, [(1, 1, [-1, 0])])


def _build_raney(n, m):
    # x_i = 0 for all i, then x_i = 2^k x_j for k = -m..m, i<j
    out = _singles(n, [0])
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(-m, m + 1):
                if k >= 0:
                    out.append((_pair(n, i, j, 1, -(2 ** k)), 0))
                else:
                    out.append((_pair(n, i, j, 2 ** (-k), -1), 0))
    return out


_BUILDERS = {
    "braid": _build_braid,
    "boolean": _build_boolean,
    "type-c": _build_type_c,
    "type-d": _build_type_d,
    "braid-boolean": _build_braid_boolean,
    "fubini": _build_fubini,
    "threshold": _build_threshold,
    "catalan-a": _build_catalan_a,
    "cat-c": _build_cat_c,
    "cat-c-ext": _build_cat_c_ext,
    "cat-d": _build_cat_d,
    "pointed": _build_pointed,
    "cat-b": _build_cat_b,
    "cat-bc": _build_cat_bc,
    "cat-threshold": _build_cat_threshold,
    "shi-threshold": _build_shi_threshold,
    "raney": _build_raney,
}


def build(family: str, n: int, m: int = None) -> Arrangement:
    """Build a family arrangement in its translated coordinates.

    Families needing only pairs i<j (type-d, threshold, cat-d, ...) are empty
    for n = 1; that degenerate case is allowed because it is what the
    exponential-generating-function conventions use.
    """
    if family not in _BUILDERS:
        raise ValueError("unknown family %r (one of %s)" % (family, ", ".join(FAMILY_TAGS)))
    if n < 1:
        raise ValueError("need n >= 1")
    if family in _NEEDS_M:
        if m is None or m < 1:
            raise ValueError("family %r needs m >= 1" % family)
    elif m is not None:
        raise ValueError("family %r takes no m" % family)
    raw = _BUILDERS[family](n, m)
    hyps = tuple(Hyperplane.make(normal, off) for normal, off in raw)
    return Arrangement(n=n, hyperplanes=hyps, family=family, m=m)


def rank(arr: Arrangement) -> int:
    """Rank of the matrix of normals, by exact Gaussian elimination."""
    rows = [list(h.normal) for h in arr.hyperplanes]
    r = 0
    for col in range(arr.n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / prow[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        r += 1
        if r == arr.n:
            break
    return r


def scale_to_integer(arr: Arrangement) -> Arrangement:
    """Substitute x = y/lam with lam = lcm of all offset denominators.

    Normals are already integral by canonicalization, so this clears the
    offsets; a linear change of coordinates keeps the intersection poset (and
    all region counts) unchanged.
    """
    lam = 1
    for h in arr.hyperplanes:
        d = int(Rat(h.offset).denominator)
        lam = lam * d // gcd(lam, d)
    if lam == 1:
        return arr
    hyps = tuple(
        Hyperplane(h.normal, h.offset * lam) for h in arr.hyperplanes
    )
    return Arrangement(n=arr.n, hyperplanes=hyps, family=arr.family, m=arr.m)
