"""Statistics on regions whose distributions match characteristic polynomials.

The statistic is always `number of positive compartments` computed on the
canonical combinatorial object of a family: signed permutations are split at
right-to-left minima of absolute values; labeled symmetric non-nesting
diagrams are first split into bounded and unbounded parts, and the unbounded
part's interlinked pieces are grouped into compartments by the
smallest-remaining-label rule.  A compartment is positive when its last entry
(or the label of the block owning its last position) is positive.

The module also checks the generating-function identity tying these
distributions to characteristic polynomials: with F(x) and G(x) the
exponential generating functions of signed region counts (-1)^n r(A_n) and
(-1)^rank b(A_n), the chi-EGF equals G(x)^((t+1)/2) / F(x)^((t-1)/2).  Both
sides are computed exactly, with F and G built from oracle counts so the test
is independent of the closed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

from . import charpoly, movelab, regionlab, sketchlib
from .arrangement import build, rank
from .exactnum import (
    PolySeries,
    Rat,
    RatPolyInT,
    series_pow_poly_exponent,
)


# ---------------------------------------------------------------------------
# compartments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompartmentSplit:
    parts: tuple      # sub-sequences of the signed permutation, in order
    positive: tuple   # one flag per part: last entry positive

    @property
    def count(self) -> int:
        return len(self.parts)

    @property
    def positive_count(self) -> int:
        return sum(self.positive)


def compartments(perm) -> CompartmentSplit:
    """Split after each right-to-left minimum of absolute values."""
    parts = []
    rest = list(perm)
    while rest:
        i = min(range(len(rest)), key=lambda k: abs(rest[k]))
        parts.append(tuple(rest[: i + 1]))
        rest = rest[i + 1 :]
    return CompartmentSplit(
        parts=tuple(parts), positive=tuple(p[-1] > 0 for p in parts)
    )


def diagram_compartments(diagram: sketchlib.ArcDiagram):
    """Compartments of a labeled non-nesting diagram (an unbounded part).

    Interlinked pieces are grouped left to right: each compartment closes at
    the piece holding the smallest absolute label not yet used.  Returns a
    list of (pieces, positive) with positivity read off the label of the
    block owning the compartment's last position.
    """
    pieces = sketchlib.interlinked_pieces(diagram)
    if not pieces:
        return []
    out = []
    start = 0
    while start < len(pieces):
        remaining_labels = [
            (abs(lab), idx)
            for idx in range(start, len(pieces))
            for _, lab in pieces[idx]
        ]
        _, stop = min(remaining_labels)
        group = pieces[start : stop + 1]
        last_block = max(
            (blk for piece in group for blk in piece), key=lambda blk: blk[0][-1]
        )
        out.append((tuple(group), last_block[1] > 0))
        start = stop + 1
    return out


def nnp_positive_compartments(diagram: sketchlib.ArcDiagram) -> int:
    """Positive compartments of the unbounded part of a symmetric diagram."""
    _, unbounded = sketchlib.decompose_nnp(diagram)
    return sum(1 for _, pos in diagram_compartments(unbounded) if pos)


def sketch_positive_compartments(sk) -> int:
    return nnp_positive_compartments(sketchlib.to_arc_diagram(sk))


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------


def _threshold_representatives(n: int):
    """Canonical threshold permutations, with a leading -1 flipped to +1."""
    for perm in sketchlib.signed_perms(n):
        if movelab._canonical_refl("threshold", perm) != perm:
            continue
        if perm[0] == -1:
            yield (1,) + perm[1:]
        else:
            yield perm


def _refl_objects(family: str, n: int):
    if family == "braid":
        return [p for p in sketchlib.signed_perms(n) if all(v > 0 for v in p)]
    if family == "boolean":
        return [
            p
            for p in sketchlib.signed_perms(n)
            if [abs(v) for v in p] == list(range(1, n + 1))
        ]
    if family == "type-c":
        return list(sketchlib.signed_perms(n))
    if family == "type-d":
        return [p for p in sketchlib.signed_perms(n) if p[0] > 0]
    if family == "fubini":
        return [
            p
            for p in sketchlib.signed_perms(n)
            if movelab._canonical_refl("fubini", p) == p
        ]
    if family == "threshold":
        return list(_threshold_representatives(n))
    raise ValueError("no signed-permutation statistic for family %r" % family)


_REFL_FAMILIES = ("braid", "boolean", "type-c", "type-d", "fubini", "threshold")


def _sketch_objects(family: str, n: int, m: int):
    if family == "cat-c":
        return sketchlib.enumerate_sketches(n)
    if family == "cat-c-ext":
        return sketchlib.enumerate_m_sketches(n, m)
    if family == "cat-d":
        return [
            sk for sk in sketchlib.enumerate_sketches(n) if movelab.is_type_d_sketch(sk)
        ]
    if family == "pointed":
        return sketchlib.enumerate_pointed(n)
    if family == "cat-b":
        return [
            sk for sk in sketchlib.enumerate_pointed(n) if movelab.is_type_b_sketch(sk)
        ]
    if family == "cat-bc":
        return [
            sk
            for sk in sketchlib.enumerate_pointed(n)
            if movelab.is_type_bc_sketch(sk)
        ]
    raise ValueError("no sketch statistic for family %r" % family)


@dataclass(frozen=True)
class Distribution:
    family: str
    n: int
    m: int
    counts: tuple  # index j = number of positive compartments, j = 0..n

    @property
    def total(self) -> int:
        return sum(self.counts)


def distribution(family: str, n: int, m: int = None) -> Distribution:
    """Distribution of `positive compartments` over the family's objects."""
    counts = [0] * (n + 1)
    if family in _REFL_FAMILIES:
        for perm in _refl_objects(family, n):
            counts[compartments(perm).positive_count] += 1
    else:
        for sk in _sketch_objects(family, n, m):
            counts[sketch_positive_compartments(sk)] += 1
    return Distribution(family=family, n=n, m=m, counts=tuple(counts))


def distribution_matches_chi(family: str, n: int, m: int = None) -> bool:
    dist = distribution(family, n, m)
    chi = charpoly.char_poly(build(family, n, m))
    return dist.counts == chi.abs_coeffs()


# ---------------------------------------------------------------------------
# generating-function identities
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def oracle_counts(family: str, k: int, m: int = None):
    """(r, b, rank) of the family's k-th arrangement from the region oracle."""
    if k == 0:
        return 1, 1, 0
    arr = build(family, k, m)
    return (
        regionlab.region_count(arr),
        regionlab.bounded_count(arr),
        rank(arr),
    )


def _oracle_series(family: str, order: int, m: int = None):
    f_coeffs, g_coeffs = [], []
    for k in range(order + 1):
        r, b, rk = oracle_counts(family, k, m)
        f_coeffs.append(Rat((-1) ** k * r))
        g_coeffs.append(Rat((-1) ** rk * b))
    return PolySeries.from_counts(f_coeffs), PolySeries.from_counts(g_coeffs)


@dataclass
class IdentityReport:
    name: str
    passed: bool
    order: int
    failures: list = field(default_factory=list)


def gesa_rhs(family: str, order: int, m: int = None) -> PolySeries:
    """G(x)^((t+1)/2) / F(x)^((t-1)/2) from oracle counts."""
    f, g = _oracle_series(family, order, m)
    half = Rat(1, 2)
    e_plus = RatPolyInT([half, half])     # (t+1)/2
    e_minus = RatPolyInT([half, -half])   # (1-t)/2 = -(t-1)/2
    return series_pow_poly_exponent(g, e_plus) * series_pow_poly_exponent(f, e_minus)


def gesa_check(family: str, order: int, m: int = None) -> IdentityReport:
    """Compare the series right-hand side to the characteristic polynomials."""
    rhs = gesa_rhs(family, order, m)
    failures = []
    for k in range(order + 1):
        if k == 0:
            chi = RatPolyInT([Rat(1)])
        else:
            chi_poly = charpoly.char_poly(build(family, k, m)).poly
            chi = RatPolyInT([Rat(c) for c in chi_poly.coeffs])
        if rhs[k] != chi:
            failures.append((k, rhs[k], chi))
    return IdentityReport(
        name="gesa:%s" % family, passed=not failures, order=order, failures=failures
    )


def fuss_catalan_egf(order: int, m: int) -> PolySeries:
    """EGF of 2^k k!/(mk+1) C((m+1)k, k): signed labelings of the non-nesting
    partitions appearing as unbounded parts."""
    coeffs = [
        Rat(2 ** k * factorial(k) * comb((m + 1) * k, k), m * k + 1)
        for k in range(order + 1)
    ]
    return PolySeries.from_counts(coeffs)


def regbreakup_check(family: str, order: int, m: int = 1) -> IdentityReport:
    """Check F(-x) = G(-x) * (Fuss-Catalan EGF) from oracle counts."""
    fam_m = m if family == "cat-c-ext" else None
    f, g = _oracle_series(family, order, fam_m)
    lhs = f.substitute_neg_x()
    rhs = g.substitute_neg_x() * fuss_catalan_egf(order, m)
    failures = [
        (k, lhs[k], rhs[k]) for k in range(order + 1) if lhs[k] != rhs[k]
    ]
    return IdentityReport(
        name="regbreakup:%s" % family,
        passed=not failures,
        order=order,
        failures=failures,
    )


# ---------------------------------------------------------------------------
# concluding inequalities and the Raney count
# ---------------------------------------------------------------------------


def cmnj(m: int, n: int, j: int) -> int:
    """Labeled symmetric m-non-nesting partitions of size n with j positive
    compartments (0 for j outside 0..n)."""
    if j < 0 or j > n:
        return 0
    fam = "cat-c" if m == 1 else "cat-c-ext"
    return distribution(fam, n, m if m > 1 else None).counts[j]


def cmnj_inequalities(m_max: int, n_max: int) -> IdentityReport:
    failures = []
    table = {
        (m, n): distribution("cat-c" if m == 1 else "cat-c-ext", n, m if m > 1 else None).counts
        for m in range(1, m_max + 1)
        for n in range(1, n_max + 1)
    }

    def c(m, n, j):
        if j < 0 or j > n:
            return 0
        return table[(m, n)][j]

    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            for j in range(0, n + 2):
                if n + 1 <= n_max:
                    if not c(m, n, j) <= c(m, n + 1, j):
                        failures.append(("C(%d,%d,%d) <= C(%d,%d,%d)" % (m, n, j, m, n + 1, j)))
                    if not c(m, n, j) <= c(m, n + 1, j + 1):
                        failures.append(("C(%d,%d,%d) <= C(%d,%d,%d)" % (m, n, j, m, n + 1, j + 1)))
                lhs = c(m, n, j)
                rhs = sum(comb(k, j) * c(m, n, k) for k in range(j + 1, n + 1))
                if not lhs >= rhs:
                    failures.append("C(%d,%d,%d) >= binomial sum" % (m, n, j))
    return IdentityReport(
        name="cmnj", passed=not failures, order=n_max, failures=failures
    )


def raney_number(n: int, m: int, r: int) -> int:
    num = r * comb(n * (m + 1) + r, n)
    den = n * (m + 1) + r
    assert num % den == 0
    return num // den


@dataclass
class RaneyReport:
    n: int
    m: int
    formula: int
    oracle: int
    chi_route: int

    @property
    def passed(self) -> bool:
        return self.formula == self.oracle == self.chi_route


def raney_check(n: int, m: int) -> RaneyReport:
    """Regions of the 2^k-ratio arrangement vs n! A_n(m, 2), three routes."""
    arr = build("raney", n, m)
    formula = factorial(n) * raney_number(n, m, 2)
    oracle = regionlab.region_count(arr)
    chi = charpoly.char_poly(arr)
    return RaneyReport(
        n=n,
        m=m,
        formula=formula,
        oracle=oracle,
        chi_route=charpoly.regions_from_chi(chi),
    )


def fubini_numbers(n_max: int):
    """a(0..n_max): ordered set partition counts."""
    a = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        a[k] = sum(comb(k, j) * a[k - j] for j in range(1, k + 1))
    return a
