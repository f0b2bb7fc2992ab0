"""Ground-truth geometric oracle for arrangements.

Exact rational linear programming (two-phase simplex with Bland's rule),
feasibility of sign vectors, exhaustive region enumeration, relative
boundedness of regions, and the region adjacency graph.

Sign vectors are tuples over {+1, -1}, one entry per hyperplane, aligned with
the arrangement's hyperplane order; entry i is the sign of <a_i, x> - b_i on
the region.

Region enumeration inserts hyperplanes one at a time.  Which existing regions
the new hyperplane splits is read off the regions of the arrangement
restricted to that hyperplane (computed recursively, one dimension down):
each restricted region supplies an interior point of a cut, and stepping off
the hyperplane from that point by an exact margin yields witnesses for both
children.  This replaces per-region LP split tests, which are far too slow at
the scale of the larger Catalan deformations, while keeping the same
insertion loop and output; the LP kernel still backs single-sign-vector
feasibility checks and boundedness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Arrangement
from .exactnum import Rat

ZERO = Rat(0)
ONE = Rat(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: object = None
    witness: tuple = None


# ---------------------------------------------------------------------------
# simplex core: max c.z  s.t.  A z = b, z >= 0, exact rationals
# ---------------------------------------------------------------------------


def _pivot(rows, obj, basis, r, col):
    prow = rows[r]
    inv = ONE / prow[col]
    rows[r] = [v * inv for v in prow]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i != r and row[col] != 0:
            f = row[col]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if obj[col] != 0:
        f = obj[col]
        for j in range(len(obj)):
            obj[j] -= f * prow[j]
    basis[r] = col


def _bland_loop(rows, obj, basis, ncols):
    while True:
        col = None
        for j in range(ncols):
            if obj[j] > 0:
                col = j
                break
        if col is None:
            return OPTIMAL
        r, best, bestbase = None, None, None
        for i, row in enumerate(rows):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best or (ratio == best and basis[i] < bestbase):
                    r, best, bestbase = i, ratio, basis[i]
        if r is None:
            return UNBOUNDED
        _pivot(rows, obj, basis, r, col)


def simplex_max(c, a_rows, b_vals):
    """Maximize c.z subject to A z = b, z >= 0.

    Returns (status, value, z).  Exact arithmetic and Bland's rule make the
    run deterministic and terminating.
    """
    m = len(a_rows)
    ncols = len(c)
    rows = []
    for i in range(m):
        row = [Rat(v) for v in a_rows[i]] + [Rat(b_vals[i])]
        if row[-1] < 0:
            row = [-v for v in row]
        rows.append(row)
    # phase 1: artificial variables with identity basis
    total = ncols + m
    for i, row in enumerate(rows):
        art = [ZERO] * m
        art[i] = ONE
        rows[i] = row[:-1] + art + [row[-1]]
    basis = [ncols + i for i in range(m)]
    obj = [ZERO] * (total + 1)
    for row in rows:
        for j in range(ncols):
            obj[j] += row[j]
        obj[-1] += row[-1]
    status = _bland_loop(rows, obj, basis, total)
    assert status == OPTIMAL
    if obj[-1] != 0:
        return INFEASIBLE, None, None
    # drive artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(len(rows)):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if rows[i][j] != 0), None)
            if col is None:
                continue
            _pivot(rows, obj, basis, i, col)
        keep.append(i)
    rows = [rows[i][:ncols] + [rows[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    obj = [Rat(v) for v in c] + [ZERO]
    for i, bi in enumerate(basis):
        if obj[bi] != 0:
            f = obj[bi]
            for j in range(ncols + 1):
                obj[j] -= f * rows[i][j]
    status = _bland_loop(rows, obj, basis, ncols)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    z = [ZERO] * ncols
    for i, bi in enumerate(basis):
        z[bi] = rows[i][-1]
    value = sum((Rat(ci) * zi for ci, zi in zip(c, z)), ZERO)
    return OPTIMAL, value, tuple(z)


def max_margin(forms, nvars):
    """Maximize the common margin eps of strict constraints f_k(x) >= eps.

    Each form is (coeffs, const) meaning <coeffs, x> + const.  The margin is
    capped at 1 so the LP always has an optimum.  Returns (eps, x).
    """
    m = len(forms)
    # variables: x+ (n), x- (n), e, f, s0, s_1..s_m
    ncols = 2 * nvars + 3 + m
    rows, rhs = [], []
    for k, (coeffs, const) in enumerate(forms):
        row = [ZERO] * ncols
        for j, a in enumerate(coeffs):
            row[j] = Rat(a)
            row[nvars + j] = -Rat(a)
        row[2 * nvars] = -ONE
        row[2 * nvars + 1] = ONE
        row[2 * nvars + 2 + 1 + k] = -ONE
        rows.append(row)
        rhs.append(-Rat(const))
    cap = [ZERO] * ncols
    cap[2 * nvars] = ONE
    cap[2 * nvars + 1] = -ONE
    cap[2 * nvars + 2] = ONE
    rows.append(cap)
    rhs.append(ONE)
    c = [ZERO] * ncols
    c[2 * nvars] = ONE
    c[2 * nvars + 1] = -ONE
    status, value, z = simplex_max(c, rows, rhs)
    assert status == OPTIMAL, "margin LP cannot be infeasible or unbounded"
    x = tuple(z[j] - z[nvars + j] for j in range(nvars))
    return value, x


def lp_feasible(ge_rows, eq_rows, nvars):
    """Is there x with <g, x> >= c for (g, c) in ge_rows and <h, x> = d in eq_rows?"""
    ncols = 2 * nvars + len(ge_rows)
    rows, rhs = [], []
    for k, (coeffs, const) in enumerate(ge_rows):
        row = [ZERO] * ncols
        for j, a in enumerate(coeffs):
            row[j] = Rat(a)
            row[nvars + j] = -Rat(a)
        row[2 * nvars + k] = -ONE
        rows.append(row)
        rhs.append(Rat(const))
    for coeffs, const in eq_rows:
        row = [ZERO] * ncols
        for j, a in enumerate(coeffs):
            row[j] = Rat(a)
            row[nvars + j] = -Rat(a)
        rows.append(row)
        rhs.append(Rat(const))
    status, _, _ = simplex_max([ZERO] * ncols, rows, rhs)
    return status == OPTIMAL


# ---------------------------------------------------------------------------
# sign vectors
# ---------------------------------------------------------------------------


def sign_vector(arr: Arrangement, point):
    """Sign of every hyperplane at the point; the point must avoid them all."""
    out = []
    for h in arr.hyperplanes:
        v = h.evaluate(point)
        if v == 0:
            raise ValueError("point lies on a hyperplane")
        out.append(1 if v > 0 else -1)
    return tuple(out)


def signs_to_str(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def signs_from_str(s: str):
    return tuple(1 if ch == "+" else -1 for ch in s)


def feasible(arr: Arrangement, signs):
    """Witness point of the open region for this sign vector, or None.

    Solves: maximize eps subject to sign_i (<a_i, x> - b_i) >= eps, eps <= 1.
    The region is nonempty exactly when the optimum is positive.
    """
    if len(signs) != len(arr.hyperplanes):
        raise ValueError("sign vector length must match the arrangement")
    forms = []
    for s, h in zip(signs, arr.hyperplanes):
        sg = 1 if s > 0 else -1
        forms.append(
            (tuple(sg * a for a in h.normal), -sg * h.offset)
        )
    eps, x = max_margin(forms, arr.n)
    if eps > 0:
        return x
    return None


def lp_result(arr: Arrangement, signs) -> LPResult:
    w = feasible(arr, signs)
    if w is None:
        return LPResult(INFEASIBLE)
    return LPResult(OPTIMAL, optimum=None, witness=w)


# ---------------------------------------------------------------------------
# region enumeration
# ---------------------------------------------------------------------------


def _dot(a, x):
    acc = ZERO
    for u, v in zip(a, x):
        if u != 0:
            acc += u * v
    return acc


def _canon(coeffs, rhs):
    """Canonical (coeffs, rhs) key for a hyperplane, up to positive scale and sign."""
    from math import gcd

    denlcm = 1
    for v in list(coeffs) + [rhs]:
        d = int(Rat(v).denominator)
        denlcm = denlcm * d // gcd(denlcm, d)
    ints = [int(Rat(v) * denlcm) for v in coeffs]
    off = Rat(rhs) * denlcm
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    off = off / g
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
        off = -off
    return tuple(ints), off


def _restrict(hyps, hco, hrhs, dim):
    """Restrict hyperplanes to the hyperplane <hco, x> = hrhs.

    Returns (sub_hyps, lift) where sub_hyps live in dim-1 coordinates and
    lift maps a (dim-1)-point back to a point on the hyperplane.
    """
    piv = next(j for j in range(dim) if hco[j] != 0)
    free = [j for j in range(dim) if j != piv]
    inv = ONE / hco[piv]

    def lift(y):
        x = [ZERO] * dim
        acc = Rat(hrhs)
        for idx, j in enumerate(free):
            x[j] = y[idx]
            acc -= hco[j] * y[idx]
        x[piv] = acc * inv
        return tuple(x)

    sub, seen = [], set()
    for b, d in hyps:
        f = b[piv] * inv
        coeffs = [b[j] - f * hco[j] for j in free]
        rhs = d - f * hrhs
        if all(c == 0 for c in coeffs):
            continue  # parallel to the carrier: empty intersection
        key = _canon(coeffs, rhs)
        if key in seen:
            continue
        seen.add(key)
        sub.append((tuple(coeffs), rhs))
    return sub, lift


def _step_size(hyps, u, v):
    """Half the distance (in parameter t) from u to the nearest hyperplane
    along u + t v, so u +/- step stays inside the current region."""
    best = None
    for b, d in hyps:
        den = _dot(b, v)
        if den == 0:
            continue
        t = (d - _dot(b, u)) / den
        at = -t if t < 0 else t
        if best is None or at < best:
            best = at
    if best is None:
        return ONE
    return best / 2


def _regions_raw(hyps, dim):
    """All regions of the arrangement given as (normal, rhs) pairs.

    Returns {sign tuple: interior witness point}.
    """
    regions = {(): tuple([ZERO] * dim)}
    for k, (a, c) in enumerate(hyps):
        prev = hyps[:k]
        sub, lift = _restrict(prev, a, c, dim)
        cut = {}
        for y in _regions_raw(sub, dim - 1).values():
            u = lift(y)
            sigma = tuple(1 if _dot(b, u) - d > 0 else -1 for b, d in prev)
            cut[sigma] = u
        new = {}
        for sigma, w in regions.items():
            if sigma in cut:
                u = cut[sigma]
                eps = _step_size(prev, u, a)
                norm2 = _dot(a, a)
                assert norm2 > 0
                up = tuple(ui + eps * ai for ui, ai in zip(u, a))
                dn = tuple(ui - eps * ai for ui, ai in zip(u, a))
                new[sigma + (1,)] = up
                new[sigma + (-1,)] = dn
            else:
                val = _dot(a, w) - c
                assert val != 0
                new[sigma + (1 if val > 0 else -1,)] = w
        regions = new
    return regions


@lru_cache(maxsize=None)
def enumerate_regions(arr: Arrangement):
    """Exact region set: {sign vector: exact rational witness point}."""
    hyps = [(h.normal, h.offset) for h in arr.hyperplanes]
    return _regions_raw(hyps, arr.n)


def region_count(arr: Arrangement) -> int:
    return len(enumerate_regions(arr))


# ---------------------------------------------------------------------------
# boundedness
# ---------------------------------------------------------------------------


def _span_basis(arr: Arrangement):
    """Basis (as row vectors) of the span of the normals, by exact elimination."""
    rows = [list(h.normal) for h in arr.hyperplanes]
    basis = []
    for row in rows:
        r = list(row)
        for b in basis:
            piv = next(j for j in range(len(b)) if b[j] != 0)
            if r[piv] != 0:
                f = r[piv] / b[piv]
                r = [x - f * y for x, y in zip(r, b)]
        if any(x != 0 for x in r):
            basis.append(r)
    return basis


@lru_cache(maxsize=None)
def _direction_groups(arr: Arrangement):
    groups = {}
    for idx, h in enumerate(arr.hyperplanes):
        groups.setdefault(h.normal, []).append(idx)
    return tuple(sorted(groups.items()))


@lru_cache(maxsize=None)
def _cone_nontrivial(arr: Arrangement, pattern) -> bool:
    """Does the recession cone meet span(normals) in a nonzero vector?

    pattern has one entry per parallel class: +1/-1 for a one-sided
    constraint on that normal direction, 0 for an equality.  The test is the
    LP of nonzero feasibility of {sign_i <a_i, d> >= 0} within span(normals),
    run once per pattern and memoized.
    """
    basis = _span_basis(arr)
    r = len(basis)
    if r == 0:
        return False
    dirs = [d for d, _ in _direction_groups(arr)]
    ge, eq = [], []
    for (dvec, _), kind in zip(_direction_groups(arr), pattern):
        coeffs = tuple(_dot(dvec, b) for b in basis)
        if kind == 0:
            eq.append((coeffs, ZERO))
        else:
            coeffs = tuple(kind * c for c in coeffs)
            ge.append((coeffs, ZERO))
    for t in range(r):
        for sg in (1, -1):
            unit = tuple(ONE if j == t else ZERO for j in range(r))
            probe = tuple(sg * u for u in unit)
            if lp_feasible(ge + [(probe, ONE)], eq, r):
                return True
    return False


def is_bounded_region(arr: Arrangement, signs, check=True) -> bool:
    """True iff the region's recession cone meets span(normals) only in 0.

    This is relative boundedness: for non-essential arrangements (braid,
    threshold) a region is bounded when its intersection with the span of the
    normals is bounded.
    """
    if check and signs not in enumerate_regions(arr):
        raise ValueError("not a region")
    pattern = []
    for dvec, idxs in _direction_groups(arr):
        ss = {signs[i] for i in idxs}
        pattern.append(0 if len(ss) > 1 else next(iter(ss)))
    return not _cone_nontrivial(arr, tuple(pattern))


def bounded_count(arr: Arrangement) -> int:
    return sum(
        1 for s in enumerate_regions(arr) if is_bounded_region(arr, s, check=False)
    )


# ---------------------------------------------------------------------------
# region adjacency graph
# ---------------------------------------------------------------------------


def region_graph(arr: Arrangement):
    """Adjacency on regions: edge iff the sign vectors differ in one position.

    Returns {sign vector: frozenset of adjacent sign vectors}.
    """
    regions = enumerate_regions(arr)
    adj = {s: set() for s in regions}
    for s in regions:
        for i in range(len(s)):
            t = s[:i] + (-s[i],) + s[i + 1 :]
            if t in adj:
                adj[s].add(t)
    return {s: frozenset(v) for s, v in adj.items()}


def is_connected(graph) -> bool:
    if not graph:
        return True
    start = next(iter(graph))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in graph[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(graph)


def restriction_classes(sub: Arrangement, arr: Arrangement):
    """Partition the regions of arr by the region of sub containing them."""
    if not arr.contains_arrangement(sub):
        raise ValueError("sub must be a sub-arrangement of arr")
    idx = [arr.index_of(h) for h in sub.hyperplanes]
    fibers = {}
    for s in enumerate_regions(arr):
        key = tuple(s[i] for i in idx)
        fibers.setdefault(key, set()).add(s)
    return fibers
