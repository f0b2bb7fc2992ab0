"""Characteristic polynomials by point counting over finite fields.

For a good prime q, the number of points of (Z/q)^n avoiding every
hyperplane equals chi(q).  Sampling n+2 primes above a safety bound,
interpolating through n+1 of them, and verifying the extra prime exactly
gives the integer-coefficient characteristic polynomial, from which region
and bounded-region counts follow by Zaslavsky's theorem:

    r(A) = (-1)^n chi(-1)        b(A) = (-1)^rank chi(1)

The point count is vectorized with integer numpy arrays (values stay far
below 2^63, so it is exact); distinct primes can be counted concurrently,
capped by the COXCAT_THREADS environment variable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import arrangement as arrmod
from .arrangement import Arrangement
from .exactnum import IntPoly, Rat, interpolate, primes_above


@dataclass(frozen=True)
class CharPoly:
    """Characteristic polynomial with its ambient dimension.

    Coefficients alternate in sign from the top: the t^i coefficient is
    (-1)^(n-i) c_i with c_i a non-negative integer.
    """

    poly: IntPoly
    arrangement_dim: int

    def __post_init__(self):
        n = self.arrangement_dim
        if self.poly.degree() != n:
            raise ValueError("characteristic polynomial must have degree n")
        for i, c in enumerate(self.poly.coeffs):
            if c != 0 and (1 if (n - i) % 2 == 0 else -1) * c < 0:
                raise ValueError("coefficient signs do not alternate from the top")

    def abs_coeffs(self):
        """(c_0, ..., c_n) with c_i = |t^i coefficient|."""
        return tuple(abs(self.poly[i]) for i in range(self.arrangement_dim + 1))

    def __str__(self):
        return str(self.poly)


def count_ff_points(arr: Arrangement, q: int) -> int:
    """Points of (Z/q)^n lying on none of the hyperplanes.

    The arrangement must have integer data (run scale_to_integer first).  A
    hyperplane whose normal vanishes mod q but whose offset does not is empty
    mod q and is skipped; if both vanish it would kill every point, which
    signals a bad prime.
    """
    n = arr.n
    normals = []
    offsets = []
    for h in arr.hyperplanes:
        if any(Rat(a).denominator != 1 for a in h.normal) or Rat(h.offset).denominator != 1:
            raise ValueError("arrangement has non-integer data; scale_to_integer first")
        a = [int(v) % q for v in h.normal]
        b = int(h.offset) % q
        if all(v == 0 for v in a):
            if b == 0:
                raise ValueError("bad prime %d: a hyperplane vanishes identically" % q)
            continue  # empty mod q
        normals.append(a)
        offsets.append(b)
    if not normals:
        return q ** n
    coords = np.indices((q,) * n, dtype=np.int64).reshape(n, -1)
    ok = np.ones(coords.shape[1], dtype=bool)
    a_mat = np.array(normals, dtype=np.int64)
    b_vec = np.array(offsets, dtype=np.int64)
    for i in range(a_mat.shape[0]):
        vals = (a_mat[i] @ coords - b_vec[i]) % q
        ok &= vals != 0
    return int(ok.sum())


def _threads() -> int:
    try:
        t = int(os.environ.get("COXCAT_THREADS", "1"))
    except ValueError:
        t = 1
    return max(1, t)


def _prime_bound(arr: Arrangement) -> int:
    mx = 0
    for h in arr.hyperplanes:
        for a in h.normal:
            mx = max(mx, abs(int(a)))
        mx = max(mx, abs(int(h.offset)))
    return 2 * arr.n * (1 + mx)


@lru_cache(maxsize=None)
def char_poly(arr: Arrangement) -> CharPoly:
    """Characteristic polynomial via finite field sampling.

    Samples n+2 good primes above the safety bound, interpolates through the
    first n+1, and checks the last prime exactly; on mismatch retries once
    with the bound doubled.
    """
    scaled = arrmod.scale_to_integer(arr)
    n = arr.n
    bound = _prime_bound(scaled)
    for attempt in range(2):
        primes = primes_above(bound, n + 2)
        counts = _counts_at(scaled, tuple(primes))
        pts = list(zip(primes[: n + 1], counts[: n + 1]))
        poly = interpolate(pts)
        try:
            ip = IntPoly.from_ratpoly(poly)
        except ValueError:
            bound *= 2
            continue
        if ip.evaluate(primes[n + 1]) == counts[n + 1]:
            return CharPoly(poly=ip, arrangement_dim=n)
        bound *= 2
    raise ValueError("poset not stabilized; retry with larger primes")


def _counts_at(scaled: Arrangement, primes):
    workers = _threads()
    if workers == 1 or len(primes) == 1:
        return [count_ff_points(scaled, q) for q in primes]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda q: count_ff_points(scaled, q), primes))


def regions_from_chi(c: CharPoly) -> int:
    """(-1)^n chi(-1): the number of regions (Zaslavsky)."""
    n = c.arrangement_dim
    return (-1) ** n * c.poly.evaluate(-1)


def bounded_from_chi(c: CharPoly, rank: int) -> int:
    """(-1)^rank chi(1): the number of (relatively) bounded regions."""
    return (-1) ** rank * c.poly.evaluate(1)
