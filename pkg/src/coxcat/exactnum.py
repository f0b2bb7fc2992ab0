"""Exact arithmetic substrate.

Arbitrary-precision rationals, integer and rational polynomials in one
variable t, Lagrange interpolation, prime generation, and truncated power
series in x whose coefficients are polynomials in t.  Series are stored in
exponential form: entry k is the coefficient of x^k/k!.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between threads.  No floating point is used
anywhere.
"""

from __future__ import annotations

from math import comb

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Exact rational from ints or a 'p/q' string."""
    if isinstance(num, str):
        if "/" in num:
            p, q = num.split("/")
            return Rat(int(p), int(q))
        return Rat(int(num))
    return Rat(num, den)


def rat_str(x) -> str:
    """Render a rational as 'p' or 'p/q' (never a decimal)."""
    x = Rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)


class RatPolyInT:
    """Polynomial in t with exact rational coefficients.

    Coefficients are stored by ascending degree with trailing zeros trimmed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([Rat(c)])

    @classmethod
    def t(cls):
        return cls([ZERO, ONE])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPolyInT(
            [self[i] + other[i] for i in range(n)]
        )

    def __sub__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPolyInT([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return RatPolyInT([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, RatPolyInT):
            other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RatPolyInT()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolyInT(out)

    __rmul__ = __mul__
    __radd__ = __add__

    def scale(self, c):
        c = Rat(c)
        return RatPolyInT([a * c for a in self.coeffs])

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if not isinstance(other, RatPolyInT):
            other = _as_poly(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x):
        x = Rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return "RatPolyInT(%s)" % (list(map(rat_str, self.coeffs)),)


def _as_poly(x) -> RatPolyInT:
    if isinstance(x, RatPolyInT):
        return x
    return RatPolyInT([Rat(x)])


class IntPoly:
    """Polynomial in t with integer coefficients (ascending degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ratpoly(cls, p: RatPolyInT) -> "IntPoly":
        for c in p.coeffs:
            if Rat(c).denominator != 1:
                raise ValueError("polynomial has a non-integer coefficient: %s" % rat_str(c))
        return cls([int(c) for c in p.coeffs])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "IntPoly(%s)" % (list(self.coeffs),)

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs) -> str:
    """Human-readable polynomial string, highest degree first: 't^3 - 3t^2 + 2t'."""
    if not coeffs:
        return "0"
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        elif d == 1:
            body = "t" if mag == 1 else "%st" % mag
        else:
            body = "t^%d" % d if mag == 1 else "%st^%d" % (mag, d)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += " %s %s" % (sign, body)
    return out


def interpolate(points) -> RatPolyInT:
    """Lagrange interpolation through exact rational points.

    Returns the unique polynomial of degree < len(points) passing through all
    (x, y) pairs.  Duplicate abscissae are rejected.
    """
    pts = [(Rat(x), Rat(y)) for x, y in points]
    if not pts:
        raise ValueError("degenerate interpolation: no points")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("degenerate interpolation: duplicate abscissa")
    result = RatPolyInT()
    for i, (xi, yi) in enumerate(pts):
        # numerator polynomial prod_{j != i} (t - x_j), exact rational weight
        numer = RatPolyInT([ONE])
        denom = ONE
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            numer = numer * RatPolyInT([-xj, ONE])
            denom = denom * (xi - xj)
        result = result + numer.scale(yi / denom)
    return result


def is_prime(k: int) -> bool:
    """Deterministic trial division; intended for desk-scale inputs."""
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0:
        return False
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def primes_above(bound: int, count: int):
    """The `count` smallest primes strictly greater than `bound`."""
    if bound < 1 or count < 1:
        raise ValueError("need bound >= 2 applicability and count >= 1")
    out = []
    k = max(bound + 1, 2)
    while len(out) < count:
        if is_prime(k):
            out.append(k)
        k += 1
    return out


class PolySeries:
    """Truncated power series sum_k c_k x^k/k! with RatPolyInT coefficients.

    The truncation order N is fixed at construction; all arithmetic truncates
    beyond x^N.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        cs = [_as_poly(c) for c in coeffs]
        if len(cs) != order + 1:
            raise ValueError("need exactly order+1 coefficients")
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def from_counts(cls, counts) -> "PolySeries":
        """Series with constant (integer/rational) coefficients of x^k/k!."""
        return cls(len(counts) - 1, [RatPolyInT([Rat(c)]) for c in counts])

    @classmethod
    def one(cls, order: int) -> "PolySeries":
        return cls(order, [RatPolyInT([ONE])] + [RatPolyInT()] * order)

    def __getitem__(self, k) -> RatPolyInT:
        return self.coeffs[k]

    def __eq__(self, other):
        return (
            isinstance(other, PolySeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        self._check(other)
        return PolySeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return PolySeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self._check(other)
        n = self.order
        out = []
        for k in range(n + 1):
            acc = RatPolyInT()
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i] * comb(k, i)
            out.append(acc)
        return PolySeries(n, out)

    def _check(self, other):
        if not isinstance(other, PolySeries) or other.order != self.order:
            raise ValueError("series orders must match")

    def scale_coeffs(self, p) -> "PolySeries":
        """Multiply every coefficient by the polynomial (or scalar) p."""
        p = _as_poly(p)
        return PolySeries(self.order, [c * p for c in self.coeffs])

    def substitute_neg_x(self) -> "PolySeries":
        """The series S(-x)."""
        return PolySeries(
            self.order,
            [c.scale(-1) if k % 2 else c for k, c in enumerate(self.coeffs)],
        )

    def log(self) -> "PolySeries":
        if self.coeffs[0] != RatPolyInT([ONE]):
            raise ValueError("log undefined: constant term is not 1")
        n = self.order
        a = [RatPolyInT()] * (n + 1)
        for k in range(n):
            acc = self.coeffs[k + 1]
            for i in range(k):
                acc = acc - a[i + 1] * self.coeffs[k - i] * comb(k, i)
            a[k + 1] = acc
        return PolySeries(n, a)

    def exp(self) -> "PolySeries":
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs zero constant term")
        n = self.order
        b = [RatPolyInT()] * (n + 1)
        b[0] = RatPolyInT([ONE])
        for k in range(n):
            acc = RatPolyInT()
            for i in range(k + 1):
                acc = acc + self.coeffs[i + 1] * b[k - i] * comb(k, i)
            b[k + 1] = acc
        return PolySeries(n, b)

    def __repr__(self):
        return "PolySeries(order=%d, %r)" % (self.order, list(self.coeffs))


def series_pow_poly_exponent(h: PolySeries, e) -> PolySeries:
    """h ** e for a polynomial (in t) exponent e, as exp(e * log h).

    h must have constant term 1.
    """
    e = _as_poly(e)
    return h.log().scale_coeffs(e).exp()
