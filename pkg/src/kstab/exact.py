"""Exact rational arithmetic, univariate polynomials, and polynomial-tail fits.

Everything downstream (volumes, measures, invariants) is computed over Q, so
this module fixes the two ground types once and for all:

  Rat     -- `fractions.Fraction`, always in canonical reduced form
  UniPoly -- dense univariate polynomial over Rat

plus Lagrange interpolation and the detector for sequences that are
*eventually* polynomial along an arithmetic progression (the shape in which
all weight and section counts arrive).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

# Canonical rational type of the whole package.  Fraction already guarantees
# gcd-reduced form with positive denominator, exact arithmetic and hashing.
Rat = Fraction

RatLike = int | str | Fraction


def rat(x: RatLike) -> Rat:
    """Coerce ints, Fractions and "p/q" strings to Rat."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def rat_str(x: Rat) -> str:
    """Serialize as "p/q", or plain "p" for integers (the wire format)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class ExactError(ValueError):
    """Raised on violated preconditions of exact-arithmetic operations."""


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial over Rat, coefficients in increasing degree.

    The zero polynomial is the empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    coeffs: tuple[Rat, ...]

    @staticmethod
    def of(coeffs: Iterable[RatLike]) -> "UniPoly":
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def constant(c: RatLike) -> "UniPoly":
        return UniPoly.of([c])

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly.of([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: RatLike) -> Rat:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return UniPoly.of([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly.of(out)

    def scale(self, c: RatLike) -> "UniPoly":
        c = rat(c)
        return UniPoly.of([c * a for a in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly.of([i * c for i, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "UniPoly":
        return UniPoly.of([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, a: RatLike, b: RatLike) -> Rat:
        """Exact definite integral over [a, b]."""
        F = self.antiderivative()
        return F(b) - F(a)

    def compose_affine(self, alpha: RatLike, beta: RatLike) -> "UniPoly":
        """Return p(alpha*x + beta)."""
        alpha, beta = rat(alpha), rat(beta)
        acc = UniPoly.zero()
        lin = UniPoly.of([beta, alpha])
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly.constant(c)
        return acc

    def coefficient(self, k: int) -> Rat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            elif i == 1:
                parts.append(f"{rat_str(c)}*m")
            else:
                parts.append(f"{rat_str(c)}*m^{i}")
        return " + ".join(parts)


def interpolate(points: Sequence[tuple[RatLike, RatLike]]) -> UniPoly:
    """Unique polynomial of degree < #points through the given points.

    Exact Lagrange interpolation; duplicate abscissae are rejected.
    """
    if not points:
        raise ExactError("interpolate: need at least one point")
    xs = [rat(x) for x, _ in points]
    ys = [rat(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ExactError("interpolate: duplicate abscissae")
    # Newton's divided differences; exact and O(k^2).
    n = len(xs)
    table = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly.zero()
    basis = UniPoly.constant(1)
    for i in range(n):
        poly = poly + basis.scale(table[i])
        basis = basis * UniPoly.of([-xs[i], 1])
    return poly


@dataclass(frozen=True)
class EventualFit:
    """Result of an eventual-polynomial fit along a progression."""

    poly: UniPoly
    stabilization_index: int  # first sample index where agreement starts


def fit_eventual_polynomial(
    samples: Mapping[int, RatLike],
    degree_bound: int,
    period: int = 1,
) -> EventualFit:
    """Fit a polynomial tail to ``samples`` along the progression m in period*Z.

    A candidate of degree <= degree_bound is interpolated through the last
    degree_bound + 1 samples and accepted only if it also matches the
    preceding sample (so the final degree_bound + 2 samples agree exactly).
    Given acceptance, the stabilization index is the smallest sample index
    from which on every sample agrees with the fit.
    """
    if period < 1:
        raise ExactError("fit_eventual_polynomial: period must be >= 1")
    idx = sorted(m for m in samples if m % period == 0 and m != 0)
    need = degree_bound + 3
    if len(idx) < need:
        raise ExactError(
            f"fit_eventual_polynomial: need at least {need} samples on the "
            f"progression, got {len(idx)}"
        )
    for i in range(1, len(idx)):
        if idx[i] - idx[i - 1] != period:
            raise ExactError("fit_eventual_polynomial: samples not consecutive on the progression")
    vals = {m: rat(samples[m]) for m in idx}
    tail = idx[-(degree_bound + 1):]
    poly = interpolate([(m, vals[m]) for m in tail])
    check = idx[-(degree_bound + 2):]
    if any(poly(m) != vals[m] for m in check):
        raise ExactError(
            "fit_eventual_polynomial: not eventually polynomial on this "
            "progression (degree bound too small or quasi-polynomial input)"
        )
    stab = idx[-1]
    for m in reversed(idx):
        if poly(m) != vals[m]:
            break
        stab = m
    return EventualFit(poly=poly, stabilization_index=stab)


# ---------------------------------------------------------------------------
# Sign analysis of polynomials on intervals (Sturm chains).  Used by the
# measure module to certify concavity statements exactly.
# ---------------------------------------------------------------------------


def _poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    quo = [Fraction(0)] * max(0, len(rem) - len(b.coeffs) + 1)
    bl = b.coeffs[-1]
    while len(rem) >= len(b.coeffs) and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b.coeffs):
            break
        shift = len(rem) - len(b.coeffs)
        factor = rem[-1] / bl
        quo[shift] = factor
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= factor * c
        rem.pop()
    return UniPoly.of(quo), UniPoly.of(rem)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        _, r = _poly_divmod(chain[-2], chain[-1])
        chain.append(-r)
    chain.pop()
    return chain


def _sign_changes(chain: Sequence[UniPoly], x: Rat) -> int:
    signs = []
    for p in chain:
        v = p(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, a: RatLike, b: RatLike) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    if p.is_zero():
        raise ExactError("count_roots: zero polynomial")
    a, b = rat(a), rat(b)
    if a >= b:
        return 0
    chain = sturm_chain(p)
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def poly_nonneg_on(p: UniPoly, a: RatLike, b: RatLike) -> bool:
    """Exact test for p >= 0 everywhere on the closed interval [a, b]."""
    a, b = rat(a), rat(b)
    if a > b:
        raise ExactError("poly_nonneg_on: empty interval")
    if p.is_zero():
        return True
    if p(a) < 0 or p(b) < 0:
        return False
    # Between consecutive roots the sign is constant, so it suffices to look
    # at one rational point per root gap.  Isolate roots by bisection with
    # Sturm counts.
    roots = _isolate_roots(p, a, b)
    pts = [a] + [x for iv in roots for x in iv] + [b]
    pts = sorted(set(pts))
    for u, v in zip(pts, pts[1:]):
        mid = (u + v) / 2
        if p(mid) < 0:
            return False
    return True


def _isolate_roots(p: UniPoly, a: Rat, b: Rat) -> list[tuple[Rat, Rat]]:
    """Disjoint rational intervals (u, v] each containing one root of p."""
    total = count_roots(p, a, b)
    if total == 0:
        return []
    out: list[tuple[Rat, Rat]] = []
    stack = [(a, b, total)]
    while stack:
        u, v, k = stack.pop()
        if k == 1:
            out.append((u, v))
            continue
        mid = (u + v) / 2
        kl = count_roots(p, u, mid)
        kr = k - kl
        if kl:
            stack.append((u, mid, kl))
        if kr:
            stack.append((mid, v, kr))
    return out


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        v = abs(int(v))
        if v == 0:
            continue
        g = _gcd(out, v)
        out = out // g * v
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
