"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Elements are coefficient vectors over Q in the power basis 1, z, ..., z^{d-1}
(d = phi(e)), reduced modulo the e-th cyclotomic polynomial.  Values that are
rational collapse to conductor 1, so the common case (integer character
values) stays cheap; mixed conductors are lifted to the lcm on demand.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int):
    """Integer coefficients of Phi_e, low degree first."""
    if e == 1:
        return (-1, 1)
    # x^e - 1 divided by the product of Phi_d over proper divisors d of e
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _poly_div_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


def _poly_div_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    while len(num) >= len(den):
        if num[-1] == 0:
            num.pop()
            continue
        q, r = divmod(num[-1], den[-1])
        assert r == 0
        shift = len(num) - len(den)
        out[shift] = q
        for i, c in enumerate(den):
            num[shift + i] -= q * c
        assert num[-1] == 0
        num.pop()
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _zd_row(e: int):
    """Integer vector of z^d mod Phi_e in the power basis (Phi_e is monic)."""
    phi = cyclotomic_polynomial(e)
    return tuple(-c for c in phi[:-1])


def _phi_degree(e: int) -> int:
    return len(cyclotomic_polynomial(e)) - 1


class Cyclotomic:
    """An element of Q(zeta_e), normalized to the smallest useful conductor."""

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs):
        d = _phi_degree(e)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) < d:
            cs += [Fraction(0)] * (d - len(cs))
        assert len(cs) == d, f"expected {d} coefficients for conductor {e}"
        if e != 1 and all(c == 0 for c in cs[1:]):
            e, cs = 1, cs[:1]
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(x) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(x),))

    @staticmethod
    def zeta_power(e: int, k: int) -> "Cyclotomic":
        """zeta_e^k, reduced."""
        k %= e
        raw = [Fraction(0)] * (k + 1)
        raw[k] = Fraction(1)
        return Cyclotomic(e, _reduce(e, raw))

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.e == 1

    def rational_value(self) -> Fraction:
        if self.e != 1:
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0]

    def lift(self, e2: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_{e2}); requires e | e2."""
        if e2 == self.e:
            return self
        assert e2 % self.e == 0
        step = e2 // self.e
        acc = [Fraction(0)] * (max((len(self.coeffs) - 1) * step, 0) + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                acc[i * step] += c
        return Cyclotomic(e2, _reduce(e2, acc))

    # -- arithmetic --------------------------------------------------------------

    def _coeffs_at(self, e2: int):
        """Coefficient vector of this number written in Q(zeta_{e2})."""
        if self.e == e2:
            return list(self.coeffs)
        step = e2 // self.e
        acc = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                acc[i * step] += c
        return _reduce(e2, acc)

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        e = self.e * other.e // gcd(self.e, other.e)
        return e, self._coeffs_at(e), other._coeffs_at(e)

    def __add__(self, other):
        e, a, b = self._pair(other)
        return Cyclotomic(e, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-c for c in self.coeffs])

    def __sub__(self, other):
        e, a, b = self._pair(other)
        return Cyclotomic(e, [x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.e, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.e == 1:
            return Cyclotomic(other.e, [self.coeffs[0] * c for c in other.coeffs])
        if other.e == 1:
            return Cyclotomic(self.e, [other.coeffs[0] * c for c in self.coeffs])
        e, a, b = self._pair(other)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(e, _reduce(e, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.e, [c / f for c in self.coeffs])
        raise TypeError("division only by rationals")

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: zeta -> zeta^{-1}."""
        if self.e == 1:
            return self
        acc = [Fraction(0)] * self.e
        for i, c in enumerate(self.coeffs):
            if c:
                acc[(-i) % self.e] += c
        return Cyclotomic(self.e, _reduce(self.e, acc))

    def galois(self, k: int) -> "Cyclotomic":
        """The automorphism zeta -> zeta^k (k coprime to the conductor)."""
        if self.e == 1:
            return self
        assert gcd(k, self.e) == 1
        acc = [Fraction(0)] * self.e
        for i, c in enumerate(self.coeffs):
            if c:
                acc[(i * k) % self.e] += c
        return Cyclotomic(self.e, _reduce(self.e, acc))

    # -- comparisons ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.e == 1 and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        _, a, b = self._pair(other)
        return a == b

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def sort_key(self):
        return (self.e, tuple((c.numerator, c.denominator) for c in self.coeffs))

    def __repr__(self):
        if self.e == 1:
            return str(self.coeffs[0])
        terms = [f"{c}*z{self.e}^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {
            "conductor": self.e,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }


def _reduce(e: int, raw):
    """Reduce a raw power-basis vector (any length) mod Phi_e.

    Top-down: c*z^i with i >= d rewrites as c*z^{i-d} * (z^d mod Phi_e),
    which only produces powers below i.
    """
    d = _phi_degree(e)
    acc = [Fraction(c) for c in raw]
    if len(acc) < d:
        acc += [Fraction(0)] * (d - len(acc))
    if len(acc) > d:
        zd = _zd_row(e)
        for i in range(len(acc) - 1, d - 1, -1):
            c = acc[i]
            if c:
                acc[i] = Fraction(0)
                base = i - d
                for j, r in enumerate(zd):
                    if r:
                        acc[base + j] += c * r
        acc = acc[:d]
    return acc
