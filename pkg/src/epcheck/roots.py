"""Finite and affine root systems in exact rational arithmetic.

Coordinate conventions, fixed once for the whole package:

* A root gamma is stored as the integer vector of its coefficients in the
  simple basis (alpha_1..alpha_l, Bourbaki ordering).  Simple roots are the
  standard basis vectors.
* A point x of the standard apartment is stored as the rational vector of
  values (alpha_1(x), ..., alpha_l(x)), i.e. in the basis of fundamental
  coweights.  Pairing a root with a point is then a plain dot product, and
  the fundamental coweights themselves are the standard basis vectors, so
  <lambda_alpha, beta> = delta_{alpha,beta} holds on the nose.
* Lengths come from the Bourbaki inner products (long roots of A/B/C/D/F
  have squared length 2 except type C where the long roots have squared
  length 4 and short ones 2; G2 short/long are 2/6).  The value group is
  normalized to Z: affine roots are gamma + n with integer n.

The long-root convention this fixes for rank 2: B2 has alpha_1 long,
alpha_2 short; C2 has alpha_1 short, alpha_2 long, with highest root
theta = 2*alpha_1 + alpha_2.  `RootSystem.config()` records it.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

Root = Tuple[int, ...]
Point = Tuple[Fraction, ...]

_ADMITTED = {
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 2), ("C", 3), ("C", 4),
    ("D", 4),
    ("G", 2),
    ("F", 4),
}


@dataclass(frozen=True)
class CartanType:
    """An admitted (family, rank) pair."""

    family: str
    rank: int

    def __post_init__(self):
        if (self.family, self.rank) not in _ADMITTED:
            raise ValueError(
                f"unsupported Cartan type {self.family}{self.rank}; admitted: "
                + ", ".join(sorted(f"{f}{r}" for f, r in _ADMITTED))
            )

    @staticmethod
    def parse(label: str) -> "CartanType":
        label = label.strip()
        return CartanType(label[0].upper(), int(label[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _cartan_and_norms(ct: CartanType):
    """Cartan matrix A[i][j] = <alpha_i, alpha_j^vee> and squared lengths."""
    l = ct.rank
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def chain_bond(i, j):
        a[i][j] = -1
        a[j][i] = -1

    fam = ct.family
    if fam == "A":
        for i in range(l - 1):
            chain_bond(i, i + 1)
        norms = [2] * l
    elif fam == "B":
        for i in range(l - 2):
            chain_bond(i, i + 1)
        a[l - 2][l - 1] = -2
        a[l - 1][l - 2] = -1
        norms = [2] * (l - 1) + [1]
    elif fam == "C":
        for i in range(l - 2):
            chain_bond(i, i + 1)
        a[l - 2][l - 1] = -1
        a[l - 1][l - 2] = -2
        norms = [2] * (l - 1) + [4]
    elif fam == "D":
        chain_bond(0, 1)
        chain_bond(1, 2)
        chain_bond(1, 3)
        norms = [2] * l
    elif fam == "G":
        a[0][1] = -1
        a[1][0] = -3
        norms = [2, 6]
    else:  # F4
        chain_bond(0, 1)
        a[1][2] = -2
        a[2][1] = -1
        chain_bond(2, 3)
        norms = [2, 2, 1, 1]
    return a, norms


@dataclass(frozen=True)
class AffineRoot:
    """The affine functional psi(x) = <gradient, x> + level."""

    gradient: Root
    level: int

    def __call__(self, x) -> Fraction:
        return sum((Fraction(c) * xi for c, xi in zip(self.gradient, x)), Fraction(0)) + self.level

    def __neg__(self):
        return AffineRoot(tuple(-c for c in self.gradient), -self.level)

    def sort_key(self):
        return (self.gradient, self.level)

    def __str__(self):
        return f"{list(self.gradient)}{self.level:+d}"


class RootSystem:
    """Roots, positive roots, simple roots and coweights of an admitted type."""

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = cartan_type.rank
        self.cartan, self.norms = _cartan_and_norms(cartan_type)
        l = self.rank
        # Gram matrix of the simple roots: (alpha_i, alpha_j) = A[j][i]*norm_i/2.
        self.gram = [
            [Fraction(self.cartan[j][i] * self.norms[i], 2) for j in range(l)]
            for i in range(l)
        ]
        self.simple = tuple(tuple(1 if j == i else 0 for j in range(l)) for i in range(l))
        self.roots = self._generate_roots()
        self.positive = tuple(
            sorted((r for r in self.roots if all(c >= 0 for c in r)),
                   key=lambda r: (sum(r), r))
        )
        if frozenset(self.roots) != frozenset(self.positive) | frozenset(
            tuple(-c for c in r) for r in self.positive
        ):
            raise AssertionError("root system is not Phi+ \\sqcup -Phi+")
        self.highest = self._highest_root()
        self.coweights = tuple(
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(l)) for i in range(l)
        )
        self._coroot_cache = {}

    def _generate_roots(self):
        frontier = set(self.simple)
        roots = set(frontier)
        a = self.cartan
        l = self.rank
        while frontier:
            nxt = set()
            for r in frontier:
                for j in range(l):
                    pairing = sum(r[i] * a[i][j] for i in range(l))
                    s = tuple(c - pairing * (1 if i == j else 0) for i, c in enumerate(r))
                    if s not in roots:
                        roots.add(s)
                        nxt.add(s)
            frontier = nxt
        return tuple(sorted(roots))

    def _highest_root(self):
        best = max(self.positive, key=lambda r: (sum(r), r))
        root_set = frozenset(self.roots)
        for s in self.simple:
            cand = tuple(b + si for b, si in zip(best, s))
            assert cand not in root_set, "highest root not maximal"
        return best

    def is_root(self, gamma) -> bool:
        return tuple(gamma) in frozenset(self.roots)

    def norm2(self, gamma) -> Fraction:
        """Squared length (gamma, gamma)."""
        g = self.gram
        return sum(
            Fraction(ci) * Fraction(cj) * g[i][j]
            for i, ci in enumerate(gamma)
            for j, cj in enumerate(gamma)
        )

    def inner(self, beta, gamma) -> Fraction:
        g = self.gram
        return sum(
            Fraction(bi) * Fraction(cj) * g[i][j]
            for i, bi in enumerate(beta)
            for j, cj in enumerate(gamma)
        )

    def coroot_vector(self, gamma) -> Point:
        """The translation vector of gamma^vee in point coordinates.

        Coordinate i is <alpha_i, gamma^vee> = 2(alpha_i,gamma)/(gamma,gamma).
        """
        gamma = tuple(gamma)
        v = self._coroot_cache.get(gamma)
        if v is None:
            n2 = self.norm2(gamma)
            v = tuple(2 * self.inner(s, gamma) / n2 for s in self.simple)
            self._coroot_cache[gamma] = v
        return v

    def pairing(self, gamma, x) -> Fraction:
        return sum((Fraction(c) * xi for c, xi in zip(gamma, x)), Fraction(0))

    def config(self) -> dict:
        """Conventions record, echoed in CLI reports."""
        long_norm = max(self.norms)
        return {
            "type": str(self.cartan_type),
            "simple_root_order": "bourbaki",
            "value_group": "Z",
            "point_frame": "fundamental-coweight coordinates (x_i = alpha_i(x))",
            "long_roots": [i + 1 for i, n in enumerate(self.norms) if n == long_norm],
            "squared_lengths": list(self.norms),
        }

    def to_json(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "roots": [list(r) for r in self.roots],
            "positive": [list(r) for r in self.positive],
            "simple": [list(r) for r in self.simple],
            "highest": list(self.highest),
            "coweights": [[f"{c.numerator}/{c.denominator}" for c in w] for w in self.coweights],
            "config": self.config(),
        }


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct (and cache) the root system of the admitted type."""
    return RootSystem(CartanType(family, rank))


def affine_eval(psi: AffineRoot, x) -> Fraction:
    """Exact value <grad psi, x> + level."""
    return psi(x)


def simple_affine_roots(rs: RootSystem):
    """The l+1 walls of the fundamental alcove: -theta+1 followed by alpha_i."""
    out = [AffineRoot(tuple(-c for c in rs.highest), 1)]
    out.extend(AffineRoot(s, 0) for s in rs.simple)
    return out


def fundamental_coweights(rs: RootSystem):
    """Dual basis of the simple roots, as points."""
    return list(rs.coweights)
