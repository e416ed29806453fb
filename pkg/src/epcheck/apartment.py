"""Alcove geometry of the standard apartment: heights, balls, sectors, faces.

Chambers are closed alcoves, identified by the integer floor vector
(floor(gamma(barycenter)))_{gamma in Phi+}; that key is exact, hashable, and
crossing a wall changes exactly one coordinate.  All vertices and barycenters
are exact rational points carried along through reflections.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple

from .roots import AffineRoot, Point, RootSystem, simple_affine_roots

Vertexes = Tuple[Point, ...]


@dataclass(frozen=True)
class Facet:
    """A closed subsimplex, given by its (sorted, affinely independent) vertices."""

    vertices: Vertexes

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def contains(self, other: "Facet") -> bool:
        return set(other.vertices) <= set(self.vertices)

    def barycenter(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(col, Fraction(0)) / n for col in zip(*self.vertices))


def make_facet(vertices) -> Facet:
    return Facet(tuple(sorted(vertices)))


@dataclass(frozen=True)
class Chamber:
    """A closed alcove; `key` is the floor vector over Phi+."""

    vertices: Vertexes
    barycenter: Point
    key: Tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, Chamber) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def facet(self) -> Facet:
        return make_facet(self.vertices)


@dataclass(frozen=True)
class FaceRecord:
    """A codimension-1 face of a chamber with its wall pair and orientation.

    `outward` is the member of {+psi, -psi} that is negative on the chamber,
    so that moving from the face along grad(outward) leaves the chamber.
    """

    facet: Facet
    wall: Tuple[AffineRoot, AffineRoot]
    outward: AffineRoot


@dataclass(frozen=True)
class HeightProfile:
    """Per-root-pair separating hyperplane counts and their total."""

    counts: Tuple[Tuple[Tuple[int, ...], int], ...]  # (positive gradient, count)
    total: int

    def count_for(self, gamma) -> int:
        g = tuple(gamma)
        neg = tuple(-c for c in g)
        for grad, c in self.counts:
            if grad == g or grad == neg:
                return c
        raise KeyError(f"{gamma} is not a root pair of this profile")


class Apartment:
    """All alcove-level operations for one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._pos_systems = None

    # -- construction ------------------------------------------------------

    def _chamber_from_vertices(self, vertices) -> Chamber:
        verts = tuple(sorted(vertices))
        bary = tuple(sum(col, Fraction(0)) / len(verts) for col in zip(*verts))
        key = tuple(math.floor(self.rs.pairing(g, bary)) for g in self.rs.positive)
        return Chamber(verts, bary, key)

    def fundamental_chamber(self) -> Chamber:
        """The alcove cut out by the simple affine roots."""
        rs = self.rs
        origin = tuple(Fraction(0) for _ in range(rs.rank))
        verts = [origin]
        theta = rs.highest
        for i in range(rs.rank):
            # alpha_j = 0 for j != i, theta = 1  =>  m_i * x_i = 1.
            verts.append(tuple(
                Fraction(1, theta[i]) if j == i else Fraction(0) for j in range(rs.rank)
            ))
        ch = self._chamber_from_vertices(verts)
        for psi in simple_affine_roots(rs):
            assert psi(ch.barycenter) > 0, "fundamental barycenter must be interior"
        return ch

    # -- faces and reflections ---------------------------------------------

    def faces_of(self, d: Chamber) -> List[FaceRecord]:
        rs = self.rs
        out = []
        for omit in range(len(d.vertices)):
            fverts = tuple(v for i, v in enumerate(d.vertices) if i != omit)
            psi = self._wall_through(fverts)
            if psi(d.barycenter) > 0:
                psi = -psi
            out.append(FaceRecord(make_facet(fverts), (-psi, psi), psi))
        out.sort(key=lambda fr: fr.facet.vertices)
        return out

    def _wall_through(self, pts) -> AffineRoot:
        rs = self.rs
        for gamma in rs.positive:
            vals = [rs.pairing(gamma, p) for p in pts]
            v0 = vals[0]
            if v0.denominator == 1 and all(v == v0 for v in vals):
                return AffineRoot(gamma, -int(v0))
        raise AssertionError("no affine-root hyperplane through the given facet")

    def reflect_point(self, psi: AffineRoot, x: Point) -> Point:
        t = psi(x)
        if t == 0:
            return x
        cov = self.rs.coroot_vector(psi.gradient)
        return tuple(xi - t * ci for xi, ci in zip(x, cov))

    def reflect_across(self, d: Chamber, face: FaceRecord) -> Chamber:
        if not d.facet().contains(face.facet):
            raise ValueError("facet is not a face of the chamber")
        psi = face.outward
        return self._chamber_from_vertices([self.reflect_point(psi, v) for v in d.vertices])

    def neighbors(self, d: Chamber) -> List[Chamber]:
        return [self.reflect_across(d, f) for f in self.faces_of(d)]

    # -- heights -------------------------------------------------------------

    def separation_count(self, c0: Chamber, d: Chamber, gamma) -> int:
        gamma = tuple(gamma)
        if not self.rs.is_root(gamma):
            raise ValueError(f"{gamma} is not a root")
        a = self.rs.pairing(gamma, c0.barycenter)
        b = self.rs.pairing(gamma, d.barycenter)
        return abs(math.floor(b) - math.floor(a))

    def height(self, c0: Chamber, d: Chamber) -> HeightProfile:
        counts = tuple(
            (g, self.separation_count(c0, d, g)) for g in self.rs.positive
        )
        return HeightProfile(counts, sum(c for _, c in counts))

    def gallery_distance(self, c0: Chamber, d: Chamber, limit: int = 10_000) -> int:
        """BFS depth of d in the face-adjacency graph; independent height oracle."""
        if d == c0:
            return 0
        seen = {c0.key}
        frontier = [c0]
        depth = 0
        while frontier and depth < limit:
            depth += 1
            nxt = []
            for ch in frontier:
                for nb in self.neighbors(ch):
                    if nb.key in seen:
                        continue
                    if nb == d:
                        return depth
                    seen.add(nb.key)
                    nxt.append(nb)
            frontier = nxt
        raise ValueError("gallery distance exceeds search limit")

    def ball_and_shell(self, c0: Chamber, m: int):
        """(Ball(c0,m), Shell(c0,m)) by BFS; the ball is the union of shells."""
        if m < 0:
            raise ValueError("radius must be nonnegative")
        shells = self.shells(c0, m)
        ball = [ch for shell in shells for ch in shell]
        return ball, shells[m]

    def shells(self, c0: Chamber, m: int) -> List[List[Chamber]]:
        """Shells 0..m as lists (BFS order, deterministic)."""
        seen = {c0.key}
        shells = [[c0]]
        for _ in range(m):
            nxt = []
            for ch in shells[-1]:
                for nb in self.neighbors(ch):
                    if nb.key not in seen:
                        seen.add(nb.key)
                        nxt.append(nb)
            shells.append(nxt)
        return shells

    # -- parent/child faces and the minimal new facet ------------------------

    def classify_faces(self, c0: Chamber, d: Chamber):
        """(c(D), p(D)): faces whose reflection raises/lowers the height."""
        ht = self.height(c0, d).total
        children, parents = [], []
        for f in self.faces_of(d):
            nb = self.reflect_across(d, f)
            nb_ht = self.height(c0, nb).total
            if nb_ht == ht + 1:
                children.append(f)
            elif nb_ht == ht - 1:
                parents.append(f)
            else:
                raise AssertionError("adjacent chamber height must differ by 1")
        return children, parents

    def d_plus_and_star(self, c0: Chamber, d: Chamber):
        """(D_plus, F_plus(D)).  For D = C0: (None, all facets of C0)."""
        if d == c0:
            return None, self.all_facets_of(d)
        children, _ = self.classify_faces(c0, d)
        common = set(d.vertices)
        for f in children:
            common &= set(f.facet.vertices)
        d_plus = make_facet(common)
        star = [
            make_facet(set(d.vertices) - set(drop))
            for drop in _subsets([v for v in d.vertices if v not in common])
        ]
        star.sort(key=lambda f: (f.dim, f.vertices))
        assert len(star) == 2 ** len(children)
        return d_plus, star

    def all_facets_of(self, d: Chamber) -> List[Facet]:
        out = [
            make_facet(vs)
            for vs in _subsets(list(d.vertices))
            if vs
        ]
        out.sort(key=lambda f: (f.dim, f.vertices))
        return out

    # -- affine roots vanishing on a facet -----------------------------------

    def facet_affine_roots(self, e: Facet, positive: Optional[frozenset] = None) -> List[AffineRoot]:
        """Psi(E), or Psi(E, Phi+) when a positive system is given."""
        rs = self.rs
        out = []
        for gamma in rs.positive:
            vals = [rs.pairing(gamma, v) for v in e.vertices]
            v0 = vals[0]
            if v0.denominator == 1 and all(v == v0 for v in vals):
                psi = AffineRoot(gamma, -int(v0))
                out.extend([psi, -psi])
        if positive is not None:
            out = [p for p in out if p.gradient in positive]
        out.sort(key=AffineRoot.sort_key)
        return out

    # -- sectors --------------------------------------------------------------

    def positive_systems(self) -> List[FrozenSet[Tuple[int, ...]]]:
        """All |W| positive systems, as frozensets of roots (deterministic order)."""
        if self._pos_systems is not None:
            return self._pos_systems
        rs = self.rs
        std = frozenset(rs.positive)
        seen = {std}
        frontier = [std]
        while frontier:
            nxt = []
            for ps in frontier:
                for j in range(rs.rank):
                    img = frozenset(self._simple_reflect_root(r, j) for r in ps)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        systems = sorted(seen, key=lambda s: sorted(s))
        self._pos_systems = systems
        return systems

    def _simple_reflect_root(self, r, j):
        a = self.rs.cartan
        pairing = sum(r[i] * a[i][j] for i in range(self.rs.rank))
        return tuple(c - pairing * (1 if i == j else 0) for i, c in enumerate(r))

    def simple_roots_of(self, pos_system) -> List[Tuple[int, ...]]:
        """Indecomposable elements of a positive system, in deterministic order."""
        ps = frozenset(pos_system)
        roots = sorted(ps)
        out = []
        for gamma in roots:
            decomposable = any(
                tuple(g - b for g, b in zip(gamma, beta)) in ps
                for beta in roots if beta != gamma
            )
            if not decomposable:
                out.append(gamma)
        assert len(out) == self.rs.rank
        return out

    def expand_in(self, gamma, simple_list) -> List[Fraction]:
        """Coefficients of gamma in the given simple basis (exact solve)."""
        from . import linalg

        cols = [list(s) for s in simple_list]
        a = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(self.rs.rank)]
        return linalg.solve(a, [Fraction(c) for c in gamma])

    def sector_membership(self, c0: Chamber, pos_system, d: Chamber) -> bool:
        """Whether D lies in the sector based at C0 for the given positive system.

        For each gamma in Phi+, the binding constraint is the smallest level n
        with gamma + n >= 0 on C0; membership requires gamma + n >= 0 on D.
        """
        rs = self.rs
        for gamma in pos_system:
            mn0 = min(rs.pairing(gamma, v) for v in c0.vertices)
            n = -math.floor(mn0)  # smallest integer n with mn0 + n >= 0
            mnd = min(rs.pairing(gamma, v) for v in d.vertices)
            if mnd + n < 0:
                return False
        return True

    def sectors_containing(self, c0: Chamber, d: Chamber):
        """R(C0, D): never empty, since the sectors cover the apartment."""
        out = [ps for ps in self.positive_systems() if self.sector_membership(c0, ps, d)]
        assert out, "every chamber lies in some chamber-based sector"
        return out

    def levi_radical_split(self, c0: Chamber, d: Chamber):
        """Partition of the root pairs: (band pairs, separating oriented roots).

        Band pairs (type ii) are returned as positive representatives; the
        separating roots (type i) are oriented toward D.
        """
        rs = self.rs
        band, separating = [], []
        for gamma in rs.positive:
            if self.separation_count(c0, d, gamma) == 0:
                band.append(gamma)
            else:
                toward = gamma if rs.pairing(gamma, d.barycenter) > rs.pairing(gamma, c0.barycenter) \
                    else tuple(-c for c in gamma)
                separating.append(toward)
        return band, separating


def _subsets(items):
    out = [tuple()]
    for it in items:
        out += [s + (it,) for s in out]
    return out
