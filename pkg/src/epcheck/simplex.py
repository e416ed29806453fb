"""Facet counting in a simplex, the F(Y) complement construction, and the
finiteness scan for permissible wall sets.

The counting identities are pure combinatorics, so the census works on abstract
vertex index sets and is testable for ranks beyond the geometric ones.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

from . import linalg
from .apartment import Apartment, Chamber, Facet, make_facet
from .roots import AffineRoot


def union_k_facet_count(l: int, m: int, k: int) -> int:
    """Number of k-facets of an l-simplex lying in a union of m faces (formula)."""
    _check_params(l, m, k)
    return sum(
        (-1) ** (r - 1) * comb(l + 1 - r, k + 1) * comb(m, r) for r in range(1, m + 1)
    )


def union_k_facet_count_oracle(l: int, m: int, k: int) -> int:
    """Same count by direct enumeration of vertex subsets."""
    _check_params(l, m, k)
    vertices = range(l + 1)
    chosen_faces = [frozenset(vertices) - {i} for i in range(m)]
    count = 0
    for sub in combinations(vertices, k + 1):
        s = frozenset(sub)
        if any(s <= f for f in chosen_faces):
            count += 1
    return count


def _check_params(l, m, k):
    if not (1 <= m <= l + 1):
        raise ValueError(f"need 1 <= m <= l+1, got m={m}, l={l}")
    if not (0 <= k <= l):
        raise ValueError(f"need 0 <= k <= l, got k={k}")


@dataclass(frozen=True)
class SimplexCensus:
    """Counts for one (l, m): union counts per k, complement counts per codim."""

    l: int
    m: int
    union_counts: Tuple[int, ...]        # index k = 0..l
    complement_by_codim: Tuple[int, ...]  # index j = 0..l+1-m
    total_complement: int

    def to_json(self):
        return {
            "l": self.l,
            "m": self.m,
            "union_k_facets": list(self.union_counts),
            "complement_by_codim": list(self.complement_by_codim),
            "complement_total": self.total_complement,
        }


def complement_census(l: int, m: int) -> SimplexCensus:
    """Census of the complement; formula cross-checked against enumeration."""
    _check_params(l, m, 0)
    union_counts = tuple(union_k_facet_count(l, m, k) for k in range(l + 1))
    by_codim = tuple(comb(l + 1 - m, j) for j in range(l + 2 - m))
    total = 2 ** (l + 1 - m)

    # enumeration oracle
    vertices = range(l + 1)
    chosen = [frozenset(vertices) - {i} for i in range(m)]
    comp_by_codim = [0] * (l + 2 - m)
    comp_total = 0
    for k in range(l + 1):
        enum_union = union_k_facet_count_oracle(l, m, k)
        if enum_union != union_counts[k]:
            raise AssertionError(f"formula/enumeration mismatch at (l={l}, m={m}, k={k})")
        for sub in combinations(vertices, k + 1):
            s = frozenset(sub)
            if not any(s <= f for f in chosen):
                comp_total += 1
                comp_by_codim[l - k] += 1
    if comp_total != total or tuple(comp_by_codim) != by_codim:
        raise AssertionError(f"complement census mismatch at (l={l}, m={m})")
    return SimplexCensus(l, m, union_counts, by_codim, total)


def complement_facets(d: Chamber, faces: List[Facet]) -> Dict[Tuple[Facet, ...], Facet]:
    """All facets F(Y) = intersection of Y, over subsets Y of the complementary faces.

    `faces` is the selected nonempty face collection; the returned map sends each
    subset Y of the complementary faces (as a sorted tuple) to F(Y), with
    F(()) = D itself.
    """
    if not faces:
        raise ValueError("the selected face collection must be nonempty")
    dverts = set(d.vertices)
    all_faces = [frozenset(dverts - {v}) for v in d.vertices]
    sel = [frozenset(f.vertices) for f in faces]
    for s in sel:
        if s not in all_faces:
            raise ValueError("selected facet is not a face of the chamber")
    complementary = [f for f in all_faces if f not in sel]
    out: Dict[Tuple[Facet, ...], Facet] = {}
    for r in range(len(complementary) + 1):
        for combo in combinations(complementary, r):
            verts = set(dverts)
            for f in combo:
                verts &= f
            key = tuple(sorted((make_facet(c) for c in combo), key=lambda x: x.vertices))
            out[key] = make_facet(verts)
    return out


@dataclass
class PermissibleSet:
    """A linearly independent wall set together with the chambers witnessing it."""

    pairs: List[AffineRoot]  # one representative per pair
    witnesses: List[Chamber] = field(default_factory=list)

    def validate(self):
        grads = [p.gradient for p in self.pairs]
        r = linalg.rank(grads)
        if r != len(grads):
            raise ValueError(
                f"wall gradients are linearly dependent (rank {r} < {len(grads)}): "
                + ", ".join(str(p) for p in self.pairs)
            )


def permissible_scan(ap: Apartment, walls: List[AffineRoot], c0: Chamber, rmax: int):
    """Chambers D incident with the wall set whose child faces are exactly those walls.

    Returns (PermissibleSet, counts_per_radius) where counts_per_radius[m] is
    the number of matching chambers with gallery distance exactly m.
    """
    ps = PermissibleSet(list(walls))
    ps.validate()
    wanted = set()
    for w in walls:
        wanted.add((w.gradient, w.level))
        wanted.add((tuple(-c for c in w.gradient), -w.level))
    counts = [0] * (rmax + 1)
    shells = ap.shells(c0, rmax)
    for depth, shell in enumerate(shells):
        for d in shell:
            frs = ap.faces_of(d)
            have = {(fr.outward.gradient, fr.outward.level) for fr in frs} | {
                ((tuple(-c for c in fr.outward.gradient)), -fr.outward.level) for fr in frs
            }
            if not wanted <= have:
                continue
            if d == c0:
                continue
            children, _ = ap.classify_faces(c0, d)
            child_walls = set()
            for fr in children:
                child_walls.add((fr.outward.gradient, fr.outward.level))
                child_walls.add((tuple(-c for c in fr.outward.gradient), -fr.outward.level))
            if child_walls == wanted:
                counts[depth] += 1
                ps.witnesses.append(d)
    return ps, counts
