"""Ties the apartment to finite residues: residue data at facets, vanishing
certificates for tall chambers, the depth-r coordinate model, truncated
alternating-sum traces, and residue-level regular-representation partitions.

Residue groups are instantiated in simply connected form (SL2, SL3, Sp4) for
rank-1, A2 and B2/C2 residue types; every identity checked is a BN-pair
statement insensitive to the isogeny type.  Unsupported residue types are
reported as skipped, never silently passed.

Convention: the certificate search, the residue radicals and the shell
convolutions all read their affine roots from the minimal new facet of the
chamber (Psi(D_plus, Phi+)), never from any other facet of it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from .apartment import Apartment, Chamber, Facet, make_facet
from .algebra import (
    AlgebraElement,
    character_table,
    convolve,
    cuspidal_classes,
    parabolic_block_idempotent,
    radical_idempotent,
    verify_partition_of_unity,
)
from .groups import FiniteGroup, build_group, standard_parabolic, unipotent_radical_set
from .roots import AffineRoot


# ---------------------------------------------------------------------------
# residue data at a facet
# ---------------------------------------------------------------------------

@dataclass
class ResidueDatum:
    """The finite root system at a facet E, relative to an incident chamber D.

    `simple_walls` are the walls of D through E, oriented positive on D; they
    are the simple roots of the residue's positive system.  `parabolic_subset`
    sends a facet K with E <= K <= D to the set of simple-wall indices
    vanishing on K (the Levi subset of the residue parabolic attached to K).
    """

    facet: Facet
    chamber: Chamber
    simple_walls: List[AffineRoot]
    pos_roots: List[AffineRoot]
    type_label: str
    norms: List[Fraction]  # squared lengths of the simple wall gradients

    def rank(self) -> int:
        return len(self.simple_walls)

    def parabolic_subset(self, k: Facet) -> FrozenSet[int]:
        out = set()
        for i, w in enumerate(self.simple_walls):
            if all(w(v) == 0 for v in k.vertices):
                out.add(i)
        return frozenset(out)

    def supported(self) -> bool:
        return self.type_label in ("A1", "A2", "C2")


def residue_datum(ap: Apartment, e: Facet, d: Chamber) -> ResidueDatum:
    if not d.facet().contains(e):
        raise ValueError("facet is not contained in the chamber")
    rs = ap.rs
    all_psis = ap.facet_affine_roots(e)
    pos = [p for p in all_psis if p(d.barycenter) > 0]
    walls = []
    for fr in ap.faces_of(d):
        if fr.facet.contains(e):
            walls.append(-fr.outward)  # positive on D
    walls.sort(key=AffineRoot.sort_key)
    # sanity: every positive residue root is a nonnegative combination of walls
    if walls:
        for p in pos:
            coeffs = _nonneg_expansion(p, walls)
            assert coeffs is not None, "residue positive root outside the wall cone"
    norms = [rs.norm2(w.gradient) for w in walls]
    label = _classify(len(walls), len(pos), norms)
    return ResidueDatum(e, d, walls, pos, label, norms)


def _nonneg_expansion(psi, walls):
    """Expansion of an affine root in the wall basis; None if not >= 0."""
    cols = [list(w.gradient) + [w.level] for w in walls]
    target = list(psi.gradient) + [psi.level]
    m = len(target)
    k = len(cols)
    a = [[Fraction(cols[j][i]) for j in range(k)] for i in range(m)]
    sol = _lstsq_exact(a, [Fraction(t) for t in target])
    if sol is None or any(c < 0 for c in sol):
        return None
    return sol


def _lstsq_exact(a, b):
    """Solve an overdetermined consistent system exactly, else None."""
    nr, nc = len(a), len(a[0])
    rows = [row[:] + [b[i]] for i, row in enumerate(a)]
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nr):
        if rows[i][nc] != 0:
            return None
    sol = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        sol[c] = rows[i][nc]
    return sol


def _classify(rank, n_pos, norms):
    if rank == 0:
        return "point"
    if rank == 1:
        return "A1"
    if rank == 2:
        if n_pos == 2:
            return "A1xA1"
        if n_pos == 3:
            return "A2"
        if n_pos == 4:
            return "C2"
        if n_pos == 6:
            return "G2"
    return f"other-r{rank}-n{n_pos}"


# ---------------------------------------------------------------------------
# residue instantiation
# ---------------------------------------------------------------------------

@dataclass
class ResidueModel:
    """A finite group model of the residue, with the wall-to-simple matching."""

    datum: ResidueDatum
    group: FiniteGroup
    wall_to_simple: Dict[int, int]

    def model_subset(self, wall_subset) -> FrozenSet[int]:
        return frozenset(self.wall_to_simple[i] for i in wall_subset)


def instantiate_residue(rd: ResidueDatum, q: int) -> ResidueModel:
    if not rd.supported():
        raise ValueError(f"residue type {rd.type_label} is not instantiated; "
                         "supported types: A1, A2, C2")
    if rd.type_label == "A1":
        g = build_group("SL2", q)
        mapping = {0: g.simples[0]}
    elif rd.type_label == "A2":
        g = build_group("SL3", q)
        mapping = {0: g.simples[0], 1: g.simples[1]}
    else:  # C2: match walls to model simples by length (a1 short, a2 long)
        g = build_group("SP4", q)
        short_first = sorted(range(2), key=lambda i: rd.norms[i])
        mapping = {short_first[0]: 0, short_first[1]: 1}
        assert rd.norms[short_first[0]] < rd.norms[short_first[1]]
    return ResidueModel(rd, g, mapping)


def principal_class_index(group: FiniteGroup) -> int:
    """The class of (torus, trivial character)."""
    classes = cuspidal_classes(group)
    from .algebra import _levi

    for i, cls in enumerate(classes):
        for a, chi in cls.members:
            if a == frozenset():
                lg = _levi(group, a)
                t = character_table(lg)
                if all(v == 1 for v in t.values[chi]):
                    return i
    raise AssertionError("no principal class found")


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class VanishingCertificate:
    """Outcome of the tall-chamber search: a witness or the exceptional marker."""

    chamber_key: Tuple[int, ...]
    pos_system: FrozenSet[Tuple[int, ...]]
    tall_simples: FrozenSet[Tuple[int, ...]]        # I
    witness: Optional[AffineRoot]                   # psi with a tall coefficient
    witness_coefficient_root: Optional[Tuple[int, ...]]  # the alpha in I

    @property
    def exceptional(self) -> bool:
        return self.witness is None

    def to_json(self):
        return {
            "chamber": list(self.chamber_key),
            "tall_simples": sorted(map(list, self.tall_simples)),
            "witness": str(self.witness) if self.witness else None,
            "exceptional": self.exceptional,
        }


def canonical_sector(ap: Apartment, c0: Chamber, d: Chamber):
    """First positive system (in the fixed enumeration) whose sector holds D."""
    for ps in ap.positive_systems():
        if ap.sector_membership(c0, ps, d):
            return ps
    raise AssertionError("sectors cover the apartment")


def dplus_certificate(ap: Apartment, c0: Chamber, d: Chamber, rho: int,
                      pos_system=None) -> VanishingCertificate:
    """Search Psi(D_plus, Phi+) for a root with a positive coefficient at a
    tall simple root (per-pair height >= rho+2)."""
    if d == c0:
        raise ValueError("the base chamber carries no certificate")
    if pos_system is None:
        pos_system = canonical_sector(ap, c0, d)
    simples = ap.simple_roots_of(pos_system)
    tall = frozenset(
        a for a in simples if ap.separation_count(c0, d, a) >= rho + 2
    )
    if not tall:
        return VanishingCertificate(d.key, pos_system, tall, None, None)
    d_plus, _ = ap.d_plus_and_star(c0, d)
    psis = ap.facet_affine_roots(d_plus, positive=frozenset(pos_system))
    for psi in psis:
        coeffs = ap.expand_in(psi.gradient, simples)
        for a, c in zip(simples, coeffs):
            if a in tall and c > 0:
                return VanishingCertificate(d.key, pos_system, tall, psi, a)
    return VanishingCertificate(d.key, pos_system, tall, None, None)


@dataclass
class ExceptionalCensus:
    """Certified/exceptional counts per shell for one positive system."""

    pos_system: FrozenSet[Tuple[int, ...]]
    rho: int
    rmax: int
    certified_per_shell: List[int]
    exceptional_per_shell: List[int]
    exceptional_keys: List[Tuple[int, ...]]

    def totals(self):
        return sum(self.certified_per_shell), sum(self.exceptional_per_shell)

    def to_json(self):
        return {
            "rho": self.rho,
            "rmax": self.rmax,
            "certified_per_shell": self.certified_per_shell,
            "exceptional_per_shell": self.exceptional_per_shell,
            "exceptional_total": sum(self.exceptional_per_shell),
            "exceptional_chambers": [list(k) for k in sorted(self.exceptional_keys)],
        }


def exceptional_enumeration(ap: Apartment, c0: Chamber, pos_system, rho: int,
                            rmax: int) -> ExceptionalCensus:
    """Census of certified vs exceptional chambers in one sector."""
    shells = ap.shells(c0, rmax)
    cert = [0] * (rmax + 1)
    exc = [0] * (rmax + 1)
    keys = []
    for depth, shell in enumerate(shells):
        for d in shell:
            if d == c0 or not ap.sector_membership(c0, pos_system, d):
                continue
            c = dplus_certificate(ap, c0, d, rho, pos_system)
            if c.exceptional:
                exc[depth] += 1
                keys.append(d.key)
            else:
                cert[depth] += 1
    return ExceptionalCensus(frozenset(pos_system), rho, rmax, cert, exc, keys)


@dataclass
class DplusScan:
    """Full-ball certificate scan with the canonical sector choice per chamber."""

    rho: int
    rmax: int
    certified_per_shell: List[int]
    exceptional_per_shell: List[int]
    exceptional_keys: FrozenSet[Tuple[int, ...]]
    verified_zero: int
    verified_signatures: int
    skipped_unsupported: int
    failures: List[dict]

    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "rho": self.rho,
            "rmax": self.rmax,
            "certified_per_shell": self.certified_per_shell,
            "exceptional_per_shell": self.exceptional_per_shell,
            "exceptional_total": sum(self.exceptional_per_shell),
            "exceptional_chambers": sorted(map(list, self.exceptional_keys)),
            "verified_zero_chambers": self.verified_zero,
            "distinct_convolution_signatures": self.verified_signatures,
            "skipped_unsupported_residues": self.skipped_unsupported,
            "failures": self.failures,
        }


def dplus_scan(ap: Apartment, c0: Chamber, rho: int, rmax: int, q: int,
               cls_index: Optional[int] = None, verify: bool = True) -> DplusScan:
    """Classify every chamber of the ball as certified or exceptional and
    verify the residue convolution for each distinct certified signature."""
    shells = ap.shells(c0, rmax)
    cert = [0] * (rmax + 1)
    exc = [0] * (rmax + 1)
    keys = set()
    failures = []
    verified = 0
    skipped = 0
    signatures = set()
    for depth in range(1, rmax + 1):
        for d in shells[depth]:
            c = dplus_certificate(ap, c0, d, rho)
            if c.exceptional:
                exc[depth] += 1
                keys.add(d.key)
                continue
            cert[depth] += 1
            if not verify:
                continue
            rep = depth_zero_shell_vanishing(ap, c0, d, q, cls_index, rho)
            if rep.skipped:
                if rep.skipped.startswith("residue type"):
                    skipped += 1
                else:
                    failures.append(rep.to_json())
            elif rep.exact_zero:
                verified += 1
                signatures.add((rep.residue_type, rep.radical_subset, rep.class_label))
            else:
                failures.append(rep.to_json())
    return DplusScan(rho, rmax, cert, exc, frozenset(keys), verified,
                     len(signatures), skipped, failures)


# ---------------------------------------------------------------------------
# residue-level convolution vanishing (depth zero)
# ---------------------------------------------------------------------------

@dataclass
class ShellVanishingReport:
    chamber_key: Tuple[int, ...]
    residue_type: str
    skipped: Optional[str] = None
    exact_zero: Optional[bool] = None
    class_label: Optional[str] = None
    radical_subset: Optional[Tuple[int, ...]] = None

    def to_json(self):
        out = {"chamber": list(self.chamber_key), "residue_type": self.residue_type}
        if self.skipped:
            out["skipped"] = self.skipped
        else:
            out["exact-zero"] = self.exact_zero
            out["class"] = self.class_label
            out["radical_levi_subset"] = sorted(self.radical_subset)
        return out


_shell_conv_cache: Dict[tuple, bool] = {}


def _star_block_convolution(model: ResidueModel, star_subsets, a_q: FrozenSet[int],
                            cls_index: int) -> bool:
    """Exact-zero test of sum_K (+-1)^{|A(K)|} e_{L,P(A(K))} * e_{rad P(A_Q)}.

    The global sign (-1)^{dim D_plus} is dropped; it cannot affect vanishing.
    The value depends only on (model group, A_Q, class), so it is cached.
    """
    g = model.group
    key = (id(g), a_q, cls_index, frozenset(star_subsets))
    got = _shell_conv_cache.get(key)
    if got is not None:
        return got
    total = AlgebraElement.zero(g)
    for subset in star_subsets:
        term = parabolic_block_idempotent(g, subset, cls_index)
        total = total + (term if len(subset) % 2 == 0 else -term)
    ev = radical_idempotent(g, a_q)
    result = convolve(total, ev).is_zero()
    _shell_conv_cache[key] = result
    return result


def depth_zero_shell_vanishing(ap: Apartment, c0: Chamber, d: Chamber, q: int,
                               cls_index: Optional[int] = None,
                               rho: int = 1,
                               pos_system=None) -> ShellVanishingReport:
    """Map F_plus(D) to residue parabolics and check the alternating block sum
    times the certificate radical is exactly zero."""
    if d == c0:
        raise ValueError("the base chamber is handled separately")
    cert = dplus_certificate(ap, c0, d, rho, pos_system)
    d_plus, star = ap.d_plus_and_star(c0, d)
    rd = residue_datum(ap, d_plus, d)
    if not rd.supported():
        return ShellVanishingReport(d.key, rd.type_label,
                                    skipped=f"residue type {rd.type_label}")
    if cert.exceptional:
        return ShellVanishingReport(d.key, rd.type_label,
                                    skipped="no certificate witness")
    model = instantiate_residue(rd, q)
    simples = ap.simple_roots_of(cert.pos_system)
    tall = cert.tall_simples

    def tall_coefficient(gradient):
        coeffs = ap.expand_in(gradient, simples)
        return sum((c for a, c in zip(simples, coeffs) if a in tall), Fraction(0))

    # every vanishing root at the minimal facet whose gradient has a tall
    # coefficient lies on the far side of the chamber; this is what makes the
    # subgroup below the radical of a standard parabolic (band directions may
    # face either way, but they land in the Levi and cannot cancel)
    for psi in ap.facet_affine_roots(d_plus, positive=frozenset(cert.pos_system)):
        if tall_coefficient(psi.gradient) > 0:
            assert psi(d.barycenter) < 0, "tall-direction orientation violated"
    a_q_walls = set()
    for i, w in enumerate(rd.simple_walls):
        if tall_coefficient(w.gradient) == 0:
            a_q_walls.add(i)
    a_q = model.model_subset(a_q_walls)
    assert a_q != frozenset(model.group.simples), \
        "certificate witness guarantees a nonempty radical"
    star_subsets = [model.model_subset(rd.parabolic_subset(k)) for k in star]
    if cls_index is None:
        cls_index = principal_class_index(model.group)
    zero = _star_block_convolution(model, tuple(star_subsets), a_q, cls_index)
    label = cuspidal_classes(model.group)[cls_index].label()
    return ShellVanishingReport(d.key, rd.type_label, exact_zero=zero,
                                class_label=label,
                                radical_subset=tuple(sorted(a_q)))


# ---------------------------------------------------------------------------
# depth-r coordinate model
# ---------------------------------------------------------------------------

def _coordinate_set(ap: Apartment, psis, k: Facet) -> FrozenSet:
    """S_K: coordinates (signed affine roots) positive on recess(K)."""
    b = k.barycenter()
    return frozenset((p.gradient, p.level) for p in psis if p(b) > 0)


def depth_r_shell_vanishing(ap: Apartment, c0: Chamber, d: Chamber,
                            r: int, v: Facet) -> dict:
    """In the graded coordinate model at E = D_plus: the alternating sum over
    F_plus(D) convolved with e_{S_V} is exactly zero for V != E.

    Convolution of coordinate-subgroup idempotents is union of coordinate
    sets; the integer r only relabels the grading and must be >= 1.
    """
    if not (isinstance(r, int) and r >= 1):
        raise ValueError("the depth parameter must be a positive integer")
    if d == c0:
        raise ValueError("the base chamber has no minimal new facet")
    d_plus, star = ap.d_plus_and_star(c0, d)
    if v == d_plus:
        raise ValueError("the probe facet must differ from the minimal facet")
    if v not in star:
        raise ValueError("the probe facet must contain the minimal facet")
    psis = ap.facet_affine_roots(d_plus)
    sets = {k: _coordinate_set(ap, psis, k) for k in star}
    # inclusion lattice: K <= K' gives S_K <= S_K', and absorption holds
    for k1 in star:
        for k2 in star:
            if k2.contains(k1):
                assert sets[k1] <= sets[k2]
                assert sets[k1] | sets[k2] == sets[k2]
    sv = sets[v]
    acc: Dict[FrozenSet, Fraction] = {}
    for k in star:
        key = sets[k] | sv
        sign = Fraction(-1) ** k.dim
        acc[key] = acc.get(key, Fraction(0)) + sign
    acc = {k: c for k, c in acc.items() if c != 0}
    return {
        "chamber": list(d.key),
        "r": r,
        "coordinates": len(psis),
        "terms": len(star),
        "exact-zero": not acc,
    }


# ---------------------------------------------------------------------------
# truncated alternating-sum traces
# ---------------------------------------------------------------------------

def _ball_universe(ap: Apartment, shells) -> List[AffineRoot]:
    """Signed affine roots whose hyperplane meets the ball hull."""
    import math

    verts = [v for shell in shells for ch in shell for v in ch.vertices]
    out = []
    for gamma in ap.rs.positive:
        vals = [ap.rs.pairing(gamma, v) for v in verts]
        lo, hi = min(vals), max(vals)
        for n in range(-math.floor(hi), -math.ceil(lo) + 1):
            psi = AffineRoot(gamma, n)
            out.append(psi)
            out.append(-psi)
    out.sort(key=AffineRoot.sort_key)
    return out


def _gate_facets(ap: Apartment, c0: Chamber, shells):
    """Facets of the ball, grouped by the shell of their gate chamber.

    Every new facet of Ball(m) lies in F_plus(D) for exactly one Shell(m)
    chamber (the height-minimizing chamber of its star); asserted, not assumed.
    """
    seen = set()
    out = []
    for depth, shell in enumerate(shells):
        new_facets = []
        for d in shell:
            _, star = ap.d_plus_and_star(c0, d)
            for f in star:
                assert f.vertices not in seen, "gate decomposition overlapped"
                seen.add(f.vertices)
            new_facets.append((d, star))
        out.append(new_facets)
    return out


@dataclass
class StabilizationTrace:
    mode: str
    mmax: int
    increments_zero: List[bool]
    stabilization_radius: int
    detail: dict = field(default_factory=dict)

    def stabilized(self) -> bool:
        return all(self.increments_zero[self.stabilization_radius + 1:])

    def to_json(self):
        return {
            "mode": self.mode,
            "mmax": self.mmax,
            "increment_zero_per_radius": self.increments_zero,
            "stabilization_radius": self.stabilization_radius,
            "stabilized": self.stabilized(),
            **self.detail,
        }


def truncated_sum_stabilization(ap: Apartment, c0: Chamber, mode: str, mmax: int,
                                rho: int = 1, r: int = 1, q: int = 2,
                                probe: Optional[Facet] = None,
                                cls_index: Optional[int] = None) -> StabilizationTrace:
    if mode == "depth-r":
        return _stabilize_depth_r(ap, c0, mmax, rho, r)
    if mode == "depth-zero":
        return _stabilize_depth_zero(ap, c0, mmax, q, probe, cls_index, rho)
    raise ValueError(f"unknown stabilization mode {mode!r}")


def _stabilize_depth_r(ap: Apartment, c0: Chamber, mmax: int, rho: int, r: int):
    """Partial sums of the alternating facet sum convolved with the depth
    probe, in the union-of-coordinates model over the whole ball."""
    shells = ap.shells(c0, mmax)
    universe = _ball_universe(ap, shells)
    origin = tuple(Fraction(0) for _ in range(ap.rs.rank))
    probe_set = frozenset(
        (p.gradient, p.level) for p in universe if p(origin) >= rho - r
    )
    total: Dict[FrozenSet, Fraction] = {}
    increments_zero = []
    per_shell = _gate_facets(ap, c0, shells)
    for depth, batch in enumerate(per_shell):
        delta: Dict[FrozenSet, Fraction] = {}
        for _, star in batch:
            for f in star:
                b = f.barycenter()
                sk = frozenset(
                    (p.gradient, p.level) for p in universe if p(b) > 0
                )
                key = sk | probe_set
                sign = Fraction(-1) ** f.dim
                delta[key] = delta.get(key, Fraction(0)) + sign
        delta = {k: c for k, c in delta.items() if c != 0}
        increments_zero.append(not delta)
        for k, c in delta.items():
            nc = total.get(k, Fraction(0)) + c
            if nc:
                total[k] = nc
            else:
                total.pop(k, None)
    radius = max((i for i, z in enumerate(increments_zero) if not z), default=0)
    return StabilizationTrace(
        "depth-r", mmax, increments_zero, radius,
        {"rho": rho, "r": r, "coordinates": len(universe),
         "stable_term_count": len(total)},
    )


def _stabilize_depth_zero(ap: Apartment, c0: Chamber, mmax: int, q: int,
                          probe: Optional[Facet], cls_index: Optional[int],
                          rho: int):
    """Per-shell residue increments against the pro-unipotent probe at a facet
    of the base chamber.

    The base term is the probe facet's own block idempotent (the single-facet
    value); each later chamber contributes its F_plus sum convolved with the
    image of the probe group in the residue at D_plus, which is the radical of
    the parabolic whose Levi walls contain the probe facet.  Chambers whose
    every child wall contains the probe facet cannot vanish this way and are
    reported (they are finitely many, by the permissible-set finiteness).
    """
    if probe is None:
        probe = make_facet([tuple(Fraction(0) for _ in range(ap.rs.rank))])
    if not c0.facet().contains(probe):
        raise ValueError("the probe facet must be a facet of the base chamber")
    base_rd = residue_datum(ap, probe, c0)
    if not base_rd.supported():
        raise ValueError(f"probe residue type {base_rd.type_label} unsupported")
    base_model = instantiate_residue(base_rd, q)
    if cls_index is None:
        cls_index = principal_class_index(base_model.group)
    base_label = cuspidal_classes(base_model.group)[cls_index].label()

    shells = ap.shells(c0, mmax)
    increments_zero = [True]  # radius 0: the base value itself
    exceptional = []
    skipped = 0
    for depth in range(1, mmax + 1):
        all_zero = True
        for d in shells[depth]:
            d_plus, star = ap.d_plus_and_star(c0, d)
            rd = residue_datum(ap, d_plus, d)
            if not rd.supported():
                skipped += 1
                continue
            a_f_walls = frozenset(
                i for i, w in enumerate(rd.simple_walls)
                if all(w(v) == 0 for v in probe.vertices)
            )
            model = instantiate_residue(rd, q)
            a_q = model.model_subset(a_f_walls)
            star_subsets = tuple(model.model_subset(rd.parabolic_subset(k)) for k in star)
            mcls = _match_class(base_model, model, cls_index)
            if mcls is None:
                skipped += 1
                continue
            if a_q == frozenset(model.group.simples):
                exceptional.append(list(d.key))
                all_zero = False
                continue
            zero = _star_block_convolution(model, star_subsets, a_q, mcls)
            if not zero:
                all_zero = False
                exceptional.append(list(d.key))
        increments_zero.append(all_zero)
    radius = max((i for i, z in enumerate(increments_zero) if not z), default=0)
    return StabilizationTrace(
        "depth-zero", mmax, increments_zero, radius,
        {
            "q": q,
            "probe": [[str(c) for c in v] for v in probe.vertices],
            "base_value": f"block idempotent {base_label} at the probe residue",
            "exceptional_chambers": exceptional,
            "skipped_chambers": skipped,
        },
    )


def _match_class(base_model: ResidueModel, model: ResidueModel, cls_index: int):
    """Transport a cuspidal-class choice between residue models.

    The principal class transports to any residue; other classes only within
    the same group kind.
    """
    if model.group is base_model.group:
        return cls_index
    if cls_index == principal_class_index(base_model.group):
        return principal_class_index(model.group)
    return None


# ---------------------------------------------------------------------------
# residue-level regular representation partition
# ---------------------------------------------------------------------------

def peter_weyl_partition(rd_or_group, q: Optional[int] = None) -> List:
    """For every standard parabolic of the residue group: the block sums equal
    the radical idempotent (regular-representation partition)."""
    if isinstance(rd_or_group, ResidueDatum):
        group = instantiate_residue(rd_or_group, q).group
    else:
        group = rd_or_group
    return verify_partition_of_unity(group)
