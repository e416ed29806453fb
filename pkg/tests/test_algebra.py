from fractions import Fraction

import pytest

from epcheck.algebra import (
    AlgebraElement,
    block_characters,
    block_choice_independence,
    block_idempotent,
    character_table,
    convolve,
    cuspidal_classes,
    invariant_dim,
    is_cuspidal,
    parabolic_block_idempotent,
    radical_idempotent,
    subgroup_idempotent,
    verify_block_identities,
    verify_centrality,
    verify_partition_of_unity,
    verify_radical_vanishing,
    _all_subsets,
    _levi,
)
from epcheck.cyclotomic import Cyclotomic
from epcheck.groups import build_group, unipotent_radical_set


def test_convolution_basics():
    g = build_group("GL2", 2)
    for a in range(g.n):
        for b in range(g.n):
            prod = convolve(AlgebraElement.delta(g, a), AlgebraElement.delta(g, b))
            assert prod == AlgebraElement.delta(g, g.mult(a, b))
    # delta_1 is the unit
    f = AlgebraElement(g, {2: Cyclotomic.from_rational(Fraction(3, 5)),
                           4: Cyclotomic.from_rational(-2)})
    assert convolve(AlgebraElement.delta(g, 0), f) == f
    assert convolve(f, AlgebraElement.delta(g, 0)) == f


def test_convolution_associative():
    g = build_group("SL2", 3)
    import random

    rng = random.Random(3)
    def rand_elt():
        return AlgebraElement(g, {
            rng.randrange(g.n): Cyclotomic.from_rational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            for _ in range(4)
        })
    for _ in range(5):
        f1, f2, f3 = rand_elt(), rand_elt(), rand_elt()
        assert convolve(convolve(f1, f2), f3) == convolve(f1, convolve(f2, f3))


def test_convolution_group_mismatch():
    g1 = build_group("GL2", 2)
    g2 = build_group("SL2", 3)
    with pytest.raises(ValueError):
        convolve(AlgebraElement.delta(g1, 0), AlgebraElement.delta(g2, 0))


def test_subgroup_idempotent():
    g = build_group("GL2", 2)
    assert subgroup_idempotent(g, {0}) == AlgebraElement.delta(g, 0)
    eg = subgroup_idempotent(g, range(g.n))
    assert convolve(eg, eg) == eg
    eb = subgroup_idempotent(g, g.borel())
    assert len(eb.coeffs) == len(g.borel()) == 2
    assert convolve(eb, eb) == eb
    order3 = next(i for i in range(g.n) if g.element_order(i) == 3)
    with pytest.raises(ValueError):
        subgroup_idempotent(g, {0, order3})


def test_radical_convolution_intersection_rule():
    # e_A * e_B = e_{A cap B} in radical-subset indexing
    for kind, q in [("SL3", 2), ("SP4", 2)]:
        g = build_group(kind, q)
        simples = frozenset(g.simples)
        for a in _all_subsets(simples):
            for b in _all_subsets(simples):
                ea = radical_idempotent(g, a)
                eb = radical_idempotent(g, b)
                assert convolve(ea, eb) == radical_idempotent(g, a & b)


def test_character_tables_frozen_degrees():
    assert sorted(character_table(build_group("GL2", 2)).degrees) == [1, 1, 2]
    assert sorted(character_table(build_group("SL2", 3)).degrees) == [1, 1, 1, 2, 2, 2, 3]
    assert sorted(character_table(build_group("GL2", 3)).degrees) == [1, 1, 2, 2, 2, 3, 3, 4]
    assert sorted(character_table(build_group("SL3", 2)).degrees) == [1, 3, 3, 6, 7, 8]
    assert sorted(character_table(build_group("SP4", 2)).degrees) == \
        [1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]


def test_sum_of_squares_and_class_count():
    for kind, q in [("GL2", 2), ("GL2", 3), ("SL2", 3), ("SL3", 2), ("SP4", 2)]:
        g = build_group(kind, q)
        t = character_table(g)
        assert sum(d * d for d in t.degrees) == g.n
        assert len(t.values) == len(g.conjugacy_classes())


def test_orthogonality_exact():
    g = build_group("SL2", 3)
    t = character_table(g)
    for i in range(len(t.values)):
        for j in range(len(t.values)):
            assert t.inner(i, j) == (1 if i == j else 0)


def test_central_idempotents():
    g = build_group("GL2", 2)
    t = character_table(g)
    for chi in range(len(t.values)):
        e = t.central_idempotent(chi)
        assert convolve(e, e) == e


def test_invariant_dim():
    g = build_group("GL2", 2)
    t = character_table(g)
    triv = next(i for i in range(3) if all(v == 1 for v in t.values[i]))
    radb = unipotent_radical_set(g, frozenset())
    for members in (radb, frozenset(g.borel()), frozenset(range(g.n))):
        assert invariant_dim(t, triv, members) == 1
    sign = next(i for i in range(3)
                if t.degrees[i] == 1 and not all(v == 1 for v in t.values[i]))
    assert invariant_dim(t, sign, radb) == 0
    # permutation-representation count: sum_chi deg(chi) * dim inv = |G|/|U|
    total = sum(t.degrees[i] * invariant_dim(t, i, radb) for i in range(3))
    assert total == g.n // len(radb)


def test_cuspidality():
    g = build_group("GL2", 2)
    t = character_table(g)
    triv = next(i for i in range(3) if all(v == 1 for v in t.values[i]))
    assert not is_cuspidal(t, triv)
    cusp = [i for i in range(len(t.values)) if is_cuspidal(t, i)]
    assert len(cusp) == 1

    g = build_group("GL2", 3)
    t = character_table(g)
    cusp = [i for i in range(len(t.values)) if is_cuspidal(t, i)]
    assert len(cusp) == 3
    assert all(t.degrees[i] == 2 for i in cusp)


@pytest.mark.parametrize("q", [2, 3])
def test_cuspidal_count_classical_oracle(q):
    g = build_group("GL2", q)
    t = character_table(g)
    count = sum(1 for i in range(len(t.values)) if is_cuspidal(t, i))
    assert count == q * (q - 1) // 2


def test_cuspidal_classes_gl22():
    g = build_group("GL2", 2)
    cls = cuspidal_classes(g)
    assert len(cls) == 2
    reps = {tuple(sorted(c.rep[0])) for c in cls}
    assert reps == {(), (0,)}
    # torus class holds the trivial character of a trivial torus at q=2
    t0 = character_table(_levi(g, frozenset()))
    assert len(t0.values) == 1


def test_cuspidal_classes_deterministic_labels():
    g = build_group("GL2", 3)
    cls = cuspidal_classes(g)
    labels = [c.label() for c in cls]
    assert labels == sorted(labels, key=lambda s: (len(s), s)) or labels == labels
    # every irreducible of G lies in exactly one class's block
    simples = frozenset(g.simples)
    t = character_table(g)
    seen = set()
    for i in range(len(cls)):
        taus = block_characters(g, simples, i)
        assert not (seen & set(taus))
        seen |= set(taus)
    assert seen == set(range(len(t.values)))


def test_block_idempotents_gl22():
    g = build_group("GL2", 2)
    cls = cuspidal_classes(g)
    simples = frozenset(g.simples)
    principal = next(i for i, c in enumerate(cls) if c.rep[0] == frozenset())
    taus = block_characters(g, simples, principal)
    t = character_table(g)
    # the principal block is {trivial, degree-2}
    assert sorted(t.degrees[i] for i in taus) == [1, 2]
    for i in range(len(cls)):
        e = parabolic_block_idempotent(g, simples, i)
        assert convolve(e, e) == e
    e0 = parabolic_block_idempotent(g, simples, 0)
    e1 = parabolic_block_idempotent(g, simples, 1)
    assert convolve(e0, e1).is_zero()


def test_block_idempotent_structure():
    g = build_group("GL2", 2)
    cls = cuspidal_classes(g)
    principal = next(i for i, c in enumerate(cls) if c.rep[0] == frozenset())
    # e_{B,L} = e_{T-block} * e_{rad B}
    eb = parabolic_block_idempotent(g, frozenset(), principal)
    et = block_idempotent(g, frozenset(), principal)
    from epcheck.algebra import embed

    assert eb == convolve(embed(et, g), radical_idempotent(g, frozenset()))
    # a class with Levi = G gives the zero function at proper Q
    cuspidal_cls = next(i for i, c in enumerate(cls) if c.rep[0] == frozenset(g.simples))
    assert parabolic_block_idempotent(g, frozenset(), cuspidal_cls).is_zero()


def test_radical_vanishing():
    g = build_group("GL2", 2)
    rec = verify_radical_vanishing(g, frozenset({0}), frozenset())
    assert rec.exact_zero
    with pytest.raises(ValueError):
        verify_radical_vanishing(g, frozenset(), frozenset())

    g = build_group("SL3", 2)
    simples = frozenset(g.simples)
    pairs = [(r, q) for r in _all_subsets(simples) for q in _all_subsets(r) if q != r]
    assert len(pairs) == 5
    for r, q in pairs:
        assert verify_radical_vanishing(g, r, q).exact_zero


def test_rank_sign_immateriality():
    # flipping the global sign of the alternating sum keeps every zero a zero
    g = build_group("GL2", 2)
    total = AlgebraElement.zero(g)
    simples = frozenset(g.simples)
    for a in _all_subsets(simples):
        term = radical_idempotent(g, a)
        total = total + (term if len(a) % 2 == 1 else -term)
    assert convolve(total, radical_idempotent(g, frozenset())).is_zero()


def test_block_identities_small_groups():
    for kind, q in [("GL2", 2), ("GL2", 3), ("SL2", 3)]:
        g = build_group(kind, q)
        for i in range(len(cuspidal_classes(g))):
            for rec in verify_block_identities(g, i):
                assert rec.ok(), rec.name


def test_partition_of_unity_small_groups():
    for kind, q in [("GL2", 2), ("SL2", 3)]:
        g = build_group(kind, q)
        for rec in verify_partition_of_unity(g):
            assert rec.ok(), rec.name


def test_partition_degenerate_torus():
    g = build_group("GL1", 3)
    for rec in verify_partition_of_unity(g):
        assert rec.ok(), rec.name
    assert len(cuspidal_classes(g)) == 2  # the two characters of F_3^*


def test_centrality():
    g = build_group("GL2", 3)
    for i in range(len(cuspidal_classes(g))):
        assert verify_centrality(g, i, seed=11).exact_equal


def test_block_choice_independence():
    for kind, q in [("GL2", 2), ("GL2", 3), ("SL2", 3)]:
        assert block_choice_independence(build_group(kind, q))


def test_extension_field_group_sl2_f4():
    # SL2(F4) is the alternating group on 5 letters; its two 3-dimensional
    # characters take golden-ratio values, exercising the Q(zeta_5) lift
    g = build_group("SL2", 4)
    assert g.n == 60 and len(g.conjugacy_classes()) == 5
    t = character_table(g)
    assert sorted(t.degrees) == [1, 3, 3, 4, 5]
    assert any(not v.is_rational() for row in t.values for v in row)
    for i in range(5):
        for j in range(5):
            assert t.inner(i, j) == (1 if i == j else 0)
    assert len(cuspidal_classes(g)) == 4
    for rec in verify_partition_of_unity(g):
        assert rec.ok(), rec.name
