"""Matrix groups of Lie type over small finite fields, with Borel/parabolic
structure, enumerated exactly.

Supported kinds: SL1..SL3, GL1..GL3, Sp4.  Elements are canonical matrix
tuples over F_q; index 0 is the identity and the remaining elements are
sorted by their canonical form, so indices are reproducible across runs.
Left-multiplication rows are precomputed for small groups (everything the
verification suites build), which makes convolution table lookups O(1).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

SIZE_CAP_DEFAULT = 200_000
_FULL_TABLE_LIMIT = 2_000


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

def _factor_prime_power(q: int):
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _poly_mod(num, den, p):
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        if num[-1] == 0:
            num.pop()
            continue
        shift = len(num) - 1 - dd
        lead = num[-1]
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % p
        while num and num[-1] == 0:
            num.pop()
    return tuple(num)


def _is_irreducible(poly, p):
    deg = len(poly) - 1
    if deg == 1:
        return True
    # no roots
    for r in range(p):
        if sum(c * pow(r, i, p) for i, c in enumerate(poly)) % p == 0:
            return False
    if deg <= 3:
        return True
    # degree 4: also exclude quadratic factors
    for a in range(p):
        for b in range(p):
            den = (b, a, 1)
            if not _poly_mod(poly, den, p):
                return False
    return True


class FqField:
    """F_q as polynomial residues mod the lexicographically least irreducible."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.e = _factor_prime_power(q)
        if self.e == 1:
            self.modulus = (0, 1)  # x, recorded for completeness
        else:
            self.modulus = self._least_modulus()

    def _least_modulus(self):
        p, e = self.p, self.e
        coeffs = [0] * e
        while True:
            poly = tuple(coeffs) + (1,)
            if _is_irreducible(poly, p):
                return poly
            i = 0
            while i < e:
                coeffs[i] += 1
                if coeffs[i] < p:
                    break
                coeffs[i] = 0
                i += 1
            if i == e:
                raise AssertionError("no irreducible modulus found")

    def elements(self):
        if self.e == 1:
            return list(range(self.p))
        out = [()]
        for _ in range(self.e):
            out = [t + (c,) for t in out for c in range(self.p)]
        return [self._trim(t) for t in out]

    def _trim(self, t):
        t = list(t)
        while t and t[-1] == 0:
            t.pop()
        return tuple(t)

    @property
    def zero(self):
        return 0 if self.e == 1 else ()

    @property
    def one(self):
        return 1 if self.e == 1 else (1,)

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        la, lb = list(a), list(b)
        n = max(len(la), len(lb))
        la += [0] * (n - len(la))
        lb += [0] * (n - len(lb))
        return self._trim([(x + y) % self.p for x, y in zip(la, lb)])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self._trim([(-x) % self.p for x in a])

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if not a or not b:
            return ()
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return _poly_mod(prod, self.modulus, self.p)

    def inv(self, a):
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        x = a
        for _ in range(self.q - 3):
            x = self.mul(x, a)
        assert self.mul(x, a) == self.one
        return x

    def units(self):
        return [x for x in self.elements() if x != self.zero]

    def to_json(self):
        return {"q": self.q, "p": self.p, "e": self.e, "modulus": list(self.modulus)}


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def mat_identity(f: FqField, n: int):
    return tuple(tuple(f.one if i == j else f.zero for j in range(n)) for i in range(n))


def mat_mul(f: FqField, a, b):
    n = len(a)
    bt = tuple(zip(*b))
    if f.e == 1:
        p = f.p
        return tuple(
            tuple(sum(ra[k] * cb[k] for k in range(n)) % p for cb in bt) for ra in a
        )
    out = []
    for ra in a:
        row = []
        for cb in bt:
            s = f.zero
            for x, y in zip(ra, cb):
                s = f.add(s, f.mul(x, y))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_transpose(a):
    return tuple(zip(*a))


# ---------------------------------------------------------------------------
# root data and generators per kind
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PositiveRoot:
    """A positive root of the group's datum: label and simple-root support."""

    label: str
    support: FrozenSet[int]


def _gl_datum(f: FqField, n: int):
    """Type A_{n-1}: roots e_i - e_j; x_root(t) = I + t E_ij."""
    simples = list(range(n - 1))
    pos = []
    gens = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            label = f"e{i}-e{j}"
            mats = []
            for t in f.units():
                m = [list(r) for r in mat_identity(f, n)]
                m[i][j] = t
                mats.append(tuple(tuple(r) for r in m))
            gens[label] = mats
            if i < j:
                pos.append(PositiveRoot(label, frozenset(range(i, j))))
    return simples, pos, gens


def _sp4_form(f: FqField):
    z, o = f.zero, f.one
    no = f.neg(o)
    return (
        (z, z, z, o),
        (z, z, o, z),
        (z, no, z, z),
        (no, z, z, z),
    )


def _sp4_datum(f: FqField):
    """Type C2 with the antidiagonal symplectic form; alpha1 short, alpha2 long."""
    simples = [0, 1]
    nil = {
        "a1": [(0, 1, 1), (2, 3, -1)],
        "a2": [(1, 2, 1)],
        "a1+a2": [(0, 2, 1), (1, 3, 1)],
        "2a1+a2": [(0, 3, 1)],
    }
    pos = [
        PositiveRoot("a1", frozenset({0})),
        PositiveRoot("a2", frozenset({1})),
        PositiveRoot("a1+a2", frozenset({0, 1})),
        PositiveRoot("2a1+a2", frozenset({0, 1})),
    ]
    gens = {}
    form = _sp4_form(f)
    for label, entries in nil.items():
        plus, minus = [], []
        for t in f.units():
            m = [list(r) for r in mat_identity(f, 4)]
            for (i, j, sgn) in entries:
                m[i][j] = t if sgn == 1 else f.neg(t)
            g = tuple(tuple(r) for r in m)
            plus.append(g)
            minus.append(mat_transpose(g))
        for g in plus + minus:
            gt = mat_transpose(g)
            assert mat_mul(f, mat_mul(f, gt, form), g) == form, f"{label} not symplectic"
        gens[label] = plus
        gens["-" + label] = minus
    return simples, pos, gens


def order_gl(n, q):
    o = 1
    for i in range(n):
        o *= q**n - q**i
    return o


def order_sl(n, q):
    return order_gl(n, q) // (q - 1)


def order_sp4(q):
    return q**4 * (q**2 - 1) * (q**4 - 1)


# ---------------------------------------------------------------------------
# the group object
# ---------------------------------------------------------------------------

class FiniteGroup:
    """An enumerated finite group with Lie-type root structure.

    `elements` are canonical matrix tuples; `rows[i][j]` is the index of
    elements[i] * elements[j].  Levi subgroups are re-exported as FiniteGroup
    instances via `levi_group`, carrying their own (restricted) root datum and
    the embedding back into the ambient group.
    """

    def __init__(self, name, field, elements, rows, simples, pos_roots, root_gens,
                 torus, ambient=None, ambient_index=None):
        self.name = name
        self.field = field
        self.elements = elements
        self.n = len(elements)
        self.rows = rows
        self.simples = list(simples)
        self.pos_roots = list(pos_roots)
        self.root_gens = dict(root_gens)      # label -> list of element indices
        self.torus = list(torus)              # element indices
        self.ambient = ambient
        self.ambient_index = ambient_index    # local idx -> ambient idx
        self.identity = 0
        self.inv = self._inverse_table()
        self._classes = None
        self._class_of = None
        self._subgroup_cache: Dict[FrozenSet[int], FrozenSet[int]] = {}
        self._order_cache: Dict[int, int] = {}

    # -- core table ops ----------------------------------------------------

    def mult(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def _inverse_table(self):
        inv = [0] * self.n
        for i in range(self.n):
            inv[i] = self.rows[i].index(0)
        return inv

    def conjugate(self, g: int, x: int) -> int:
        """g^{-1} x g."""
        return self.mult(self.inv[g], self.mult(x, g))

    def element_order(self, i: int) -> int:
        o = self._order_cache.get(i)
        if o is None:
            o = 1
            x = i
            while x != 0:
                x = self.mult(x, i)
                o += 1
            self._order_cache[i] = o
        return o

    def exponent(self) -> int:
        e = 1
        for rep in self.class_reps():
            o = self.element_order(rep)
            e = e * o // gcd(e, o)
        return e

    # -- conjugacy classes ---------------------------------------------------

    def conjugacy_classes(self) -> List[List[int]]:
        if self._classes is None:
            class_of = [-1] * self.n
            classes = []
            gens = sorted({g for gl in self.root_gens.values() for g in gl} | set(self.torus))
            for x in range(self.n):
                if class_of[x] >= 0:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    y = frontier.pop()
                    for g in gens:
                        z = self.conjugate(g, y)
                        if z not in orbit:
                            orbit.add(z)
                            frontier.append(z)
                cls = sorted(orbit)
                idx = len(classes)
                classes.append(cls)
                for y in cls:
                    class_of[y] = idx
            self._classes = classes
            self._class_of = class_of
            assert sum(len(c) for c in classes) == self.n
            assert classes[0] == [0]
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        return self._class_of[i]

    def class_reps(self) -> List[int]:
        return [c[0] for c in self.conjugacy_classes()]

    # -- subgroups -------------------------------------------------------------

    def closure(self, gens: Sequence[int]) -> FrozenSet[int]:
        key = frozenset(gens)
        got = self._subgroup_cache.get(key)
        if got is not None:
            return got
        seen = {0} | set(gens)
        frontier = list(seen)
        while frontier:
            x = frontier.pop()
            for g in key:
                y = self.mult(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        out = frozenset(seen)
        self._subgroup_cache[key] = out
        return out

    def is_subgroup(self, members: FrozenSet[int]) -> bool:
        if 0 not in members:
            return False
        for x in members:
            if self.inv[x] not in members:
                return False
            for y in members:
                if self.mult(x, y) not in members:
                    return False
        return True

    def borel(self) -> FrozenSet[int]:
        gens = list(self.torus)
        for r in self.pos_roots:
            gens.extend(self.root_gens[_plus(r.label)])
        return self.closure(gens)

    def phi_plus_count(self) -> int:
        return len(self.pos_roots)

    def to_json(self):
        return {
            "name": self.name,
            "order": self.n,
            "field": self.field.to_json(),
            "class_count": len(self.conjugacy_classes()),
            "class_sizes": [len(c) for c in self.conjugacy_classes()],
        }


def _plus(label: str) -> str:
    return label


def _minus(label: str) -> str:
    if "-e" in label and not label.startswith("-"):  # type A labels "ei-ej"
        i, j = label.split("-")
        return f"{j}-{i}"
    return label[1:] if label.startswith("-") else "-" + label


@dataclass(frozen=True)
class ParabolicSubgroup:
    """A standard parabolic: its Levi subset, elements, radical, Levi factor."""

    group: FiniteGroup
    levi_subset: FrozenSet[int]
    elements: FrozenSet[int]
    radical: FrozenSet[int]
    levi: FrozenSet[int]


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _enumerate(field, mats_gens, order_expected, size_cap):
    """BFS closure; returns (canonical elements, discovery words).

    Each discovery word is (matrix, parent_matrix, generator_position), in
    BFS order, so left-multiplication rows can be propagated by permutation
    composition instead of n^2 matrix products.
    """
    if order_expected > size_cap:
        raise ValueError(
            f"group order {order_expected} exceeds size cap {size_cap}"
        )
    ident = mat_identity(field, len(mats_gens[0]))
    seen = {ident}
    frontier = [ident]
    discovery = []
    while frontier:
        nxt = []
        for m in frontier:
            for gi, g in enumerate(mats_gens):
                prod = mat_mul(field, m, g)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    discovery.append((prod, m, gi))
        frontier = nxt
        if len(seen) > order_expected:
            raise AssertionError("generated more elements than the order formula")
    if len(seen) != order_expected:
        raise AssertionError(
            f"enumeration produced {len(seen)} elements, formula says {order_expected}"
        )
    elements = [ident] + sorted(seen - {ident})
    return elements, discovery


def _left_mult_rows(field, elements, mats_gens, discovery):
    index = {m: i for i, m in enumerate(elements)}
    n = len(elements)
    if n > _FULL_TABLE_LIMIT:
        return _LazyRows(field, elements, index)
    # rows of the generators, by direct matrix products
    gen_rows = [
        [index[mat_mul(field, g, m)] for m in elements] for g in mats_gens
    ]
    rows: List[Optional[list]] = [None] * n
    rows[0] = list(range(n))
    # L_{m.g} = L_m o L_g, propagated in BFS discovery order
    for prod, parent, gi in discovery:
        prow = rows[index[parent]]
        grow = gen_rows[gi]
        rows[index[prod]] = [prow[grow[x]] for x in range(n)]
    assert all(r is not None for r in rows)
    return rows


class _LazyRows:
    """Row-on-demand multiplication table for larger groups."""

    def __init__(self, field, elements, index):
        self.field = field
        self.elements = elements
        self.index = index
        self._cache = {}

    def __getitem__(self, i):
        row = self._cache.get(i)
        if row is None:
            mi = self.elements[i]
            row = [self.index[mat_mul(self.field, mi, m)] for m in self.elements]
            self._cache[i] = row
        return row


@lru_cache(maxsize=None)
def build_group(kind: str, q: int, size_cap: int = SIZE_CAP_DEFAULT) -> FiniteGroup:
    """Build (and cache) one of SLn/GLn (n<=3) or Sp4 over F_q."""
    kind = kind.upper().replace("_", "")
    field = FqField(q)
    if kind.startswith(("SL", "GL")) and kind[2:].isdigit():
        n = int(kind[2:])
        if not 1 <= n <= 3:
            raise ValueError(f"{kind}: only ranks n <= 3 are supported")
        simples, pos, gen_mats = _gl_datum(field, n)
        units = field.units()
        torus_mats = []
        for diag in _diag_tuples(units, n):
            if kind.startswith("SL"):
                prod = field.one
                for d in diag:
                    prod = field.mul(prod, d)
                if prod != field.one:
                    continue
            m = [list(r) for r in mat_identity(field, n)]
            for i, d in enumerate(diag):
                m[i][i] = d
            torus_mats.append(tuple(tuple(r) for r in m))
        order = order_gl(n, q) if kind.startswith("GL") else order_sl(n, q)
        all_gens = torus_mats + [m for ms in gen_mats.values() for m in ms]
        if n == 1:
            all_gens = torus_mats or [mat_identity(field, 1)]
        elements, discovery = _enumerate(field, all_gens, order, size_cap)
    elif kind == "SP4":
        simples, pos, gen_mats = _sp4_datum(field)
        units = field.units()
        torus_mats = []
        for a in units:
            for b in units:
                m = [list(r) for r in mat_identity(field, 4)]
                m[0][0], m[1][1] = a, b
                m[2][2], m[3][3] = field.inv(b), field.inv(a)
                torus_mats.append(tuple(tuple(r) for r in m))
        order = order_sp4(q)
        all_gens = torus_mats + [m for ms in gen_mats.values() for m in ms]
        elements, discovery = _enumerate(field, all_gens, order, size_cap)
    else:
        raise ValueError(f"unsupported group kind {kind!r}")

    rows = _left_mult_rows(field, elements, all_gens, discovery)
    index = {m: i for i, m in enumerate(elements)}
    root_gens = {lbl: sorted(index[m] for m in ms) for lbl, ms in gen_mats.items()}
    torus = sorted(index[m] for m in torus_mats)
    g = FiniteGroup(f"{kind}(F{q})", field, tuple(elements), rows,
                    simples, pos, root_gens, torus)
    return g


def _diag_tuples(units, n):
    out = [()]
    for _ in range(n):
        out = [t + (u,) for t in out for u in units]
    return out


def standard_parabolic(g: FiniteGroup, subset) -> ParabolicSubgroup:
    """P_A generated by the Borel and the negative simple root groups for A."""
    a = frozenset(subset)
    if not a <= set(g.simples):
        raise ValueError(f"{sorted(a)} is not a subset of the simple labels {g.simples}")
    gens = list(g.torus)
    for r in g.pos_roots:
        gens.extend(g.root_gens[_plus(r.label)])
        if r.support <= a:
            gens.extend(g.root_gens[_minus(r.label)])
    elements = g.closure(gens)
    radical = unipotent_radical_set(g, a)
    levi_gens = list(g.torus)
    for r in g.pos_roots:
        if r.support <= a:
            levi_gens.extend(g.root_gens[_plus(r.label)])
            levi_gens.extend(g.root_gens[_minus(r.label)])
    levi = g.closure(levi_gens)
    assert len(radical) * len(levi) == len(elements), "P != rad x Levi"
    return ParabolicSubgroup(g, a, elements, radical, levi)


def unipotent_radical_set(g: FiniteGroup, subset) -> FrozenSet[int]:
    """rad(P_A): the positive root groups outside the Levi's span."""
    a = frozenset(subset)
    gens = []
    for r in g.pos_roots:
        if not r.support <= a:
            gens.extend(g.root_gens[_plus(r.label)])
    out = g.closure(gens) if gens else frozenset({0})
    expected = g.field.q ** sum(1 for r in g.pos_roots if not r.support <= a)
    assert len(out) == expected, "radical order != q^#(Phi+ \\ Phi_A+)"
    return out


def unipotent_radical(p: ParabolicSubgroup) -> FrozenSet[int]:
    return p.radical


def levi_group(g: FiniteGroup, subset) -> FiniteGroup:
    """The standard Levi L_A as its own FiniteGroup with restricted datum."""
    a = frozenset(subset)
    p = standard_parabolic(g, a)
    members = sorted(p.levi)
    local = {amb: i for i, amb in enumerate(members)}
    assert members[0] == 0
    n = len(members)
    rows = [[local[g.mult(members[i], members[j])] for j in range(n)] for i in range(n)]
    pos = [r for r in g.pos_roots if r.support <= a]
    root_gens = {}
    for r in pos:
        root_gens[_plus(r.label)] = [local[i] for i in g.root_gens[_plus(r.label)]]
        root_gens[_minus(r.label)] = [local[i] for i in g.root_gens[_minus(r.label)]]
    lg = FiniteGroup(
        f"{g.name}-Levi{sorted(a)}", g.field,
        tuple(g.elements[i] for i in members), rows,
        sorted(a), pos, root_gens,
        [local[i] for i in g.torus],
        ambient=g, ambient_index=members,
    )
    return lg


def conjugacy_classes(g: FiniteGroup):
    """Class partition with representatives (delegates to the group)."""
    classes = g.conjugacy_classes()
    return [(c[0], c) for c in classes]


def dump_fixture(g: FiniteGroup) -> dict:
    """Element table dump for reuse outside the process; exact and canonical."""

    def entry(x):
        return list(x) if isinstance(x, tuple) else x

    return {
        "name": g.name,
        "field": g.field.to_json(),
        "elements": [[ [entry(x) for x in row] for row in m] for m in g.elements],
        "torus": list(g.torus),
        "root_generators": {lbl: list(ix) for lbl, ix in sorted(g.root_gens.items())},
        "classes": g.conjugacy_classes(),
    }


def verify_fixture(g: FiniteGroup, fixture: dict) -> bool:
    """Check a dumped fixture matches a freshly built group bit for bit."""
    return dump_fixture(g) == fixture
