"""Finite-dimensional algebras given by structure constants.

Elements are sparse coordinate dicts ``{basis_index: scalar}``. The module
decides Lie nilpotency two ways: through the finite generator criterion
(brackets whose end entries lie in X and whose middle entries lie in
X u X^2) and by brute force over a basis. Both walk a chain of spans
``V_1, V_2, ...`` and keep, at each level, a spanning set made of actual
bracket values, so a nonzero top level always yields an explicit witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

from .coeff import RingSpec
from .linexact import span_structure

Element = dict


class AlgebraError(ValueError):
    pass


class StructureAlgebra:
    """A unital associative algebra with basis ``e_0 .. e_(d-1)``.

    ``table[i][j]`` is the product ``e_i * e_j`` as a sparse dict. The unit
    axiom and associativity on all basis triples are checked on construction.
    """

    def __init__(self, dim: int, ring: RingSpec, table, unit: Element,
                 generators: dict[str, Element], basis_names: Sequence[str] | None = None,
                 validate: bool = True):
        if dim < 1:
            raise AlgebraError("dimension must be positive")
        self.dim = dim
        self.ring = ring
        self.table = [[self._clean(table[i][j]) for j in range(dim)] for i in range(dim)]
        self.unit = self._clean(unit)
        self.generators = {name: self._clean(v) for name, v in generators.items()}
        self.basis_names = list(basis_names) if basis_names else [f"e{i}" for i in range(dim)]
        if validate:
            self.validate()

    def _clean(self, v: Element) -> Element:
        out = {}
        for k, c in v.items():
            if not 0 <= k < self.dim:
                raise AlgebraError(f"coordinate {k} out of range for dimension {self.dim}")
            c = self.ring.coerce(c)
            if c:
                out[k] = c
        return out

    def validate(self) -> None:
        for j in range(self.dim):
            ej = {j: self.ring.one}
            if self.mul(self.unit, ej) != ej or self.mul(ej, self.unit) != ej:
                raise AlgebraError(f"unit axiom fails on basis element {j}")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.mul(ij, {k: self.ring.one})
                    right = self.mul({i: self.ring.one}, self.table[j][k])
                    if left != right:
                        raise AlgebraError(f"associativity fails on basis triple ({i}, {j}, {k})")

    def basis(self, i: int) -> Element:
        return {i: self.ring.one}

    def mul(self, p: Element, q: Element) -> Element:
        out: dict = {}
        table = self.table
        for i, a in p.items():
            row = table[i]
            for j, b in q.items():
                ab = a * b
                for k, c in row[j].items():
                    out[k] = out.get(k, 0) + ab * c
        return self._norm(out)

    def add(self, p: Element, q: Element, scale=1) -> Element:
        out = dict(p)
        for k, c in q.items():
            out[k] = out.get(k, 0) + scale * c
        return self._norm(out)

    def commutator(self, p: Element, q: Element) -> Element:
        return self.add(self.mul(p, q), self.mul(q, p), -1)

    def _norm(self, v: dict) -> Element:
        mod = self.ring.modulus
        if mod:
            return {k: c % mod for k, c in v.items() if c % mod}
        return {k: c for k, c in v.items() if c}

    def check_element(self, p: Element) -> Element:
        for k in p:
            if not 0 <= k < self.dim:
                raise AlgebraError(f"element has coordinate {k} outside dimension {self.dim}")
        return p

    def render(self, p: Element) -> str:
        if not p:
            return "0"
        parts = []
        for k in sorted(p):
            c = p[k]
            name = self.basis_names[k]
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)

    def change_ring(self, ring: RingSpec) -> "StructureAlgebra":
        return StructureAlgebra(self.dim, ring, self.table, self.unit, self.generators, self.basis_names)


def fd_mul(A: StructureAlgebra, p: Element, q: Element) -> Element:
    return A.mul(A.check_element(p), A.check_element(q))


def fd_commutator(A: StructureAlgebra, p: Element, q: Element) -> Element:
    return A.commutator(A.check_element(p), A.check_element(q))


# -- Lie nilpotency -------------------------------------------------------------


@dataclass
class NilpotencyResult:
    verdict: str  # "LieNilpotent" | "NotLieNilpotent" | "Refused"
    n: int
    witness: tuple[str, ...] | None = None
    witness_value: Element | None = None
    reason: str | None = None
    condition_only: bool = False
    checked: int = 0

    @property
    def nilpotent(self) -> bool | None:
        if self.verdict == "Refused":
            return None
        return self.verdict == "LieNilpotent"

    def to_dict(self, A: StructureAlgebra | None = None) -> dict:
        out = {"verdict": self.verdict, "n": self.n, "brackets_checked": self.checked}
        if self.witness is not None:
            out["witness"] = "[" + ", ".join(self.witness) + "]"
            if A is not None:
                out["witness_value"] = A.render(self.witness_value)
        if self.reason:
            out["reason"] = self.reason
        if self.condition_only:
            out["condition_only"] = True
        return out


def _bracket_chain(A: StructureAlgebra, first, middle, last, n: int):
    """Follow ``V_1 = span(first)``, ``V_(k+1) = [V_k, middle]`` and finally
    ``[V_(n-1), last]``. Returns the spanning brackets of ``V_n`` and the
    number of brackets evaluated."""
    level = []
    span = span_structure(A.ring)
    for label, v in first:
        if v and span.insert(v):
            level.append(((label,), v))
    checked = 0
    for k in range(2, n + 1):
        ys = last if k == n else middle
        span = span_structure(A.ring)
        nxt = []
        for labels, v in level:
            for label, y in ys:
                checked += 1
                w = A.commutator(v, y)
                if w and span.insert(w):
                    nxt.append((labels + (label,), w))
        level = nxt
        if not level:
            break
    return level, checked


def _x_and_x2(A: StructureAlgebra):
    xs = list(A.generators.items())
    x2 = [(f"{p}*{q}", A.mul(u, v)) for p, u in xs for q, v in xs]
    return xs, xs + x2


def verify_via_theorem(A: StructureAlgebra, n: int, force: bool = False) -> NilpotencyResult:
    """Lie nilpotency of class < n from brackets over X and X^2 only.

    Refused when 3 is not a unit of the coefficient ring, unless ``force``;
    a forced answer is marked ``condition_only``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not A.ring.three_invertible and not force:
        return NilpotencyResult("Refused", n, reason=f"3 is not invertible in {A.ring}")
    xs, mid = _x_and_x2(A)
    level, checked = _bracket_chain(A, xs, mid, xs, n)
    forced = not A.ring.three_invertible
    if level:
        labels, value = level[0]
        return NilpotencyResult("NotLieNilpotent", n, labels, value, condition_only=forced, checked=checked)
    return NilpotencyResult("LieNilpotent", n, condition_only=forced, checked=checked)


def _basis_items(A: StructureAlgebra):
    return [(A.basis_names[i], A.basis(i)) for i in range(A.dim)]


def lie_nilpotency_oracle(A: StructureAlgebra, n: int) -> NilpotencyResult:
    """Brute force: does every n-fold bracket of basis elements vanish?"""
    if n < 2:
        raise ValueError("n must be at least 2")
    items = _basis_items(A)
    level, checked = _bracket_chain(A, items, items, items, n)
    if level:
        labels, value = level[0]
        return NilpotencyResult("NotLieNilpotent", n, labels, value, checked=checked)
    return NilpotencyResult("LieNilpotent", n, checked=checked)


def lower_central_dims(A: StructureAlgebra, n: int) -> list[int]:
    """Ranks of ``M_1 = A``, ``M_(k+1) = [M_k, A]`` for ``k < n``."""
    items = _basis_items(A)
    dims = []
    for k in range(1, n + 1):
        level, _ = _bracket_chain(A, items, items, items, k) if k > 1 else ([(None, v) for _, v in items], 0)
        span = span_structure(A.ring)
        for _, v in level:
            span.insert(v)
        dims.append(span.rank)
    return dims


# -- ideals ------------------------------------------------------------------------


class SubspaceBasis:
    """A subspace (or Z-lattice, or Z[1/3]-module) of the algebra."""

    def __init__(self, A: StructureAlgebra):
        self.algebra = A
        self.span = span_structure(A.ring)

    @property
    def rank(self) -> int:
        return self.span.rank

    def is_zero(self) -> bool:
        return self.span.rank == 0

    def contains(self, v: Element) -> bool:
        return self.span.contains(v)

    def vectors(self) -> list[Element]:
        return self.span.basis()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.span.same_span(other.span)

    def __repr__(self) -> str:
        return f"SubspaceBasis(rank={self.rank}, ring={self.algebra.ring})"


def ideal_from_gens_findim(A: StructureAlgebra, gens: Sequence[Element]) -> SubspaceBasis:
    """Two-sided ideal generated by ``gens``: close under multiplication by
    basis elements on both sides until nothing new appears."""
    sub = SubspaceBasis(A)
    queue = [v for v in gens if v and sub.span.insert(A.check_element(v))]
    basis = [A.basis(j) for j in range(A.dim)]
    while queue:
        v = queue.pop()
        for e in basis:
            for w in (A.mul(e, v), A.mul(v, e)):
                if w and sub.span.insert(w):
                    queue.append(w)
    return sub


def tideal_findim(A: StructureAlgebra, n: int) -> SubspaceBasis:
    """The ideal generated by all n-fold brackets of elements of A."""
    items = _basis_items(A)
    level, _ = _bracket_chain(A, items, items, items, n)
    return ideal_from_gens_findim(A, [v for _, v in level])


def sn_values(A: StructureAlgebra, n: int) -> list[Element]:
    """A spanning set of the values of ``[y1, ..., yn]``, ``y1, yn`` in X,
    middle entries in X u X^2."""
    xs, mid = _x_and_x2(A)
    level, _ = _bracket_chain(A, xs, mid, xs, n)
    return [v for _, v in level]


def evaluate_sn(A: StructureAlgebra, n: int) -> list[tuple[tuple[str, ...], Element]]:
    """Every bracket of the finite generator criterion, evaluated in A."""
    if n < 2:
        raise ValueError("n must be at least 2")
    xs, mid = _x_and_x2(A)
    level = [((label,), v) for label, v in xs]
    for k in range(2, n + 1):
        ys = xs if k == n else mid
        level = [(labels + (label,), A.commutator(v, y)) for labels, v in level for label, y in ys]
    return level


# -- example algebras ------------------------------------------------------------------


def _table(dim):
    return [[{} for _ in range(dim)] for _ in range(dim)]


def commutative_series(m: int, ring: RingSpec) -> StructureAlgebra:
    """``R[t]/(t^m)``, generated by ``t``."""
    if m < 1:
        raise AlgebraError("commutative_series needs m >= 1")
    tab = _table(m)
    for i in range(m):
        for j in range(m):
            if i + j < m:
                tab[i][j] = {i + j: 1}
    names = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, m)]
    gens = {"t": {1: 1} if m > 1 else {}}
    return StructureAlgebra(m, ring, tab, {0: 1}, gens, names)


def grassmann(k: int, ring: RingSpec) -> StructureAlgebra:
    """Exterior algebra on ``k`` generators (dimension ``2^k``)."""
    if k < 1:
        raise AlgebraError("grassmann needs k >= 1")
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), [i for i in range(k) if s >> i & 1]))
    index = {s: i for i, s in enumerate(subsets)}
    tab = _table(len(subsets))
    for s in subsets:
        for t in subsets:
            if s & t:
                continue
            # sign of merging the sorted lists s and t
            inv = sum(1 for i in range(k) if s >> i & 1 for j in range(k) if t >> j & 1 and j < i)
            tab[index[s]][index[t]] = {index[s | t]: -1 if inv % 2 else 1}
    names = ["*".join(f"e{i + 1}" for i in range(k) if s >> i & 1) or "1" for s in subsets]
    gens = {f"e{i + 1}": {index[1 << i]: 1} for i in range(k)}
    return StructureAlgebra(len(subsets), ring, tab, {0: 1}, gens, names)


def unitriangular_plus_unit(m: int, ring: RingSpec) -> StructureAlgebra:
    """``R*1`` plus the strictly upper triangular ``m x m`` matrices."""
    if m < 1:
        raise AlgebraError("unitriangular_plus_unit needs m >= 1")
    units = [(i, j) for i in range(m) for j in range(i + 1, m)]
    index = {u: k + 1 for k, u in enumerate(units)}
    dim = len(units) + 1
    tab = _table(dim)
    for x in range(dim):
        tab[0][x] = {x: 1}
        tab[x][0] = {x: 1}
    for (i, j) in units:
        for (k, l) in units:
            if j == k:
                tab[index[(i, j)]][index[(k, l)]] = {index[(i, l)]: 1}
    names = ["1"] + [f"E{i + 1}{j + 1}" for i, j in units]
    gens = {"1": {0: 1}}
    gens.update({f"E{i + 1}{j + 1}": {index[(i, j)]: 1} for i, j in units})
    return StructureAlgebra(dim, ring, tab, {0: 1}, gens, names)


def upper_triangular(m: int, ring: RingSpec) -> StructureAlgebra:
    """All upper triangular ``m x m`` matrices; generated by the matrix units."""
    if m < 1:
        raise AlgebraError("upper_triangular needs m >= 1")
    units = [(i, j) for i in range(m) for j in range(i, m)]
    index = {u: k for k, u in enumerate(units)}
    tab = _table(len(units))
    for (i, j) in units:
        for (k, l) in units:
            if j == k:
                tab[index[(i, j)]][index[(k, l)]] = {index[(i, l)]: 1}
    unit = {index[(i, i)]: 1 for i in range(m)}
    names = [f"E{i + 1}{j + 1}" for i, j in units]
    gens = {name: {index[u]: 1} for name, u in zip(names, units)}
    return StructureAlgebra(len(units), ring, tab, unit, gens, names)


def _pbw_weight(m):
    i, j, k = m
    return i + j + 2 * k


def heisenberg_truncated(cap: int, ring: RingSpec) -> StructureAlgebra:
    """``U(H)`` for ``[a, b] = c`` central, modulo PBW monomials of weight > cap.

    Basis ``a^i b^j c^k`` with weight ``i + j + 2k <= cap``. Products use
    ``b^j a^p = sum_s s! C(j,s) C(p,s) (-c)^s a^(p-s) b^(j-s)``.
    """
    if cap < 1:
        raise AlgebraError("heisenberg_truncated needs cap >= 1")
    monos = sorted(((i, j, k) for k in range(cap // 2 + 1) for j in range(cap + 1) for i in range(cap + 1)
                    if i + j + 2 * k <= cap), key=lambda m: (_pbw_weight(m), -m[0], -m[1]))
    index = {m: t for t, m in enumerate(monos)}
    tab = _table(len(monos))
    for (i, j, k) in monos:
        for (p, q, r) in monos:
            if _pbw_weight((i, j, k)) + _pbw_weight((p, q, r)) > cap:
                continue
            prod = {}
            for s in range(min(j, p) + 1):
                coeff = factorial(s) * comb(j, s) * comb(p, s) * (-1) ** s
                mono = (i + p - s, j - s + q, k + r + s)
                prod[index[mono]] = prod.get(index[mono], 0) + coeff
            tab[index[(i, j, k)]][index[(p, q, r)]] = prod

    def name(m):
        parts = []
        for sym, e in zip("abc", m):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return "*".join(parts) or "1"

    names = [name(m) for m in monos]
    gens = {"a": {index[(1, 0, 0)]: 1}, "b": {index[(0, 1, 0)]: 1}}
    return StructureAlgebra(len(monos), ring, tab, {0: 1}, gens, names)


def heisenberg_element(A: StructureAlgebra, i: int, j: int, k: int) -> Element:
    """The PBW monomial ``a^i b^j c^k`` of a truncated Heisenberg envelope (0 if over the cap)."""
    name = "*".join(p for p in (_pow("a", i), _pow("b", j), _pow("c", k)) if p) or "1"
    try:
        return A.basis(A.basis_names.index(name))
    except ValueError:
        return {}


def _pow(sym, e):
    return "" if e == 0 else sym if e == 1 else f"{sym}^{e}"


def matrix_subalgebra(mats: dict[str, Sequence[Sequence[int]]], ring: RingSpec) -> StructureAlgebra:
    """Unital subalgebra of ``m x m`` matrices generated by the named matrices.

    Only fields are supported; the basis is found by closing ``span{1}`` under
    right multiplication by the generators.
    """
    if not ring.is_field:
        raise AlgebraError("matrix_subalgebra needs a field")
    from .linexact import FieldEchelon

    if not mats:
        raise AlgebraError("need at least one generator matrix")
    size = len(next(iter(mats.values())))

    def norm(x):
        return ring.coerce(x)

    def matmul(a, b):
        return tuple(tuple(norm(sum(a[i][k] * b[k][j] for k in range(size))) for j in range(size)) for i in range(size))

    def flat(a):
        return {i * size + j: x for i, row in enumerate(a) for j, x in enumerate(row) if x}

    gens = {name: tuple(tuple(norm(x) for x in row) for row in m) for name, m in mats.items()}
    if any(len(m) != size or any(len(r) != size for r in m) for m in gens.values()):
        raise AlgebraError("generator matrices must be square of one size")
    ident = tuple(tuple(norm(int(i == j)) for j in range(size)) for i in range(size))
    ech = FieldEchelon(ring, track=True)
    basis = []
    queue = [ident]
    while queue:
        a = queue.pop(0)
        if ech.insert(flat(a), tag=len(basis)):
            basis.append(a)
            queue.extend(matmul(a, g) for g in gens.values())

    def coords(a) -> Element:
        combo = ech.express(flat(a))
        if combo is None:
            raise AlgebraError("matrix products left the computed span")
        return {t: c for t, c in combo.items() if c}

    dim = len(basis)
    tab = [[coords(matmul(basis[i], basis[j])) for j in range(dim)] for i in range(dim)]
    names = ["1"] + [f"m{i}" for i in range(1, dim)]
    return StructureAlgebra(dim, ring, tab, coords(ident), {n: coords(g) for n, g in gens.items()}, names)


EXAMPLES = {
    "heisenberg_truncated": heisenberg_truncated,
    "grassmann": grassmann,
    "unitriangular_plus_unit": unitriangular_plus_unit,
    "commutative_series": commutative_series,
    "upper_triangular": upper_triangular,
}

_EXAMPLE_RE = re.compile(r"^\s*(\w+)\s*\(\s*(\d+)\s*\)\s*$")


def example_algebra(spec: str, ring: RingSpec) -> StructureAlgebra:
    """Build an example from text such as ``"grassmann(3)"``."""
    m = _EXAMPLE_RE.match(spec)
    if not m or m.group(1) not in EXAMPLES:
        raise AlgebraError(f"unknown example {spec!r}; expected one of {sorted(EXAMPLES)} with a parameter")
    return EXAMPLES[m.group(1)](int(m.group(2)), ring)
