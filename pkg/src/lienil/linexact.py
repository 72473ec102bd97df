"""Exact sparse linear algebra over Q, GF(p), Z and Z[1/3].

Two layers live here:

* batch routines on :class:`SparseMat` (rank, solving, Hermite and Smith
  normal forms with unimodular transforms, torsion index), and
* incremental span structures (:class:`FieldEchelon`,
  :class:`IntegerLattice`, :class:`Loc3Lattice`) used by the ideal and
  finite-dimensional modules, which insert rows one at a time and keep a
  canonical reduced basis.

Vectors are ``dict[int, scalar]`` without stored zeros.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence

from .coeff import QQ, ZZ, RingKind, RingSpec


class NotInSpan(ValueError):
    pass


class NonFieldRing(ValueError):
    pass


@dataclass
class SparseMat:
    rows: list[dict]
    ncols: int
    ring: RingSpec

    def __post_init__(self):
        for row in self.rows:
            for j, c in row.items():
                if not 0 <= j < self.ncols:
                    raise ValueError(f"column {j} out of range for {self.ncols} columns")
                if not c:
                    raise ValueError("sparse rows must not store zeros")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], ring: RingSpec = ZZ, ncols: int | None = None) -> "SparseMat":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
            rows.append({j: ring.coerce(c) for j, c in enumerate(r) if c})
        return cls(rows, ncols, ring)

    def to_dense(self) -> list[list]:
        z = self.ring.zero
        return [[row.get(j, z) for j in range(self.ncols)] for row in self.rows]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols


# -- helpers -----------------------------------------------------------------


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _axpy(y: dict, a, x: dict, mod: int | None = None) -> None:
    """In place ``y += a * x``."""
    get = y.get
    if mod:
        for k, v in x.items():
            s = (get(k, 0) + a * v) % mod
            if s:
                y[k] = s
            else:
                del y[k]
    else:
        for k, v in x.items():
            s = get(k, 0) + a * v
            if s:
                y[k] = s
            else:
                del y[k]


def _lincomb(a, x: dict, b, y: dict) -> dict:
    out = {k: a * v for k, v in x.items()} if a else {}
    if b:
        _axpy(out, b, y)
    return {k: v for k, v in out.items() if v}


def _integerize(v: dict) -> tuple[dict, int]:
    """Scale a rational vector to integers; return ``(vector, multiplier)``."""
    den = 1
    for c in v.values():
        if type(c) is Fraction:
            den = lcm(den, c.denominator)
    if den == 1:
        return {k: int(c) for k, c in v.items() if c}, 1
    return {k: int(c * den) for k, c in v.items() if c}, den


def _content(v: dict) -> int:
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


# -- incremental span structures ----------------------------------------------


class FieldEchelon:
    """Reduced row echelon basis of a subspace over Q or GF(p).

    Over Q rows are kept as primitive integer vectors with a positive pivot,
    which avoids Fraction arithmetic in the inner loop. Every row is zero in
    every other row's pivot column. With ``track=True`` each basis row
    carries its expression in the inserted vectors (keyed by their tags).
    """

    def __init__(self, ring: RingSpec, track: bool = False):
        if not ring.is_field:
            raise NonFieldRing(f"{ring} is not a field")
        self.ring = ring
        self.mod = ring.modulus
        self.track = track
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _prepare(self, v: dict, tag):
        if self.mod:
            vec = {k: c % self.mod for k, c in v.items() if c % self.mod}
            return vec, ({tag: 1} if self.track else None)
        vec, mult = _integerize(v)
        return vec, ({tag: Fraction(mult)} if self.track else None)

    def _reduce(self, v: dict, combo: dict | None):
        rows, combos, mod = self.rows, self.combos, self.mod
        for c in [k for k in v if k in rows]:
            e = v.get(c)
            if not e:
                continue
            r = rows[c]
            if mod:
                _axpy(v, -e, r, mod)
                if combo is not None:
                    _axpy(combo, -e, combos[c], mod)
                continue
            p = r[c]
            if p != 1:
                for k in v:
                    v[k] *= p
                if combo is not None:
                    for k in combo:
                        combo[k] *= p
            _axpy(v, -e, r)
            if combo is not None:
                _axpy(combo, -e, combos[c])
        if v and not mod:
            g = _content(v)
            if g > 1:
                for k in v:
                    v[k] //= g
                if combo is not None:
                    for k in combo:
                        combo[k] /= g
        return v, combo

    def insert(self, v: dict, tag: Hashable = None) -> bool:
        """Add ``v`` to the span; return True if the rank grew."""
        v, combo = self._prepare(v, tag)
        v, combo = self._reduce(v, combo)
        if not v:
            return False
        c = min(v)
        mod = self.mod
        if mod:
            inv = pow(v[c], -1, mod)
            v = {k: x * inv % mod for k, x in v.items()}
            if combo is not None:
                combo = {k: x * inv % mod for k, x in combo.items()}
        elif v[c] < 0:
            v = {k: -x for k, x in v.items()}
            if combo is not None:
                combo = {k: -x for k, x in combo.items()}
        for pc, r in self.rows.items():
            e = r.get(c)
            if not e:
                continue
            cb = self.combos.get(pc)
            if mod:
                _axpy(r, -e, v, mod)
                if cb is not None:
                    _axpy(cb, -e, combo, mod)
                continue
            p = v[c]
            if p != 1:
                for k in r:
                    r[k] *= p
                if cb is not None:
                    for k in cb:
                        cb[k] *= p
            _axpy(r, -e, v)
            if cb is not None:
                _axpy(cb, -e, combo)
            g = _content(r)
            if g > 1:
                for k in r:
                    r[k] //= g
                if cb is not None:
                    for k in cb:
                        cb[k] /= g
        self.rows[c] = v
        if combo is not None:
            self.combos[c] = combo
        return True

    def contains(self, v: dict) -> bool:
        vec, _ = self._prepare(v, None)
        vec, _ = self._reduce(vec, None)
        return not vec

    def express(self, v: dict):
        """Coefficients ``{tag: coeff}`` with ``sum coeff * inserted[tag] == v``.

        Returns None when ``v`` is not in the span. Requires ``track=True``.
        """
        if not self.track:
            raise ValueError("express() needs a tracking echelon")
        sentinel = object()
        vec, combo = self._prepare(v, sentinel)
        vec, combo = self._reduce(vec, combo)
        if vec:
            return None
        lam = combo.pop(sentinel)
        if self.mod:
            f = -pow(lam, -1, self.mod)
            return {t: c * f % self.mod for t, c in combo.items() if c * f % self.mod}
        return {t: -c / lam for t, c in combo.items() if c}

    def basis(self) -> list[dict]:
        return [dict(self.rows[c]) for c in sorted(self.rows)]

    def contains_all(self, other: "FieldEchelon") -> bool:
        return all(self.contains(r) for r in other.rows.values())

    def same_span(self, other: "FieldEchelon") -> bool:
        return self.rank == other.rank and self.contains_all(other)


class IntegerLattice:
    """Row-style Hermite normal form of a sublattice of Z^n, built incrementally.

    Pivots are positive; entries of a row in another row's pivot column are
    reduced into ``[0, pivot)``. The basis is therefore canonical: two
    lattices are equal iff their ``rows`` dicts are equal.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _prepare(self, v: dict, tag):
        vec, mult = _integerize(v)
        return vec, ({tag: mult} if self.track else None)

    def _reduce_after(self, row: dict, combo: dict | None, c: int) -> None:
        rows, combos = self.rows, self.combos
        heap = [k for k in row if k > c and k in rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            e = row.get(k)
            if not e:
                continue
            r = rows[k]
            q = e // r[k]
            if not q:
                continue
            _axpy(row, -q, r)
            if combo is not None:
                _axpy(combo, -q, combos[k])
            for j in r:
                if j > k and j in rows and j not in seen:
                    heapq.heappush(heap, j)

    def _install(self, c: int, row: dict, combo: dict | None) -> None:
        self._reduce_after(row, combo, c)
        self.rows[c] = row
        if combo is not None:
            self.combos[c] = combo
        p = row[c]
        for pc, r in self.rows.items():
            if pc >= c:
                continue
            e = r.get(c)
            if e is None or 0 <= e < p:
                continue
            cb = self.combos.get(pc)
            q = e // p
            _axpy(r, -q, row)
            if cb is not None:
                _axpy(cb, -q, combo)
            self._reduce_after(r, cb, c)

    def insert(self, v: dict, tag: Hashable = None) -> bool:
        """Add ``v`` to the lattice; return True if the lattice grew."""
        v, combo = self._prepare(v, tag)
        track = combo is not None
        grew = False
        rows = self.rows
        while v:
            c = min(v)
            r = rows.get(c)
            e = v[c]
            if r is None:
                if e < 0:
                    v = {k: -x for k, x in v.items()}
                    if track:
                        combo = {k: -x for k, x in combo.items()}
                self._install(c, v, combo)
                return True
            p = r[c]
            q, rem = divmod(e, p)
            if not rem:
                _axpy(v, -q, r)
                if track:
                    _axpy(combo, -q, self.combos[c])
                continue
            g, s, t = xgcd(p, e)
            a, b = e // g, p // g
            new_r = _lincomb(s, r, t, v)
            new_v = _lincomb(a, r, -b, v)
            if track:
                cr = self.combos[c]
                new_cr = _lincomb(s, cr, t, combo)
                combo = _lincomb(a, cr, -b, combo)
            else:
                new_cr = None
            self._install(c, new_r, new_cr)
            grew = True
            v = new_v
        return grew

    def solve(self, v: dict):
        """Rational coordinates of ``v`` in the HNF basis, or None if ``v`` is
        outside the Q-span. Returns ``{pivot_col: Fraction}``."""
        v = {k: Fraction(c) for k, c in v.items() if c}
        coords = {}
        rows = self.rows
        while v:
            c = min(v)
            r = rows.get(c)
            if r is None:
                return None
            a = v[c] / r[c]
            coords[c] = a
            _axpy(v, -a, r)
        return coords

    def torsion_index(self, v: dict) -> int | None:
        """Smallest ``k >= 1`` with ``k*v`` in the lattice, or None."""
        coords = self.solve(v)
        if coords is None:
            return None
        k = 1
        for a in coords.values():
            k = lcm(k, a.denominator)
        return k

    def contains(self, v: dict) -> bool:
        return self.torsion_index(v) == 1

    def express_multiple(self, v: dict, k: int) -> dict:
        """Integer coefficients ``{tag: c}`` with ``sum c * inserted[tag] == k*v``.

        ``k*v`` must lie in the lattice. Requires ``track=True``.
        """
        if not self.track:
            raise ValueError("express_multiple() needs a tracking lattice")
        coords = self.solve({j: k * c for j, c in v.items()})
        if coords is None:
            raise NotInSpan("vector is not in the rational span")
        out: dict = {}
        for c, a in coords.items():
            if a.denominator != 1:
                raise NotInSpan(f"{k} * v is not in the lattice")
            _axpy(out, int(a), self.combos[c])
        return out

    def basis(self) -> list[dict]:
        return [dict(self.rows[c]) for c in sorted(self.rows)]

    def contains_all(self, other: "IntegerLattice") -> bool:
        return all(self.contains(r) for r in other.rows.values())

    def same_span(self, other: "IntegerLattice") -> bool:
        return self.rows == other.rows


def _is_power_of_3(k: int) -> bool:
    while k % 3 == 0:
        k //= 3
    return k == 1


class Loc3Lattice(IntegerLattice):
    """A Z[1/3]-submodule of Q^n, stored as a Z-lattice.

    Membership means some ``3^m * v`` lies in the integer lattice, i.e. the
    torsion index of ``v`` is a power of 3.
    """

    def contains(self, v: dict) -> bool:
        k = self.torsion_index(v)
        return k is not None and _is_power_of_3(k)

    def _pivot_product(self) -> int:
        prod = 1
        for c, r in self.rows.items():
            prod *= r[c]
        return prod

    def insert(self, v: dict, tag: Hashable = None) -> bool:
        """Add ``v``; return True if the Z[1/3]-module grew."""
        rank, det = self.rank, self._pivot_product()
        if not super().insert(v, tag):
            return False
        if self.rank > rank:
            return True
        # same rank, same pivot columns: the index of the old lattice in the
        # new one is the ratio of pivot products
        return not _is_power_of_3(det // self._pivot_product())

    def same_span(self, other: "IntegerLattice") -> bool:
        return self.rank == other.rank and self.contains_all(other) and other.contains_all(self)

    def contains_all(self, other: "IntegerLattice") -> bool:
        return all(self.contains(r) for r in other.rows.values())


def span_structure(ring: RingSpec, track: bool = False):
    """The incremental span structure matching ``ring``."""
    if ring.is_field:
        return FieldEchelon(ring, track)
    if ring.kind is RingKind.INTEGERS:
        return IntegerLattice(track)
    return Loc3Lattice(track)


# -- batch operations ---------------------------------------------------------


def rank_over_field(m: SparseMat) -> int:
    ech = FieldEchelon(m.ring)
    for row in m.rows:
        ech.insert(row)
    return ech.rank


def solve_in_rowspan(m: SparseMat, v: dict) -> list:
    """Coefficients ``c`` (one per row) with ``sum c[i] * rows[i] == v``."""
    ech = FieldEchelon(m.ring, track=True)
    for i, row in enumerate(m.rows):
        ech.insert(row, i)
    sol = ech.express(v)
    if sol is None:
        raise NotInSpan("vector is not in the row span")
    zero = m.ring.zero
    return [m.ring.coerce(sol[i]) if i in sol else zero for i in range(len(m.rows))]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if not a:
        return []
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _transpose(a: list[list[int]], ncols: int) -> list[list[int]]:
    return [list(col) for col in zip(*a)] if a else [[] for _ in range(ncols)]


def det_int(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free)."""
    n = len(a)
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass
class HermiteResult:
    H: list[list[int]]
    U: list[list[int]]
    pivots: list[int] = field(default_factory=list)


@dataclass
class SmithResult:
    diagonal: list[int]
    U: list[list[int]]
    V: list[list[int]]


def _hnf_dense(a: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row HNF of a dense integer matrix; returns (H_full, U, pivots)."""
    a = [list(r) for r in a]
    m = len(a)
    u = _identity(m)
    r = 0
    pivots = []
    for col in range(ncols):
        if r == m:
            break
        while True:
            cand = [i for i in range(r, m) if a[i][col]]
            if not cand:
                break
            piv = min(cand, key=lambda i: (abs(a[i][col]), i))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                u[r], u[piv] = u[piv], u[r]
            p = a[r][col]
            done = True
            for i in range(r + 1, m):
                if a[i][col]:
                    q = a[i][col] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][col]
        for i in range(r):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(col)
        r += 1
    return a, u, pivots


def hermite_normal_form(m: SparseMat) -> HermiteResult:
    """Row-style HNF ``H`` with unimodular ``U`` such that ``U*A`` is ``H``
    followed by zero rows. Zero rows are dropped from ``H``."""
    if m.ring.kind is not RingKind.INTEGERS:
        raise ValueError("hermite_normal_form needs an integer matrix")
    a = m.to_dense()
    full, u, pivots = _hnf_dense(a, m.ncols)
    if _matmul(u, a) != full or abs(det_int(u)) != 1:
        raise AssertionError("HNF certificate failed to verify")
    return HermiteResult(full[: len(pivots)], u, pivots)


def _is_diagonal(a: list[list[int]]) -> bool:
    return all(not x or i == j for i, row in enumerate(a) for j, x in enumerate(row))


def smith_normal_form(m: SparseMat) -> SmithResult:
    """Smith form via alternating HNF of the matrix and its transpose.

    Returns the nonzero invariant factors ``d1 | d2 | ...`` and unimodular
    ``U``, ``V`` with ``U*A*V`` diagonal.
    """
    if m.ring.kind is not RingKind.INTEGERS:
        raise ValueError("smith_normal_form needs an integer matrix")
    a0 = m.to_dense()
    nr, nc = len(a0), m.ncols
    if not nr or not nc:
        return SmithResult([], _identity(nr), _identity(nc))
    d = [list(r) for r in a0]
    U, V = _identity(nr), _identity(nc)
    while True:
        while not _is_diagonal(d):
            d, u1, _ = _hnf_dense(d, nc)
            U = _matmul(u1, U)
            if _is_diagonal(d):
                break
            dt, v1, _ = _hnf_dense(_transpose(d, nc), nr)
            d = _transpose(dt, nr)
            V = _matmul(V, _transpose(v1, nc))
        diag = [d[i][i] for i in range(min(nr, nc))]
        bad = next(((i, j) for i in range(len(diag)) for j in range(i + 1, len(diag))
                    if diag[i] and diag[j] % diag[i]), None)
        if bad is None:
            break
        i, j = bad
        # column_i += column_j brings d_j into row j's gcd with d_i
        for row in d:
            row[i] += row[j]
        for row in V:
            row[i] += row[j]
    # sign normalize and move zeros to the end
    for i in range(min(nr, nc)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            U[i] = [-x for x in U[i]]
    order = sorted(range(min(nr, nc)), key=lambda i: d[i][i] == 0)
    if order != list(range(min(nr, nc))):
        perm_rows = order + list(range(min(nr, nc), nr))
        perm_cols = order + list(range(min(nr, nc), nc))
        d = [[d[r][c] for c in perm_cols] for r in perm_rows]
        U = [U[r] for r in perm_rows]
        V = [[row[c] for c in perm_cols] for row in V]
    diag = [d[i][i] for i in range(min(nr, nc)) if d[i][i]]
    if _matmul(_matmul(U, a0), V) != d:
        raise AssertionError("SNF certificate failed to verify")
    if abs(det_int(U)) != 1 or abs(det_int(V)) != 1:
        raise AssertionError("SNF transforms are not unimodular")
    if any(diag[i + 1] % diag[i] for i in range(len(diag) - 1)):
        raise AssertionError("SNF divisibility chain broken")
    return SmithResult(diag, U, V)


def torsion_index(rows: SparseMat, v: dict) -> int | None:
    """Smallest ``k >= 1`` with ``k*v`` in the integer row lattice, else None."""
    if rows.ring.kind is not RingKind.INTEGERS:
        raise ValueError("torsion_index needs an integer matrix")
    lat = IntegerLattice()
    for row in rows.rows:
        lat.insert(row)
    return lat.torsion_index(v)


def dense_rank(rows: Iterable[Sequence], ring: RingSpec = QQ) -> int:
    """Textbook Gaussian elimination rank; kept independent of the sparse engine."""
    a = [[Fraction(x) for x in r] for r in rows]
    mod = ring.modulus
    if mod:
        a = [[int(x) % mod for x in r] for r in a]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                if mod:
                    f = a[i][col] * pow(a[rank][col], -1, mod) % mod
                    a[i] = [(x - f * y) % mod for x, y in zip(a[i], a[rank])]
                else:
                    f = a[i][col] / a[rank][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
