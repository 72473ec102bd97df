"""Two-sided ideals of the free algebra, one multidegree component at a time.

All generating families used here are multidegree-homogeneous, so the
component of the ideal at multidegree ``mu`` is spanned by the products
``a * g * b`` with words ``a``, ``b`` and ``mdeg(a) + mdeg(g) + mdeg(b) == mu``.
Membership of a homogeneous element is therefore a finite linear algebra
question in that component alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .coeff import RingKind, RingSpec, Scalar
from .freealg import Poly, Word, left_normed_commutator, render
from .linexact import SparseMat, span_structure

MultiDegree = tuple


class InhomogeneousError(ValueError):
    pass


# -- words and components -------------------------------------------------------


@lru_cache(maxsize=None)
def words_of_multidegree(mu: MultiDegree) -> tuple[Word, ...]:
    """All words with exponent vector ``mu``, in lexicographic order."""
    total = sum(mu)
    out: list[Word] = []
    counts = list(mu)
    buf: list[int] = []

    def rec():
        if len(buf) == total:
            out.append(tuple(buf))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                buf.append(i)
                rec()
                buf.pop()
                counts[i] += 1

    rec()
    return tuple(out)


def component_basis(generator_count: int, mu: MultiDegree) -> list[Word]:
    if len(mu) != generator_count:
        raise ValueError(f"multidegree {mu} does not match {generator_count} generators")
    return list(words_of_multidegree(tuple(mu)))


def subdegrees(mu: MultiDegree) -> Iterator[MultiDegree]:
    """All ``nu <= mu`` entrywise, in lexicographic order."""
    return product(*(range(m + 1) for m in mu))


def leq(nu: MultiDegree, mu: MultiDegree) -> bool:
    return all(a <= b for a, b in zip(nu, mu))


def poly_multidegree(p: Poly, generator_count: int) -> MultiDegree:
    """The multidegree of a nonzero homogeneous polynomial."""
    degs = p.multidegrees(generator_count)
    if len(degs) != 1:
        raise InhomogeneousError(f"{render(p)} is not multidegree-homogeneous")
    return degs.pop()


@lru_cache(maxsize=None)
def _borders(r: MultiDegree) -> tuple[tuple[Word, Word], ...]:
    """All ``(a, b)`` with ``mdeg(a) + mdeg(b) == r``, ordered by ``a`` then ``b``."""
    pairs = []
    for u in words_of_multidegree(r):
        for i in range(len(u) + 1):
            pairs.append((u[:i], u[i:]))
    pairs.sort(key=lambda ab: (len(ab[0]), ab[0], len(ab[1]), ab[1]))
    return tuple(pairs)


@dataclass
class ComponentRows:
    """Spanning rows of an ideal component with their provenance.

    ``origin[i] = (a, gen_index, b)`` means ``rows[i] == coords(a * gens[gen_index] * b)``.
    """

    mu: MultiDegree
    basis: list[Word]
    rows: list[dict]
    origin: list[tuple[Word, int, Word]]
    ring: RingSpec

    def matrix(self) -> SparseMat:
        return SparseMat(self.rows, len(self.basis), self.ring)


def component_rows(gens: Sequence[Poly], mu: MultiDegree, ring: RingSpec | None = None,
                   dedup: bool = True) -> ComponentRows:
    mu = tuple(mu)
    g = len(mu)
    if ring is None:
        ring = gens[0].ring if gens else None
    basis = list(words_of_multidegree(mu))
    col = {w: i for i, w in enumerate(basis)}
    rows: list[dict] = []
    origin = []
    seen: set = set()
    mod = ring.modulus if ring is not None else None
    for gi, gen in enumerate(gens):
        if not gen:
            continue
        if ring is not None and gen.ring != ring:
            raise ValueError(f"generator {gi} is over {gen.ring}, expected {ring}")
        nu = poly_multidegree(gen, g)
        if not leq(nu, mu):
            continue
        r = tuple(m - n for m, n in zip(mu, nu))
        terms = list(gen.terms.items())
        for a, b in _borders(r):
            row = {col[a + w + b]: c for w, c in terms}
            if dedup:
                lead = row[min(row)]
                if mod:
                    inv = pow(lead, -1, mod)
                    key = frozenset((k, v * inv % mod) for k, v in row.items())
                elif lead < 0:
                    key = frozenset((k, -v) for k, v in row.items())
                else:
                    key = frozenset(row.items())
                if key in seen:
                    continue
                seen.add(key)
            rows.append(row)
            origin.append((a, gi, b))
    return ComponentRows(mu, basis, rows, origin, ring)


def spanning_vectors(gens: Sequence[Poly], mu: MultiDegree) -> SparseMat:
    """Coordinate rows of all ``a * g * b`` in component ``mu`` (deduplicated)."""
    return component_rows(gens, mu).matrix()


def coordinates(p: Poly, mu: MultiDegree) -> dict:
    col = {w: i for i, w in enumerate(words_of_multidegree(tuple(mu)))}
    try:
        return {col[w]: c for w, c in p.terms.items()}
    except KeyError:
        raise InhomogeneousError(f"{render(p)} has terms outside component {mu}") from None


def build_component(gens: Sequence[Poly], mu: MultiDegree, ring: RingSpec, track: bool = False):
    """Span structure (echelon or lattice) of the ideal component at ``mu``."""
    comp = component_rows(gens, mu, ring)
    span = span_structure(ring, track)
    for i, row in enumerate(comp.rows):
        span.insert(row, i)
    return comp, span


# -- the brute-force T^(n) family ----------------------------------------------


@lru_cache(maxsize=None)
def _nonunit_words_upto(mu: MultiDegree) -> tuple[Word, ...]:
    out = []
    for nu in subdegrees(mu):
        if any(nu):
            out.extend(words_of_multidegree(nu))
    out.sort(key=lambda w: (len(w), w))
    return tuple(out)


def _word_tuples(n: int, mu: MultiDegree) -> Iterator[tuple[Word, ...]]:
    """n-tuples of nonunit words whose multidegrees sum to at most ``mu``."""
    if n == 0:
        yield ()
        return
    if sum(mu) < n:
        return
    for w in _nonunit_words_upto(mu):
        if len(w) > sum(mu) - (n - 1):
            break
        rest = list(mu)
        for x in w:
            rest[x] -= 1
        for tail in _word_tuples(n - 1, tuple(rest)):
            yield (w,) + tail


@lru_cache(maxsize=None)
def _tideal_cached(n: int, mu: MultiDegree, ring: RingSpec) -> tuple[Poly, ...]:
    seen = set()
    out = []
    for ws in _word_tuples(n, mu):
        if (len(ws[0]), ws[0]) >= (len(ws[1]), ws[1]):
            # [m2, m1, ...] = -[m1, m2, ...]; [m, m, ...] = 0
            continue
        p = left_normed_commutator([Poly.word(w, ring) for w in ws])
        if not p:
            continue
        key = _sign_key(p)
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return tuple(out)


def _sign_key(p: Poly):
    lead = min(p.terms, key=lambda w: (len(w), w))
    c = p.terms[lead]
    ring = p.ring
    if ring.modulus:
        inv = pow(c, -1, ring.modulus)
        return frozenset((w, v * inv % ring.modulus) for w, v in p.terms.items())
    if c < 0:
        return frozenset((w, -v) for w, v in p.terms.items())
    return frozenset(p.terms.items())


def tideal_generators(n: int, generator_count: int, mu: MultiDegree, ring: RingSpec) -> list[Poly]:
    """All ``[m1, ..., mn]`` over nonunit words with total multidegree <= ``mu``.

    Sign duplicates and zero brackets are removed. Restricting the arguments
    to words loses nothing: the bracket is multilinear and words span A.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    mu = tuple(mu)
    if len(mu) != generator_count:
        raise ValueError(f"multidegree {mu} does not match {generator_count} generators")
    return list(_tideal_cached(n, mu, ring))


# -- membership ------------------------------------------------------------------


class Verdict(str, enum.Enum):
    MEMBER = "member"
    NONMEMBER = "nonmember"
    TORSION = "torsion"


@dataclass
class MembershipCertificate:
    verdict: Verdict
    target: Poly
    torsion_index: int | None = None
    witness: list[tuple[Scalar, Word, int, Word]] = field(default_factory=list)
    rank_data: dict | None = None

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.MEMBER or (self.verdict is Verdict.TORSION and self.torsion_index == 1)

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        def word(w):
            return "*".join(names[x] if names else f"x{x + 1}" for x in w) or "1"

        out = {"verdict": self.verdict.value, "target": render(self.target, names)}
        if self.torsion_index is not None:
            out["torsion_index"] = self.torsion_index
        if self.witness:
            out["witness"] = [[str(c), word(a), gi, word(b)] for c, a, gi, b in self.witness]
        if self.rank_data is not None:
            out["rank_data"] = dict(self.rank_data)
        return out


def expand_witness(witness, gens: Sequence[Poly], ring: RingSpec) -> Poly:
    terms: dict = {}
    for c, a, gi, b in witness:
        for w, v in gens[gi].terms.items():
            key = a + w + b
            terms[key] = terms.get(key, 0) + c * v
    return Poly(ring, terms)


def _witness_from_combo(combo: dict, comp: ComponentRows, ring: RingSpec) -> list:
    witness = []
    for i in sorted(combo):
        a, gi, b = comp.origin[i]
        c = ring.coerce(combo[i])
        if c:
            witness.append((c, a, gi, b))
    return witness


def _target_component(target: Poly, generator_count: int | None) -> MultiDegree:
    if generator_count is None:
        generator_count = 1 + max((max(w) for w in target.terms if w), default=-1)
    return poly_multidegree(target, generator_count)


def _check_witness(cert: MembershipCertificate, gens, ring, multiple) -> None:
    expected = cert.target.scale(multiple)
    if expand_witness(cert.witness, gens, ring) != expected:
        raise AssertionError("membership witness does not re-expand to the target")


def member(target: Poly, gens: Sequence[Poly], generator_count: int | None = None,
           mu: MultiDegree | None = None) -> MembershipCertificate:
    """Decide whether a homogeneous ``target`` lies in the ideal generated by ``gens``.

    Over a field this is a span question, over Z lattice membership, and over
    Z[1/3] lattice membership of some ``3^m * target``. A zero target is
    trivially a member; pass ``mu`` to place it in a component.
    """
    ring = target.ring
    if mu is None:
        if not target:
            return MembershipCertificate(Verdict.MEMBER, target)
        mu = _target_component(target, generator_count)
    mu = tuple(mu)
    comp, span = build_component(gens, mu, ring, track=True)
    v = coordinates(target, mu)
    rank_data = {"component": list(mu), "dimension": len(comp.basis), "rows": len(comp.rows), "rank": span.rank}
    if ring.is_field:
        combo = span.express(v)
        if combo is None:
            rank_data["rank_with_target"] = span.rank + 1
            return MembershipCertificate(Verdict.NONMEMBER, target, rank_data=rank_data)
        cert = MembershipCertificate(Verdict.MEMBER, target, witness=_witness_from_combo(combo, comp, ring),
                                     rank_data=rank_data)
        _check_witness(cert, gens, ring, 1)
        return cert
    k = span.torsion_index(v)
    rank_data["torsion_index"] = k
    if k is None:
        rank_data["rank_with_target"] = span.rank + 1
        return MembershipCertificate(Verdict.NONMEMBER, target, rank_data=rank_data)
    if ring.kind is RingKind.INTEGERS:
        if k != 1:
            return MembershipCertificate(Verdict.NONMEMBER, target, torsion_index=k, rank_data=rank_data)
        combo = span.express_multiple(v, 1)
    else:
        m = k
        while m % 3 == 0:
            m //= 3
        if m != 1:
            return MembershipCertificate(Verdict.NONMEMBER, target, torsion_index=k, rank_data=rank_data)
        combo = {t: Fraction(c, k) for t, c in span.express_multiple(v, k).items()}
    cert = MembershipCertificate(Verdict.MEMBER, target, witness=_witness_from_combo(combo, comp, ring),
                                 rank_data=rank_data)
    _check_witness(cert, gens, ring, 1)
    return cert


def torsion_member(target: Poly, gens: Sequence[Poly], generator_count: int | None = None) -> MembershipCertificate:
    """Smallest ``k >= 1`` with ``k * target`` in the integer ideal, with witness."""
    ring = target.ring
    if ring.kind is not RingKind.INTEGERS:
        raise ValueError("torsion_member works over the integers")
    mu = _target_component(target, generator_count)
    comp, span = build_component(gens, mu, ring, track=True)
    v = coordinates(target, mu)
    k = span.torsion_index(v)
    rank_data = {"component": list(mu), "dimension": len(comp.basis), "rows": len(comp.rows), "rank": span.rank}
    if k is None:
        rank_data["rank_with_target"] = span.rank + 1
        return MembershipCertificate(Verdict.NONMEMBER, target, rank_data=rank_data)
    combo = span.express_multiple(v, k)
    cert = MembershipCertificate(Verdict.TORSION, target, torsion_index=k,
                                 witness=_witness_from_combo(combo, comp, ring), rank_data=rank_data)
    _check_witness(cert, gens, ring, k)
    return cert


def span_equal(gens_a: Sequence[Poly], gens_b: Sequence[Poly], mu: MultiDegree, ring: RingSpec | None = None) -> bool:
    """Do the two families generate the same component ``mu`` of their ideals?"""
    if ring is None:
        ring = (gens_a or gens_b)[0].ring
    _, a = build_component(gens_a, mu, ring)
    _, b = build_component(gens_b, mu, ring)
    return a.same_span(b)


def contains_component(big: Sequence[Poly], small: Sequence[Poly], mu: MultiDegree, ring: RingSpec) -> bool:
    """Is the ``mu`` component of the ideal of ``small`` inside that of ``big``?"""
    _, a = build_component(big, mu, ring)
    _, b = build_component(small, mu, ring)
    return a.contains_all(b)
