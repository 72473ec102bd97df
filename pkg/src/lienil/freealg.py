"""The free unital associative algebra R<X> over an exact coefficient ring.

Words are tuples of generator indices (``()`` is the unit monomial).
Polynomials are immutable sparse maps from words to canonical scalars.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .coeff import RingMismatch, RingKind, RingSpec, Scalar

Word = tuple  # tuple[int, ...]


def word_key(w: Word) -> tuple:
    """Degree-lexicographic sort key: shorter words first, then by letters."""
    return (len(w), w)


class Poly:
    """A sparse polynomial in the free algebra.

    ``terms`` maps words to nonzero canonical scalars of ``ring``. The
    mapping must not be mutated after construction.
    """

    __slots__ = ("terms", "ring", "_hash")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for w, c in items:
                w = tuple(w)
                if any(type(x) is not int or x < 0 for x in w):
                    raise ValueError(f"malformed word {w!r}")
                c = ring.coerce(c)
                if c:
                    c = ring.coerce(clean.get(w, 0) + c)
                    if c:
                        clean[w] = c
                    else:
                        clean.pop(w, None)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ring: RingSpec) -> "Poly":
        return cls._raw(ring, {})

    @classmethod
    def one(cls, ring: RingSpec) -> "Poly":
        return cls._raw(ring, {(): ring.one})

    @classmethod
    def gen(cls, i: int, ring: RingSpec) -> "Poly":
        return cls._raw(ring, {(i,): ring.one})

    @classmethod
    def word(cls, w: Sequence[int], ring: RingSpec, coeff=1) -> "Poly":
        return cls(ring, {tuple(w): coeff})

    # -- inspection -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        """Terms in canonical (degree-lex) order."""
        for w in sorted(self.terms, key=word_key):
            yield w, self.terms[w]

    def coefficient(self, w: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(w), self.ring.zero)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({render(self)!r}, ring={self.ring})"

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def multidegrees(self, generator_count: int) -> set[tuple[int, ...]]:
        return {multidegree(w, generator_count) for w in self.terms}

    def is_homogeneous(self, generator_count: int | None = None) -> bool:
        if generator_count is None:
            generator_count = 1 + max((max(w) for w in self.terms if w), default=-1)
        return len(self.multidegrees(generator_count)) <= 1

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly(self.ring, {(): other})

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        return Poly._raw(self.ring, _combine(self.terms, other.terms, 1, self.ring))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        return Poly._raw(self.ring, _combine(self.terms, other.terms, -1, self.ring))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        ring = self.ring
        c = ring.coerce(c)
        if not c:
            return Poly.zero(ring)
        if ring.kind is RingKind.PRIME_FIELD:
            p = ring.modulus
            return Poly._raw(ring, {w: v * c % p for w, v in self.terms.items()})
        return Poly._raw(ring, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        mod = ring.modulus
        out: dict = {}
        get = out.get
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = get(w, 0) + c1 * c2
        if mod:
            out = {w: c % mod for w, c in out.items() if c % mod}
        else:
            out = {w: c for w, c in out.items() if c}
        return Poly._raw(ring, out)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def shift(self, left: Word = (), right: Word = ()) -> "Poly":
        """Return ``left * self * right`` for words ``left`` and ``right``."""
        return Poly._raw(self.ring, {left + w + right: c for w, c in self.terms.items()})


def _combine(a: dict, b: dict, sign: int, ring: RingSpec) -> dict:
    out = dict(a)
    mod = ring.modulus
    for w, c in b.items():
        v = out.get(w, 0) + sign * c
        if mod:
            v %= mod
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def commutator(p: Poly, q: Poly) -> Poly:
    return p * q - q * p


def left_normed_commutator(args: Sequence[Poly]) -> Poly:
    """``[a1, ..., an] = [[a1, ..., a(n-1)], an]`` with ``[a, b] = ab - ba``."""
    if len(args) < 2:
        raise ValueError("a commutator needs at least two arguments")
    acc = args[0]
    for q in args[1:]:
        acc = commutator(acc, q)
    return acc


def multidegree(w: Sequence[int], generator_count: int) -> tuple[int, ...]:
    exps = [0] * generator_count
    for x in w:
        if not 0 <= x < generator_count:
            raise ValueError(f"letter {x} out of range for {generator_count} generators")
        exps[x] += 1
    return tuple(exps)


def homogeneous_components(p: Poly, generator_count: int | None = None) -> dict[tuple, Poly]:
    if generator_count is None:
        generator_count = 1 + max((max(w) for w in p.terms if w), default=-1)
    parts: dict[tuple, dict] = {}
    for w, c in p.terms.items():
        parts.setdefault(multidegree(w, generator_count), {})[w] = c
    return {mu: Poly._raw(p.ring, t) for mu, t in sorted(parts.items())}


def render(p: Poly, names: Sequence[str] | None = None) -> str:
    """Render terms in canonical order, e.g. ``"x1*x2 - x2*x1"``.

    Generator ``i`` is named ``names[i]`` (default ``x{i+1}``).
    """
    if not p.terms:
        return "0"
    ring = p.ring
    half = ring.modulus // 2 if ring.kind is RingKind.PRIME_FIELD else None
    out = []
    for w, c in p:
        if half is not None and c > half:
            c -= ring.modulus
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        word = "*".join(names[x] if names else f"x{x + 1}" for x in w)
        if not word:
            body = str(mag)
        elif mag == 1:
            body = word
        else:
            body = f"{mag}*{word}"
        if out:
            out.append(f" {sign} {body}")
        else:
            out.append(body if sign == "+" else f"-{body}")
    return "".join(out)


# -- expansion identities ----------------------------------------------------


def _prod(ps: Iterable[Poly], ring: RingSpec) -> Poly:
    acc = Poly.one(ring)
    for p in ps:
        acc = acc * p
    return acc


def _prod_once(a: Sequence[Poly], b: Poly) -> Poly:
    ring = b.ring
    total = Poly.zero(ring)
    for i in range(len(a)):
        total = total + _prod(a[:i], ring) * commutator(a[i], b) * _prod(a[i + 1 :], ring)
    return total


def _prod_twice(a: Sequence[Poly], b1: Poly, b2: Poly) -> Poly:
    ring = b1.ring
    k = len(a)
    total = Poly.zero(ring)
    for i in range(k):
        total = total + _prod(a[:i], ring) * left_normed_commutator([a[i], b1, b2]) * _prod(a[i + 1 :], ring)
    for i, j in combinations(range(k), 2):
        head, mid, tail = _prod(a[:i], ring), _prod(a[i + 1 : j], ring), _prod(a[j + 1 :], ring)
        cross = (commutator(a[i], b1) * mid * commutator(a[j], b2)
                 + commutator(a[i], b2) * mid * commutator(a[j], b1))
        total = total + head * cross * tail
    return total


def _prod2_thrice(a1: Poly, a2: Poly, b1: Poly, b2: Poly, b3: Poly) -> Poly:
    c = left_normed_commutator
    return (a1 * c([a2, b1, b2, b3])
            + c([a1, b1]) * c([a2, b2, b3])
            + c([a1, b2]) * c([a2, b1, b3])
            + c([a1, b3]) * c([a2, b1, b2])
            + c([a1, b1, b2]) * c([a2, b3])
            + c([a1, b1, b3]) * c([a2, b2])
            + c([a1, b2, b3]) * c([a2, b1])
            + c([a1, b1, b2, b3]) * a2)


def _id_prod2_once(args):
    a1, a2, b = args
    return commutator(a1 * a2, b), _prod_once([a1, a2], b)


def _id_prodk_once(args):
    *a, b = args
    return commutator(_prod(a, b.ring), b), _prod_once(a, b)


def _id_prod2_twice(args):
    a1, a2, b1, b2 = args
    return left_normed_commutator([a1 * a2, b1, b2]), _prod_twice([a1, a2], b1, b2)


def _id_prodk_twice(args):
    *a, b1, b2 = args
    return left_normed_commutator([_prod(a, b1.ring), b1, b2]), _prod_twice(a, b1, b2)


def _id_prod2_thrice(args):
    a1, a2, b1, b2, b3 = args
    return left_normed_commutator([a1 * a2, b1, b2, b3]), _prod2_thrice(a1, a2, b1, b2, b3)


# name -> (builder, exact arity or None, minimum arity)
IDENTITIES = {
    "prod2_once": (_id_prod2_once, 3, 3),
    "prodk_once": (_id_prodk_once, None, 2),
    "prod2_twice": (_id_prod2_twice, 4, 4),
    "prodk_twice": (_id_prodk_twice, None, 3),
    "prod2_thrice": (_id_prod2_thrice, 5, 5),
}


def identity_instance(name: str, args: Sequence[Poly]) -> tuple[Poly, Poly]:
    """Both sides of a named product-expansion identity at ``args``.

    ``prodk_once`` takes ``a1, ..., ak, b``; ``prodk_twice`` takes
    ``a1, ..., ak, b1, b2``.
    """
    try:
        builder, arity, min_arity = IDENTITIES[name]
    except KeyError:
        raise ValueError(f"unknown identity {name!r}") from None
    if (arity is not None and len(args) != arity) or len(args) < min_arity:
        raise ValueError(f"identity {name!r} got {len(args)} arguments")
    return builder(list(args))


def rewrite_as_right_letter_commutators(w1: Sequence[int], w2: Sequence[int]) -> list[tuple[int, Word, int]]:
    """Telescope ``[w1, w2]`` into commutators ``[d, x]`` with ``x`` a letter.

    Returns ``(coeff, d, x)`` triples; the sum of ``coeff * [d, x]`` equals
    ``[w1, w2]``. For ``w2 = z1...zl`` the j-th term is
    ``[z(j+1)...zl w1 z1...z(j-1), zj]``.
    """
    y, z = tuple(w1), tuple(w2)
    if any(type(x) is not int or x < 0 for x in y + z):
        raise ValueError("words must be sequences of generator indices")
    return [(1, z[j + 1 :] + y + z[:j], z[j]) for j in range(len(z) - 1, -1, -1)]


def expand_right_letter_commutators(terms, ring: RingSpec) -> Poly:
    total = Poly.zero(ring)
    for c, d, x in terms:
        total = total + commutator(Poly.word(d, ring), Poly.gen(x, ring)).scale(c)
    return total

