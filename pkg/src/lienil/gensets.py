"""Named generating families for commutator ideals of the free algebra.

Every constructor takes the number of generators ``g`` (the letters are
``0..g-1``) and a coefficient ring, and returns homogeneous polynomials.
Substitutions range over all tuples of letters, repetition allowed. An
optional ``bound`` multidegree skips substitutions whose multidegree
exceeds it; those elements cannot contribute to any component below the
bound, so results for such components are unchanged.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .coeff import RingSpec
from .freealg import Poly, Word, commutator, left_normed_commutator
from .ideal import _nonunit_words_upto, _sign_key, poly_multidegree, tideal_generators

C = left_normed_commutator


def _fits(words: Iterable[Word], bound, extra=None) -> bool:
    if bound is None:
        return True
    counts = Counter()
    for w in words:
        counts.update(w)
    if extra:
        for i, e in enumerate(extra):
            counts[i] += e
    return all(counts[i] <= b for i, b in enumerate(bound)) and all(i < len(bound) for i in counts)


def _letters(g: int, ring: RingSpec) -> list[Poly]:
    return [Poly.gen(i, ring) for i in range(g)]


def x_and_x2(generator_count: int) -> list[Word]:
    """``X`` followed by ``X^2`` (all ordered pairs, squares included)."""
    g = generator_count
    return [(i,) for i in range(g)] + [(i, j) for i in range(g) for j in range(g)]


def prune_family(polys: Iterable[Poly]) -> list[Poly]:
    """Drop zeros and duplicates up to sign (up to any unit over GF(p))."""
    seen = set()
    out = []
    for p in polys:
        if not p:
            continue
        key = _sign_key(p)
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _finish(polys: list[Poly], prune: bool) -> list[Poly]:
    return prune_family(polys) if prune else polys


def _brackets(slots: Sequence[Sequence[Word]], ring: RingSpec, bound) -> list[Poly]:
    """Left-normed brackets over all choices of one word per slot.

    Prefix brackets are shared between choices.
    """
    out: list[Poly] = []

    def rec(i: int, acc: Poly | None, chosen: list[Word]):
        if i == len(slots):
            out.append(acc)
            return
        for w in slots[i]:
            chosen.append(w)
            if _fits(chosen, bound):
                y = Poly.word(w, ring)
                rec(i + 1, y if acc is None else commutator(acc, y), chosen)
            chosen.pop()

    rec(0, None, [])
    return out


def sn_generators(n: int, generator_count: int, ring: RingSpec, bound=None, prune: bool = False) -> list[Poly]:
    """``[y1, ..., yn]`` with ``y1, yn`` in X and the middle entries in X u X^2.

    With ``prune=False`` and no bound the list has exactly
    ``g^2 (g + g^2)^(n-2)`` entries (zeros included).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if generator_count < 1:
        raise ValueError("need at least one generator")
    xs = [(i,) for i in range(generator_count)]
    mid = x_and_x2(generator_count)
    return _finish(_brackets([xs] + [mid] * (n - 2) + [xs], ring, bound), prune)


def sn_variants(n: int, generator_count: int, k: int, ring: RingSpec, bound=None) -> tuple[list[Poly], list[Poly]]:
    """Brackets with a single X^2 entry at position ``k`` (1-based) and the
    same family with the X^2 entry at position 2."""
    if not 2 <= k <= n - 1:
        raise ValueError(f"position k={k} must satisfy 2 <= k <= n-1")
    xs = [(i,) for i in range(generator_count)]
    x2 = [(i, j) for i in range(generator_count) for j in range(generator_count)]

    def family(pos):
        slots = [x2 if i == pos else xs for i in range(1, n + 1)]
        return _brackets(slots, ring, bound)

    return family(k), family(2)


def tn_oracle(n: int, generator_count: int, mu, ring: RingSpec) -> list[Poly]:
    return tideal_generators(n, generator_count, mu, ring)


def _substitute(arity: int, generator_count: int, bound):
    for idx in product(range(generator_count), repeat=arity):
        if _fits([idx], bound):
            yield idx


def latyshev_t3(generator_count: int, ring: RingSpec, bound=None, prune: bool = False) -> list[Poly]:
    x = _letters(generator_count, ring)
    out = [C([x[a], x[b], x[c]]) for a, b, c in _substitute(3, generator_count, bound)]
    for a, b, c, d in _substitute(4, generator_count, bound):
        out.append(C([x[a], x[b]]) * C([x[c], x[d]]) + C([x[a], x[c]]) * C([x[b], x[d]]))
    return _finish(out, prune)


def _t3_pair(x, a, b, c, d) -> Poly:
    return C([x[a], x[b]]) * C([x[c], x[d]]) + C([x[a], x[c]]) * C([x[b], x[d]])


def volichenko_t4(generator_count: int, ring: RingSpec, bound=None, prune: bool = False) -> list[Poly]:
    """The three forms generating T^(4) when 1/3 is in the ring."""
    g = generator_count
    x = _letters(g, ring)
    out = [C([x[a], x[b], x[c], x[d]]) for a, b, c, d in _substitute(4, g, bound)]
    out += [C([x[a], x[b]]) * C([x[c], x[d], x[e]]) for a, b, c, d, e in _substitute(5, g, bound)]
    out += [_t3_pair(x, a, b, c, d) * C([x[e], x[f]]) for a, b, c, d, e, f in _substitute(6, g, bound)]
    return _finish(out, prune)


def integer_t4(generator_count: int, ring: RingSpec, bound=None, prune: bool = False) -> list[Poly]:
    """Generators of T^(4) over an arbitrary ring: two of the 1/3 forms plus
    three bracket-product forms replacing ``[x1,x2][x3,x4,x5]``."""
    g = generator_count
    x = _letters(g, ring)
    out = [C([x[a], x[b], x[c], x[d]]) for a, b, c, d in _substitute(4, g, bound)]
    out += [_t3_pair(x, a, b, c, d) * C([x[e], x[f]]) for a, b, c, d, e, f in _substitute(6, g, bound)]
    out += [C([x[a], x[b], x[c]]) * C([x[d], x[e], x[f]]) for a, b, c, d, e, f in _substitute(6, g, bound)]
    for a, b, c, d, e in _substitute(5, g, bound):
        t = C([x[a], x[b], x[c]]) * C([x[d], x[e]])
        out.append(t + C([x[a], x[b], x[d]]) * C([x[c], x[e]]))
        out.append(t + C([x[a], x[d], x[c]]) * C([x[b], x[e]]))
    return _finish(out, prune)


# -- families attached to an ideal generated by S ------------------------------------


def _check_seed(S: Sequence[Poly], g: int) -> list:
    if not S:
        raise ValueError("the seed set S must be nonempty")
    return [poly_multidegree(s, g) for s in S]


def w_forms(S: Sequence[Poly], generator_count: int, bound=None, forms: Sequence[int] = (1, 2, 3, 4, 5)) -> list[Poly]:
    """Generators of the ideal spanned by ``[u, a1, a2]`` with ``u`` in (S):

    1. ``[s, x1, x2]``
    2. ``s [x1, x2, x3]``
    3. ``[s, x1] [x2, x3, x4]``
    4. ``[s, x1] [x2, x3] + [s, x2] [x1, x3]``
    5. ``s ([x1, x2] [x3, x4] + [x1, x3] [x2, x4])``
    """
    g = generator_count
    degs = _check_seed(S, g)
    out: list[Poly] = []
    for s, sd in zip(S, degs):
        ring = s.ring
        x = _letters(g, ring)

        def subs(arity):
            for idx in product(range(g), repeat=arity):
                if _fits([idx], bound, sd):
                    yield idx

        if 1 in forms:
            out += [C([s, x[a], x[b]]) for a, b in subs(2)]
        if 2 in forms:
            out += [s * C([x[a], x[b], x[c]]) for a, b, c in subs(3)]
        if 3 in forms:
            out += [C([s, x[a]]) * C([x[b], x[c], x[d]]) for a, b, c, d in subs(4)]
        if 4 in forms:
            out += [C([s, x[a]]) * C([x[b], x[c]]) + C([s, x[b]]) * C([x[a], x[c]]) for a, b, c in subs(3)]
        if 5 in forms:
            out += [s * _t3_pair(x, a, b, c, d) for a, b, c, d in subs(4)]
    return out


def iprime_forms(S: Sequence[Poly], generator_count: int, bound=None) -> list[Poly]:
    """Forms 1 and 4 of :func:`w_forms`."""
    return w_forms(S, generator_count, bound, forms=(1, 4))


def w_oracle(S: Sequence[Poly], generator_count: int, mu, ring: RingSpec | None = None) -> list[Poly]:
    """Brute-force generators ``[m1 s m2, m3, m4]`` (words ``m_i``, ``m3, m4``
    nonunit) of the ideal generated by ``[u, a, b]``, ``u`` in (S), up to ``mu``."""
    g = generator_count
    mu = tuple(mu)
    degs = _check_seed(S, g)
    out: list[Poly] = []
    for s, sd in zip(S, degs):
        if any(d > m for d, m in zip(sd, mu)):
            continue
        rest = tuple(m - d for m, d in zip(mu, sd))
        words = [()] + list(_nonunit_words_upto(rest))
        for m1 in words:
            for m2 in words:
                r2 = _remaining(rest, m1 + m2)
                if r2 is None:
                    continue
                u = s.shift(m1, m2)
                for m3 in _nonunit_words_upto(r2):
                    r3 = _remaining(r2, m3)
                    for m4 in _nonunit_words_upto(r3) if r3 is not None else ():
                        p = C([u, Poly.word(m3, s.ring), Poly.word(m4, s.ring)])
                        if p:
                            out.append(p)
    return prune_family(out)


def _remaining(mu, w):
    rest = list(mu)
    for x in w:
        rest[x] -= 1
        if rest[x] < 0:
            return None
    return tuple(rest)


# -- CLI family names ----------------------------------------------------------------


FAMILY_NAMES = ("Sn", "TnOracle", "LatyshevT3", "VolichenkoT4", "IntegerT4", "WForms", "IPrimeForms",
                "SnVariantS", "SnVariantSPrime")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")
        if self.name in ("Sn", "TnOracle", "SnVariantS", "SnVariantSPrime") and (self.n is None or self.n < 2):
            raise ValueError(f"family {self.name} needs n >= 2")
        if self.name == "SnVariantS" and self.k is None:
            raise ValueError("SnVariantS needs a position k")

    def build(self, generator_count: int, ring: RingSpec, mu, seed: Sequence[Poly] | None = None) -> list[Poly]:
        """Family members relevant to component ``mu``."""
        g, name = generator_count, self.name
        if name == "Sn":
            return sn_generators(self.n, g, ring, bound=mu)
        if name == "TnOracle":
            return tideal_generators(self.n, g, mu, ring)
        if name == "LatyshevT3":
            return latyshev_t3(g, ring, bound=mu)
        if name == "VolichenkoT4":
            return volichenko_t4(g, ring, bound=mu)
        if name == "IntegerT4":
            return integer_t4(g, ring, bound=mu)
        if name in ("SnVariantS", "SnVariantSPrime"):
            s, sp = sn_variants(self.n, g, self.k if name == "SnVariantS" else 2, ring, bound=mu)
            return s if name == "SnVariantS" else sp
        if seed is None:
            seed = [C([Poly.gen(0, ring), Poly.gen(1, ring)])]
        if name == "WForms":
            return w_forms(seed, g, bound=mu)
        return iprime_forms(seed, g, bound=mu)


def parse_family(text: str) -> FamilySpec:
    """``"Sn:4"``, ``"TnOracle:3"``, ``"SnVariantS:4:3"``, ``"LatyshevT3"``, ..."""
    name, *params = text.split(":")
    try:
        nums = [int(p) for p in params]
    except ValueError:
        raise ValueError(f"bad family parameters in {text!r}") from None
    if len(nums) > 2:
        raise ValueError(f"too many parameters in {text!r}")
    return FamilySpec(name, *nums)


__all__ = [
    "FamilySpec", "parse_family", "sn_generators", "sn_variants", "tn_oracle", "latyshev_t3",
    "volichenko_t4", "integer_t4", "w_forms", "iprime_forms", "w_oracle", "x_and_x2", "prune_family",
]
