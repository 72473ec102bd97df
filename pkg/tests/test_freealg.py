import pytest
from hypothesis import given, settings, strategies as st

from lienil.coeff import GF, QQ, ZZ, RingMismatch
from lienil.freealg import (
    IDENTITIES, Poly, commutator, expand_right_letter_commutators, homogeneous_components, identity_instance,
    left_normed_commutator as C, multidegree, poly_add, poly_mul, render, rewrite_as_right_letter_commutators,
)

from conftest import RINGS, polys, rings


def gens(ring, g=5):
    return [Poly.gen(i, ring) for i in range(g)]


def test_add_and_mul_examples():
    x1, x2 = gens(QQ, 2)
    assert poly_add(x1, -x1) == 0
    assert render(poly_add(x1 * x2, x2 * x1)) == "x1*x2 + x2*x1"
    assert render((x1 + x2) + x1) == "2*x1 + x2"
    assert render(poly_mul(x1, x2)) == "x1*x2"
    p = x1 * x2 - x2
    assert Poly.one(QQ) * p == p
    assert (x1 + x2) * (x1 - x2) == Poly(QQ, {(0, 0): 1, (0, 1): -1, (1, 0): 1, (1, 1): -1})


def test_commutator_examples():
    x1, x2, x3 = gens(QQ, 3)
    assert render(commutator(x1, x2)) == "x1*x2 - x2*x1"
    assert commutator(x1 + x2, x1 + x2) == 0
    assert commutator(x1, Poly.one(QQ)) == 0
    c = C([x1, x2, x3])
    assert len(c) == 4 and sorted(c.terms.values()) == [-1, -1, 1, 1]
    assert C([x1, x1, x2]) == 0
    a, b = x1, x2
    assert C([a, a * b]) == a * a * b - a * b * a


def test_bracket_arity_and_ring_mismatch():
    with pytest.raises(ValueError):
        C([Poly.gen(0, QQ)])
    with pytest.raises(RingMismatch):
        Poly.gen(0, QQ) + Poly.gen(0, ZZ)


def test_multidegree_examples():
    assert multidegree((0, 1, 0), 2) == (2, 1)
    assert multidegree((), 2) == (0, 0)
    assert multidegree((1, 1), 3) == (0, 2, 0)
    with pytest.raises(ValueError):
        multidegree((0, 3), 2)


def test_homogeneous_components_examples():
    x1, x2 = gens(QQ, 2)
    assert list(homogeneous_components(commutator(x1, x2), 2)) == [(1, 1)]
    assert set(homogeneous_components(x1 + x1 * x1, 1)) == {(1,), (2,)}
    assert homogeneous_components(Poly.zero(QQ), 2) == {}


def test_identity_examples():
    x, y, z, u, v = gens(QQ)
    lhs, rhs = identity_instance("prod2_once", [x, y, z])
    assert lhs == commutator(x * y, z) and rhs == x * commutator(y, z) + commutator(x, z) * y
    lhs, rhs = identity_instance("prod2_twice", [x, y, z, u])
    assert lhs - rhs == 0
    lhs, rhs = identity_instance("prod2_thrice", [x, y, z, u, v])
    assert lhs == rhs
    with pytest.raises(ValueError):
        identity_instance("prod2_once", [x, y])
    with pytest.raises(ValueError):
        identity_instance("nope", [x, y, z])


def test_right_letter_decomposition_examples():
    assert rewrite_as_right_letter_commutators((0,), (1,)) == [(1, (0,), 1)]
    assert rewrite_as_right_letter_commutators((0, 1), (2, 3)) == [(1, (0, 1, 2), 3), (1, (3, 0, 1), 2)]
    assert rewrite_as_right_letter_commutators((0,), (1, 2)) == [(1, (0, 1), 2), (1, (2, 0), 1)]
    with pytest.raises(ValueError):
        rewrite_as_right_letter_commutators((0,), (-1,))


@given(st.data(), rings)
def test_anticommutativity_and_jacobi(data, ring):
    p, q, r = (data.draw(polys(ring)) for _ in range(3))
    assert commutator(p, q) == -commutator(q, p)
    assert C([p, q, r]) + C([q, r, p]) + C([r, p, q]) == 0


@given(st.data(), rings)
def test_components_partition(data, ring):
    p = data.draw(polys(ring, max_terms=6))
    comps = homogeneous_components(p, 3)
    total = Poly.zero(ring)
    for mu, part in comps.items():
        assert part and part.multidegrees(3) == {mu}
        total = total + part
    assert total == p


word_args = st.lists(st.integers(0, 3), min_size=0, max_size=4).map(tuple)


@settings(max_examples=60)
@given(st.data(), rings, st.sampled_from(sorted(IDENTITIES)), st.integers(2, 4))
def test_identities_hold(data, ring, name, k):
    _, arity, _ = IDENTITIES[name]
    if arity is None:
        arity = k + (1 if name.endswith("once") else 2)
    args = [Poly.word(data.draw(word_args), ring, data.draw(st.integers(1, 4))) for _ in range(arity)]
    lhs, rhs = identity_instance(name, args)
    assert lhs == rhs


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.lists(st.integers(0, 3), min_size=1, max_size=4),
       st.sampled_from(RINGS))
def test_decomposition_sums_to_commutator(w1, w2, ring):
    terms = rewrite_as_right_letter_commutators(w1, w2)
    assert expand_right_letter_commutators(terms, ring) == commutator(Poly.word(w1, ring), Poly.word(w2, ring))
    assert all(isinstance(x, int) for _, _, x in terms)


def test_prime_field_render_symmetric():
    p = Poly(GF(5), {(0,): 4})
    assert render(p) == "-x1"
