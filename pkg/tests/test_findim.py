import pytest

from lienil.coeff import GF, QQ, ZZ
from lienil.findim import (
    AlgebraError, StructureAlgebra, commutative_series, evaluate_sn, example_algebra, fd_commutator, fd_mul,
    grassmann, heisenberg_element, heisenberg_truncated, ideal_from_gens_findim, lie_nilpotency_oracle,
    lower_central_dims, matrix_subalgebra, sn_values, tideal_findim, unitriangular_plus_unit, upper_triangular,
    verify_via_theorem,
)


def test_unit_and_commutative():
    A = commutative_series(3, QQ)
    p = {1: QQ.coerce(2), 2: QQ.coerce(1)}
    assert fd_mul(A, A.unit, p) == p
    assert fd_commutator(A, p, {1: QQ.coerce(1)}) == {}


def test_heisenberg_bracket():
    H = heisenberg_truncated(2, QQ)
    a, b, c = (heisenberg_element(H, *m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert fd_commutator(H, a, b) == c
    assert fd_commutator(H, a, c) == {} and fd_commutator(H, b, c) == {}
    assert sorted(H.basis_names) == sorted(["1", "a", "b", "c", "a^2", "a*b", "b^2"])


def test_example_dimensions():
    G = grassmann(2, QQ)
    assert G.dim == 4
    e1, e2 = G.generators["e1"], G.generators["e2"]
    assert fd_commutator(G, e1, e2) == {3: 2}
    assert unitriangular_plus_unit(3, QQ).dim == 4
    assert grassmann(4, QQ).dim == 16


def test_verify_examples():
    assert verify_via_theorem(commutative_series(3, QQ), 2).verdict == "LieNilpotent"
    assert verify_via_theorem(grassmann(3, QQ), 3).verdict == "LieNilpotent"
    r = verify_via_theorem(heisenberg_truncated(4, QQ), 3)
    assert r.verdict == "NotLieNilpotent" and r.witness[0] in ("a", "b") and r.witness[-1] in ("a", "b")
    assert r.witness_value and r.witness_value == lie_nilpotency_oracle(heisenberg_truncated(4, QQ), 3).witness_value


def test_verify_refuses_without_one_third():
    r = verify_via_theorem(grassmann(2, ZZ), 3)
    assert r.verdict == "Refused" and "3" in r.reason
    assert verify_via_theorem(grassmann(2, GF(3)), 3).verdict == "Refused"
    forced = verify_via_theorem(grassmann(2, GF(3)), 3, force=True)
    assert forced.condition_only and forced.verdict == "LieNilpotent"


def test_oracle_examples():
    one = commutative_series(1, QQ)
    assert lie_nilpotency_oracle(one, 2).verdict == "LieNilpotent"
    for n in (2, 3, 6):
        assert lie_nilpotency_oracle(upper_triangular(2, QQ), n).verdict == "NotLieNilpotent"
    assert lie_nilpotency_oracle(unitriangular_plus_unit(3, QQ), 4).verdict == "LieNilpotent"


def test_tideal_examples():
    assert tideal_findim(commutative_series(3, QQ), 2).is_zero()
    assert tideal_findim(grassmann(3, QQ), 3).is_zero()
    H = heisenberg_truncated(3, QQ)
    ac = heisenberg_element(H, 1, 0, 1)
    # every 3-fold bracket has weight >= 4 under the cap, so T^(3) vanishes; [a, ab] = ac sits in T^(2)
    assert tideal_findim(H, 3).is_zero()
    assert tideal_findim(H, 2).contains(ac)
    assert ideal_from_gens_findim(H, sn_values(H, 3)) == tideal_findim(H, 3)


def test_ideal_closure_trivial():
    A = grassmann(2, QQ)
    assert ideal_from_gens_findim(A, [A.unit]).rank == A.dim
    assert ideal_from_gens_findim(A, []).rank == 0


@pytest.mark.parametrize("D", range(2, 8))
def test_heisenberg_ladder(D):
    H = heisenberg_truncated(D, QQ)
    a, ab = heisenberg_element(H, 1, 0, 0), heisenberg_element(H, 1, 1, 0)
    v = a
    for k in range(1, 4):
        v = H.commutator(v, ab)
        assert v == heisenberg_element(H, 1, 0, k)
        assert bool(v) == (1 + 2 * k <= D)


@pytest.mark.parametrize("name", ["grassmann(3)", "unitriangular_plus_unit(4)", "heisenberg_truncated(5)",
                                  "commutative_series(4)"])
def test_agreement_and_chains(name):
    A = example_algebra(name, QQ)
    dims = lower_central_dims(A, 6)
    assert all(b <= a for a, b in zip(dims, dims[1:]))
    for n in range(2, 7):
        orc = lie_nilpotency_oracle(A, n)
        assert verify_via_theorem(A, n).verdict == orc.verdict
        assert tideal_findim(A, n).is_zero() == (orc.verdict == "LieNilpotent")


def test_evaluate_sn_matches_span():
    H = heisenberg_truncated(4, QQ)
    vals = evaluate_sn(H, 3)
    assert len(vals) == 2 * 6 * 2
    nonzero = [v for _, v in vals if v]
    assert ideal_from_gens_findim(H, nonzero) == ideal_from_gens_findim(H, sn_values(H, 3))


def test_validation_errors():
    with pytest.raises(AlgebraError, match="unit"):
        StructureAlgebra(1, QQ, [[{0: 1}]], {}, {})
    # e0 is the unit; e1*e2 = e1 but e2*e2 = 0, so (e1 e2) e2 != e1 (e2 e2)
    tab = [[{0: 1}, {1: 1}, {2: 1}], [{1: 1}, {}, {1: 1}], [{2: 1}, {}, {}]]
    with pytest.raises(AlgebraError, match="associativity"):
        StructureAlgebra(3, QQ, tab, {0: 1}, {})
    with pytest.raises(AlgebraError):
        StructureAlgebra(1, QQ, [[{1: 1}]], {0: 1}, {})
    with pytest.raises(AlgebraError):
        example_algebra("nope(3)", QQ)
    with pytest.raises(AlgebraError):
        grassmann(0, QQ)


def test_matrix_subalgebra():
    A = matrix_subalgebra({"a": [[0, 1, 0], [0, 0, 1], [0, 0, 0]]}, GF(3))
    assert A.dim == 3
    assert lie_nilpotency_oracle(A, 2).verdict == "LieNilpotent"
    B = matrix_subalgebra({"a": [[1, 0], [0, 0]], "b": [[0, 1], [0, 0]]}, QQ)
    assert B.dim == 3
    assert verify_via_theorem(B, 4).verdict == lie_nilpotency_oracle(B, 4).verdict == "NotLieNilpotent"
