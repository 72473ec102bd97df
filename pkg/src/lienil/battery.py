"""Named reproduction cases, the identity suite and randomized property suites.

Every case has a stable id (for example ``remark2-torsion`` or
``theorem2-n3-Q-1.1.1``) and returns a report dict whose verdict is
``holds`` when the computed outcome matches the expected one.
"""

from __future__ import annotations

import fnmatch
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Sequence

from .coeff import GF, QQ, ZZ, ZZ3, RingKind, RingSpec
from .exprio import emit_report
from .findim import (
    StructureAlgebra, example_algebra, heisenberg_element, ideal_from_gens_findim, lie_nilpotency_oracle,
    matrix_subalgebra, sn_values, tideal_findim, verify_via_theorem,
)
from .freealg import (
    IDENTITIES, Poly, commutator, expand_right_letter_commutators, homogeneous_components,
    left_normed_commutator, render, rewrite_as_right_letter_commutators,
)
from .gensets import (
    integer_t4, iprime_forms, latyshev_t3, sn_generators, sn_variants, tn_oracle, volichenko_t4, w_forms,
    w_oracle,
)
from .ideal import (
    Verdict, build_component, component_rows, coordinates, expand_witness, member, poly_multidegree,
    torsion_member,
)
from .linexact import SparseMat, dense_rank, det_int, hermite_normal_form, smith_normal_form, _matmul

C = left_normed_commutator


class UnknownCase(KeyError):
    pass


@dataclass(frozen=True)
class Case:
    id: str
    criterion: int | None
    run: Callable[[], dict]
    summary: str


def _mu_id(mu) -> str:
    return ".".join(map(str, mu))


def _holds(ok: bool, **extra) -> dict:
    return {"verdict": "holds" if ok else "fails", **extra}


# -- identity suite ----------------------------------------------------------------------

SUITE_RINGS = {"Q": QQ, "Z": ZZ, "Z3loc": ZZ3, "F5": GF(5), "F3": GF(3)}
L2_FAMILY = "right_letter_decomposition"


def _random_scalar(rng: random.Random, ring: RingSpec):
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    if ring.kind is RingKind.INTEGERS_LOC3 and rng.random() < 0.3:
        return ring.coerce(Fraction(c, 3 ** rng.randint(1, 2)))
    if ring.kind is RingKind.RATIONALS and rng.random() < 0.3:
        return ring.coerce(Fraction(c, rng.randint(1, 5)))
    return ring.coerce(c)


def random_word(rng: random.Random, generator_count: int, max_degree: int, min_degree: int = 1):
    return tuple(rng.randrange(generator_count) for _ in range(rng.randint(min_degree, max_degree)))


def random_poly(rng: random.Random, ring: RingSpec, generator_count: int = 3, max_degree: int = 4,
                max_terms: int = 3, min_degree: int = 0) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_word(rng, generator_count, max_degree, min_degree)] = _random_scalar(rng, ring)
    return Poly(ring, terms)


def identity_suite(seed: int = 1, samples: int = 100, rings: dict[str, RingSpec] | None = None,
                   table: dict | None = None, generator_count: int = 4, max_degree: int = 4) -> dict:
    """Randomized instances of every expansion identity and of the
    right-letter decomposition, per ring. Returns pass counts and the first
    counterexample of each failing family."""
    rings = SUITE_RINGS if rings is None else rings
    table = IDENTITIES if table is None else table
    out: dict = {}
    for rname, ring in rings.items():
        per_ring = {}
        for name, (builder, arity, min_arity) in table.items():
            rng = random.Random(f"{seed}:{rname}:{name}")
            passed, example = 0, None
            for _ in range(samples):
                if arity is None:
                    extra = 1 if name.endswith("once") else 2
                    n_args = rng.randint(max(2, min_arity - extra), 4) + extra
                else:
                    n_args = arity
                args = [random_poly(rng, ring, generator_count, max_degree, max_terms=2) for _ in range(n_args)]
                lhs, rhs = builder(args)
                if lhs == rhs:
                    passed += 1
                elif example is None:
                    example = {"args": [render(a) for a in args], "lhs": render(lhs), "rhs": render(rhs)}
            per_ring[name] = {"passed": passed, "samples": samples, "counterexample": example}
        rng = random.Random(f"{seed}:{rname}:{L2_FAMILY}")
        passed, example = 0, None
        for _ in range(samples):
            w1 = random_word(rng, generator_count, max_degree)
            w2 = random_word(rng, generator_count, max_degree)
            terms = rewrite_as_right_letter_commutators(w1, w2)
            lhs = commutator(Poly.word(w1, ring), Poly.word(w2, ring))
            if expand_right_letter_commutators(terms, ring) == lhs and all(len(d) + 1 == len(w1) + len(w2) for _, d, _ in terms):
                passed += 1
            elif example is None:
                example = {"w1": list(w1), "w2": list(w2)}
        per_ring[L2_FAMILY] = {"passed": passed, "samples": samples, "counterexample": example}
        out[rname] = per_ring
    return out


def suite_failures(report: dict) -> int:
    return sum(fam["samples"] - fam["passed"] for per in report.values() for fam in per.values())


# -- randomized property suites ------------------------------------------------------------


def freealg_properties(cases: int = 1000, seed: int = 0) -> dict:
    """Anticommutativity, Jacobi and the multidegree partition on random polynomials."""
    rng = random.Random(f"freealg:{seed}")
    rings = list(SUITE_RINGS.values())
    failures = []
    for i in range(cases):
        ring = rng.choice(rings)
        a, b, c = (random_poly(rng, ring, 3, 3) for _ in range(3))
        ab = commutator(a, b)
        ok = ab == -commutator(b, a)
        ok &= commutator(ab, c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b) == 0
        comps = homogeneous_components(a * b, 3)
        total = Poly.zero(ring)
        for mu, part in comps.items():
            ok &= part.multidegrees(3) == {mu}
            total = total + part
        ok &= total == a * b
        if not ok:
            failures.append(i)
    return {"cases": cases, "failures": failures}


def certificate_properties(cases: int = 1000, seed: int = 0) -> dict:
    """Membership certificates re-expand to the target; nonmembers raise the rank."""
    rng = random.Random(f"certificates:{seed}")
    rings = [QQ, ZZ, ZZ3, GF(5), GF(3)]
    failures = []
    for i in range(cases):
        ring = rng.choice(rings)
        g = rng.choice([2, 3])
        mu = tuple(rng.randint(0, 2) for _ in range(g))
        if sum(mu) < 2:
            mu = (1,) * g
        fams = [lambda: tn_oracle(2, g, mu, ring), lambda: sn_generators(3, g, ring, bound=mu),
                lambda: [C([Poly.gen(0, ring), Poly.gen(1, ring)])]]
        gens = rng.choice(fams)()
        comp = component_rows(gens, mu, ring)
        basis = comp.basis
        if rng.random() < 0.5 and comp.rows:
            # an element of the ideal: a combination of a*g*b products
            target = Poly.zero(ring)
            for _ in range(rng.randint(1, 3)):
                a, gi, b = comp.origin[rng.randrange(len(comp.rows))]
                target = target + gens[gi].shift(a, b).scale(_random_scalar(rng, ring))
        else:
            target = Poly(ring, {rng.choice(basis): _random_scalar(rng, ring) for _ in range(2)})
        if not target:
            continue
        try:
            cert = member(target, gens, g)
            if cert.verdict is Verdict.MEMBER:
                ok = expand_witness(cert.witness, gens, ring) == target
            else:
                # independent check: the target is not in the span over the fraction field
                field = QQ if ring.modulus is None else ring
                dense = comp.matrix().to_dense()
                v = coordinates(target, mu)
                vec = [v.get(k, 0) for k in range(len(basis))]
                r0 = dense_rank(dense, field)
                r1 = dense_rank(dense + [vec], field)
                if ring.is_field:
                    ok = r1 == r0 + 1
                else:
                    ok = r1 == r0 + 1 or (cert.torsion_index is not None and cert.torsion_index > 1)
                if ring.kind is RingKind.INTEGERS and cert.torsion_index:
                    t = torsion_member(target, gens, g)
                    ok &= expand_witness(t.witness, gens, ring) == target.scale(t.torsion_index)
        except AssertionError:
            ok = False
        if not ok:
            failures.append(i)
    return {"cases": cases, "failures": failures}


def _is_hnf(h, pivots) -> bool:
    for r, (row, p) in enumerate(zip(h, pivots)):
        if any(row[:p]) or row[p] <= 0:
            return False
        if any(not 0 <= h[i][p] < row[p] for i in range(r)):
            return False
    return pivots == sorted(set(pivots))


def hnf_snf_properties(cases: int = 1000, seed: int = 0) -> dict:
    """HNF and SNF transforms verified independently on random integer matrices."""
    rng = random.Random(f"hnf:{seed}")
    failures = []
    for i in range(cases):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-9, 9) if rng.random() < 0.7 else 0 for _ in range(nc)] for _ in range(nr)]
        m = SparseMat.from_dense(a, ZZ, nc)
        hr = hermite_normal_form(m)
        sr = smith_normal_form(m)
        rank = dense_rank(a, QQ)
        ua = _matmul(hr.U, a)
        ok = ua[: len(hr.H)] == hr.H and not any(any(r) for r in ua[len(hr.H):])
        ok &= abs(det_int(hr.U)) == 1 and _is_hnf(hr.H, hr.pivots) and len(hr.H) == rank
        d = _matmul(_matmul(sr.U, a), sr.V)
        ok &= all(d[r][c] == (sr.diagonal[r] if r == c and r < len(sr.diagonal) else 0)
                  for r in range(nr) for c in range(nc))
        ok &= abs(det_int(sr.U)) == 1 and abs(det_int(sr.V)) == 1 and len(sr.diagonal) == rank
        ok &= all(x > 0 for x in sr.diagonal)
        ok &= all(sr.diagonal[k + 1] % sr.diagonal[k] == 0 for k in range(len(sr.diagonal) - 1))
        if not ok:
            failures.append(i)
    return {"cases": cases, "failures": failures}


PROPERTY_SUITES = {
    "freealg": freealg_properties,
    "certificates": certificate_properties,
    "hnf-snf": hnf_snf_properties,
}


# -- component comparisons --------------------------------------------------------------------


def compare_component(a: Sequence[Poly], b: Sequence[Poly], mu, ring: RingSpec) -> dict:
    ca, sa = build_component(a, mu, ring)
    cb, sb = build_component(b, mu, ring)
    return {
        "equal": sa.same_span(sb),
        "component": list(mu),
        "dimension": len(ca.basis),
        "rank": [sa.rank, sb.rank],
        "rows": [len(ca.rows), len(cb.rows)],
    }


def _component_case(family: Callable, oracle: Callable, mu, ring: RingSpec):
    def run():
        info = compare_component(family(), oracle(), mu, ring)
        return _holds(info.pop("equal"), certificate=info)
    return run


def _cert_dict(cert, names=None):
    return cert.to_dict(names)


# -- individual cases ----------------------------------------------------------------------------


def _gens(ring, g):
    return [Poly.gen(i, ring) for i in range(g)]


def case_remark2() -> dict:
    x = _gens(ZZ, 5)
    target = C([x[0], x[1]]) * C([x[2], x[3], x[4]])
    mu = (1,) * 5
    gens = tn_oracle(4, 5, mu, ZZ)
    m = member(target, gens, 5)
    t = torsion_member(target, gens, 5)
    ok = m.verdict is Verdict.NONMEMBER and t.verdict is Verdict.TORSION and t.torsion_index == 3
    return _holds(ok, torsion_index=t.torsion_index, member=m.verdict.value,
                  certificate=_cert_dict(t))


def _prop3_target(ring):
    x = _gens(ring, 5)
    return C([C([x[0], x[1]]) * x[2], x[3], x[4]])


def case_prop3(ring: RingSpec, expect_member: bool) -> Callable[[], dict]:
    def run():
        target = _prop3_target(ring)
        gens = tn_oracle(4, 5, (1,) * 5, ring)
        cert = member(target, gens, 5)
        out = _holds(cert.is_member == expect_member, member=cert.verdict.value, certificate=_cert_dict(cert))
        if ring.kind is RingKind.INTEGERS:
            t = torsion_member(target, gens, 5)
            out["torsion_index"] = t.torsion_index
        return out
    return run


def case_prop4() -> dict:
    x = _gens(ZZ, 6)
    s = C([x[0], x[1]])
    target = C([s, x[2]]) * C([x[3], x[4], x[5]])
    mu = (1,) * 6
    gens = iprime_forms([s], 6, bound=mu)
    t = torsion_member(target, gens, 6)
    ok = t.verdict is Verdict.TORSION and 3 % t.torsion_index == 0
    return _holds(ok, torsion_index=t.torsion_index, certificate=_cert_dict(t))


def case_lemma10() -> dict:
    x = _gens(ZZ, 5)
    u = C([x[0], x[1]])
    mu = (1,) * 5
    gens = tn_oracle(4, 5, mu, ZZ)
    comp, span = build_component(gens, mu, ZZ)
    results = []
    for a1, a2, a3 in permutations(x[2:]):
        v = C([u, a1]) * C([a2, a3]) + C([u, a2]) * C([a1, a3])
        results.append(span.torsion_index(coordinates(v, mu)))
    return _holds(all(k == 1 for k in results), instances=len(results), torsion_indices=results,
                  certificate={"component": list(mu), "rank": span.rank, "dimension": len(comp.basis)})


def case_cor9() -> dict:
    x = _gens(ZZ, 5)
    u = C([x[0], x[1]])
    mu = (1,) * 5
    gens = tn_oracle(4, 5, mu, ZZ)
    _, span = build_component(gens, mu, ZZ)
    results = [span.torsion_index(coordinates(u * C(list(a)), mu)) for a in permutations(x[2:])]
    t = torsion_member(u * C(x[2:]), gens, 5)
    return _holds(all(k == 3 for k in results), instances=len(results), torsion_indices=results,
                  torsion_index=t.torsion_index, certificate=_cert_dict(t))


def case_remark1_member() -> dict:
    x = _gens(QQ, 5)
    mu = (1,) * 5
    _, span = build_component(tn_oracle(4, 5, mu, QQ), mu, QQ)
    checked = 0
    ok = True
    for p in permutations(range(5)):
        if p[0] > p[1] or p[3] > p[4]:
            continue  # sign duplicates
        v = C([x[p[0]], x[p[1]], x[p[2]]]) * C([x[p[3]], x[p[4]]])
        ok &= span.contains(coordinates(v, mu))
        checked += 1
    return _holds(ok, instances=checked, certificate={"rank": span.rank})


def case_remark1_nonmember() -> dict:
    x = _gens(QQ, 4)
    target = C([x[0], x[1]]) * C([x[2], x[3]])
    cert = member(target, tn_oracle(3, 4, (1,) * 4, QQ), 4)
    return _holds(cert.verdict is Verdict.NONMEMBER, certificate=_cert_dict(cert))


# finite-dimensional cases

FINDIM_EXAMPLES = (
    [f"grassmann({k})" for k in range(2, 5)]
    + [f"unitriangular_plus_unit({m})" for m in range(2, 5)]
    + [f"commutative_series({m})" for m in range(2, 6)]
    + [f"heisenberg_truncated({d})" for d in range(2, 6)]
)


def case_findim_agree(example: str, ring: RingSpec) -> Callable[[], dict]:
    def run():
        A = example_algebra(example, ring)
        rows = []
        ok = True
        for n in range(2, 7):
            a = verify_via_theorem(A, n)
            b = lie_nilpotency_oracle(A, n)
            ok &= a.verdict == b.verdict
            rows.append({"n": n, "theorem": a.to_dict(A), "oracle": b.to_dict(A)})
        return _holds(ok, certificate={"dimension": A.dim, "checks": rows})
    return run


def case_heisenberg_ladder() -> dict:
    """``[a, ab, ..., ab]`` with k copies equals ``a c^k`` until the cap cuts it off."""
    rows = []
    ok = True
    for cap in range(2, 8):
        A = example_algebra(f"heisenberg_truncated({cap})", QQ)
        a, ab = heisenberg_element(A, 1, 0, 0), heisenberg_element(A, 1, 1, 0)
        v = a
        for k in range(1, 4):
            v = A.commutator(v, ab)
            expect = heisenberg_element(A, 1, 0, k)
            nonzero = 1 + 2 * k <= cap
            ok &= v == expect and bool(v) == nonzero
        w = A.commutator(A.commutator(a, ab), ab)
        entry = {"cap": cap, "[a, a*b, a*b]": A.render(w)}
        if cap >= 5:
            thm, orc = verify_via_theorem(A, 3), lie_nilpotency_oracle(A, 3)
            ok &= w == heisenberg_element(A, 1, 0, 2) and bool(w)
            ok &= thm.verdict == orc.verdict == "NotLieNilpotent"
            entry["theorem"] = thm.to_dict(A)
            entry["oracle"] = orc.to_dict(A)
        rows.append(entry)
    return _holds(ok, certificate=rows)


def case_findim_theorem2(example: str, n: int) -> Callable[[], dict]:
    def run():
        A = example_algebra(example, QQ)
        T = tideal_findim(A, n)
        S = ideal_from_gens_findim(A, sn_values(A, n))
        return _holds(T == S, certificate={"dimension": A.dim, "tideal_rank": T.rank, "sn_ideal_rank": S.rank})
    return run


def case_property(name: str) -> Callable[[], dict]:
    def run():
        res = PROPERTY_SUITES[name](1000, 0)
        return _holds(not res["failures"], certificate=res)
    return run


def case_identities(rname: str) -> Callable[[], dict]:
    def run():
        rep = identity_suite(1, 100, {rname: SUITE_RINGS[rname]})
        return _holds(suite_failures(rep) == 0, certificate=rep[rname])
    return run


# open questions: computed and reported, no outcome presumed


def case_open_char3_prop3() -> dict:
    F3 = GF(3)
    x = _gens(F3, 5)
    gens = tn_oracle(4, 5, (1,) * 5, F3)
    targets = {
        "[x1,x2]*[x3,x4,x5]": C([x[0], x[1]]) * C([x[2], x[3], x[4]]),
        "[[x1,x2]*x3,x4,x5]": C([C([x[0], x[1]]) * x[2], x[3], x[4]]),
    }
    finding = {name: member(t, gens, 5).verdict.value for name, t in targets.items()}
    return {"verdict": "holds", "finding": finding}


def _random_matrix(rng, size, upper):
    return [[rng.randint(0, 2) if (j >= i or not upper) else 0 for j in range(size)] for i in range(size)]


def char3_search(trials: int = 60, seed: int = 0, max_n: int = 5) -> dict:
    """Compare the forced theorem check with the oracle over GF(3) on small
    examples and random matrix subalgebras."""
    F3 = GF(3)
    rng = random.Random(f"char3:{seed}")
    algebras: list[tuple[str, StructureAlgebra]] = []
    for ex in FINDIM_EXAMPLES:
        algebras.append((ex, example_algebra(ex, F3)))
    for t in range(trials):
        size = rng.choice([3, 4])
        upper = rng.random() < 0.8
        mats = {f"g{i + 1}": _random_matrix(rng, size, upper) for i in range(rng.choice([1, 2, 2, 3]))}
        A = matrix_subalgebra(mats, F3)
        if A.dim <= 16:
            algebras.append((f"random-{t}", A))
    disagreements = []
    for name, A in algebras:
        for n in range(2, max_n + 1):
            a = verify_via_theorem(A, n, force=True)
            b = lie_nilpotency_oracle(A, n)
            if a.verdict != b.verdict:
                disagreements.append({"algebra": name, "n": n, "theorem": a.verdict, "oracle": b.verdict})
    return {"algebras": len(algebras), "disagreements": disagreements}


def case_open_char3_search() -> dict:
    res = char3_search()
    return {"verdict": "holds", "finding": res}


def case_remark4_ideal() -> dict:
    """S^(4) minus the X^2-in-position-3 brackets still generates T^(4)."""
    ok = True
    rows = []
    for g, mus in ((2, [(3, 2), (2, 2), (4, 1), (3, 3)]), (3, [(2, 2, 1), (2, 1, 1), (1, 1, 1)])):
        for mu in mus:
            full = sn_generators(4, g, ZZ, bound=mu)
            s3, s2 = sn_variants(4, g, 3, ZZ, bound=mu)
            drop = set(s3)
            reduced = [p for p in full if p not in drop] + s2
            info = compare_component(full, reduced, mu, ZZ)
            ok &= info["equal"]
            rows.append(info)
    return _holds(ok, certificate=rows)


def case_open_remark4_linear() -> dict:
    """Is every bracket with its X^2 entry at position k an integer combination
    of brackets with the X^2 entry at position 2?"""
    from .linexact import IntegerLattice

    findings = []
    for n, g, extra in ((4, 3, 1), (5, 2, 1), (4, 5, 0), (5, 6, 0)):
        d = n + 1
        mus = [mu for mu in product(range(d + 1), repeat=g) if sum(mu) == d and (extra or max(mu) == 1)]
        for k in range(3, n):
            outside, total = 0, 0
            for mu in mus:
                S, Sp = sn_variants(n, g, k, ZZ, bound=mu)
                S = [p for p in S if p and poly_multidegree(p, g) == mu]
                lat = IntegerLattice()
                for p in Sp:
                    if p and poly_multidegree(p, g) == mu:
                        lat.insert(coordinates(p, mu))
                for p in S:
                    total += 1
                    if lat.torsion_index(coordinates(p, mu)) != 1:
                        outside += 1
            findings.append({"n": n, "generators": g, "k": k, "checked": total, "outside_span": outside})
    return {"verdict": "holds", "finding": findings}


# -- registry --------------------------------------------------------------------------------------


@lru_cache(maxsize=1)
def all_cases() -> tuple[Case, ...]:
    cases: list[Case] = []
    add = lambda cid, crit, fn, summary: cases.append(Case(cid, crit, fn, summary))

    for rname in SUITE_RINGS:
        add(f"identities-{rname}", 1, case_identities(rname), "expansion identities and decomposition, 100 samples")

    for n in (3, 4, 5):
        for rname, ring in (("Q", QQ), ("Z3loc", ZZ3)):
            for mu in product(range(n + 3), repeat=3):
                if sum(mu) > n + 2:
                    continue
                add(f"theorem2-n{n}-{rname}-{_mu_id(mu)}", 2,
                    _component_case(lambda n=n, mu=mu, ring=ring: sn_generators(n, 3, ring, bound=mu),
                                    lambda n=n, mu=mu, ring=ring: tn_oracle(n, 3, mu, ring), mu, ring),
                    "finite generating family equals the commutator ideal in this component")

    add("remark2-torsion", 3, case_remark2, "[x1,x2][x3,x4,x5] has torsion index 3 modulo T^(4) over Z")
    add("prop3-member-Q", 4, case_prop3(QQ, True), "[[x1,x2]x3,x4,x5] lies in T^(4) over Q")
    add("prop3-nonmember-Z", 4, case_prop3(ZZ, False), "[[x1,x2]x3,x4,x5] is not in T^(4) over Z")

    for mu in product(range(6), repeat=5):
        if sum(mu) <= 5:
            add(f"latyshev-t3-Q-{_mu_id(mu)}", 5,
                _component_case(lambda mu=mu: latyshev_t3(5, QQ, bound=mu), lambda mu=mu: tn_oracle(3, 5, mu, QQ),
                                mu, QQ), "Latyshev family spans T^(3)")
    for d in (4, 5, 6):
        mu = (1,) * d
        add(f"volichenko-t4-Q-1x{d}", 5,
            _component_case(lambda d=d, mu=mu: volichenko_t4(d, QQ, bound=mu),
                            lambda d=d, mu=mu: tn_oracle(4, d, mu, QQ), mu, QQ), "Volichenko forms span T^(4)")
        add(f"integer-t4-Z-1x{d}", 5,
            _component_case(lambda d=d, mu=mu: integer_t4(d, ZZ, bound=mu),
                            lambda d=d, mu=mu: tn_oracle(4, d, mu, ZZ), mu, ZZ),
            "integer family spans the T^(4) lattice")

    for rname, ring, forms, tag in (("Z", ZZ, (1, 2, 3, 4, 5), "wforms5"), ("Q", QQ, (1, 2, 4, 5), "wforms4")):
        for mu in product(range(7), repeat=6):
            if 4 <= sum(mu) <= 6 and mu[0] and mu[1]:
                def fam(mu=mu, ring=ring, forms=forms):
                    return w_forms([C(_gens(ring, 2))], 6, bound=mu, forms=forms)

                def orc(mu=mu, ring=ring):
                    return w_oracle([C(_gens(ring, 2))], 6, mu, ring)

                add(f"{tag}-{rname}-{_mu_id(mu)}", 6, _component_case(fam, orc, mu, ring),
                    "form family generates the ideal of a[s,b,c]d")
    add("prop4-torsion", 6, case_prop4, "torsion index of [s,x3][x4,x5,x6] modulo the I' forms divides 3")

    add("lemma10-member-Z", 7, case_lemma10, "[u,a1][a2,a3]+[u,a2][a1,a3] lies in T^(4) over Z")
    add("cor9-torsion", 7, case_cor9, "u[a1,a2,a3] has torsion index 3 modulo T^(4)")
    add("remark1-member-Q", 8, case_remark1_member, "every multilinear [a1,a2,a3][a4,a5] lies in T^(4)")
    add("remark1-nonmember-Q", 8, case_remark1_nonmember, "[x1,x2][x3,x4] is not in T^(3)")

    for rname, ring in (("Q", QQ), ("F5", GF(5))):
        for ex in FINDIM_EXAMPLES:
            add(f"findim-agree-{rname}-{ex.replace('(', '').replace(')', '')}", 9, case_findim_agree(ex, ring),
                "theorem check agrees with the brute-force oracle, n = 2..6")
    add("heisenberg-ladder", 9, case_heisenberg_ladder, "[a, ab, ..., ab] = a c^k in truncated U(H)")
    for ex in FINDIM_EXAMPLES:
        for n in (3, 4, 5):
            add(f"findim-theorem2-{ex.replace('(', '').replace(')', '')}-n{n}", 10, case_findim_theorem2(ex, n),
                "ideal of evaluated S^(n) equals T^(n)(A)")

    for name in PROPERTY_SUITES:
        add(f"property-{name}", 11, case_property(name), "1000 randomized cases")

    add("remark4-n4-ideal", None, case_remark4_ideal, "dropping X^2-at-position-3 brackets keeps T^(4)")
    add("open-remark4-linear", None, case_open_remark4_linear, "integer linear span check, reported")
    add("open-char3-prop3", None, case_open_char3_prop3, "T^(4) memberships over GF(3), reported")
    add("open-char3-search", None, case_open_char3_search, "forced theorem check vs oracle over GF(3), reported")
    return tuple(cases)


def case_index() -> dict[str, Case]:
    return {c.id: c for c in all_cases()}


def select_cases(patterns: Sequence[str] | None = None) -> list[Case]:
    """Cases matching any of the glob patterns, in registry order."""
    cases = all_cases()
    if not patterns:
        return list(cases)
    chosen = []
    for pat in patterns:
        if not any(fnmatch.fnmatchcase(c.id, pat) for c in cases):
            raise UnknownCase(pat)
    for c in cases:
        if any(fnmatch.fnmatchcase(c.id, pat) for pat in patterns):
            chosen.append(c)
    return chosen


def run_case(case_id: str) -> dict:
    case = case_index().get(case_id)
    if case is None:
        raise UnknownCase(case_id)
    start = time.perf_counter()
    result = case.run()
    result["case"] = case.id
    result["elapsed_ms"] = round((time.perf_counter() - start) * 1000)
    if case.criterion is not None:
        result["criterion"] = case.criterion
    return emit_report(result)


def run_battery(patterns: Sequence[str] | None = None, jobs: int = 1) -> list[dict]:
    ids = [c.id for c in select_cases(patterns)]
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_case, ids, chunksize=4))
    return [run_case(i) for i in ids]
