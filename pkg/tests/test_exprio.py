import json

import pytest
from hypothesis import given, strategies as st

from lienil.coeff import QQ, ZZ, NotInRing
from lienil.exprio import (
    AlgebraFile, Bracket, GeneratorRef, ParseError, Product, SchemaError, Sum, algebra_from_json, elaborate,
    emit_report, load_algebra, parse_expr, parse_poly,
)
from lienil.findim import grassmann
from lienil.freealg import Poly, commutator, render

from conftest import polys, rings

G = ["x1", "x2", "x3", "x4", "x5"]


def ref(i):
    return GeneratorRef(f"x{i}", i - 1)


def test_parse_examples():
    assert parse_expr("[x1,x2]", G) == Bracket((ref(1), ref(2)))
    assert parse_expr("[x1, x2*x3, x4]", G) == Bracket((ref(1), Product((ref(2), ref(3))), ref(4)))
    ast = parse_expr("[x1,x2][x3,x4] + [x1,x3][x2,x4]", G)
    assert isinstance(ast, Sum) and len(ast.terms) == 2
    assert all(isinstance(t, Product) and all(isinstance(f, Bracket) for f in t.factors) for _, t in ast.terms)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_expr("[x1]", G)
    with pytest.raises(ParseError, match="unknown generator"):
        parse_expr("[x1, y]", G)
    with pytest.raises(ParseError):
        parse_expr("x1 x2", G)
    with pytest.raises(ParseError) as info:
        parse_expr("[x1,\n  x2 ]]", G)
    assert (info.value.line, info.value.column) == (2, 7)
    with pytest.raises(ValueError):
        Bracket((ref(1),))


def test_elaborate_examples():
    p = elaborate(parse_expr("[x1,x2]", G), QQ)
    assert p == commutator(Poly.gen(0, QQ), Poly.gen(1, QQ))
    assert render(parse_poly("3*[x1,x2]", G, ZZ)) == "3*x1*x2 - 3*x2*x1"
    with pytest.raises(NotInRing):
        parse_poly("1/2*[x1,x2]", G, ZZ)
    assert parse_poly("(x1 + x2)*x3 - x1*x3", G, QQ) == Poly.word((1, 2), QQ)
    assert parse_poly("-2 + x1", G, QQ) == Poly(QQ, {(): -2, (0,): 1})


@given(st.data(), rings)
def test_render_parse_roundtrip(data, ring):
    p = data.draw(polys(ring, generator_count=3, max_terms=5))
    assert parse_poly(render(p), G[:3], ring) == p


def _doc(**over):
    doc = {"dim": 1, "ring": {"kind": "Q"}, "sc": [[0, 0, 0, "1"]], "unit": ["1"], "generators": {"u": ["1"]}}
    doc.update(over)
    return doc


def test_algebra_file_examples(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps(_doc()))
    A = load_algebra(path).to_algebra()
    assert A.dim == 1 and A.mul({0: 1}, {0: 1}) == {0: 1}
    with pytest.raises(SchemaError, match="unit"):
        algebra_from_json(_doc(unit=["0"]))
    with pytest.raises(SchemaError, match="index"):
        algebra_from_json(_doc(sc=[[0, 0, 1, "1"]]))
    with pytest.raises(SchemaError):
        algebra_from_json(_doc(ring={"kind": "Fp", "p": 9}))
    with pytest.raises(SchemaError):
        algebra_from_json(_doc(ring={"kind": "Z"}, sc=[[0, 0, 0, "1/2"]]))
    with pytest.raises(SchemaError):
        algebra_from_json({"dim": 1})


def test_algebra_file_roundtrip():
    A = grassmann(2, QQ)
    doc = AlgebraFile.from_algebra(A).to_json()
    B = algebra_from_json(json.loads(json.dumps(doc))).to_algebra()
    assert B.table == A.table and B.unit == A.unit and set(B.generators) == set(A.generators)


def test_emit_report():
    rep = emit_report({"case": "c", "verdict": "holds", "elapsed_ms": 3.6, "torsion_index": 3, "x": [1]})
    assert rep == {"case": "c", "verdict": "holds", "elapsed_ms": 3, "torsion_index": 3, "x": [1]}
    with pytest.raises(SchemaError):
        emit_report({"case": "c", "verdict": "maybe", "elapsed_ms": 0})
