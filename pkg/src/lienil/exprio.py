"""Commutator expression parsing, algebra files and JSON reports.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := [coeff ['*']] factor ('*'? factor)*  |  coeff
    factor := generator | '[' expr (',' expr)+ ']' | '(' expr ')'
    coeff  := integer | integer '/' integer

A product of factors needs ``*`` except when the next factor opens with
``[`` or ``(``, so ``[x1,x2][x3,x4]`` reads as a product while ``x1 x2``
is rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .coeff import NotInRing, RingSpec, parse_ring
from .findim import AlgebraError, StructureAlgebra
from .freealg import Poly, left_normed_commutator


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SchemaError(ValueError):
    pass


# -- AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorRef:
    name: str
    index: int


@dataclass(frozen=True)
class ScalarLit:
    value: Union[int, Fraction]


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Bracket:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("a bracket needs at least two arguments")


ExprAST = Union[GeneratorRef, ScalarLit, Product, Sum, Bracket]


# -- tokenizer and parser ------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/,\[\]()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def where(i):
        line = max(k for k, s in enumerate(line_starts) if s <= i)
        return line + 1, i - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            line, col = where(pos + skip)
            raise ParseError(f"unexpected character {text[pos + skip]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), *where(start)))
        pos = m.end()
    line, col = where(len(text)) if text else (1, 1)
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(generators)}

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return self.next()

    def at(self, *texts) -> bool:
        return self.peek().kind == "op" and self.peek().text in texts

    def expr(self) -> ExprAST:
        terms = []
        sign = 1
        if self.at("-", "+"):
            sign = -1 if self.next().text == "-" else 1
        terms.append((sign, self.term()))
        while self.at("+", "-"):
            sign = -1 if self.next().text == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def coeff(self) -> ScalarLit:
        num = int(self.next().text)
        if self.at("/"):
            self.next()
            tok = self.peek()
            if tok.kind != "num":
                self.fail("expected a denominator")
            den = int(self.next().text)
            if den == 0:
                self.fail("zero denominator", tok)
            return ScalarLit(Fraction(num, den))
        return ScalarLit(num)

    def term(self) -> ExprAST:
        factors: list = []
        if self.peek().kind == "num":
            factors.append(self.coeff())
            if self.at("*"):
                self.next()
            elif not self.at("[", "("):
                return factors[0]
        factors.append(self.factor())
        while True:
            if self.at("*"):
                self.next()
                factors.append(self.factor())
            elif self.at("[", "("):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> ExprAST:
        tok = self.peek()
        if tok.kind == "name":
            self.next()
            if tok.text not in self.index:
                self.fail(f"unknown generator {tok.text!r}", tok)
            return GeneratorRef(tok.text, self.index[tok.text])
        if self.at("("):
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if self.at("["):
            self.next()
            args = [self.expr()]
            while self.at(","):
                self.next()
                args.append(self.expr())
            if len(args) < 2 and self.at("]"):
                self.fail("a bracket needs at least two arguments", tok)
            if len(args) < 2:
                self.expect(",")
            self.expect("]")
            return Bracket(tuple(args))
        if tok.kind == "num":
            self.fail("a coefficient may only lead a term", tok)
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_expr(text: str, generators: Sequence[str]) -> ExprAST:
    p = _Parser(text, generators)
    ast = p.expr()
    if p.peek().kind != "end":
        p.fail(f"unexpected {p.peek().text!r}")
    return ast


def elaborate(ast: ExprAST, ring: RingSpec) -> Poly:
    if isinstance(ast, GeneratorRef):
        return Poly.gen(ast.index, ring)
    if isinstance(ast, ScalarLit):
        try:
            return Poly.one(ring).scale(ring.coerce(ast.value))
        except NotInRing as exc:
            raise NotInRing(f"scalar {ast.value} is not in {ring}: {exc}") from None
    if isinstance(ast, Product):
        acc = Poly.one(ring)
        for f in ast.factors:
            acc = acc * elaborate(f, ring)
        return acc
    if isinstance(ast, Sum):
        acc = Poly.zero(ring)
        for sign, t in ast.terms:
            v = elaborate(t, ring)
            acc = acc + v if sign > 0 else acc - v
        return acc
    if isinstance(ast, Bracket):
        return left_normed_commutator([elaborate(a, ring) for a in ast.args])
    raise TypeError(f"not an expression node: {ast!r}")


def parse_poly(text: str, generators: Sequence[str], ring: RingSpec) -> Poly:
    return elaborate(parse_expr(text, generators), ring)


def default_generators(count: int) -> list[str]:
    return [f"x{i + 1}" for i in range(count)]


# -- algebra files ----------------------------------------------------------------------


@dataclass
class AlgebraFile:
    dim: int
    ring: RingSpec
    sc: list = field(default_factory=list)  # (i, j, k, scalar)
    unit: list = field(default_factory=list)
    generators: dict = field(default_factory=dict)

    def to_algebra(self) -> StructureAlgebra:
        table = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for i, j, k, c in self.sc:
            cell = table[i][j]
            cell[k] = cell.get(k, 0) + c
        unit = {k: c for k, c in enumerate(self.unit) if c}
        gens = {name: {k: c for k, c in enumerate(v) if c} for name, v in self.generators.items()}
        return StructureAlgebra(self.dim, self.ring, table, unit, gens)

    def to_json(self) -> dict:
        ring = {"kind": self.ring.kind.value}
        if self.ring.modulus:
            ring["p"] = self.ring.modulus
        return {
            "dim": self.dim,
            "ring": ring,
            "sc": [[i, j, k, str(c)] for i, j, k, c in self.sc],
            "unit": [str(c) for c in self.unit],
            "generators": {name: [str(c) for c in v] for name, v in self.generators.items()},
        }

    @classmethod
    def from_algebra(cls, A: StructureAlgebra) -> "AlgebraFile":
        sc = [(i, j, k, c) for i in range(A.dim) for j in range(A.dim) for k, c in sorted(A.table[i][j].items())]
        dense = lambda v: [v.get(k, A.ring.zero) for k in range(A.dim)]
        return cls(A.dim, A.ring, sc, dense(A.unit), {n: dense(v) for n, v in A.generators.items()})


def _ring_from_doc(doc) -> RingSpec:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("ring must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "Fp":
        if "p" not in doc or not isinstance(doc["p"], int):
            raise SchemaError("ring kind Fp needs an integer 'p'")
        try:
            return parse_ring(f"Fp:{doc['p']}")
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    try:
        return parse_ring(str(kind))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _scalar(ring: RingSpec, value, where: str):
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise SchemaError(f"{where}: coefficient must be a string or integer")
    try:
        return ring.coerce(value if isinstance(value, int) else str(value))
    except NotInRing as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _vector(ring: RingSpec, dim: int, value, where: str) -> list:
    if not isinstance(value, list) or len(value) != dim:
        raise SchemaError(f"{where} must be a list of {dim} coefficients")
    return [_scalar(ring, c, f"{where}[{k}]") for k, c in enumerate(value)]


def algebra_from_json(doc) -> AlgebraFile:
    if not isinstance(doc, dict):
        raise SchemaError("algebra document must be a JSON object")
    missing = {"dim", "ring", "sc", "unit"} - doc.keys()
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("dim must be a positive integer")
    ring = _ring_from_doc(doc["ring"])
    sc = []
    if not isinstance(doc["sc"], list):
        raise SchemaError("sc must be a list")
    for n, entry in enumerate(doc["sc"]):
        if not isinstance(entry, list) or len(entry) != 4:
            raise SchemaError(f"sc[{n}] must be [i, j, k, coeff]")
        i, j, k, c = entry
        for name, idx in (("i", i), ("j", j), ("k", k)):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 0 <= idx < dim:
                raise SchemaError(f"sc[{n}]: index {name}={idx!r} outside 0..{dim - 1}")
        sc.append((i, j, k, _scalar(ring, c, f"sc[{n}]")))
    unit = _vector(ring, dim, doc["unit"], "unit")
    gens_doc = doc.get("generators", {})
    if not isinstance(gens_doc, dict):
        raise SchemaError("generators must be an object")
    gens = {str(name): _vector(ring, dim, v, f"generators.{name}") for name, v in gens_doc.items()}
    af = AlgebraFile(dim, ring, sc, unit, gens)
    try:
        af.to_algebra()
    except AlgebraError as exc:
        raise SchemaError(str(exc)) from None
    return af


def load_algebra(path) -> AlgebraFile:
    """Read and validate an algebra file (unit axiom and associativity)."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    return algebra_from_json(doc)


# -- reports ------------------------------------------------------------------------------


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, RingSpec):
        return str(value)
    return value


REPORT_VERDICTS = ("holds", "fails", "refused")


def emit_report(result: dict) -> dict:
    """Normalize a case result into the report schema."""
    for key in ("case", "verdict", "elapsed_ms"):
        if key not in result:
            raise SchemaError(f"report is missing {key!r}")
    if result["verdict"] not in REPORT_VERDICTS:
        raise SchemaError(f"verdict must be one of {REPORT_VERDICTS}")
    out = {"case": str(result["case"]), "verdict": result["verdict"], "elapsed_ms": int(result["elapsed_ms"])}
    if result.get("certificate") is not None:
        out["certificate"] = _jsonable(result["certificate"])
    if result.get("torsion_index") is not None:
        out["torsion_index"] = int(result["torsion_index"])
    for key, value in result.items():
        if key not in out and key not in ("certificate", "torsion_index"):
            out[key] = _jsonable(value)
    return out


def dump_reports(reports: Sequence[dict]) -> str:
    return json.dumps([emit_report(r) for r in reports], indent=2, sort_keys=False)
