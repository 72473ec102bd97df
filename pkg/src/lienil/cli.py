"""Command-line entry point: ``lienil {member,verify,identities,reproduce}``.

Exit codes: 0 success, 1 a case failed (or the two nilpotency checks
disagree), 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from pathlib import Path

from . import battery
from .coeff import NotInRing, parse_ring
from .exprio import ParseError, SchemaError, emit_report, load_algebra, parse_poly
from .findim import AlgebraError, example_algebra, lie_nilpotency_oracle, verify_via_theorem
from .freealg import homogeneous_components, render
from .gensets import parse_family
from .ideal import Verdict, member, torsion_member

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output -------------------------------------------------------------------------------


def _flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _human(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                sub = _human(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {json.dumps(v) if _flat(v) else v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(reports: list[dict], args) -> None:
    doc = reports
    if args.json == "-":
        print(json.dumps(doc, indent=2))
    else:
        for r in reports:
            print("\n".join(_human(r)))
            print()
        if args.json:
            Path(args.json).write_text(json.dumps(doc, indent=2) + "\n")


# -- generator names and families ---------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_XK_RE = re.compile(r"^x([1-9]\d*)$")


def _generator_names(args, texts: list[str]) -> list[str]:
    if args.gens:
        names = [n.strip() for n in args.gens.split(",") if n.strip()]
        if len(set(names)) != len(names):
            raise UsageError("duplicate generator names in --gens")
        return names
    found = []
    for t in texts:
        for n in _NAME_RE.findall(t):
            if n not in found:
                found.append(n)
    if found and all(_XK_RE.match(n) for n in found):
        top = max(int(_XK_RE.match(n).group(1)) for n in found)
        return [f"x{i}" for i in range(1, top + 1)]
    return found


def _read_ideal_file(path: str) -> list[str]:
    text = Path(path).read_text()
    if text.lstrip().startswith("["):
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
            raise UsageError(f"{path}: expected a JSON list of expressions")
        return data
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


# -- subcommands --------------------------------------------------------------------------------


def cmd_member(args) -> int:
    ring = parse_ring(args.ring)
    ideal_texts = _read_ideal_file(args.ideal[1:]) if args.ideal.startswith("@") else []
    names = _generator_names(args, [args.target] + ideal_texts)
    target = parse_poly(args.target, names, ring)
    g = len(names)
    family = None if ideal_texts else parse_family(args.ideal)
    file_gens = [parse_poly(t, names, ring) for t in ideal_texts]
    components = homogeneous_components(target, g) if target else {(0,) * g: target}
    reports = []
    worst = EXIT_OK
    for mu, part in sorted(components.items()):
        start = time.perf_counter()
        case = f"member:{'.'.join(map(str, mu))}"
        rep = {"case": case, "target": render(part, names), "ring": str(ring), "component": list(mu)}
        if args.degree_cap is not None and sum(mu) > args.degree_cap:
            rep.update(verdict="refused", reason=f"component degree {sum(mu)} exceeds --degree-cap {args.degree_cap}")
        else:
            gens = file_gens if family is None else family.build(g, ring, mu)
            cert = member(part, gens, g, mu=mu)
            rep["verdict"] = "holds" if cert.is_member else "fails"
            rep["certificate"] = cert.to_dict(names)
            if ring.kind.value == "Z":
                t = torsion_member(part, gens, g)
                rep["torsion_index"] = t.torsion_index
                if t.verdict is Verdict.TORSION and t.torsion_index != 1:
                    rep["torsion_certificate"] = t.to_dict(names)
            if args.expect and (args.expect == "member") != cert.is_member:
                worst = EXIT_FAIL
        rep["elapsed_ms"] = round((time.perf_counter() - start) * 1000)
        reports.append(emit_report(rep))
    _emit(reports, args)
    return worst


def _load_for_verify(args):
    if bool(args.algebra) == bool(args.example):
        raise UsageError("give exactly one of --algebra FILE or --example NAME(PARAM)")
    if args.example:
        return example_algebra(args.example, parse_ring(args.ring or "Q")), args.example
    A = load_algebra(args.algebra).to_algebra()
    if args.ring:
        A = A.change_ring(parse_ring(args.ring))
    return A, Path(args.algebra).name


def cmd_verify(args) -> int:
    A, label = _load_for_verify(args)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    start = time.perf_counter()
    rep = {"case": f"verify:{label}:n{args.n}", "ring": str(A.ring), "dimension": A.dim}
    results = {}
    if args.mode in ("theorem", "both"):
        results["theorem"] = verify_via_theorem(A, args.n, force=args.force)
    if args.mode in ("oracle", "both"):
        results["oracle"] = lie_nilpotency_oracle(A, args.n)
    for k, r in results.items():
        rep[k] = r.to_dict(A)
    answered = [r for r in results.values() if r.verdict != "Refused"]
    code = EXIT_OK
    if not answered:
        rep["verdict"] = "refused"
    elif len({r.verdict for r in answered}) > 1:
        rep["verdict"] = "fails"
        rep["inconsistency"] = "theorem check and oracle disagree"
        code = EXIT_FAIL
    else:
        rep["verdict"] = "holds" if answered[0].verdict == "LieNilpotent" else "fails"
        rep["lie_nilpotent"] = answered[0].verdict == "LieNilpotent"
    rep["elapsed_ms"] = round((time.perf_counter() - start) * 1000)
    _emit([emit_report(rep)], args)
    return code


def cmd_identities(args) -> int:
    if args.samples < 0:
        raise UsageError("--samples must be nonnegative")
    start = time.perf_counter()
    rings = battery.SUITE_RINGS
    if args.rings:
        rings = {}
        for r in args.rings.split(","):
            ring = parse_ring(r)
            rings[r] = ring
    report = battery.identity_suite(args.seed, args.samples, rings) if args.samples else {}
    failures = battery.suite_failures(report)
    rep = {"case": f"identities:seed{args.seed}", "verdict": "holds" if failures == 0 else "fails",
           "samples": args.samples, "families": report, "elapsed_ms": round((time.perf_counter() - start) * 1000)}
    _emit([emit_report(rep)], args)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_reproduce(args) -> int:
    if args.list:
        for c in battery.select_cases(args.cases):
            crit = f"criterion {c.criterion}" if c.criterion else "report only"
            print(f"{c.id}\t{crit}\t{c.summary}")
        return EXIT_OK
    reports = battery.run_battery(args.cases, jobs=args.jobs)
    if args.json == "-":
        print(json.dumps(reports, indent=2))
    else:
        for r in reports:
            extra = f" torsion_index={r['torsion_index']}" if "torsion_index" in r else ""
            if "finding" in r:
                extra += f" finding={json.dumps(r['finding'])}"
            print(f"{r['case']}: {r['verdict']} ({r['elapsed_ms']} ms){extra}")
        failed = sum(r["verdict"] == "fails" for r in reports)
        print(f"{len(reports)} cases, {failed} failed")
        if args.json:
            Path(args.json).write_text(json.dumps(reports, indent=2) + "\n")
    return EXIT_FAIL if any(r["verdict"] == "fails" for r in reports) else EXIT_OK


# -- parser --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH ('-' prints JSON only)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent cases")
    common.add_argument("--seed", type=int, default=1, help="seed for randomized suites")

    p = argparse.ArgumentParser(prog="lienil", description="Lie nilpotency and commutator ideal checks.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("member", parents=[common], help="ideal membership of an expression")
    m.add_argument("target", help='expression, e.g. "[x1,x2]*[x3,x4,x5]"')
    m.add_argument("--ideal", required=True, help="family (Sn:<n>, TnOracle:<n>, LatyshevT3, VolichenkoT4, "
                   "IntegerT4, WForms, IPrimeForms, SnVariantS:<n>:<k>, SnVariantSPrime:<n>) or @file")
    m.add_argument("--ring", default="Q", help="Q, Z, Z3loc or Fp:<p>")
    m.add_argument("--gens", help="comma separated generator names (default: x1..xN from the input)")
    m.add_argument("--degree-cap", type=int, help="refuse components of larger total degree")
    m.add_argument("--expect", choices=["member", "nonmember"], help="exit 1 if the answer differs")
    m.set_defaults(func=cmd_member)

    v = sub.add_parser("verify", parents=[common], help="Lie nilpotency of a finite-dimensional algebra")
    v.add_argument("--algebra", help="algebra JSON file")
    v.add_argument("--example", help="grassmann(k), unitriangular_plus_unit(m), commutative_series(m), "
                   "heisenberg_truncated(D) or upper_triangular(m)")
    v.add_argument("--n", type=int, required=True, help="bracket length")
    v.add_argument("--ring", help="Q, Z, Z3loc or Fp:<p> (examples default to Q)")
    v.add_argument("--mode", choices=["theorem", "oracle", "both"], default="both")
    v.add_argument("--force", action="store_true", help="run the theorem check even when 3 is not invertible")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identities", parents=[common], help="randomized expansion identity suite")
    i.add_argument("--samples", type=int, default=100)
    i.add_argument("--rings", help="comma separated rings (default Q,Z,Z3loc,Fp:5,Fp:3)")
    i.set_defaults(func=cmd_identities)

    r = sub.add_parser("reproduce", parents=[common], help="run the reproduction battery")
    r.add_argument("cases", nargs="*", help="case ids or glob patterns (default: all)")
    r.add_argument("--list", action="store_true", help="list matching case ids and exit")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except battery.UnknownCase as exc:
        print(f"error: unknown case id {exc.args[0]!r}", file=sys.stderr)
    except (UsageError, ParseError, SchemaError, AlgebraError, NotInRing, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
