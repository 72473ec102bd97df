import json

import pytest

from lienil.battery import identity_suite, run_battery, select_cases, UnknownCase
from lienil.cli import main
from lienil.coeff import QQ
from lienil.freealg import IDENTITIES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "-")
    return code, json.loads(out)


def test_member_remark2(capsys):
    code, reps = run_json(capsys, "member", "[x1,x2]*[x3,x4,x5]", "--ideal", "TnOracle:4", "--ring", "Z")
    assert code == 0
    assert reps[0]["verdict"] == "fails" and reps[0]["torsion_index"] == 3


def test_member_examples(capsys):
    code, reps = run_json(capsys, "member", "[x1,x2,x3]", "--ideal", "Sn:3")
    assert reps[0]["verdict"] == "holds" and reps[0]["certificate"]["witness"]
    code, reps = run_json(capsys, "member", "x1", "--ideal", "TnOracle:2")
    assert reps[0]["verdict"] == "fails"
    code, _ = run_json(capsys, "member", "x1", "--ideal", "TnOracle:2", "--expect", "member")
    assert code == 1


def test_member_splits_and_caps(capsys):
    code, reps = run_json(capsys, "member", "[x1,x2] + [x1,x2,x3]", "--ideal", "TnOracle:2", "--degree-cap", "2")
    assert [r["verdict"] for r in reps] == ["holds", "refused"]


def test_member_file_ideal(tmp_path, capsys):
    f = tmp_path / "gens.txt"
    f.write_text("# commutator\n[a,b]\n")
    code, reps = run_json(capsys, "member", "a*[a,b]*b", "--ideal", f"@{f}", "--gens", "a,b")
    assert code == 0 and reps[0]["verdict"] == "holds"


def test_member_input_errors(capsys):
    assert run(capsys, "member", "[x1", "--ideal", "Sn:3")[0] == 2
    assert run(capsys, "member", "x1", "--ideal", "Bogus")[0] == 2
    assert run(capsys, "member", "x1", "--ideal", "Sn:3", "--ring", "Fp:4")[0] == 2
    assert run(capsys, "member")[0] == 2


def test_verify_examples(capsys):
    code, reps = run_json(capsys, "verify", "--example", "grassmann(3)", "--n", "3")
    assert code == 0 and reps[0]["theorem"]["verdict"] == reps[0]["oracle"]["verdict"] == "LieNilpotent"
    code, reps = run_json(capsys, "verify", "--example", "heisenberg_truncated(4)", "--n", "3")
    assert reps[0]["theorem"]["verdict"] == "NotLieNilpotent" and "witness" in reps[0]["theorem"]
    code, reps = run_json(capsys, "verify", "--example", "grassmann(3)", "--n", "3", "--ring", "Z",
                          "--mode", "theorem")
    assert reps[0]["verdict"] == "refused"
    code, reps = run_json(capsys, "verify", "--example", "grassmann(3)", "--n", "3", "--ring", "Fp:3",
                          "--mode", "theorem", "--force")
    assert reps[0]["theorem"]["condition_only"] is True


def test_verify_file(tmp_path, capsys):
    doc = {"dim": 2, "ring": {"kind": "Q"}, "sc": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
           "unit": ["1", "0"], "generators": {"t": ["0", "1"]}}
    f = tmp_path / "alg.json"
    f.write_text(json.dumps(doc))
    code, reps = run_json(capsys, "verify", "--algebra", str(f), "--n", "2")
    assert code == 0 and reps[0]["lie_nilpotent"] is True
    doc["unit"] = ["0", "0"]
    f.write_text(json.dumps(doc))
    assert run(capsys, "verify", "--algebra", str(f), "--n", "2")[0] == 2


def test_identities_command(capsys):
    code, reps = run_json(capsys, "identities", "--seed", "1", "--samples", "5")
    assert code == 0 and reps[0]["verdict"] == "holds"
    code, reps = run_json(capsys, "identities", "--samples", "0")
    assert code == 0 and reps[0]["families"] == {}


def test_reports_deterministic(capsys):
    _, a = run_json(capsys, "identities", "--seed", "7", "--samples", "3")
    _, b = run_json(capsys, "identities", "--seed", "7", "--samples", "3")
    for r in (a[0], b[0]):
        r.pop("elapsed_ms")
    assert a == b


def test_corrupted_identity_table_reports_counterexample():
    def wrong(args):
        a1, a2, b = args
        return a1 * a2 * b - b * a1 * a2, a1 * a2 * b
    table = dict(IDENTITIES, broken=(wrong, 3, 3))
    rep = identity_suite(1, 10, {"Q": QQ}, table=table)
    assert rep["Q"]["broken"]["passed"] < 10 and rep["Q"]["broken"]["counterexample"]
    assert rep["Q"]["prod2_once"]["passed"] == 10


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "remark2-torsion")
    assert code == 0 and "remark2-torsion: holds" in out and "torsion_index=3" in out
    code, out, _ = run(capsys, "reproduce", "theorem2-n3-Q-*", "--list")
    assert code == 0 and len(out.strip().splitlines()) == len(select_cases(["theorem2-n3-Q-*"]))
    assert run(capsys, "reproduce", "no-such-case")[0] == 2
    with pytest.raises(UnknownCase):
        select_cases(["no-such-case"])


def test_parallel_battery_matches_serial():
    pats = ["theorem2-n3-Q-1.1.1", "remark2-torsion", "prop3-*"]
    strip = lambda reps: [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in reps]
    assert strip(run_battery(pats, jobs=2)) == strip(run_battery(pats, jobs=1))
