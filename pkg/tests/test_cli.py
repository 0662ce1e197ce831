import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from levi.cli import COMPLETE_LINE, Status, emit_report, main, run
from levi.fixtures import dump
from levi.oracle import OracleReport
from levi.problem import zero_tuple

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "levi" / "data"
GOLDEN = Path(__file__).parent / "golden"
SPEC_SL2_GF2 = str(DATA / "spec_sl2_gf2.json")


def call(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def call_json(argv, capsys):
    code, out, _ = call([*argv, "--json"], capsys)
    return code, json.loads(out)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_status_codes_are_distinct():
    assert [int(s) for s in Status] == [0, 1, 2, 3]


def test_monoid_build_and_validate(tmp_path, capsys):
    code, payload = call_json(["monoid", "build", "meet_semilattice", "--k", "2"], capsys)
    assert code == 0 and payload["identity"] == 0 and payload["size"] == 4
    path = write(tmp_path, "m.json", {k: payload[k] for k in ("size", "identity", "table")})
    code, out, _ = call(["monoid", "validate", path], capsys)
    assert code == 0 and "valid monoid" in out

    bad = {"size": 3, "identity": 0, "table": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]}
    code, payload = call_json(["monoid", "validate", write(tmp_path, "bad.json", bad)], capsys)
    assert code == 1 and payload["status"] == "validation-failure"
    assert "witness" in payload


def test_monoid_build_direct_product(capsys):
    code, payload = call_json(
        ["monoid", "build", "direct_product", "--factor", "meet_semilattice:2", "--factor", "symmetric3"], capsys
    )
    assert code == 0 and payload["size"] == 24
    code, _, err = call(["monoid", "build", "direct_product", "--factor", "cyclic:2"], capsys)
    assert code == 3 and err


def test_muls_enumerate(tmp_path, capsys):
    cyc = {"size": 2, "identity": 0, "table": [[0, 1], [1, 0]]}
    code, payload = call_json(["muls", "enumerate", write(tmp_path, "c2.json", cyc), "--field", "gf:5"], capsys)
    assert code == 0 and payload["count"] == 2
    assert [fn["values"] for fn in payload["functions"]] == [[1, 1], [1, 4]]
    code, _, _ = call(["muls", "enumerate", str(DATA / "monoid_sl2.json"), "--field", "rational"], capsys)
    assert code == 3


def test_spec_check(tmp_path, capsys):
    code, payload = call_json(["spec", "check", SPEC_SL2_GF2], capsys)
    assert code == 0 and payload["n"] == 2 and payload["m"] == 4
    obj = json.loads(Path(SPEC_SL2_GF2).read_text())
    obj["partition"] = [[1, 1], [2, 4]]
    code, payload = call_json(["spec", "check", write(tmp_path, "bad.json", obj)], capsys)
    assert code == 1 and not payload["valid"]


def test_generate_verify_classify_roundtrip(tmp_path, capsys, specs):
    spec_path = str(DATA / "spec_sl3_gf3.json")
    params = {"family": "Independent", "chi": [1] * 8, "a": 2, "b": 1, "c": [1, 2]}
    code, tup = call_json(["generate", spec_path, write(tmp_path, "p.json", params)], capsys)
    assert code == 0, tup
    tup.pop("status")
    tup_path = write(tmp_path, "t.json", tup)

    code, out, _ = call(["verify", spec_path, tup_path], capsys)
    assert code == 0 and "residual: 0 violations" in out

    code, cl = call_json(["classify", spec_path, tup_path], capsys)
    assert code == 0 and cl["family"] == "Independent"
    assert cl["a"] == 2 and cl["c"] == [1, 2]

    tup["f"][0] = (tup["f"][0] + 1) % 3
    bad_path = write(tmp_path, "bad.json", tup)
    code, payload = call_json(["verify", spec_path, bad_path], capsys)
    assert code == 1 and payload["violations"] > 0
    code, _ = call_json(["classify", spec_path, bad_path], capsys)
    assert code == 1


def test_verify_zero_tuple(tmp_path, capsys, specs):
    spec = specs("sl2_q")
    path = write(tmp_path, "z.json", zero_tuple(spec).to_json())
    code, out, _ = call(["verify", str(DATA / "spec_sl2_q.json"), path], capsys)
    assert code == 0 and "residual: 0 violations" in out


def test_sweep(capsys):
    code, payload = call_json(["sweep", SPEC_SL2_GF2], capsys)
    assert code == 0 and payload["count"] == 100
    code, _, err = call(["sweep", SPEC_SL2_GF2, "--budget", "10"], capsys)
    assert code == 3 and err


def test_usage_errors_exit_3(capsys):
    assert call([], capsys)[0] == 3
    assert call(["frobnicate"], capsys)[0] == 3
    assert call(["verify", SPEC_SL2_GF2], capsys)[0] == 3
    assert call(["verify", "/nonexistent/spec.json", "x.json"], capsys)[0] == 3


def test_oracle_compare_golden(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = call(["oracle", "compare", SPEC_SL2_GF2, "--json", "--out", str(out_path)], capsys)
    assert code == 0
    assert out == (GOLDEN / "oracle_sl2_gf2.json").read_text()
    report = json.loads(out_path.read_text())
    assert report["missing"] == report["extra"] == []
    assert report["oracle_count"] == report["family_count"] == 100


def test_oracle_compare_text_and_discrepancy(capsys):
    code, out, _ = call(["oracle", "compare", SPEC_SL2_GF2], capsys)
    assert code == 0 and COMPLETE_LINE in out
    code, payload = call_json(["oracle", "compare", SPEC_SL2_GF2, "--skip-family", "DegenerateNonzeroH"], capsys)
    assert code == 2 and payload["status"] == "discrepancy"
    assert len(payload["missing"]) == 60


def test_oracle_compare_rejects_out_of_budget(capsys):
    code, _, err = call(["oracle", "compare", str(DATA / "spec_na24_gf2.json")], capsys)
    assert code == 3 and "exceeds" in err


def test_emit_report_examples(specs):
    empty = OracleReport("d", 0, 0, [], [], {}, {})
    assert emit_report(empty) == (
        b'{\n  "clean": true,\n  "extra": [],\n  "family_count": 0,\n  "generated_per_family": {},\n'
        b'  "missing": [],\n  "oracle_count": 0,\n  "per_family": {},\n  "spec_digest": "d",\n'
        b'  "unclassified": []\n}\n'
    )
    assert COMPLETE_LINE.encode() in emit_report(empty, "text")
    spec = specs("sl2_gf3")
    t = zero_tuple(spec)
    one = OracleReport("d", 1, 0, [t], [], {}, {})
    data = json.loads(emit_report(one))
    assert data["missing"] == [t.to_json()] and not data["clean"]
    assert COMPLETE_LINE.encode() not in emit_report(one, "text")


def test_run_returns_command_result():
    result, args = run(["spec", "check", SPEC_SL2_GF2])
    assert result.status is Status.OK and result.payload["valid"]


def test_bundled_fixtures_match_builders(specs):
    from levi.fixtures import MONOIDS, SPECS

    for name in SPECS:
        assert (DATA / f"spec_{name}.json").read_text() == dump(specs(name).to_json())
    for name, build in MONOIDS.items():
        assert (DATA / f"monoid_{name}.json").read_text() == dump(build().to_json())


def test_byte_identical_across_runs_and_workers():
    outs = set()
    for workers in ("1", "2", "1"):
        env = dict(os.environ, LEVI_WORKERS=workers)
        proc = subprocess.run(
            [sys.executable, "-m", "levi", "oracle", "compare", SPEC_SL2_GF2, "--json"],
            capture_output=True,
            env=env,
            check=False,
        )
        assert proc.returncode == 0, proc.stderr
        outs.add(proc.stdout)
    assert len(outs) == 1
