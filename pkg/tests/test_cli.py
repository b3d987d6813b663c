from __future__ import annotations

import io
import json

import pytest

from hypercomm.cli import run


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


CASE1 = """gf 3 2

3

0 0 1
0 0 0
0 0 0

1 1 1
0 1 1
0 0 1
"""


@pytest.fixture
def case1(tmp_path):
    p = tmp_path / "case1.txt"
    p.write_text(CASE1)
    return str(p)


def test_decompose_case1(case1, tmp_path):
    code, out, _ = call("decompose", "--instance", case1)
    assert code == 0
    assert "# strategy: special3" in out and "# seed: 0" in out
    pair = tmp_path / "pair.txt"
    pair.write_text(out)
    code, out, _ = call("verify", "--instance", case1, "--pair", str(pair))
    assert code == 0 and out.startswith("verified")


def test_decompose_json(case1):
    code, out, _ = call("decompose", "--instance", case1, "--json", "--seed", "3")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "decomposed" and doc["seed"] == 3
    assert doc["strategy"] == "special3" and len(doc["A1"]) == 3


def test_verify_corrupted_pair(case1, tmp_path):
    pair = tmp_path / "bad.txt"
    pair.write_text("1 0 0\n0 1 0\n0 0 1\n\n1 0 0\n0 1 0\n0 0 1\n")
    code, out, _ = call("verify", "--instance", case1, "--pair", str(pair))
    assert code == 2 and "commutator mismatch" in out


def test_gen_decompose_verify_pipeline(tmp_path):
    for desc in ("gf 5", "gf 2 2", "gf 3 2"):
        code, inst, _ = call("gen", "--field", desc, "--n", "3", "--seed", "9")
        assert code == 0
        code, pair, _ = call("decompose", "--instance", "-", stdin=inst)
        assert code == 0
        ip, pp = tmp_path / "i.txt", tmp_path / "p.txt"
        ip.write_text(inst)
        pp.write_text(pair)
        assert call("verify", "--instance", str(ip), "--pair", str(pp))[0] == 0


def test_sweep_json():
    code, out, _ = call("sweep", "--field", "gf5", "--n", "3", "--count", "25", "--seed", "7",
                        "--force-identity-in-h", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["successes"] == 25 and doc["seed"] == 7


def test_sweep_text():
    code, out, _ = call("sweep", "--n", "3", "--count", "5", "--seed", "1")
    assert code == 0 and "successes: 5/5" in out and "seed: 1" in out


def test_oracle_command(case1, tmp_path):
    code, inst, _ = call("gen", "--field", "gf 2 2", "--n", "3", "--seed", "5")
    p = tmp_path / "gf4.txt"
    p.write_text(inst)
    code, out, _ = call("oracle", "--instance", str(p), "--exhaustive", "--seed", "2")
    assert code == 0 and "# oracle mode: exhaustive" in out
    # GF(9), n = 3: |H| = 9^8 is beyond exhaustive reach
    code, _, err = call("oracle", "--instance", case1, "--exhaustive")
    assert code == 1 and "too large" in err
    code, out, _ = call("oracle", "--instance", case1, "--budget", "2000")
    assert code == 0 and "# oracle mode: sampled" in out


def test_oracle_not_representable(tmp_path):
    p = tmp_path / "i.txt"
    p.write_text("gf 2\n2\n0 1\n0 0\n1 0\n0 1\n")
    code, out, _ = call("oracle", "--instance", str(p), "--exhaustive")
    assert code == 2 and "no pair" in out
    code, out, _ = call("decompose", "--instance", str(p))
    assert code == 2 and "bracket line" in out


def test_analyze_n2(tmp_path):
    p = tmp_path / "b.txt"
    p.write_text("gf 5\n2\n0 1\n0 0\n")
    code, out, _ = call("analyze-n2", "--field", "gf 5", "--B", str(p), "--enumerate")
    assert code == 0 and "case a" in out and "span dimension 1" in out
    p.write_text("gf 5\n2\n1 0\n0 1\n")
    code, out, _ = call("analyze-n2", "--B", str(p))
    assert code == 0 and "case b" in out


def test_exhausted_exit_code(case1):
    code, out, _ = call("decompose", "--instance", case1, "--budget", "0")
    assert code == 3 and "exhausted" in out


def test_usage_errors(tmp_path):
    assert call()[0] == 1
    assert call("decompose")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("decompose", "--instance", str(tmp_path / "missing.txt"))[0] == 1
    assert call("gen", "--field", "gf 4", "--n", "3")[0] == 1


def test_parse_error_reports_line(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("gf 5\n3\n1 2 3\n4 5\n")
    code, _, err = call("decompose", "--instance", str(p))
    assert code == 1 and "line 4" in err


def test_nonzero_trace_target_is_rejected(tmp_path):
    p = tmp_path / "i.txt"
    p.write_text("gf 5\n2\n1 0\n0 0\n0 1\n0 0\n")
    code, _, err = call("decompose", "--instance", str(p))
    assert code == 1 and "trace zero" in err
