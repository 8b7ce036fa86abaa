import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from tkk.algebra import scalar_algebra, special_linear
from tkk.errors import SpecFileError, ValidationError
from tkk.cli import main
from tkk.jordan import TripleSystem, triple_from_associative
from tkk.specio import (
    algebra_from_spec, algebra_to_spec, build_from_spec, builtin_base,
    dump_json, load_base, parse_spec, triple_from_spec, triple_to_spec,
)


def test_builtin_bases():
    dims = {"scalar": 1, "dual": 2, "double": 2, "grassmann2": 4, "mat2": 4,
            "free2d2": 7, "free2d3": 15}
    for name, dim in dims.items():
        assert builtin_base(name).dim == dim
    with pytest.raises(SpecFileError):
        build_from_spec("nope")


def test_builder_spec():
    sl2 = build_from_spec({"construct": "sl", "n": 2,
                           "base": {"construct": "scalar"}})
    assert sl2.dim == 3 and sl2.kind == "lie"
    plus = build_from_spec({"construct": "plus", "base": "mat2"})
    assert plus.kind == "jordan"
    with pytest.raises(SpecFileError):
        build_from_spec({"construct": "matrix"})


def test_algebra_roundtrip():
    a = builtin_base("grassmann2")
    spec = algebra_to_spec(a, "grassmann2")
    back = algebra_from_spec(spec)
    assert back.space.labels == a.space.labels
    assert back.table.entries == a.table.entries
    assert back.unit == a.unit
    assert json.loads(dump_json(spec)) == spec


def test_triple_roundtrip():
    t = triple_from_associative(builtin_base("mat2"))
    spec = triple_to_spec(t, "mat2-triple")
    back = triple_from_spec(spec)
    assert back.gamma == t.gamma


def test_bad_scalar_rejected(tmp_path):
    spec = algebra_to_spec(scalar_algebra(), "k")
    spec["products"][0]["terms"][0]["c"] = "1/0"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(spec))
    with pytest.raises(SpecFileError):
        parse_spec(p)


def test_invalid_kind_table_rejected_with_witness(tmp_path):
    mat2 = builtin_base("mat2")
    spec = algebra_to_spec(mat2, "mat2")
    spec["kind"] = "jordan"  # raw matrix table is not commutative
    p = tmp_path / "fake_jordan.json"
    p.write_text(json.dumps(spec))
    with pytest.raises(ValidationError) as exc:
        parse_spec(p)
    assert exc.value.report is not None
    assert exc.value.report.witness is not None


def test_parse_spec_dispatch(tmp_path):
    t = triple_from_associative(scalar_algebra())
    p = tmp_path / "triple.json"
    p.write_text(json.dumps(triple_to_spec(t, "k")))
    assert isinstance(parse_spec(p), TripleSystem)
    q = tmp_path / "builder.json"
    q.write_text(json.dumps({"construct": "scalar"}))
    assert parse_spec(q).dim == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    with pytest.raises(SpecFileError):
        parse_spec(bad)
    bad.write_text("not json")
    with pytest.raises(SpecFileError):
        parse_spec(bad)
    with pytest.raises(SpecFileError):
        load_base(str(p))  # triple system is not a base algebra


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def run_cli(args, capsys):
    status = main(args)
    out = capsys.readouterr().out
    return status, out


def test_cli_hc1(capsys):
    status, out = run_cli(["hc1", "--base", "scalar"], capsys)
    assert status == 0 and out.strip() == "hc1(scalar) = 0"
    status, out = run_cli(["hc1", "--base", "scalar", "--format", "machine"],
                          capsys)
    payload = json.loads(out)
    assert payload["hc1_dim"] == 0 and payload["schema"] == "tkk-report/1"


def test_cli_verify(capsys):
    status, out = run_cli(
        ["verify", "thm32", "--base", "scalar", "--format", "machine"], capsys)
    assert status == 0
    payload = json.loads(out)
    assert payload["iso"] is True and payload["theorem"] == "thm32"
    assert payload["dim_uce"] == payload["dim_tkk"] == 3


def test_cli_check_failure(capsys):
    status, out = run_cli(["check", "--base", "mat2", "--kind", "jordan"], capsys)
    assert status == 1
    assert "FAIL" in out and "witness" in out


def test_cli_check_triple_file(tmp_path, capsys):
    t = triple_from_associative(builtin_base("mat2"))
    p = tmp_path / "triple.json"
    p.write_text(json.dumps(triple_to_spec(t, "t")))
    status, out = run_cli(["check", "--base", str(p)], capsys)
    assert status == 0 and "PASS" in out


def test_cli_build_and_out(tmp_path, capsys):
    out_path = tmp_path / "sl2.json"
    status, _ = run_cli(["build", "sl", "--base", "scalar", "--n", "2",
                         "--out", str(out_path)], capsys)
    assert status == 0
    spec = json.loads(out_path.read_text())
    assert len(spec["basis"]) == 3 and spec["kind"] == "lie"
    back = algebra_from_spec(spec)
    assert back.dim == special_linear(scalar_algebra(), 2).dim

    status, out = run_cli(["build", "tkk", "--base", "scalar",
                           "--format", "machine"], capsys)
    payload = json.loads(out)
    assert payload["dims"] == [1, 1, 1]
    assert payload["kernel_dim_over_standard"] == 0


def test_cli_h2_and_growth(capsys):
    status, out = run_cli(["h2", "--base", "scalar", "--n", "2",
                           "--format", "machine"], capsys)
    assert status == 0 and json.loads(out)["h2_dim"] == 0
    status, out = run_cli(["growth", "--dmax", "2", "--format", "machine"], capsys)
    assert status == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["dim_A"] == 3 and rows[1]["dim_A"] == 7


def test_cli_guard(capsys):
    status = main(["h2", "--base", "free2d3", "--n", "4", "--max-dim", "50"])
    assert status == 2


def test_cli_steinberg(capsys):
    status, out = run_cli(["steinberg", "--base", "scalar", "--format",
                           "machine"], capsys)
    assert status == 0 and json.loads(out)["holds"] is True


def test_cli_machine_reports_are_byte_identical():
    cmd = [sys.executable, "-m", "tkk.cli", "verify", "thm32", "--base",
           "scalar", "--format", "machine"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_cli_fast_mode_byte_identical():
    base = [sys.executable, "-m", "tkk.cli", "h2", "--base", "mat2", "--n", "2",
            "--format", "machine"]
    plain = subprocess.run(base, capture_output=True, text=True)
    fast = subprocess.run(base + ["--fast"], capture_output=True, text=True)
    assert plain.returncode == fast.returncode == 0
    assert plain.stdout == fast.stdout


def test_cli_build_roundtrips(tmp_path, capsys):
    for what, n in (("plus", None), ("matrix", 2)):
        args = ["build", what, "--base", "mat2", "--out",
                str(tmp_path / f"{what}.json")]
        if n:
            args += ["--n", str(n)]
        assert main(args) == 0
        spec = json.loads((tmp_path / f"{what}.json").read_text())
        back = algebra_from_spec(spec)
        assert back.dim == (4 if what == "plus" else 16)
        assert back.kind == ("jordan" if what == "plus" else "associative")
