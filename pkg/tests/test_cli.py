"""Tests for the command-line interface: outputs, exit codes, determinism."""

import csv
import json

import pytest

from qcext.cli import main
from qcext.extensions import extend_ns
from qcext.realmap import map_from_dict


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def read_csv_rows(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "y", "re", "im", "dilatation"]
    return rows[1:]


IDENTITY = {"kind": "affine", "slope": 1.0, "intercept": 0.0}
AFFINE = {"kind": "affine", "slope": 2.0, "intercept": 1.0}
BUMP = {"kind": "identity-plus-bump",
        "bumps": [{"center": 0.0, "halfwidth": 1.0, "amplitude": 0.3}]}


def test_extend_identity_family_equals_grid(tmp_path):
    map_file = write_json(tmp_path / "id.json", IDENTITY)
    out = tmp_path / "out.csv"
    code = main(["extend", "--map", map_file, "--method", "family",
                 "--a", "1.0", "--alpha", "2.0", "--nx", "2", "--ny", "2",
                 "--out", str(out)])
    assert code == 0
    for x, y, re, im, dil in read_csv_rows(out):
        assert float(re) == pytest.approx(float(x), abs=1e-12)
        assert float(im) == pytest.approx(float(y), abs=1e-12)
        assert float(dil) == 0.0


def test_extend_affine_rows_are_affine_image(tmp_path):
    map_file = write_json(tmp_path / "affine.json", AFFINE)
    out = tmp_path / "out.csv"
    code = main(["extend", "--map", map_file, "--method", "family",
                 "--a", "-0.7", "--alpha", "1.3", "--nx", "3", "--ny", "3",
                 "--out", str(out)])
    assert code == 0
    for x, y, re, im, _ in read_csv_rows(out):
        z = complex(float(x), float(y))
        assert complex(float(re), float(im)) == pytest.approx(2 * z + 1, abs=1e-12)


def test_extend_ns_matches_library_bit_for_bit(tmp_path):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    out = tmp_path / "out.csv"
    code = main(["extend", "--map", map_file, "--method", "ns",
                 "--nx", "4", "--ny", "3", "--out", str(out)])
    assert code == 0
    f = map_from_dict(BUMP)
    for x, y, re, im, dil in read_csv_rows(out):
        val = extend_ns(f, complex(float(x), float(y)))
        assert float(re) == val.real  # repr round-trips exactly
        assert float(im) == val.imag
        assert dil != ""


def test_extend_json_format(tmp_path):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    out = tmp_path / "out.json"
    code = main(["extend", "--map", map_file, "--method", "ba",
                 "--nx", "2", "--ny", "2", "--format", "json",
                 "--out", str(out)])
    assert code == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 4
    assert rows[0]["dilatation"] is None
    assert {"x", "y", "re", "im", "dilatation"} == set(rows[0])


def test_extend_de_on_disk_grid(tmp_path):
    map_file = write_json(tmp_path / "circ.json",
                          {"kind": "circle-mobius", "angle": 0.4,
                           "center": [0.2, 0.1]})
    out = tmp_path / "out.csv"
    code = main(["extend", "--map", map_file, "--method", "de",
                 "--x-min", "-0.4", "--x-max", "0.4", "--y-min", "0.1",
                 "--y-max", "0.5", "--nx", "2", "--ny", "2",
                 "--out", str(out)])
    assert code == 0
    rows = read_csv_rows(out)
    assert len(rows) == 4
    for _, _, re, im, dil in rows:
        assert abs(complex(float(re), float(im))) < 1.0
        assert dil == ""


def test_extend_de_outside_disk_is_usage_error(tmp_path):
    map_file = write_json(tmp_path / "circ.json", {"kind": "circle-identity"})
    code = main(["extend", "--map", map_file, "--method", "de",
                 "--x-max", "4.0", "--nx", "3", "--ny", "3"])
    assert code == 2


def test_extend_output_is_deterministic(tmp_path):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        assert main(["extend", "--map", map_file, "--method", "family",
                     "--a", "0.3", "--alpha", "1.7", "--out", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_homomorphism_passes(capsys):
    code = main(["verify", "--suite", "homomorphism", "--trials", "5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_group_action_passes(capsys):
    assert main(["verify", "--suite", "group-action", "--trials", "5"]) == 0


def test_verify_dilatation_cubic_expected_failure(tmp_path, capsys):
    cfg = write_json(tmp_path / "cfg.json",
                     {"map": "cubic", "a": 1.0, "alpha": 2.0,
                      "expect": "not-quasiconformal"})
    code = main(["verify", "--suite", "dilatation", "--config", cfg])
    out = capsys.readouterr().out
    assert code == 0
    assert "not quasiconformal" in out


def test_verify_malformed_config_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--suite", "pde", "--config", str(bad)]) == 2
    unknown = write_json(tmp_path / "unknown.json", {"bogus_key": 1})
    assert main(["verify", "--suite", "pde", "--config", unknown]) == 2


def test_usage_errors_exit_2(tmp_path):
    assert main(["verify", "--suite", "no-such-suite"]) == 2
    assert main(["extend", "--map", str(tmp_path / "missing.json")]) == 2
    bad_map = write_json(tmp_path / "bad.json", {"kind": "mystery"})
    assert main(["extend", "--map", bad_map]) == 2
    neg = write_json(tmp_path / "neg.json", {"kind": "affine", "slope": -1.0})
    assert main(["extend", "--map", neg]) == 2


def test_decompose_subcommand_writes_factors(tmp_path):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    out = tmp_path / "fac.json"
    code = main(["decompose", "--map", map_file, "--eps0", "0.2",
                 "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["eps0"] == 0.2
    assert payload["recomposition_error"] <= 1e-6
    factors = [map_from_dict(d) for d in payload["factors"]]
    assert all(max(m.deriv_hi - 1, 1 - m.deriv_lo) < 0.2 for m in factors)


def test_decompose_rejects_bad_eps0(tmp_path):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    assert main(["decompose", "--map", map_file, "--eps0", "1.5"]) == 2


def test_numerical_failure_exits_3(tmp_path):
    # an unreachable recomposition tolerance is a numerical failure, not usage
    map_file = write_json(tmp_path / "bump.json", BUMP)
    assert main(["decompose", "--map", map_file, "--eps0", "0.2",
                 "--tol", "1e-18"]) == 3


def test_info_subcommand(tmp_path, capsys):
    map_file = write_json(tmp_path / "bump.json", BUMP)
    assert main(["info", "--map", map_file]) == 0
    out = capsys.readouterr().out
    assert "identity-plus-bump" in out
    assert "C^2: True" in out


def test_verify_seed_changes_draws_but_not_determinism(capsys):
    assert main(["verify", "--suite", "boundary", "--trials", "3",
                 "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--suite", "boundary", "--trials", "3",
                 "--seed", "7"]) == 0
    second = capsys.readouterr().out
    assert first == second
