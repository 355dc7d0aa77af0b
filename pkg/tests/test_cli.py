import json
import os

import pytest

from gwinflect.cli import main


def run(tmp_path, *argv):
    return main(["--out", str(tmp_path), *argv])


def test_matrix_m(tmp_path, capsys):
    assert run(tmp_path, "matrix-m", "--ell", "2", "--g", "1") == 0
    blob = json.loads((tmp_path / "matrix_m.json").read_text())
    assert blob["det"] == 2 and blob["gv_count"] == 2 and blob["agree"]


def test_poly_weierstrass(tmp_path, capsys):
    assert run(tmp_path, "poly", "--n", "2", "--family", "weierstrass") == 0
    out = capsys.readouterr().out
    assert "(3*x^4 + 6*a*x^2 + 24*x - a^2)/8" in out


def test_audit_writes_schema(tmp_path):
    assert run(tmp_path, "audit", "--field", "Fq:p=13", "--f", "x^3+x+2", "--ell", "5") == 0
    blob = json.loads((tmp_path / "audit.json").read_text())
    for key in ("points", "total", "expected", "verdict", "reasons"):
        assert key in blob
    assert blob["total"]["field"] == "Fq:p=13"
    assert blob["verdict"]["rank"] == "pass"
    assert all({"point", "multiplicity", "index", "formula", "flags"} <= set(p)
               for p in blob["points"])


def test_audit_det_m_hypothesis_exit_code(tmp_path):
    # det M(3,1) = 3 vanishes over F_3
    assert run(tmp_path, "audit", "--field", "Fq:p=3", "--f", "x^3+x+2", "--ell", "3") == 2


def test_indices_and_oracle(tmp_path):
    assert run(tmp_path, "indices", "--field", "Fq:p=13", "--f", "x^3+2*x+2",
               "--ell", "5") == 0
    assert (tmp_path / "indices.json").exists()
    assert run(tmp_path, "oracle", "--field", "Fq:p=13", "--f", "x^3+2*x+2",
               "--ell", "5") == 0
    rows = json.loads((tmp_path / "oracle.json").read_text())
    assert rows and all(r["agree"] for r in rows)


def test_sweep_csv_and_figure(tmp_path):
    code = run(tmp_path, "sweep", "--n", "4", "--grid=-4:2:1")
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert lines[0] == "a,root_count,signs,separable"
    assert any(line.startswith("-3/1,0,,excluded") for line in lines)
    assert (tmp_path / "sweep.png").stat().st_size > 0


def test_count_csv(tmp_path):
    assert run(tmp_path, "count", "--n", "2", "--primes-up-to", "40") == 0
    lines = (tmp_path / "points.csv").read_text().splitlines()
    assert lines[0] == "n,p,count,e,e_normalized_numerator,denominator_convention"
    assert "2,5,7,1,1,6*sqrt(5)" in lines


def test_sato_tate_outputs(tmp_path):
    assert run(tmp_path, "sato-tate", "--bound", "60") == 0
    hist = (tmp_path / "histogram.csv").read_text().splitlines()
    assert hist[0].startswith("#")
    assert hist[1] == "bin_lo,bin_hi,frequency"
    assert (tmp_path / "histogram.png").stat().st_size > 0


def test_identical_seeds_identical_bytes(tmp_path):
    out1 = tmp_path / "one"
    out2 = tmp_path / "two"
    for out in (out1, out2):
        assert main(["--out", str(out), "--seed", "11", "audit", "--field", "Fq:p=13",
                     "--f", "x^3+x+2", "--ell", "5"]) == 0
    assert (out1 / "audit.json").read_bytes() == (out2 / "audit.json").read_bytes()


def test_parse_error_exit(tmp_path, capsys):
    assert run(tmp_path, "audit", "--field", "Fq:p=13", "--f", "x^2.5", "--ell", "5") == 1
    assert "parse error" in capsys.readouterr().err


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"field": "Fq:p=13", "f": "x^3+x+2", "ell": 5}))
    code = main(["--out", str(tmp_path), "--config", str(cfg), "audit",
                 "--field", "Fq:p=13", "--f", "x^3+x+2", "--ell", "5"])
    assert code == 0


def test_env_var_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("GWINFLECT_OUT", str(tmp_path / "envout"))
    assert main(["matrix-m", "--ell", "3", "--g", "2"]) == 0
    assert (tmp_path / "envout" / "matrix_m.json").exists()


def test_poly_custom_curve(tmp_path, capsys):
    assert run(tmp_path, "poly", "--field", "Fq:p=7", "--f", "x^3+2*x+1",
               "--g", "1", "--ell", "2") == 0
    out = capsys.readouterr().out
    assert "x^6" in out


def test_char_2_rejected_at_parse_time():
    import pytest
    from gwinflect.errors import GwinflectError
    from gwinflect.serialize import parse_field_spec

    with pytest.raises(GwinflectError):
        parse_field_spec("Fq:p=2")


def test_oracle_truncation_cap_flag(tmp_path):
    assert run(tmp_path, "oracle", "--field", "Fq:p=13", "--f", "x^3+x+2",
               "--ell", "1", "--truncation-cap", "64") == 0
