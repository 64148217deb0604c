import json

import pytest

from incidence3d.cli import main


def _run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def _kv(text):
    return dict(row.split("=", 1) for row in text.strip().splitlines())


@pytest.fixture
def hermitian2(tmp_path, capsys):
    path = tmp_path / "h2.cfg"
    assert main(["gen", "hermitian", "2", "-o", str(path)]) == 0
    capsys.readouterr()
    return path


def test_gen_writes_sidecar(hermitian2):
    side = json.loads((hermitian2.parent / "h2.cfg.expect.json").read_text())
    assert side["generator"] == "hermitian" and side["expected"]["m"] == 27
    assert hermitian2.read_text().startswith("field F2^2\n")


def test_analyze_kv_and_json(capsys, hermitian2):
    rc, out, _ = _run(capsys, "analyze", str(hermitian2), "--quadric-budget", "0")
    assert rc == 0
    rec = _kv(out)
    assert (rec["m"], rec["n"], rec["I_LP"]) == ("27", "45", "135")
    rc, out, _ = _run(capsys, "analyze", str(hermitian2), "--json", "--quadric-budget", "0")
    assert json.loads(out)["I_LP"] == 135


def test_analyze_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("field Q\nline [1:0:0:0] [0:1:0:0]\npoint [1:1:0:0]\n"))
    rc, out, _ = _run(capsys, "analyze", "-")
    assert rc == 0 and _kv(out)["I_LP"] == "1"


def test_gen_usage_errors(capsys):
    assert _run(capsys, "gen", "nosuch")[0] == 1
    assert _run(capsys, "gen", "grid", "2", "--seed", "3")[0] == 1
    assert _run(capsys, "gen", "grid", "1", "2", "3")[0] == 1
    assert _run(capsys, "gen", "hermitian", "6")[0] == 1
    assert _run(capsys, "bogus")[0] == 1
    assert _run(capsys, "analyze", "/nonexistent/file")[0] == 1


def test_gen_key_value_params(capsys):
    rc, out, _ = _run(capsys, "gen", "random", "m=3", "n=2", "field=F5", "--seed", "9")
    assert rc == 0 and out.count("\nline ") == 3 and out.count("\npoint ") == 2


def test_fit(capsys, tmp_path):
    path = tmp_path / "g.cfg"
    main(["gen", "grid", "2", "-o", str(path)])
    capsys.readouterr()
    rc, out, _ = _run(capsys, "fit", "points", str(path))
    rec = _kv(out)
    assert rc == 0 and rec["degree"] == "2" and rec["certified"] == "true"
    rc, out, _ = _run(capsys, "fit", "lines", str(path))
    assert rc == 0 and _kv(out)["minimal"] == "true"


def test_lines_on_and_flecnodal(capsys, tmp_path):
    surf = tmp_path / "fermat.srf"
    surf.write_text("x0^3 + x1^3 + x2^3 + x3^3\n")
    rc, out, _ = _run(capsys, "lines-on", str(surf), "--field", "F7")
    assert rc == 0 and _kv(out)["line_count"] == "27"
    rc, out, _ = _run(capsys, "lines-on", str(surf), "--field", "F7", "--config")
    assert out.startswith("# provenance bruteforce\nfield F7\n") and out.count("\nline ") == 27
    rc, out, _ = _run(capsys, "flecnodal", str(surf), "--field", "F7")
    rec = _kv(out)
    assert rc == 0 and rec["f_divides_flec"] == "false" and int(rec["flec_degree"]) <= 15
    assert _run(capsys, "lines-on", str(surf))[0] == 1  # over Q


def test_genus(capsys, tmp_path):
    rc, out, _ = _run(capsys, "genus", "ci", "2", "2")
    assert rc == 0 and _kv(out)["p_a"] == "1"
    path = tmp_path / "p.cfg"
    main(["gen", "plane_pencils", "2", "2", "-o", str(path)])
    capsys.readouterr()
    rc, out, _ = _run(capsys, "genus", "arrangement", str(path))
    assert rc == 0 and _kv(out)["p_a"] == "1"
    pencil = tmp_path / "pencil.cfg"
    pencil.write_text("field Q\nline [0:0:0:1] [1:0:0:0]\nline [0:0:0:1] [0:1:0:0]\n")
    rc, out, _ = _run(capsys, "genus", "delta", str(pencil))
    assert rc == 0 and _kv(out)["delta"] == "1"
    assert _run(capsys, "genus", "ci", "2")[0] == 1


def test_verify_exit_codes(capsys, tmp_path):
    path = tmp_path / "g.cfg"
    main(["gen", "grid", "3", "-o", str(path)])
    capsys.readouterr()
    rc, out, _ = _run(capsys, "verify", str(path), "--bound", "main_c", "--quadric-budget", "0")
    assert rc == 0 and _kv(out)["verdict"] == "holds"
    # a planar bound on a non-planar configuration is informational only
    rc, out, _ = _run(capsys, "verify", str(path), "--bound", "PLANAR34", "--quadric-budget", "0")
    assert rc == 0 and _kv(out)["informational"] == "true"
    # a pencil of 9 lines through one point with that point listed: I_circ = 8 > 9^(3/4) = 5.196
    pencil = tmp_path / "pencil.cfg"
    rows = ["field Q"] + [f"line [0:0:0:1] [1:{a}:0:0]" for a in range(9)] + ["point [0:0:0:1]"]
    pencil.write_text("\n".join(rows) + "\n")
    rc, out, _ = _run(capsys, "verify", str(pencil), "--bound", "PLANAR34")
    assert rc == 2 and _kv(out)["verdict"] == "fails"
    assert _run(capsys, "verify", str(path), "--bound", "MAIN_C", "--c", "x")[0] == 1


def test_audit_constants(capsys):
    rc, out, _ = _run(capsys, "audit-constants")
    assert rc == 0 and _kv(out)["all_hold"] == "true"
    rc, out, _ = _run(capsys, "audit-constants", "--json")
    assert json.loads(out)["all_hold"] is True
