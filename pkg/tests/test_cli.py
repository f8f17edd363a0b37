from __future__ import annotations

import json

import pytest

from folsym.cli import main, parse_t_polynomial

JOU2 = "(x^2*y - 1)dx + (y^2 - x^3)dy\n"
FERMAT4 = "(y - y^4)dx + (-x + x^4)dy\n"
RADIAL = "x*dy - y*dx\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_diag_jouanolou(tmp_path, capsys):
    path = write(tmp_path, "j2.txt", JOU2)
    code, out, _ = run(capsys, "diag", path)
    assert code == 0
    assert "order: 7" in out
    assert "degree: 2" in out


def test_diag_radial_infinite(tmp_path, capsys):
    path = write(tmp_path, "r.txt", RADIAL)
    code, out, _ = run(capsys, "diag", path)
    assert code == 0
    assert "INFINITE" in out


def test_diag_fermat_enumerate(tmp_path, capsys):
    path = write(tmp_path, "f4.txt", FERMAT4)
    code, out, _ = run(capsys, "diag", path, "--enumerate")
    assert code == 0
    assert "order: 9" in out
    assert out.count("element:") == 9


def test_diag_parse_error(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "this is not a form\n")
    code, _, err = run(capsys, "diag", path)
    assert code == 2
    assert "error" in err


def test_diag_missing_file(capsys):
    code, _, err = run(capsys, "diag", "no-such-file.txt")
    assert code == 2


def test_molien_compare_pass(tmp_path, capsys):
    numer = write(tmp_path, "n.txt", "t^4 + t^7 + t^10 + t^13 + t^16 + t^19\n")
    code, out, _ = run(
        capsys, "--trunc", "25", "molien", "--group", "hessian-cover",
        "--char", "0", "--kind", "fields", "--compare", numer,
        "--denom", "9,12,18",
    )
    assert code == 0
    assert "PASS" in out
    assert "t^4 + t^7 + t^10" in out


def test_molien_compare_fail(tmp_path, capsys):
    numer = write(tmp_path, "n.txt", "t^5\n")
    code, out, _ = run(
        capsys, "--trunc", "20", "molien", "--group", "hessian-cover",
        "--char", "0", "--kind", "fields", "--compare", numer,
        "--denom", "9,12,18",
    )
    assert code == 1
    assert "FAIL" in out


def test_molien_ring_kind(capsys):
    code, out, _ = run(
        capsys, "--trunc", "8", "molien", "--group", "hessian-cover",
        "--char", "0", "--kind", "ring",
    )
    assert code == 0
    assert out.strip() == "1 + t^6"


def test_molien_unknown_group(capsys):
    code, _, err = run(capsys, "molien", "--group", "nope")
    assert code == 2


def test_semi_dimensions(capsys):
    code, out, _ = run(capsys, "semi", "--group", "klein", "--degree", "6")
    assert code == 0
    assert "dim = 0" in out
    code, out, _ = run(capsys, "semi", "--group", "icosahedral", "--degree", "9")
    assert code == 0
    assert "dim = 2" in out
    assert out.count(")dX") == 2


def test_semi_degree_cap(capsys):
    code, _, err = run(capsys, "semi", "--group", "klein", "--degree", "99")
    assert code == 2


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert len([ln for ln in out.splitlines() if ln.strip()]) == 8
    for name in ("J", "F", "G", "S", "H4", "H7", "P5", "P11"):
        assert any(ln.split()[0] == name for ln in out.splitlines() if ln.strip())


def test_catalog_verify(capsys):
    code, out, _ = run(
        capsys, "catalog", "verify", "--name", "jouanolou", "--degree", "3"
    )
    assert code == 0
    assert "PASS" in out and "39" in out
    code, out, _ = run(capsys, "catalog", "verify", "--name", "hessian4")
    assert code == 0
    assert "216" in out


def test_catalog_unknown_entry(capsys):
    code, _, err = run(capsys, "catalog", "verify", "--name", "nope")
    assert code == 2


def test_orbit_sizes(capsys):
    code, out, _ = run(capsys, "orbit", "--group", "F", "--point", "0,0,1")
    assert code == 0
    assert "size: 12" in out
    code, out, _ = run(capsys, "orbit", "--group", "F", "--point", "0,1,-1")
    assert code == 0
    assert "size: 9" in out
    code, out, _ = run(capsys, "orbit", "--group", "trivial", "--point", "1,0,0")
    assert code == 0
    assert "size: 1" in out


def test_orbit_bad_point(capsys):
    code, _, err = run(capsys, "orbit", "--group", "F", "--point", "0,0")
    assert code == 2


def test_deterministic_output(tmp_path, capsys):
    path = write(tmp_path, "j2.txt", JOU2)
    _, out1, _ = run(capsys, "diag", path)
    _, out2, _ = run(capsys, "diag", path)
    assert out1 == out2


def test_json_round_trip(tmp_path, capsys):
    path = write(tmp_path, "j2.txt", JOU2)
    code, out, _ = run(capsys, "--json", "diag", path)
    assert code == 0
    payload = json.loads(out)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["order"] == 7
    assert payload["infinity_invariant"] is False

    code, out, _ = run(capsys, "--json", "catalog", "list")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["entries"]) == 23

    code, out, _ = run(
        capsys, "--json", "semi", "--group", "hessian-cover",
        "--char", "0", "--degree", "4",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dim"] == 1


def test_parse_t_polynomial():
    assert parse_t_polynomial("t^4 + 2*t^7") == {4: 1, 7: 2}
    assert parse_t_polynomial("-t^16 + t^5") == {16: -1, 5: 1}
    assert parse_t_polynomial("3") == {0: 3}
