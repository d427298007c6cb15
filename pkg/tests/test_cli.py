import pytest

from dyndeg.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, main
from dyndeg.matrix import A1, A0, format_matrix


@pytest.fixture
def mats(tmp_path):
    paths = {}
    for name, text in {
        "A": format_matrix(A0),
        "A1": "# the second example\n" + format_matrix(A1),
        "I": "1 0 0\n0 1 0\n0 0 1\n",
        "sing": "2 0 0\n0 1 0\n0 0 1\n",
        "short": "1 0 0\n0 1 0\n",
    }.items():
        p = tmp_path / f"{name}.mat"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_psi(mats, capsys):
    assert main(["psi", mats["I"], "--n", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"
    assert main(["psi", mats["A1"]]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "291"


def test_degree(mats, capsys):
    assert main(["degree", mats["A"]]) == EXIT_OK
    out = capsys.readouterr().out
    assert "deg h_A = 50" in out and "deg f_A <= 150" in out


def test_lambda2(mats, capsys):
    assert main(["lambda2", mats["A"]]) == EXIT_OK
    out = capsys.readouterr().out
    assert "lambda^2 - 224*lambda + 75" in out and "223.6646" in out


def test_input_errors(mats, tmp_path, capsys):
    assert main(["psi", mats["sing"]]) == EXIT_INPUT
    assert main(["psi", mats["short"]]) == EXIT_INPUT
    assert main(["psi", str(tmp_path / "missing.mat")]) == EXIT_INPUT
    assert main(["report", mats["A1"], "--step-cap", "10"]) == EXIT_INPUT
    assert main(["report", mats["A1"], "--moduli", "9..5"]) == EXIT_INPUT
    assert main(["nonsense"]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_identity(mats, capsys):
    assert main(["report", mats["I"]]) == EXIT_UNKNOWN
    assert "reducible" in capsys.readouterr().out
    assert main(["cone-check", mats["I"]]) == EXIT_FAIL


def test_orbit(mats, capsys):
    assert main(["orbit", mats["A"], "--point", "1,2,3,5", "--steps", "1"]) == EXIT_OK
    assert "f^1(P)" in capsys.readouterr().out
    assert main(["orbit", mats["A"], "--point", "1,0,1,1", "--steps", "2"]) == EXIT_UNKNOWN
    assert main(["orbit", mats["A"], "--point", "1,2,3"]) == EXIT_INPUT


def test_report_and_verify(mats, tmp_path, capsys):
    out = tmp_path / "a1.json"
    assert main(["report", mats["A1"], "--profile-d", "4,5", "--out", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "[291, 669]" in text and "transcendental: certified" in text
    assert "174.6660" in text and "1-cohomologically hyperbolic" in text
    first = out.read_bytes()
    assert main(["report", mats["A1"], "--profile-d", "4,5", "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == first
    assert main(["verify", str(out)]) == EXIT_OK


def test_report_A0(mats, capsys):
    assert main(["report", mats["A"], "--moduli", "5..200"]) == EXIT_OK
    assert "2-cohomologically hyperbolic" in capsys.readouterr().out
