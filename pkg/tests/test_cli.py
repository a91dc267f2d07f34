import json
from pathlib import Path

import pytest

from gbskit.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_nf(capsys):
    got = run_json(capsys, "nf", DATA / "bs23.graph", "t a^2 t^-1")
    assert got == {"word": "t a^2 t^-1", "canonical": "a^3", "letters": 0}
    got = run_json(capsys, "nf", DATA / "bs23.graph", "t a^5")
    assert got["canonical"] == "a^6 t a"


def test_tl_commens_modulus(capsys):
    g = DATA / "bs23.graph"
    assert run_json(capsys, "tl", g, "t a")["kind"] == "hyperbolic"
    assert run_json(capsys, "commens", g, "t^2") == {"word": "t^2", "p": "4", "q": "9", "base": "a"}
    assert run_json(capsys, "modulus", g, "t^2") == {"word": "t^2", "num": "4", "den": "9"}


def test_classify(capsys):
    rep = run_json(capsys, "classify", DATA / "bs12.graph")
    assert rep["class"] == "SolvableBS1n" and rep["n"] == "2"
    assert run_json(capsys, "classify", DATA / "theta.graph")["class"] == "BS23Class"
    assert run_json(capsys, "classify", DATA / "klein.graph")["class"] == "VirtuallyZ2"


def test_twisted(capsys):
    rep = run_json(capsys, "twisted", DATA / "z.graph", "-a", DATA / "z_neg.aut",
                   "-w", DATA / "z_words.txt", "--radius", "3")
    assert rep["partition"]["classes"] == [["a^-2", "1", "a^2"], ["a^-1", "a"]]
    assert rep["modulus_classes"]["count"] == 1
    rep = run_json(capsys, "twisted", DATA / "bs23.graph", "-w", DATA / "bs23_powers.txt",
                   "--radius", "1")
    assert rep["modulus_classes"]["count"] == 11
    assert rep["certificate"]["kind"] == "NonUnimodularRInfinity"


def test_certify_and_ses(capsys):
    rep = run_json(capsys, "certify", DATA / "bs12.graph")
    assert rep["certificate"]["lower_bound"] == "infinity"
    rep = run_json(capsys, "ses-check", DATA / "f2xz.graph", "-a", DATA / "f2xz_swap.aut",
                   "--samples", "50")
    assert rep["passed"] == 50 and rep["ok"]


def test_conj_growth(capsys):
    rep = run_json(capsys, "conj-growth", DATA / "f2xz.graph", "a", "--radius", "4")
    assert rep["stabilized"] and rep["sizes"] == [1] * 5


def test_text_format(capsys):
    code, out, _ = run(capsys, "modulus", DATA / "bs23.graph", "t", "--format", "text")
    assert code == 0 and out.splitlines() == ["word: t", "num: 2", "den: 3"]


@pytest.mark.parametrize("argv,code", [
    (["nf", DATA / "bs23.graph", "t q"], 2),
    (["nf", DATA / "missing.graph", "t"], 2),
    (["nf", DATA / "bs23.graph", "t", "--threads", "0"], 2),
    (["certify", DATA / "bs23.graph", "-a", DATA / "bs23_broken.aut"], 3),
    (["ses-check", DATA / "bs23.graph"], 4),
    (["twisted", DATA / "bs23.graph", "-w", DATA / "bs23_powers.txt", "--radius", "6"], 5),
    (["nf", DATA / "bs12.graph", "t^80 a t^-80", "--max-digits", "5"], 5),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == "" and err.startswith("gbskit")


def test_env_digit_cap(capsys, monkeypatch):
    monkeypatch.setenv("GBSKIT_MAX_DIGITS", "5")
    assert run(capsys, "nf", DATA / "bs12.graph", "t^80 a t^-80")[0] == 5


@pytest.mark.parametrize("argv", [
    ["twisted", DATA / "bs23.graph", "-a", DATA / "bs23_inv.aut", "-w", DATA / "bs23_powers.txt",
     "--radius", "2"],
    ["conj-growth", DATA / "bs23.graph", "a", "--radius", "3"],
    ["ses-check", DATA / "f2xz.graph", "-a", DATA / "f2xz_swap.aut", "--samples", "40"],
])
def test_threads_byte_identical(capsys, argv):
    outs = {run(capsys, *argv, "--threads", t)[1] for t in ("1", "4", "1", "4")}
    assert len(outs) == 1
