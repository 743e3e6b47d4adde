import json
import subprocess
import sys

import pytest

from mbsmooth.cli import main

TRAIN = """ate pizza with fork V
ate pizza with cheese N
ate pasta with fork V
saw man with telescope V
saw man with hat N
bought shares of company N
"""


@pytest.fixture
def files(tmp_path):
    train = tmp_path / "train"
    train.write_text(TRAIN)
    test = tmp_path / "test"
    test.write_text("ate soup with fork V\nsaw woman with hat N\n")
    return tmp_path, train, test


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_weights(files, capsys):
    _, train, _ = files
    code, out, _ = run(capsys, "weights", "--train", train, "--quiet")
    assert code == 0
    w = json.loads(out)
    assert len(w) == 4 and all(x >= 0 for x in w)
    code, out, _ = run(capsys, "weights", "--train", train, "--scheme", "uniform")
    assert json.loads(out) == [1.0] * 4


def test_classify(files, capsys):
    _, train, test = files
    code, out, err = run(capsys, "classify", "--train", train, "--input", test, "--metric", "overlap", "--k", "2", "--voting", "dudani")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 2
    assert rows[0]["gold"] == "V" and rows[0]["label"] in ("V", "N")
    assert abs(sum(rows[0]["distribution"].values()) - 1) < 1e-12
    assert "classified 2 cases" in err


def test_classify_cosine(files, capsys):
    tmp, train, test = files
    vec = tmp / "vec"
    words = "ate pizza with fork cheese pasta saw man telescope hat bought shares of company soup woman".split()
    vec.write_text("".join(f"{w} {i % 3} {i % 5} 1.0\n" for i, w in enumerate(words)))
    code, out, _ = run(capsys, "classify", "--train", train, "--input", test, "--metric", "cosine", "--vectors", vec, "--k", "3", "--quiet")
    assert code == 0
    assert len(out.splitlines()) == 2
    code, out, _ = run(capsys, "eval", "--train", train, "--test", test, "--metric", "cosine", "--vectors", vec, "--quiet")
    assert code == 0 and json.loads(out)["n_cases"] == 2


def test_backoff_modes(files, capsys):
    _, train, test = files
    code, out, _ = run(capsys, "backoff", "--train", train, "--input", test, "--quiet")
    first = json.loads(out.splitlines()[0])
    assert first["mode"] == "naive" and first["level"] == 1
    assert [0] in first["schemata"] or [3] in first["schemata"]
    code, out, _ = run(capsys, "backoff", "--train", train, "--input", test, "--mode", "ig", "--quiet")
    assert json.loads(out.splitlines()[0])["mode"] == "ig"
    code, out, _ = run(capsys, "backoff", "--train", train, "--input", test, "--lambdas", "0.5,0.3,0.1,0.05,0.05", "--quiet")
    assert code == 0 and json.loads(out.splitlines()[0])["mode"] == "interpolation"
    code, _, err = run(capsys, "backoff", "--train", train, "--input", test, "--lambdas", "0.5,0.3")
    assert code == 1 and "sum" in err


def test_eval_and_cv(files, capsys):
    _, train, test = files
    code, out, _ = run(capsys, "eval", "--train", train, "--test", train, "--metric", "overlap", "--quiet")
    assert code == 0 and json.loads(out)["accuracy"] == 1.0
    code, out, _ = run(capsys, "eval", "--train", train, "--test", test, "--method", "naive-backoff", "--quiet")
    assert code == 0
    code, out, err = run(capsys, "cv", "--cases", train, "--folds", "3", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and len(rep["per_fold"]) == 3 and "3-fold cv" in err


def test_extract(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.write_text("The/DT Bonds/NNS rallied/VBD\n")
    lex = tmp_path / "lex"
    lex.write_text("rallied VBD VBN\n")
    code, out, _ = run(capsys, "extract", "--corpus", corpus, "--template", "pdass", "--lexicon", lex, "--quiet")
    assert code == 0
    assert out.splitlines()[0] == "B DT VBD-VBN s d NNS"
    code, _, err = run(capsys, "extract", "--corpus", corpus, "--template", "pdq")
    assert code == 1 and "template" in err


def test_check_equivalence_from_cases(files, capsys):
    _, train, _ = files
    code, out, _ = run(capsys, "check-equivalence", "--cases", train, "--trials", "50", "--quiet")
    assert code == 0 and json.loads(out)["passed"] == 50


def test_ragged_and_missing(files, capsys, tmp_path):
    bad = tmp_path / "bad"
    bad.write_text("a b c d V\na b c N\n")
    code, _, err = run(capsys, "weights", "--train", bad)
    assert code == 1 and ":2" in err
    code, _, err = run(capsys, "weights", "--train", tmp_path / "nope")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["weights"])
    assert exc.value.code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mbsmooth", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "check-equivalence" in proc.stdout
