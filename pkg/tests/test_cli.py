import json

import pytest

from troprank.cli import main
from troprank.documents import MatrixDocument
from troprank.sampling import generated_matrix

from conftest import M


def write(tmp_path, name, a):
    p = tmp_path / name
    p.write_text(MatrixDocument(a).dumps())
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_det(tmp_path, capsys):
    code, out = run(capsys, "det", write(tmp_path, "z.json", M([0, 0], [0, 0])))
    d = json.loads(out.out)
    assert code == 0 and d["value"] == "0" and d["singular"] is True


def test_rank_and_barvinok(tmp_path, capsys):
    f = write(tmp_path, "i.json", M([0, 1, 1], [1, 0, 1], [1, 1, 0]))
    code, out = run(capsys, "rank", f)
    assert code == 0 and json.loads(out.out)["tropical_rank"] == 3
    code, out = run(capsys, "barvinok", f)
    assert code == 0 and json.loads(out.out)["barvinok_rank"] == 3
    code, out = run(capsys, "barvinok", f, "--max-r", "2")
    assert code == 0 and json.loads(out.out)["exceeds_max_r"] == 2


def test_certify_verify_tamper(tmp_path, capsys):
    f = write(tmp_path, "r1.json", M([0, 2], [1, 3]))
    cert = str(tmp_path / "c.json")
    code, out = run(capsys, "certify", f, "--out", cert)
    assert code == 0 and json.loads(out.out)["upper"] == 1
    code, out = run(capsys, "verify", cert)
    assert code == 0 and json.loads(out.out)["verified"] is True
    d = json.loads(open(cert).read())
    d["lift"][1][0]["num"][0][1] = "2"
    (tmp_path / "t.json").write_text(json.dumps(d))
    code, out = run(capsys, "verify", str(tmp_path / "t.json"))
    assert code == 2 and json.loads(out.out)["verified"] is False


def test_zeroed_entry_is_a_failed_verification(tmp_path, capsys):
    f = write(tmp_path, "a.json", generated_matrix(0, 5, 5, 3, 0))
    cert = tmp_path / "c.json"
    run(capsys, "certify", f, "--out", str(cert))
    d = json.loads(cert.read_text())
    d["lift"][0][0]["num"] = []
    cert.write_text(json.dumps(d))
    code, _ = run(capsys, "verify", str(cert))
    assert code == 2


def test_certify_stdout_and_rank2(tmp_path, capsys):
    code, out = run(capsys, "certify", write(tmp_path, "a.json", generated_matrix(0, 6, 5, 3, 0)))
    assert code == 0 and json.loads(out.out)["rank_bound"] == 3
    code, out = run(capsys, "certify", write(tmp_path, "b.json", generated_matrix(0, 4, 4, 2, 0)))
    assert code == 0 and json.loads(out.out)["constructive"] is False


def test_gen_deterministic(tmp_path, capsys):
    args = ["gen", "--shape", "gx5", "--rows", "5", "--tropical-rank", "3", "--count", "10", "--seed", "1"]
    assert run(capsys, *args, "--out", str(tmp_path / "a"))[0] == 0
    assert run(capsys, *args, "--out", str(tmp_path / "b"))[0] == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(files) == 10
    for name in files:
        a = (tmp_path / "a" / name).read_bytes()
        assert a == (tmp_path / "b" / name).read_bytes()
        code, out = run(capsys, "rank", str(tmp_path / "a" / name))
        assert json.loads(out.out)["tropical_rank"] == 3


def test_gen_stdout(capsys):
    code, out = run(capsys, "gen", "--shape", "4x5", "--tropical-rank", "3", "--count", "2")
    lines = out.out.strip().splitlines()
    assert code == 0 and len(lines) == 2 and json.loads(lines[0])["rows"] == 4


@pytest.mark.parametrize("argv", [
    ["gen", "--shape", "2x2", "--tropical-rank", "3"],
    ["gen", "--shape", "gx5", "--tropical-rank", "3"],
])
def test_gen_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "det", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"entries": [[0.5, 1]]}')
    assert run(capsys, "rank", str(bad))[0] == 3
    assert run(capsys, "rank", str(bad), "--allow-decimal")[0] == 0
    assert run(capsys, "det", write(tmp_path, "r.json", M([0, 1, 2])))[0] == 3
    assert run(capsys, "barvinok", write(tmp_path, "big.json", M(*[[0] * 7] * 7)))[0] == 3
    assert run(capsys, "verify", str(bad))[0] == 3


def test_corpus(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, o = run(capsys, "corpus", "--suite", "oracle", "--count", "2", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0 and rep["ok"] and rep["total"] == 10


def test_corpus_violation_exit_code(tmp_path, capsys, monkeypatch):
    import troprank.corpus as corpus
    real = corpus.run_task

    def task(t):
        rec = real(t)
        rec.status = "MISMATCH"
        return rec

    monkeypatch.setattr(corpus, "run_task", task)
    out = tmp_path / "r.json"
    code, _ = run(capsys, "corpus", "--suite", "oracle", "--count", "1", "--out", str(out))
    assert code == 4 and json.loads(out.read_text())["records"][0]["matrix"]
