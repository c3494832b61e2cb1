"""
test_cli.py

  • build / query / oracle / gen / bench / stats through main().
  • Line formats are stable: key=value reports, tab-separated query rows.
  • Exit codes: 1 on errors, 2 on a failed --verify.
"""
import io
import json
import random
import sys

import pytest

from alcs import cli


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("ALCS_SEED", "ALCS_CONFIG", "ALCS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def abaab_files(tmp_path):
    text = tmp_path / "T.txt"
    text.write_bytes(b"abaab")
    index = tmp_path / "T.idx"
    assert cli.main(["build", "--text", str(text), "--epsilon", "0.5", "--seed", "1", "--out", str(index)]) == 0
    return text, index


def _write(tmp_path, name, data: bytes) -> str:
    path = tmp_path / name
    path.write_bytes(data)
    return str(path)


def _report(out: str) -> dict:
    return dict(line.split("=", 1) for line in out.strip().splitlines())


# ---- build ------------------------------------------------------------------


def test_build_prints_stats(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"abaab")
    index = tmp_path / "T.idx"
    assert cli.main(["build", "--text", text, "--epsilon", "0.5", "--seed", "1", "--out", str(index)]) == 0
    report = _report(capsys.readouterr().out)
    assert report["n"] == "5"
    assert report["z"] == "4"
    assert report["lengths"] == "3"
    assert report["left_entries"] == "6"
    assert report["right_entries"] == "6"
    assert int(report["bytes"]) == index.stat().st_size
    assert report["seed"] == "1"
    assert float(report["seconds"]) >= 0


def test_build_rejects_bad_epsilon(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"abaab")
    code = cli.main(["build", "--text", text, "--epsilon", "1.5", "--out", str(tmp_path / "x.idx")])
    assert code == 1
    assert "epsilon must be in (0,1)" in capsys.readouterr().err


def test_build_missing_text(tmp_path, capsys):
    code = cli.main(["build", "--text", str(tmp_path / "none.txt"), "--out", str(tmp_path / "x.idx")])
    assert code == 1
    assert capsys.readouterr().err.startswith("error:")


def test_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ALCS_SEED", "99")
    text = _write(tmp_path, "T.txt", b"abracadabra")
    assert cli.main(["build", "--text", text, "--out", str(tmp_path / "a.idx"), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 99


# ---- query ------------------------------------------------------------------


def test_query_worked_example(abaab_files, tmp_path, capsys):
    _, index = abaab_files
    capsys.readouterr()
    pattern = _write(tmp_path, "P.txt", b"aab")
    assert cli.main(["query", "--index", str(index), "--pattern", pattern]) == 0
    assert capsys.readouterr().out == "1\t3\t1\t3\t3\t616162\n"


def test_query_no_match(abaab_files, tmp_path, capsys):
    _, index = abaab_files
    capsys.readouterr()
    pattern = _write(tmp_path, "P.txt", b"zzz")
    assert cli.main(["query", "--index", str(index), "--pattern", pattern]) == 0
    assert capsys.readouterr().out == "1\t0\t-\t-\t-\t-\n"


def test_query_patterns_file_and_verify(abaab_files, tmp_path, capsys):
    text, index = abaab_files
    capsys.readouterr()
    patterns = _write(tmp_path, "P.txt", b"aab\nzzz\nbaab\n")
    args = ["query", "--index", str(index), "--patterns-file", patterns, "--verify", "--text", str(text)]
    assert cli.main(args + ["--threads", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split("\t")[0] for line in lines] == ["1", "2", "3"]
    assert lines[0] == "1\t3\t1\t3\t3\t616162"
    assert lines[1].split("\t")[1] == "0"
    assert lines[2].split("\t")[1] == "4"


def test_query_reads_stdin(abaab_files, capsys, monkeypatch):
    _, index = abaab_files
    capsys.readouterr()
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(b"aab\n")))
    assert cli.main(["query", "--index", str(index), "--patterns-file", "-", "--algo", "naive"]) == 0
    assert capsys.readouterr().out == "1\t3\t1\t3\t3\t616162\n"


def test_query_json(abaab_files, tmp_path, capsys):
    text, index = abaab_files
    capsys.readouterr()
    pattern = _write(tmp_path, "P.txt", b"aab")
    args = ["query", "--index", str(index), "--pattern", pattern, "--json", "--verify", "--text", str(text)]
    assert cli.main(args) == 0
    record = json.loads(capsys.readouterr().out)
    assert record == {
        "ordinal": 1, "length": 3, "p_start": 1, "p_end": 3, "t_pos": 3, "hex": "616162", "verified": True,
    }


def test_verify_requires_text(abaab_files, tmp_path, capsys):
    _, index = abaab_files
    pattern = _write(tmp_path, "P.txt", b"aab")
    assert cli.main(["query", "--index", str(index), "--pattern", pattern, "--verify"]) == 1
    assert "--verify requires --text" in capsys.readouterr().err


def test_verify_failure_exits_two(abaab_files, tmp_path, capsys, monkeypatch):
    text, index = abaab_files
    capsys.readouterr()
    monkeypatch.setattr(cli, "verify_result", lambda result, pattern, text: False)
    patterns = _write(tmp_path, "P.txt", b"aab\n")
    args = ["query", "--index", str(index), "--patterns-file", patterns, "--verify", "--text", str(text)]
    assert cli.main(args) == 2
    assert "pattern 1" in capsys.readouterr().err


def test_query_bad_index(tmp_path, capsys):
    index = _write(tmp_path, "bad.idx", b"definitely not an index")
    pattern = _write(tmp_path, "P.txt", b"aab")
    assert cli.main(["query", "--index", index, "--pattern", pattern]) == 1
    assert "not an index file" in capsys.readouterr().err
    assert cli.main(["query", "--index", str(tmp_path / "missing.idx"), "--pattern", pattern]) == 1


def test_naive_and_pruned_columns_agree(tmp_path, capsys):
    rng = random.Random(79)
    text = _write(tmp_path, "T.txt", bytes(rng.choice(b"ab") for _ in range(600)))
    index = str(tmp_path / "T.idx")
    assert cli.main(["build", "--text", text, "--epsilon", "0.25", "--seed", "3", "--out", index]) == 0
    lines = b"\n".join(bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 50))) for _ in range(200))
    patterns = _write(tmp_path, "P.txt", lines + b"\n")
    capsys.readouterr()
    columns = {}
    for algo in ("naive", "pruned"):
        assert cli.main(["query", "--index", index, "--patterns-file", patterns, "--algo", algo]) == 0
        columns[algo] = [line.split("\t")[1] for line in capsys.readouterr().out.splitlines()]
    assert len(columns["naive"]) == 200
    assert columns["naive"] == columns["pruned"]


# ---- oracle -----------------------------------------------------------------


def test_oracle(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"abaab")
    assert cli.main(["oracle", "--text", text, "--pattern", _write(tmp_path, "P.txt", b"aab")]) == 0
    report = _report(capsys.readouterr().out)
    assert report == {"length": "3", "p_start": "1", "p_end": "3", "t_start": "3", "t_end": "5"}

    assert cli.main(["oracle", "--text", text, "--pattern", text]) == 0
    assert _report(capsys.readouterr().out)["length"] == "5"

    assert cli.main(["oracle", "--text", text, "--pattern", _write(tmp_path, "Q.txt", b"xyz")]) == 0
    report = _report(capsys.readouterr().out)
    assert report["length"] == "0"
    assert report["p_start"] == "-"


def test_oracle_missing_file(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"abaab")
    assert cli.main(["oracle", "--text", text, "--pattern", str(tmp_path / "none")]) == 1


# ---- gen --------------------------------------------------------------------


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    flags = ["--base-len", "1024", "--repeats", "64", "--mut-rate", "0.001", "--seed", "7"]
    assert cli.main(["gen", "--out", str(a)] + flags) == 0
    assert cli.main(["gen", "--out", str(b)] + flags) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_bytes()) == 65536
    assert _report(capsys.readouterr().out.splitlines()[0] + "\n")["bytes"] == "65536"


def test_gen_without_mutation(tmp_path):
    out = tmp_path / "c.txt"
    assert cli.main(["gen", "--out", str(out), "--base-len", "50", "--repeats", "4", "--mut-rate", "0"]) == 0
    data = out.read_bytes()
    assert data == data[:50] * 4


def test_gen_seed_from_environment(tmp_path, capsys, monkeypatch):
    flags = ["--base-len", "64", "--repeats", "8", "--mut-rate", "0.05", "--json"]
    explicit, from_env, default = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "c.txt"
    assert cli.main(["gen", "--out", str(default)] + flags) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 7
    assert cli.main(["gen", "--out", str(explicit), "--seed", "99"] + flags) == 0
    capsys.readouterr()
    monkeypatch.setenv("ALCS_SEED", "99")
    assert cli.main(["gen", "--out", str(from_env)] + flags) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 99
    assert from_env.read_bytes() == explicit.read_bytes()
    assert from_env.read_bytes() != default.read_bytes()


def test_gen_bad_parameters(tmp_path, capsys):
    assert cli.main(["gen", "--out", str(tmp_path / "c.txt"), "--mut-rate", "2"]) == 1
    assert capsys.readouterr().err.startswith("error:")


# ---- stats and bench --------------------------------------------------------


def test_stats(abaab_files, capsys):
    _, index = abaab_files
    capsys.readouterr()
    assert cli.main(["stats", "--index", str(index)]) == 0
    report = _report(capsys.readouterr().out)
    assert report["version"] == "1"
    assert report["epsilon"] == "0.5"
    assert (report["n"], report["z"]) == ("5", "4")
    assert report["lengths"] == "3"
    assert int(report["file_bytes"]) == index.stat().st_size


def test_bench_json(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"ACGTTGCAACGTAGCT" * 20)
    args = ["bench", "--text", text, "--seed", "2", "--pattern-len", "32", "--pattern-count", "4",
            "--repeats", "1", "--json"]
    assert cli.main(args) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n"] == 320
    assert report["index_bytes"] > 0
    assert [row["algo"] for row in report["rows"]] == ["naive", "pruned"]
    for row in report["rows"]:
        assert set(row) >= {"mean_ms", "median_ms", "p99_ms", "mean_checks"}


def test_bench_text_report(tmp_path, capsys):
    text = _write(tmp_path, "T.txt", b"abaababaab" * 10)
    args = ["bench", "--text", text, "--algo", "pruned", "--pattern-len", "8", "--pattern-count", "2"]
    assert cli.main(args) == 0
    report = _report(capsys.readouterr().out)
    assert {"n", "z", "build_seconds", "index_bytes", "pruned.mean_ms", "pruned.p99_ms",
            "pruned.mean_checks"} <= set(report)
