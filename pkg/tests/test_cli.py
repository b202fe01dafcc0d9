import json
import subprocess
import sys

import pytest

from ternexp import cli, suites
from ternexp.arith import primes_up_to
from ternexp.records import CSV_HEADER, ResultRecord, read_csv_rows, read_jsonl


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


# -- solve --------------------------------------------------------------------


def test_solve_235(capsys):
    code, out, _ = run(capsys, "solve", "--a", "2", "--b", "3", "--c", "5", "--max-z", "20")
    assert code == 0
    (rec,) = records(out)
    assert rec["result"]["solutions"] == [["1", "1", "1"], ["4", "2", "2"]]
    assert rec["tool"] == "ternexp" and rec["config"]["max_z"] == "20"


def test_solve_273(capsys):
    code, out, _ = run(capsys, "solve", "--a", "2", "--b", "7", "--c", "3")
    assert code == 0
    assert records(out)[0]["result"]["solutions"] == [["1", "1", "2"], ["5", "2", "4"]]


def test_solve_zero_solutions_is_success(capsys):
    code, out, _ = run(capsys, "solve", "--a", "3", "--b", "7", "--c", "5")
    assert code == 0 and records(out)[0]["result"]["count"] == "0"


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--a", "4", "--b", "6", "--c", "10", "--mode", "N"],
        ["solve", "--a", "2", "--b", "9", "--c", "5"],
        ["solve", "--a", "2", "--b", "3", "--c", "5", "--format", "csv"],
        ["sieve", "--p", "15", "--q", "17"],
        ["sieve", "--p", "17"],
        ["sieve", "--p-range", "10:5", "--q-range", "3:9"],
        ["sieve", "--p-range", "abc", "--q-range", "3:9"],
        ["cf", "--d", "16"],
        ["cf", "--lemma35", "--p", "4", "--n", "1"],
        ["verify", "--suite", "nosuch"],
        ["abcq", "--a", "1", "--b", "1", "--c", "3"],
        ["abcq", "--a", "1", "--b", "x", "--c", "3"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse rejects malformed flags itself
        code = exc.code
    assert code == 2


# -- cf, abcq, verify ---------------------------------------------------------


def test_cf_13(capsys):
    code, out, _ = run(capsys, "cf", "--d", "13", "--terms", "5")
    rec = records(out)[0]
    assert code == 0
    assert rec["result"]["a0"] == "3" and rec["result"]["period"] == ["1", "1", "1", "1", "6"]
    assert rec["result"]["k"] == ["4", "3", "3", "4", "1"]


def test_cf_lemma35(capsys):
    code, out, _ = run(capsys, "cf", "--lemma35", "--p", "5", "--n", "1")
    assert code == 0 and records(out)[0]["result"]["match"] is True


def test_abcq(capsys):
    code, out, _ = run(capsys, "abcq", "--a", "2", "--b", "6436341", "--c", "6436343")
    assert code == 0
    assert abs(float(records(out)[0]["result"]["Q"]) - 1.62991) < 1e-5
    code, out, _ = run(capsys, "abcq", "--a", "1", "--b", "8", "--c", "9")
    assert abs(float(records(out)[0]["result"]["Q"]) - 1.22629) < 1e-5


def test_verify_conjecture(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "conjecture")
    recs = records(out)
    assert code == 0 and len(recs) == 19
    assert all(r["result"]["ok"] for r in recs)


def test_verify_small_suites(capsys):
    assert run(capsys, "verify", "--suite", "lemma35", "--p-max", "49", "--n-max", "3")[0] == 0
    assert run(capsys, "verify", "--suite", "lemma24", "--max", "20000")[0] == 0
    assert run(capsys, "verify", "--suite", "lemma21", "--p-max", "20")[0] == 0


def test_verify_violation_exit_1(capsys, monkeypatch):
    def broken(**kw):
        res = suites.SuiteResult("lemma21", {})
        res.checked = 1
        res.fail("3,5,1", count=2)
        return res

    monkeypatch.setitem(suites.SUITES, "lemma21", broken)
    monkeypatch.setitem(cli.SUITES, "lemma21", broken)
    code, out, _ = run(capsys, "verify", "--suite", "lemma21")
    assert code == 1
    recs = records(out)
    assert recs[0]["result"]["case"] == "3,5,1" and recs[-1]["result"]["violations"] == "1"


def test_module_entry_point_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "ternexp", "cf", "--d", "2"], capture_output=True, text=True)
    assert ok.returncode == 0 and '"period":["2"]' in ok.stdout
    bad = subprocess.run([sys.executable, "-m", "ternexp", "cf", "--d", "16"], capture_output=True, text=True)
    assert bad.returncode == 2 and "perfect square" in bad.stderr


# -- sieve ---------------------------------------------------------------------


def test_sieve_single_pair(capsys):
    code, out, _ = run(capsys, "sieve", "--p", "241", "--q", "113")
    (rec,) = records(out)
    assert code == 0
    assert rec["input"] == {"p": "241", "q": "113"}
    r = rec["result"]
    assert r["cong48"] is True and r["val_order"] is True and r["survives"] is False
    assert list(r)[:5] == ["cong48", "val_order", "order_parity", "octic", "survives"]


def test_sieve_range_cardinality(capsys, tmp_path):
    out = tmp_path / "s.jsonl"
    assert cli.main(["sieve", "--p-range", "2:1000", "--q-range", "2:1000", "--out", str(out)]) == 0
    recs = read_jsonl(out.read_text())
    n = len(primes_up_to(1000)) - 1  # odd primes
    assert len(recs) == n * n - n
    keys = [r.sieve_key() for r in recs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_sieve_csv(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["sieve", "--p-range", "3:100", "--q-range", "3:120", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    rows = read_csv_rows(out.read_text())
    row = next(r for r in rows if (r["p"], r["q"]) == ("97", "113"))
    assert row["cong48"] is True and row["val_order"] is False and row["survives"] is False


def test_records_round_trip(capsys, tmp_path):
    lines = []
    for argv in (
        ["solve", "--a", "3", "--b", "5", "--c", "2"],
        ["cf", "--lemma35", "--p", "7", "--n", "2"],
        ["abcq", "--a", "1", "--b", "8", "--c", "9"],
        ["verify", "--suite", "conjecture"],
        ["sieve", "--p-range", "3:60", "--q-range", "3:60"],
    ):
        _, out, _ = run(capsys, *argv)
        lines.extend(out.splitlines())
    for line in lines:
        rec = ResultRecord.from_line(line)
        assert rec.to_line() == line
        assert ResultRecord.from_line(rec.to_line()) == rec


SIEVE_RANGE = ["sieve", "--p-range", "3:400", "--q-range", "3:400"]


def test_workers_do_not_change_output(tmp_path):
    one, eight = tmp_path / "w1.jsonl", tmp_path / "w8.jsonl"
    assert cli.main(SIEVE_RANGE + ["--workers", "1", "--out", str(one)]) == 0
    assert cli.main(SIEVE_RANGE + ["--workers", "8", "--out", str(eight)]) == 0
    assert one.read_bytes() == eight.read_bytes()


@pytest.mark.parametrize("fmt", ["jsonl", "csv"])
def test_resume_after_interruption(tmp_path, fmt):
    full, part = tmp_path / f"full.{fmt}", tmp_path / f"part.{fmt}"
    fmt_args = ["--format", fmt]
    assert cli.main(SIEVE_RANGE + fmt_args + ["--out", str(full)]) == 0

    assert cli.main(SIEVE_RANGE + fmt_args + ["--out", str(part), "--max-pairs", "1234"]) == 0
    # tear the last line as an interrupted write would
    text = part.read_text()
    part.write_text(text + text.splitlines()[-1][: len(text.splitlines()[-1]) // 2])
    assert cli.main(SIEVE_RANGE + fmt_args + ["--out", str(part), "--resume", "--max-pairs", "2000"]) == 0
    assert part.read_bytes() != full.read_bytes()
    assert cli.main(SIEVE_RANGE + fmt_args + ["--out", str(part), "--resume", "--workers", "3"]) == 0
    assert part.read_bytes() == full.read_bytes()


def test_resume_needs_out(capsys):
    assert cli.main(SIEVE_RANGE + ["--resume"]) == 2
