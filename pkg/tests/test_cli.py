import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ndpmatch.cli import COMPARE_CSV_COLUMNS, MATCH_CSV_COLUMNS, main

WALK = ["--pattern", "b[0,1]a[0,2]b[0,2]b", "--delta", "1", "--gamma", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("ndpmatch").joinpath("report_schema.json").read_text())


def test_match_json(capsys, schema):
    code, out, _ = run(capsys, "match", *WALK, "-s", "baabcbbab", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    rep = doc["reports"][0]
    assert rep["occ_count"] == 3
    assert [o["positions"] for o in rep["occurrences"]] == [[4, 6, 7, 9], [2, 3, 6, 7], [1, 2, 5, 6]]


@pytest.mark.parametrize("algo", ["netndp", "netndp-nonp", "netlap", "greedy", "enumerate"])
def test_every_algorithm_validates(capsys, schema, algo):
    code, out, _ = run(capsys, "match", *WALK, "-s", "baabcbbab", "--output", "json", "--algorithm", algo)
    assert code == 0
    jsonschema.validate(json.loads(out), schema)


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "match", "--pattern", "a[0,1]b[0,2]a", "--delta", "1", "--gamma", "1",
                       "-s", "acaba", "--algorithm", "enumerate", "--output", "json")
    assert json.loads(out)["reports"][0]["occ_count"] == 4


def test_match_csv(capsys):
    code, out, _ = run(capsys, "match", *WALK, "-s", "baabcbbab", "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == MATCH_CSV_COLUMNS
    assert [r["positions"] for r in rows] == ["4 6 7 9", "2 3 6 7", "1 2 5 6"]
    assert rows[0]["total_nodes"] == "27"


def test_match_text_and_file(capsys, tmp_path):
    out_path = tmp_path / "r.txt"
    code, out, _ = run(capsys, "match", *WALK, "-s", "baabcbbab", "--stats", "--out", str(out_path))
    assert code == 0 and out == ""
    text = out_path.read_text()
    assert "occurrences=3" in text and "<4, 6, 7, 9>" in text and "nodes=27" in text


def test_fasta_input(capsys, tmp_path):
    f = tmp_path / "x.fasta"
    f.write_text(">one\nBAABCBBAB\n>two\nACABA\n")
    code, out, _ = run(capsys, "match", "-p", "B[0,1]A[0,2]B[0,2]B", "--delta", "1", "--gamma", "1",
                       "-i", str(f), "--output", "json")
    reps = json.loads(out)["reports"]
    assert [(r["source_id"], r["occ_count"]) for r in reps] == [("one", 3), ("two", 0)]


def test_csv_input_through_sax(capsys, tmp_path):
    f = tmp_path / "ts.csv"
    f.write_text("v\n" + "".join(f"{i % 2}\n" for i in range(70)))
    # z-scores are exactly -1 and +1, which land on D and Q with 20 symbols
    code, out, _ = run(capsys, "match", "-p", "D[0,0]Q", "--delta", "0", "--gamma", "0",
                       "-i", str(f), "--column", "v", "--output", "json")
    assert code == 0
    assert json.loads(out)["reports"][0]["occ_count"] == 35


def test_compare_counts(capsys):
    code, out, _ = run(capsys, "compare", *WALK, "-s", "baabcbbab", "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == COMPARE_CSV_COLUMNS
    counts = {r["algorithm"]: int(r["occ_count"]) for r in rows}
    assert counts == {"netndp": 3, "netndp-nonp": 3, "netlap": 2, "greedy": 1, "oracle": 3}


def test_compare_oracle_on_small_example(capsys):
    code, out, _ = run(capsys, "compare", "-p", "a[0,1]b[0,2]a", "--delta", "1", "--gamma", "1",
                       "-s", "acaba", "--output", "json", "--algorithms", "netndp")
    rows = json.loads(out)
    counts = {r["algorithm"]: r["occ_count"] for r in (rows["rows"] if isinstance(rows, dict) else rows)}
    assert counts["netndp"] == counts["oracle"] == 2


def test_compare_text_grid(capsys):
    code, out, _ = run(capsys, "compare", *WALK, "-s", "baabcbbab", "-s", "acaba")
    assert code == 0
    assert "netlap" in out and "oracle" in out


def test_bench_no_timing_is_reproducible(capsys):
    argv = ["bench", "--sweep", "W", "--values", "7,8", "--n", "500", "--repetitions", "1", "--no-timing"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    rows = list(csv.DictReader(io.StringIO(first)))
    assert [r["pattern"] for r in rows] == ["Q[1,7]E[1,7]L[1,7]E[1,7]L[1,7]N", "Q[1,8]E[1,8]L[1,8]E[1,8]L[1,8]N"]
    assert rows[0]["mean_elapsed_ms"] == ""


@pytest.mark.parametrize("argv, code", [
    (["match", "--pattern", "a[2,1]b", "--delta", "1", "--gamma", "1", "-s", "ab"], 2),
    (["match", "--pattern", "a[0", "--delta", "1", "--gamma", "1", "-s", "ab"], 2),
    (["match", "--delta", "1", "--gamma", "1", "-s", "ab"], 1),
    (["match", "--pattern", "a", "--delta", "-1", "--gamma", "1", "-s", "ab"], 1),
    (["match", "--pattern", "a", "--delta", "1", "--gamma", "1"], 1),
    (["match", "--pattern", "a", "--delta", "1", "--gamma", "1", "-i", "/nonexistent/x.fa"], 2),
    (["match", "--pattern", "a", "--delta", "1", "--gamma", "1", "-s", "a?b"], 2),
    (["frobnicate"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_lenient_accepts_foreign_symbols(capsys):
    code, out, _ = run(capsys, "match", "-p", "a[0,1]b", "--delta", "0", "--gamma", "0",
                       "-s", "a?ab", "--lenient", "--output", "json")
    assert code == 0
    assert json.loads(out)["reports"][0]["occurrences"][0]["positions"] == [3, 4]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ndpmatch.cli", "match", *WALK, "-s", "baabcbbab"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "occurrences=3" in proc.stdout
