"""Command-line behavior: exit codes, JSON report shape, determinism."""

import json
import shutil
import subprocess
import sys

import pytest

from eqthink.cli import corpus_root, main

CORPUS = corpus_root()
LISTS = str(CORPUS / "defs" / "00_lists.lx")
SORTING = str(CORPUS / "defs" / "10_sorting.lx")
APPEND_PROOF = str(CORPUS / "proofs" / "60_append.lx")
CLASH = str(CORPUS / "negative" / "clash.lx")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_check_admitted_definitions(capsys):
    code, out, _ = run(capsys, "check", LISTS)
    assert code == 0
    assert "4 of 4 definitions admitted" in out


def test_check_rejection_exits_one_with_witness(capsys):
    code, out, _ = run(capsys, "check", CLASH)
    assert code == 1
    assert "witness: n = 0" in out


def test_check_json_report(capsys):
    code, report = run_json(capsys, "check", LISTS)
    assert code == 0
    assert report["schema"] == 1
    assert report["command"] == "check"
    assert report["seed"] == 0
    assert "elapsed" not in report
    assert [d["name"] for d in report["definitions"]] == [
        "append", "len", "prefix", "true-listp",
    ]


def test_eval_prints_value(capsys):
    code, out, _ = run(
        capsys, "eval", LISTS, "-e", "(append (cons 1 nil) (cons 2 nil))"
    )
    assert code == 0 and out.strip() == "'(1 2)"


def test_eval_error_exit_codes(capsys):
    assert run(capsys, "eval", "-e", "(undefined-op 1)")[0] == 1
    assert run(capsys, "eval", "-e", "(cons 1")[0] == 2


def test_parse_error_in_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.lx"
    bad.write_text("(defeqs broken\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "UnbalancedParens" in err


def test_missing_file_exits_two(capsys):
    assert run(capsys, "check", "no-such-file.lx")[0] == 2


def test_test_subcommand_counterexample_exit(capsys):
    code, out, _ = run(capsys, "test", LISTS, "--trials", "20")
    assert code == 1  # the unguarded any-object claim fails by design
    assert "counterexample" in out
    assert "5 of 6 properties passed" in out


def test_test_seed_changes_draws_deterministically(capsys):
    _, first = run_json(capsys, "test", LISTS, "--seed", "9")
    _, second = run_json(capsys, "test", LISTS, "--seed", "9")
    assert first == second
    _, third = run_json(capsys, "test", LISTS, "--seed", "10")
    assert third != first


def test_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("EQTHINK_SEED", "123")
    _, report = run_json(capsys, "check", LISTS)
    assert report["seed"] == 123


def test_prove_subcommand(capsys):
    code, out, _ = run(capsys, "prove", LISTS, APPEND_PROOF)
    assert code == 0 and "app-assoc: Accepted" in out


def test_prove_rejection(tmp_path, capsys):
    script = tmp_path / "wrong.lx"
    script.write_text(
        "(defproof wrong :goal (equal (or x nil) nil)\n"
        "  :method equational (:chain (or x nil) (nil :by or-identity)))\n"
    )
    code, out, _ = run(capsys, "prove", str(script))
    assert code == 1 and "rejected at chain step 1" in out


def test_steps_csv_and_verdict(capsys):
    code, out, _ = run(capsys, "steps", "merge-sort", "--sizes", "16,32,64,128")
    assert code == 0
    assert out.startswith("size,steps,candidate,c\n")
    assert "Consistent: merge-sort vs nlogn" in out


def test_steps_wrong_candidate_fails(capsys):
    code, out, _ = run(
        capsys, "steps", "insertion-sort", "--sizes", "16,32,64,128",
        "--worst-case", "--candidate", "nlogn",
    )
    assert code == 1 and "Inconsistent" in out


def test_circuit_pipeline(tmp_path, capsys):
    code, out, _ = run(capsys, "circuit", "build", "(and (or x y) y)")
    assert code == 0
    left = tmp_path / "left.json"
    left.write_text(out)

    code, out, _ = run(capsys, "circuit", "basis", str(left), "--to", "nand")
    assert code == 0
    right = tmp_path / "right.json"
    right.write_text(out)
    assert all(g["kind"] == "NAND" for g in json.loads(out)["gates"])

    code, out, _ = run(capsys, "circuit", "equiv", str(left), str(right))
    assert code == 0 and out.strip() == "Equivalent"

    code, out, _ = run(capsys, "circuit", "sim", str(left), "--assign", "x=1,y=0")
    assert code == 0 and out.strip() == "0"


def test_circuit_equiv_difference(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "circuit", "build", "(and x y)")
    a.write_text(run(capsys, "circuit", "build", "(and x y)")[1])
    b.write_text(run(capsys, "circuit", "build", "(or x y)")[1])
    code, out, _ = run(capsys, "circuit", "equiv", str(a), str(b))
    assert code == 1 and "Differ at" in out


def test_circuit_adder_and_dot(capsys):
    code, out, _ = run(capsys, "circuit", "adder", "2")
    assert code == 0 and json.loads(out)["inputs"] == ["x0", "x1", "y0", "y1", "cin"]
    code, out, _ = run(capsys, "circuit", "adder", "2", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_mr_wordcount(tmp_path, capsys):
    data = tmp_path / "docs.json"
    data.write_text('[[1, ["the", "cat"]], [2, ["the"]]]')
    code, out, _ = run(capsys, "mr", "wordcount", str(data))
    assert code == 0
    assert out.splitlines() == ["'cat\t1", "'the\t2"]


def test_mr_pagerank_exact(tmp_path, capsys):
    data = tmp_path / "graph.json"
    data.write_text('[["a", ["b"]], ["b", ["a"]]]')
    code, report = run_json(
        capsys, "mr", "pagerank", str(data), "--iterations", "10"
    )
    assert code == 0
    assert report["pairs"] == [["a", "1/2"], ["b", "1/2"]]


def test_mr_grep_needs_pattern(tmp_path, capsys):
    data = tmp_path / "lines.json"
    data.write_text('[[1, ["the", "cat"]]]')
    assert run(capsys, "mr", "grep", str(data))[0] == 2
    code, out, _ = run(capsys, "mr", "grep", str(data), "--pattern", "cat")
    assert code == 0 and out.strip() == "1\t'(the cat)"


def test_ci_passes_on_bundled_corpus(capsys):
    code, out, _ = run(capsys, "ci")
    assert code == 0
    assert "ci ok" in out


def test_ci_json_byte_identical(capsys):
    code1, out1, _ = run(capsys, "ci", "--json")
    code2, out2, _ = run(capsys, "ci", "--json")
    assert code1 == code2 == 0
    assert out1 == out2


def test_ci_detects_golden_drift(tmp_path, capsys):
    work = tmp_path / "corpus"
    shutil.copytree(CORPUS, work)
    code, out, _ = run(capsys, "ci", str(work))
    assert code == 0
    stale = work / "golden" / "00_lists.json"
    stale.write_text(stale.read_text().replace("Proved", "Maybe"))
    code, out, _ = run(capsys, "ci", str(work))
    assert code == 1 and "differs from golden" in out


def test_ci_update_golden_round_trip(tmp_path, capsys):
    work = tmp_path / "corpus"
    shutil.copytree(CORPUS, work)
    shutil.rmtree(work / "golden")
    code, out, _ = run(capsys, "ci", str(work))
    assert code == 1 and "no golden file" in out
    assert run(capsys, "ci", str(work), "--update-golden")[0] == 0
    assert run(capsys, "ci", str(work))[0] == 0


def test_console_script_installed():
    out = subprocess.run(
        [sys.executable, "-m", "eqthink.cli", "--help"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0 and "eqthink" in out.stdout
