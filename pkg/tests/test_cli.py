import json
import subprocess
import sys

import pytest

from metacog_taxonomy.cli import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_summary(capsys):
    assert run(capsys, "enumerate") == (EXIT_OK, "216 scenarios (3 internal x 9 cross-cluster x 8 topologies)\n", "")
    assert "×" in run(capsys, "enumerate", "--unicode")[1]


@pytest.mark.parametrize("args, count", [(("--topology", "8"), "27"), (("--internal", "bidirectional"), "72"),
                                         (("--internal", "TD", "--topology", "1"), "9")])
def test_enumerate_counts(capsys, args, count):
    assert run(capsys, "enumerate", *args, "--count")[1] == count + "\n"


def test_enumerate_full_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--full", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 216 and len(data["scenarios"]) == 216
    lines = run(capsys, "enumerate", "--full", "--style", "topology")[1].splitlines()
    assert len(lines) == 217 and lines[1] == "I->P, P->S, P->O, Topology 1"


def test_filter_shipped(capsys):
    code, out, _ = run(capsys, "filter", "--format", "json", "--strict")
    data = json.loads(out)
    assert code == EXIT_OK and data["final_count"] == 23
    stage4 = data["stages"][3]
    assert stage4["target_basis"] == "labels" and stage4["matches_published_target"]
    assert [s["matches_published_target"] for s in data["stages"][:3]] == [False, False, False]


def test_filter_only_rule(capsys):
    out = run(capsys, "filter", "--only-rule", "connected-flow")[1]
    assert "final: 184 scenarios" in out
    assert run(capsys, "filter", "--only-rule", "nope")[0] == EXIT_ERROR


def test_filter_strict_mismatch(capsys, tmp_path):
    cfg = tmp_path / "a.yaml"
    cfg.write_text("rules:\n  - name: a\n    stage: 1\n    predicate: exit-reachable-from-entry\n")
    code, _, err = run(capsys, "filter", "--config", str(cfg), "--strict")
    assert code == EXIT_MISMATCH and "strict" in err


def test_filter_malformed_config(capsys, tmp_path):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("rules:\n  - name: a\n    stage: 1\n    predicate: nope\n")
    code, out, err = run(capsys, "filter", "--config", str(cfg))
    assert code == EXIT_ERROR and out == ""
    assert f"{cfg}:4:" in err


def test_catalog_table1_status(capsys):
    out = run(capsys, "catalog", "--table1", "--filter-status")[1]
    rows = [line for line in out.splitlines() if line.startswith("T")]
    assert len(rows) == 5
    assert sum("eliminated-by-pipeline" in r for r in rows) == 2
    assert "2 of 5 eliminated" in out


def test_catalog_appendix2_json(capsys):
    data = json.loads(run(capsys, "catalog", "--format", "json")[1])
    assert len(data["entries"]) == 24 and data["duplicates"] == [["S15", "S19"]]


def test_classify(capsys):
    out = run(capsys, "classify", "I->{P,S}, P<->S, {P,S}->O, Topology 7")[1]
    assert out.startswith("ExpertAdaptive") and "exact match S17" in out
    data = json.loads(run(capsys, "classify", "--format", "json", "I->P, P->S, P->O, Topology 1")[1])
    assert data[0]["tier"] == "Novice" and data[0]["nearest"] == ["S1"]
    assert run(capsys, "classify", "I->X")[0] == EXIT_ERROR


def test_lattice_dot_to_file(capsys, tmp_path):
    path = tmp_path / "lattice.dot"
    code, out, _ = run(capsys, "lattice", "--catalog", "appendix2", "--out", str(path))
    assert code == 0 and out == ""
    dot = path.read_text()
    lowers = {line.split(" -> ")[0].strip() for line in dot.splitlines() if " -> " in line}
    uppers = {line.split(" -> ")[1].rstrip(";").strip() for line in dot.splitlines() if " -> " in line}
    nodes = {line.split()[0] for line in dot.splitlines() if line.strip().startswith("c") and "[label" in line}
    assert len(nodes - lowers) == 1 and len(nodes - uppers) == 1


def test_lattice_summary(capsys):
    assert "concepts: 347" in run(capsys, "lattice", "--format", "summary")[1]


def test_implications(capsys):
    out = run(capsys, "implications")[1]
    assert out.startswith("Duquenne-Guigues basis: 36 implications")
    assert "counterexamples: S2, S4, S5" in out
    code, out, _ = run(capsys, "implications", "--verify", "tier:expert=>sc:OI,sc:FI", "--strict")
    assert code == 0 and "holds" in out
    code, out, _ = run(capsys, "implications", "--verify", "=>sc:OI", "--strict")
    assert code == EXIT_MISMATCH and "fails" in out
    assert run(capsys, "implications", "--verify", "nope")[0] == EXIT_ERROR


def test_trajectory(capsys):
    out = run(capsys, "trajectory", "fca-mainstream")[1]
    assert "threshold BidirectionalityBarrier at step 1 (S6)" in out
    data = json.loads(run(capsys, "trajectory", "--steps", "S6", "S7", "S14", "S17", "--format", "json")[1])
    assert data[0]["monotone"] is True
    out = run(capsys, "trajectory", "--shortest", "S1", "S17", "--k", "2")[1]
    assert "S1 -> S2 -> S10 -> S17" in out
    assert run(capsys, "trajectory", "--shortest", "S1", "S24", "--k", "1")[0] == EXIT_ERROR
    assert run(capsys, "trajectory", "nope")[0] == EXIT_ERROR


def test_parse_and_fmt(capsys):
    code, out, _ = run(capsys, "parse", "I → [S, S→P, S→] O, O→F→E→I + E→I + F→I")
    assert code == 0 and "warning[RedundantBackbone]" in out
    code, out, _ = run(capsys, "parse", "I->{P,S}, P->S, P<->S, {P,S}->O, Topology 1")
    assert code == EXIT_ERROR and "ConflictingArrangement" in out
    out = run(capsys, "fmt", "--style", "flat", "I→{P,S}, P↔S, {P,S}→O, Topology 8")[1]
    assert out == "I->{P,S}, P<->S, {P,S}->O, O->F->E->I + O->E + O->I + F->I\n"


@pytest.mark.parametrize("fmt, head", [("cxt", "B\n"), ("csv", ",entry:P"), ("json", "{"), ("dot", "digraph")])
def test_export(capsys, fmt, head):
    assert run(capsys, "export", "--format", fmt)[1].startswith(head)


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == EXIT_USAGE and "usage:" in err


def test_no_subcommand(capsys):
    assert run(capsys)[0] == EXIT_USAGE


COMMANDS = [
    ["enumerate", "--full", "--format", "json"],
    ["filter", "--format", "json"],
    ["lattice", "--format", "json"],
    ["implications", "--format", "json"],
    ["trajectory", "--format", "json"],
    ["catalog", "--table1", "--filter-status"],
    ["export", "--format", "cxt"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_subprocess_runs_are_byte_identical(argv):
    outs = [subprocess.run([sys.executable, "-m", "metacog_taxonomy", *argv], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
