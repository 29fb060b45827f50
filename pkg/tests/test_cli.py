import re
from pathlib import Path

import pytest

from mutpot.cli import main
from mutpot.seedfile import parse_seed

SEED_DIR = Path(__file__).resolve().parent.parent / "seeds"

GOOD = str(SEED_DIR / "basis-pair-k1.seed")
BAD = str(SEED_DIR / "template.seed")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def records(out, kind=None):
    recs = [ln for ln in out.splitlines() if ln.startswith("record=")]
    if kind is not None:
        recs = [ln for ln in recs if ln.startswith(f"record={kind} ")]
    return recs


def test_mutate_prints_seed_document(capsys, tmp_path):
    code, out = run(capsys, "mutate", "--seed", GOOD, "--dir", "0,1")
    assert code == 0
    mutated = parse_seed(out)  # output is itself a valid seed document
    assert mutated.collection.count((0, -1)) == 1


def test_mutate_accepts_parenthesized_direction(capsys):
    code_a, out_a = run(capsys, "mutate", "--seed", GOOD, "--dir", "0,1")
    code_b, out_b = run(capsys, "mutate", "--seed", GOOD, "--dir", "(0,1)")
    assert code_a == code_b == 0
    assert out_a == out_b


def test_mutate_times_composes(capsys):
    # needs multiplicity 2 at the direction for the second step to be legal
    double = str(SEED_DIR / "one-vector-k1.seed")
    code, out = run(capsys, "mutate", "--seed", double, "--dir", "0,1",
                    "--times", "2")
    assert code == 0
    assert parse_seed(out).rank == 2


def test_mutate_times_beyond_multiplicity_fails(capsys):
    code, _ = run(capsys, "mutate", "--seed", GOOD, "--dir", "0,1", "--times", "2")
    assert code == 2


def test_mutate_bad_direction_is_usage_error(capsys):
    code, _ = run(capsys, "mutate", "--seed", GOOD, "--dir", "zebra")
    assert code == 2


def test_mutate_direction_not_in_collection(capsys):
    code, _ = run(capsys, "mutate", "--seed", GOOD, "--dir", "5,7")
    assert code == 2


def test_check_v_true_seed(capsys):
    code, out = run(capsys, "check-v", "--seed", GOOD)
    assert code == 0
    assert "record=summary verdict=true laurent=true" in out
    for line in records(out, "direction"):
        assert "ok=true" in line


def test_check_v_false_seed_reports_witness(capsys):
    code, out = run(capsys, "check-v", "--seed", BAD)
    assert code == 1
    assert "verdict=false" in out
    (direction_line,) = records(out, "direction")
    assert "ok=false" in direction_line
    assert "level=-1" in direction_line
    assert 'remainder="' in direction_line


def test_ub_member_verdicts(capsys):
    code, out = run(capsys, "ub-member", "--seed", GOOD, "--expr", "(1+x2)/x1")
    assert code == 0 and "verdict=true" in out
    code, out = run(capsys, "ub-member", "--seed", GOOD, "--expr", "x1^-1")
    assert code == 1 and "verdict=false" in out


def test_ub_member_parse_error(capsys):
    code, _ = run(capsys, "ub-member", "--seed", GOOD, "--expr", "x1 + +")
    assert code == 2


def test_generators_lists_labeled_generators(capsys):
    code, out = run(capsys, "generators", "--seed", GOOD)
    assert code == 0
    assert "record=summary shape=basis-pair count=4" in out
    gens = records(out, "generator")
    assert len(gens) == 4
    assert all(re.search(r'label=\S+ generator=".*"', g) for g in gens)


def test_orbit_records_and_dot(capsys, tmp_path):
    dot_path = tmp_path / "graph.dot"
    code, out = run(capsys, "orbit", "--seed", GOOD, "--depth", "2",
                    "--dot", str(dot_path))
    assert code == 0
    summary = records(out, "summary")[-1]
    m = re.search(r"nodes=(\d+) edges=(\d+)", summary)
    assert m and int(m.group(1)) == len(records(out, "node"))
    assert int(m.group(2)) == len(records(out, "edge"))
    dot = dot_path.read_text()
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")


def test_verify_suite_pass(capsys):
    code, out = run(capsys, "verify", "--suite", "bmatrix", "--cases", "100",
                    "--rng-seed", "7")
    assert code == 0
    assert "100/100 passed" in out


def test_verify_all_small(capsys):
    code, out = run(capsys, "verify", "--suite", "all", "--cases", "6")
    assert code == 0
    assert len(records(out, "suite")) == 7


def test_missing_file_is_usage_error(capsys):
    code, _ = run(capsys, "check-v", "--seed", "no-such-file.seed")
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_free_text_fields_are_quoted(capsys):
    _, out = run(capsys, "orbit", "--seed", GOOD, "--depth", "1")
    for line in records(out, "node"):
        assert re.match(r'record=node key="[^"]*" depth=\d+$', line)
