"""CLI behavior: commands, formats, exit codes, and JSON reports."""

import json

import pytest

from degratio.cli import main
from degratio.graph import emit_graph, parse_graph, cycle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_named(capsys):
    code, out, _ = run(capsys, "solve", "--named", "K5")
    assert code == 0 and "q = 2/5" in out


def test_solve_product(capsys):
    code, out, _ = run(capsys, "solve", "--named", "prod:K4,K4")
    assert code == 0 and "q = 5/7" in out


def test_solve_file_and_stdin_format(tmp_path, capsys):
    f = tmp_path / "c3.txt"
    f.write_text("p 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    code, out, _ = run(capsys, "solve", str(f))
    assert code == 0 and "q = 1/3" in out


def test_decide_yes_and_no(capsys):
    code, out, _ = run(capsys, "decide", "--named", "prism", "--q", "3/4")
    assert code == 0 and "yes" in out
    code, out, _ = run(capsys, "decide", "--named", "K33", "--q", "3/4")
    assert code == 0 and "no" in out


def test_closed_form_refusal_exit_code(capsys):
    code, _, err = run(capsys, "closed-form", "--named", "C5")
    assert code == 2 and "no applicable rule" in err


def test_closed_form_tree(capsys):
    code, out, _ = run(capsys, "closed-form", "--named", "P5")
    assert code == 0 and "rule: tree" in out


def test_matching_cut_output(capsys):
    code, out, _ = run(capsys, "matching-cut", "--named", "C6")
    assert code == 0 and "yes" in out and "crossing" in out


def test_bound_output(capsys):
    code, out, _ = run(capsys, "bound", "--named", "petersen")
    assert code == 0 and "1/2 < q(G)" in out


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("p 3 1\ne 1 9\n")
    code, _, err = run(capsys, "solve", str(f))
    assert code == 1 and "parse error" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "decide", "--named", "petersen",
                       "--q", "99/100", "--budget", "8")
    assert code == 3 and "inconclusive" in err


def test_json_report_shape(capsys):
    code, out, _ = run(capsys, "solve", "--named", "K6", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "solve"
    assert doc["graph"]["n"] == 6 and doc["graph"]["regularity"] == 5
    assert doc["result"]["q"] == "1/2"
    assert doc["exact"] is True


def test_json_partition_revalidates(capsys):
    from fractions import Fraction
    from degratio.graph import build_named
    from degratio.ratios import Bipartition, partition_quality
    code, out, _ = run(capsys, "solve", "--named", "petersen", "--json")
    doc = json.loads(out)
    G = build_named("petersen")
    P = Bipartition.from_string(doc["result"]["partition"])
    assert partition_quality(G, P).quality == Fraction(3, 4)


def test_generate_with_sidecar(tmp_path, capsys):
    out_file = tmp_path / "gadget.txt"
    code, out, _ = run(capsys, "generate", "twin_expand_K2", "--named", "C6",
                       "--out", str(out_file))
    assert code == 0
    G = parse_graph(out_file.read_text())
    assert G.n == 24
    sidecar = json.loads((tmp_path / "gadget.txt.json").read_text())
    assert sidecar["construction"] == "twin_expand_K2"
    assert sidecar["claim"] == {"kind": "cut_iff_q", "threshold": "4/5"}
    assert len(sidecar["source_hash"]) == 64


def test_generate_precondition_exit(capsys):
    code, _, err = run(capsys, "generate", "product_fixed_H", "--named", "C6",
                       "--fixed", "C4")
    assert code == 2


def test_verify_suite_runs(capsys):
    code, out, _ = run(capsys, "verify", "reductions")
    assert code == 0 and "properties passed" in out


def test_round_trip_canonical_form(tmp_path):
    text = emit_graph(cycle(7))
    assert emit_graph(parse_graph(text)) == text


def test_conflicting_inputs_rejected(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text(emit_graph(cycle(4)))
    code, _, err = run(capsys, "solve", str(f), "--named", "K5")
    assert code == 1
