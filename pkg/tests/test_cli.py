"""CLI tests: schema validation, exit codes, JSON round-trip, determinism."""

import json

import pytest

from isoged.cli import dump_json, main, parse_instance


def write_instance(tmp_path, doc, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


PRODUCT_MULT2 = {
    "name": "E1xE2-mult2",
    "variety": {"kind": "product",
                "factors": [{"label": "E1", "dim": 1}, {"label": "E2", "dim": 1}]},
    "isogeny": {"kind": "mult", "m": 2},
}

SIMPLE3_Q5 = {
    "name": "simple3-q5",
    "variety": {"kind": "custom", "ambient_rank": 6, "subvarieties": [], "complete": True},
    "isogeny": {"kind": "matrix",
                "entries": [[5, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
                            [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]},
}

INCOMPLETE = {
    "name": "incomplete",
    "variety": {"kind": "custom", "ambient_rank": 4, "subvarieties": [], "complete": False},
    "isogeny": {"kind": "mult", "m": 2},
}


def test_parse_instance_product(tmp_path):
    instance, alpha = parse_instance(write_instance(tmp_path, PRODUCT_MULT2))
    assert instance.dim == 2
    assert alpha.degree == 16


def test_parse_instance_cyclic_matrix(tmp_path):
    doc = {
        "name": "cyclic6",
        "variety": {"kind": "custom", "ambient_rank": 2, "subvarieties": [], "complete": True},
        "isogeny": {"kind": "matrix", "entries": [[1, 0], [0, 6]]},
    }
    _, alpha = parse_instance(write_instance(tmp_path, doc))
    assert alpha.degree == 6


def test_singular_matrix_exits_2(tmp_path, capsys):
    doc = {
        "name": "bad",
        "variety": {"kind": "custom", "ambient_rank": 2, "subvarieties": [], "complete": True},
        "isogeny": {"kind": "matrix", "entries": [[1, 1], [1, 1]]},
    }
    assert main(["kernel", write_instance(tmp_path, doc)]) == 2


def test_unknown_field_exits_2(tmp_path):
    doc = dict(PRODUCT_MULT2)
    doc["surprise"] = True
    assert main(["bounds", write_instance(tmp_path, doc)]) == 2


def test_unsaturated_subvariety_exits_2(tmp_path):
    doc = {
        "name": "bad",
        "variety": {"kind": "custom", "ambient_rank": 2,
                    "subvarieties": [{"label": "B", "basis": [[2, 0], [0, 1]]}],
                    "complete": True},
        "isogeny": {"kind": "mult", "m": 2},
    }
    assert main(["subvarieties", write_instance(tmp_path, doc)]) == 2


def test_bounds_text_report(tmp_path, capsys):
    assert main(["bounds", write_instance(tmp_path, PRODUCT_MULT2)]) == 0
    out = capsys.readouterr().out
    assert "lower bound (certified): 2" in out
    assert "upper bound: 2" in out
    assert "incompressible: yes" in out


def test_exact_command(tmp_path, capsys):
    assert main(["exact", write_instance(tmp_path, SIMPLE3_Q5)]) == 0
    out = capsys.readouterr().out
    assert "exact essential dimension: 1" in out


def test_exact_refused_on_coprimality(tmp_path, capsys):
    assert main(["exact", write_instance(tmp_path, PRODUCT_MULT2)]) == 3
    assert "refused" in capsys.readouterr().err


def test_require_lower_refusal(tmp_path, capsys):
    path = write_instance(tmp_path, INCOMPLETE)
    assert main(["bounds", path, "--require-lower"]) == 3
    captured = capsys.readouterr()
    assert "lower bound (certified)" not in captured.out
    # without the flag the upper bound is still reported
    assert main(["bounds", path]) == 0
    out = capsys.readouterr().out
    assert "upper bound: 2" in out
    assert "uncertified" in out


def test_json_round_trip(tmp_path, capsys):
    assert main(["bounds", write_instance(tmp_path, PRODUCT_MULT2), "--json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert dump_json(doc) == out.rstrip("\n")
    assert doc["lower"] == doc["upper"] == 2
    assert doc["kernel"] == [2, 2, 2, 2]
    assert doc["enumeration_complete"] is True


def test_groupbound_commands(capsys):
    assert main(["groupbound", "--kind", "rc", "--n", "2", "--p", "2"]) == 0
    assert "4" in capsys.readouterr().out
    assert main(["groupbound", "--kind", "symalt", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "5" in out and "7" in out
    assert main(["groupbound", "--kind", "local", "--n", "2", "--p", "2"]) == 0
    assert "rank cap: 3" in capsys.readouterr().out
    assert main(["groupbound", "--kind", "cy", "--n", "2", "--p", "2", "--chi", "0"]) == 2
    capsys.readouterr()
    assert main(["groupbound", "--kind", "abelian", "--n", "2", "--p", "2", "--chi", "0"]) == 2


def test_verify_paper_passes(capsys):
    assert main(["verify-paper"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 10


def test_oracle_passes_and_is_deterministic(capsys):
    assert main(["oracle", "--trials", "30", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["oracle", "--trials", "30", "--seed", "5"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "FAIL" not in first


def test_verify_paper_deterministic(capsys):
    assert main(["verify-paper"]) == 0
    first = capsys.readouterr().out
    assert main(["verify-paper"]) == 0
    assert first == capsys.readouterr().out
