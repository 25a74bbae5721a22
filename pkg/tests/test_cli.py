import json

import pytest

from isolab.cli import main

BRANCH_FIBER_JSON = {
    "base_label": "x",
    "kind": "generic_branch",
    "points": [
        {"label": "y1", "mult": 2},
        {"label": "y2", "mult": 1},
        {"label": "y3", "mult": 1},
    ],
}


def run_cli(capsys, argv, stdin_doc=None, monkeypatch=None):
    if stdin_doc is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin_doc)))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_base_map_so6_fixed_instance(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["base", "map-so6"],
        {"a2": "-5", "a3": "0", "a4": "4"},
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["b1"] == "-10" and doc["b2"] == "9" and doc["pf"] == "0"
    assert doc["orientation"] == 1


def test_base_map_so4_with_orientation(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["base", "map-so4", "--orientation", "-1"],
        {"a1": ["0", "1"], "a2": "0"},
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["b1"] == ["0", "2"]
    assert doc["pf"] == ["0", "-1"]
    assert doc["orientation"] == -1


def test_malformed_polynomial_exits_one_with_field_path(capsys, monkeypatch):
    code, _, err = run_cli(
        capsys,
        ["base", "map-so4"],
        {"a1": ["0", "x"], "a2": "0"},
        monkeypatch,
    )
    assert code == 1
    assert "a1" in err


def test_missing_field_exits_one(capsys, monkeypatch):
    code, _, err = run_cli(capsys, ["base", "map-so6"], {"a2": "0"}, monkeypatch)
    assert code == 1
    assert "a3" in err


def test_base_oracle_agreement(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["base", "oracle"],
        {"kind": "so4", "a1": "-1", "a2": "-4"},
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["matches_base_map"] is True
    assert doc["curve"] == ["9", "0", "-10", "0", "1"]


def test_base_genericity(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["base", "genericity"],
        {"a2": ["0", "1"], "a3": ["0", "1"], "a4": "0"},
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["generic"] is False
    assert doc["witness"] is not None


def test_iso_apply_d_iso3(capsys, monkeypatch):
    matrix = [["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "2", "0"], ["0", "0", "0", "-2"]]
    code, out, _ = run_cli(capsys, ["iso", "apply"], {"map": "d_iso3", "a": matrix}, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    diag = [doc["result"][i][i] for i in range(6)]
    assert diag == ["0", "3", "-1", "1", "-3", "0"]


def test_iso_alpha(capsys, monkeypatch):
    matrix = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]
    code, out, _ = run_cli(capsys, ["iso", "alpha"], {"a": matrix}, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha"] == [["0", "0", "2"], ["0", "0", "0"], ["0", "0", "0"]]


def test_iso_hodge_identity_form(capsys, monkeypatch):
    ident = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    code, out, _ = run_cli(capsys, ["iso", "hodge"], {"q": ident}, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["plus_basis"][0] == ["1", "0", "0", "0", "0", "1"]


def test_cover_ramcheck(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, ["cover", "ramcheck"], {"fiber": BRANCH_FIBER_JSON}, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    assert doc["identity_holds"] is True
    assert doc["ledger"]["lhs"]["(y1,y1)"] == 2


def test_cover_sym(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, ["cover", "sym"], {"fiber": BRANCH_FIBER_JSON}, monkeypatch)
    assert code == 0
    doc = json.loads(out)
    mults = {tuple(p["pair"]): p["mult"] for p in doc["symmetrized"]["points"]}
    assert mults == {("y1", "y1"): 1, ("y1", "y2"): 2, ("y1", "y3"): 2, ("y2", "y3"): 1}


def test_divisor_push_and_norm(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["divisor", "push"],
        {"fiber": BRANCH_FIBER_JSON, "divisor": {"y1": 1, "y3": -1}},
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["divisor"] == {"[y1,y1]": 1, "[y1,y2]": 1, "[y1,y3]": -1, "[y2,y3]": -1}

    code, out, _ = run_cli(
        capsys,
        ["divisor", "norm"],
        {
            "covering": "sigma",
            "fiber": BRANCH_FIBER_JSON,
            "divisor": {"[y1,y1]": 1, "[y1,y2]": 1, "[y1,y3]": -1, "[y2,y3]": -1},
        },
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["vanishes"] is True


def test_divisor_prym_test(capsys, monkeypatch):
    entries = [
        {
            "fiber": BRANCH_FIBER_JSON,
            "divisor": {"[y1,y1]": 1, "[y1,y2]": 1, "[y1,y3]": -1, "[y2,y3]": -1},
        }
    ]
    code, out, _ = run_cli(
        capsys, ["divisor", "prym-test"], {"covering": "sigma", "entries": entries}, monkeypatch
    )
    assert code == 0
    assert json.loads(out)["prym"] is True

    entries.append({"fiber": BRANCH_FIBER_JSON, "divisor": {"[y1,y1]": 1}})
    code, out, _ = run_cli(
        capsys, ["divisor", "prym-test"], {"covering": "sigma", "entries": entries}, monkeypatch
    )
    assert code == 2  # a mathematical check failed, not a validation error
    assert json.loads(out)["prym"] is False


def test_invariants_commands(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, ["invariants", "map"], {"d1": 2, "d2": 1, "g": 2}, monkeypatch)
    assert code == 0 and json.loads(out) == {
        "c1": 3,
        "c2": 1,
        "command": "invariants map",
        "orientation": 1,
    }
    code, out, _ = run_cli(
        capsys, ["invariants", "mw"], {"d1": 2, "d2": 0, "g": 2, "group": "sl2xsl2"}, monkeypatch
    )
    assert json.loads(out)["within_bounds"] is False
    code, out, _ = run_cli(
        capsys, ["invariants", "lift"], {"group": "so33", "b1": 1, "b2": 0}, monkeypatch
    )
    assert json.loads(out)["lifts"] is False
    code, out, _ = run_cli(
        capsys, ["invariants", "count"], {"isogeny": "rank2", "g": 2}, monkeypatch
    )
    doc = json.loads(out)
    assert (doc["stated"], doc["proof_count"], doc["enumerated"]) == (32, 16, 256)
    assert doc["discrepancy"] is True
    code, out, _ = run_cli(
        capsys, ["invariants", "census"], {"group": "so33", "g": 2}, monkeypatch
    )
    doc = json.loads(out)
    assert doc["image_labels"] == [[0, 0], [1, 1]] and doc["total_components"] == 5


def test_higgs_assemble(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys,
        ["higgs", "assemble-so22"],
        {
            "n1_degree": 2,
            "n2_degree": 1,
            "beta1": "1",
            "gamma1": "1",
            "beta2": "1",
            "gamma2": "-1",
        },
        monkeypatch,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha"] == [["1", "1"], ["1", "-1"]]
    assert doc["m1_degree"] == 3 and doc["m2_degree"] == 1
    assert doc["quartic"] == ["4", "0", "0", "0", "1"]


def test_verify_all_small_and_deterministic(capsys):
    code = main(["verify", "all", "--seed", "3", "--samples", "2", "--format", "json"])
    out1 = capsys.readouterr().out
    assert code == 0
    code = main(["verify", "all", "--seed", "3", "--samples", "2", "--format", "json"])
    out2 = capsys.readouterr().out
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["passed"] is True and len(doc["results"]) == 10


def test_verify_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("ISOLAB_SEED", "11")
    code = main(["verify", "all", "--seed", "3", "--samples", "2", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["seed"] == 11
