import json

import pytest

from homcat.cli import main
from homcat.config import settings
from homcat.services import catalog

WORKED = "((g@0 (g'@2 g@5)) ((g'@5 g@2) g@1))"


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_reduce_prints_normal_form(capsys):
    assert main(["reduce", WORKED]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "(g@1 g@2)"


def test_reduce_trace(capsys):
    assert main(["reduce", WORKED, "--trace", "--strategy", "rightmost"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("DL4@2: ")
    assert lines[1] == "DL1@1: ((g@0 g'@3) (g@3 g@1)) → (g@1 g@2)"


def test_reduce_json(capsys):
    assert main(["reduce", "(g@3 g'@3)", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["normal_form"] == "1"
    assert payload["steps"][0]["rule"] == "LAL"


def test_reduce_strict_keeps_general_redexes(capsys):
    tree = "((h@0 (h@0 (h@0 g@0))) g'@3)"
    assert main(["reduce", tree, "--strict"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == tree
    assert main(["reduce", tree]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "(h@1 (h@1 h@2))"
    with pytest.raises(SystemExit):
        main(["reduce", "--help"])
    assert "eight literal redex shapes" in " ".join(capsys.readouterr().out.split())



def test_reduce_parse_error(capsys):
    assert main(["reduce", "(g@0 g@1"]) == 2
    assert "column 9" in capsys.readouterr().err


@pytest.mark.parametrize("argv,code", [
    (["check", "group", "z6_5x"], 0),
    (["check", "group", "z4_2x"], 0),
    (["check", "ring", "f2c3_twist"], 0),
    (["check", "ring", "end_z6_5x"], 1),
    (["check", "module", "null_over_f2"], 0),
    (["check", "module", "f2c3_regular", "--side", "left"], 0),
])
def test_check_catalog_entries(argv, code):
    assert main(argv) == code


def test_check_reports_first_witness(tmp_path, capsys):
    spec = catalog.group("z6_5x").to_spec().model_dump()
    spec["mul"][2][3] = 0
    assert main(["check", "group", write(tmp_path, "broken.json", spec)]) == 1
    last = capsys.readouterr().out.strip().splitlines()[-1]
    assert last.startswith("FAIL hom-associativity witness [")


def test_check_rejects_every_single_entry_mutation(tmp_path, capsys):
    base = catalog.group("z6_5x").to_spec().model_dump()
    for i in range(6):
        for j in range(6):
            for value in range(6):
                if value == base["mul"][i][j]:
                    continue
                spec = json.loads(json.dumps(base))
                spec["mul"][i][j] = value
                assert main(["check", "group", write(tmp_path, "mutated.json", spec)]) == 1, (i, j, value)
                assert "FAIL " in capsys.readouterr().out


def test_check_module_with_ring_by_name(tmp_path, capsys):
    spec = {"ring": "f2", "m": 2, "mzero": 0, "madd": [[0, 1], [1, 0]], "beta": [0, 1],
            "act_left": [[0, 0], [0, 1]]}
    assert main(["check", "module", write(tmp_path, "module.json", spec)]) == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_check_module_with_ring_file(tmp_path):
    write(tmp_path, "ring.json", catalog.ring("f2").to_spec().model_dump(mode="json", by_alias=True))
    spec = {"ring": "ring.json", "m": 2, "mzero": 0, "madd": [[0, 1], [1, 0]], "beta": [0, 1],
            "act_left": [[0, 0], [0, 1]]}
    assert main(["check", "module", write(tmp_path, "module.json", spec)]) == 0


def test_check_bilinear(tmp_path):
    z2 = catalog.group("z2").to_spec().model_dump()
    good = {"A": z2, "B": z2, "C": z2, "f": [[0, 0], [0, 1]]}
    bad = {"A": z2, "B": z2, "C": z2, "f": [[0, 1], [1, 0]]}
    assert main(["check", "bilinear", write(tmp_path, "good.json", good)]) == 0
    assert main(["check", "bilinear", write(tmp_path, "bad.json", bad)]) == 1


def test_input_errors(tmp_path, capsys):
    assert main(["check", "group", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert main(["check", "group", str(broken)]) == 2
    assert "invalid JSON" in capsys.readouterr().err
    short = write(tmp_path, "short.json", {"n": 2, "e": 0, "mul": [[0, 1]], "alpha": [0, 1]})
    assert main(["check", "group", short]) == 2
    assert "mul" in capsys.readouterr().err


def test_construct_catalog(capsys):
    assert main(["construct", "catalog"]) == 0
    assert "s3_twisted" in capsys.readouterr().out.split()
    assert main(["construct", "catalog", "z6_5x", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "group"
    assert payload["spec"]["alpha"] == [0, 5, 4, 3, 2, 1]


def test_construct_quotient(capsys):
    assert main(["construct", "quotient", "z6", "--subset", "0,3", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 3
    assert main(["construct", "quotient", "z6"]) == 2
    assert main(["construct", "quotient", "z6", "--subset", "0,1"]) == 2


@pytest.mark.parametrize("argv,code", [
    (["construct", "product", "z2", "z3"], 0),
    (["construct", "hom", "z6", "z3"], 0),
    (["construct", "compatible-ring", "f2c3_twist"], 0),
    (["construct", "end-ring", "z6_5x"], 0),
    (["construct", "twist-ring", "z6", "--alpha", "0,3,0,3,0,3"], 0),
    (["construct", "twist-ring", "z6", "--alpha", "0,2,4,0,2,4"], 2),
    (["construct", "group-ring", "z3", "--sigma", "0,2,1"], 0),
    (["construct", "group-ring", "z6_5x"], 2),
    (["construct", "product", "z2"], 2),
])
def test_construct_targets(argv, code):
    assert main(argv) == code


def test_budget_override_exits_four(monkeypatch, capsys):
    monkeypatch.setattr(settings, "budget", 16)
    assert main(["construct", "group-ring", "s3"]) == 4
    assert "exceed the bound 16" in capsys.readouterr().err


def test_lattice(capsys):
    assert main(["lattice", "s3_twisted"]) == 0
    out = capsys.readouterr().out
    assert "maximal: [[0, 3, 4]]" in out
    assert "simple: False" in out


def test_lattice_of_simple_group_with_collapsing_twist(tmp_path, capsys):
    spec = {"n": 2, "e": 0, "mul": [[0, 0], [0, 1]], "alpha": [0, 0], "inv": [0, 1]}
    assert main(["lattice", write(tmp_path, "collapse.json", spec)]) == 0
    out = capsys.readouterr().out
    assert "simple: True" in out
    assert "finding: simple Hom-group whose twist is not bijective" in out



def test_tensor_candidates(capsys):
    assert main(["tensor", "z2", "z3"]) == 0
    assert "candidate oracle: order 1" in capsys.readouterr().out
    assert main(["tensor", "z2", "z3", "--abelianized", "--target", "z2"]) == 1
    assert "violated" in capsys.readouterr().out
    assert main(["tensor", "z2", "z3", "--paper", "--target", "z2", "--format", "json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["candidate"] == "paper-construction"
    assert payload["verdicts"][0]["status"] == "violated"
    assert main(["report", "tensor", "z2", "z3", "--paper"]) == 1
    assert "candidate paper-construction: order 6" in capsys.readouterr().out
    assert main(["tensor", "z2"]) == 2


@pytest.mark.parametrize("argv,code,needle", [
    (["report", "abelianize", "s3_twisted"], 0, "quotient order 2"),
    (["report", "lattice", "z6"], 0, "maximal: [[0, 3], [0, 2, 4]]"),
    (["report", "simplicity", "f2"], 0, "simple: True"),
    (["report", "simplicity", "end_z6_5x"], 1, "FAIL"),
    (["report", "decompose", "f2c3_augmentation"], 0, "summands: [[0, 1]]"),
    (["report", "tensor", "z2", "z2"], 0, "order 2"),
])
def test_reports(argv, code, needle, capsys):
    assert main(argv) == code
    assert needle in capsys.readouterr().out


def test_unknown_verb_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
