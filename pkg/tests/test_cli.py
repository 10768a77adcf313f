import json

import pytest

from arboreal import automorphism as A
from arboreal.cli import run
from arboreal.tree_index import TreeShape


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def js(capsys, *argv):
    code, out = call(capsys, *argv)
    return code, json.loads(out)


def test_sign(capsys):
    a = A.random_automorphism(TreeShape(3, 2), 3)
    rec = json.dumps(A.to_record(a))
    from arboreal.signs import sgn_m
    assert js(capsys, "sign", "--d", "3", "--n", "2", "--element", rec, "--variant", "m:2") == \
        (0, {"sign": sgn_m(a, 2)})
    leaves = json.dumps(list(A.to_leaf_permutation(a)))
    assert js(capsys, "sign", "--d", "3", "--n", "2", "--element", leaves)[1]["sign"] in (1, -1)


def test_classify(capsys):
    assert js(capsys, "classify", "--poly", "1,0,-3,2") == \
        (0, {"family": "E", "d": 3, "m": 2, "L": 0, "O": 1, "flags": []})
    code, rec = js(capsys, "classify", "--poly", "0,0,-2,0,1")
    assert code == 2 and rec["reason"] == "UncoveredCase"
    assert js(capsys, "classify", "--poly", "-2,0,1")[1]["mp"] == 2


def test_order_and_enumerate(capsys):
    assert js(capsys, "order", "--spec", "E:d=3,m=2", "--n", "3") == (0, {"order": "816293376"})
    code, rec = js(capsys, "enumerate", "--spec", "E:d=3,m=2", "--n", "2")
    assert code == 0 and rec["count"] == "648"
    code, rec = js(capsys, "enumerate", "--spec", "E:d=3,m=2", "--n", "2", "--budget", "100")
    assert code == 2 and rec["error"] == "TooLarge"
    code, out = call(capsys, "enumerate", "--spec", "E:d=3,m=2", "--n", "1", "--tsv")
    assert code == 0 and len(out.splitlines()) == 6


def test_determinism(capsys):
    argv = ["sample", "--spec", "F:d=3,m=3,mp=1", "--n", "3", "--count", "5", "--seed", "11"]
    assert call(capsys, *argv) == call(capsys, *argv)
    assert call(capsys, *argv) != call(capsys, *argv[:-1], "12")


def test_structure_verbs(capsys):
    code, rec = js(capsys, "chief-series", "--spec", "E:d=3,m=2", "--n", "2")
    assert rec["orders"] == ["1", "27", "108", "324", "648"] and rec["unique"]
    code, out = call(capsys, "chief-series", "--spec", "E:d=3,m=2", "--n", "2", "--tsv")
    assert out.splitlines()[1] == "1\t27\t27\t3,3,3\ttrue"
    assert js(capsys, "rank", "--spec", "E:d=3,m=2", "--n", "2")[1]["rank"] == 2
    assert js(capsys, "abelianization", "--spec", "Aut:d=2", "--n", "2")[1]["invariants"] == [2, 2]
    assert js(capsys, "orbit", "--spec", "E:d=3,m=2", "--n", "2")[1]["orbit"] == list(range(9))
    rec = js(capsys, "normalize-tuple", "--tuple", "1,-1,-1,1,1")[1]
    assert rec["result"] == [-1, -1, 1, 1, 1]
    code, rec = js(capsys, "normalize-tuple", "--tuple", "1,1,-1")
    assert code == 2 and rec["reason"] == "OddParity"
    rec = js(capsys, "invert-conj", "--d", "3", "--n", "1", "--element", "[1,2,0]")[1]
    assert rec["verified"]
    assert js(capsys, "member", "--spec", "E:d=3,m=2", "--n", "1", "--element", "[1,0,2]")[1] == \
        {"member": True}


def test_dynamics_verbs(capsys):
    rec = js(capsys, "disc", "--poly", "1,0,-3,2", "--alpha", "3", "--n", "2")[1]
    assert rec["value"] == "2^36·3^22" and rec["is_square"]
    assert js(capsys, "disc", "--poly", "1,0,-3,2", "--alpha", "-1")[1]["value_raw"] == "-216"
    assert js(capsys, "resultant", "--poly", "-1,1", "--poly", "-2,1")[1] == {"resultant": "-1"}
    assert js(capsys, "iterate", "--poly", "0,0,1", "--n", "3")[1]["polynomial"] == "z^8"
    code, rec = js(capsys, "iterate", "--poly", "1,0,-3,2", "--n", "4")
    assert code == 2 and rec["reason"] == "DegreeOverflow"
    assert js(capsys, "iterate", "--poly", "1,0,-3,2", "--n", "4", "--budget", "81")[1]["degree"] == 81
    assert js(capsys, "pcf", "--poly", "-2,0,1")[1]["L"] == 2
    code, rec = js(capsys, "pcf", "--poly", "1,0,1")
    assert code == 2 and rec["reason"] == "NotPCF"


def test_padic_verbs(capsys):
    assert js(capsys, "newton", "--poly", "-2,0,-3,2", "--prime", "2")[1]["segments"] == \
        [["-1/2", 2], ["1", 1]]
    assert js(capsys, "eisenstein", "--poly", "-2,0,-3,2", "--prime", "3", "--shift", "1")[1]["eisenstein"]
    rec = js(capsys, "eisenstein", "--poly", "1,0,-3,2", "--alpha", "3", "--n", "2")[1]
    assert rec["certificate"]["prime"] == 3
    assert js(capsys, "condition", "--alpha", "3")[1]["holds"]
    code, rec = js(capsys, "condition", "--alpha", "0")
    assert code == 2 and rec["reason"] == "OutOfRange"


@pytest.mark.parametrize("argv", [["bogus"], ["order", "--spec", "X", "--n", "1"], ["order"],
                                  ["disc", "--poly", "1,a"], ["resultant", "--poly", "1,1"],
                                  ["verify", "--suite", "nope"]])
def test_usage_errors(capsys, argv):
    code, out = call(capsys, *argv)
    assert code == 1 and json.loads(out)["reason"]


def test_verify(capsys):
    code, out = call(capsys, "verify", "--suite", "orders")
    assert "E_2^2(3): enumerated 648 == formula 648: PASS" in out
    code, out = call(capsys, "verify", "--suite", "dynamics")
    assert code == 0 and "disc(f²−3) = 2^36·3^22 square: PASS" in out
    code, out = call(capsys, "verify", "--suite", "structure")
    assert code == 0 and "chief series [1,27,108,324,648] unique: PASS" in out


def test_spec_from_flags(capsys):
    assert js(capsys, "order", "--d", "3", "--m", "2", "--n", "3")[1] == {"order": "816293376"}
    assert js(capsys, "order", "--family", "F", "--d", "2", "--m", "2", "--mp", "1", "--n", "2")[1] == \
        {"order": "4"}
