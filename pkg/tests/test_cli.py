import io
import subprocess
import sys

import pytest

from ecumene.cli import run
from ecumene.proofio import bundled_corpus, parse_proof
from ecumene.kernel import check

CORPUS = bundled_corpus()


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_ok():
    code, out, _ = call("check", "--system", "eci", str(CORPUS / "label_to_double_negation.proof"))
    assert code == 0 and out.strip() == "OK: {(A)^c} |- ~~A"


def test_check_negative_file():
    code, out, _ = call("check", "--system", "nj", str(CORPUS / "illegal_double_negation_mp.proof"))
    assert code == 1 and out.startswith("FAIL at")


def test_check_missing_file():
    code, _, err = call("check", "--system", "nj", "/nonexistent.proof")
    assert code == 2 and err.startswith("error:")


def test_translate():
    code, out, _ = call("translate", "--map", "teci", "--formula", r"(p /\ q)^c")
    assert code == 0 and out.strip() == r"~~(p /\ q)"
    code, out, _ = call("translate", "--map", "tnek", "--formula", r"(p \/ q)^c")
    assert out.strip() == r"p \/c q"
    code, out, _ = call("translate", "--map", "star", "--formula", "existsc x. P(x)")
    assert out.strip() == "existsi x. P(x)"


def test_translate_error():
    code, _, err = call("translate", "--map", "tnek", "--formula", "forall x. P(x)")
    assert code == 2 and "error:" in err


def test_transform_writes_a_checkable_proof(tmp_path):
    code, out, err = call("transform", "--name", "glivenko1_internal", "--system", "ne", "--formula", r"A \/c B")
    assert code == 0
    assert err.strip() == r"OK: {A \/c B} |- ~~(A \/i B)"
    assert check("ne", parse_proof(out, "ne")).ok


def test_transform_with_proof_arguments(tmp_path):
    target = tmp_path / "nek.proof"
    code, _, err = call(
        "transform", "--name", "eci_to_nek", "--proof", str(CORPUS / "classical_modus_ponens.proof"), "--out", str(target)
    )
    assert code == 0, err
    assert "|- B_c" in err
    assert check("nek", parse_proof(target.read_text(), "nek")).ok


def test_transform_options():
    code, _, err = call("transform", "--name", "neg_forallc_elim", "--formula", "A(x)", "--var", "x", "--target", "neg_foralli")
    assert code == 0 and err.strip() == "OK: {~forallc x. A(x)} |- ~foralli x. A(x)"
    code, _, err = call("transform", "--name", "eci_neg_label_comm", "--formula", "p", "--direction", "bwd")
    assert code == 0 and err.strip() == "OK: {~(p)^c} |- (~p)^c"


def test_transform_input_errors():
    code, _, err = call("transform", "--name", "glivenko1_internal", "--system", "ne", "--formula", r"A \/i B")
    assert code == 2 and "not classical" in err
    code, _, err = call("transform", "--name", "star_embed", "--system", "eci", "--formula", "p")
    assert code == 2
    code, _, err = call("transform", "--name", "star_embed", "--system", "ne")
    assert code == 2


def test_decide():
    code, out, _ = call("decide", "--logic", "nek", "--assume", r"p /\c p", "--goal", "p")
    assert code == 1 and out.splitlines() == ["not provable", "(via tECI reduction)"]
    code, out, _ = call("decide", "--logic", "nek", "--assume", r"p /\c p", "--goal", "~~p")
    assert code == 0 and out.splitlines()[0] == "provable"
    code, out, _ = call("decide", "--logic", "cpl", "--goal", "p")
    assert code == 1 and "countermodel: p=false" in out
    code, out, _ = call("decide", "--logic", "ipl", "--goal", r"p \/ ~p")
    assert code == 1 and out.strip() == "not provable"
    code, out, _ = call("decide", "--logic", "eci", "--assume", "(bot)^c", "--goal", "bot")
    assert code == 0


def test_decide_rejects_first_order():
    code, _, err = call("decide", "--logic", "ipl", "--goal", "forall x. P(x)")
    assert code == 2 and err.startswith("error:")


def test_enum():
    code, out, _ = call("enum", "--atoms", "p", "--max-size", "1")
    assert code == 0 and len(out.splitlines()) == 14
    code, out, _ = call("enum", "--atoms", "p,q", "--max-size", "9")
    assert code == 2


def test_corpus_command():
    code, out, _ = call("corpus")
    assert code == 0
    assert out.strip().splitlines()[-1] == "23 files, 23 passed, 0 mismatched"


def test_corpus_mismatch(tmp_path):
    (tmp_path / "bad.proof").write_text(';; system: nj expect: ok judgment: "{} |- p"\n(hyp 1 "p")\n')
    code, out, _ = call("corpus", str(tmp_path))
    assert code == 1 and "1 mismatched" in out


def test_usage_error():
    code, _, err = call("check", "--system", "xx", "f")
    assert code == 2


def test_version_and_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ecumene.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ecumene ")
