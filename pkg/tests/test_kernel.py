import pytest

from ecumene.kernel import Hyp, Infer, check, judgment_of, open_assumptions, rule_table, size
from ecumene.syntax import BOT, Param, System, parse_formula, parse_term


def F(text, system="nj"):
    return parse_formula(text, system)


def test_rule_table_sizes():
    sizes = {s: len(rule_table(s)) for s in System}
    assert sizes == {System.NE: 21, System.NEK: 26, System.ECI: 15, System.NJ: 13, System.NK: 14}


def test_identity():
    p = Infer("imp_intro", F("p -> p"), (Hyp(1, F("p")),), (1,))
    report = check("nj", p)
    assert report.ok and report.judgment.context == ()
    assert report.render("nj") == "OK: {} |- p -> p"


def test_open_assumption_is_in_context():
    p = Infer("imp_elim", F("q"), (Hyp(1, F("p -> q")), Hyp(2, F("p"))))
    assert set(judgment_of("nj", p).context) == {F("p -> q"), F("p")}
    assert open_assumptions(p) == [F("p -> q"), F("p")]


def test_wrong_conclusion_reports_path():
    p = Infer("imp_intro", F("p -> q"), (Hyp(1, F("p")),), (1,))
    report = check("nj", p)
    assert not report.ok and report.path == ()
    assert report.render("nj").startswith("FAIL at root")


def test_failure_path_points_into_tree():
    bad = Infer("and_elim_1", F("q"), (Hyp(1, F(r"p /\ q")),))
    p = Infer("imp_intro", F(r"p /\ q -> q"), (bad,), (1,))
    assert check("nj", p).path == (0,)


def test_rule_outside_system():
    p = Infer("i_c", F("(p)^c", "eci"), (Hyp(1, BOT),), (0,))
    assert check("eci", p).ok
    assert "not a rule of NJ" in check("nj", p).reason


def test_label_discharged_twice():
    inner = Infer("imp_intro", F("p -> p"), (Hyp(1, F("p")),), (1,))
    outer = Infer("imp_intro", F("p -> p -> p"), (inner,), (1,))
    assert not check("nj", outer).ok


def test_label_must_name_one_formula():
    p = Infer("and_intro", F(r"p /\ q"), (Hyp(1, F("p")), Hyp(1, F("q"))))
    assert "different assumption" in check("nj", p).reason


def test_label_occurring_outside_discharging_premise():
    left = Infer("imp_intro", F("p -> p"), (Hyp(1, F("p")),), (1,))
    p = Infer("and_intro", F(r"(p -> p) /\ p"), (left, Hyp(1, F("p"))))
    assert not check("nj", p).ok


def test_vacuous_discharge():
    p = Infer("imp_intro", F("q -> p"), (Hyp(1, F("p")),), (0,))
    assert judgment_of("nj", p).context == (F("p"),)


def test_discharge_slot_must_fit():
    p = Infer("imp_intro", F("q -> p"), (Hyp(1, F("p")),), (1,))
    assert not check("nj", p).ok


def test_eigenvariable_freshness():
    good = Infer("all_intro", F("forall x. P(x) -> P(x)"), (Infer("imp_intro", F("P(a) -> P(a)"), (Hyp(1, F("P(a)")),), (1,)),), eigen="a")
    assert check("nj", good).ok
    bad = Infer("all_intro", F("forall x. P(x)"), (Hyp(1, F("P(a)")),), eigen="a")
    assert "not fresh" in check("nj", bad).reason


def test_exists_elim_freshness_in_conclusion():
    minor = Hyp(2, F("P(a)"))
    p = Infer("ex_elim", F("P(a)"), (Hyp(1, F("exists x. P(x)")), minor), (2,), eigen="a")
    assert not check("nj", p).ok


def test_witness_instantiation():
    p = Infer("all_elim", F("P(f(b))"), (Hyp(1, F("forall x. P(x)")),), witness=parse_term("f(b)"))
    assert check("nj", p).ok


def test_classical_rules_ne():
    # A ->i B |- A ->c B
    mp = Infer("imp_i_elim", F("B", "ne"), (Hyp(3, F("A ->i B", "ne")), Hyp(1, F("A", "ne"))))
    body = Infer("imp_i_elim", BOT, (Hyp(2, F("~B", "ne")), mp))
    p = Infer("imp_c_intro", F("A ->c B", "ne"), (body,), (1, 2))
    assert check("ne", p).render("ne") == "OK: {A ->i B} |- A ->c B"


def test_classical_forall_elim_in_nek():
    p = Infer("all_c_elim", F("~~P(a)", "nek"), (Hyp(1, F("forallc x. P(x)", "nek")),), witness=Param("a"))
    assert check("nek", p).ok
    assert not check("ne", p).ok


def test_size():
    p = Infer("imp_intro", F("p -> p"), (Hyp(1, F("p")),), (1,))
    assert size(p) == 2


