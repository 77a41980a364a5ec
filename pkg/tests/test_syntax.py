import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
import random

from ecumene.generate import random_formula
from ecumene.syntax import (
    BOT,
    CLS,
    INT,
    NEUTRAL,
    And,
    App,
    Atom,
    CLabel,
    DialectError,
    Exists,
    Forall,
    Imp,
    Or,
    Param,
    ParseError,
    System,
    Var,
    free_objects,
    parse_formula,
    parse_sequent,
    parse_term,
    print_formula,
    substitute,
    well_formed,
)


def test_flavored_operators_and_precedence():
    f = parse_formula(r"p ->i q \/c r", "ne")
    assert f == Imp(INT, Atom("p"), Or(CLS, Atom("q"), Atom("r")))


def test_implication_is_right_associative():
    f = parse_formula("p -> q -> r", "nj")
    assert f == Imp(NEUTRAL, Atom("p"), Imp(NEUTRAL, Atom("q"), Atom("r")))


def test_conjunction_binds_tighter_than_disjunction():
    f = parse_formula(r"p /\ q \/ r", "nj")
    assert isinstance(f, Or) and isinstance(f.left, And)


def test_negation_is_implication_into_bot():
    assert parse_formula("~p", "ne") == Imp(INT, Atom("p"), BOT)
    assert parse_formula("~p", "eci") == Imp(NEUTRAL, Atom("p"), BOT)


def test_classical_atom_suffix():
    assert parse_formula("P_c", "ne") == Atom("P", CLS)
    assert parse_formula("p_i", "nek") == Atom("p", INT)


def test_label_postfix():
    f = parse_formula(r"(p /\ q)^c", "eci")
    assert f == CLabel(And(NEUTRAL, Atom("p"), Atom("q")))
    assert print_formula(f, "eci") == r"(p /\ q)^c"


def test_nested_labels_are_kept():
    f = parse_formula("((p)^c)^c", "eci")
    assert f == CLabel(CLabel(Atom("p")))


@pytest.mark.parametrize(
    "text, dialect",
    [("p ->c q", "eci"), ("p /\\c q", "ne"), ("(p)^c", "nek"), ("forallc x. P(x)", "ne"), ("P_c", "eci")],
)
def test_dialect_violations(text, dialect):
    with pytest.raises(DialectError):
        parse_formula(text, dialect)


@pytest.mark.parametrize("text", ["p ->", "(p", "p q", "forall . p", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text, "nj")


def test_quantifier_flavors_per_dialect():
    assert parse_formula("forall x. P(x)", "ne").flavor is NEUTRAL
    assert parse_formula("foralli x. P(x)", "nek").flavor is INT
    assert parse_formula("forallc x. P(x)", "nek").flavor is CLS
    assert parse_formula("existsc x. P(x)", "ne").flavor is CLS


def test_terms():
    assert parse_term("a") == Param("a")
    assert parse_term("x") == Var("x")
    assert parse_term("f(a, y)") == App("f", (Param("a"), Var("y")))


def test_alpha_equivalence():
    assert parse_formula("forall x. P(x)", "nj") == parse_formula("forall y. P(y)", "nj")
    assert parse_formula("forall x. P(x, y)", "nj") != parse_formula("forall y. P(y, y)", "nj")
    assert len({parse_formula("exists x. Q(x)", "nj"), parse_formula("exists z. Q(z)", "nj")}) == 1


def test_substitution_avoids_capture():
    f = parse_formula("exists y. Q(x, y)", "nj")
    g = substitute(f, "x", Var("y"))
    assert g == parse_formula("exists z. Q(y, z)", "nj")
    assert "y" in free_objects(g)[0]


def test_substitution_leaves_bound_occurrences():
    f = parse_formula("forall x. P(x)", "nj")
    assert substitute(f, "x", Param("a")) == f


def test_sequent():
    ctx, goal = parse_sequent(r"{p, q /\ r} |- p", "nj")
    assert ctx == (Atom("p"), And(NEUTRAL, Atom("q"), Atom("r"))) and goal == Atom("p")
    assert parse_sequent("{} |- p", "nj")[0] == ()


def test_well_formed_flags_neutral_conjunction_in_nek():
    bad = well_formed(System.NEK, And(NEUTRAL, Atom("p"), Atom("q")))
    assert bad and well_formed(System.NE, And(NEUTRAL, Atom("p"), Atom("q"))) == []


def test_eci_classical_atom_flavor_is_ill_formed():
    assert well_formed(System.ECI, Atom("p", CLS))


@pytest.mark.parametrize("system", list(System))
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), size=st.integers(0, 7))
def test_print_parse_round_trip(system, seed, size):
    rng = random.Random(seed)
    f = random_formula(rng, system, size, quantifiers=(Forall, Exists))
    text = print_formula(f, system)
    assert parse_formula(text, system) == f
