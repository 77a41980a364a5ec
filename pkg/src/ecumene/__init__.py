"""Ecumenical natural deduction: formulas, a trusted proof checker, formula
translations, proof constructions and propositional decision procedures."""

from ecumene.syntax import (
    And,
    App,
    Atom,
    Bot,
    CLabel,
    DialectError,
    Exists,
    Flavor,
    Forall,
    Imp,
    Or,
    Param,
    ParseError,
    System,
    Var,
    free_objects,
    parse_formula,
    parse_term,
    print_formula,
    substitute,
    well_formed,
)
from ecumene.kernel import CheckReport, Hyp, Infer, Judgment, check, open_assumptions, rule_table

__version__ = "0.1.0"
CORPUS_VERSION = "1"

__all__ = [
    "And",
    "App",
    "Atom",
    "Bot",
    "CLabel",
    "CheckReport",
    "DialectError",
    "Exists",
    "Flavor",
    "Forall",
    "Hyp",
    "Imp",
    "Infer",
    "Judgment",
    "Or",
    "Param",
    "ParseError",
    "System",
    "Var",
    "check",
    "free_objects",
    "open_assumptions",
    "parse_formula",
    "parse_term",
    "print_formula",
    "rule_table",
    "substitute",
    "well_formed",
]
