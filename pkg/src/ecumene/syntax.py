"""Terms and formulas for the five dialects, with parsing, printing and
capture-avoiding substitution.

Formula equality is alpha-equivalence: two formulas compare equal when they
differ only in the names of bound variables.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union


class System(enum.Enum):
    NE = "ne"
    NEK = "nek"
    ECI = "eci"
    NJ = "nj"
    NK = "nk"

    @classmethod
    def parse(cls, text: str | "System") -> "System":
        if isinstance(text, System):
            return text
        try:
            return cls(text.strip().lower().replace("_", ""))
        except ValueError:
            raise ValueError(f"unknown system {text!r}; expected one of ne, nek, eci, nj, nk") from None

    @property
    def flavored(self) -> bool:
        """True for the dialects that subscript connectives with a flavor."""
        return self in (System.NE, System.NEK)

    def __str__(self) -> str:
        return self.value


class Flavor(enum.Enum):
    INT = "i"
    CLS = "c"
    NEUTRAL = ""

    def __repr__(self) -> str:
        return f"Flavor.{self.name}"


INT, CLS, NEUTRAL = Flavor.INT, Flavor.CLS, Flavor.NEUTRAL


def int_flavor(system: System) -> Flavor:
    """Flavor of the intuitionistic ->, \\/ and exists (and of negation)."""
    return INT if system.flavored else NEUTRAL


def conj_flavor(system: System) -> Flavor:
    """Flavor of intuitionistic conjunction and universal quantification."""
    return INT if system is System.NEK else NEUTRAL


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Param:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple = ()

    def __str__(self) -> str:
        return f"{self.fn}({', '.join(map(str, self.args))})"


Term = Union[Var, Param, App]


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def term_params(t: Term) -> set[str]:
    if isinstance(t, Param):
        return {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_params(a)
        return out
    return set()


def _subst_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(t.fn, tuple(_subst_term(a, x, s) for a in t.args))
    return t


def _term_key(t: Term, env: dict[str, int], depth: int):
    if isinstance(t, Var):
        if t.name in env:
            return ("b", depth - env[t.name])
        return ("v", t.name)
    if isinstance(t, Param):
        return ("p", t.name)
    return ("f", t.fn, tuple(_term_key(a, env, depth) for a in t.args))


# -- formulas ---------------------------------------------------------------


class Formula:
    """Base class; equality and hashing are up to renaming of bound variables."""

    __slots__ = ()

    @cached_property
    def key(self):
        return _alpha_key(self, {}, 0)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self) -> str:
        return print_formula(self, _natural_system(self))


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    pred: str
    flavor: Flavor = INT
    args: tuple = ()


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    pass


@dataclass(frozen=True, eq=False)
class And(Formula):
    flavor: Flavor
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Or(Formula):
    flavor: Flavor
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Imp(Formula):
    flavor: Flavor
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Forall(Formula):
    flavor: Flavor
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class Exists(Formula):
    flavor: Flavor
    var: str
    body: Formula


@dataclass(frozen=True, eq=False)
class CLabel(Formula):
    body: Formula


BINARY = (And, Or, Imp)
QUANTIFIERS = (Forall, Exists)
BOT = Bot()


def neg(a: Formula, flavor: Flavor = NEUTRAL) -> Imp:
    return Imp(flavor, a, BOT)


def is_neg(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


def _alpha_key(f: Formula, env: dict[str, int], depth: int):
    if isinstance(f, Atom):
        return ("A", f.pred, f.flavor.value, tuple(_term_key(t, env, depth) for t in f.args))
    if isinstance(f, Bot):
        return ("F",)
    if isinstance(f, CLabel):
        return ("C", _alpha_key(f.body, env, depth))
    if isinstance(f, BINARY):
        return (
            type(f).__name__,
            f.flavor.value,
            _alpha_key(f.left, env, depth),
            _alpha_key(f.right, env, depth),
        )
    if isinstance(f, QUANTIFIERS):
        inner = dict(env)
        inner[f.var] = depth + 1
        return (type(f).__name__, f.flavor.value, _alpha_key(f.body, inner, depth + 1))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS) or isinstance(f, CLabel):
        yield from subformulas(f.body)


def connectives(f: Formula) -> int:
    """Number of internal nodes (binary connectives, quantifiers, labels)."""
    return sum(1 for g in subformulas(f) if not isinstance(g, (Atom, Bot)))


def free_objects(f: Formula | Term) -> tuple[frozenset, frozenset]:
    """Free variable names and parameter names occurring in ``f``."""
    if isinstance(f, (Var, Param, App)):
        return frozenset(term_vars(f)), frozenset(term_params(f))
    fv: set[str] = set()
    ps: set[str] = set()
    _collect(f, frozenset(), fv, ps)
    return frozenset(fv), frozenset(ps)


def _collect(f: Formula, bound: frozenset, fv: set, ps: set) -> None:
    if isinstance(f, Atom):
        for t in f.args:
            fv |= term_vars(t) - bound
            ps |= term_params(t)
    elif isinstance(f, BINARY):
        _collect(f.left, bound, fv, ps)
        _collect(f.right, bound, fv, ps)
    elif isinstance(f, QUANTIFIERS):
        _collect(f.body, bound | {f.var}, fv, ps)
    elif isinstance(f, CLabel):
        _collect(f.body, bound, fv, ps)


def free_vars(f: Formula) -> frozenset:
    return free_objects(f)[0]


def params(f: Formula) -> frozenset:
    return free_objects(f)[1]


def fresh_name(base: str, avoid) -> str:
    stem = base.rstrip("0123456789") or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace the free occurrences of variable ``x`` in ``f`` by ``t``,
    renaming bound variables that would capture a variable of ``t``."""
    tvars = term_vars(t)
    if isinstance(f, Atom):
        return Atom(f.pred, f.flavor, tuple(_subst_term(a, x, t) for a in f.args))
    if isinstance(f, Bot):
        return f
    if isinstance(f, CLabel):
        return CLabel(substitute(f.body, x, t))
    if isinstance(f, BINARY):
        return type(f)(f.flavor, substitute(f.left, x, t), substitute(f.right, x, t))
    if isinstance(f, QUANTIFIERS):
        if f.var == x or x not in free_vars(f.body):
            return f
        var, body = f.var, f.body
        if var in tvars:
            new = fresh_name(var, tvars | free_vars(body) | {x})
            body = substitute(body, var, Var(new))
            var = new
        return type(f)(f.flavor, var, substitute(body, x, t))
    raise TypeError(f"not a formula: {f!r}")


def rename_param_term(t: Term, a: str, b: str) -> Term:
    if isinstance(t, Param):
        return Param(b) if t.name == a else t
    if isinstance(t, App):
        return App(t.fn, tuple(rename_param_term(s, a, b) for s in t.args))
    return t


def rename_param(f: Formula, a: str, b: str) -> Formula:
    """Rename parameter ``a`` to ``b`` everywhere in ``f``."""
    if isinstance(f, Atom):
        return Atom(f.pred, f.flavor, tuple(rename_param_term(t, a, b) for t in f.args))
    if isinstance(f, Bot):
        return f
    if isinstance(f, CLabel):
        return CLabel(rename_param(f.body, a, b))
    if isinstance(f, BINARY):
        return type(f)(f.flavor, rename_param(f.left, a, b), rename_param(f.right, a, b))
    return type(f)(f.flavor, f.var, rename_param(f.body, a, b))


def embed_ne(f: Formula) -> Formula:
    """Rename neutral conjunction and universal quantification to their
    intuitionistic NE_K counterparts."""
    if isinstance(f, (Atom, Bot)):
        return f
    if isinstance(f, CLabel):
        return CLabel(embed_ne(f.body))
    if isinstance(f, BINARY):
        fl = INT if isinstance(f, And) and f.flavor is NEUTRAL else f.flavor
        return type(f)(fl, embed_ne(f.left), embed_ne(f.right))
    fl = INT if isinstance(f, Forall) and f.flavor is NEUTRAL else f.flavor
    return type(f)(fl, f.var, embed_ne(f.body))


# -- well-formedness --------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    node: Formula
    rule: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.node!s}"


def _legal_flavors(system: System, f: Formula) -> tuple[Flavor, ...]:
    if isinstance(f, Atom):
        return (INT, CLS) if system.flavored else (INT,)
    if isinstance(f, (And, Forall)):
        if system is System.NEK:
            return (INT, CLS)
        return (NEUTRAL,)
    return (INT, CLS) if system.flavored else (NEUTRAL,)


_NAMES = {
    And: "conjunction",
    Or: "disjunction",
    Imp: "implication",
    Forall: "universal quantifier",
    Exists: "existential quantifier",
    Atom: "atom",
}

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def well_formed(system: System | str, f: Formula) -> list[Violation]:
    """All dialect violations in ``f``; empty when ``f`` belongs to the dialect."""
    system = System.parse(system)
    out: list[Violation] = []
    for g in subformulas(f):
        if isinstance(g, Bot):
            continue
        if isinstance(g, CLabel):
            if system is not System.ECI:
                out.append(Violation(g, f"classical label not in {system.name}"))
            continue
        if g.flavor not in _legal_flavors(system, g):
            what = _NAMES[type(g)]
            fl = {INT: "intuitionistic", CLS: "classical", NEUTRAL: "neutral"}[g.flavor]
            out.append(Violation(g, f"{fl} {what} not in {system.name}"))
        if isinstance(g, QUANTIFIERS) and not _IDENT.match(g.var):
            out.append(Violation(g, f"bad bound variable {g.var!r}"))
    return out


# -- parsing ----------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, pos: int = -1, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{message}{where}")


class DialectError(ParseError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op>(?:/\\|\\/|->)[ic](?![A-Za-z0-9_])|/\\|\\/|->)
  | (?P<label>\^c(?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[(),.~])
    """,
    re.VERBOSE,
)

_VAR_INITIALS = frozenset("uvwxyz")

_QUANT_WORDS = ("forall", "foralli", "forallc", "exists", "existsi", "existsc")

_OPS_NE = {
    "/\\": (And, NEUTRAL),
    "\\/i": (Or, INT),
    "\\/c": (Or, CLS),
    "->i": (Imp, INT),
    "->c": (Imp, CLS),
}
_OPS_NEK = {
    "/\\": (And, INT),
    "/\\i": (And, INT),
    "/\\c": (And, CLS),
    "\\/i": (Or, INT),
    "\\/c": (Or, CLS),
    "->i": (Imp, INT),
    "->c": (Imp, CLS),
}
_OPS_PLAIN = {"/\\": (And, NEUTRAL), "\\/": (Or, NEUTRAL), "->": (Imp, NEUTRAL)}

_QUANTS_NE = {
    "forall": (Forall, NEUTRAL),
    "foralli": (Forall, NEUTRAL),
    "existsi": (Exists, INT),
    "existsc": (Exists, CLS),
}
_QUANTS_NEK = {
    "forall": (Forall, INT),
    "foralli": (Forall, INT),
    "forallc": (Forall, CLS),
    "existsi": (Exists, INT),
    "existsc": (Exists, CLS),
}
_QUANTS_PLAIN = {"forall": (Forall, NEUTRAL), "exists": (Exists, NEUTRAL)}


def _tables(system: System):
    if system is System.NE:
        return _OPS_NE, _QUANTS_NE
    if system is System.NEK:
        return _OPS_NEK, _QUANTS_NEK
    return _OPS_PLAIN, _QUANTS_PLAIN


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, system: System):
        self.text = text
        self.system = system
        self.toks = _tokenize(text)
        self.i = 0
        self.bound: list[str] = []
        self.ops, self.quants = _tables(system)

    # token helpers
    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str):
        kind, val, pos = self.advance()
        if val != text:
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", pos, self.text)

    def error(self, msg: str, pos: int, dialect: bool = False):
        cls = DialectError if dialect else ParseError
        return cls(msg, pos, self.text)

    # grammar
    def parse_all(self) -> Formula:
        f = self.formula()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise self.error(f"unexpected {val!r}", pos)
        return f

    def formula(self) -> Formula:
        return self.imp()

    def _binop(self, family: str):
        kind, val, pos = self.peek()
        if kind != "op" or not val.startswith(family):
            return None
        if val not in self.ops:
            raise self.error(f"operator {val!r} not in the {self.system.name} dialect", pos, dialect=True)
        self.advance()
        return self.ops[val]

    def imp(self) -> Formula:
        left = self.disj()
        op = self._binop("->")
        if op is None:
            return left
        cls, fl = op
        return cls(fl, left, self.imp())

    def disj(self) -> Formula:
        left = self.conj()
        while (op := self._binop("\\/")) is not None:
            cls, fl = op
            left = cls(fl, left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while (op := self._binop("/\\")) is not None:
            cls, fl = op
            left = cls(fl, left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "~":
            self.advance()
            return Imp(int_flavor(self.system), self.unary(), BOT)
        return self.postfix()

    def postfix(self) -> Formula:
        f = self.primary()
        while self.peek()[0] == "label":
            pos = self.advance()[2]
            if self.system is not System.ECI:
                raise self.error(f"classical label not in the {self.system.name} dialect", pos, dialect=True)
            f = CLabel(f)
        return f

    def primary(self) -> Formula:
        kind, val, pos = self.advance()
        if val == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind != "ident":
            raise self.error(f"unexpected {val or 'end of input'!r}", pos)
        if val == "bot":
            return BOT
        if val in _QUANT_WORDS:
            if val not in self.quants:
                raise self.error(f"quantifier {val!r} not in the {self.system.name} dialect", pos, dialect=True)
            cls, fl = self.quants[val]
            vkind, var, vpos = self.advance()
            if vkind != "ident" or var == "bot" or var in _QUANT_WORDS:
                raise self.error("expected a bound variable", vpos)
            self.expect(".")
            self.bound.append(var)
            try:
                body = self.formula()
            finally:
                self.bound.pop()
            return cls(fl, var, body)
        return self.atom(val, pos)

    def atom(self, name: str, pos: int) -> Atom:
        flavor = INT
        if self.system.flavored:
            if name.endswith("_c") and len(name) > 2:
                name, flavor = name[:-2], CLS
            elif name.endswith("_i") and len(name) > 2:
                name = name[:-2]
        elif name.endswith("_c"):
            raise self.error(
                f"classical atom suffix not in the {self.system.name} dialect (use the ^c label)",
                pos,
                dialect=self.system is System.ECI,
            )
        args: tuple = ()
        if self.peek()[1] == "(":
            args = self.term_args()
        return Atom(name, flavor, args)

    def term_args(self) -> tuple:
        self.expect("(")
        if self.peek()[1] == ")":
            self.advance()
            return ()
        args = [self.term()]
        while self.peek()[1] == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        kind, val, pos = self.advance()
        if kind != "ident":
            raise self.error(f"expected a term, found {val or 'end of input'!r}", pos)
        if self.peek()[1] == "(":
            return App(val, self.term_args())
        if val in self.bound or val[0] in _VAR_INITIALS:
            return Var(val)
        return Param(val)


def parse_formula(text: str, dialect: System | str) -> Formula:
    """Parse ``text`` in the ASCII surface grammar of ``dialect``.

    Raises:
        DialectError: a construct exists in the grammar but not in this dialect.
        ParseError: any other syntax error; ``.pos`` is the character offset.
    """
    return _Parser(text, System.parse(dialect)).parse_all()


def parse_term(text: str) -> Term:
    p = _Parser(text, System.NJ)
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {val!r}", pos, text)
    return t


def split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_sequent(text: str, dialect: System | str) -> tuple[tuple[Formula, ...], Formula]:
    """Parse ``{A, B} |- C`` (braces optional) into its context and goal."""
    if "|-" not in text:
        raise ParseError("expected '|-' in sequent", -1, text)
    lhs, rhs = text.split("|-", 1)
    lhs = lhs.strip()
    if lhs.startswith("{"):
        if not lhs.endswith("}"):
            raise ParseError("unbalanced braces in sequent", -1, text)
        lhs = lhs[1:-1]
    ctx = tuple(parse_formula(part, dialect) for part in split_top_level(lhs))
    return ctx, parse_formula(rhs, dialect)


# -- printing ---------------------------------------------------------------

_PREC = {Imp: 1, Or: 2, And: 3}
_SYMBOL = {Imp: "->", Or: "\\/", And: "/\\"}
_QWORD = {Forall: "forall", Exists: "exists"}


def _print_term(t: Term) -> str:
    return str(t)


def _natural_system(f: Formula) -> System:
    """A dialect in which ``f`` can be printed faithfully (used by ``str``)."""
    nodes = list(subformulas(f))
    if any(isinstance(g, CLabel) for g in nodes):
        return System.ECI
    flavors = {g.flavor for g in nodes if not isinstance(g, (Bot, CLabel))}
    if flavors <= {INT}:
        return System.NEK if any(isinstance(g, (And, Forall)) for g in nodes) else System.NJ
    if NEUTRAL not in flavors:
        return System.NEK
    if INT in flavors or CLS in flavors:
        return System.NE
    return System.NJ


class _Printer:
    def __init__(self, system: System):
        self.system = system
        self.neg_flavor = int_flavor(system)

    def fmt(self, f: Formula, ctx: int, rightmost: bool) -> str:
        if isinstance(f, Atom):
            name = f.pred + ("_c" if f.flavor is CLS else "")
            if f.args:
                return f"{name}({', '.join(_print_term(t) for t in f.args)})"
            return name
        if isinstance(f, Bot):
            return "bot"
        if isinstance(f, CLabel):
            return f"({self.fmt(f.body, 0, True)})^c"
        if isinstance(f, QUANTIFIERS):
            text = f"{_QWORD[type(f)]}{f.flavor.value} {f.var}. {self.fmt(f.body, 0, True)}"
            return text if rightmost else f"({text})"
        if isinstance(f, Imp) and isinstance(f.right, Bot) and f.flavor is self.neg_flavor:
            return "~" + self.fmt(f.left, 4, rightmost)
        p = _PREC[type(f)]
        wrap = p < ctx
        inner_right = True if wrap else rightmost
        if isinstance(f, Imp):
            left = self.fmt(f.left, p + 1, False)
            right = self.fmt(f.right, p, inner_right)
        else:
            left = self.fmt(f.left, p, False)
            right = self.fmt(f.right, p + 1, inner_right)
        text = f"{left} {_SYMBOL[type(f)]}{f.flavor.value} {right}"
        return f"({text})" if wrap else text


def print_formula(f: Formula, dialect: System | str) -> str:
    """Render ``f`` with minimal parentheses; the output re-parses to ``f``."""
    return _Printer(System.parse(dialect)).fmt(f, 0, True)
