"""The trusted checker.

Each rule is a :class:`RuleSchema` whose premises, conclusion and discharge
slots are formula patterns.  :func:`check` matches every inference node
against the schema named by its rule id and enforces discharge bookkeeping and
eigenvariable freshness.  Nothing else is trusted: proof constructions
elsewhere in the package are only believed once they pass :func:`check`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from ecumene.syntax import (
    BOT,
    CLS,
    INT,
    NEUTRAL,
    And,
    Atom,
    Bot,
    CLabel,
    Exists,
    Flavor,
    Forall,
    Formula,
    Imp,
    Or,
    Param,
    System,
    Term,
    Var,
    conj_flavor,
    free_objects,
    free_vars,
    int_flavor,
    print_formula,
    substitute,
    well_formed,
)

# -- proofs -----------------------------------------------------------------


@dataclass(frozen=True)
class Hyp:
    label: int
    formula: Formula

    @property
    def conclusion(self) -> Formula:
        return self.formula


@dataclass(frozen=True)
class Infer:
    rule: str
    conclusion: Formula
    premises: tuple = ()
    discharges: tuple = ()
    eigen: Optional[str] = None
    witness: Optional[Term] = None


Proof = Union[Hyp, Infer]


def size(p: Proof) -> int:
    """Number of nodes, hypothesis leaves included."""
    if isinstance(p, Hyp):
        return 1
    return 1 + sum(size(q) for q in p.premises)


def nodes(p: Proof):
    """Pre-order traversal yielding ``(path, node)``."""
    stack = [((), p)]
    while stack:
        path, q = stack.pop()
        yield path, q
        if isinstance(q, Infer):
            for i in reversed(range(len(q.premises))):
                stack.append((path + (i,), q.premises[i]))


def leaves(p: Proof):
    return [q for _, q in nodes(p) if isinstance(q, Hyp)]


# -- rule schemas -----------------------------------------------------------


@dataclass(frozen=True)
class Meta:
    """Formula metavariable (A, B, C in the rule displays)."""

    name: str


@dataclass(frozen=True)
class AtomMeta:
    """Predicate metavariable ``P(t1..tn)`` with a fixed flavor."""

    name: str
    flavor: Flavor


@dataclass(frozen=True)
class Inst:
    """``A(t/x)``: body metavariable ``A`` with bound variable ``x`` replaced
    by the node's witness term or eigen-parameter."""

    body: str
    var: str
    by: str  # "witness" | "eigen"


@dataclass(frozen=True)
class Slot:
    premise: int
    pattern: object


@dataclass(frozen=True)
class Fresh:
    """Eigenvariable condition: the parameter may not occur in the listed
    pattern positions nor in the open assumptions of ``premise`` (except those
    discharged by ``except_slot``)."""

    premise: int
    positions: tuple
    except_slot: Optional[int] = None


@dataclass(frozen=True)
class RuleSchema:
    rule: str
    premises: tuple
    conclusion: object
    slots: tuple = ()
    side: Union[None, str, Fresh] = None  # None | "witness" | Fresh

    @property
    def arity(self) -> int:
        return len(self.premises)


def _n(a, fl):
    return Imp(fl, a, BOT)


A, B, C = Meta("A"), Meta("B"), Meta("C")


def _neutral(system: System) -> list[RuleSchema]:
    cf = conj_flavor(system)
    return [
        RuleSchema("and_intro", (A, B), And(cf, A, B)),
        RuleSchema("and_elim_1", (And(cf, A, B),), A),
        RuleSchema("and_elim_2", (And(cf, A, B),), B),
        RuleSchema("bot_elim", (BOT,), A),
        RuleSchema(
            "all_intro",
            (Inst("A", "x", "eigen"),),
            Forall(cf, "x", A),
            side=Fresh(0, ("conclusion",)),
        ),
        RuleSchema("all_elim", (Forall(cf, "x", A),), Inst("A", "x", "witness"), side="witness"),
    ]


def _intuitionistic(system: System, suffix: str) -> list[RuleSchema]:
    fl = int_flavor(system)
    return [
        RuleSchema(f"imp{suffix}_intro", (B,), Imp(fl, A, B), slots=(Slot(0, A),)),
        RuleSchema(f"imp{suffix}_elim", (Imp(fl, A, B), A), B),
        RuleSchema(f"or{suffix}_intro_1", (A,), Or(fl, A, B)),
        RuleSchema(f"or{suffix}_intro_2", (B,), Or(fl, A, B)),
        RuleSchema(f"or{suffix}_elim", (Or(fl, A, B), C, C), C, slots=(Slot(1, A), Slot(2, B))),
        RuleSchema(f"ex{suffix}_intro", (Inst("A", "x", "witness"),), Exists(fl, "x", A), side="witness"),
        RuleSchema(
            f"ex{suffix}_elim",
            (Exists(fl, "x", A), B),
            B,
            slots=(Slot(1, Inst("A", "x", "eigen")),),
            side=Fresh(1, ("conclusion", "premise0"), except_slot=0),
        ),
    ]


def _classical(system: System) -> list[RuleSchema]:
    ni = int_flavor(system)
    univ = conj_flavor(system)
    return [
        RuleSchema("imp_c_intro", (BOT,), Imp(CLS, A, B), slots=(Slot(0, A), Slot(0, _n(B, ni)))),
        RuleSchema("imp_c_elim", (Imp(CLS, A, B), A, _n(B, ni)), BOT),
        RuleSchema("or_c_intro", (BOT,), Or(CLS, A, B), slots=(Slot(0, _n(A, ni)), Slot(0, _n(B, ni)))),
        RuleSchema("or_c_elim", (Or(CLS, A, B), _n(A, ni), _n(B, ni)), BOT),
        RuleSchema("ex_c_intro", (BOT,), Exists(CLS, "x", A), slots=(Slot(0, Forall(univ, "x", _n(A, ni))),)),
        RuleSchema("ex_c_elim", (Exists(CLS, "x", A), Forall(univ, "x", _n(A, ni))), BOT),
        RuleSchema("atom_c_intro", (BOT,), AtomMeta("P", CLS), slots=(Slot(0, _n(AtomMeta("P", INT), ni)),)),
        RuleSchema("atom_c_elim", (AtomMeta("P", CLS), _n(AtomMeta("P", INT), ni)), BOT),
    ]


def _nek_extra() -> list[RuleSchema]:
    return [
        RuleSchema("and_c_intro", (BOT, BOT), And(CLS, A, B), slots=(Slot(0, _n(A, INT)), Slot(1, _n(B, INT)))),
        RuleSchema("and_c_elim_1", (And(CLS, A, B), _n(A, INT)), BOT),
        RuleSchema("and_c_elim_2", (And(CLS, A, B), _n(B, INT)), BOT),
        RuleSchema(
            "all_c_intro",
            (BOT,),
            Forall(CLS, "x", A),
            slots=(Slot(0, Exists(INT, "x", _n(A, INT))),),
        ),
        RuleSchema(
            "all_c_elim",
            (Forall(CLS, "x", A),),
            _n(_n(Inst("A", "x", "witness"), INT), INT),
            side="witness",
        ),
    ]


def _label_rules() -> list[RuleSchema]:
    return [
        RuleSchema("i_c", (BOT,), CLabel(A), slots=(Slot(0, _n(A, NEUTRAL)),)),
        RuleSchema("e_c", (CLabel(A), _n(A, NEUTRAL)), BOT),
    ]


def _raa() -> list[RuleSchema]:
    return [RuleSchema("raa", (BOT,), A, slots=(Slot(0, _n(A, NEUTRAL)),))]


_TABLES: dict[System, tuple] = {}


def rule_table(system: System | str) -> list[RuleSchema]:
    """The rule schemas legal in ``system``, in display order."""
    system = System.parse(system)
    if system not in _TABLES:
        if system is System.NE:
            rules = _neutral(system) + _intuitionistic(system, "_i") + _classical(system)
        elif system is System.NEK:
            rules = _neutral(system) + _intuitionistic(system, "_i") + _classical(system) + _nek_extra()
        else:
            rules = _neutral(system) + _intuitionistic(system, "")
            if system is System.ECI:
                rules += _label_rules()
            elif system is System.NK:
                rules += _raa()
        _TABLES[system] = tuple(rules)
    return list(_TABLES[system])


def _schema_map(system: System) -> dict[str, RuleSchema]:
    return {r.rule: r for r in rule_table(system)}


# -- pattern matching -------------------------------------------------------


class _Deferred(Exception):
    pass


@dataclass
class _Env:
    formulas: dict = field(default_factory=dict)
    vars: dict = field(default_factory=dict)
    atoms: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)

    def copy(self) -> "_Env":
        return _Env(dict(self.formulas), dict(self.vars), dict(self.atoms), dict(self.terms))


def _bound(pat, env: _Env) -> bool:
    if isinstance(pat, Meta):
        return pat.name in env.formulas
    if isinstance(pat, AtomMeta):
        return pat.name in env.atoms
    if isinstance(pat, Inst):
        return pat.body in env.formulas and pat.var in env.vars
    if isinstance(pat, (Atom, Bot)):
        return True
    if isinstance(pat, CLabel):
        return _bound(pat.body, env)
    if isinstance(pat, (And, Or, Imp)):
        return _bound(pat.left, env) and _bound(pat.right, env)
    if isinstance(pat, (Forall, Exists)):
        return pat.var in env.vars and _bound(pat.body, env)
    raise TypeError(pat)


def _instantiate(pat, env: _Env) -> Formula:
    if isinstance(pat, Meta):
        return env.formulas[pat.name]
    if isinstance(pat, AtomMeta):
        pred, args = env.atoms[pat.name]
        return Atom(pred, pat.flavor, args)
    if isinstance(pat, Inst):
        return substitute(env.formulas[pat.body], env.vars[pat.var], env.terms[pat.by])
    if isinstance(pat, (Atom, Bot)):
        return pat
    if isinstance(pat, CLabel):
        return CLabel(_instantiate(pat.body, env))
    if isinstance(pat, (And, Or, Imp)):
        return type(pat)(pat.flavor, _instantiate(pat.left, env), _instantiate(pat.right, env))
    return type(pat)(pat.flavor, env.vars[pat.var], _instantiate(pat.body, env))


def _match(pat, f: Formula, env: _Env) -> bool:
    if _bound(pat, env):
        return _instantiate(pat, env) == f
    if isinstance(pat, Meta):
        env.formulas[pat.name] = f
        return True
    if isinstance(pat, AtomMeta):
        if not isinstance(f, Atom) or f.flavor is not pat.flavor:
            return False
        env.atoms[pat.name] = (f.pred, f.args)
        return True
    if isinstance(pat, Inst):
        raise _Deferred
    if type(pat) is not type(f):
        return False
    if isinstance(pat, CLabel):
        return _match(pat.body, f.body, env)
    if pat.flavor is not f.flavor:
        return False
    if isinstance(pat, (And, Or, Imp)):
        return _match(pat.left, f.left, env) and _match(pat.right, f.right, env)
    # quantifier
    if pat.var not in env.vars:
        env.vars[pat.var] = f.var
        return _match(pat.body, f.body, env)
    y = env.vars[pat.var]
    if f.var == y:
        return _match(pat.body, f.body, env)
    if y in free_vars(f):
        return False
    return _match(pat.body, substitute(f.body, f.var, Var(y)), env)


def _solve(obligations: list, env: _Env) -> Optional[str]:
    """Match every ``(pattern, formula, where)``; returns a failure message."""
    pending = list(obligations)
    while pending:
        progress = False
        rest = []
        for pat, f, where in pending:
            trial = env.copy()
            try:
                ok = _match(pat, f, trial)
            except _Deferred:
                rest.append((pat, f, where))
                continue
            if not ok:
                return f"{where} does not fit the rule"
            env.formulas, env.vars, env.atoms, env.terms = trial.formulas, trial.vars, trial.atoms, trial.terms
            progress = True
        if not progress:
            return f"{rest[0][2]} cannot be determined"
        pending = rest
    return None


# -- checking ---------------------------------------------------------------


@dataclass(frozen=True)
class Judgment:
    context: tuple
    conclusion: Formula

    def same_as(self, other: "Judgment") -> bool:
        return set(self.context) == set(other.context) and self.conclusion == other.conclusion

    def render(self, system: System | str) -> str:
        ctx = ", ".join(print_formula(f, system) for f in self.context)
        return f"{{{ctx}}} |- {print_formula(self.conclusion, system)}"


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    judgment: Optional[Judgment] = None
    path: tuple = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def render(self, system: System | str) -> str:
        if self.ok:
            return f"OK: {self.judgment.render(system)}"
        where = "/".join(map(str, self.path)) or "root"
        return f"FAIL at {where}: {self.reason}"


class _Fail(Exception):
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason


def _dedupe(formulas) -> tuple:
    seen: dict = {}
    for f in formulas:
        seen.setdefault(f, f)
    return tuple(seen)


def open_assumptions(p: Proof) -> list[Formula]:
    """Formulas of hypothesis leaves not discharged by an ancestor (multiset)."""
    return [f for _, f in _open(p)]


def open_hyps(p: Proof) -> list[tuple[int, Formula]]:
    """``(label, formula)`` for each open hypothesis leaf of ``p``."""
    return _open(p)


def _open(p: Proof) -> list[tuple[int, Formula]]:
    if isinstance(p, Hyp):
        return [(p.label, p.formula)]
    out = []
    for k, q in enumerate(p.premises):
        closed = {lab for lab, slot in _slot_labels(p) if slot == k}
        out.extend(item for item in _open(q) if item[0] not in closed)
    return out


def _slot_labels(p: Infer) -> list[tuple[int, int]]:
    """``(label, premise)`` pairs discharged at ``p`` (only where the rule is known)."""
    schema = _ALL_SLOTS.get(p.rule)
    if schema is None or len(p.discharges) != len(schema):
        return []
    return [(lab, prem) for lab, prem in zip(p.discharges, schema) if lab]


def _all_slots() -> dict[str, tuple]:
    out: dict[str, tuple] = {}
    for s in System:
        for r in rule_table(s):
            out[r.rule] = tuple(sl.premise for sl in r.slots)
    return out


_ALL_SLOTS = _all_slots()


class _Checker:
    def __init__(self, system: System, proof: Proof):
        self.system = system
        self.schemas = _schema_map(system)
        self.label_formula: dict[int, Formula] = {}
        self.label_count: Counter = Counter()
        self.discharge_count: Counter = Counter()
        for _, q in nodes(proof):
            if isinstance(q, Hyp):
                self.label_formula.setdefault(q.label, q.formula)
                self.label_count[q.label] += 1
            else:
                self.discharge_count.update(lab for lab in q.discharges if isinstance(lab, int) and lab > 0)

    def _wf(self, f: Formula, path, what: str):
        bad = well_formed(self.system, f)
        if bad:
            raise _Fail(path, f"{what} is not well formed: {bad[0]}")

    def visit(self, p: Proof, path: tuple) -> list[tuple[int, Formula]]:
        if isinstance(p, Hyp):
            if not isinstance(p.label, int) or p.label <= 0:
                raise _Fail(path, f"hypothesis label must be a positive integer, got {p.label!r}")
            self._wf(p.formula, path, "hypothesis")
            if self.label_formula[p.label] != p.formula:
                raise _Fail(path, f"label {p.label} already names a different assumption")
            return [(p.label, p.formula)]
        opens = [self.visit(q, path + (i,)) for i, q in enumerate(p.premises)]
        return self.node(p, path, opens)

    def node(self, p: Infer, path: tuple, opens: list) -> list[tuple[int, Formula]]:
        schema = self.schemas.get(p.rule)
        if schema is None:
            raise _Fail(path, f"rule {p.rule!r} is not a rule of {self.system.name}")
        self._wf(p.conclusion, path, "conclusion")
        if len(p.premises) != schema.arity:
            raise _Fail(path, f"{p.rule} takes {schema.arity} premises, got {len(p.premises)}")
        if len(p.discharges) != len(schema.slots):
            raise _Fail(path, f"{p.rule} has {len(schema.slots)} discharge slots, got {len(p.discharges)}")
        for lab in p.discharges:
            if not isinstance(lab, int) or lab < 0:
                raise _Fail(path, f"bad discharge label {lab!r}")
        used = [lab for lab in p.discharges if lab]
        if len(used) != len(set(used)):
            raise _Fail(path, "the same label is discharged twice at one node")

        env = _Env()
        if schema.side == "witness":
            if p.witness is None or p.eigen is not None:
                raise _Fail(path, f"{p.rule} needs a witness term and no eigen-parameter")
            env.terms["witness"] = p.witness
        elif isinstance(schema.side, Fresh):
            if p.eigen is None or p.witness is not None:
                raise _Fail(path, f"{p.rule} needs an eigen-parameter and no witness term")
            env.terms["eigen"] = Param(p.eigen)
        elif p.eigen is not None or p.witness is not None:
            raise _Fail(path, f"{p.rule} takes neither witness nor eigen-parameter")

        obligations = [(schema.conclusion, p.conclusion, "conclusion")]
        obligations += [
            (pat, q.conclusion, f"premise {i}") for i, (pat, q) in enumerate(zip(schema.premises, p.premises))
        ]
        for j, (slot, lab) in enumerate(zip(schema.slots, p.discharges)):
            if not lab:
                continue
            if self.discharge_count[lab] > 1:
                raise _Fail(path, f"label {lab} is discharged at more than one node")
            inside = sum(1 for l, _ in opens[slot.premise] if l == lab)
            if inside != self.label_count[lab]:
                raise _Fail(path, f"label {lab} occurs outside the discharging premise or is already discharged")
            if inside:
                obligations.append((slot.pattern, self.label_formula[lab], f"assumption {lab}"))
        err = _solve(obligations, env)
        if err:
            raise _Fail(path, f"{p.rule}: {err}")

        if isinstance(schema.side, Fresh):
            self._fresh(p, schema, schema.side, path, opens)

        out = []
        for k, items in enumerate(opens):
            closed = {lab for lab, slot in zip(p.discharges, schema.slots) if lab and slot.premise == k}
            out.extend(item for item in items if item[0] not in closed)
        return out

    def _fresh(self, p: Infer, schema: RuleSchema, side: Fresh, path, opens):
        a = p.eigen
        formulas = []
        for pos in side.positions:
            formulas.append(p.conclusion if pos == "conclusion" else p.premises[int(pos[-1])].conclusion)
        skip = set()
        if side.except_slot is not None:
            lab = p.discharges[side.except_slot]
            if lab:
                skip.add(lab)
        formulas += [f for lab, f in opens[side.premise] if lab not in skip]
        for f in formulas:
            if a in free_objects(f)[1]:
                raise _Fail(path, f"eigen-parameter {a} is not fresh (occurs in {f})")


def check(system: System | str, p: Proof) -> CheckReport:
    """Verify ``p`` in ``system``; never raises on a bad proof."""
    system = System.parse(system)
    try:
        checker = _Checker(system, p)
        items = checker.visit(p, ())
    except _Fail as e:
        return CheckReport(False, path=e.path, reason=e.reason)
    except RecursionError:
        return CheckReport(False, reason="proof too deep")
    return CheckReport(True, Judgment(_dedupe(f for _, f in items), p.conclusion))


def judgment_of(system: System | str, p: Proof) -> Judgment:
    """The judgment proved by ``p``; raises ``ValueError`` if it does not check."""
    report = check(system, p)
    if not report.ok:
        raise ValueError(report.render(system))
    return report.judgment
