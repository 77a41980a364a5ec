"""Seeded random formulas and proofs for property tests and the acceptance
suite.

Proofs are grown bottom-up: a pool starts with hypotheses and every step
applies one rule to pool members (or to fresh hypotheses when a minor premise
is missing).  Each reuse of a pool proof relabels all of its labels, so trees
can be combined without label clashes.  The kernel is the only judge of the
results; the generator aims to produce valid trees but is not trusted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from ecumene.kernel import Hyp, Infer, Proof, check, nodes, open_hyps
from ecumene.syntax import (
    BOT,
    CLS,
    INT,
    NEUTRAL,
    And,
    App,
    Atom,
    Bot,
    CLabel,
    Exists,
    Forall,
    Formula,
    Imp,
    Or,
    Param,
    System,
    Var,
    conj_flavor,
    free_vars,
    fresh_name,
    int_flavor,
    neg,
    params,
    rename_param,
    substitute,
    term_params,
)

ATOMS = ("p", "q", "r")
PREDS = ("P", "Q")
PARAMS = ("a", "b")
VARS = ("x", "y", "z")


# -- formulas -----------------------------------------------------------------


def _flavors(system: System, cls) -> tuple:
    if not system.flavored:
        return (NEUTRAL,)
    if cls in (And, Forall):
        return (INT, CLS) if system is System.NEK else (NEUTRAL,)
    return (INT, CLS)


def random_formula(
    rng: random.Random,
    system: System | str,
    size: int,
    *,
    atoms=ATOMS,
    quantifiers: tuple = (),
    labels: bool = True,
    classical_forall: bool = True,
    bound: tuple = (),
) -> Formula:
    """A random well-formed formula with exactly ``size`` internal nodes.

    ``quantifiers`` lists the quantifier classes that may appear; with any,
    unary predicates over parameters and bound variables join the leaves.
    """
    system = System.parse(system)
    kw = dict(atoms=atoms, quantifiers=quantifiers, labels=labels, classical_forall=classical_forall)
    if size == 0:
        return _leaf(rng, system, atoms, bool(quantifiers), bound)
    choices = [And, Or, Imp]
    if quantifiers:
        choices += list(quantifiers)
    if labels and system is System.ECI:
        choices.append(CLabel)
    cls = rng.choice(choices)
    if cls is CLabel:
        return CLabel(random_formula(rng, system, size - 1, bound=bound, **kw))
    flavors = _flavors(system, cls)
    if cls is Forall and not classical_forall:
        flavors = tuple(f for f in flavors if f is not CLS)
    fl = rng.choice(flavors)
    if cls in (Forall, Exists):
        var = VARS[len(bound) % len(VARS)]
        return cls(fl, var, random_formula(rng, system, size - 1, bound=bound + (var,), **kw))
    k = rng.randrange(size)
    return cls(
        fl,
        random_formula(rng, system, k, bound=bound, **kw),
        random_formula(rng, system, size - 1 - k, bound=bound, **kw),
    )


def _leaf(rng, system, atoms, first_order, bound) -> Formula:
    fl = rng.choice((INT, CLS)) if system.flavored else INT
    pick = rng.random()
    if pick < 0.12:
        return BOT
    if first_order and pick < 0.6:
        terms = [Var(v) for v in bound] + [Param(a) for a in PARAMS]
        if bound and rng.random() < 0.7:
            term = Var(bound[-1])
        else:
            term = rng.choice(terms)
        if rng.random() < 0.15:
            term = App("f", (term,))
        return Atom(rng.choice(PREDS), fl, (term,))
    return Atom(rng.choice(atoms), fl)


def random_propositional(rng: random.Random, max_connectives: int, atoms=("p", "q")) -> Formula:
    """Pure propositional formula with a uniformly chosen connective count."""
    return random_formula(rng, System.NJ, rng.randint(0, max_connectives), atoms=atoms)


def random_rooted(rng: random.Random, system: System | str, root, size: int = 3) -> Formula:
    """A formula whose main operator is the classical ``root`` (one of the
    classes Or, Imp, Exists, And, Atom, Forall)."""
    system = System.parse(system)
    kw = dict(quantifiers=(Exists, Forall))
    if root is Atom:
        if rng.random() < 0.5:
            return Atom(rng.choice(ATOMS), CLS)
        return Atom(rng.choice(PREDS), CLS, (Param(rng.choice(PARAMS)),))
    if root in (Exists, Forall):
        body = random_formula(rng, system, rng.randint(0, size), bound=("x",), **kw)
        return root(CLS, "x", body)
    k = rng.randint(0, size)
    return root(CLS, random_formula(rng, system, k, **kw), random_formula(rng, system, size - k, **kw))


# -- proofs -------------------------------------------------------------------


def abstract(f: Formula, a: str, x: str) -> Formula:
    """Replace parameter ``a`` by variable ``x`` throughout ``f``."""
    marker = f"__{x}__"
    g = rename_param(f, a, marker)
    return _param_to_var(g, marker, x)


def _param_to_var(f: Formula, marker: str, x: str) -> Formula:
    def term(t):
        if isinstance(t, Param) and t.name == marker:
            return Var(x)
        if isinstance(t, App):
            return App(t.fn, tuple(term(s) for s in t.args))
        return t

    if isinstance(f, Atom):
        return Atom(f.pred, f.flavor, tuple(term(t) for t in f.args))
    if isinstance(f, Bot):
        return f
    if isinstance(f, CLabel):
        return CLabel(_param_to_var(f.body, marker, x))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(f.flavor, _param_to_var(f.left, marker, x), _param_to_var(f.right, marker, x))
    return type(f)(f.flavor, f.var, _param_to_var(f.body, marker, x))


def _relabel_all(p: Proof, fresh: Callable[[], int]) -> Proof:
    mapping: dict[int, int] = {}

    def get(lab):
        if not lab:
            return lab
        if lab not in mapping:
            mapping[lab] = fresh()
        return mapping[lab]

    def walk(q):
        if isinstance(q, Hyp):
            return Hyp(get(q.label), q.formula)
        return Infer(q.rule, q.conclusion, tuple(walk(r) for r in q.premises), tuple(get(l) for l in q.discharges), q.eigen, q.witness)

    return walk(p)


@dataclass
class ProofGen:
    """Bottom-up random proof generator for NJ, ECI, NE and NE_K."""

    system: System
    rng: random.Random
    quantifiers: tuple = (Exists,)
    classical_forall: bool = False
    formula_size: int = 2
    pool: list = field(default_factory=list)
    _label: int = 0
    _param: int = 0

    def __post_init__(self):
        self.system = System.parse(self.system)
        self.ifl = int_flavor(self.system)
        self.cf = conj_flavor(self.system)

    # plumbing
    def label(self) -> int:
        self._label += 1
        return self._label

    def new_param(self) -> str:
        self._param += 1
        return f"k{self._param}"

    def formula(self, size: Optional[int] = None, bound=()) -> Formula:
        if size is None:
            size = self.rng.randint(0, self.formula_size)
        return random_formula(
            self.rng,
            self.system,
            size,
            quantifiers=self.quantifiers,
            classical_forall=self.classical_forall,
            bound=bound,
        )

    def hyp(self, f: Formula) -> Hyp:
        return Hyp(self.label(), f)

    def use(self, p: Proof) -> Proof:
        return _relabel_all(p, self.label)

    def n(self, f: Formula) -> Formula:
        return neg(f, self.ifl)

    def pick(self, pred=lambda f: True) -> Optional[Proof]:
        options = [p for p in self.pool if pred(p.conclusion)]
        if not options:
            return None
        # favour recent (larger) proofs
        k = len(options)
        i = min(k - 1, int(k * (1 - self.rng.random() ** 2)))
        return self.use(options[i])

    def find(self, f: Formula) -> Proof:
        """A pool proof of ``f``, or a fresh hypothesis."""
        p = self.pick(lambda g: g == f)
        return p if p is not None else self.hyp(f)

    def discharge(self, p: Proof, f: Formula, taken=()) -> int:
        labs = sorted({lab for lab, g in open_hyps(p) if g == f} - set(taken))
        return self.rng.choice(labs) if labs else 0

    def discharge_pair(self, p: Proof, f: Formula, g: Formula) -> tuple[int, int]:
        first = self.discharge(p, f)
        return first, self.discharge(p, g, taken=(first,))

    def open_formula(self, p: Proof, pred) -> Optional[Formula]:
        fs = [g for _, g in open_hyps(p) if pred(g)]
        return self.rng.choice(fs) if fs else None

    # driving
    def seed(self, n: int = 4) -> None:
        for _ in range(n):
            f = self.formula()
            self.pool.append(self.hyp(f))
            if self.rng.random() < 0.5:
                self.pool.append(self.hyp(self.n(f) if self.system.flavored else neg(f)))
        self.pool.append(self.hyp(BOT) if self.rng.random() < 0.3 else self.hyp(self.formula(0)))

    def rules(self) -> list:
        rs = [
            self.and_intro, self.and_elim, self.imp_intro, self.imp_elim, self.or_intro,
            self.or_elim, self.bot_elim, self.ex_intro, self.ex_elim,
        ]
        if self.system is System.ECI:
            rs += [self.i_c, self.e_c, self.i_c, self.e_c]
        if self.system.flavored:
            rs += [self.classical_intro, self.classical_elim, self.classical_intro, self.classical_elim]
        return rs

    def step(self) -> Optional[Proof]:
        rule = self.rng.choice(self.rules())
        p = rule()
        if p is not None:
            self.pool.append(p)
        return p

    def proof(self, steps: int = 8, max_size: int = 400) -> Proof:
        """Grow the pool and return the largest proof built so far."""
        if not self.pool:
            self.seed()
        for _ in range(steps):
            self.step()
            self.pool = [p for p in self.pool if _size(p) <= max_size]
        return max(self.pool, key=_size)

    # intuitionistic rules
    def _r(self, base: str) -> str:
        if self.system.flavored:
            head, _, tail = base.partition("_")
            return f"{head}_i_{tail}"
        return base

    def and_intro(self):
        p, q = self.pick(), self.pick()
        return Infer("and_intro", And(self.cf, p.conclusion, q.conclusion), (p, q))

    def and_elim(self):
        p = self.pick(lambda f: isinstance(f, And) and f.flavor is self.cf)
        if p is None:
            return None
        j = self.rng.choice((1, 2))
        return Infer(f"and_elim_{j}", p.conclusion.left if j == 1 else p.conclusion.right, (p,))

    def imp_intro(self):
        p = self.pick()
        f = self.open_formula(p, lambda g: True)
        if f is None or self.rng.random() < 0.2:
            return Infer(self._r("imp_intro"), Imp(self.ifl, self.formula(), p.conclusion), (p,), (0,))
        return Infer(self._r("imp_intro"), Imp(self.ifl, f, p.conclusion), (p,), (self.discharge(p, f),))

    def imp_elim(self):
        p = self.pick(lambda f: isinstance(f, Imp) and f.flavor is self.ifl)
        if p is None:
            return None
        return Infer(self._r("imp_elim"), p.conclusion.right, (p, self.find(p.conclusion.left)))

    def or_intro(self):
        p = self.pick()
        j = self.rng.choice((1, 2))
        other = self.formula()
        f = Or(self.ifl, p.conclusion, other) if j == 1 else Or(self.ifl, other, p.conclusion)
        return Infer(self._r(f"or_intro_{j}"), f, (p,))

    def or_elim(self):
        major = self.pick(lambda f: isinstance(f, Or) and f.flavor is self.ifl)
        if major is None:
            return None
        a, b = major.conclusion.left, major.conclusion.right
        q = self.pick()
        left, right = self.use(q), self.use(q)
        return Infer(
            self._r("or_elim"), q.conclusion, (major, left, right), (self.discharge(left, a), self.discharge(right, b))
        )

    def bot_elim(self):
        p = self.pick(lambda f: isinstance(f, Bot))
        if p is None:
            return None
        return Infer("bot_elim", self.formula(), (p,))

    def ex_intro(self):
        if Exists not in self.quantifiers:
            return None
        p = self.pick(lambda f: bool(params(f)))
        if p is None:
            return None
        a = self.rng.choice(sorted(params(p.conclusion)))
        x = fresh_name("x", free_vars(p.conclusion) | _all_vars(p.conclusion))
        body = abstract(p.conclusion, a, x)
        return Infer(self._r("ex_intro"), Exists(self.ifl, x, body), (p,), witness=Param(a))

    def ex_elim(self):
        major = self.pick(lambda f: isinstance(f, Exists) and f.flavor is self.ifl)
        if major is None:
            return None
        ex = major.conclusion
        a = self.new_param()
        inst = substitute(ex.body, ex.var, Param(a))
        q = self.pick()
        h = self.hyp(inst)
        minor = Infer("and_elim_2", q.conclusion, (Infer("and_intro", And(self.cf, inst, q.conclusion), (h, q)),))
        return Infer(self._r("ex_elim"), q.conclusion, (major, minor), (h.label,), eigen=a)

    # label rules
    def i_c(self):
        p = self.pick(lambda f: isinstance(f, Bot))
        if p is None:
            return None
        f = self.open_formula(p, lambda g: isinstance(g, Imp) and isinstance(g.right, Bot))
        if f is None or self.rng.random() < 0.2:
            return Infer("i_c", CLabel(self.formula()), (p,), (0,))
        return Infer("i_c", CLabel(f.left), (p,), (self.discharge(p, f),))

    def e_c(self):
        p = self.pick(lambda f: isinstance(f, CLabel))
        if p is None:
            p = self.hyp(CLabel(self.formula()))
        return Infer("e_c", BOT, (p, self.find(neg(p.conclusion.body))))

    # classical rules of NE and NE_K
    def _classical_roots(self):
        roots = [Or, Imp, Exists, Atom]
        if self.system is System.NEK:
            roots.append(And)
            if self.classical_forall:
                roots.append(Forall)
        if Exists not in self.quantifiers:
            roots.remove(Exists)
        return roots

    def classical_intro(self):
        p = self.pick(lambda f: isinstance(f, Bot))
        if p is None:
            return None
        root = self.rng.choice(self._classical_roots())
        n = self.n
        neg_opens = [g.left for _, g in open_hyps(p) if isinstance(g, Imp) and isinstance(g.right, Bot) and g.flavor is self.ifl]

        def part():
            return self.rng.choice(neg_opens) if neg_opens and self.rng.random() < 0.7 else self.formula()

        if root is Atom:
            atoms = [f for f in neg_opens if isinstance(f, Atom) and f.flavor is INT]
            base = self.rng.choice(atoms) if atoms else Atom(self.rng.choice(ATOMS), INT)
            return Infer("atom_c_intro", Atom(base.pred, CLS, base.args), (p,), (self.discharge(p, n(base)),))
        if root is Or:
            a, b = part(), part()
            return Infer("or_c_intro", Or(CLS, a, b), (p,), self.discharge_pair(p, n(a), n(b)))
        if root is Imp:
            a = self.open_formula(p, lambda g: True) or self.formula()
            b = part()
            return Infer("imp_c_intro", Imp(CLS, a, b), (p,), self.discharge_pair(p, a, n(b)))
        if root is Exists:
            alls = [g for _, g in open_hyps(p) if _is_all_not(g, self.cf, self.ifl)]
            if alls and self.rng.random() < 0.7:
                g = self.rng.choice(alls)
                return Infer("ex_c_intro", Exists(CLS, g.var, g.body.left), (p,), (self.discharge(p, g),))
            body = self.formula(bound=("x",))
            return Infer("ex_c_intro", Exists(CLS, "x", body), (p,), (0,))
        if root is And:
            q = self.pick(lambda f: isinstance(f, Bot))
            a, b = part(), part()
            return Infer("and_c_intro", And(CLS, a, b), (p, q), (self.discharge(p, n(a)), self.discharge(q, n(b))))
        body = self.formula(bound=("x",))
        slot = Exists(INT, "x", n(body))
        return Infer("all_c_intro", Forall(CLS, "x", body), (p,), (self.discharge(p, slot),))

    def classical_elim(self):
        roots = self._classical_roots()
        major = self.pick(lambda f: type(f) in roots and f.flavor is CLS)
        if major is None:
            root = self.rng.choice(roots)
            if root is Forall:
                return None
            major = self.hyp(random_rooted(self.rng, self.system, root, 2) if root is not Exists else Exists(CLS, "x", self.formula(bound=("x",))))
        c = major.conclusion
        n = self.n
        if isinstance(c, Atom):
            return Infer("atom_c_elim", BOT, (major, self.find(n(Atom(c.pred, INT, c.args)))))
        if isinstance(c, Or):
            return Infer("or_c_elim", BOT, (major, self.find(n(c.left)), self.find(n(c.right))))
        if isinstance(c, Imp):
            return Infer("imp_c_elim", BOT, (major, self.find(c.left), self.find(n(c.right))))
        if isinstance(c, Exists):
            return Infer("ex_c_elim", BOT, (major, self.find(Forall(self.cf, c.var, n(c.body)))))
        if isinstance(c, And):
            j = self.rng.choice((1, 2))
            return Infer(f"and_c_elim_{j}", BOT, (major, self.find(n(c.left if j == 1 else c.right))))
        t = Param(self.rng.choice(PARAMS))
        return Infer("all_c_elim", n(n(substitute(c.body, c.var, t))), (major,), witness=t)


def _is_all_not(g: Formula, cf, ifl) -> bool:
    return isinstance(g, Forall) and g.flavor is cf and isinstance(g.body, Imp) and isinstance(g.body.right, Bot) and g.body.flavor is ifl


def _all_vars(f: Formula) -> set:
    out = set()
    for g in _subs(f):
        if isinstance(g, (Forall, Exists)):
            out.add(g.var)
    return out


def _subs(f: Formula):
    yield f
    if isinstance(f, (And, Or, Imp)):
        yield from _subs(f.left)
        yield from _subs(f.right)
    elif isinstance(f, (Forall, Exists, CLabel)):
        yield from _subs(f.body)


def _size(p: Proof) -> int:
    return sum(1 for _ in nodes(p))


def random_proof(rng: random.Random, system: System | str, steps: int = 8, **kw) -> Proof:
    gen = ProofGen(System.parse(system), rng, **kw)
    gen.seed()
    return gen.proof(steps)


def translatable_proof(rng: random.Random, system: System | str, steps: int = 14, tries: int = 100) -> Proof:
    """A random proof whose judgment mentions no universal quantifier (the
    domain of the ECI / NE_K proof translations)."""
    for _ in range(tries):
        p = random_proof(rng, system, steps)
        report = check(system, p)
        if report.ok and not any(
            isinstance(g, Forall) for f in report.judgment.context + (report.judgment.conclusion,) for g in _subs(f)
        ):
            return p
    raise RuntimeError("no universal-free proof found")


# -- classical-universal detours ----------------------------------------------


def detour_proof(rng: random.Random, uses: Optional[int] = None) -> Proof:
    """``all_c_elim`` over ``all_c_intro`` whose refutation uses the
    discharged ``existsi x ~A`` hypothesis ``uses`` times (0 to 3 at random)."""
    if uses is None:
        uses = rng.randint(0, 3)
    body = random_formula(rng, System.NEK, rng.randint(0, 2), quantifiers=(Exists,), bound=("x",))
    ex = Exists(INT, "x", neg(body, INT))
    lab = 1
    if uses == 0:
        other = random_formula(rng, System.NEK, rng.randint(0, 2))
        pi = Infer("imp_i_elim", BOT, (Hyp(2, neg(other, INT)), Hyp(3, other)))
    else:
        acc: Proof = Hyp(lab, ex)
        for _ in range(uses - 1):
            acc = Infer("and_intro", And(INT, acc.conclusion, ex), (acc, Hyp(lab, ex)))
        pi = Infer("imp_i_elim", BOT, (Hyp(2, neg(acc.conclusion, INT)), acc))
    t = rng.choice([Param("a"), Param("b"), App("f", (Param("a"),))])
    fc = Forall(CLS, "x", body)
    intro = Infer("all_c_intro", fc, (pi,), (lab if uses else 0,))
    return Infer("all_c_elim", neg(neg(substitute(body, "x", t), INT), INT), (intro,), witness=t)


# -- mutations ------------------------------------------------------------------


_FLIP = {INT: CLS, CLS: INT}


def _flip_flavor(f: Formula, rng: random.Random) -> Optional[Formula]:
    """Change one flavor in ``f`` (or toggle one label when there are none)."""
    spots = [g for g in _subs(f) if getattr(g, "flavor", None) in _FLIP]
    if spots:
        target = rng.choice(spots)
        return _replace(f, target, _with_flavor(target, _FLIP[target.flavor]))
    subs = list(_subs(f))
    target = rng.choice(subs)
    return _replace(f, target, target.body if isinstance(target, CLabel) else CLabel(target))


def _with_flavor(g: Formula, fl) -> Formula:
    if isinstance(g, Atom):
        return Atom(g.pred, fl, g.args)
    if isinstance(g, (Forall, Exists)):
        return type(g)(fl, g.var, g.body)
    return type(g)(fl, g.left, g.right)


def _replace(f: Formula, target: Formula, new: Formula) -> Formula:
    if f is target:
        return new
    if isinstance(f, (And, Or, Imp)):
        return type(f)(f.flavor, _replace(f.left, target, new), _replace(f.right, target, new))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.flavor, f.var, _replace(f.body, target, new))
    if isinstance(f, CLabel):
        return CLabel(_replace(f.body, target, new))
    return f


def _rewrite(p: Proof, path: tuple, fn) -> Proof:
    if not path:
        return fn(p)
    i = path[0]
    premises = list(p.premises)
    premises[i] = _rewrite(premises[i], path[1:], fn)
    return Infer(p.rule, p.conclusion, tuple(premises), p.discharges, p.eigen, p.witness)


def mutate(p: Proof, rng: random.Random, kind: str, rule_names: list[str]) -> Optional[Proof]:
    """One single-node mutation of ``kind`` (``rule``, ``flavor`` or
    ``label``, the last changing a discharge annotation); None when ``p`` has
    no node the mutation applies to."""
    all_nodes = list(nodes(p))
    if kind == "rule":
        spots = [(path, q) for path, q in all_nodes if isinstance(q, Infer)]
        path, q = rng.choice(spots)
        new = rng.choice([r for r in rule_names if r != q.rule])
        return _rewrite(p, path, lambda n: Infer(new, n.conclusion, n.premises, n.discharges, n.eigen, n.witness))
    if kind == "flavor":
        path, q = rng.choice(all_nodes)
        if isinstance(q, Hyp):
            return _rewrite(p, path, lambda n: Hyp(n.label, _flip_flavor(n.formula, rng)))
        return _rewrite(
            p, path, lambda n: Infer(n.rule, _flip_flavor(n.conclusion, rng), n.premises, n.discharges, n.eigen, n.witness)
        )
    if kind == "label":
        # discharge annotations only: renumbering an open hypothesis is an alpha-variant
        spots = [(path, q) for path, q in all_nodes if isinstance(q, Infer) and any(q.discharges)]
        if not spots:
            return None
        path, q = rng.choice(spots)
        used = {q2.label for _, q2 in all_nodes if isinstance(q2, Hyp)}
        slots = [i for i, lab in enumerate(q.discharges) if lab]
        i = rng.choice(slots)
        choices = sorted((used | {0, max(used) + 1}) - {q.discharges[i]})
        new = list(q.discharges)
        new[i] = rng.choice(choices)
        return _rewrite(p, path, lambda n: Infer(n.rule, n.conclusion, n.premises, tuple(new), n.eigen, n.witness))
    raise ValueError(f"unknown mutation kind {kind!r}")
