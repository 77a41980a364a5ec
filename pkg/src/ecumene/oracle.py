"""Decision procedures for propositional fragments.

Classical validity is decided by truth tables packed into integer bitsets;
intuitionistic provability by Dyckhoff's contraction-free calculus G4ip,
which terminates without loop checking.  ECI and universal-free NE_K
sequents are decided by translating into intuitionistic logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional, Sequence

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
    Forall,
    Formula,
    Imp,
    Or,
    System,
    print_formula,
    subformulas,
    well_formed,
)
from ecumene.translate import t_eci, untranslate_nek

MAX_ATOMS = 16
MAX_ENUM_CONNECTIVES = 8


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    context: tuple
    goal: Formula

    @classmethod
    def of(cls, context: Sequence[Formula], goal: Formula) -> "Sequent":
        return cls(tuple(dict.fromkeys(context)), goal)


@dataclass(frozen=True)
class Verdict:
    provable: bool
    witness: object = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.provable


def _propositional(f: Formula) -> None:
    if isinstance(f, (Forall, Exists)):
        raise OracleError("first-order input: the oracle decides propositional sequents only")
    if isinstance(f, CLabel):
        raise OracleError("classical labels must be translated before deciding")
    if isinstance(f, (And, Or, Imp)):
        _propositional(f.left)
        _propositional(f.right)


def _atom_name(f: Atom) -> str:
    return print_formula(Atom(f.pred, INT, f.args), System.NJ)


def _atoms(formulas) -> list[str]:
    seen: dict[str, None] = {}

    def walk(f):
        if isinstance(f, Atom):
            seen.setdefault(_atom_name(f), None)
        elif isinstance(f, (And, Or, Imp)):
            walk(f.left)
            walk(f.right)

    for f in formulas:
        walk(f)
    return list(seen)


# -- classical truth tables -------------------------------------------------

_MASKS: dict[int, tuple[int, list[int]]] = {}


def _masks(n: int) -> tuple[int, list[int]]:
    """Bitset of all rows and, per atom, the rows in which it is true."""
    if n not in _MASKS:
        rows = 1 << n
        full = (1 << rows) - 1
        masks = []
        for i in range(n):
            period = 1 << (i + 1)
            block = ((1 << (1 << i)) - 1) << (1 << i)
            m, width = block, period
            while width < rows:
                m |= m << width
                width *= 2
            masks.append(m & full)
        _MASKS[n] = (full, masks)
    return _MASKS[n]


def _truth(f: Formula, env: dict[str, int], full: int) -> int:
    if isinstance(f, Atom):
        return env[_atom_name(f)]
    if isinstance(f, Bot):
        return 0
    a = _truth(f.left, env, full)
    b = _truth(f.right, env, full)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    return (full ^ a) | b


def cpl_valid(sequent: Sequent) -> Verdict:
    """Classical validity: every row satisfying the context satisfies the goal.

    Connective flavors are ignored (all read classically).  A counter-model is
    returned as a dict from atom to truth value.
    """
    formulas = list(sequent.context) + [sequent.goal]
    for f in formulas:
        _propositional(f)
    names = _atoms(formulas)
    if len(names) > MAX_ATOMS:
        raise OracleError(f"too many atoms ({len(names)} > {MAX_ATOMS})")
    full, masks = _masks(len(names))
    env = dict(zip(names, masks))
    ctx = full
    for f in sequent.context:
        ctx &= _truth(f, env, full)
    bad = ctx & ~_truth(sequent.goal, env, full) & full
    if not bad:
        return Verdict(True)
    row = (bad & -bad).bit_length() - 1
    return Verdict(False, {name: bool((row >> i) & 1) for i, name in enumerate(names)})


# -- intuitionistic search (G4ip) -------------------------------------------

_F = ("F",)


def _encode(f: Formula):
    if isinstance(f, Atom):
        return ("a", _atom_name(f))
    if isinstance(f, Bot):
        return _F
    tag = "&" if isinstance(f, And) else "|" if isinstance(f, Or) else ">"
    return (tag, _encode(f.left), _encode(f.right))


class G4ip:
    """Memoising prover for Dyckhoff's G4ip.  Invertible rules are applied
    eagerly; right disjunction and the ``(C->D)->B`` left rule are tried in
    turn.  Every rule shrinks the multiset-ordered weight of the sequent, so
    the search terminates."""

    def __init__(self, max_cache: int = 1 << 20):
        self.cache: dict = {}
        self.max_cache = max_cache
        self.steps = 0

    def provable(self, context: Sequence[Formula], goal: Formula) -> bool:
        if len(self.cache) > self.max_cache:
            self.cache.clear()
        return self._prove(frozenset(_encode(f) for f in context), _encode(goal))

    def _prove(self, ctx: frozenset, goal) -> bool:
        key = (ctx, goal)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        result = self._search(ctx, goal)
        self.cache[key] = result
        return result

    def _search(self, ctx: frozenset, goal) -> bool:
        if _F in ctx or goal in ctx:
            return True
        for f in ctx:
            tag = f[0]
            if tag == "&":
                return self._prove((ctx - {f}) | {f[1], f[2]}, goal)
            if tag == "|":
                rest = ctx - {f}
                return self._prove(rest | {f[1]}, goal) and self._prove(rest | {f[2]}, goal)
            if tag == ">":
                ante, cons = f[1], f[2]
                if ante == _F:
                    return self._prove(ctx - {f}, goal)
                if ante[0] == "a" and ante in ctx:
                    return self._prove((ctx - {f}) | {cons}, goal)
                if ante[0] == "&":
                    return self._prove((ctx - {f}) | {(">", ante[1], (">", ante[2], cons))}, goal)
                if ante[0] == "|":
                    return self._prove((ctx - {f}) | {(">", ante[1], cons), (">", ante[2], cons)}, goal)
        if goal[0] == "&":
            return self._prove(ctx, goal[1]) and self._prove(ctx, goal[2])
        if goal[0] == ">":
            return self._prove(ctx | {goal[1]}, goal[2])
        if goal[0] == "|" and (self._prove(ctx, goal[1]) or self._prove(ctx, goal[2])):
            return True
        for f in ctx:
            if f[0] == ">" and f[1][0] == ">":
                c, d, b = f[1][1], f[1][2], f[2]
                rest = ctx - {f}
                if self._prove(rest | {(">", d, b)}, (">", c, d)) and self._prove(rest | {b}, goal):
                    return True
        return False


_PROVER = G4ip()


def ipl_provable(sequent: Sequent, prover: Optional[G4ip] = None) -> Verdict:
    """Intuitionistic provability; connective flavors are ignored."""
    formulas = list(sequent.context) + [sequent.goal]
    for f in formulas:
        _propositional(f)
    prover = prover or _PROVER
    before = prover.steps
    ok = prover.provable(sequent.context, sequent.goal)
    return Verdict(ok, {"sequents explored": prover.steps - before})


REDUCTION_NOTE = "(via tECI reduction)"


def eci_provable(sequent: Sequent) -> Verdict:
    """Decide a propositional ECI sequent through its tECI image."""
    for f in list(sequent.context) + [sequent.goal]:
        bad = well_formed(System.ECI, f)
        if bad:
            raise OracleError(f"not an ECI formula: {bad[0]}")
        if any(isinstance(g, (Forall, Exists)) for g in subformulas(f)):
            raise OracleError("first-order input: the oracle decides propositional sequents only")
    image = Sequent.of([t_eci(f) for f in sequent.context], t_eci(sequent.goal))
    v = ipl_provable(image)
    return Verdict(v.provable, v.witness, REDUCTION_NOTE)


def nek_provable(sequent: Sequent) -> Verdict:
    """Decide a propositional NE_K sequent without universal quantifiers."""
    for f in list(sequent.context) + [sequent.goal]:
        bad = well_formed(System.NEK, f)
        if bad:
            raise OracleError(f"not an NE_K formula: {bad[0]}")
        if any(isinstance(g, Forall) for g in subformulas(f)):
            raise OracleError("universal quantifiers are outside the decidable fragment")
    image = Sequent.of([untranslate_nek(f) for f in sequent.context], untranslate_nek(sequent.goal))
    return eci_provable(image)


# -- enumeration ------------------------------------------------------------


def _constructors(dialect: System, atoms: Sequence[str]):
    if dialect.flavored:
        leaves = [Atom(a, fl) for a in atoms for fl in (INT, CLS)]
        conj = [NEUTRAL] if dialect is System.NE else [INT, CLS]
        binary = [(And, fl) for fl in conj] + [(c, fl) for c in (Or, Imp) for fl in (INT, CLS)]
    else:
        leaves = [Atom(a) for a in atoms]
        binary = [(And, NEUTRAL), (Or, NEUTRAL), (Imp, NEUTRAL)]
    leaves.append(BOT)
    unary = dialect is System.ECI
    return leaves, binary, unary


def enumerate_formulas(atoms: Sequence[str], max_connectives: int, dialect: System | str) -> Iterator[Formula]:
    """Every quantifier-free formula over ``atoms`` and bot with at most
    ``max_connectives`` internal nodes, by increasing size, without repeats.

    In ECI the classical label counts as a (unary) connective.
    """
    dialect = System.parse(dialect)
    if not atoms:
        raise OracleError("need at least one atom")
    if max_connectives > MAX_ENUM_CONNECTIVES or max_connectives < 0:
        raise OracleError(f"max_connectives must be in 0..{MAX_ENUM_CONNECTIVES}")
    leaves, binary, unary = _constructors(dialect, atoms)
    cache: dict[int, list] = {}

    def exact(n: int) -> Iterator[Formula]:
        if n in cache:
            yield from cache[n]
            return
        out = [] if n <= 4 else None
        for f in _exact(n):
            if out is not None:
                out.append(f)
            yield f
        if out is not None:
            cache[n] = out

    def _exact(n: int) -> Iterator[Formula]:
        if n == 0:
            yield from leaves
            return
        if unary:
            for f in exact(n - 1):
                yield CLabel(f)
        for cls, fl in binary:
            for i in range(n):
                for left in exact(i):
                    for right in exact(n - 1 - i):
                        yield cls(fl, left, right)

    for n in range(max_connectives + 1):
        yield from exact(n)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def count_formulas(n_leaves: int, n_binary: int, connectives: int) -> int:
    """Closed-form number of binary formula trees with exactly ``connectives``
    internal nodes."""
    return catalan(connectives) * n_binary**connectives * n_leaves ** (connectives + 1)


def sweep_formulas(max_connectives: int, atoms=("p", "q")) -> Iterator[Formula]:
    """Pure propositional formulas used by the Glivenko sweeps."""
    return enumerate_formulas(list(atoms), max_connectives, System.NJ)


__all__ = [
    "G4ip",
    "OracleError",
    "REDUCTION_NOTE",
    "Sequent",
    "Verdict",
    "catalan",
    "count_formulas",
    "cpl_valid",
    "eci_provable",
    "enumerate_formulas",
    "ipl_provable",
    "nek_provable",
    "sweep_formulas",
]
