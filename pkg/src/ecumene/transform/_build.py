"""Proof surgery shared by the constructions: label supplies, grafting and
renaming.  Nothing here is trusted; results go through the kernel."""

from __future__ import annotations

from ecumene.kernel import Hyp, Infer, Proof, judgment_of, nodes, open_hyps
from ecumene.syntax import (
    And,
    Formula,
    Param,
    System,
    fresh_name,
    conj_flavor,
    params,
    rename_param,
    rename_param_term,
    term_params,
    well_formed,
)


class TransformError(ValueError):
    pass


class NotClassicalError(TransformError):
    """The argument's main operator is not a classical one."""


class RootForallError(TransformError):
    """The construction does not exist for a classical universal root."""


class JudgmentMismatch(TransformError):
    """A proof argument does not prove the required kind of judgment."""


class NoDetour(TransformError):
    """The proof does not have the shape the reduction expects."""


def rule(system: System, base: str) -> str:
    """Name of an intuitionistic rule in ``system``: ``imp_intro`` becomes
    ``imp_i_intro`` in the flavored dialects."""
    if system.flavored:
        head, _, tail = base.partition("_")
        if head in ("imp", "or", "ex"):
            return f"{head}_i_{tail}"
    return base


def hyp(label: int, f: Formula) -> Hyp:
    return Hyp(label, f)


def infer(name: str, conclusion: Formula, *premises: Proof, d=(), eigen=None, wit=None) -> Infer:
    return Infer(name, conclusion, tuple(premises), tuple(d), eigen, wit)


def require_formula(system: System, f: Formula) -> None:
    bad = well_formed(system, f)
    if bad:
        raise TransformError(f"not a {system.name} formula: {bad[0]}")


def require_proof(system: System, p: Proof):
    try:
        return judgment_of(system, p)
    except ValueError as e:
        raise JudgmentMismatch(f"argument proof does not check in {system.name}: {e}") from None


def weaken(system: System, main: Proof, extra: Proof) -> Proof:
    """``main`` again, but with the open assumptions of ``extra`` kept open
    (a conjunction introduced and projected straight away)."""
    a, b = main.conclusion, extra.conclusion
    return infer("and_elim_1", a, infer("and_intro", And(conj_flavor(system), a, b), main, extra))


# -- labels -----------------------------------------------------------------


def labels_in(p: Proof) -> set[int]:
    out: set[int] = set()
    for _, q in nodes(p):
        if isinstance(q, Hyp):
            out.add(q.label)
        else:
            out.update(lab for lab in q.discharges if isinstance(lab, int))
    return out


class Labels:
    """Supply of labels unused by any of the given proofs."""

    def __init__(self, *proofs: Proof, start: int = 1):
        used = set()
        for p in proofs:
            used |= labels_in(p)
        self.next = max(used | {start - 1}) + 1

    def __call__(self) -> int:
        n = self.next
        self.next += 1
        return n

    def reserve(self, p: Proof) -> None:
        self.next = max(self.next, max(labels_in(p) | {0}) + 1)


def relabel(p: Proof, mapping: dict) -> Proof:
    if isinstance(p, Hyp):
        return Hyp(mapping.get(p.label, p.label), p.formula)
    return Infer(
        p.rule,
        p.conclusion,
        tuple(relabel(q, mapping) for q in p.premises),
        tuple(mapping.get(lab, lab) if lab else lab for lab in p.discharges),
        p.eigen,
        p.witness,
    )


def freshen(p: Proof, supply: Labels) -> Proof:
    """Copy of ``p`` whose internally discharged labels are all new."""
    mapping = {}
    for _, q in nodes(p):
        if isinstance(q, Infer):
            for lab in q.discharges:
                if lab and lab not in mapping:
                    mapping[lab] = supply()
    return relabel(p, mapping)


def graft(p: Proof, label: int, replacement: Proof, supply: Labels) -> Proof:
    """Replace every leaf labelled ``label`` by a fresh copy of ``replacement``."""
    if not label:
        return p
    if isinstance(p, Hyp):
        return freshen(replacement, supply) if p.label == label else p
    return Infer(
        p.rule,
        p.conclusion,
        tuple(graft(q, label, replacement, supply) for q in p.premises),
        p.discharges,
        p.eigen,
        p.witness,
    )


def open_labels(p: Proof, f: Formula) -> list[int]:
    """Labels of the open hypotheses of ``p`` whose formula is ``f``."""
    return sorted({lab for lab, g in open_hyps(p) if g == f})


# -- parameters -------------------------------------------------------------


def params_in(p: Proof) -> set[str]:
    out: set[str] = set()
    for _, q in nodes(p):
        if isinstance(q, Hyp):
            out |= params(q.formula)
        else:
            out |= params(q.conclusion)
            if q.eigen is not None:
                out.add(q.eigen)
            if q.witness is not None:
                out |= term_params(q.witness)
    return out


class Params:
    """Supply of parameter names avoiding a growing set."""

    def __init__(self, avoid=()):
        self.avoid = set(avoid)

    def __call__(self, base: str = "a") -> str:
        name = base if base not in self.avoid else fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name

    def param(self, base: str = "a") -> Param:
        return Param(self(base))


def rename_param_proof(p: Proof, a: str, b: str) -> Proof:
    if isinstance(p, Hyp):
        return Hyp(p.label, rename_param(p.formula, a, b))
    return Infer(
        p.rule,
        rename_param(p.conclusion, a, b),
        tuple(rename_param_proof(q, a, b) for q in p.premises),
        p.discharges,
        b if p.eigen == a else p.eigen,
        None if p.witness is None else rename_param_term(p.witness, a, b),
    )
