"""Constructions in ECI around the classical label."""

from __future__ import annotations

from ecumene.kernel import Proof
from ecumene.syntax import BOT, CLabel, Forall, Formula, Imp, System, Term, neg, substitute
from ecumene.transform._build import (
    JudgmentMismatch,
    Labels,
    TransformError,
    graft,
    hyp,
    infer,
    open_labels,
    relabel,
    labels_in,
    require_formula,
    require_proof,
    weaken,
)

ECI = System.ECI


def eci_label_to_dn(a: Formula) -> Proof:
    """``{a^c} |- ~~a``."""
    require_formula(ECI, a)
    body = infer("e_c", BOT, hyp(2, CLabel(a)), hyp(1, neg(a)))
    return infer("imp_intro", neg(neg(a)), body, d=(1,))


def eci_dn_to_label(a: Formula) -> Proof:
    """``{~~a} |- a^c``."""
    require_formula(ECI, a)
    body = infer("imp_elim", BOT, hyp(2, neg(neg(a))), hyp(1, neg(a)))
    return infer("i_c", CLabel(a), body, d=(1,))


def eci_glivenko2(a: Formula) -> Proof:
    """``{(~a)^c} |- ~a``: the label-to-double-negation tree for ``~a``
    followed by triple-negation elimination."""
    require_formula(ECI, a)
    triple = eci_label_to_dn(neg(a))
    dn = infer("imp_intro", neg(neg(a)), infer("imp_elim", BOT, hyp(4, neg(a)), hyp(3, a)), d=(4,))
    return infer("imp_intro", neg(a), infer("imp_elim", BOT, triple, dn), d=(3,))


def eci_neg_label_comm(a: Formula, direction: str = "fwd") -> Proof:
    """``{(~a)^c} |- ~(a^c)`` (``fwd``) or ``{~(a^c)} |- (~a)^c`` (``bwd``)."""
    require_formula(ECI, a)
    ac = CLabel(a)
    if direction == "fwd":
        dn = infer("imp_intro", neg(neg(a)), infer("e_c", BOT, hyp(1, ac), hyp(2, neg(a))), d=(2,))
        body = infer("e_c", BOT, hyp(3, CLabel(neg(a))), dn)
        return infer("imp_intro", neg(ac), body, d=(1,))
    if direction == "bwd":
        label = infer("i_c", ac, infer("imp_elim", BOT, hyp(1, neg(neg(a))), hyp(2, neg(a))), d=(2,))
        body = infer("imp_elim", BOT, hyp(3, neg(ac)), label)
        return infer("i_c", CLabel(neg(a)), body, d=(1,))
    raise TransformError(f"unknown direction {direction!r}; expected fwd or bwd")


def eci_forall_label_instantiate(p: Proof, t: Term) -> Proof:
    """From ``Gamma |- (forall x A)^c`` build ``Gamma |- ~~A(t)``."""
    j = require_proof(ECI, p)
    c = j.conclusion
    if not (isinstance(c, CLabel) and isinstance(c.body, Forall)):
        raise JudgmentMismatch("the proof must conclude a labelled universal (forall x. A)^c")
    fa = c.body
    inst = substitute(fa.body, fa.var, t)
    supply = Labels(p)
    l_all, l_not = supply(), supply()
    use = infer("imp_elim", BOT, hyp(l_not, neg(inst)), infer("all_elim", inst, hyp(l_all, fa), wit=t))
    not_fa = infer("imp_intro", neg(fa), use, d=(l_all,))
    return infer("imp_intro", neg(neg(inst)), infer("e_c", BOT, p, not_fa), d=(l_not,))


def mp_classicalize(refutation: Proof, imp: Proof) -> Proof:
    """From a refutation of ``~A`` (plus Gamma1) and ``Gamma2 |- A -> B``,
    prove ``B^c`` by replacing each ``~A`` hypothesis with a derivation of
    ``~A`` from ``A -> B`` and a discharged ``~B``."""
    jr = require_proof(ECI, refutation)
    ji = require_proof(ECI, imp)
    if jr.conclusion != BOT:
        raise JudgmentMismatch("the refutation must conclude bot")
    if not isinstance(ji.conclusion, Imp):
        raise JudgmentMismatch("the second proof must conclude an implication")
    a, b = ji.conclusion.left, ji.conclusion.right
    supply = Labels(refutation)
    imp = relabel(imp, {lab: supply() for lab in sorted(labels_in(imp))})
    supply.reserve(imp)
    l_nb, l_a = supply(), supply()
    mp = infer("imp_elim", b, imp, hyp(l_a, a))
    not_a = infer("imp_intro", neg(a), infer("imp_elim", BOT, hyp(l_nb, neg(b)), mp), d=(l_a,))
    uses = open_labels(refutation, neg(a))
    body = refutation
    for lab in uses:
        body = graft(body, lab, not_a, supply)
    if not uses:
        # the implication would vanish; keep its assumptions open
        body = weaken(ECI, body, imp)
    return infer("i_c", CLabel(b), body, d=(l_nb,))
