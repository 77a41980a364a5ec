"""Constructions inside NE and NE_K: the internal Glivenko theorems, the
embedding of a starred formula into its classical original, and the
classical universal quantifier."""

from __future__ import annotations

from ecumene.kernel import Hyp, Infer, Proof, size
from ecumene.syntax import (
    BOT,
    CLS,
    INT,
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Imp,
    Or,
    System,
    Term,
    conj_flavor,
    neg,
    params,
    substitute,
    term_params,
)
from ecumene.transform._build import (
    JudgmentMismatch,
    Labels,
    NoDetour,
    NotClassicalError,
    Params,
    RootForallError,
    TransformError,
    graft,
    hyp,
    infer,
    open_labels,
    params_in,
    rename_param_proof,
    require_formula,
    require_proof,
)
from ecumene.translate import is_classical_root, star


def _flavored(system: System | str) -> System:
    system = System.parse(system)
    if not system.flavored:
        raise TransformError(f"this construction lives in NE or NE_K, not {system.name}")
    return system


def _classical(system: System, c: Formula) -> None:
    require_formula(system, c)
    if not is_classical_root(c):
        raise NotClassicalError("main operator is not classical")


def _instance(c: Formula, avoid=()) -> tuple[str, Formula, Term]:
    """Bound variable, body and a fresh parameter instance of a quantifier."""
    a = Params(params(c) | set(avoid)).param()
    return a.name, substitute(c.body, c.var, a), a


def glivenko1_internal(system: System | str, c: Formula) -> Proof:
    """``{c} |- ~~c*`` for a formula with a classical root other than forall."""
    system = _flavored(system)
    _classical(system, c)
    n = lambda f: neg(f, INT)  # noqa: E731
    cs = star(c)
    ns = n(cs)
    if isinstance(c, Forall):
        raise RootForallError("a classical universal does not yield the double negation of its intuitionistic twin")
    if isinstance(c, Or):
        a, b = c.left, c.right
        not_a = infer(
            "imp_i_intro", n(a), infer("imp_i_elim", BOT, hyp(3, ns), infer("or_i_intro_1", cs, hyp(1, a))), d=(1,)
        )
        not_b = infer(
            "imp_i_intro", n(b), infer("imp_i_elim", BOT, hyp(3, ns), infer("or_i_intro_2", cs, hyp(2, b))), d=(2,)
        )
        body = infer("or_c_elim", BOT, hyp(4, c), not_a, not_b)
    elif isinstance(c, Imp):
        a, b = c.left, c.right
        # ~B from a proof of A ->i B that ignores A
        a_to_b = infer("imp_i_intro", cs, hyp(1, b), d=(0,))
        not_b = infer("imp_i_intro", n(b), infer("imp_i_elim", BOT, hyp(3, ns), a_to_b), d=(1,))
        # A ->i B from A, using c and ~B to refute
        refute = infer("imp_c_elim", BOT, hyp(4, c), hyp(2, a), not_b)
        a_to_b2 = infer("imp_i_intro", cs, infer("bot_elim", b, refute), d=(2,))
        body = infer("imp_i_elim", BOT, hyp(3, ns), a_to_b2)
    elif isinstance(c, Exists):
        eig, inst, a = _instance(c)
        witness = infer("ex_i_intro", cs, hyp(1, inst), wit=a)
        not_inst = infer("imp_i_intro", n(inst), infer("imp_i_elim", BOT, hyp(2, ns), witness), d=(1,))
        all_not = infer("all_intro", Forall(conj_flavor(system), c.var, n(c.body)), not_inst, eigen=eig)
        body = infer("ex_c_elim", BOT, hyp(3, c), all_not)
        return infer("imp_i_intro", n(ns), body, d=(2,))
    elif isinstance(c, Atom):
        body = infer("atom_c_elim", BOT, hyp(2, c), hyp(1, ns))
        return infer("imp_i_intro", n(ns), body, d=(1,))
    else:  # classical conjunction
        b, cc = c.left, c.right
        conj = infer("and_intro", cs, hyp(1, b), hyp(2, cc))
        not_c = infer("imp_i_intro", n(cc), infer("imp_i_elim", BOT, hyp(3, ns), conj), d=(2,))
        not_b = infer("imp_i_intro", n(b), infer("and_c_elim_2", BOT, hyp(4, c), not_c), d=(1,))
        body = infer("and_c_elim_1", BOT, hyp(4, c), not_b)
    return infer("imp_i_intro", n(ns), body, d=(3,))


def star_embed(system: System | str, c: Formula) -> Proof:
    """``{c*} |- c`` for any classical root (the universal included in NE_K)."""
    system = _flavored(system)
    _classical(system, c)
    n = lambda f: neg(f, INT)  # noqa: E731
    cs = star(c)
    if isinstance(c, Or):
        a, b = c.left, c.right
        left = infer("imp_i_elim", BOT, hyp(3, n(a)), hyp(1, a))
        right = infer("imp_i_elim", BOT, hyp(4, n(b)), hyp(2, b))
        body = infer("or_i_elim", BOT, hyp(5, cs), left, right, d=(1, 2))
        return infer("or_c_intro", c, body, d=(3, 4))
    if isinstance(c, Imp):
        a, b = c.left, c.right
        mp = infer("imp_i_elim", b, hyp(3, cs), hyp(1, a))
        return infer("imp_c_intro", c, infer("imp_i_elim", BOT, hyp(2, n(b)), mp), d=(1, 2))
    if isinstance(c, Exists):
        eig, inst, a = _instance(c)
        all_not = Forall(conj_flavor(system), c.var, n(c.body))
        not_inst = infer("all_elim", n(inst), hyp(1, all_not), wit=a)
        minor = infer("imp_i_elim", BOT, not_inst, hyp(2, inst))
        body = infer("ex_i_elim", BOT, hyp(3, cs), minor, d=(2,), eigen=eig)
        return infer("ex_c_intro", c, body, d=(1,))
    if isinstance(c, Atom):
        return infer("atom_c_intro", c, infer("imp_i_elim", BOT, hyp(1, n(cs)), hyp(2, cs)), d=(1,))
    if isinstance(c, And):
        b, cc = c.left, c.right
        left = infer("imp_i_elim", BOT, hyp(1, n(b)), infer("and_elim_1", b, hyp(3, cs)))
        right = infer("imp_i_elim", BOT, hyp(2, n(cc)), infer("and_elim_2", cc, hyp(3, cs)))
        return infer("and_c_intro", c, left, right, d=(1, 2))
    # classical universal
    eig, inst, a = _instance(c)
    here = infer("all_elim", inst, hyp(3, cs), wit=a)
    minor = infer("imp_i_elim", BOT, hyp(2, n(inst)), here)
    body = infer("ex_i_elim", BOT, hyp(1, Exists(INT, c.var, n(c.body))), minor, d=(2,), eigen=eig)
    return infer("all_c_intro", c, body, d=(1,))


def glivenko2_internal(system: System | str, c: Formula) -> Proof:
    """``{~c} |- ~c*``: contraposition of :func:`star_embed`, except for a
    classical universal, which has its own tree."""
    system = _flavored(system)
    _classical(system, c)
    if isinstance(c, Forall):
        return neg_forallc_elim(c.body, c.var, "neg_foralli")
    embed = star_embed(system, c)
    (lab,) = open_labels(embed, star(c))
    m = Labels(embed)()
    body = infer("imp_i_elim", BOT, hyp(m, neg(c, INT)), embed)
    return infer("imp_i_intro", neg(star(c), INT), body, d=(lab,))


# -- the classical universal ------------------------------------------------


def _universal_parts(body: Formula, x: str):
    f = Forall(CLS, x, body)
    require_formula(System.NEK, f)
    eig, inst, a = _instance(f)
    return f, eig, inst, a


def neg_forallc_elim(a_body: Formula, x: str, target: str) -> Proof:
    """``{~forallc x A} |- existsc x ~A`` (target ``existsc``) or
    ``{~forallc x A} |- ~foralli x A`` (target ``neg_foralli``) in NE_K."""
    n = lambda f: neg(f, INT)  # noqa: E731
    fc, eig, inst, a = _universal_parts(a_body, x)
    ex_not = Exists(INT, x, n(a_body))
    if target == "existsc":
        dn = infer("all_elim", n(n(inst)), hyp(3, Forall(INT, x, n(n(a_body)))), wit=a)
        minor = infer("imp_i_elim", BOT, dn, hyp(1, n(inst)))
    elif target == "neg_foralli":
        here = infer("all_elim", inst, hyp(3, Forall(INT, x, a_body)), wit=a)
        minor = infer("imp_i_elim", BOT, hyp(1, n(inst)), here)
    else:
        raise TransformError(f"unknown target {target!r}; expected existsc or neg_foralli")
    body = infer("ex_i_elim", BOT, hyp(2, ex_not), minor, d=(1,), eigen=eig)
    refute = infer("imp_i_elim", BOT, hyp(4, n(fc)), infer("all_c_intro", fc, body, d=(2,)))
    if target == "existsc":
        return infer("ex_c_intro", Exists(CLS, x, n(a_body)), refute, d=(3,))
    return infer("imp_i_intro", n(Forall(INT, x, a_body)), refute, d=(3,))


def nek_forallc_from_refutation(a_body: Formula, x: str, refutation: Proof) -> Proof:
    """From a refutation of ``~foralli x A`` (plus Gamma), prove ``forallc x A``."""
    n = lambda f: neg(f, INT)  # noqa: E731
    j = require_proof(System.NEK, refutation)
    if j.conclusion != BOT:
        raise JudgmentMismatch("the refutation must conclude bot")
    fc, _, _, _ = _universal_parts(a_body, x)
    fi = Forall(INT, x, a_body)
    eig = Params(params(fc) | params_in(refutation)).param()
    inst = substitute(a_body, x, eig)
    supply = Labels(refutation)
    l_ex, l_all, l_inst = supply(), supply(), supply()
    minor = infer("imp_i_elim", BOT, hyp(l_inst, n(inst)), infer("all_elim", inst, hyp(l_all, fi), wit=eig))
    bridge = infer(
        "imp_i_intro",
        n(fi),
        infer("ex_i_elim", BOT, hyp(l_ex, Exists(INT, x, n(a_body))), minor, d=(l_inst,), eigen=eig.name),
        d=(l_all,),
    )
    body = refutation
    for lab in open_labels(refutation, n(fi)):
        body = graft(body, lab, bridge, supply)
    return infer("all_c_intro", fc, body, d=(l_ex,))


def forallc_detour_reduce(p: Proof) -> Proof:
    """Remove an ``all_c_intro`` immediately followed by ``all_c_elim``.

    The hypotheses ``existsi x ~A`` of the introduction are replaced by
    ``existsi``-introductions from a new hypothesis ``~A(t)``, which the
    result discharges to conclude ``~~A(t)``.
    """
    if not (isinstance(p, Infer) and p.rule == "all_c_elim"):
        raise NoDetour("root is not all_c_elim")
    intro = p.premises[0] if len(p.premises) == 1 else None
    if not (isinstance(intro, Infer) and intro.rule == "all_c_intro"):
        raise NoDetour("premise of all_c_elim is not all_c_intro")
    require_proof(System.NEK, p)
    fc, t = intro.conclusion, p.witness
    pi = intro.premises[0]
    # keep the eigen-parameters of pi clear of the witness term
    pi = _clear_eigen(pi, term_params(t), Params(params_in(p) | term_params(t)))
    inst = substitute(fc.body, fc.var, t)
    supply = Labels(p)
    m = supply()
    witness = infer("ex_i_intro", Exists(INT, fc.var, neg(fc.body, INT)), hyp(m, neg(inst, INT)), wit=t)
    body = graft(pi, intro.discharges[0], witness, supply)
    return infer("imp_i_intro", p.conclusion, body, d=(m,))


def _clear_eigen(p: Proof, bad: set, names: Params) -> Proof:
    """Rename eigen-parameters in ``bad`` within the premise they govern."""
    if isinstance(p, Hyp):
        return p
    premises = list(p.premises)
    eigen = p.eigen
    if eigen in bad:
        k = 1 if p.rule.startswith("ex") else 0
        eigen = names()
        premises[k] = rename_param_proof(premises[k], p.eigen, eigen)
    premises = tuple(_clear_eigen(q, bad, names) for q in premises)
    return Infer(p.rule, p.conclusion, premises, p.discharges, eigen, p.witness)


def detour_node_change(p: Proof) -> int:
    """Node count of the reduct minus that of ``p``."""
    return size(forallc_detour_reduce(p)) - size(p)
