"""Proof translation between universal-free ECI and NE_K.

``eci_to_nek`` maps every ECI rule to NE_K: intuitionistic rules one to one,
and each label rule to a derivation built around the classical rule of the
formula's main connective.  ``nek_to_eci`` goes the other way, rebuilding each
classical rule from ``i_c`` and ``e_c``.
"""

from __future__ import annotations

from ecumene.kernel import Hyp, Infer, Proof, nodes
from ecumene.syntax import (
    BOT,
    CLS,
    INT,
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
    neg,
    substitute,
    subformulas,
)
from ecumene.transform._build import (
    Labels,
    Params,
    TransformError,
    freshen,
    graft,
    hyp,
    infer,
    params_in,
    require_proof,
    weaken,
)
from ecumene.translate import t_nek, untranslate_nek

_SAME = {"and_intro", "and_elim_1", "and_elim_2", "bot_elim", "all_intro", "all_elim"}
_ECI_TO_NEK = {
    "imp_intro": "imp_i_intro",
    "imp_elim": "imp_i_elim",
    "or_intro_1": "or_i_intro_1",
    "or_intro_2": "or_i_intro_2",
    "or_elim": "or_i_elim",
    "ex_intro": "ex_i_intro",
    "ex_elim": "ex_i_elim",
}
_NEK_TO_ECI = {v: k for k, v in _ECI_TO_NEK.items()}


def _formulas(p: Proof):
    for _, q in nodes(p):
        yield q.conclusion


def _ni(f: Formula) -> Formula:
    return neg(f, INT)


# -- ECI to NE_K --------------------------------------------------------------


def eci_to_nek(p: Proof) -> Proof:
    """Translate an ECI proof of ``Gamma |- A`` into an NE_K proof of
    ``t_nek[Gamma] |- t_nek[A]``.

    The judgment must be universal-free.  Unlabelled universals inside the
    proof are carried over as intuitionistic ones; labelled universals are
    rejected.
    """
    j = require_proof(System.ECI, p)
    for f in list(j.context) + [j.conclusion]:
        if any(isinstance(g, Forall) for g in subformulas(f)):
            raise TransformError("the ECI judgment mentions a universal quantifier")
    for f in _formulas(p):
        if any(isinstance(g, CLabel) and isinstance(g.body, Forall) for g in subformulas(f)):
            raise TransformError("the ECI proof mentions a labelled universal")
    return _ToNek(p).go(p)


def _t(f: Formula) -> Formula:
    return t_nek(f, allow_forall_i=True)


class _ToNek:
    def __init__(self, p: Proof):
        self.labels = Labels(p)
        self.params = Params(params_in(p))

    def go(self, p: Proof) -> Proof:
        if isinstance(p, Hyp):
            return Hyp(p.label, _t(p.formula))
        if p.rule == "i_c":
            return self.intro(p)
        if p.rule == "e_c":
            return self.elim(p)
        name = p.rule if p.rule in _SAME else _ECI_TO_NEK[p.rule]
        return Infer(name, _t(p.conclusion), tuple(self.go(q) for q in p.premises), p.discharges, p.eigen, p.witness)

    def intro(self, p: Infer) -> Proof:
        x = p.conclusion.body
        tx, tc = _t(x), _t(p.conclusion)
        pi = self.go(p.premises[0])
        lab = p.discharges[0]
        L = self.labels
        if isinstance(x, Atom):
            return infer("atom_c_intro", tc, pi, d=(lab,))
        if isinstance(x, Bot):
            return graft(pi, lab, _not_bot(L()), L)
        if isinstance(x, CLabel):
            return self.reductio(tc, pi, lab)
        k = L()
        if isinstance(x, And):
            l1, l2 = L(), L()
            copies = []
            for j, part, l in ((1, tx.left, l1), (2, tx.right, l2)):
                proj = infer(f"and_elim_{j}", part, hyp(k, tx))
                bridge = infer("imp_i_intro", _ni(tx), infer("imp_i_elim", BOT, hyp(l, _ni(part)), proj), d=(k,))
                copies.append(graft(freshen(pi, L), lab, bridge, L))
            return infer("and_c_intro", tc, *copies, d=(l1, l2))
        if isinstance(x, Or):
            l1, l2, m, n = L(), L(), L(), L()
            left = infer("imp_i_elim", BOT, hyp(l1, _ni(tx.left)), hyp(m, tx.left))
            right = infer("imp_i_elim", BOT, hyp(l2, _ni(tx.right)), hyp(n, tx.right))
            cases = infer("or_i_elim", BOT, hyp(k, tx), left, right, d=(m, n))
            bridge = infer("imp_i_intro", _ni(tx), cases, d=(k,))
            return infer("or_c_intro", tc, graft(pi, lab, bridge, L), d=(l1, l2))
        if isinstance(x, Imp):
            l1, l2 = L(), L()
            mp = infer("imp_i_elim", tx.right, hyp(k, tx), hyp(l1, tx.left))
            bridge = infer("imp_i_intro", _ni(tx), infer("imp_i_elim", BOT, hyp(l2, _ni(tx.right)), mp), d=(k,))
            return infer("imp_c_intro", tc, graft(pi, lab, bridge, L), d=(l1, l2))
        # existential
        l1, m = L(), L()
        a = self.params.param()
        inst = substitute(tx.body, tx.var, a)
        all_not = Forall(INT, tx.var, _ni(tx.body))
        minor = infer("imp_i_elim", BOT, infer("all_elim", _ni(inst), hyp(l1, all_not), wit=a), hyp(m, inst))
        cases = infer("ex_i_elim", BOT, hyp(k, tx), minor, d=(m,), eigen=a.name)
        bridge = infer("imp_i_intro", _ni(tx), cases, d=(k,))
        return infer("ex_c_intro", tc, graft(pi, lab, bridge, L), d=(l1,))

    def reductio(self, tc: Formula, pi: Proof, lab: int) -> Proof:
        """Conclude ``tc`` (classical root or bot) from ``pi`` refuting ``~tc``."""
        L = self.labels
        if isinstance(tc, Bot):
            return graft(pi, lab, _not_bot(L()), L)
        k = L()

        def bridge(elim: Proof) -> Proof:
            return infer("imp_i_intro", _ni(tc), elim, d=(k,))

        if isinstance(tc, Atom):
            l1 = L()
            plain = Atom(tc.pred, INT, tc.args)
            b = bridge(infer("atom_c_elim", BOT, hyp(k, tc), hyp(l1, _ni(plain))))
            return infer("atom_c_intro", tc, graft(pi, lab, b, L), d=(l1,))
        if isinstance(tc, And):
            l1, l2 = L(), L()
            copies = []
            for j, part, l in ((1, tc.left, l1), (2, tc.right, l2)):
                b = bridge(infer(f"and_c_elim_{j}", BOT, hyp(k, tc), hyp(l, _ni(part))))
                copies.append(graft(freshen(pi, L), lab, b, L))
            return infer("and_c_intro", tc, *copies, d=(l1, l2))
        if isinstance(tc, Or):
            l1, l2 = L(), L()
            b = bridge(infer("or_c_elim", BOT, hyp(k, tc), hyp(l1, _ni(tc.left)), hyp(l2, _ni(tc.right))))
            return infer("or_c_intro", tc, graft(pi, lab, b, L), d=(l1, l2))
        if isinstance(tc, Imp):
            l1, l2 = L(), L()
            b = bridge(infer("imp_c_elim", BOT, hyp(k, tc), hyp(l1, tc.left), hyp(l2, _ni(tc.right))))
            return infer("imp_c_intro", tc, graft(pi, lab, b, L), d=(l1, l2))
        l1 = L()
        all_not = Forall(INT, tc.var, _ni(tc.body))
        b = bridge(infer("ex_c_elim", BOT, hyp(k, tc), hyp(l1, all_not)))
        return infer("ex_c_intro", tc, graft(pi, lab, b, L), d=(l1,))

    def elim(self, p: Infer) -> Proof:
        x = p.premises[0].conclusion.body
        tx = _t(x)
        major, minor = self.go(p.premises[0]), self.go(p.premises[1])
        L = self.labels
        if isinstance(x, Atom):
            return infer("atom_c_elim", BOT, major, minor)
        if isinstance(x, (Bot, CLabel)):
            # the labelled formula translates to itself: plain modus ponens
            return infer("imp_i_elim", BOT, minor, major)
        if isinstance(x, And):
            l1, l2 = L(), L()
            conj = infer("and_intro", tx, hyp(l1, tx.left), hyp(l2, tx.right))
            not_b = infer("imp_i_intro", _ni(tx.right), infer("imp_i_elim", BOT, freshen(minor, L), conj), d=(l2,))
            not_a = infer("imp_i_intro", _ni(tx.left), infer("and_c_elim_2", BOT, freshen(major, L), not_b), d=(l1,))
            return infer("and_c_elim_1", BOT, freshen(major, L), not_a)
        if isinstance(x, Or):
            l1, l2 = L(), L()
            inj1 = infer("imp_i_elim", BOT, freshen(minor, L), infer("or_i_intro_1", tx, hyp(l1, tx.left)))
            inj2 = infer("imp_i_elim", BOT, freshen(minor, L), infer("or_i_intro_2", tx, hyp(l2, tx.right)))
            not_a = infer("imp_i_intro", _ni(tx.left), inj1, d=(l1,))
            not_b = infer("imp_i_intro", _ni(tx.right), inj2, d=(l2,))
            return infer("or_c_elim", BOT, major, not_a, not_b)
        if isinstance(x, Imp):
            l1, l2 = L(), L()
            const = infer("imp_i_intro", tx, hyp(l1, tx.right), d=(0,))
            not_b = infer("imp_i_intro", _ni(tx.right), infer("imp_i_elim", BOT, freshen(minor, L), const), d=(l1,))
            refute = infer("imp_c_elim", BOT, major, hyp(l2, tx.left), not_b)
            a_to_b = infer("imp_i_intro", tx, infer("bot_elim", tx.right, refute), d=(l2,))
            return infer("imp_i_elim", BOT, freshen(minor, L), a_to_b)
        # existential
        l1 = L()
        a = self.params.param()
        inst = substitute(tx.body, tx.var, a)
        witness = infer("imp_i_elim", BOT, minor, infer("ex_i_intro", tx, hyp(l1, inst), wit=a))
        not_inst = infer("imp_i_intro", _ni(inst), witness, d=(l1,))
        all_not = infer("all_intro", Forall(INT, tx.var, _ni(tx.body)), not_inst, eigen=a.name)
        return infer("ex_c_elim", BOT, major, all_not)


def _uses(p: Proof, label: int) -> bool:
    return bool(label) and any(isinstance(q, Hyp) and q.label == label for _, q in nodes(p))


def _not_bot(k: int) -> Proof:
    return infer("imp_i_intro", _ni(BOT), hyp(k, BOT), d=(k,))


# -- NE_K to ECI --------------------------------------------------------------


def nek_to_eci(p: Proof) -> Proof:
    """Translate an NE_K proof without classical universals into ECI,
    mapping its judgment through ``untranslate_nek``.

    The judgment must be universal-free; intuitionistic universals inside the
    proof map to plain ones.
    """
    j = require_proof(System.NEK, p)
    for f in _formulas(p):
        if any(isinstance(g, Forall) and g.flavor is CLS for g in subformulas(f)):
            raise TransformError("the NE_K proof mentions a classical universal")
    for f in list(j.context) + [j.conclusion]:
        if any(isinstance(g, Forall) for g in subformulas(f)):
            raise TransformError("the NE_K judgment mentions a universal quantifier")
    return _ToEci(p).go(p)


def _u(f: Formula) -> Formula:
    return untranslate_nek(f, allow_forall_i=True)


class _ToEci:
    def __init__(self, p: Proof):
        self.labels = Labels(p)
        self.params = Params(params_in(p))

    def go(self, p: Proof) -> Proof:
        if isinstance(p, Hyp):
            return Hyp(p.label, _u(p.formula))
        handler = getattr(self, p.rule, None)
        if handler is not None:
            return handler(p)
        name = p.rule if p.rule in _SAME else _NEK_TO_ECI[p.rule]
        return Infer(name, _u(p.conclusion), tuple(self.go(q) for q in p.premises), p.discharges, p.eigen, p.witness)

    def _parts(self, p: Infer):
        """Untranslated classical formula ``X^c``, its body ``X`` and the body's parts."""
        xc = _u(p.conclusion if p.conclusion != BOT else p.premises[0].conclusion)
        return xc, xc.body

    def atom_c_intro(self, p: Infer) -> Proof:
        return infer("i_c", _u(p.conclusion), self.go(p.premises[0]), d=p.discharges)

    def atom_c_elim(self, p: Infer) -> Proof:
        return infer("e_c", BOT, *(self.go(q) for q in p.premises))

    def _close(self, xc: Formula, use) -> Proof:
        """``e_c`` against ``~X`` obtained by discharging a hypothesis ``X``."""
        k = self.labels()
        return infer("imp_intro", neg(xc.body), use(hyp(k, xc.body)), d=(k,))

    def and_c_intro(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        L = self.labels
        big, m, n = L(), L(), L()
        l1, l2 = p.discharges
        pair = infer("and_intro", x, hyp(m, x.left), hyp(n, x.right))
        not_b = infer("imp_intro", neg(x.right), infer("imp_elim", BOT, hyp(big, neg(x)), pair), d=(n,))
        first, second = self.go(p.premises[0]), self.go(p.premises[1])
        if not _uses(first, l1):
            # the second refutation would vanish; keep its assumptions open
            kept = infer("imp_intro", neg(neg(x.right)), second, d=(l2,))
            return infer("i_c", xc, weaken(System.ECI, first, kept), d=(big,))
        inner = graft(second, l2, not_b, L)
        not_a = infer("imp_intro", neg(x.left), inner, d=(m,))
        return infer("i_c", xc, graft(first, l1, not_a, L), d=(big,))

    def _and_c_elim(self, p: Infer, j: int) -> Proof:
        xc, x = self._parts(p)
        part = x.left if j == 1 else x.right
        minor = self.go(p.premises[1])
        use = lambda h: infer("imp_elim", BOT, minor, infer(f"and_elim_{j}", part, h))  # noqa: E731
        return infer("e_c", BOT, self.go(p.premises[0]), self._close(xc, use))

    def and_c_elim_1(self, p: Infer) -> Proof:
        return self._and_c_elim(p, 1)

    def and_c_elim_2(self, p: Infer) -> Proof:
        return self._and_c_elim(p, 2)

    def or_c_intro(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        L = self.labels
        big, m, n = L(), L(), L()
        l1, l2 = p.discharges
        not_a = infer(
            "imp_intro", neg(x.left), infer("imp_elim", BOT, hyp(big, neg(x)), infer("or_intro_1", x, hyp(m, x.left))), d=(m,)
        )
        not_b = infer(
            "imp_intro", neg(x.right), infer("imp_elim", BOT, hyp(big, neg(x)), infer("or_intro_2", x, hyp(n, x.right))), d=(n,)
        )
        body = graft(graft(self.go(p.premises[0]), l1, not_a, L), l2, not_b, L)
        return infer("i_c", xc, body, d=(big,))

    def or_c_elim(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        L = self.labels
        m, n = L(), L()
        na, nb = self.go(p.premises[1]), self.go(p.premises[2])
        left = infer("imp_elim", BOT, na, hyp(m, x.left))
        right = infer("imp_elim", BOT, nb, hyp(n, x.right))
        use = lambda h: infer("or_elim", BOT, h, left, right, d=(m, n))  # noqa: E731
        return infer("e_c", BOT, self.go(p.premises[0]), self._close(xc, use))

    def imp_c_intro(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        L = self.labels
        big, k = L(), L()
        l_a, l_nb = p.discharges
        const = infer("imp_intro", x, hyp(k, x.right), d=(0,))
        not_b = infer("imp_intro", neg(x.right), infer("imp_elim", BOT, hyp(big, neg(x)), const), d=(k,))
        body = graft(self.go(p.premises[0]), l_nb, not_b, L)
        a_to_b = infer("imp_intro", x, infer("bot_elim", x.right, body), d=(l_a,))
        return infer("i_c", xc, infer("imp_elim", BOT, hyp(big, neg(x)), a_to_b), d=(big,))

    def imp_c_elim(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        a, nb = self.go(p.premises[1]), self.go(p.premises[2])
        use = lambda h: infer("imp_elim", BOT, nb, infer("imp_elim", x.right, h, a))  # noqa: E731
        return infer("e_c", BOT, self.go(p.premises[0]), self._close(xc, use))

    def ex_c_intro(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        L = self.labels
        big, m = L(), L()
        a = self.params.param()
        inst = substitute(x.body, x.var, a)
        witness = infer("imp_elim", BOT, hyp(big, neg(x)), infer("ex_intro", x, hyp(m, inst), wit=a))
        not_inst = infer("imp_intro", neg(inst), witness, d=(m,))
        all_not = infer("all_intro", Forall(x.flavor, x.var, neg(x.body)), not_inst, eigen=a.name)
        body = graft(self.go(p.premises[0]), p.discharges[0], all_not, L)
        return infer("i_c", xc, body, d=(big,))

    def ex_c_elim(self, p: Infer) -> Proof:
        xc, x = self._parts(p)
        m = self.labels()
        a = self.params.param()
        inst = substitute(x.body, x.var, a)
        all_not = self.go(p.premises[1])
        minor = infer("imp_elim", BOT, infer("all_elim", neg(inst), all_not, wit=a), hyp(m, inst))
        use = lambda h: infer("ex_elim", BOT, h, minor, d=(m,), eigen=a.name)  # noqa: E731
        return infer("e_c", BOT, self.go(p.premises[0]), self._close(xc, use))
