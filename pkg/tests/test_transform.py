import random

import pytest

from ecumene.generate import detour_proof, random_formula, random_rooted, translatable_proof
from ecumene.kernel import Hyp, Infer, check, judgment_of, size
from ecumene.syntax import BOT, CLS, INT, CLabel, Exists, Forall, Param, System, parse_formula, substitute
from ecumene.transform import (
    JudgmentMismatch,
    NoDetour,
    NotClassicalError,
    RootForallError,
    TransformError,
    eci_dn_to_label,
    eci_forall_label_instantiate,
    eci_glivenko2,
    eci_label_to_dn,
    eci_neg_label_comm,
    eci_to_nek,
    forallc_detour_reduce,
    glivenko1_internal,
    glivenko2_internal,
    mp_classicalize,
    neg_forallc_elim,
    nek_forallc_from_refutation,
    nek_to_eci,
    star_embed,
)
from ecumene.transform.request import OPERATIONS, TransformRequest, run
from ecumene.translate import star, t_nek, untranslate_nek

from helpers import SYSTEM_ROOTS, explain, neg_i, neg_n, proves

CASES = [(s, r) for s, roots in SYSTEM_ROOTS.items() for r in roots]


@pytest.mark.parametrize("system, root", CASES, ids=lambda v: getattr(v, "__name__", str(v)))
def test_internal_glivenko_constructions(system, root):
    rng = random.Random(hash((system.value, root.__name__)) & 0xFFFF)
    for _ in range(40):
        c = random_rooted(rng, system, root)
        cs = star(c)
        p1 = glivenko1_internal(system, c)
        assert proves(system, p1, [c], neg_i(neg_i(cs))), explain(system, p1, [c], neg_i(neg_i(cs)))
        p2 = star_embed(system, c)
        assert proves(system, p2, [cs], c)
        p3 = glivenko2_internal(system, c)
        assert proves(system, p3, [neg_i(c)], neg_i(cs))


def test_classical_universal_in_nek():
    rng = random.Random(3)
    for _ in range(30):
        c = random_rooted(rng, System.NEK, Forall)
        with pytest.raises(RootForallError):
            glivenko1_internal(System.NEK, c)
        assert proves(System.NEK, star_embed(System.NEK, c), [star(c)], c)
        assert proves(System.NEK, glivenko2_internal(System.NEK, c), [neg_i(c)], neg_i(star(c)))


def test_non_classical_root_rejected():
    with pytest.raises(NotClassicalError):
        glivenko1_internal("ne", parse_formula(r"p \/i q", "ne"))
    with pytest.raises(TransformError):
        star_embed("eci", parse_formula("p", "eci"))
    with pytest.raises(TransformError):
        star_embed("ne", parse_formula(r"p /\c q", "nek"))


@pytest.mark.parametrize("seed", range(5))
def test_label_constructions(seed):
    rng = random.Random(seed)
    for _ in range(40):
        a = random_formula(rng, System.ECI, rng.randint(0, 5), quantifiers=(Exists, Forall))
        assert proves("eci", eci_label_to_dn(a), [CLabel(a)], neg_n(neg_n(a)))
        assert proves("eci", eci_dn_to_label(a), [neg_n(neg_n(a))], CLabel(a))
        assert proves("eci", eci_glivenko2(a), [CLabel(neg_n(a))], neg_n(a))
        assert proves("eci", eci_neg_label_comm(a, "fwd"), [CLabel(neg_n(a))], neg_n(CLabel(a)))
        assert proves("eci", eci_neg_label_comm(a, "bwd"), [neg_n(CLabel(a))], CLabel(neg_n(a)))


def test_forall_label_instantiate():
    a = parse_formula("P(x)", "eci")
    fa = parse_formula("forall x. P(x)", "eci")
    p = eci_forall_label_instantiate(Hyp(1, CLabel(fa)), Param("t"))
    assert proves("eci", p, [CLabel(fa)], neg_n(neg_n(substitute(a, "x", Param("t")))))
    with pytest.raises(JudgmentMismatch):
        eci_forall_label_instantiate(Hyp(1, fa), Param("t"))


def test_mp_classicalize():
    a, b = parse_formula("A", "eci"), parse_formula("B", "eci")
    imp = parse_formula("A -> B", "eci")
    refutation = Infer("imp_elim", BOT, (Hyp(1, neg_n(neg_n(a))), Hyp(2, neg_n(a))))
    p = mp_classicalize(refutation, Hyp(1, imp))
    assert proves("eci", p, [neg_n(neg_n(a)), imp], CLabel(b))


def test_mp_classicalize_without_negated_hypothesis():
    imp = parse_formula("A -> B", "eci")
    refutation = Infer("imp_elim", BOT, (Hyp(1, parse_formula("~q", "eci")), Hyp(2, parse_formula("q", "eci"))))
    p = mp_classicalize(refutation, Hyp(3, imp))
    assert proves("eci", p, [parse_formula("~q", "eci"), parse_formula("q", "eci"), imp], parse_formula("(B)^c", "eci"))


def test_mp_classicalize_shape_errors():
    with pytest.raises(JudgmentMismatch):
        mp_classicalize(Hyp(1, parse_formula("p", "eci")), Hyp(2, parse_formula("p -> q", "eci")))
    bad = Infer("and_intro", parse_formula("p", "eci"), (Hyp(1, parse_formula("p", "eci")),))
    with pytest.raises(JudgmentMismatch):
        mp_classicalize(bad, Hyp(2, parse_formula("p -> q", "eci")))


def test_neg_forallc_constructions():
    a = parse_formula("A(x)", "nek")
    fc = parse_formula("forallc x. A(x)", "nek")
    assert proves("nek", neg_forallc_elim(a, "x", "existsc"), [neg_i(fc)], parse_formula("existsc x. ~A(x)", "nek"))
    assert proves("nek", neg_forallc_elim(a, "x", "neg_foralli"), [neg_i(fc)], parse_formula("~foralli x. A(x)", "nek"))


def test_forallc_from_refutation():
    a = parse_formula("A(x)", "nek")
    nfa = parse_formula("~foralli x. A(x)", "nek")
    ctx = parse_formula("~~foralli x. A(x)", "nek")
    refutation = Infer("imp_i_elim", BOT, (Hyp(1, ctx), Hyp(2, nfa)))
    p = nek_forallc_from_refutation(a, "x", refutation)
    assert proves("nek", p, [ctx], parse_formula("forallc x. A(x)", "nek"))


def test_forallc_from_refutation_rejects_non_bot():
    with pytest.raises(JudgmentMismatch):
        nek_forallc_from_refutation(parse_formula("A(x)", "nek"), "x", Hyp(1, parse_formula("p_i", "nek")))


@pytest.mark.parametrize("uses", [0, 1, 2, 3])
def test_detour_reduction_preserves_judgment(uses):
    rng = random.Random(uses)
    for _ in range(10):
        p = detour_proof(rng, uses)
        before = judgment_of("nek", p)
        q = forallc_detour_reduce(p)
        assert check("nek", q).ok
        assert check("nek", q).judgment.same_as(before)
        # each use of the discharged hypothesis costs one existsi introduction
        assert size(q) - size(p) == uses - 1


def test_no_detour():
    with pytest.raises(NoDetour):
        forallc_detour_reduce(Hyp(1, parse_formula("p_i", "nek")))


@pytest.mark.parametrize("seed", range(4))
def test_proof_translations_round_trip(seed):
    rng = random.Random(seed)
    for _ in range(10):
        p = translatable_proof(rng, "eci")
        j = judgment_of("eci", p)
        q = eci_to_nek(p)
        jq = check("nek", q)
        assert jq.ok, jq.render("nek")
        assert jq.judgment.same_as(type(j)(tuple(t_nek(f) for f in j.context), t_nek(j.conclusion)))
        r = nek_to_eci(q)
        jr = judgment_of("eci", r)
        assert set(jr.context) == {untranslate_nek(t_nek(f)) for f in j.context}
        assert jr.conclusion == untranslate_nek(t_nek(j.conclusion))

        p = translatable_proof(rng, "nek")
        j = judgment_of("nek", p)
        r = nek_to_eci(p)
        assert check("eci", r).ok
        back = judgment_of("nek", eci_to_nek(r))
        assert back.same_as(j)


def test_translation_rejects_wrong_inputs():
    fc = parse_formula("forallc x. P(x)", "nek")
    with pytest.raises(TransformError):
        nek_to_eci(Hyp(1, fc))
    with pytest.raises(TransformError):
        eci_to_nek(Hyp(1, parse_formula("(forall x. P(x))^c", "eci")))
    bad = Infer("imp_intro", parse_formula("p -> q", "eci"), (Hyp(1, parse_formula("p", "eci")),), (1,))
    with pytest.raises(JudgmentMismatch):
        eci_to_nek(bad)


def test_request_arity_checks():
    assert set(OPERATIONS) >= {"glivenko1_internal", "eci_to_nek", "mp_classicalize", "forallc_detour_reduce"}
    with pytest.raises(TransformError):
        run(TransformRequest("star_embed", System.NE))
    with pytest.raises(TransformError):
        run(TransformRequest("neg_forallc_elim", System.NEK, formulas=(parse_formula("A(x)", "nek"),)))
    with pytest.raises(TransformError):
        run(TransformRequest("eci_neg_label_comm", System.ECI, formulas=(parse_formula("p", "eci"),), option="sideways"))
    with pytest.raises(TransformError):
        run(TransformRequest("no_such_thing", System.ECI))
    p = run(TransformRequest("eci_label_to_dn", System.ECI, formulas=(parse_formula("p", "eci"),)))
    assert check("eci", p).ok
