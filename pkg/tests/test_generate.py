import random

import pytest

from ecumene.generate import (
    detour_proof,
    mutate,
    random_formula,
    random_proof,
    random_propositional,
    random_rooted,
    translatable_proof,
)
from ecumene.kernel import check, size
from ecumene.syntax import CLS, Exists, Forall, Or, System, well_formed


@pytest.mark.parametrize("system", list(System))
def test_random_formulas_are_well_formed(system):
    rng = random.Random(1)
    for _ in range(200):
        f = random_formula(rng, system, rng.randint(0, 8), quantifiers=(Exists, Forall))
        assert well_formed(system, f) == []


def test_random_propositional_is_pure():
    rng = random.Random(2)
    for _ in range(100):
        assert well_formed(System.NJ, random_propositional(rng, 12)) == []


def test_random_rooted_has_classical_root():
    rng = random.Random(3)
    for _ in range(50):
        f = random_rooted(rng, "ne", Or)
        assert isinstance(f, Or) and f.flavor is CLS


@pytest.mark.parametrize("system", ["ne", "nek", "eci", "nj", "nk"])
def test_random_proofs_check(system):
    rng = random.Random(system)
    for _ in range(30):
        p = random_proof(rng, system)
        assert check(system, p).ok, check(system, p).render(system)


def test_generation_is_deterministic():
    assert random_proof(random.Random(9), "eci") == random_proof(random.Random(9), "eci")


def test_translatable_proofs_have_universal_free_judgments():
    rng = random.Random(4)
    for system in ("eci", "nek"):
        p = translatable_proof(rng, system)
        j = check(system, p).judgment
        assert "forall" not in j.render(system)


@pytest.mark.parametrize("uses", [0, 1, 2, 3])
def test_detour_proofs_check(uses):
    rng = random.Random(uses)
    for _ in range(10):
        p = detour_proof(rng, uses)
        assert check("nek", p).ok and p.rule == "all_c_elim"


def test_mutations_change_exactly_one_node():
    rng = random.Random(5)
    p = random_proof(rng, "ne", steps=10)
    for kind in ("rule", "flavor", "label"):
        m = mutate(p, rng, kind, ["and_intro", "imp_i_elim"])
        if m is not None:
            assert m != p and size(m) == size(p)
    with pytest.raises(ValueError):
        mutate(p, rng, "colour", [])
