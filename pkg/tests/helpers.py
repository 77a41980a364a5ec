"""Shared assertions for the construction and acceptance tests."""

from ecumene.generate import mutate
from ecumene.kernel import Judgment, check, rule_table
from ecumene.syntax import BOT, CLS, INT, NEUTRAL, And, Atom, Exists, Imp, Or, System, parse_sequent
from ecumene.translate import is_classical_root


def neg_i(f):
    return Imp(INT, f, BOT)


def neg_n(f):
    return Imp(NEUTRAL, f, BOT)


def proves(system, proof, context, goal) -> bool:
    """True when ``proof`` checks in ``system`` with exactly this judgment."""
    report = check(system, proof)
    return report.ok and report.judgment.same_as(Judgment(tuple(context), goal))


def explain(system, proof, context, goal) -> str:
    report = check(system, proof)
    want = Judgment(tuple(context), goal).render(system)
    return f"{report.render(system)} (wanted {want})"


def is_classical(f) -> bool:
    return is_classical_root(f) and f.flavor is CLS


# classical root operators that the internal Glivenko constructions cover
SYSTEM_ROOTS = {
    System.NE: (Or, Imp, Exists, Atom),
    System.NEK: (Or, Imp, Exists, Atom, And),
}


MUTATION_KINDS = ("rule", "flavor", "label")


def mutation_survivors(entry, rng, per_file=5):
    """Mutate ``entry`` ``per_file`` times (cycling through the kinds) and
    return the mutants that still prove the header's judgment.

    A mutant counts as rejected when it fails to check or when it checks with
    any other judgment.
    """
    names = [r.rule for r in rule_table(entry.system)]
    context, goal = parse_sequent(entry.judgment, entry.system)
    survivors = []
    made = 0
    attempts = 0
    while made < per_file and attempts < 50 * per_file:
        kind = MUTATION_KINDS[attempts % len(MUTATION_KINDS)]
        attempts += 1
        m = mutate(entry.proof, rng, kind, names)
        if m is None or m == entry.proof:
            continue
        made += 1
        if proves(entry.system, m, context, goal):
            survivors.append((kind, m))
    if made < per_file:
        raise RuntimeError(f"{entry.path.name}: only {made} distinct mutations")
    return survivors
