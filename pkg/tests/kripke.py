"""Brute-force Kripke semantics over small finite frames, used to cross-check
the intuitionistic prover from the outside."""

from itertools import product

from ecumene.syntax import And, Atom, Bot, Imp, Or


def _frames():
    # rooted posets on up to three worlds, as (worlds, above) with reflexive order
    yield [0], {0: {0}}
    yield [0, 1], {0: {0, 1}, 1: {1}}
    yield [0, 1, 2], {0: {0, 1, 2}, 1: {1, 2}, 2: {2}}
    yield [0, 1, 2], {0: {0, 1, 2}, 1: {1}, 2: {2}}


def _valuations(worlds, above, atoms):
    # monotone valuations: each atom gets an up-closed set of worlds
    upsets = []
    for bits in product((0, 1), repeat=len(worlds)):
        s = {w for w, b in zip(worlds, bits) if b}
        if all(above[w] <= s for w in s):
            upsets.append(frozenset(s))
    for choice in product(upsets, repeat=len(atoms)):
        yield dict(zip(atoms, choice))


def forces(f, w, above, val) -> bool:
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        return w in val[f.pred]
    if isinstance(f, And):
        return forces(f.left, w, above, val) and forces(f.right, w, above, val)
    if isinstance(f, Or):
        return forces(f.left, w, above, val) or forces(f.right, w, above, val)
    if isinstance(f, Imp):
        return all(not forces(f.left, v, above, val) or forces(f.right, v, above, val) for v in above[w])
    raise TypeError(f)


def atoms_of(f, acc=None):
    acc = set() if acc is None else acc
    if isinstance(f, Atom):
        acc.add(f.pred)
    elif isinstance(f, (And, Or, Imp)):
        atoms_of(f.left, acc)
        atoms_of(f.right, acc)
    return acc


def kripke_countermodel(context, goal):
    """A (frame, valuation) refuting ``context |- goal`` at the root, or None."""
    atoms = sorted(set().union(*(atoms_of(f) for f in (*context, goal))))
    for worlds, above in _frames():
        for val in _valuations(worlds, above, atoms):
            if all(forces(c, 0, above, val) for c in context) and not forces(goal, 0, above, val):
                return worlds, val
    return None
