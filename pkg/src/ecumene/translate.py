"""Formula translations between the dialects.

``t_eci``        ECI -> pure intuitionistic (labels become double negations)
``t_nek``        universal-free ECI -> NE_K (labels become classical connectives)
``untranslate_nek``  right inverse of ``t_nek``
``star``         replace the classical root operator by its intuitionistic twin
``nek_to_ipl``   ``t_eci . untranslate_nek``
"""

from __future__ import annotations

import enum

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
    neg,
    well_formed,
)


class TranslationError(ValueError):
    pass


class UniversalQuantifierError(TranslationError):
    pass


class TranslationId(enum.Enum):
    TECI = "teci"
    TNEK = "tnek"
    UNTNEK = "untnek"
    STAR = "star"
    NEK_TO_IPL = "nek2ipl"


def _require(system: System, f: Formula) -> None:
    bad = well_formed(system, f)
    if bad:
        raise TranslationError(f"not a {system.name} formula: {bad[0]}")


def t_eci(f: Formula) -> Formula:
    """Replace each classical label ``A^c`` by ``~~A``, recursively."""
    _require(System.ECI, f)
    return _teci(f)


def _teci(f: Formula) -> Formula:
    if isinstance(f, (Atom, Bot)):
        return f
    if isinstance(f, CLabel):
        return neg(neg(_teci(f.body)))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(NEUTRAL, _teci(f.left), _teci(f.right))
    return type(f)(NEUTRAL, f.var, _teci(f.body))


def t_nek(f: Formula, *, allow_forall_i: bool = False) -> Formula:
    """Map a universal-free ECI formula to NE_K.

    With ``allow_forall_i`` an unlabelled universal maps to the intuitionistic
    one; a labelled universal is always rejected.
    """
    _require(System.ECI, f)
    return _tnek(f, allow_forall_i)


def _tnek(f: Formula, allow: bool = False) -> Formula:
    if isinstance(f, (Atom, Bot)):
        return f
    if isinstance(f, Forall):
        if not allow:
            raise UniversalQuantifierError("tNE_K is undefined on universal quantifiers")
        return Forall(INT, f.var, _tnek(f.body, allow))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(INT, _tnek(f.left, allow), _tnek(f.right, allow))
    if isinstance(f, Exists):
        return Exists(INT, f.var, _tnek(f.body, allow))
    # classical label
    body = f.body
    if isinstance(body, Atom):
        return Atom(body.pred, CLS, body.args)
    if isinstance(body, Bot):
        return BOT
    if isinstance(body, Forall):
        raise UniversalQuantifierError("tNE_K is undefined on universal quantifiers")
    if isinstance(body, (And, Or, Imp)):
        return type(body)(CLS, _tnek(body.left, allow), _tnek(body.right, allow))
    if isinstance(body, Exists):
        return Exists(CLS, body.var, _tnek(body.body, allow))
    # nested label: the inner translation already has a classical root (or is bot)
    return _tnek(body, allow)


def untranslate_nek(f: Formula, *, allow_forall_i: bool = False) -> Formula:
    """Map a universal-free NE_K formula back to ECI.

    With ``allow_forall_i`` the intuitionistic universal quantifier maps to the
    ECI one; classical universals are always rejected.
    """
    _require(System.NEK, f)
    return _untnek(f, allow_forall_i)


def _untnek(f: Formula, allow: bool) -> Formula:
    if isinstance(f, Bot):
        return f
    if isinstance(f, Atom):
        plain = Atom(f.pred, INT, f.args)
        return CLabel(plain) if f.flavor is CLS else plain
    if isinstance(f, Forall):
        if f.flavor is CLS or not allow:
            raise UniversalQuantifierError("universal quantifiers have no ECI counterpart under tNE_K")
        return Forall(NEUTRAL, f.var, _untnek(f.body, allow))
    if isinstance(f, Exists):
        g = Exists(NEUTRAL, f.var, _untnek(f.body, allow))
    else:
        g = type(f)(NEUTRAL, _untnek(f.left, allow), _untnek(f.right, allow))
    return CLabel(g) if f.flavor is CLS else g


_STARRABLE = (And, Or, Imp, Exists, Forall, Atom)


def is_classical_root(f: Formula) -> bool:
    return isinstance(f, _STARRABLE) and f.flavor is CLS


def star(f: Formula) -> Formula:
    """Swap the classical root operator of ``f`` for the intuitionistic one."""
    if not is_classical_root(f):
        raise TranslationError("main operator is not classical")
    if isinstance(f, Atom):
        return Atom(f.pred, INT, f.args)
    if isinstance(f, (Forall, Exists)):
        return type(f)(INT, f.var, f.body)
    return type(f)(INT, f.left, f.right)


def nek_to_ipl(f: Formula) -> Formula:
    return t_eci(untranslate_nek(f))


def apply(map_id: TranslationId | str, f: Formula) -> Formula:
    map_id = TranslationId(map_id)
    return {
        TranslationId.TECI: t_eci,
        TranslationId.TNEK: t_nek,
        TranslationId.UNTNEK: untranslate_nek,
        TranslationId.STAR: star,
        TranslationId.NEK_TO_IPL: nek_to_ipl,
    }[map_id](f)


# dialect each map reads and writes (star keeps its input dialect)
MAP_DIALECTS = {
    TranslationId.TECI: (System.ECI, System.NJ),
    TranslationId.TNEK: (System.ECI, System.NEK),
    TranslationId.UNTNEK: (System.NEK, System.ECI),
    TranslationId.STAR: (System.NEK, System.NEK),
    TranslationId.NEK_TO_IPL: (System.NEK, System.NJ),
}
