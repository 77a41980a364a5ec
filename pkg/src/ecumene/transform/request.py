"""Uniform dispatch over the constructions, for the command line."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ecumene.kernel import Proof
from ecumene.syntax import System, Term
from ecumene.transform import bridge, ecumenical, labels
from ecumene.transform._build import TransformError

NE, NEK, ECI = System.NE, System.NEK, System.ECI


@dataclass(frozen=True)
class TransformRequest:
    name: str
    system: System
    formulas: tuple = ()
    proofs: tuple = ()
    term: Optional[Term] = None
    var: Optional[str] = None
    option: Optional[str] = None  # direction or target


@dataclass(frozen=True)
class Operation:
    run: Callable[[TransformRequest], Proof]
    formulas: int = 0
    proofs: int = 0
    term: bool = False
    var: bool = False
    options: tuple = ()
    systems: tuple = (ECI,)  # dialects the arguments may be written in
    output: Optional[System] = None  # None: same as the request


OPERATIONS: dict[str, Operation] = {
    "glivenko1_internal": Operation(
        lambda r: ecumenical.glivenko1_internal(r.system, r.formulas[0]), formulas=1, systems=(NE, NEK)
    ),
    "star_embed": Operation(lambda r: ecumenical.star_embed(r.system, r.formulas[0]), formulas=1, systems=(NE, NEK)),
    "glivenko2_internal": Operation(
        lambda r: ecumenical.glivenko2_internal(r.system, r.formulas[0]), formulas=1, systems=(NE, NEK)
    ),
    "eci_label_to_dn": Operation(lambda r: labels.eci_label_to_dn(r.formulas[0]), formulas=1),
    "eci_dn_to_label": Operation(lambda r: labels.eci_dn_to_label(r.formulas[0]), formulas=1),
    "eci_glivenko2": Operation(lambda r: labels.eci_glivenko2(r.formulas[0]), formulas=1),
    "eci_neg_label_comm": Operation(
        lambda r: labels.eci_neg_label_comm(r.formulas[0], r.option or "fwd"), formulas=1, options=("fwd", "bwd")
    ),
    "eci_to_nek": Operation(lambda r: bridge.eci_to_nek(r.proofs[0]), proofs=1, output=NEK),
    "nek_to_eci": Operation(lambda r: bridge.nek_to_eci(r.proofs[0]), proofs=1, systems=(NEK,), output=ECI),
    "forallc_detour_reduce": Operation(
        lambda r: ecumenical.forallc_detour_reduce(r.proofs[0]), proofs=1, systems=(NEK,)
    ),
    "neg_forallc_elim": Operation(
        lambda r: ecumenical.neg_forallc_elim(r.formulas[0], r.var, r.option or "existsc"),
        formulas=1,
        var=True,
        options=("existsc", "neg_foralli"),
        systems=(NEK,),
    ),
    "nek_forallc_from_refutation": Operation(
        lambda r: ecumenical.nek_forallc_from_refutation(r.formulas[0], r.var, r.proofs[0]),
        formulas=1,
        proofs=1,
        var=True,
        systems=(NEK,),
    ),
    "eci_forall_label_instantiate": Operation(
        lambda r: labels.eci_forall_label_instantiate(r.proofs[0], r.term), proofs=1, term=True
    ),
    "mp_classicalize": Operation(lambda r: labels.mp_classicalize(r.proofs[0], r.proofs[1]), proofs=2),
}


def operation(name: str) -> Operation:
    try:
        return OPERATIONS[name]
    except KeyError:
        raise TransformError(f"unknown transformation {name!r}; choose from {', '.join(sorted(OPERATIONS))}") from None


def input_system(name: str, requested: Optional[System]) -> System:
    """Dialect in which the arguments of ``name`` are read."""
    op = operation(name)
    if requested is None:
        return op.systems[-1]
    if requested not in op.systems:
        allowed = ", ".join(s.value for s in op.systems)
        raise TransformError(f"{name} takes arguments in {allowed}, not {requested.value}")
    return requested


def output_system(name: str, requested: System) -> System:
    return operation(name).output or requested


def run(request: TransformRequest) -> Proof:
    """Validate the arity of ``request`` and run the construction."""
    op = operation(request.name)
    if len(request.formulas) != op.formulas:
        raise TransformError(f"{request.name} takes {op.formulas} formula argument(s), got {len(request.formulas)}")
    if len(request.proofs) != op.proofs:
        raise TransformError(f"{request.name} takes {op.proofs} proof argument(s), got {len(request.proofs)}")
    if op.term and request.term is None:
        raise TransformError(f"{request.name} needs a term (--term)")
    if op.var and not request.var:
        raise TransformError(f"{request.name} needs a bound variable (--var)")
    if request.option is not None and request.option not in op.options:
        allowed = ", ".join(op.options) or "none"
        raise TransformError(f"{request.name}: option {request.option!r} not one of {allowed}")
    return op.run(request)
