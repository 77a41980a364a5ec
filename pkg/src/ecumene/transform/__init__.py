"""Proof-producing constructions.  Every function returns a plain proof tree
that the kernel can check; none of them is trusted on its own."""

from ecumene.transform._build import (
    JudgmentMismatch,
    NoDetour,
    NotClassicalError,
    RootForallError,
    TransformError,
)
from ecumene.transform.bridge import eci_to_nek, nek_to_eci
from ecumene.transform.ecumenical import (
    forallc_detour_reduce,
    glivenko1_internal,
    glivenko2_internal,
    neg_forallc_elim,
    nek_forallc_from_refutation,
    star_embed,
)
from ecumene.transform.labels import (
    eci_dn_to_label,
    eci_forall_label_instantiate,
    eci_glivenko2,
    eci_label_to_dn,
    eci_neg_label_comm,
    mp_classicalize,
)

__all__ = [
    "JudgmentMismatch",
    "NoDetour",
    "NotClassicalError",
    "RootForallError",
    "TransformError",
    "eci_dn_to_label",
    "eci_forall_label_instantiate",
    "eci_glivenko2",
    "eci_label_to_dn",
    "eci_neg_label_comm",
    "eci_to_nek",
    "forallc_detour_reduce",
    "glivenko1_internal",
    "glivenko2_internal",
    "mp_classicalize",
    "neg_forallc_elim",
    "nek_forallc_from_refutation",
    "nek_to_eci",
    "star_embed",
]
