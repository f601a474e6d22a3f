"""Decisions about Kirchberg algebras made from their K-data alone.

A K-datum is ``(K_0, [1], K_1)``. Two data are called isomorphic when
there is a pointed isomorphism of the ``K_0`` parts and an isomorphism of
the ``K_1`` parts; for Kirchberg algebras this is the Kirchberg-Phillips
invariant, but nothing here claims more than equality of invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from ckdual.abgroup import (
    Z,
    FgAbGroup,
    GroupElement,
    OwnershipError,
    direct_sum,
    element_order,
    free_part,
    pointed_iso,
    quotient_by,
)
from ckdual.ktheory import InvariantSheet, invariant_sheet

__all__ = [
    "KDatum",
    "NotReciprocalForm",
    "WCaseReport",
    "Prop22Report",
    "is_ck_form",
    "is_reciprocal_ck_form",
    "classify",
    "w_case_report",
    "kp_iso",
    "prop22_check",
    "kdatum_of_sheet",
    "reciprocal_kdatum",
]


class NotReciprocalForm(ValueError):
    """The datum does not have the K-theory shape of a reciprocal dual."""


@dataclass(frozen=True)
class KDatum:
    k0: FgAbGroup
    unit: GroupElement
    k1: FgAbGroup

    def __post_init__(self):
        if self.unit.owner != self.k0:
            raise OwnershipError("unit class must be an element of k0")

    @property
    def chi(self) -> int:
        return self.k0.free_rank - self.k1.free_rank

    def to_dict(self) -> dict:
        return {"k0": self.k0.to_dict(), "unit": self.unit.to_dict(), "k1": self.k1.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "KDatum":
        k0 = FgAbGroup.from_dict(data["k0"])
        unit = data.get("unit", {})
        return cls(k0, k0.element(unit.get("free", []), unit.get("torsion", [])), FgAbGroup.from_dict(data["k1"]))

    def __str__(self) -> str:
        return f"({self.k0}, {self.unit}, {self.k1})"


def kdatum_of_sheet(sheet: InvariantSheet) -> KDatum:
    return KDatum(sheet.k0, sheet.unit_class, sheet.k1)


def reciprocal_kdatum(sheet: InvariantSheet) -> KDatum:
    return KDatum(sheet.exts1, sheet.iota_class, sheet.exts0)


def is_ck_form(d: KDatum) -> bool:
    """K-data of some simple Cuntz-Krieger algebra: ``Free(K_0) = K_1`` with ``K_1`` torsion-free."""
    return free_part(d.k0) == d.k1 and not d.k1.torsion_factors


def is_reciprocal_ck_form(d: KDatum) -> bool:
    """K-data of a reciprocal dual of some ``O_A``: ``Free(K_0) = K_1 (+) Z`` with ``K_1`` torsion-free."""
    return free_part(d.k0) == direct_sum(d.k1, Z) and not d.k1.torsion_factors


def classify(d: KDatum) -> str:
    if is_ck_form(d):
        return "CK-form"
    if is_reciprocal_ck_form(d):
        return "reciprocal-CK-form"
    return "neither"


@dataclass(frozen=True)
class WCaseReport:
    """``w`` of a reciprocal-form datum and the groups of the ``O_A`` it is dual to.

    Only groups are reconstructed; the unit class of ``K_0(O_A)`` is not
    determined by this route.
    """

    w: int
    k0: FgAbGroup
    k1: FgAbGroup


def w_case_report(d: KDatum) -> WCaseReport:
    if not is_reciprocal_ck_form(d):
        raise NotReciprocalForm(f"{d} does not satisfy Free(K0) = K1 (+) Z with torsion-free K1")
    k0 = quotient_by(d.unit)
    if element_order(d.unit) == inf:
        return WCaseReport(1, k0, d.k1)
    return WCaseReport(0, k0, direct_sum(d.k1, Z))


def kp_iso(d1: KDatum, d2: KDatum) -> bool:
    return pointed_iso(d1.k0, d1.unit, d2.k0, d2.unit) and d1.k1 == d2.k1


@dataclass
class Prop22Report:
    """Outcome of the reciprocity test between ``O_A`` and a candidate datum."""

    pointed_k0: bool
    k1: bool
    unpointed: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.pointed_k0 and self.k1

    def to_dict(self) -> dict:
        return {
            "pointed (Ext_s^1, iota) ~ (K0, unit)": self.pointed_k0,
            "Ext_s^0 ~ K1": self.k1,
            "unpointed cross-check": self.unpointed,
            "pass": self.passed,
        }


def prop22_check(A, d: KDatum, other_sheet: InvariantSheet | None = None) -> Prop22Report:
    """Is ``d`` the K-datum of the reciprocal dual of ``O_A``?

    Decided by ``(Ext_s^1(O_A), iota(1)) ~ (K_0, [1])`` and
    ``Ext_s^0(O_A) ~ K_1``. When ``d`` comes from another algebra whose
    full sheet is known, the four unpointed isomorphisms
    ``K_i(O_A) ~ Ext_s^(i+1)(B)`` and ``Ext_s^i(O_A) ~ K_(i+1)(B)`` are
    evaluated as written, without inferring any pointing.
    """
    s = A if isinstance(A, InvariantSheet) else invariant_sheet(A)
    report = Prop22Report(
        pointed_k0=pointed_iso(s.exts1, s.iota_class, d.k0, d.unit),
        k1=s.exts0 == d.k1,
    )
    if other_sheet is not None:
        b = other_sheet
        report.unpointed = {
            "K0(A) ~ Ext_s^1(B)": s.k0 == b.exts1,
            "K1(A) ~ Ext_s^0(B)": s.k1 == b.exts0,
            "Ext_s^0(A) ~ K1(B)": s.exts0 == b.k1,
            "Ext_s^1(A) ~ K0(B)": s.exts1 == b.k0,
        }
    return report
