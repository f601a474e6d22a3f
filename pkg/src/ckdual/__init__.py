"""K-theory, Ext groups and truncated Fock models for Cuntz-Krieger algebras and their reciprocal duals."""

from ckdual.intlinalg import IntMatrix, snf
from ckdual.abgroup import FgAbGroup, GroupElement, canonicalize, pointed_iso
from ckdual.ktheory import check_admissible, invariant_sheet, verify_duality_sheet
from ckdual.classify import KDatum, classify, prop22_check, w_case_report

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "snf",
    "FgAbGroup",
    "GroupElement",
    "canonicalize",
    "pointed_iso",
    "check_admissible",
    "invariant_sheet",
    "verify_duality_sheet",
    "KDatum",
    "classify",
    "prop22_check",
    "w_case_report",
]
