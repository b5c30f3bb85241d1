"""Dimension-free verdicts: cube certificates, dominance analysis, determinant two."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .dominance import DominanceCert, STRICT_CUBE, SURGERY_NEEDED, dominance_cert
from .intmat import as_matrix, det, format_matrix
from .spectral import is_expansive

NOT_EXPANSIVE = "NotExpansive"
NO_SYMMETRIC_TILE = "NoSymmetricTile"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    matrix: tuple
    expansive: bool
    det: int
    verdict: str
    dominance: Optional[DominanceCert] = None
    notes: tuple = field(default=())

    @property
    def decided(self) -> bool:
        return self.verdict in (NOT_EXPANSIVE, STRICT_CUBE, SURGERY_NEEDED)

    def to_json(self) -> dict:
        return {"matrix": format_matrix(self.matrix), "n": len(self.matrix),
                "expansive": self.expansive, "det": self.det, "verdict": self.verdict,
                "dominance": None if self.dominance is None else self.dominance.to_json(),
                "notes": list(self.notes)}


def certify(A) -> Certificate:
    """StrictCube when ||A^-1||_inf < 1, SurgeryNeeded for connected dominant
    matrices with norm exactly one, NoSymmetricTile when |det| = 2.

    SurgeryNeeded still means strictly expansive; the repaired tile is only
    built in the plane.  NoSymmetricTile leaves non-symmetric sets open.
    """
    A = as_matrix(A)
    d = det(A)
    if not is_expansive(A):
        return Certificate(A, False, d, NOT_EXPANSIVE)
    if abs(d) == 2:
        return Certificate(A, True, d, NO_SYMMETRIC_TILE, notes=(
            "no centrally symmetric integer tile works; other sets are open",))
    dc = dominance_cert(A)
    if dc.verdict in (STRICT_CUBE, SURGERY_NEEDED):
        return Certificate(A, True, d, dc.verdict, dc)
    return Certificate(A, True, d, UNKNOWN, dc)
