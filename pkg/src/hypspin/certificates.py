"""Spin-lift certificates and their JSON form."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .clifford_core import CliffordElement
from .field_core import Field, Scalar, parse_field

IN_IMAGE = "in_image"
OBSTRUCTION = "obstruction"
RANK2_FORWARD_ONLY = "rank2_forward_only"
VERDICTS = (IN_IMAGE, OBSTRUCTION, RANK2_FORWARD_ONLY)

CHECK_NAMES = ("even", "norm_one", "conj_matches", "exterior_action_matches")


def no_checks() -> dict[str, bool]:
    return {name: False for name in CHECK_NAMES}


@dataclass
class SpinLiftCertificate:
    verdict: str
    field: Field
    matrix: list  # the Levi element g (1x1 for the split line)
    det: Scalar
    sqrt: Optional[Scalar] = None
    lift: Optional[CliffordElement] = None
    scalar_c: Optional[Scalar] = None
    checks: dict = dc_field(default_factory=no_checks)
    factorization: Optional[list] = None

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def det_class(self) -> Optional[Scalar]:
        return self.det if self.verdict != IN_IMAGE else None

    def all_checks(self) -> bool:
        return all(self.checks.get(name, False) for name in CHECK_NAMES)

    def to_json(self) -> dict:
        fmt = self.field.format
        out = {
            "verdict": self.verdict,
            "field": self.field.tag,
            "rank": self.n,
            "matrix": [[fmt(x) for x in row] for row in self.matrix],
            "det": fmt(self.det),
            "sqrt": None if self.sqrt is None else fmt(self.sqrt),
            "lift": None if self.lift is None else self.lift.to_json(),
            "scalar_c": None if self.scalar_c is None else fmt(self.scalar_c),
            "checks": {name: bool(self.checks.get(name, False)) for name in CHECK_NAMES},
        }
        if self.verdict != IN_IMAGE:
            out["det_class"] = fmt(self.det)
        if self.factorization is not None:
            out["factorization"] = self.factorization
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SpinLiftCertificate":
        field = parse_field(data["field"])
        matrix = [[field.parse(x) for x in row] for row in data["matrix"]]
        n = len(matrix)
        lift = data.get("lift")
        return cls(
            verdict=data["verdict"],
            field=field,
            matrix=matrix,
            det=field.parse(data["det"]),
            sqrt=None if data.get("sqrt") is None else field.parse(data["sqrt"]),
            lift=None if lift is None else CliffordElement.from_json(field, n, lift),
            scalar_c=None if data.get("scalar_c") is None else field.parse(data["scalar_c"]),
            checks=dict(data.get("checks") or no_checks()),
            factorization=data.get("factorization"),
        )
