"""Verdicts and machine-readable check records shared by the analysis modules."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

SCHEMA_ID = "report.v1"


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_EVALUATED = "not-evaluated"
    NOT_APPLICABLE = "not-applicable"

    @classmethod
    def of(cls, ok: bool) -> "Verdict":
        return cls.HOLDS if ok else cls.FAILS

    def __str__(self):
        return self.value


def combine(*verdicts: Verdict) -> Verdict:
    """``fails`` dominates; otherwise ``holds`` if anything held."""
    vs = [Verdict(v) for v in verdicts]
    if Verdict.FAILS in vs:
        return Verdict.FAILS
    if Verdict.HOLDS in vs:
        return Verdict.HOLDS
    if Verdict.NOT_EVALUATED in vs:
        return Verdict.NOT_EVALUATED
    return Verdict.NOT_APPLICABLE


@dataclass
class Check:
    name: str
    verdict: Verdict
    values: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    citations: list[str] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": str(self.verdict),
            "values": jsonable(self.values),
            "residuals": {k: _residual(v) for k, v in sorted(self.residuals.items())},
            "citations": list(self.citations),
            "caveats": list(self.caveats),
        }


def _residual(x: float) -> float | None:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    # fixed significant digits keep the output byte-stable across platforms
    return float(f"{float(x):.6e}")


def jsonable(x: Any) -> Any:
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return _residual(x)
    if hasattr(x, "re") and hasattr(x, "im"):
        return [jsonable(x.re), jsonable(x.im)]
    return str(x)
