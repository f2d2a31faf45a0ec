"""Structured residual reports with a stable JSON schema.

Schema:  {equation, fields, params, tolerance,
          points: [{x, t, raw_re, raw_im, rel}], max_rel, pass}

Serialization is deterministic (sorted keys, repr floats) so identical runs
produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

__all__ = ["PointResidual", "ResidualReport"]


@dataclass(frozen=True)
class PointResidual:
    x: float
    t: float
    raw: complex
    rel: float


@dataclass
class ResidualReport:
    equation: str
    fields: tuple[str, ...]
    params: dict[str, complex]
    tolerance: float
    points: list[PointResidual]
    informational: bool = False
    note: str = ""

    @property
    def max_rel(self) -> float:
        return max((p.rel for p in self.points), default=float("nan"))

    @property
    def passed(self) -> bool:
        return bool(self.points) and self.max_rel < self.tolerance

    def to_dict(self) -> dict:
        d = {
            "equation": self.equation,
            "fields": list(self.fields),
            "params": {k: _num(v) for k, v in self.params.items()},
            "tolerance": self.tolerance,
            "points": [
                {"x": p.x, "t": p.t, "raw_re": p.raw.real, "raw_im": p.raw.imag,
                 "rel": p.rel}
                for p in self.points
            ],
            "max_rel": self.max_rel,
            "pass": self.passed,
        }
        if self.informational:
            d["informational"] = True
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["x,t,raw_re,raw_im,rel"]
        for p in self.points:
            lines.append(f"{p.x!r},{p.t!r},{p.raw.real!r},{p.raw.imag!r},{p.rel!r}")
        return "\n".join(lines) + "\n"


def _num(v) -> float | list[float]:
    v = complex(v)
    if v.imag == 0:
        return v.real
    return [v.real, v.imag]
