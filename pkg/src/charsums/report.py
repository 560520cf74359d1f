"""Structured verification reports: machine-parseable, bit-for-bit
reproducible for a fixed instance and seed (no wall-clock data in the
JSON; the text renderer may decorate with timings)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

SCHEMA = "charsums.verify@1"

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class CheckRecord:
    name: str
    status: str
    detail: dict = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    instance: dict
    seed: int = 0
    schema: str = SCHEMA
    checks: list[CheckRecord] = dc_field(default_factory=list)
    polygons: dict = dc_field(default_factory=dict)
    budget: dict = dc_field(default_factory=dict)

    def add(self, name: str, status: str, **detail) -> CheckRecord:
        rec = CheckRecord(name, status, detail)
        self.checks.append(rec)
        return rec

    def status_of(self, name: str) -> str | None:
        for rec in self.checks:
            if rec.name == name:
                return rec.status
        return None

    @property
    def all_passed(self) -> bool:
        return all(rec.status != FAIL for rec in self.checks)

    def as_dict(self) -> dict:
        return {
            "schema": self.schema,
            "instance": self.instance,
            "seed": self.seed,
            "checks": [rec.as_dict() for rec in self.checks],
            "polygons": self.polygons,
            "budget": self.budget,
            "all_passed": self.all_passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = [f"schema: {self.schema}"]
        inst = self.instance
        lines.append(
            f"instance: q={inst.get('q')} n={inst.get('n')} degrees={inst.get('degrees')} "
            f"c={inst.get('char_numerators')}")
        for rec in self.checks:
            detail = ""
            if rec.detail:
                parts = [f"{k}={v}" for k, v in sorted(rec.detail.items())
                         if isinstance(v, (str, int, bool))]
                if parts:
                    detail = "  (" + ", ".join(parts) + ")"
            lines.append(f"  {rec.status:7s} {rec.name}{detail}")
        for name, poly in self.polygons.items():
            pts = " ".join(f"({x},{y})" for x, y in poly.get("decimal", []))
            lines.append(f"polygon {name}: {pts}")
        if self.budget:
            lines.append(f"budget: {self.budget}")
        lines.append("overall: " + (PASS if self.all_passed else FAIL))
        return "\n".join(lines)
