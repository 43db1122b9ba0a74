"""Verification reports: JSON (stable keys) and a plain-text summary.

JSON schema::

    {
      "suite": str, "version": str, "overall": "pass" | "fail",
      "groups":    [{"name", "definition", "order", "fingerprint",
                     "lattice": {"subgroups", "classes", "source"}, "wall_time"}],
      "checks":    [{"id", "group", "passed", "skipped", "detail", "cases",
                     "witness", "extra"}],
      "witnesses": [{"check", "group", "data"}],
      "timings":   {"total": float, ...},
      "notes":     [str]
    }
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..checks import Check

SCHEMA_KEYS = ("suite", "version", "overall", "groups", "checks", "witnesses", "timings", "notes")


@dataclass
class GroupRecord:
    name: str
    definition: str
    order: int
    fingerprint: str
    lattice: dict = field(default_factory=dict)
    wall_time: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    version: str = "1"
    groups: list[GroupRecord] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.skipped)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def skipped(self) -> list[Check]:
        return [c for c in self.checks if c.skipped]

    def add_checks(self, checks: list[Check], group: str = "") -> None:
        for c in checks:
            if group and not c.group:
                c.group = group
            self.checks.append(c)
            if c.witness is not None:
                self.witnesses.append({"check": c.id, "group": c.group, "data": c.witness})

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "overall": self.overall,
            "groups": [asdict(g) for g in self.groups],
            "checks": [c.to_dict() for c in self.checks],
            "witnesses": self.witnesses,
            "timings": self.timings,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(
            suite=d["suite"],
            version=d.get("version", "1"),
            groups=[GroupRecord(**g) for g in d.get("groups", [])],
            checks=[Check.from_dict(c) for c in d.get("checks", [])],
            witnesses=list(d.get("witnesses", [])),
            timings=dict(d.get("timings", {})),
            notes=list(d.get("notes", [])),
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.overall.upper()}"]
        for n in self.notes:
            lines.append(f"  note: {n}")
        for g in self.groups:
            lat = g.lattice
            lat_s = f", {lat.get('subgroups')} subgroups / {lat.get('classes')} classes ({lat.get('source')})" if lat else ""
            lines.append(f"  group {g.name} order {g.order}{lat_s}, {g.wall_time:.2f}s")
        for c in self.checks:
            status = "SKIP" if c.skipped else ("PASS" if c.passed else "FAIL")
            where = f" [{c.group}]" if c.group else ""
            lines.append(f"  {status} {c.id}{where}: {c.detail}")
        fails = [c for c in self.checks if not c.passed and not c.skipped]
        lines.append(f"  {len(self.checks) - len(fails) - len(self.skipped)} passed, {len(fails)} failed, "
                     f"{len(self.skipped)} skipped in {self.timings.get('total', 0.0):.2f}s")
        return "\n".join(lines)


def emit(report: VerificationReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (report.to_json() + "\n").encode()
    if fmt == "text":
        return (report.to_text() + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
