"""A uniform record for verification outcomes."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Check:
    """Outcome of one named property check.

    ``cases`` counts the instances quantified over; ``witness`` carries
    structured data (subgroup elements, an offending element, ...) for
    reports.
    """

    id: str
    passed: bool
    detail: str = ""
    cases: int = 0
    witness: dict[str, Any] | None = None
    skipped: bool = False
    group: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(**d)


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed or c.skipped for c in checks)


def subgroup_witness(S, **more) -> dict:
    G = S.group
    out = {"order": S.order, "elements": [int(x) for x in S.elements],
           "labels": [G.label(x) for x in S.elements[:12]]}
    out.update(more)
    return out
