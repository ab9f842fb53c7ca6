"""Pass/fail reports produced by the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
OBSERVE = "observe"  # logged, never fatal (open conjectures)


def render_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [render_value(x) for x in v]
    return v


@dataclass
class CheckEntry:
    check: str
    params: dict[str, Any]
    status: str
    lhs: Any = None
    rhs: Any = None

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": {k: render_value(v) for k, v in self.params.items()},
            "status": self.status,
            "lhs": render_value(self.lhs),
            "rhs": render_value(self.rhs),
        }


@dataclass
class Report:
    name: str
    entries: list[CheckEntry] = field(default_factory=list)

    def record(
        self,
        check: str,
        params: dict[str, Any],
        ok: bool,
        lhs: Any = None,
        rhs: Any = None,
        fatal: bool = True,
    ) -> None:
        status = PASS if ok else (FAIL if fatal else OBSERVE)
        self.entries.append(CheckEntry(check, params, status, lhs, rhs))

    @property
    def ok(self) -> bool:
        """True iff no fatal check failed."""
        return all(e.status != FAIL for e in self.entries)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == FAIL]

    def merge(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    def to_json(self) -> list[dict[str, Any]]:
        return [e.to_json() for e in sorted(self.entries, key=lambda e: e.check)]

    def summary(self) -> str:
        counts = {PASS: 0, FAIL: 0, OBSERVE: 0}
        for e in self.entries:
            counts[e.status] += 1
        lines = [
            f"{self.name}: {counts[PASS]} passed, {counts[FAIL]} failed"
            + (f", {counts[OBSERVE]} observations" if counts[OBSERVE] else "")
        ]
        for e in self.entries:
            if e.status != PASS:
                lines.append(
                    f"  [{e.status.upper()}] {e.check} {e.params}: "
                    f"lhs={render_value(e.lhs)} rhs={render_value(e.rhs)}"
                )
        return "\n".join(lines)

    def dump_json(self) -> str:
        return json.dumps(self.to_json(), indent=2)
