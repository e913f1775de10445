"""Verification reports returned by every identity checker."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["VerificationReport"]


@dataclass
class VerificationReport:
    """Outcome of one verification suite.

    `depth` describes what was actually checked and never overstates the
    truncation-reliability bound computed by the verifier.  On failure,
    `failures` carries the first offending indices with both exact values.
    A skipped report (e.g. a symmetry check whose det-G precondition does
    not hold) is neither a pass nor a failure.
    """

    suite: str
    passed: bool
    depth: str
    skipped: bool = False
    failures: list[str] = field(default_factory=list)
    notes: str = ""
    bound: int | None = None  # numeric reliability bound, when one applies

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        msg = f"{self.suite}: {status} ({self.depth})"
        if self.notes:
            msg += f" -- {self.notes}"
        for f in self.failures[:3]:
            msg += f"\n  first failure: {f}"
        return msg
