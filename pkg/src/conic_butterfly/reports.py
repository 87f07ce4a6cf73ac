"""Check verdicts and their machine-readable text form.

A report is one block:

    report <claim>
    verdict <HOLDS|VIOLATED|DEGENERATE>
    [reason <text>]
    [witness <name> <kind> <value>]...
    [residual <value>]
    [replay: indented scenario document]
    end

Verdicts are three-valued on purpose: the theorems assume generic
position, and randomized inputs will land on the exceptional sets, so the
checkers classify those draws instead of failing on them.  VIOLATED always
carries an exact nonzero residual.
"""

from __future__ import annotations

import enum
from typing import Optional, Sequence, Tuple

from .conics import Conic
from .projective import CrossRatioValue, ProjLine, ProjPoint


class Verdict(enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    DEGENERATE = "DEGENERATE"

    def __str__(self):
        return self.value


CLAIM_ORDER = ("mono", "jap", "nut", "sack", "pascal", "damn", "cutl")


def format_value(obj) -> Tuple[str, str]:
    """(kind, text) for anything a report can carry."""
    if isinstance(obj, ProjPoint):
        return ("point", str(obj))
    if isinstance(obj, ProjLine):
        return ("line", str(obj))
    if isinstance(obj, CrossRatioValue):
        return ("ratio", str(obj))
    if isinstance(obj, Conic):
        return ("conic", str(obj))
    if isinstance(obj, str):
        return ("text", obj)
    return ("scalar", str(obj))


class CheckReport:
    """Outcome of one check: verdict plus every intermediate named value."""

    __slots__ = ("claim", "verdict", "witnesses", "residual", "reason", "replay")

    def __init__(self, claim: str, verdict: Verdict,
                 witnesses: Sequence[tuple] = (), residual=None,
                 reason: str = "", replay: Optional[str] = None):
        self.claim = claim
        self.verdict = verdict
        self.witnesses = tuple(witnesses)
        self.residual = residual
        self.reason = reason
        self.replay = replay
        if verdict is Verdict.VIOLATED and residual is None:
            raise ValueError("a VIOLATED report must carry its residual")

    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def witness(self, name: str):
        for key, obj in self.witnesses:
            if key == name:
                return obj
        raise KeyError(f"report has no witness {name!r}")

    def has_witness(self, name: str) -> bool:
        return any(key == name for key, _ in self.witnesses)

    def to_text(self) -> str:
        lines = [f"report {self.claim}", f"verdict {self.verdict}"]
        if self.reason:
            lines.append(f"reason {self.reason}")
        for name, obj in self.witnesses:
            kind, text = format_value(obj)
            lines.append(f"witness {name} {kind} {text}")
        if self.residual is not None:
            _, text = format_value(self.residual)
            lines.append(f"residual {text}")
        if self.replay is not None:
            lines.append("replay")
            lines.extend("  " + l for l in self.replay.splitlines())
            lines.append("end replay")
        lines.append("end")
        return "\n".join(lines)

    def __repr__(self):
        return f"CheckReport({self.claim}, {self.verdict})"


def degenerate(claim: str, reason: str, witnesses: Sequence[tuple] = ()) -> CheckReport:
    return CheckReport(claim, Verdict.DEGENERATE, witnesses, reason=reason)


def exit_status(reports) -> int:
    """0 when everything HOLDS, 1 on any VIOLATED, 2 when nothing better
    than DEGENERATE was reached (or nothing ran at all)."""
    reports = list(reports)
    if any(r.verdict is Verdict.VIOLATED for r in reports):
        return 1
    if reports and all(r.verdict is Verdict.HOLDS for r in reports):
        return 0
    return 2
