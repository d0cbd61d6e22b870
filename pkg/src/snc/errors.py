"""Exception types and the counterexample channel shared by all modules."""
from __future__ import annotations

from dataclasses import dataclass, field


class SncError(Exception):
    """Base class for all errors raised by this package."""


class LoopRejected(SncError):
    pass


class DigonRejected(SncError):
    pass


class DuplicateArc(SncError):
    pass


class NotATournament(SncError):
    pass


class NegativeWeight(SncError):
    pass


class TooLarge(SncError):
    pass


class NotMissing(SncError):
    pass


class NotAllGood(SncError):
    pass


class NotAViolation(SncError):
    pass


class BadProfile(SncError):
    pass


class ParseError(SncError):
    """Input text could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass
class CounterexampleReport:
    """Full state dump produced when a guaranteed step fails.

    These reports are the science-alarm channel: they are only created
    when something the underlying theory promises can never happen did
    happen, and they carry enough state to replay the instance.
    """

    stage: str
    description: str
    state: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"stage": self.stage, "description": self.description, "state": self.state}


class InternalTheoremViolation(SncError):
    """A step that is guaranteed by a proved statement failed.

    Never swallowed: callers surface the attached CounterexampleReport.
    """

    def __init__(self, report: CounterexampleReport):
        super().__init__(f"{report.stage}: {report.description}")
        self.report = report


class NoWitnessFound(SncError):
    """The exhaustive fallback found no vertex with the weighted SNP.

    An instance triggering this would refute the second neighborhood
    conjecture, so it is reported as a counterexample, not an error state.
    """

    def __init__(self, report: CounterexampleReport):
        super().__init__(f"{report.stage}: {report.description}")
        self.report = report


class MoveLimitExceeded(SncError):
    """Local search ran out of moves; carries the last order and the
    violations that remained."""

    def __init__(self, order, violations, moves: int):
        super().__init__(f"no certified order after {moves} moves; {len(violations)} violations remain")
        self.order = order
        self.violations = violations
        self.moves = moves
