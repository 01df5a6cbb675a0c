"""Exception hierarchy and the failure value returned by randomised pipelines.

Contract violations raise; algorithmic dead ends are returned as :class:`Failure`
so callers can retry, report or render them without unwinding the stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class DecompForgeError(Exception):
    """Base class for every error raised by decomp-forge."""


class InvalidInstanceError(DecompForgeError, ValueError):
    """The instance violates an operation's structural precondition."""


class InvalidInputError(DecompForgeError, ValueError):
    """An argument is malformed or outside the operation's domain."""


class InvalidBarrierError(InvalidInputError):
    """A divisibility barrier was requested whose total vector lies in its lattice."""


class TooLargeError(DecompForgeError, ValueError):
    """The instance exceeds the configured bound of an exhaustive routine."""


class ImpossibleStateError(DecompForgeError, RuntimeError):
    """An internal invariant broke; this always indicates a bug or a breached precondition."""


class ConfigError(DecompForgeError, ValueError):
    """An experiment or settings file could not be interpreted."""


class CancelledError(DecompForgeError):
    """A long-running solve observed its cancellation token."""


@dataclass(frozen=True, slots=True)
class Failure:
    """Outcome of a pipeline stage that ran out of options.

    Attributes:
        stage: Name of the stage that failed (e.g. ``"cover_leave"``).
        reason: Short human readable explanation.
        witness: The object that blocked progress (an edge, triple, vertex, ...).
        diagnostics: Free-form statistics gathered up to the failure.
    """

    stage: str
    reason: str
    witness: Any = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        witness = self.witness
        if isinstance(witness, (tuple, frozenset, set)):
            witness = sorted(witness) if isinstance(witness, (frozenset, set)) else list(witness)
        return {"stage": self.stage, "reason": self.reason, "witness": witness, "diagnostics": dict(self.diagnostics)}


class StageFailure(DecompForgeError):
    """Raised inside a pipeline to abandon the current attempt; carries the :class:`Failure`."""

    def __init__(self, failure: Failure) -> None:
        super().__init__(f"[{failure.stage}] {failure.reason}")
        self.failure = failure

    @classmethod
    def at(cls, stage: str, reason: str, witness: Any = None, **diagnostics: Any) -> StageFailure:
        return cls(Failure(stage=stage, reason=reason, witness=witness, diagnostics=diagnostics))
