import logging
from collections.abc import Callable
from typing import TypeVar

from decompforge.core.errors import Failure, StageFailure
from decompforge.core.rng import derive_seed

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_with_retries(
    fn: Callable[[int, int], T],
    attempts: int,
    seed: int,
    stage: str,
) -> T | Failure:
    """Run ``fn(attempt_seed, attempt)`` until it stops raising :class:`StageFailure`.

    Stage failures are soft blockers: the attempt is logged and retried with a fresh
    seed derived from ``(seed, stage, attempt)``. Any other exception is a hard blocker
    and propagates immediately without retry.

    Args:
        fn: Callable receiving the derived seed and the zero-based attempt number.
        attempts: Maximum number of attempts (at least one is always made).
        seed: Master seed of the run.
        stage: Stage name used for stream derivation and log prefixes.

    Returns:
        The first successful result, or the :class:`Failure` of the last attempt with the
        number of attempts recorded in its diagnostics.
    """
    last: Failure | None = None
    total = max(1, attempts)
    for attempt in range(total):
        attempt_seed = derive_seed(seed, stage, attempt)
        try:
            return fn(attempt_seed, attempt)
        except StageFailure as exc:
            last = exc.failure
            if attempt < total - 1:
                logger.warning(
                    "[%s][seed=%s][attempt %d/%d] %s failed: %s",
                    stage,
                    seed,
                    attempt + 1,
                    total,
                    last.stage,
                    last.reason,
                )
            else:
                logger.error(
                    "[%s][seed=%s] gave up after %d attempts; last failure at %s: %s",
                    stage,
                    seed,
                    total,
                    last.stage,
                    last.reason,
                )
    assert last is not None
    diagnostics = dict(last.diagnostics)
    diagnostics["attempts"] = total
    return Failure(stage=last.stage, reason=last.reason, witness=last.witness, diagnostics=diagnostics)
