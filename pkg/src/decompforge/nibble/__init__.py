from decompforge.nibble.processes import (
    GreedyRun,
    NibbleResult,
    RoundStat,
    random_greedy_matching,
    random_greedy_run,
    rodl_nibble,
)

__all__ = ["GreedyRun", "NibbleResult", "RoundStat", "random_greedy_matching", "random_greedy_run", "rodl_nibble"]
