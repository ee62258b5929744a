"""The Huskysort pipeline: encode, sort keys with the payload in tow, repair."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import MutableSequence, Optional

import numpy as np

from . import _kernels as K
from .analysis import count_inversions
from .coders import HuskyCoder
from .core_sorts import (INSERTION_CUTOFF, SortStats, apply_permutation, floor_lg,
                         payload_insertion_sort, stable_adaptive_merge)

CLEANUP_STRATEGIES = ("auto", "adaptive_merge", "insertion")
AUTO_THRESHOLD = 50_000


@dataclass
class HuskySortConfig:
    """Knobs for :func:`husky_sort`.

    ``cleanup="auto"`` picks insertion sort below ``auto_threshold``
    elements and the adaptive merge from there up.  ``collect_stats`` adds
    an inversion count of the array between the key phase and the cleanup
    (an extra O(n log n) pass).
    """

    may_be_sorted: bool = False
    cleanup: str = "auto"
    auto_threshold: int = AUTO_THRESHOLD
    insertion_cutoff: int = INSERTION_CUTOFF
    seed: Optional[int] = 0
    collect_stats: bool = False

    def __post_init__(self):
        if self.cleanup == "merge":
            self.cleanup = "adaptive_merge"
        if self.cleanup not in CLEANUP_STRATEGIES:
            raise ValueError(f"unknown cleanup {self.cleanup!r}")
        if self.auto_threshold <= 0:
            raise ValueError("auto_threshold must be positive")
        if self.insertion_cutoff < 1:
            raise ValueError("insertion_cutoff must be at least 1")


@dataclass
class SortOutcome:
    stats: SortStats = field(default_factory=SortStats)
    coding_was_perfect: bool = True
    cleanup_ran: bool = False
    residual_inversions: Optional[int] = None


def shuffle_guard(xs: MutableSequence, cfg: HuskySortConfig) -> None:
    """Shuffle ``xs`` in place when the input may arrive presorted."""
    if not cfg.may_be_sorted or len(xs) < 2:
        return
    rng = np.random.default_rng(cfg.seed)
    apply_permutation(xs, rng.permutation(len(xs)))


def cleanup(xs: MutableSequence, cfg: HuskySortConfig, stats: SortStats) -> None:
    strategy = cfg.cleanup
    if strategy == "auto":
        strategy = "insertion" if len(xs) < cfg.auto_threshold else "adaptive_merge"
    if strategy == "insertion":
        payload_insertion_sort(xs, stats=stats)
    else:
        stable_adaptive_merge(xs, stats=stats)
    stats.cleanup_ran = True


def _husky(xs, coder, cfg, key_phase):
    cfg = cfg or HuskySortConfig()
    stats = SortStats()
    n = len(xs)
    if n <= 1:
        return SortOutcome(stats=stats)
    coding = coder.husky_encode(xs)
    keys = np.ascontiguousarray(coding.keys, dtype=np.int64)
    refs = np.arange(n, dtype=np.int64)
    counters = np.zeros(K.N_COUNTERS, dtype=np.int64)
    key_phase(keys, refs, n, cfg, counters)
    stats.add_counters(counters)
    apply_permutation(xs, refs)
    outcome = SortOutcome(stats=stats, coding_was_perfect=coding.perfect)
    if cfg.collect_stats:
        outcome.residual_inversions = count_inversions(xs)
    if coding.perfect:
        return outcome
    cleanup(xs, cfg, stats)
    outcome.cleanup_ran = True
    return outcome


def _intro_phase(keys, refs, n, cfg, counters):
    K.introsort(keys, refs, 0, n, 2 * floor_lg(n), cfg.insertion_cutoff, counters)


def _merge_phase(keys, refs, n, cfg, counters):
    K.merge_sort(keys, refs, 0, n, cfg.insertion_cutoff, counters)


def husky_sort(xs: MutableSequence, coder: HuskyCoder,
               cfg: Optional[HuskySortConfig] = None) -> SortOutcome:
    """Sort ``xs`` in place.

    The keys are introsorted while the elements follow every move; if the
    coding was perfect that already is the answer, otherwise a cleanup
    sort fixes whatever the keys got wrong.  Not stable.
    """
    cfg = cfg or HuskySortConfig()
    shuffle_guard(xs, cfg)
    return _husky(xs, coder, cfg, _intro_phase)


def husky_sort_stable(xs: MutableSequence, coder: HuskyCoder,
                      cfg: Optional[HuskySortConfig] = None) -> SortOutcome:
    """Like :func:`husky_sort` but with a stable merge sort as the key phase.

    Stable end to end (both cleanup strategies are stable).  Never shuffles.
    """
    return _husky(xs, coder, cfg, _merge_phase)
