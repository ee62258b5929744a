"""Huskysort: sort expensive-to-compare objects by cheap 64-bit keys first."""

from .analysis import (CostModelParams, count_inversions, estimate_p,
                       expected_random_inversions, model_husky_accesses,
                       model_merge_accesses, phase_time_model)
from .coders import (Coding, HuskyCoder, get_coder, husky_encode_array,
                     husky_encode_sequences, perturb, string_to_long, tuple_coder)
from .core_sorts import (SortStats, dual_heapsort, dual_insertion_sort, dual_introsort,
                         dual_merge_sort, dual_partition, dual_pivot_quicksort, floor_lg,
                         payload_insertion_sort, stable_adaptive_merge)
from .pipeline import HuskySortConfig, SortOutcome, husky_sort, husky_sort_stable

__version__ = "0.1.0"
