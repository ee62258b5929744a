"""
A small benchmark on English words
==================================

Times Huskysort, dual-pivot quicksort and the adaptive merge sort on words
drawn from the bundled Leipzig-format fixture, normalized to dual-pivot.
"""

from huskysort.bench import BenchmarkConfig, compare_algorithms, emit_report

cfg = BenchmarkConfig(algorithms=("husky_intro", "husky_merge", "dual_pivot", "adaptive_merge"),
                      sizes=(1000, 4000, 64000), runs=3, warmups=1)
report = compare_algorithms(cfg)
print(emit_report(report, "markdown"))

# the same data as CSV, ready for plotting elsewhere
print(emit_report(report, "csv"))
