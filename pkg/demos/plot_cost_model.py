"""
Counting array accesses
=======================

The cost model charges merge sort ``(4 + j) N log2 N + 2 N`` accesses and
Huskysort ``(c ln N + (6 + j) p + k + 1) N``.  Here both columns are
printed and then set against counts from real runs.
"""

import math

import numpy as np

from huskysort import SortStats, dual_introsort, get_coder
from huskysort.analysis import (STATED_HUSKY_COEFF, TABLE1_FITTED_COEFF, CostModelParams,
                                model_husky_accesses, model_merge_accesses, table1_rows)

print(f"{'N':>14} {'merge':>18} {'husky c=20/3':>18} {'husky c=6.4':>18}")
for row in table1_rows():
    print(f"{row['n']:>14,} {row['merge']:>18,.0f} {row['husky']:>18,.0f} {row['husky_stated']:>18,.0f}")

# how much does the choice of c matter?
for n in (10**3, 10**6):
    a = model_husky_accesses(n, CostModelParams(husky_linearithmic_coeff=STATED_HUSKY_COEFF))
    b = model_husky_accesses(n, CostModelParams(husky_linearithmic_coeff=TABLE1_FITTED_COEFF))
    print(f"N={n:,}: c=6.4 gives {a / b:.3f} of the c=20/3 figure")

# measured: accesses per element per ln N in the key phase
rng = np.random.default_rng(1)
for n in (10_000, 100_000, 1_000_000):
    keys = rng.integers(-(2**63), 2**63 - 1, size=n, dtype=np.int64)
    stats = SortStats()
    dual_introsort(keys, None, stats=stats)
    print(f"N={n:>9,}: {stats.array_accesses / (n * math.log(n)):.2f} accesses per N ln N")

# the merge model with exact log2, for comparison with the rounded form
for n in (1000, 10**6):
    print(n, round(model_merge_accesses(n)), round(model_merge_accesses(n, exact=True)))
