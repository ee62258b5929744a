"""
How much can a coder get wrong?
===============================

Wrap a perfect coder so that a fraction ``q`` of keys are random, then
watch the inversions the cleanup pass has to remove, and the time.
"""

import time

import numpy as np

from huskysort import HuskySortConfig, husky_sort, perturb
from huskysort.analysis import expected_random_inversions
from huskysort.coders import IntCoder
from huskysort.core_sorts import stable_adaptive_merge

n = 50_000
x = expected_random_inversions(n)
values = np.random.default_rng(0).integers(-(2**31), 2**31, size=n).tolist()

husky_sort(list(values[:1000]), IntCoder())  # load the compiled kernels once

t0 = time.perf_counter()
stable_adaptive_merge(list(values))
t_merge = time.perf_counter() - t0

for q in (0.0, 0.01, 0.05, 0.1, 0.25, 0.5):
    xs = list(values)
    t0 = time.perf_counter()
    out = husky_sort(xs, perturb(IntCoder(), q, seed=1), HuskySortConfig(collect_stats=True))
    elapsed = time.perf_counter() - t0
    # a random key lands outside the 32-bit range and drags its element to an end
    print(f"q={q:<5} residual/X={out.residual_inversions / x:.3f}  (2q - q^2 = {2 * q - q * q:.3f})"
          f"  time vs adaptive merge: {elapsed / t_merge:.2f}")
