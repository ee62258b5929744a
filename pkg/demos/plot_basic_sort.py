"""
Sorting words with Huskysort
============================

Encode, sort the keys with the words in tow, and only repair if needed.
"""

import random

from huskysort import HuskySortConfig, get_coder, husky_sort

rng = random.Random(0)
alphabet = "abcdefghijklmnopqrstuvwxyz"

# short lowercase words: every one fits in a 64-bit ascii key
words = ["".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 10))) for _ in range(100_000)]
outcome = husky_sort(words, get_coder("ascii"))
print("first words:", words[:5])
print("perfect coding:", outcome.coding_was_perfect, "| cleanup ran:", outcome.cleanup_ran)

# words that share long stems tie on their first nine characters,
# so the keys leave them in arbitrary order and the cleanup pass runs
stems = ["transform", "understand", "interstate", "counterpart"]
words = [rng.choice(stems) + "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 5)))
         for _ in range(100_000)]
cfg = HuskySortConfig(collect_stats=True)
outcome = husky_sort(words, get_coder("ascii"), cfg)
print("perfect coding:", outcome.coding_was_perfect, "| cleanup ran:", outcome.cleanup_ran)
print("inversions left for the cleanup:", outcome.residual_inversions)
print("sorted:", words == sorted(words))

# the counters split the work between the key phase and the cleanup
for name, value in outcome.stats.as_dict().items():
    print(f"  {name:>18}: {value}")
