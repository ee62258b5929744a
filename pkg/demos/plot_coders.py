"""
What a coder sees
=================

Each coder maps a value to a signed 64-bit key.  Short strings get unique
keys; longer ones share a key with everything that has the same prefix.
"""

from datetime import datetime, timezone
from decimal import Decimal

from huskysort import get_coder

for name in ("ascii", "english", "english6", "unicode"):
    coder = get_coder(name)
    print(f"{name:>8}: up to {coder.params.perfect_length} characters are exact")

ascii_coder = get_coder("ascii")
for word in ("a", "abc", "abd", "staircase", "staircases"):
    key = ascii_coder.encode(word)
    print(f"{word!r:>14} -> {key:>20}  0x{key & 0xFFFF_FFFF_FFFF_FFFF:016x}")

# "staircase" and "staircases" agree on nine characters, so their keys tie
print(ascii_coder.encode("staircase") == ascii_coder.encode("staircases"))

# the 5-bit English coder folds case
english = get_coder("english")
print(english.encode("Husky") == english.encode("husky"))

# perfection is decided per array
print(ascii_coder.husky_encode(["short", "words"]).perfect)
print(ascii_coder.husky_encode(["short", "words", "considerably"]).perfect)

# numbers, dates and tuples
print(get_coder("double").encode(-0.0) == get_coder("double").encode(0.0))
print(get_coder("bigdecimal").encode(Decimal("3.14159")) < get_coder("bigdecimal").encode(Decimal("3.2")))
print(get_coder("date").encode(datetime(1970, 1, 1, 0, 0, 1, tzinfo=timezone.utc)))
pair = get_coder("tuple:int/32,ascii/32")
print(pair.encode((1, "zebra")) < pair.encode((2, "aardvark")))
