"""Husky coders: cheap, order-preserving 64-bit images of expensive values.

A coder maps each element to a signed 64-bit key such that equal elements
get equal keys and ``a <= b`` implies ``code(a) <= code(b)`` on the coder's
domain.  A coder is *perfect* for an input when the key order is a strict
embedding of the natural order, so sorting by key alone leaves nothing to
repair.
"""

from __future__ import annotations

import datetime as _dt
import re
import threading
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Callable, Sequence

import numpy as np

BITS_LONG = 64
INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1
_MASK64 = (1 << 64) - 1


def to_signed64(u: int) -> int:
    u &= _MASK64
    return u - (1 << 64) if u >> 63 else u


@dataclass(frozen=True)
class Coding:
    """Keys for an encoded array plus whether they are a perfect encoding."""

    keys: np.ndarray
    perfect: bool

    def __len__(self) -> int:
        return len(self.keys)


@dataclass(frozen=True)
class StringCoderParams:
    bit_width: int
    mask: int = 0
    post_shift: int = 0

    def __post_init__(self):
        if not 1 <= self.bit_width <= BITS_LONG:
            raise ValueError(f"bit_width out of range: {self.bit_width}")
        if self.mask and self.mask >> self.bit_width:
            raise ValueError(f"mask {self.mask:#x} wider than {self.bit_width} bits")
        if self.post_shift not in (0, 1):
            raise ValueError("post_shift must be 0 or 1")

    @property
    def max_length(self) -> int:
        return BITS_LONG // self.bit_width


    @property
    def perfect_length(self) -> int:
        """Longest string whose every bit survives the final shift."""
        return (BITS_LONG - self.post_shift) // self.bit_width


ASCII = StringCoderParams(bit_width=7, mask=0x7F)
UNICODE = StringCoderParams(bit_width=16, mask=0xFFFF, post_shift=1)
ENGLISH = StringCoderParams(bit_width=5, mask=0x1F)
ENGLISH6 = StringCoderParams(bit_width=6, mask=0x3F)

# characters each coder maps injectively, in order, and away from the zero pad
ASCII_DOMAIN = "\x01-\x7f"
UNICODE_DOMAIN = "\x01-\uffff"
ENGLISH_DOMAIN = "a-z"
ENGLISH6_DOMAIN = "A-Za-z"


def utf16_units(s: str) -> list[int]:
    """UTF-16 code units of ``s`` (what a 16-bit ``char`` string would hold)."""
    if s.isascii():
        return list(s.encode("ascii"))
    raw = s.encode("utf-16-be", "surrogatepass")
    return [(raw[i] << 8) | raw[i + 1] for i in range(0, len(raw), 2)]


def string_to_long(s: str, params: StringCoderParams) -> int:
    """Pack the leading code units of ``s`` into a signed 64-bit key.

    Each of the first ``max_length`` units is masked (unless ``mask`` is 0),
    shifted in from the right, the result is left-aligned by zero padding,
    then logically shifted right by ``post_shift``.
    """
    width = params.bit_width
    max_length = params.max_length
    units = utf16_units(s)[:max_length]
    result = 0
    if params.mask:
        for u in units:
            result = ((result << width) | (u & params.mask)) & _MASK64
    else:
        for u in units:
            result = ((result << width) | u) & _MASK64
    result = (result << (width * (max_length - len(units)))) & _MASK64
    return to_signed64(result >> params.post_shift)


def ascii_to_long(s: str) -> int:
    return string_to_long(s, ASCII)


def unicode_to_long(s: str) -> int:
    return string_to_long(s, UNICODE)


def english_to_long(s: str) -> int:
    return string_to_long(s, ENGLISH)


def english_case_dependent_to_long(s: str) -> int:
    return string_to_long(s, ENGLISH6)


# ---------------------------------------------------------------------------
# coder protocol


class HuskyCoder:
    """Base coder.

    Subclasses implement :meth:`encode`.  ``key_offset``/``key_width``
    describe the key range (``key + key_offset`` lies in
    ``[0, 2**key_width)``), which :class:`TupleCoder` needs to pack fields.
    """

    name = "coder"
    key_offset = 1 << 63
    key_width = 64

    def encode(self, x) -> int:
        raise NotImplementedError

    def perfect(self) -> bool:
        return False

    def encode_keys(self, xs: Sequence) -> np.ndarray:
        return np.fromiter((self.encode(x) for x in xs), dtype=np.int64, count=len(xs))

    def husky_encode(self, xs: Sequence) -> Coding:
        return husky_encode_array(xs, self)

    def parse(self, text: str):
        """Turn one line of text into an element of this coder's domain."""
        return text

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


def husky_encode_array(xs: Sequence, coder: HuskyCoder) -> Coding:
    """Encode every element; perfection is the coder-level flag."""
    return Coding(coder.encode_keys(xs), coder.perfect())


def husky_encode_sequences(xs: Sequence, coder: "StringCoder") -> Coding:
    """Encode character sequences; perfect iff every string is perfectly codable.

    A string qualifies when it is short enough and made only of characters
    in the coder's domain.  Checks stop at the first string that fails.
    """
    perfect = all(map(coder.perfect_for, xs))
    return Coding(coder.encode_keys(xs), perfect)


class StringCoder(HuskyCoder):
    """Packs leading characters into a key.

    ``domain`` is a regex character class of the characters that keep their
    order after masking; strings with others still sort correctly, they
    just make the coding imperfect.
    """

    def __init__(self, name: str, params: StringCoderParams, domain: str = UNICODE_DOMAIN):
        self.name = name
        self.params = params
        self.domain = domain
        self._perfect_re = re.compile(f"[{domain}]{{0,{params.perfect_length}}}")
        self.key_offset = 0
        self.key_width = BITS_LONG - params.post_shift
        if params.bit_width * params.max_length < self.key_width:
            self.key_width = params.bit_width * params.max_length

    def encode(self, x: str) -> int:
        return string_to_long(x, self.params)

    def perfect_for_length(self, length: int) -> bool:
        return length <= self.params.perfect_length

    def perfect_for(self, s: str) -> bool:
        return self._perfect_re.fullmatch(s) is not None

    def husky_encode(self, xs):
        return husky_encode_sequences(xs, self)

    def encode_keys(self, xs):
        n = len(xs)
        p = self.params
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        try:
            chars = np.array(xs, dtype=f"U{p.max_length}")
        except (TypeError, ValueError):
            return super().encode_keys(xs)
        if chars.ndim != 1:
            return super().encode_keys(xs)
        units = chars.view(np.uint32).reshape(n, p.max_length).astype(np.uint64)
        width = np.uint64(p.bit_width)
        mask = np.uint64(p.mask)
        acc = np.zeros(n, dtype=np.uint64)
        for i in range(p.max_length):
            col = units[:, i] & mask if p.mask else units[:, i]
            acc = (acc << width) | col
        if p.post_shift:
            acc >>= np.uint64(p.post_shift)
        keys = acc.view(np.int64)
        # code points above the BMP are two UTF-16 units: redo those rows exactly
        wide = np.flatnonzero((units > 0xFFFF).any(axis=1))
        for i in wide.tolist():
            keys[i] = self.encode(xs[i])
        return keys


class LongCoder(HuskyCoder):
    """Identity on signed 64-bit integers."""

    name = "long"

    def encode(self, x) -> int:
        x = int(x)
        if not INT64_MIN <= x <= INT64_MAX:
            raise OverflowError(f"{x} does not fit in 64 bits")
        return x

    def perfect(self):
        return True

    def encode_keys(self, xs):
        return np.array(xs, dtype=np.int64).reshape(len(xs))

    def parse(self, text):
        return int(text)


class IntCoder(LongCoder):
    """Sign-preserving widening of 32-bit integers."""

    name = "int"
    key_offset = 1 << 31
    key_width = 32


def double_to_long(x: float) -> int:
    """Order-preserving integer image of a float; -0.0 and 0.0 coincide, NaN sorts last."""
    return int(_double_keys(np.array([x], dtype=np.float64))[0])


def _double_keys(values: np.ndarray) -> np.ndarray:
    values = values + 0.0  # folds -0.0 onto 0.0
    bits = values.view(np.int64)
    keys = np.where(bits < 0, bits ^ np.int64(INT64_MAX), bits)
    keys[np.isnan(values)] = INT64_MAX
    return keys


class DoubleCoder(HuskyCoder):
    name = "double"

    def encode(self, x) -> int:
        return double_to_long(float(x))

    def perfect(self):
        return True

    def encode_keys(self, xs):
        return _double_keys(np.asarray(xs, dtype=np.float64).reshape(len(xs)))

    def husky_encode(self, xs):
        values = np.asarray(xs, dtype=np.float64).reshape(len(xs))
        return Coding(_double_keys(values), not np.isnan(values).any())

    def parse(self, text):
        return float(text)


# big numbers: positive codes stay below 2**63, so negation is always safe
_BIG_SMALL = 1 << 62
_BIGINT_MANT_BITS = 48
_BIGINT_EXP_MAX = (1 << 14) - 1
_DEC_DIGITS = 15
_DEC_MANT_BITS = 50
_DEC_EXP_BIAS = 2048
_DEC_EXP_MAX = (1 << 12) - 1


def big_integer_to_long(x: int) -> int:
    """Weakly monotone key for arbitrary-precision integers.

    Magnitudes below ``2**62`` map to themselves.  Larger ones map above all
    of those, exponent first, then the 48 bits that follow the leading one.
    """
    m = abs(x)
    if m < _BIG_SMALL:
        code = m
    else:
        exp = m.bit_length() - 62
        if exp - 1 > _BIGINT_EXP_MAX:
            code = INT64_MAX
        else:
            top = (m >> (m.bit_length() - 1 - _BIGINT_MANT_BITS)) & ((1 << _BIGINT_MANT_BITS) - 1)
            code = _BIG_SMALL + ((exp - 1) << _BIGINT_MANT_BITS) + top
    return -code if x < 0 else code


def big_decimal_to_long(x: Decimal) -> int:
    """Weakly monotone key for decimals: biased adjusted exponent, then 15 digits."""
    x = Decimal(x)
    if x.is_nan():
        return INT64_MAX
    if x.is_infinite():
        return -INT64_MAX if x < 0 else INT64_MAX
    if x.is_zero():
        return 0
    sign, digits, _ = x.as_tuple()
    exp = x.adjusted() + _DEC_EXP_BIAS
    mant_full = (1 << _DEC_MANT_BITS) - 1
    if exp > _DEC_EXP_MAX:
        code = (_DEC_EXP_MAX << _DEC_MANT_BITS) | mant_full
    elif exp < 1:
        code = 1 << _DEC_MANT_BITS
    else:
        lead = digits[:_DEC_DIGITS]
        mant = int("".join(map(str, lead))) * 10 ** (_DEC_DIGITS - len(lead))
        code = (exp << _DEC_MANT_BITS) | mant
    return -code if sign else code


def big_number_to_long(x) -> int:
    if isinstance(x, Decimal):
        return big_decimal_to_long(x)
    return big_integer_to_long(int(x))


class BigIntegerCoder(HuskyCoder):
    name = "bigint"

    def encode(self, x) -> int:
        return big_integer_to_long(int(x))

    def parse(self, text):
        return int(text)


class BigDecimalCoder(HuskyCoder):
    name = "bigdecimal"

    def encode(self, x) -> int:
        return big_decimal_to_long(x)

    def parse(self, text):
        return Decimal(text)


EPOCH = _dt.datetime(1970, 1, 1, tzinfo=_dt.timezone.utc)
_NS_PER_UNIT = {
    "D": 86_400 * 10**9, "h": 3_600 * 10**9, "m": 60 * 10**9, "s": 10**9,
    "ms": 10**6, "us": 10**3, "ns": 1,
}


def _nanos_since(t, base: _dt.datetime) -> int:
    if isinstance(t, np.datetime64):
        unit, count = np.datetime_data(t.dtype)
        if unit not in _NS_PER_UNIT:
            raise ValueError(f"unsupported datetime64 unit {unit!r}")
        if np.isnat(t):
            raise ValueError("NaT has no position in time")
        ns = int(t.astype(np.int64)) * count * _NS_PER_UNIT[unit]
        return ns - _nanos_since(base, EPOCH)
    if not isinstance(t, _dt.datetime):
        raise TypeError(f"not a date-time: {t!r}")
    if t.tzinfo is None:
        t = t.replace(tzinfo=_dt.timezone.utc)
    delta = t - base
    return (delta.days * 86_400 + delta.seconds) * 10**9 + delta.microseconds * 1000


class DateTimeCoder(HuskyCoder):
    """Signed nanoseconds since a base epoch (1970-01-01T00:00Z by default).

    Accepts :class:`datetime.datetime` (naive values are taken as UTC) and
    :class:`numpy.datetime64`.  Instants outside the ~±292-year window
    saturate and make the coding imperfect.
    """

    name = "date"

    def __init__(self, base: _dt.datetime = EPOCH):
        if base.tzinfo is None:
            base = base.replace(tzinfo=_dt.timezone.utc)
        self.base = base

    def _raw(self, t) -> int:
        return _nanos_since(t, self.base)

    def encode(self, t) -> int:
        return min(max(self._raw(t), INT64_MIN), INT64_MAX)

    def perfect(self):
        return True

    def husky_encode(self, xs):
        raw = [self._raw(t) for t in xs]
        in_window = all(INT64_MIN <= r <= INT64_MAX for r in raw)
        keys = np.fromiter((min(max(r, INT64_MIN), INT64_MAX) for r in raw),
                           dtype=np.int64, count=len(raw))
        return Coding(keys, in_window)

    def parse(self, text):
        return np.datetime64(text.strip(), "ns")


class TupleCoder(HuskyCoder):
    """Concatenates the top ``budget`` bits of each field's key.

    The first field is most significant.  A field whose key range fits its
    budget is packed exactly; the composite is perfect only if every field
    is perfect and fits.
    """

    name = "tuple"

    def __init__(self, parts: Sequence[tuple[HuskyCoder, int]]):
        parts = list(parts)
        if not parts:
            raise ValueError("tuple coder needs at least one field")
        total = 0
        for coder, budget in parts:
            if budget < 1:
                raise ValueError(f"bit budget must be positive, got {budget}")
            total += budget
        if total > BITS_LONG:
            raise ValueError(f"bit budgets sum to {total} > {BITS_LONG}")
        self.parts = parts
        self.total_bits = total

    def encode(self, xs) -> int:
        if len(xs) != len(self.parts):
            raise ValueError(f"expected {len(self.parts)} fields, got {len(xs)}")
        packed = 0
        for (coder, budget), x in zip(self.parts, xs):
            u = coder.encode(x) + coder.key_offset
            u = min(max(u, 0), (1 << coder.key_width) - 1)
            if budget < coder.key_width:
                u >>= coder.key_width - budget
            packed = (packed << budget) | u
        packed <<= BITS_LONG - self.total_bits
        return packed - (1 << 63)

    def perfect(self):
        return all(c.perfect() and budget >= c.key_width for c, budget in self.parts)

    def parse(self, text):
        fields = text.split("\t") if "\t" in text else text.split(",")
        return tuple(c.parse(f) for (c, _), f in zip(self.parts, fields))


def tuple_coder(parts: Sequence[tuple[HuskyCoder, int]]) -> TupleCoder:
    return TupleCoder(parts)


class PerturbedCoder(HuskyCoder):
    """Replaces each key, with probability ``q``, by a uniform random 64-bit value.

    Draws come from one seeded generator, guarded by a lock, so a fixed seed
    and call sequence always gives the same keys.
    """

    def __init__(self, inner: HuskyCoder, q: float, seed=0):
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"error probability must be in [0, 1], got {q}")
        self.inner = inner
        self.q = q
        self.seed = seed
        self.name = f"perturb:{q}:{inner.name}"
        self.key_offset = inner.key_offset
        self.key_width = inner.key_width
        self._rng = np.random.default_rng(seed)
        self._lock = threading.Lock()

    def _perturb(self, keys: np.ndarray) -> np.ndarray:
        if self.q == 0.0 or len(keys) == 0:
            return keys
        with self._lock:
            hit = self._rng.random(len(keys)) < self.q
            noise = self._rng.integers(INT64_MIN, INT64_MAX, size=int(hit.sum()),
                                       dtype=np.int64, endpoint=True)
        keys = keys.copy()
        keys[hit] = noise
        return keys

    def encode(self, x) -> int:
        return int(self._perturb(np.array([self.inner.encode(x)], dtype=np.int64))[0])

    def encode_keys(self, xs):
        return self._perturb(self.inner.encode_keys(xs))

    def perfect(self):
        return self.q == 0.0 and self.inner.perfect()

    def husky_encode(self, xs):
        coding = self.inner.husky_encode(xs)
        return Coding(self._perturb(coding.keys), coding.perfect and self.q == 0.0)

    def parse(self, text):
        return self.inner.parse(text)


def perturb(inner: HuskyCoder, q: float, seed=0) -> PerturbedCoder:
    return PerturbedCoder(inner, q, seed)


class KeyedCoder(HuskyCoder):
    """Encodes ``key(x)`` with an inner coder, for records ordered by one field."""

    def __init__(self, inner: HuskyCoder, key: Callable[[Any], Any]):
        self.inner = inner
        self.key = key
        self.name = inner.name
        self.key_offset = inner.key_offset
        self.key_width = inner.key_width

    def encode(self, x):
        return self.inner.encode(self.key(x))

    def encode_keys(self, xs):
        return self.inner.encode_keys([self.key(x) for x in xs])

    def perfect(self):
        return self.inner.perfect()

    def husky_encode(self, xs):
        return self.inner.husky_encode([self.key(x) for x in xs])


_SIMPLE = {
    "ascii": lambda: StringCoder("ascii", ASCII, ASCII_DOMAIN),
    "english": lambda: StringCoder("english", ENGLISH, ENGLISH_DOMAIN),
    "english6": lambda: StringCoder("english6", ENGLISH6, ENGLISH6_DOMAIN),
    "unicode": lambda: StringCoder("unicode", UNICODE, UNICODE_DOMAIN),
    "long": LongCoder,
    "int": IntCoder,
    "double": DoubleCoder,
    "bigint": BigIntegerCoder,
    "bigdecimal": BigDecimalCoder,
    "date": DateTimeCoder,
}

CODER_IDS = tuple(_SIMPLE) + ("tuple:<coder>/<bits>,...", "perturb:<q>:<coder>")


def get_coder(spec: str, seed=0) -> HuskyCoder:
    """Build a coder from its identifier.

    ``tuple:int/32,ascii/32`` packs fields with the given bit budgets;
    ``perturb:0.1:ascii`` wraps any coder with a 10% per-key error rate.
    """
    spec = spec.strip()
    if spec in _SIMPLE:
        return _SIMPLE[spec]()
    if spec.startswith("tuple:"):
        parts = []
        for field in spec[len("tuple:"):].split(","):
            name, sep, bits = field.partition("/")
            if not sep:
                raise ValueError(f"tuple field needs a bit budget: {field!r}")
            parts.append((get_coder(name, seed), int(bits)))
        return TupleCoder(parts)
    if spec.startswith("perturb:"):
        q, sep, inner = spec[len("perturb:"):].partition(":")
        if not sep:
            raise ValueError(f"expected perturb:<q>:<coder>, got {spec!r}")
        return PerturbedCoder(get_coder(inner, seed), float(q), seed)
    raise ValueError(f"unknown coder {spec!r}; choose from {', '.join(CODER_IDS)}")
