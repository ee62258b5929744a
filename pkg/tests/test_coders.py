import datetime as dt
import random
import string
import threading
from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from huskysort.coders import (ASCII, ENGLISH, ENGLISH6, UNICODE, BigDecimalCoder,
                              BigIntegerCoder, DateTimeCoder, DoubleCoder, IntCoder, LongCoder,
                              StringCoder, StringCoderParams, TupleCoder, ascii_to_long,
                              big_decimal_to_long, big_integer_to_long, double_to_long,
                              english_case_dependent_to_long, english_to_long, get_coder,
                              husky_encode_array, husky_encode_sequences, perturb,
                              string_to_long, unicode_to_long)

PAIRS = 100_000


def bitstring_oracle(s, width, mask, shift):
    """The packing rule written a second way: concatenate fixed-width binary digits."""
    slots = 64 // width
    units = []
    for ch in s:
        cp = ord(ch)
        if cp > 0xFFFF:
            cp -= 0x10000
            units += [0xD800 + (cp >> 10), 0xDC00 + (cp & 0x3FF)]
        else:
            units.append(cp)
    bits = ""
    for u in units[:slots]:
        v = u & mask if mask else u
        bits += format(v % (1 << width), f"0{width}b")
    bits = bits.ljust(width * slots, "0")
    u = int(bits, 2) >> shift
    return u - (1 << 64) if u >= 1 << 63 else u


CODERS = {
    "ascii": (ascii_to_long, 7, 0x7F, 0),
    "unicode": (unicode_to_long, 16, 0xFFFF, 1),
    "english": (english_to_long, 5, 0x1F, 0),
    "english6": (english_case_dependent_to_long, 6, 0x3F, 0),
}


@pytest.mark.parametrize("name", list(CODERS))
def test_empty_string_is_zero(name):
    assert CODERS[name][0]("") == 0


def test_frozen_string_keys():
    assert ascii_to_long("a") == 97 * 2**56
    assert unicode_to_long("a") == 0x0030_8000_0000_0000
    assert english_to_long("a") == english_to_long("A") == 1 * 2**55
    assert ascii_to_long("a") == bitstring_oracle("a", 7, 0x7F, 0)


@pytest.mark.parametrize("name", list(CODERS))
@settings(max_examples=200)
@given(st.text(max_size=14))
def test_string_coder_matches_bitstring_oracle(name, s):
    fn, width, mask, shift = CODERS[name]
    assert fn(s) == bitstring_oracle(s, width, mask, shift)


@pytest.mark.parametrize("name", list(CODERS))
@settings(max_examples=50)
@given(st.lists(st.text(max_size=12), max_size=30))
def test_vectorized_keys_match_scalar(name, xs):
    coder = get_coder(name)
    keys = coder.encode_keys(xs)
    assert keys.dtype == np.int64
    assert keys.tolist() == [coder.encode(x) for x in xs]


def test_vectorized_handles_astral_and_long_strings():
    coder = get_coder("unicode")
    xs = ["\U0001F600abc", "x\U00010000", "plain text longer than four", "日本語のテキスト"]
    assert coder.encode_keys(xs).tolist() == [bitstring_oracle(s, 16, 0xFFFF, 1) for s in xs]


def test_ordering_examples():
    assert ascii_to_long("abc") < ascii_to_long("abd")
    assert english_to_long("zz") > english_to_long("za")
    assert unicode_to_long("中文") < unicode_to_long("中斉")


@pytest.mark.parametrize("coder, limit", [("ascii", 9), ("english", 12), ("english6", 10),
                                          ("unicode", 3)])
def test_perfect_for_length_boundary(coder, limit):
    c = get_coder(coder)
    assert c.perfect_for_length(limit)
    assert not c.perfect_for_length(limit + 1)


def test_params_validation_and_max_length():
    assert (ASCII.max_length, UNICODE.max_length, ENGLISH.max_length, ENGLISH6.max_length) == (9, 4, 12, 10)
    with pytest.raises(ValueError):
        StringCoderParams(bit_width=5, mask=0x3F)
    with pytest.raises(ValueError):
        StringCoderParams(bit_width=0)


def rand_ascii(rng, lo, hi):
    return "".join(chr(rng.randrange(1, 128)) for _ in range(rng.randrange(lo, hi + 1)))


def rand_letters(rng, lo, hi, alphabet):
    return "".join(rng.choice(alphabet) for _ in range(rng.randrange(lo, hi + 1)))


def cmp(a, b):
    return (a > b) - (a < b)


def utf16_key(s):
    return s.encode("utf-16-be", "surrogatepass")


@pytest.mark.parametrize("name, gen, natural", [
    ("ascii", lambda r: rand_ascii(r, 0, 12), lambda s: s),
    ("english", lambda r: rand_letters(r, 0, 15, string.ascii_lowercase), lambda s: s),
    ("english6", lambda r: rand_letters(r, 0, 13, string.ascii_letters), lambda s: s),
    ("unicode", lambda r: "".join(chr(r.randrange(0x4E00, 0x4E10)) for _ in range(r.randrange(0, 6))),
     utf16_key),
])
def test_string_weak_monotonicity_random_pairs(name, gen, natural):
    rng = random.Random(name)
    coder = get_coder(name)
    limit = coder.params.perfect_length
    xs = [gen(rng) for _ in range(PAIRS)]
    ys = [gen(rng) for _ in range(PAIRS)]
    kx, ky = coder.encode_keys(xs), coder.encode_keys(ys)
    for x, y, a, b in zip(xs, ys, kx.tolist(), ky.tolist()):
        c = cmp(natural(x), natural(y))
        if c < 0:
            assert a <= b
            if len(x) <= limit and len(y) <= limit:
                assert a < b, (x, y)
        elif c == 0:
            assert a == b


def test_english6_distinct_short_strings_have_distinct_keys():
    rng = random.Random(4)
    xs = {rand_letters(rng, 1, 10, string.ascii_letters) for _ in range(20_000)}
    keys = {english_case_dependent_to_long(s) for s in xs}
    assert len(keys) == len(xs)


def test_cjk_pairs_follow_code_unit_order():
    rng = random.Random(8)
    for _ in range(2000):
        base = [chr(rng.randrange(0x4E00, 0x9FFF)) for _ in range(4)]
        other = list(base)
        i = rng.randrange(4)
        other[i] = chr(rng.randrange(0x4E00, 0x9FFF))
        a, b = "".join(base), "".join(other)
        ka, kb = unicode_to_long(a), unicode_to_long(b)
        if i < 3 or (ord(base[3]) >> 1) != (ord(other[3]) >> 1):
            assert cmp(a, b) == cmp(ka, kb)
        else:
            assert ka == kb  # the post-shift drops the last unit's low bit


def test_unicode_keys_nonnegative():
    assert unicode_to_long("￿￿￿￿") > 0


@settings(max_examples=200)
@given(st.text(alphabet=string.ascii_lowercase, max_size=9), st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=5))
def test_prefix_law(s, extra):
    t = (s + extra)[: max(len(s) + 1, 1)]
    for fn, limit in ((ascii_to_long, 9), (english_to_long, 12)):
        if len(t) <= limit:
            assert fn(s) < fn(t)  # lowercase letters never mask to zero
        assert fn(s) <= fn(s + extra)


@settings(max_examples=100)
@given(st.text(min_size=12, max_size=12), st.text(max_size=5), st.text(max_size=5))
def test_truncation_collision_law(prefix, a, b):
    for name in CODERS:
        fn = CODERS[name][0]
        assert fn(prefix + a) == fn(prefix + b)


def test_masking_collision_is_silent():
    # 0xE9 & 0x7F == 0x69 ('i'): out-of-domain characters collide, no error
    assert ascii_to_long("é") == ascii_to_long("i")


# --- sequence and array encoding


def test_husky_encode_sequences_flags():
    c = get_coder("ascii")
    assert husky_encode_sequences(["abc", "x" * 9], c).perfect
    assert not husky_encode_sequences(["abc", "x" * 10, "q"], c).perfect
    # out-of-domain characters sort fine but cannot be trusted to the keys
    assert not husky_encode_sequences(["abc", "é"], c).perfect
    assert not husky_encode_sequences(["a\0", "a"], c).perfect
    assert not husky_encode_sequences(["Ab"], get_coder("english")).perfect
    assert husky_encode_sequences(["Ab", "zZ"], get_coder("english6")).perfect
    assert not husky_encode_sequences(["a1"], get_coder("english6")).perfect
    assert husky_encode_sequences(["日本語"], get_coder("unicode")).perfect
    assert not husky_encode_sequences(["日本語!"], get_coder("unicode")).perfect
    assert not husky_encode_sequences(["\U0001F600"], get_coder("unicode")).perfect
    empty = husky_encode_sequences([], c)
    assert empty.perfect and len(empty) == 0


def test_husky_encode_array_examples():
    long_coder = LongCoder()
    coding = husky_encode_array([5, -1, 0], long_coder)
    assert coding.keys.tolist() == [5, -1, 0] and coding.perfect
    empty = husky_encode_array([], BigIntegerCoder())
    assert len(empty) == 0 and empty.perfect is False


def test_husky_encode_array_matches_second_pass():
    rng = np.random.default_rng(1)
    values = rng.normal(size=1000).tolist()
    coding = husky_encode_array(values, DoubleCoder())
    assert coding.keys.tolist() == [double_to_long(v) for v in values]


def test_coders_are_deterministic():
    rng = random.Random(2)
    words = [rand_ascii(rng, 0, 15) for _ in range(500)]
    for name in CODERS:
        c = get_coder(name)
        assert c.encode_keys(words).tolist() == get_coder(name).encode_keys(list(words)).tolist()


# --- numeric coders


def test_long_and_int_identity():
    for c in (LongCoder(), IntCoder()):
        assert c.encode(0) == 0 and c.encode(-1) == -1 and c.perfect()
    with pytest.raises(OverflowError):
        LongCoder().encode(2**63)


def test_long_monotone_random_pairs():
    rng = np.random.default_rng(3)
    a = rng.integers(-(2**63), 2**63 - 1, size=PAIRS, dtype=np.int64)
    b = rng.integers(-(2**63), 2**63 - 1, size=PAIRS, dtype=np.int64)
    c = LongCoder()
    assert np.array_equal(np.sign(c.encode_keys(a) - 0) >= 0, a >= 0)
    assert np.array_equal(c.encode_keys(a) < c.encode_keys(b), a < b)


def test_double_examples():
    assert double_to_long(-1.0) < double_to_long(0.0) < double_to_long(1.0)
    assert double_to_long(-0.0) == double_to_long(0.0)
    assert double_to_long(float("nan")) > double_to_long(float("inf"))
    assert double_to_long(float("-inf")) < double_to_long(-1e308)


def test_double_pairs_agree_with_float_compare():
    rng = np.random.default_rng(5)
    raw = rng.integers(-(2**63), 2**63 - 1, size=(2, PAIRS), dtype=np.int64).view(np.float64)
    finite = np.isfinite(raw[0]) & np.isfinite(raw[1])
    a, b = raw[0][finite], raw[1][finite]
    a[:100] = b[:100]  # include ties
    c = DoubleCoder()
    ka, kb = c.encode_keys(a), c.encode_keys(b)
    assert np.array_equal((ka > kb).astype(int) - (ka < kb).astype(int),
                          (a > b).astype(int) - (a < b).astype(int))


def test_double_nan_makes_coding_imperfect():
    c = DoubleCoder()
    assert c.husky_encode([1.0, 2.0]).perfect
    assert not c.husky_encode([1.0, float("nan")]).perfect


def test_bigint_examples_and_collision():
    assert big_integer_to_long(0) == 0
    assert big_integer_to_long(-5) == -5
    big = 1 << 200
    assert big_integer_to_long(big) == big_integer_to_long(big + 1)
    assert not BigIntegerCoder().perfect()


@settings(max_examples=300)
@given(st.integers(), st.integers())
def test_bigint_weakly_monotone(a, b):
    if a <= b:
        assert big_integer_to_long(a) <= big_integer_to_long(b)
    if a < b and abs(a) < 2**62 and abs(b) < 2**62:
        assert big_integer_to_long(a) < big_integer_to_long(b)


def test_bigint_monotone_random_pairs():
    rng = random.Random(6)
    vals = [rng.choice((-1, 1)) * rng.getrandbits(rng.randrange(1, 300)) for _ in range(2 * PAIRS)]
    codes = [big_integer_to_long(v) for v in vals]
    for i in range(0, len(vals), 2):
        if vals[i] < vals[i + 1]:
            assert codes[i] <= codes[i + 1]


def test_bigdecimal_examples():
    assert big_decimal_to_long(Decimal(0)) == 0
    assert big_decimal_to_long(Decimal("1.5")) < big_decimal_to_long(Decimal("2"))
    assert big_decimal_to_long(Decimal("-2")) < big_decimal_to_long(Decimal("-1.5"))
    assert big_decimal_to_long(Decimal("1.0")) == big_decimal_to_long(Decimal("1.00"))
    same15 = Decimal("1.23456789012345")
    assert big_decimal_to_long(same15 + Decimal("1e-20")) == big_decimal_to_long(same15)
    assert not BigDecimalCoder().perfect()


@settings(max_examples=300)
@given(st.decimals(allow_nan=False, allow_infinity=True), st.decimals(allow_nan=False, allow_infinity=True))
def test_bigdecimal_weakly_monotone(a, b):
    if a <= b:
        assert big_decimal_to_long(a) <= big_decimal_to_long(b)


def test_bigdecimal_distinguishes_small_distinct_values():
    rng = random.Random(7)
    for _ in range(5000):
        a = Decimal(rng.randrange(-10**12, 10**12)).scaleb(-rng.randrange(0, 6))
        b = Decimal(rng.randrange(-10**12, 10**12)).scaleb(-rng.randrange(0, 6))
        assert cmp(a, b) == cmp(big_decimal_to_long(a), big_decimal_to_long(b))


# --- date-times


def test_datetime_examples():
    c = DateTimeCoder()
    epoch = dt.datetime(1970, 1, 1, tzinfo=dt.timezone.utc)
    assert c.encode(epoch) == 0
    assert c.encode(np.datetime64("1970-01-01T00:00:00.000000001", "ns")) == 1
    assert c.encode(epoch + dt.timedelta(microseconds=1)) == 1000
    assert c.encode(dt.datetime(1970, 1, 1)) == 0  # naive taken as UTC
    base = dt.datetime(2000, 1, 1, tzinfo=dt.timezone.utc)
    assert DateTimeCoder(base).encode(base) == 0


def test_datetime_order_on_random_instants():
    rng = np.random.default_rng(9)
    ns = rng.integers(-(2**62), 2**62, size=1000)
    instants = [np.datetime64(int(v), "ns") for v in ns]
    c = DateTimeCoder()
    coding = c.husky_encode(instants)
    assert coding.perfect
    assert np.array_equal(np.argsort(coding.keys, kind="stable"), np.argsort(ns, kind="stable"))


def test_datetime_out_of_window_saturates():
    c = DateTimeCoder()
    far = [dt.datetime(1, 1, 1, tzinfo=dt.timezone.utc), dt.datetime(2000, 1, 1),
           dt.datetime(9999, 1, 1, tzinfo=dt.timezone.utc)]
    coding = c.husky_encode(far)
    assert not coding.perfect
    assert coding.keys[0] == -(2**63) and coding.keys[2] == 2**63 - 1


# --- tuples


def test_tuple_single_part_full_budget_is_identity():
    c = TupleCoder([(LongCoder(), 64)])
    for v in (-(2**63), -1, 0, 5, 2**63 - 1):
        assert c.encode((v,)) == v
    assert c.perfect()


def test_tuple_budget_validation():
    with pytest.raises(ValueError):
        TupleCoder([(LongCoder(), 40), (IntCoder(), 32)])
    with pytest.raises(ValueError):
        TupleCoder([(IntCoder(), 0)])


def test_tuple_first_field_dominates():
    c = get_coder("tuple:int/32,ascii/32")
    assert c.encode((1, "zzzz")) < c.encode((2, "a"))
    assert c.encode((-5, "a")) < c.encode((-5, "b"))
    assert not c.perfect()  # ascii keys do not fit 32 bits


def test_tuple_exact_fit_orders_like_tuples():
    c = TupleCoder([(IntCoder(), 32), (IntCoder(), 32)])
    assert c.perfect()
    rng = random.Random(10)
    ts = [(rng.randrange(-50, 50), rng.randrange(-(2**31), 2**31)) for _ in range(5000)]
    keys = [c.encode(t) for t in ts]
    for i in range(0, len(ts) - 1, 2):
        assert cmp(ts[i], ts[i + 1]) == cmp(keys[i], keys[i + 1])


def test_tuple_small_int_short_ascii_order():
    c = get_coder("tuple:int/32,ascii/32")
    rng = random.Random(11)
    ts = [(rng.randrange(-3, 3), rand_letters(rng, 0, 4, "abc")) for _ in range(4000)]
    keys = [c.encode(t) for t in ts]
    for i in range(0, len(ts) - 1, 2):
        # ascii keys keep their top 32 bits: 4 chars fit with room to spare
        assert cmp(ts[i], ts[i + 1]) == cmp(keys[i], keys[i + 1])


def test_tuple_parse():
    c = get_coder("tuple:int/32,ascii/32")
    assert c.parse("7\tabc") == (7, "abc")
    assert c.parse("7,abc") == (7, "abc")


# --- perturbation


def test_perturb_q0_reproduces_inner():
    inner = get_coder("ascii")
    p = perturb(inner, 0.0, seed=1)
    xs = ["alpha", "beta", "gamma"] * 10
    assert p.encode_keys(xs).tolist() == inner.encode_keys(xs).tolist()
    assert p.husky_encode(xs).perfect


def test_perturb_q1_changes_nearly_everything():
    inner = LongCoder()
    xs = list(range(10_000))
    keys = perturb(inner, 1.0, seed=2).encode_keys(xs)
    assert np.mean(keys != np.arange(10_000)) > 0.999


def test_perturb_rate_within_binomial_bound():
    xs = list(range(10_000))
    keys = perturb(LongCoder(), 0.25, seed=3).encode_keys(xs)
    frac = np.mean(keys != np.arange(10_000))
    assert 0.23 <= frac <= 0.27


def test_perturb_deterministic_given_seed_and_imperfect():
    xs = list(range(1000))
    a = perturb(LongCoder(), 0.1, seed=4).encode_keys(xs)
    b = perturb(LongCoder(), 0.1, seed=4).encode_keys(xs)
    assert a.tolist() == b.tolist()
    assert not perturb(LongCoder(), 0.1).perfect()
    with pytest.raises(ValueError):
        perturb(LongCoder(), 1.5)


def test_perturb_concurrent_use_keeps_rate():
    coder = perturb(LongCoder(), 0.2, seed=5)
    xs = np.arange(20_000)
    fractions = []

    def work():
        for _ in range(5):
            fractions.append(np.mean(coder.encode_keys(xs) != xs))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(fractions) == 20
    assert all(0.18 < f < 0.22 for f in fractions)


# --- registry


@pytest.mark.parametrize("spec", ["ascii", "english", "english6", "unicode", "long", "int",
                                  "double", "bigint", "bigdecimal", "date",
                                  "tuple:int/32,ascii/32", "perturb:0.1:ascii"])
def test_get_coder_known_ids(spec):
    assert get_coder(spec) is not None


@pytest.mark.parametrize("spec", ["nope", "tuple:int", "perturb:0.1", "perturb:2:ascii"])
def test_get_coder_rejects(spec):
    with pytest.raises(ValueError):
        get_coder(spec)


def test_string_coder_is_reusable_object():
    c = StringCoder("ascii", ASCII)
    assert c.encode("a") == string_to_long("a", ASCII)
