"""Benchmark harness: corpora, input generators, timed trials, reports."""

from __future__ import annotations

import csv
import io
import logging
import random
import re
import statistics
import string
import time
from dataclasses import dataclass, field
from decimal import Decimal
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .coders import HuskyCoder, get_coder
from .core_sorts import SortStats, dual_pivot_quicksort, payload_insertion_sort, stable_adaptive_merge
from .pipeline import HuskySortConfig, husky_sort, husky_sort_stable

log = logging.getLogger(__name__)

_PUNCT = re.escape(string.punctuation)
_LETTER = r"[^\W\d_]"
REGEX_LEIPZIG = re.compile(r"[~\t]*\t((?:[\s" + _PUNCT + r"，]*" + _LETTER + r"+)*)")
REGEX_STRINGSPLITTER = re.compile(r"[\s" + _PUNCT + r"，]")

CORPUS_FORMATS = ("leipzig_sentences", "plain_words")
INPUT_KINDS = ("english_words", "unicode_cjk", "ascii_random", "long", "int", "double",
               "bigint", "bigdecimal", "date", "tuple")
ALGORITHMS = ("husky_intro", "husky_merge", "dual_pivot", "adaptive_merge", "insertion")
HUSKY_ALGORITHMS = ("husky_intro", "husky_merge")
CSV_COLUMNS = ("algorithm", "n", "median_ns", "mean_ns", "normalized", "comparisons",
               "swaps", "array_accesses", "cleanup_ran", "residual_inversions")

#: Default coder for each input family.
DEFAULT_CODERS = {
    "english_words": "ascii", "unicode_cjk": "unicode", "ascii_random": "ascii",
    "long": "long", "int": "int", "double": "double", "bigint": "bigint",
    "bigdecimal": "bigdecimal", "date": "date", "tuple": "tuple:int/32,ascii/32",
}


def fixture_path() -> Path:
    """Path of the bundled synthetic Leipzig-format corpus."""
    return Path(str(resources.files("huskysort") / "data" / "leipzig_fixture.txt"))


@dataclass
class CorpusSpec:
    path: Path
    format: str = "leipzig_sentences"
    min_word_length: int = 2
    limit: Optional[int] = None

    def __post_init__(self):
        self.path = Path(self.path)
        if self.format not in CORPUS_FORMATS:
            raise ValueError(f"unknown corpus format {self.format!r}")
        if self.min_word_length < 1:
            raise ValueError("min_word_length must be at least 1")


def split_line_into_strings(line: str) -> list[str]:
    """Words of one ``<id>\\t<sentence>`` line; empty if the line does not match."""
    m = REGEX_LEIPZIG.search(line)
    if not m:
        return []
    return REGEX_STRINGSPLITTER.split(m.group(1))


def load_corpus_words(spec: CorpusSpec) -> list[str]:
    """Words of a corpus file in order of appearance, duplicates kept."""
    try:
        f = open(spec.path, encoding="utf-8")
    except FileNotFoundError:
        log.warning("Cannot find resource: %s", spec.path)
        return []
    words = []
    with f:
        for line in f:
            line = line.rstrip("\n")
            if spec.format == "leipzig_sentences":
                candidates = split_line_into_strings(line)
            else:
                candidates = line.split()
            for w in candidates:
                if len(w) >= spec.min_word_length:
                    words.append(w)
                    if spec.limit is not None and len(words) >= spec.limit:
                        return words
    return words


def _english(words: Sequence[str]) -> list[str]:
    return [w for w in words if w.isascii()]


def generate_input(kind: str, n: int, seed=0, corpus: Optional[Sequence[str]] = None) -> list:
    """A reproducible list of ``n`` elements of the given family.

    ``english_words`` samples with replacement from the ASCII words of
    ``corpus`` (the bundled fixture when omitted).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    if kind == "english_words":
        if corpus is None:
            corpus = load_corpus_words(CorpusSpec(fixture_path()))
        pool = _english(corpus)
        if not pool:
            raise ValueError("english_words needs a corpus with at least one ASCII word")
        return [pool[i] for i in rng.integers(0, len(pool), size=n).tolist()]
    if kind == "unicode_cjk":
        lengths = rng.integers(1, 5, size=n).tolist()
        cps = rng.integers(0x4E00, 0xA000, size=sum(lengths)).tolist()
        out, pos = [], 0
        for length in lengths:
            out.append("".join(map(chr, cps[pos:pos + length])))
            pos += length
        return out
    if kind == "ascii_random":
        lengths = rng.integers(1, 13, size=n).tolist()
        codes = rng.integers(32, 127, size=sum(lengths)).tolist()
        out, pos = [], 0
        for length in lengths:
            out.append("".join(map(chr, codes[pos:pos + length])))
            pos += length
        return out
    if kind == "long":
        return rng.integers(-(1 << 63), (1 << 63) - 1, size=n, endpoint=True,
                            dtype=np.int64).tolist()
    if kind == "int":
        return rng.integers(-(1 << 31), (1 << 31) - 1, size=n, endpoint=True).tolist()
    if kind == "double":
        bits = rng.integers(-(1 << 63), (1 << 63) - 1, size=n, endpoint=True, dtype=np.int64)
        values = bits.view(np.float64)
        bad = ~np.isfinite(values)
        while bad.any():
            values[bad] = rng.integers(-(1 << 63), (1 << 63) - 1, size=int(bad.sum()),
                                       endpoint=True, dtype=np.int64).view(np.float64)
            bad = ~np.isfinite(values)
        return values.tolist()
    if kind == "bigint":
        nbits = rng.integers(1, 129, size=n).tolist()
        signs = rng.integers(0, 2, size=n).tolist()
        bits = random.Random(int(rng.integers(1 << 32)))
        return [(-1 if s else 1) * (bits.getrandbits(b) | (1 << (b - 1)))
                for b, s in zip(nbits, signs)]
    if kind == "bigdecimal":
        digits = rng.integers(1, 25, size=n).tolist()
        exps = rng.integers(-30, 31, size=n).tolist()
        signs = rng.integers(0, 2, size=n).tolist()
        out = []
        for d, e, s in zip(digits, exps, signs):
            coeff = "".join(map(str, rng.integers(0, 10, size=d).tolist()))
            out.append(Decimal(f"{'-' if s else ''}{coeff}E{e}"))
        return out
    if kind == "date":
        span = 200 * 365 * 86_400 * 10**9
        ns = rng.integers(-span, span, size=n, dtype=np.int64)
        return list(ns.astype("datetime64[ns]"))
    if kind == "tuple":
        ints = rng.integers(-(1 << 31), (1 << 31) - 1, size=n, endpoint=True).tolist()
        small = rng.integers(0, 64, size=n).tolist()
        words = generate_input("ascii_random", n, rng.integers(1 << 32))
        return [(i % 97 if s < 32 else i, w[:4]) for i, s, w in zip(ints, small, words)]
    raise ValueError(f"unknown input kind {kind!r}; choose from {', '.join(INPUT_KINDS)}")


def derive_seed(seed: int, n: int) -> int:
    """Per-size seed shared by every algorithm at that size."""
    return int(np.random.SeedSequence([seed, n]).generate_state(1)[0])


# ---------------------------------------------------------------------------
# trials


class TrialError(AssertionError):
    """A sort produced output that is not the reference ordering."""


@dataclass
class TrialRow:
    algorithm: str
    n: int
    median_ns: float
    mean_ns: float
    stats: SortStats
    cleanup_ran: Optional[bool] = None
    residual_inversions: Optional[int] = None
    normalized: float = float("nan")
    times_ns: list = field(default_factory=list)


def _sorter(algorithm: str, coder: Optional[HuskyCoder], cfg: HuskySortConfig) -> Callable:
    if algorithm in HUSKY_ALGORITHMS and coder is None:
        raise ValueError(f"{algorithm} needs a coder")
    if algorithm == "husky_intro":
        return lambda xs, c=cfg: husky_sort(xs, coder, c)
    if algorithm == "husky_merge":
        return lambda xs, c=cfg: husky_sort_stable(xs, coder, c)
    if algorithm == "dual_pivot":
        return lambda xs, c=cfg: dual_pivot_quicksort(xs, stats=SortStats())
    if algorithm == "adaptive_merge":
        return lambda xs, c=cfg: stable_adaptive_merge(xs, stats=SortStats())
    if algorithm == "insertion":
        return lambda xs, c=cfg: payload_insertion_sort(xs, stats=SortStats())
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


def _check(output, reference, algorithm):
    if output == reference:
        return
    if len(output) != len(reference):
        raise TrialError(f"{algorithm}: length {len(output)} != {len(reference)}")
    bad = next(i for i, (a, b) in enumerate(zip(output, reference)) if a != b)
    raise TrialError(f"{algorithm}: output differs from reference at index {bad}: "
                     f"{output[bad]!r} != {reference[bad]!r} (n={len(output)})")


def run_trial(algorithm: str, data: Sequence, runs: int = 5, warmups: int = 2,
              coder: Optional[HuskyCoder] = None,
              cfg: Optional[HuskySortConfig] = None,
              reference: Optional[list] = None) -> TrialRow:
    """Time ``algorithm`` on fresh copies of ``data``.

    Every output, warmup or timed, is checked against the reference sort; a
    mismatch raises :class:`TrialError`.  Counters and residual inversions
    come from one extra untimed, instrumented run.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    cfg = cfg or HuskySortConfig()
    if reference is None:
        reference = sorted(data)
    sort = _sorter(algorithm, coder, cfg)
    for _ in range(warmups):
        xs = list(data)
        sort(xs)
        _check(xs, reference, algorithm)
    times = []
    for _ in range(runs):
        xs = list(data)
        t0 = time.perf_counter_ns()
        sort(xs)
        times.append(time.perf_counter_ns() - t0)
        _check(xs, reference, algorithm)

    xs = list(data)
    stats = SortStats()
    row = TrialRow(algorithm, len(data), statistics.median(times), statistics.fmean(times),
                   stats, times_ns=times)
    if algorithm in HUSKY_ALGORITHMS:
        instrumented = HuskySortConfig(**{**cfg.__dict__, "collect_stats": True})
        outcome = _sorter(algorithm, coder, instrumented)(xs)
        stats.merge(outcome.stats)
        row.cleanup_ran = outcome.cleanup_ran
        row.residual_inversions = outcome.residual_inversions
    else:
        {"dual_pivot": dual_pivot_quicksort, "adaptive_merge": stable_adaptive_merge,
         "insertion": payload_insertion_sort}[algorithm](xs, stats=stats)
    _check(xs, reference, algorithm)
    return row


@dataclass
class BenchmarkConfig:
    algorithms: Sequence[str] = ("husky_intro", "dual_pivot", "adaptive_merge")
    coder: Optional[str] = None
    sizes: Sequence[int] = (1000, 4000, 16000)
    runs: int = 5
    warmups: int = 2
    seed: int = 0
    cleanup: str = "auto"
    auto_threshold: int = 50_000
    normalize_to: Optional[str] = None
    input_kind: str = "english_words"
    corpus: Optional[str] = None

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        self.sizes = tuple(int(n) for n in self.sizes)
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if any(n < 0 for n in self.sizes):
            raise ValueError("sizes must be nonnegative")
        if self.input_kind not in INPUT_KINDS:
            raise ValueError(f"unknown input kind {self.input_kind!r}")
        if self.normalize_to is None:
            self.normalize_to = "dual_pivot" if "dual_pivot" in self.algorithms else self.algorithms[0]
        if self.normalize_to not in self.algorithms:
            raise ValueError(f"normalize_to={self.normalize_to!r} is not among the algorithms")
        if self.coder is None:
            self.coder = DEFAULT_CODERS[self.input_kind]


@dataclass
class BenchmarkReport:
    rows: list = field(default_factory=list)
    baseline: str = ""
    notes: list = field(default_factory=list)

    def row(self, algorithm: str, n: int) -> TrialRow:
        return next(r for r in self.rows if r.algorithm == algorithm and r.n == n)


def compare_algorithms(cfg: BenchmarkConfig, corpus: Optional[Sequence[str]] = None) -> BenchmarkReport:
    """Run every (algorithm, size) cell on the same per-size input."""
    if cfg.input_kind == "english_words" and corpus is None:
        path = cfg.corpus or fixture_path()
        corpus = load_corpus_words(CorpusSpec(path))
    coder = get_coder(cfg.coder, seed=cfg.seed)
    hcfg = HuskySortConfig(cleanup=cfg.cleanup, auto_threshold=cfg.auto_threshold, seed=cfg.seed)
    report = BenchmarkReport(baseline=cfg.normalize_to)
    for n in cfg.sizes:
        data = generate_input(cfg.input_kind, n, derive_seed(cfg.seed, n), corpus)
        reference = sorted(data)
        cells = [run_trial(a, data, cfg.runs, cfg.warmups, coder, hcfg, reference)
                 for a in cfg.algorithms]
        base = next(c for c in cells if c.algorithm == cfg.normalize_to).median_ns
        for c in cells:
            if c.algorithm == cfg.normalize_to:
                c.normalized = 1.0
            elif base > 0:
                c.normalized = c.median_ns / base
        report.rows.extend(cells)
    return report


def _cells(row: TrialRow) -> list[str]:
    return [
        row.algorithm,
        str(row.n),
        str(int(round(row.median_ns))),
        str(int(round(row.mean_ns))),
        f"{row.normalized:.2f}",
        str(row.stats.comparisons),
        str(row.stats.swaps),
        str(row.stats.array_accesses),
        "" if row.cleanup_ran is None else str(row.cleanup_ran).lower(),
        "" if row.residual_inversions is None else str(row.residual_inversions),
    ]


def emit_report(report: BenchmarkReport, format: str = "csv") -> str:
    """Render a report as CSV or as an aligned markdown table."""
    body = [_cells(r) for r in report.rows]
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(body)
        return buf.getvalue()
    if format == "markdown":
        return markdown_table(CSV_COLUMNS, body, report.notes)
    raise ValueError(f"unknown format {format!r}")


def markdown_table(header: Sequence[str], body: Sequence[Sequence[str]],
                   notes: Sequence[str] = ()) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
    lines = ["| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |",
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    for r in body:
        lines.append("| " + " | ".join(c.rjust(w) for c, w in zip(r, widths)) + " |")
    text = "\n".join(lines) + "\n"
    if notes:
        text += "\n" + "\n".join(notes) + "\n"
    return text
