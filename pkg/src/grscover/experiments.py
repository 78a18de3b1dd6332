"""Deterministic Monte Carlo harness for puncture counts and covering radii.

Every trial derives its own generator from (master_seed, k, stream tag,
trial index), so results are independent of execution order and worker
count.  Aggregation keeps exact integer sums of values and squares; means
and sample standard deviations are materialized only when records are
built.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .code import GrsCode, Word
from .cover import CoverResult, grs_cover, grs_cover_baseline

# Stream tags mixed into per-trial seeds.  Tag 0 is the shared stream used
# when several algorithms must see identical inputs (paired comparison).
_STREAM_TAGS = {"shared": 0, "bw": 1, "gs": 2, "map": 3, "baseline": 4}

PUNCTURE_DECODERS = ("bw", "gs")
RADIUS_ALGORITHMS = ("map", "gs", "bw", "baseline")


def trial_generator(
    master_seed: int, k: int, stream: str, trial: int
) -> np.random.Generator:
    """The RNG for one trial, from a counter-based generator.

    The entropy tuple (master_seed, k, tag, trial) makes every stream
    independent and reproducible without any sequential state.
    """
    tag = _STREAM_TAGS[stream]
    ss = np.random.SeedSequence(entropy=(master_seed, k, tag, trial))
    return np.random.Generator(np.random.Philox(ss))


def _uniform_word(code: GrsCode, rng: np.random.Generator) -> Word:
    return Word(code.field, rng.integers(0, code.field.q, size=code.n))


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one Monte Carlo sweep over dimensions k_values."""

    q: int
    n: int
    k_values: tuple[int, ...]
    trials: int = 500
    master_seed: int = 0
    decoders: tuple[str, ...] = PUNCTURE_DECODERS
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "k_values", tuple(self.k_values))
        object.__setattr__(self, "decoders", tuple(self.decoders))
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if len(set(self.decoders)) != len(self.decoders) or not self.decoders:
            raise ValueError(f"decoders must be nonempty and unique: {self.decoders}")
        for k in self.k_values:
            GrsCode.default(self.q, self.n, k)  # validates q prime, 1 <= k <= n <= q


@dataclass(frozen=True)
class ExperimentRecord:
    """Aggregated outcome of `trials` runs of one (k, decoder) cell."""

    q: int
    n: int
    k: int
    decoder: str
    trials: int
    seed: int
    avg_punctures: float
    std_punctures: float
    avg_distance: float
    std_distance: float
    max_distance: int
    max_punctures: int
    runtime_ms: int


class _Tally:
    """Exact integer accumulator for one result stream."""

    __slots__ = ("count", "s_d", "s_d2", "s_p", "s_p2", "max_d", "max_p")

    def __init__(self) -> None:
        self.count = 0
        self.s_d = self.s_d2 = self.s_p = self.s_p2 = 0
        self.max_d = self.max_p = 0

    def add(self, distance: int, punctures: int) -> None:
        self.count += 1
        self.s_d += distance
        self.s_d2 += distance * distance
        self.s_p += punctures
        self.s_p2 += punctures * punctures
        self.max_d = max(self.max_d, distance)
        self.max_p = max(self.max_p, punctures)

    def merge(self, other: "_Tally") -> None:
        self.count += other.count
        self.s_d += other.s_d
        self.s_d2 += other.s_d2
        self.s_p += other.s_p
        self.s_p2 += other.s_p2
        self.max_d = max(self.max_d, other.max_d)
        self.max_p = max(self.max_p, other.max_p)


def _mean_std(total: int, total_sq: int, count: int) -> tuple[float, float]:
    mean = total / count
    if count < 2:
        return mean, 0.0
    var = (total_sq - total * total / count) / (count - 1)
    return mean, sqrt(max(var, 0.0))


def _check_guarantee(
    result: CoverResult, code: GrsCode, y: Word, seed: int, k: int, trial: int
) -> None:
    dmax = code.d - 1
    if result.distance > dmax or result.punctures > dmax:
        raise RuntimeError(
            "covering guarantee violated: "
            f"distance={result.distance}, punctures={result.punctures}, "
            f"limit={dmax}, master_seed={seed}, k={k}, "
            f"decoder={result.decoder_kind}, trial={trial}, "
            f"y={y.values.tolist()}"
        )


def _chunk_ranges(trials: int, workers: int) -> list[range]:
    per = (trials + workers - 1) // workers
    return [range(lo, min(lo + per, trials)) for lo in range(0, trials, per)]


def _run_chunks(fn, trials: int, workers: int) -> _Tally:
    """Run `fn(range)` over trial chunks and merge; merge order is fixed,
    and the merge operation is commutative, so the worker count never
    affects the result."""
    ranges = _chunk_ranges(trials, workers)
    total = _Tally()
    if workers == 1:
        for r in ranges:
            total.merge(fn(r))
        return total
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for tally in pool.map(fn, ranges):
            total.merge(tally)
    return total


def run_punctures(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Average puncture counts of the covering algorithm per (k, decoder).

    Each (k, decoder) cell draws its own `trials` uniform words and runs
    the covering loop; every trial is checked against the covering
    guarantee and a violation aborts the sweep with a diagnostic.
    """
    bad = set(config.decoders) - set(PUNCTURE_DECODERS)
    if bad:
        raise ValueError(f"puncture experiments accept bw/gs only, got {sorted(bad)}")
    records = []
    for k in config.k_values:
        code = GrsCode.default(config.q, config.n, k)
        for decoder in config.decoders:

            def chunk(trial_range: range, code=code, k=k, decoder=decoder) -> _Tally:
                tally = _Tally()
                for trial in trial_range:
                    rng = trial_generator(config.master_seed, k, decoder, trial)
                    y = _uniform_word(code, rng)
                    result = grs_cover(code, y, decoder)
                    _check_guarantee(result, code, y, config.master_seed, k, trial)
                    tally.add(result.distance, result.punctures)
                return tally

            start = time.perf_counter()
            tally = _run_chunks(chunk, config.trials, config.workers)
            elapsed_ms = int((time.perf_counter() - start) * 1000)
            avg_p, std_p = _mean_std(tally.s_p, tally.s_p2, tally.count)
            avg_d, std_d = _mean_std(tally.s_d, tally.s_d2, tally.count)
            records.append(
                ExperimentRecord(
                    config.q, config.n, k, decoder, config.trials,
                    config.master_seed, avg_p, std_p, avg_d, std_d,
                    tally.max_d, tally.max_p, elapsed_ms,
                )
            )
    return records


def run_radius(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Average achieved covering distance per (k, algorithm), paired seeds.

    The algorithm set comes from ``config.decoders``.  All algorithms see
    the same word in each trial (drawn from a shared stream), so the per-k
    averages are directly comparable.  Whenever both are requested, the
    exhaustive-search distance is checked to never exceed the
    list-decoder distance, trial by trial.
    """
    algorithms = config.decoders
    bad = set(algorithms) - set(RADIUS_ALGORITHMS)
    if bad:
        raise ValueError(f"unknown algorithms {sorted(bad)}")
    records = []
    for k in config.k_values:
        code = GrsCode.default(config.q, config.n, k)

        def chunk(trial_range: range, code=code, k=k) -> dict[str, _Tally]:
            tallies = {algo: _Tally() for algo in algorithms}
            for trial in trial_range:
                rng = trial_generator(config.master_seed, k, "shared", trial)
                y = _uniform_word(code, rng)
                results = {}
                for algo in algorithms:
                    if algo == "baseline":
                        result = grs_cover_baseline(code, y)
                    else:
                        result = grs_cover(code, y, algo)
                    _check_guarantee(result, code, y, config.master_seed, k, trial)
                    results[algo] = result
                    tallies[algo].add(result.distance, result.punctures)
                if "map" in results and "gs" in results:
                    if results["map"].distance > results["gs"].distance:
                        raise RuntimeError(
                            "exhaustive search beaten by its own lower bound: "
                            f"map={results['map'].distance} > "
                            f"gs={results['gs'].distance}, "
                            f"master_seed={config.master_seed}, k={k}, "
                            f"trial={trial}, y={y.values.tolist()}"
                        )
            return tallies

        start = time.perf_counter()
        merged = {algo: _Tally() for algo in algorithms}
        ranges = _chunk_ranges(config.trials, config.workers)
        if config.workers == 1:
            parts = [chunk(r) for r in ranges]
        else:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                parts = list(pool.map(chunk, ranges))
        for part in parts:
            for algo in algorithms:
                merged[algo].merge(part[algo])
        elapsed_ms = int((time.perf_counter() - start) * 1000)

        for algo in algorithms:
            tally = merged[algo]
            avg_p, std_p = _mean_std(tally.s_p, tally.s_p2, tally.count)
            avg_d, std_d = _mean_std(tally.s_d, tally.s_d2, tally.count)
            records.append(
                ExperimentRecord(
                    config.q, config.n, k, algo, config.trials,
                    config.master_seed, avg_p, std_p, avg_d, std_d,
                    tally.max_d, tally.max_p, elapsed_ms,
                )
            )
    return records


@dataclass(frozen=True)
class ConjectureReport:
    """Empirical constants for the bounded-punctures conjecture."""

    q: int
    n: int
    trials: int
    bw_ratios: dict[int, float]  # k -> avg_punctures(bw) / (d - 1)
    gs_averages: dict[int, float]  # k -> avg_punctures(gs)
    max_bw_ratio: float
    max_gs_average: float
    bw_bounded: bool  # max ratio < 1
    gs_bounded: bool  # max average < 1
    records: tuple[ExperimentRecord, ...]


def run_conjecture_check(config: ExperimentConfig) -> ConjectureReport:
    """Estimate the per-k puncture constants and flag whether they stay
    below one, for both decoders."""
    if any(k >= config.n for k in config.k_values):
        raise ValueError("conjecture check needs k < n so that d - 1 >= 1")
    records = run_punctures(config)
    bw_ratios, gs_averages = {}, {}
    for r in records:
        d = config.n - r.k + 1
        if r.decoder == "bw":
            bw_ratios[r.k] = r.avg_punctures / (d - 1)
        elif r.decoder == "gs":
            gs_averages[r.k] = r.avg_punctures
    max_bw = max(bw_ratios.values(), default=0.0)
    max_gs = max(gs_averages.values(), default=0.0)
    return ConjectureReport(
        config.q, config.n, config.trials, bw_ratios, gs_averages,
        max_bw, max_gs, max_bw < 1.0, max_gs < 1.0, tuple(records),
    )
