"""Seeded random-game ensembles and their aggregate statistics.

Games are drawn from nested uniform ranges that satisfy every parameter
constraint by construction, one independent RNG substream per game index,
so results are identical for any worker count.  Each game is analyzed with
the eigenvalue classifier and the welfare evaluator; aggregates cover the
stable-count distribution, per-kind counts/ratios, indicator correlations,
defence-intensity frequency curves, parameter-impact histograms, fine
scenarios, and social-welfare statistics.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError
from .game import (
    STRATEGY_PAIRS,
    FineScenario,
    GameParams,
    StrategyPair,
    ZERO_FINES,
    social_welfare,
)
from .equilibria import EquilibriumKind, interior_equilibrium, stable_set

__all__ = [
    "SamplerConfig",
    "GameRecord",
    "WelfareStats",
    "EnsembleSummary",
    "sample_game",
    "run_ensemble",
    "correlation_matrix",
    "CORRELATION_LABELS",
    "v_frequency_curves",
    "parameter_impact",
    "fines_study",
    "welfare_analytics",
    "records_digest",
    "DEFAULT_MASTER_SEED",
    "BIN_WIDTH",
]

#: Documented default seed for ensembles (CLI and acceptance runs).
DEFAULT_MASTER_SEED = 1

#: All binned statistics use this bin width; the last bin is closed.
BIN_WIDTH = 0.1

#: Indicator order of the correlation matrix rows/columns.
CORRELATION_LABELS: tuple[str, str, str, str] = ("E3", "E2", "E4", "total")

#: Parameters with impact histograms, in reporting order.
IMPACT_PARAMETERS: tuple[str, ...] = ("c_d", "c_a", "v", "w", "b_a", "b_d")

#: Parameters against which mean welfare is binned.
WELFARE_BIN_PARAMETERS: tuple[str, ...] = ("v", "c_a", "c_d")


@dataclass(frozen=True)
class SamplerConfig:
    """Ensemble sampling configuration.

    ``b_a_upper`` is the upper end of the attacker-benefit draw; it must be
    at least 1 so the range (c_a, b_a_upper] is never empty (c_a < w <= 1).
    """

    count: int
    master_seed: int = DEFAULT_MASTER_SEED
    scenario: FineScenario = ZERO_FINES
    b_a_upper: float = 1.0

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigError(f"count must be >= 1 (got {self.count!r})")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ConfigError(
                f"master_seed must be a 64-bit unsigned integer (got {self.master_seed!r})"
            )
        if not (math.isfinite(self.b_a_upper) and self.b_a_upper >= 1.0):
            raise ConfigError(
                f"b_a_upper must be >= 1 (got {self.b_a_upper!r})"
            )


@dataclass(frozen=True)
class GameRecord:
    """One sampled game with its stability and welfare analysis."""

    index: int
    params: GameParams
    stable_kinds: frozenset[EquilibriumKind]
    welfare: dict[StrategyPair, float]
    interior_present: bool


@dataclass(frozen=True)
class WelfareStats:
    """Social-welfare aggregates over an ensemble.

    ``histogram_*`` cover all (game, pair) welfare samples with bin width
    0.1 over the observed range; ``binned_mean`` maps each of v, c_a, c_d
    to ten per-bin mean welfare values (NaN for empty bins).
    """

    mean_by_pair: dict[StrategyPair, float]
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]
    binned_mean: dict[str, tuple[float, ...]]


@dataclass(frozen=True)
class EnsembleSummary:
    """Aggregates over one ensemble run.

    ``kind_ratios`` normalizes kind_counts by the number of (game,
    stable-kind) pairs, so a two-stable game contributes to each of its
    kinds once and the ratios sum to 1 (multi-count normalization).
    ``correlation`` rows/columns follow :data:`CORRELATION_LABELS`; entries
    are NaN where an indicator has zero variance (undefined, not 0).
    """

    config: SamplerConfig
    stable_count_distribution: dict[str, int]
    kind_counts: dict[EquilibriumKind, int]
    kind_ratios: dict[EquilibriumKind, float]
    correlation_labels: tuple[str, ...]
    correlation: tuple[tuple[float, ...], ...]
    v_binned_kind_frequency: dict[EquilibriumKind, tuple[int, ...]]
    param_binned_stability: dict[str, tuple[int, ...]]
    welfare_stats: WelfareStats
    records_digest: str


def _open_unit(rng: np.random.Generator) -> float:
    # uniform() yields [0, 1); reject the measure-zero 0.0 to keep (0, 1).
    u = float(rng.uniform())
    while u == 0.0:
        u = float(rng.uniform())
    return u


def sample_game(config: SamplerConfig, index: int) -> GameParams:
    """Draw one game from the substream for ``index``.

    Draws, in order: w ~ U(0,1]; c_a ~ U(0,w); c_d ~ U(0,w);
    b_a ~ U(c_a, b_a_upper]; b_d ~ U(c_d, w]; v ~ U(0,1]; fines from the
    configured scenario.  The nested ranges make every parameter constraint
    hold by construction.  The substream is derived from
    (master_seed, index), so any game is reproducible in isolation and
    results cannot depend on worker scheduling.

    In the astronomically rare case where rounding lands a draw exactly on
    an excluded endpoint, the draw is repeated from the same substream.
    """
    if index < 0:
        raise ConfigError(f"index must be >= 0 (got {index!r})")
    rng = np.random.default_rng([config.master_seed, index])
    w = 1.0 - float(rng.uniform())
    c_a = w * _open_unit(rng)
    while not 0.0 < c_a < w:
        c_a = w * _open_unit(rng)
    c_d = w * _open_unit(rng)
    while not 0.0 < c_d < w:
        c_d = w * _open_unit(rng)
    b_a = config.b_a_upper - (config.b_a_upper - c_a) * float(rng.uniform())
    while not c_a < b_a <= config.b_a_upper:
        b_a = config.b_a_upper - (config.b_a_upper - c_a) * float(rng.uniform())
    b_d = w - (w - c_d) * float(rng.uniform())
    while not c_d < b_d <= w:
        b_d = w - (w - c_d) * float(rng.uniform())
    v = 1.0 - float(rng.uniform())
    return config.scenario.apply(
        GameParams(w=w, c_a=c_a, c_d=c_d, b_a=b_a, b_d=b_d, v=v)
    )


def _analyze_game(config: SamplerConfig, index: int) -> GameRecord:
    params = sample_game(config, index)
    kinds = stable_set(params)
    welfare = {pair: social_welfare(params, pair) for pair in STRATEGY_PAIRS}
    return GameRecord(
        index=index,
        params=params,
        stable_kinds=kinds,
        welfare=welfare,
        interior_present=interior_equilibrium(params) is not None,
    )


def _analyze_range(config: SamplerConfig, start: int, stop: int) -> list[GameRecord]:
    return [_analyze_game(config, i) for i in range(start, stop)]


def run_ensemble(
    config: SamplerConfig, workers: int = 1
) -> tuple[list[GameRecord], EnsembleSummary]:
    """Sample, analyze, and summarize ``config.count`` games.

    Analysis is embarrassingly parallel across game indices; records are
    assembled in index order and every aggregate is reduced by a single
    deterministic pass, so the output is byte-identical for any ``workers``.
    """
    if workers < 1:
        raise ConfigError(f"workers must be >= 1 (got {workers!r})")
    count = config.count
    if workers == 1 or count < 2 * workers:
        records = _analyze_range(config, 0, count)
    else:
        chunk = -(-count // workers)
        bounds = [(i, min(i + chunk, count)) for i in range(0, count, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _analyze_range,
                [config] * len(bounds),
                [b[0] for b in bounds],
                [b[1] for b in bounds],
            )
            records = [record for part in parts for record in part]
    return records, summarize(records, config)


def _bin_index(value: float) -> int:
    # Bins [0, 0.1), ..., [0.9, 1.0]; the last bin is closed so 1.0 lands in it.
    return min(int(value / BIN_WIDTH), 9)


def summarize(records: Sequence[GameRecord], config: SamplerConfig) -> EnsembleSummary:
    """Reduce analyzed records to an :class:`EnsembleSummary`."""
    distribution = {"0": 0, "1": 0, "2": 0, "3+": 0}
    kind_counts = {kind: 0 for kind in EquilibriumKind}
    v_bins = {
        kind: [0] * 10
        for kind in (EquilibriumKind.E3, EquilibriumKind.E2, EquilibriumKind.E4)
    }
    param_bins = {name: [0] * 10 for name in IMPACT_PARAMETERS}
    for record in records:
        n_stable = len(record.stable_kinds)
        if n_stable >= 3:
            distribution["3+"] += 1
        else:
            distribution[str(n_stable)] += 1
        for kind in record.stable_kinds:
            kind_counts[kind] += 1
            if kind in v_bins:
                v_bins[kind][_bin_index(record.params.v)] += 1
        if EquilibriumKind.E4 in record.stable_kinds:
            for name in IMPACT_PARAMETERS:
                param_bins[name][_bin_index(getattr(record.params, name))] += 1
    total_pairs = sum(kind_counts.values())
    if total_pairs > 0:
        kind_ratios = {k: c / total_pairs for k, c in kind_counts.items()}
    else:
        kind_ratios = {k: 0.0 for k in kind_counts}
    return EnsembleSummary(
        config=config,
        stable_count_distribution=distribution,
        kind_counts=kind_counts,
        kind_ratios=kind_ratios,
        correlation_labels=CORRELATION_LABELS,
        correlation=_matrix_to_tuples(correlation_matrix(records)),
        v_binned_kind_frequency={k: tuple(v) for k, v in v_bins.items()},
        param_binned_stability={k: tuple(v) for k, v in param_bins.items()},
        welfare_stats=welfare_analytics(records),
        records_digest=records_digest(records),
    )


def _matrix_to_tuples(matrix: np.ndarray) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(float(x) for x in row) for row in matrix)


def correlation_matrix(records: Sequence[GameRecord]) -> np.ndarray:
    """Pearson correlations of per-game stability indicators.

    Columns follow :data:`CORRELATION_LABELS`: 1{E3 stable}, 1{E2 stable},
    1{E4 stable}, and the per-game count of stable kinds.  Any column with
    zero variance yields NaN entries (undefined correlation, not 0).
    """
    n = len(records)
    columns = np.zeros((4, n))
    kinds = (EquilibriumKind.E3, EquilibriumKind.E2, EquilibriumKind.E4)
    for j, record in enumerate(records):
        for i, kind in enumerate(kinds):
            columns[i, j] = 1.0 if kind in record.stable_kinds else 0.0
        columns[3, j] = len(record.stable_kinds)
    matrix = np.full((4, 4), np.nan)
    centered = columns - columns.mean(axis=1, keepdims=True) if n else columns
    spread = np.sqrt((centered**2).mean(axis=1)) if n else np.zeros(4)
    for i in range(4):
        for j in range(4):
            if spread[i] > 0.0 and spread[j] > 0.0:
                matrix[i, j] = float(
                    (centered[i] * centered[j]).mean() / (spread[i] * spread[j])
                )
    return matrix


def v_frequency_curves(
    records: Sequence[GameRecord],
) -> dict[EquilibriumKind, tuple[int, ...]]:
    """Counts of games stable at E3, E2, E4 per defence-intensity bin."""
    curves = {
        kind: [0] * 10
        for kind in (EquilibriumKind.E3, EquilibriumKind.E2, EquilibriumKind.E4)
    }
    for record in records:
        bin_i = _bin_index(record.params.v)
        for kind in record.stable_kinds:
            if kind in curves:
                curves[kind][bin_i] += 1
    return {kind: tuple(counts) for kind, counts in curves.items()}


def parameter_impact(records: Sequence[GameRecord], parameter: str) -> tuple[int, ...]:
    """Histogram of E4-stable games per bin of one parameter."""
    if parameter not in IMPACT_PARAMETERS:
        raise ConfigError(
            f"unknown parameter {parameter!r}; expected one of {IMPACT_PARAMETERS}"
        )
    counts = [0] * 10
    for record in records:
        if EquilibriumKind.E4 in record.stable_kinds:
            counts[_bin_index(getattr(record.params, parameter))] += 1
    return tuple(counts)


def welfare_analytics(records: Sequence[GameRecord]) -> WelfareStats:
    """Per-pair means, all-sample histogram, and parameter-binned means."""
    n = len(records)
    mean_by_pair = {}
    for pair in STRATEGY_PAIRS:
        mean_by_pair[pair] = (
            sum(record.welfare[pair] for record in records) / n if n else math.nan
        )
    samples = [record.welfare[pair] for record in records for pair in STRATEGY_PAIRS]
    if samples:
        lo = math.floor(min(samples) / BIN_WIDTH) * BIN_WIDTH
        hi = math.ceil(max(samples) / BIN_WIDTH) * BIN_WIDTH
        if hi <= lo:
            hi = lo + BIN_WIDTH
        n_bins = int(round((hi - lo) / BIN_WIDTH))
        edges = tuple(lo + BIN_WIDTH * i for i in range(n_bins + 1))
        counts = [0] * n_bins
        for value in samples:
            counts[min(int((value - lo) / BIN_WIDTH), n_bins - 1)] += 1
    else:
        edges = ()
        counts = []
    binned_mean: dict[str, tuple[float, ...]] = {}
    for name in WELFARE_BIN_PARAMETERS:
        sums = [0.0] * 10
        sizes = [0] * 10
        for record in records:
            bin_i = _bin_index(getattr(record.params, name))
            for pair in STRATEGY_PAIRS:
                sums[bin_i] += record.welfare[pair]
                sizes[bin_i] += 1
        binned_mean[name] = tuple(
            sums[i] / sizes[i] if sizes[i] else math.nan for i in range(10)
        )
    return WelfareStats(
        mean_by_pair=mean_by_pair,
        histogram_edges=edges,
        histogram_counts=tuple(counts),
        binned_mean=binned_mean,
    )


def fines_study(
    count: int,
    master_seed: int,
    levels: Iterable[float],
    workers: int = 1,
) -> dict[float, EnsembleSummary]:
    """Run one ensemble per fine level on identical parameter draws.

    Each level runs with FineScenario(f_u=level, f_s=level).  Fines are
    applied after the parameter draw, so the sampled (w, costs, benefits, v)
    sets match across levels exactly and differences are attributable to
    the fines alone.
    """
    summaries: dict[float, EnsembleSummary] = {}
    for level in levels:
        if level < 0:
            raise ConfigError(f"fine level must be >= 0 (got {level!r})")
        config = SamplerConfig(
            count=count,
            master_seed=master_seed,
            scenario=FineScenario(f_u=float(level), f_s=float(level)),
        )
        _, summaries[float(level)] = run_ensemble(config, workers=workers)
    return summaries


def records_digest(records: Sequence[GameRecord]) -> str:
    """SHA-256 over a canonical rendering of the records.

    Full-precision floats via ``repr``; used to verify that runs with equal
    (count, master_seed, scenario) are identical regardless of worker count.
    """
    hasher = hashlib.sha256()
    for record in records:
        params = record.params
        fields = [
            str(record.index),
            *(
                repr(getattr(params, name))
                for name in ("w", "c_a", "c_d", "b_a", "b_d", "v", "m", "n", "p", "s")
            ),
            ",".join(sorted(kind.value for kind in record.stable_kinds)),
            ",".join(repr(record.welfare[pair]) for pair in STRATEGY_PAIRS),
            str(int(record.interior_present)),
        ]
        hasher.update("|".join(fields).encode("ascii"))
        hasher.update(b"\n")
    return hasher.hexdigest()
