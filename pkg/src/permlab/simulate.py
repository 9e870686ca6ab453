"""Seeded Monte Carlo engines for the two search games.

Needle game: a uniform permutation is hidden, the adviser computes a hint
from it, the seeker probes one position for the target. Locker game: the
adviser may instead swap two positions' contents; the seeker opens position
0, reads the hint off it, and (if needed) opens one more position.

Every trial runs on its own splitmix64 stream keyed by (master seed, trial
index), so totals are bitwise identical however trials are batched or
distributed across workers. A vectorized engine accelerates the built-in
strategies; it reproduces the scalar engine draw for draw.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, log2
from typing import Callable, Sequence

import numpy as np

from .counting import typical_max_shift
from .enumeration import check_guard, displacement_matrix
from .errors import ParameterOutOfRange, UnknownStrategy
from .perms import Permutation, argmax_shift, shift_histogram
from .rng import BatchRng, Rng, batch_seeds, derive_seed
from .strategies import Strategy, evaluate_success_exact, strategy_by_name

EXHAUSTIVE_GUARD = 8
_WILSON_Z = 1.959963984540054  # two-sided 95%
_BATCH = 2048

PermStream = Callable[[int], Sequence[int]]


@dataclass(frozen=True)
class GameConfig:
    """Resolved inputs of one simulation run."""

    n: int
    trials: int = 100_000
    seed: int = 0
    strategy: str | Strategy = "shift"
    target_mode: str = "uniform"   # uniform | fixed | sweep
    target: int | None = None
    exhaustive: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.n < 1 or self.trials < 1 or self.workers < 1:
            raise ParameterOutOfRange("n, trials and workers must be positive")
        if self.target_mode not in ("uniform", "fixed", "sweep"):
            raise ParameterOutOfRange(
                f"unknown target mode {self.target_mode!r}")
        if self.target_mode == "fixed":
            if self.target is None or not 0 <= self.target < self.n:
                raise ParameterOutOfRange(
                    f"fixed mode needs a target in 0..{self.n - 1}")

    def strategy_obj(self) -> Strategy:
        if isinstance(self.strategy, Strategy):
            return self.strategy
        return strategy_by_name(self.strategy, self.n)

    def strategy_name(self) -> str:
        return self.strategy if isinstance(self.strategy, str) else self.strategy.name


@dataclass(frozen=True)
class TargetStat:
    target: int
    trials: int
    successes: int
    estimate: float
    wilson_95_low: float
    wilson_95_high: float
    exact: Fraction | None = None


@dataclass(frozen=True)
class SimulationReport:
    game: str
    n: int
    trials: int
    seed: int
    strategy: str
    target_mode: str
    target: int | None
    exhaustive: bool
    successes: int
    estimate: float
    wilson_95_low: float
    wilson_95_high: float
    exact: Fraction | None
    per_target: tuple[TargetStat, ...] | None
    theory_refs: dict

    @property
    def std_err(self) -> float:
        return math.sqrt(self.estimate * (1 - self.estimate) / self.trials)


def wilson_interval(successes: int, trials: int) -> tuple[float, float]:
    z = _WILSON_Z
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(
        phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return center - half, center + half


def theory_reference_values(n: int) -> dict:
    refs = {"no_advice": 1.0 / n, "naive_exact": 2.0 / n}
    if n >= 4:
        refs["shift_growth"] = log2(n) / (n * log2(log2(n)))
    if n >= 6:
        refs["typical_max_shift"] = typical_max_shift(n)
    return refs


# ---------------------------------------------------------------------------
# trial engines
# ---------------------------------------------------------------------------

def _needle_chunk_scalar(cfg: GameConfig, start: int, width: int,
                         perm_stream: PermStream | None) -> np.ndarray:
    """Success counts for trials start..start+width-1 (per target in sweep
    mode, single cell otherwise)."""
    st = cfg.strategy_obj()
    n = cfg.n
    sweep = cfg.target_mode == "sweep"
    counts = np.zeros(n if sweep else 1, dtype=np.int64)
    for t in range(start, start + width):
        rng = Rng(derive_seed(cfg.seed, t))
        if perm_stream is None:
            items = list(range(n))
            rng.shuffle(items)
        else:
            items = list(perm_stream(t))
        h = st.hint(Permutation(tuple(items)))
        if sweep:
            for s in range(n):
                if items[st.guess(h, s)] == s:
                    counts[s] += 1
        else:
            s = cfg.target if cfg.target_mode == "fixed" else rng.randbelow(n)
            if items[st.guess(h, s)] == s:
                counts[0] += 1
    return counts


def _locker_chunk_scalar(cfg: GameConfig, start: int, width: int,
                         perm_stream: PermStream | None) -> np.ndarray:
    n = cfg.n
    sweep = cfg.target_mode == "sweep"
    counts = np.zeros(n if sweep else 1, dtype=np.int64)
    for t in range(start, start + width):
        rng = Rng(derive_seed(cfg.seed, t))
        if perm_stream is None:
            items = list(range(n))
            rng.shuffle(items)
        else:
            items = list(perm_stream(t))
        h = argmax_shift(shift_histogram(Permutation(tuple(items))))
        pos_h = items.index(h)
        items[0], items[pos_h] = items[pos_h], items[0]  # no-op when pos_h == 0
        if sweep:
            for s in range(n):
                if h == s or items[(s + h) % n] == s:
                    counts[s] += 1
        else:
            s = cfg.target if cfg.target_mode == "fixed" else rng.randbelow(n)
            if h == s or items[(s + h) % n] == s:
                counts[0] += 1
    return counts


def _shift_hints_batch(perms: np.ndarray) -> np.ndarray:
    lanes, n = perms.shape
    v = (np.arange(n, dtype=np.int32)[None, :] - perms) % n
    offsets = (np.arange(lanes, dtype=np.int64) * n)[:, None]
    counts = np.bincount((v.astype(np.int64) + offsets).ravel(),
                         minlength=lanes * n).reshape(lanes, n)
    return np.argmax(counts, axis=1).astype(np.int64)  # first max = lowest class


def _batch_hints(name: str, perms: np.ndarray) -> np.ndarray:
    if name == "shift":
        return _shift_hints_batch(perms)
    if name == "naive":
        return perms[:, 0].astype(np.int64)
    if name == "baseline":
        return np.zeros(perms.shape[0], dtype=np.int64)
    raise UnknownStrategy(name)


def _batch_guesses(name: str, n: int, hints: np.ndarray, s) -> np.ndarray:
    if name == "shift":
        return (s + hints) % n
    if name == "naive":
        return np.where(np.asarray(s) == hints, 0, 1)
    if name == "baseline":
        return np.broadcast_to(np.asarray(s), hints.shape)
    raise UnknownStrategy(name)


def _needle_chunk_vector(cfg: GameConfig, start: int, width: int) -> np.ndarray:
    n = cfg.n
    name = cfg.strategy_name()
    sweep = cfg.target_mode == "sweep"
    counts = np.zeros(n if sweep else 1, dtype=np.int64)
    done = 0
    while done < width:
        b = min(_BATCH, width - done)
        rng = BatchRng(batch_seeds(cfg.seed, start + done, b))
        perms = rng.permutations(n)
        rows = np.arange(b)
        hints = _batch_hints(name, perms)
        if sweep:
            for s in range(n):
                g = _batch_guesses(name, n, hints, s)
                counts[s] += int((perms[rows, g] == s).sum())
        else:
            if cfg.target_mode == "fixed":
                svec = np.full(b, cfg.target, dtype=np.int64)
            else:
                svec = rng.randbelow(n)
            g = _batch_guesses(name, n, hints, svec)
            counts[0] += int((perms[rows, g] == svec).sum())
        done += b
    return counts


def _locker_chunk_vector(cfg: GameConfig, start: int, width: int) -> np.ndarray:
    n = cfg.n
    sweep = cfg.target_mode == "sweep"
    counts = np.zeros(n if sweep else 1, dtype=np.int64)
    done = 0
    while done < width:
        b = min(_BATCH, width - done)
        rng = BatchRng(batch_seeds(cfg.seed, start + done, b))
        perms = rng.permutations(n)
        rows = np.arange(b)
        hints = _shift_hints_batch(perms)
        pos_h = np.argmax(perms == hints[:, None].astype(np.int32), axis=1)
        swapped = perms.copy()
        first = swapped[rows, 0].copy()
        swapped[rows, 0] = swapped[rows, pos_h]
        swapped[rows, pos_h] = first
        if sweep:
            for s in range(n):
                hit = (hints == s) | (swapped[rows, (s + hints) % n] == s)
                counts[s] += int(hit.sum())
        else:
            if cfg.target_mode == "fixed":
                svec = np.full(b, cfg.target, dtype=np.int64)
            else:
                svec = rng.randbelow(n)
            hit = (hints == svec) | (swapped[rows, (svec + hints) % n] == svec)
            counts[0] += int(hit.sum())
        done += b
    return counts


_VECTOR_STRATEGIES = ("shift", "naive", "baseline")


def _simulate_chunk(game: str, cfg_fields: dict, start: int, width: int) -> np.ndarray:
    """Top-level chunk job (picklable for process pools)."""
    cfg = GameConfig(**cfg_fields)
    if game == "needle":
        if cfg.strategy_name() in _VECTOR_STRATEGIES and isinstance(cfg.strategy, str):
            return _needle_chunk_vector(cfg, start, width)
        return _needle_chunk_scalar(cfg, start, width, None)
    return _locker_chunk_vector(cfg, start, width)


def _run_trials(game: str, cfg: GameConfig,
                perm_stream: PermStream | None) -> np.ndarray:
    """Dispatch trials over workers; the result never depends on the split."""
    if perm_stream is not None:
        scalar = _needle_chunk_scalar if game == "needle" else _locker_chunk_scalar
        return scalar(cfg, 0, cfg.trials, perm_stream)
    if not isinstance(cfg.strategy, str):
        if game == "needle":
            return _needle_chunk_scalar(cfg, 0, cfg.trials, None)
        return _locker_chunk_vector(cfg, 0, cfg.trials)

    chunks = _chunk_ranges(cfg.trials, cfg.workers)
    fields = {
        "n": cfg.n, "trials": cfg.trials, "seed": cfg.seed,
        "strategy": cfg.strategy, "target_mode": cfg.target_mode,
        "target": cfg.target, "exhaustive": cfg.exhaustive,
        "workers": cfg.workers,
    }
    if cfg.workers == 1 or len(chunks) == 1:
        parts = [_simulate_chunk(game, fields, a, w) for a, w in chunks]
    else:
        try:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                parts = list(pool.map(
                    _simulate_chunk, [game] * len(chunks), [fields] * len(chunks),
                    [a for a, _ in chunks], [w for _, w in chunks]))
        except (OSError, RuntimeError):   # process pools unavailable
            parts = [_simulate_chunk(game, fields, a, w) for a, w in chunks]
    return np.sum(parts, axis=0)


def _chunk_ranges(trials: int, workers: int) -> list[tuple[int, int]]:
    per = max(1, -(-trials // max(workers, 1)))
    return [(a, min(per, trials - a)) for a in range(0, trials, per)]


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def _report_from_counts(game: str, cfg: GameConfig, counts: np.ndarray,
                        ) -> SimulationReport:
    n = cfg.n
    if cfg.target_mode == "sweep":
        per = []
        for s in range(n):
            succ = int(counts[s])
            low, high = wilson_interval(succ, cfg.trials)
            per.append(TargetStat(s, cfg.trials, succ, succ / cfg.trials,
                                  low, high))
        successes = int(counts.sum())
        trials = cfg.trials * n
        per_target = tuple(per)
    else:
        successes = int(counts[0])
        trials = cfg.trials
        per_target = None
    low, high = wilson_interval(successes, trials)
    return SimulationReport(
        game, n, trials, cfg.seed, cfg.strategy_name(), cfg.target_mode,
        cfg.target, cfg.exhaustive, successes, successes / trials, low, high,
        None, per_target, theory_reference_values(n))


def _exhaustive_needle(cfg: GameConfig) -> SimulationReport:
    st = cfg.strategy_obj()
    ev = evaluate_success_exact(st, guard=EXHAUSTIVE_GUARD)
    n, total = cfg.n, factorial(cfg.n)
    per = tuple(
        TargetStat(s, total, int(f * total), float(f),
                   *wilson_interval(int(f * total), total), exact=f)
        for s, f in enumerate(ev.per_target))
    if cfg.target_mode == "sweep":
        exact = ev.overall
        successes, trials, per_target = int(exact * total * n), total * n, per
    elif cfg.target_mode == "fixed":
        exact = ev.per_target[cfg.target]
        successes, trials, per_target = int(exact * total), total, None
    else:
        exact = ev.overall
        successes, trials, per_target = int(exact * total * n), total * n, None
    low, high = wilson_interval(successes, trials)
    return SimulationReport(
        "needle", n, trials, cfg.seed, cfg.strategy_name(), cfg.target_mode,
        cfg.target, True, successes, float(exact), low, high, exact,
        per_target, theory_reference_values(n))


def _exhaustive_locker(cfg: GameConfig) -> SimulationReport:
    import itertools
    n = cfg.n
    check_guard(n, EXHAUSTIVE_GUARD, "exhaustive locker sweep")
    wins = [0] * n
    for img in itertools.permutations(range(n)):
        h = argmax_shift(shift_histogram(Permutation(img)))
        items = list(img)
        pos_h = items.index(h)
        items[0], items[pos_h] = items[pos_h], items[0]
        for s in range(n):
            if h == s or items[(s + h) % n] == s:
                wins[s] += 1
    total = factorial(n)
    per = tuple(
        TargetStat(s, total, w, w / total, *wilson_interval(w, total),
                   exact=Fraction(w, total))
        for s, w in enumerate(wins))
    if cfg.target_mode == "fixed":
        exact = per[cfg.target].exact
        successes, trials, per_target = wins[cfg.target], total, None
    else:
        exact = Fraction(sum(wins), total * n)
        successes, trials = sum(wins), total * n
        per_target = per if cfg.target_mode == "sweep" else None
    low, high = wilson_interval(successes, trials)
    return SimulationReport(
        "locker", n, trials, cfg.seed, "shift", cfg.target_mode, cfg.target,
        True, successes, float(exact), low, high, exact, per_target,
        theory_reference_values(n))


def simulate_needle(cfg: GameConfig,
                    perm_stream: PermStream | None = None) -> SimulationReport:
    """Monte Carlo (or exhaustive-exact) success rate of a strategy."""
    cfg.validate()
    cfg.strategy_obj()   # surfaces UnknownStrategy before any work
    if cfg.exhaustive:
        return _exhaustive_needle(cfg)
    return _report_from_counts("needle", cfg,
                               _run_trials("needle", cfg, perm_stream))


def simulate_locker(cfg: GameConfig,
                    perm_stream: PermStream | None = None) -> SimulationReport:
    """Locker game with the shift-hint adaptation: the adviser swaps the
    hint's card into position 0; the seeker reads it there and probes
    (target + hint) mod n if the first card was not already the target."""
    cfg.validate()
    if cfg.exhaustive:
        return _exhaustive_locker(cfg)
    return _report_from_counts("locker", cfg,
                               _run_trials("locker", cfg, perm_stream))


@dataclass(frozen=True)
class WorstTargetReport:
    report: SimulationReport
    worst_target: int
    minimum: float
    minimum_exact: Fraction | None
    wilson_95_low: float
    wilson_95_high: float


def worst_case_target(cfg: GameConfig, game: str = "needle",
                      perm_stream: PermStream | None = None) -> WorstTargetReport:
    """Per-target sweep sharing one permutation stream; returns the argmin."""
    if cfg.target_mode != "sweep":
        raise ParameterOutOfRange("worst_case_target needs target_mode='sweep'")
    sim = simulate_needle if game == "needle" else simulate_locker
    report = sim(cfg, perm_stream)
    worst = min(report.per_target, key=lambda ts: (ts.estimate, ts.target))
    return WorstTargetReport(report, worst.target, worst.estimate,
                             worst.exact, worst.wilson_95_low,
                             worst.wilson_95_high)


@dataclass(frozen=True)
class MaxShiftReport:
    """Distribution of the size of the most populous shift class."""

    n: int
    trials: int
    seed: int
    mode: str
    histogram: dict
    mean: float
    quantiles: dict
    typical: int | None   # largest k with 2e*k! <= n, when defined


def max_shift_distribution(n: int, trials: int = 10_000, seed: int = 0,
                           exhaustive: bool = False,
                           perm_stream: PermStream | None = None,
                           ) -> MaxShiftReport:
    if exhaustive:
        check_guard(n, EXHAUSTIVE_GUARD, "exhaustive max-shift sweep")
        v = displacement_matrix(n)
        best = np.zeros(len(v), dtype=np.int64)
        for l in range(n):
            np.maximum(best, (v == l).sum(axis=1), out=best)
        hist = np.bincount(best, minlength=n + 1)
        trials = len(v)
        mode = "exhaustive"
    elif perm_stream is not None:
        maxima = []
        for t in range(trials):
            p = Permutation(tuple(perm_stream(t)))
            maxima.append(max(shift_histogram(p).counts))
        hist = np.bincount(np.array(maxima), minlength=n + 1)
        mode = "stream"
    else:
        hist = np.zeros(n + 1, dtype=np.int64)
        done = 0
        while done < trials:
            b = min(_BATCH, trials - done)
            rng = BatchRng(batch_seeds(seed, done, b))
            perms = rng.permutations(n)
            vals = (np.arange(n, dtype=np.int32)[None, :] - perms) % n
            offsets = (np.arange(b, dtype=np.int64) * n)[:, None]
            counts = np.bincount((vals.astype(np.int64) + offsets).ravel(),
                                 minlength=b * n).reshape(b, n)
            hist += np.bincount(counts.max(axis=1), minlength=n + 1)[:n + 1]
            done += b
        mode = "sampled"
    values = np.arange(n + 1)
    mean = float((hist * values).sum() / hist.sum())
    cum = np.cumsum(hist)
    quantiles = {f"q{q}": int(values[np.searchsorted(cum, q / 100 * hist.sum())])
                 for q in (10, 50, 90, 99)}
    histogram = {int(k): int(c) for k, c in zip(values, hist) if c}
    typical = typical_max_shift(n) if n >= 6 else None
    return MaxShiftReport(n, int(hist.sum()), seed, mode, histogram, mean,
                          quantiles, typical)
