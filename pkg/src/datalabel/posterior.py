"""Dirichlet-categorical posterior over a conditioning column.

Answers questions of the form "given rows where <target> equals <value>,
how probable is each category of <condition>?" with a symmetric
Dirichlet(alpha) prior. Point estimates are the exact closed form
(n_k + alpha)/(N + K*alpha); credible intervals come from seeded Monte
Carlo over the Dirichlet posterior, using a counter-based generator
(Philox) so identical seeds give bit-identical results.

The support always covers every category observed in the full dataset,
so zero-count categories keep positive probability under the prior.
"""

from __future__ import annotations

import difflib
import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError, ProfileError
from .ingest import ColumnKind, DataTable

DEFAULT_ALPHA = 1.0
DEFAULT_LEVEL = 0.90
DEFAULT_MC_SAMPLES = 10_000
MIN_MC_SAMPLES = 1_000

_SEED_BOUND = 2**64


@dataclass(frozen=True)
class PosteriorDistribution:
    """Fitted posterior for one target value across condition categories."""

    target_column: str
    target_value: str
    condition_column: str
    support: tuple[str, ...]
    counts: tuple[int, ...]
    alpha: float
    point_estimates: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    interval_level: float
    seed: int
    mc_samples: int


def _check_seed(seed: int) -> None:
    if not 0 <= seed < _SEED_BOUND:
        raise ConfigError(f"seed must be a 64-bit unsigned integer, got {seed}")


def _check_mc_samples(mc_samples: int) -> None:
    if mc_samples < MIN_MC_SAMPLES:
        raise ConfigError(f"mc_samples must be >= {MIN_MC_SAMPLES}, got {mc_samples}")


def point_estimates(counts: Sequence[int], alpha: float) -> tuple[float, ...]:
    """Posterior means (n_k + alpha)/(N + K*alpha) of a symmetric Dirichlet."""
    if alpha <= 0:
        raise ConfigError(f"alpha must be positive, got {alpha}")
    total = sum(counts) + len(counts) * alpha
    return tuple((n + alpha) / total for n in counts)


def _mc_intervals(
    counts: Sequence[int],
    alpha: float,
    level: float,
    seed: int,
    mc_samples: int,
) -> tuple[tuple[float, float], ...]:
    # One Philox stream; each draw is K gamma variates in category order,
    # normalized to a Dirichlet variate. Fixed order makes runs bit-identical.
    rng = np.random.Generator(np.random.Philox(key=seed))
    shapes = np.array([alpha + n for n in counts], dtype=np.float64)
    draws = rng.standard_gamma(shapes, size=(mc_samples, len(counts)))
    draws /= draws.sum(axis=1, keepdims=True)
    lo, hi = np.quantile(draws, [(1 - level) / 2, (1 + level) / 2], axis=0)
    return tuple((float(a), float(b)) for a, b in zip(lo, hi))


def posterior_from_counts(
    *,
    target_column: str,
    target_value: str,
    condition_column: str,
    support: Sequence[str],
    counts: Sequence[int],
    alpha: float = DEFAULT_ALPHA,
    level: float = DEFAULT_LEVEL,
    seed: int = 0,
    mc_samples: int = DEFAULT_MC_SAMPLES,
) -> PosteriorDistribution:
    """Build a full posterior (point estimates + intervals) from tallied counts."""
    if len(support) != len(counts):
        raise ConfigError(f"support has {len(support)} categories but {len(counts)} counts")
    if len(support) < 2:
        raise ProfileError(
            f"condition column {condition_column!r} has {len(support)} categories, need >= 2"
        )
    if not 0 < level < 1:
        raise ConfigError(f"interval level must be in (0, 1), got {level}")
    _check_seed(seed)
    _check_mc_samples(mc_samples)

    estimates = point_estimates(counts, alpha)
    assert math.isclose(sum(estimates), 1.0, abs_tol=1e-12)
    return PosteriorDistribution(
        target_column=target_column,
        target_value=target_value,
        condition_column=condition_column,
        support=tuple(support),
        counts=tuple(int(n) for n in counts),
        alpha=float(alpha),
        point_estimates=estimates,
        intervals=_mc_intervals(counts, alpha, level, seed, mc_samples),
        interval_level=float(level),
        seed=seed,
        mc_samples=mc_samples,
    )


def fit_conditional(
    table: DataTable,
    target: str,
    target_value: str,
    condition: str,
    *,
    alpha: float = DEFAULT_ALPHA,
    level: float = DEFAULT_LEVEL,
    seed: int = 0,
    mc_samples: int = DEFAULT_MC_SAMPLES,
    kinds: Mapping[str, ColumnKind] | None = None,
) -> PosteriorDistribution:
    """Fit the posterior for one target value over a condition column.

    The support is the lexicographically sorted set of condition categories
    observed anywhere in the dataset (zero-count ones included); counts
    tally rows where the target cell equals ``target_value`` exactly and
    the condition cell is not missing.

    Raises:
        ProfileError: target value absent (message lists nearest matches)
            or condition column with fewer than two categories.
    """
    if kinds is not None:
        for name in (target, condition):
            if name in kinds and not kinds[name].is_categorical:
                raise ProfileError(f"column {name!r} is not categorical")

    target_pairs = table.column_pairs(target)
    condition_pairs = table.column_pairs(condition)

    observed_targets = {raw for raw, missing in target_pairs if not missing}
    if target_value not in observed_targets:
        nearest = difflib.get_close_matches(target_value, sorted(observed_targets), n=3, cutoff=0.0)
        hint = f"; nearest matches: {', '.join(repr(n) for n in nearest)}" if nearest else ""
        raise ProfileError(
            f"value {target_value!r} does not occur in column {target!r}{hint}"
        )

    support = sorted({raw for raw, missing in condition_pairs if not missing})
    if len(support) < 2:
        raise ProfileError(
            f"condition column {condition!r} has {len(support)} categories, need >= 2"
        )

    tally = dict.fromkeys(support, 0)
    for (tv, tm), (cv, cm) in zip(target_pairs, condition_pairs):
        if tm or cm:
            continue
        if tv == target_value:
            tally[cv] += 1

    return posterior_from_counts(
        target_column=target,
        target_value=target_value,
        condition_column=condition,
        support=support,
        counts=[tally[c] for c in support],
        alpha=alpha,
        level=level,
        seed=seed,
        mc_samples=mc_samples,
    )


def credible_intervals(
    posterior: PosteriorDistribution,
    level: float,
    seed: int | None = None,
    mc_samples: int | None = None,
) -> PosteriorDistribution:
    """Recompute intervals at a different level (or seed/sample count).

    Returns a copy of the posterior with ``intervals``, ``interval_level``,
    and the sampling parameters replaced.
    """
    if not 0 < level < 1:
        raise ConfigError(f"interval level must be in (0, 1), got {level}")
    use_seed = posterior.seed if seed is None else seed
    use_samples = posterior.mc_samples if mc_samples is None else mc_samples
    _check_seed(use_seed)
    _check_mc_samples(use_samples)
    return replace(
        posterior,
        intervals=_mc_intervals(posterior.counts, posterior.alpha, level, use_seed, use_samples),
        interval_level=float(level),
        seed=use_seed,
        mc_samples=use_samples,
    )


def sample_synthetic(posterior: PosteriorDistribution, m: int, seed: int) -> list[str]:
    """Draw m synthetic categories from the posterior predictive.

    Category k is drawn with probability point_estimates[k]; identical
    seeds give identical sequences.
    """
    if m < 0:
        raise ConfigError(f"sample count must be >= 0, got {m}")
    _check_seed(seed)
    if m == 0:
        return []
    rng = np.random.Generator(np.random.Philox(key=seed))
    draws = rng.choice(len(posterior.support), size=m, p=posterior.point_estimates)
    return [posterior.support[i] for i in draws]
