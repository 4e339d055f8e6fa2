"""Probability that a delegation network decides for the ground truth.

The exact engine convolves gurus one at a time into the distribution of total
correct weight. Full enumeration of guru outcomes is kept as an independent
cross-check, and Monte Carlo covers cases where a sampled estimate is enough.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DelegationProfile, SocialGraph, Tally, resolve

EXACT_DP = "exact-dp"
EXACT_ENUM = "exact-enum"
MONTE_CARLO = "monte-carlo"

MAX_ENUM_GURUS = 25
# Trials per independently seeded block; fixed so worker count never changes results.
MC_BLOCK = 1 << 16


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class AccuracyResult:
    value: float
    method: str
    stderr: float = 0.0
    trials: int = 0

    @property
    def exact(self) -> bool:
        return self.method != MONTE_CARLO


def _guru_arrays(tally: Tally, competences: Sequence[float]):
    gurus = tally.gurus
    weights = np.array([tally.weights[g] for g in gurus], dtype=np.int64)
    probs = np.array([competences[g] for g in gurus], dtype=float)
    return weights, probs


def correct_weight_distribution(weights, probs, n: int) -> np.ndarray:
    """Distribution of the total weight carried by correct gurus, indices ``0..n``."""
    dist = np.zeros(n + 1)
    dist[0] = 1.0
    for w, p in zip(weights, probs):
        w = int(w)
        nxt = dist * (1.0 - p)
        nxt[w:] += dist[: n + 1 - w] * p
        dist = nxt
    return dist


def majority_probability(weights, probs, n: int) -> float:
    dist = correct_weight_distribution(weights, probs, n)
    threshold = n // 2 + 1  # strictly more than n/2
    return float(min(1.0, max(0.0, math.fsum(dist[threshold:]))))


def exact_accuracy_dp(graph: SocialGraph, competences: Sequence[float],
                      profile: DelegationProfile) -> AccuracyResult:
    tally = resolve(graph, profile)
    weights, probs = _guru_arrays(tally, competences)
    return AccuracyResult(majority_probability(weights, probs, graph.n), EXACT_DP)


def tally_accuracy(tally: Tally, competences: Sequence[float]) -> float:
    """Exact accuracy of an already-resolved tally."""
    weights, probs = _guru_arrays(tally, competences)
    return majority_probability(weights, probs, tally.n)


def exact_accuracy_enum(graph: SocialGraph, competences: Sequence[float],
                        profile: DelegationProfile) -> AccuracyResult:
    """Sum the probability of every one of the ``2**g`` guru vote outcomes."""
    tally = resolve(graph, profile)
    weights, probs = _guru_arrays(tally, competences)
    g = len(weights)
    if g > MAX_ENUM_GURUS:
        raise TooLargeError(f"{g} gurus exceeds the enumeration limit of {MAX_ENUM_GURUS}")
    bits = np.arange(g, dtype=np.int64)
    total = []
    chunk = 1 << min(g, 16)
    for start in range(0, 1 << g, chunk):
        masks = np.arange(start, start + chunk, dtype=np.int64)
        correct = ((masks[:, None] >> bits) & 1).astype(bool)
        outcome_prob = np.prod(np.where(correct, probs, 1.0 - probs), axis=1)
        wins = 2 * (correct @ weights) > graph.n
        total.append(math.fsum(outcome_prob[wins]))
    return AccuracyResult(float(math.fsum(total)), EXACT_ENUM)


def _mc_block(seed: int, block: int, size: int, weights, probs, n: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    correct = rng.random((size, len(probs))) < probs
    return int(np.count_nonzero(2 * (correct @ weights) > n))


def mc_accuracy(graph: SocialGraph, competences: Sequence[float], profile: DelegationProfile,
                trials: int, seed: int, workers: int = 1) -> AccuracyResult:
    """Monte Carlo estimate with a Wald standard error.

    Trials are grouped into fixed blocks of ``MC_BLOCK``; block ``k`` draws from
    a generator keyed on ``(seed, k)``, so splitting blocks over ``workers``
    leaves the estimate bit-identical. The Wald error is approximate near 0 and 1.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tally = resolve(graph, profile)
    weights, probs = _guru_arrays(tally, competences)
    sizes = [min(MC_BLOCK, trials - start) for start in range(0, trials, MC_BLOCK)]
    jobs = [(seed, k, size, weights, probs, graph.n) for k, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda args: _mc_block(*args), jobs))
    else:
        hits = sum(_mc_block(*args) for args in jobs)
    est = hits / trials
    stderr = math.sqrt(est * (1.0 - est) / trials)
    return AccuracyResult(est, MONTE_CARLO, stderr, trials)


_EXACT_JURY_LIMIT = 2001


def condorcet_accuracy(n: int, p: float) -> float:
    """P(Binomial(n, p) >= (n + 1) / 2) for odd ``n``.

    Up to ``n = 2001`` the sum is done in exact integer arithmetic on the
    binary expansion of ``p`` and rounded once; beyond that, log-space terms
    are combined with ``math.fsum`` (relative error around 1e-11).
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"jury size must be a positive odd integer, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"competence must lie in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return p
    need = (n + 1) // 2
    if n <= _EXACT_JURY_LIMIT:
        num, den = float(p).as_integer_ratio()
        miss = den - num
        # sum_k C(n,k) num^k miss^(n-k) / den^n, over k >= need
        term = math.comb(n, need) * num**need * miss ** (n - need)
        total = 0
        for k in range(need, n + 1):
            total += term
            if k < n:
                term = term * (n - k) * num // ((k + 1) * miss)
        return total / den**n
    logp, logq = math.log(p), math.log1p(-p)
    terms = [
        math.exp(math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) + k * logp + (n - k) * logq)
        for k in range(need, n + 1)
    ]
    return min(1.0, math.fsum(terms))


def jury_curve(p: float, n_max: int) -> list[tuple[int, float]]:
    """``(n, accuracy)`` for every odd ``n`` from 1 to ``n_max``."""
    return [(n, condorcet_accuracy(n, p)) for n in range(1, n_max + 1, 2)]
