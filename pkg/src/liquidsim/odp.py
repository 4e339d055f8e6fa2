"""Optimal delegation problem: pick the profile that maximises exact accuracy.

Brute force walks every acyclic, edge-respecting profile. A cap on guru
weight is a feasibility constraint: profiles whose resolved tally exceeds it
are rejected, never rebalanced.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .accuracy import tally_accuracy
from .core import CycleError, DelegationProfile, SocialGraph, is_acyclic, resolve

MAX_PROFILES = 10**7
# Accuracies closer than this count as tied, so symmetric profiles break ties lexicographically.
TIE_TOL = 1e-12


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OdpSolution:
    profile: DelegationProfile
    accuracy: float
    feasible_count: int
    cap: int | None = None
    method: str = "bruteforce"

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "accuracy": self.accuracy,
            "cap": self.cap,
            "feasible_count": self.feasible_count,
            "profile": {str(i): ("direct" if t is None else str(t)) for i, t in enumerate(self.profile.targets)},
        }


def action_options(graph: SocialGraph) -> list[tuple]:
    """Per-agent actions in lexicographic order: Direct first, then targets ascending."""
    return [(None,) + graph.out_neighbors(i) for i in range(graph.n)]


def search_space_size(graph: SocialGraph) -> int:
    return math.prod(1 + graph.out_degree(i) for i in range(graph.n))


def _within_cap(tally, cap):
    return cap is None or tally.max_weight() <= cap


def enumerate_profiles(graph: SocialGraph, cap: int | None = None) -> Iterator[DelegationProfile]:
    """Yield every valid profile in lexicographic order of the action vector."""
    size = search_space_size(graph)
    if size > MAX_PROFILES:
        raise SearchSpaceTooLarge(f"{size} raw profiles exceeds the limit of {MAX_PROFILES}")
    for targets in itertools.product(*action_options(graph)):
        profile = DelegationProfile(targets)
        if not is_acyclic(profile):
            continue
        if cap is not None and not _within_cap(resolve(graph, profile), cap):
            continue
        yield profile


def solve_bruteforce(graph: SocialGraph, competences: Sequence[float], cap: int | None = None) -> OdpSolution:
    best = None
    best_acc = -1.0
    count = 0
    for profile in enumerate_profiles(graph, cap):
        count += 1
        acc = tally_accuracy(resolve(graph, profile), competences)
        if acc > best_acc + TIE_TOL:
            best, best_acc = profile, acc
    if best is None:
        # only reachable with cap < 1, which no tally can satisfy
        raise ValueError(f"no profile satisfies cap={cap}")
    return OdpSolution(best, best_acc, count, cap)


def _evaluate(graph, competences, targets, cap):
    """Exact accuracy of ``targets``, or ``None`` when cyclic or over the cap."""
    profile = DelegationProfile(targets)
    try:
        tally = resolve(graph, profile)
    except CycleError:
        return None
    if not _within_cap(tally, cap):
        return None
    return tally_accuracy(tally, competences)


def _random_start(graph, competences, cap, rng, options, attempts=20):
    for _ in range(attempts):
        targets = tuple(opts[rng.integers(len(opts))] for opts in options)
        acc = _evaluate(graph, competences, targets, cap)
        if acc is not None:
            return targets, acc
    targets = (None,) * graph.n
    return targets, _evaluate(graph, competences, targets, cap)


def solve_local_search(graph: SocialGraph, competences: Sequence[float], cap: int | None = None,
                       iterations: int = 1000, seed: int = 0) -> OdpSolution:
    """Hill climbing over single-agent action changes with random restarts.

    Each iteration evaluates one neighbour (one agent switched to another of
    its actions), visiting neighbours in a seeded random order and moving to
    the first strict improvement. When a full neighbourhood yields nothing the
    search restarts from a random valid profile. The all-Direct profile is the
    initial incumbent, so the answer is never worse than direct voting.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    rng = np.random.default_rng(seed)
    options = action_options(graph)
    moves = [(i, a) for i, opts in enumerate(options) for a in opts]

    best = (None,) * graph.n
    best_acc = _evaluate(graph, competences, best, cap)
    evaluated = 1
    if len(moves) == graph.n:  # nobody can delegate
        return OdpSolution(DelegationProfile(best), best_acc, evaluated, cap, "local-search")

    current, current_acc = _random_start(graph, competences, cap, rng, options)
    order = rng.permutation(len(moves))
    pos = 0
    since_improvement = 0
    for _ in range(iterations):
        if current_acc > best_acc + TIE_TOL:
            best, best_acc = current, current_acc
        if since_improvement >= len(moves):
            current, current_acc = _random_start(graph, competences, cap, rng, options)
            order = rng.permutation(len(moves))
            pos = since_improvement = 0
            continue
        i, action = moves[order[pos]]
        pos = (pos + 1) % len(moves)
        since_improvement += 1
        if current[i] == action:
            continue
        candidate = current[:i] + (action,) + current[i + 1:]
        acc = _evaluate(graph, competences, candidate, cap)
        evaluated += 1
        if acc is not None and acc > current_acc + TIE_TOL:
            current, current_acc = candidate, acc
            since_improvement = 0
    if current_acc > best_acc + TIE_TOL:
        best, best_acc = current, current_acc
    return OdpSolution(DelegationProfile(best), best_acc, evaluated, cap, "local-search")


def profile_accuracies(graph: SocialGraph, competences: Sequence[float],
                       cap: int | None = None) -> list[tuple[DelegationProfile, float]]:
    """Exact accuracy of every valid profile, in enumeration order."""
    return [(p, tally_accuracy(resolve(graph, p), competences)) for p in enumerate_profiles(graph, cap)]
