"""Repeated polls with trust learned from revealed outcomes.

Each epoch, delegators pick targets by trust, gurus vote, the ground truth
is revealed, and every used edge is credited with the outcome of the guru its
chain ended at. Only gurus' votes are observable.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .accuracy import tally_accuracy
from .core import CORRECT, DelegationProfile, SocialGraph, resolve, weighted_majority
from .scenarios import ACTIVE, DIRECT_ONLY, Scenario, ScenarioConfig, count_negative_alpha, random_scenario

CSV_FIELDS = ("epoch", "result", "accuracy", "neg_alpha_frac", "max_weight", "guru_count")


@dataclass(frozen=True)
class TrustState:
    """Per-edge success/failure counts plus each agent's record when voting directly.

    Scores are Laplace-smoothed: ``(s + 1) / (s + f + 2)``.
    """

    edges: tuple
    successes: np.ndarray
    failures: np.ndarray
    self_successes: np.ndarray
    self_failures: np.ndarray

    @classmethod
    def initial(cls, graph: SocialGraph) -> "TrustState":
        edges = tuple(graph.sorted_edges())
        m = len(edges)
        return cls(edges, np.zeros(m, dtype=np.int64), np.zeros(m, dtype=np.int64),
                   np.zeros(graph.n, dtype=np.int64), np.zeros(graph.n, dtype=np.int64))

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: k for k, e in enumerate(self.edges)})

    def score(self, i: int, j: int) -> float:
        k = self._index[(i, j)]
        s, f = int(self.successes[k]), int(self.failures[k])
        return (s + 1) / (s + f + 2)

    def scores(self) -> np.ndarray:
        return (self.successes + 1) / (self.successes + self.failures + 2)

    def self_estimate(self, i: int) -> float:
        s, f = int(self.self_successes[i]), int(self.self_failures[i])
        return (s + 1) / (s + f + 2)

    def observations(self, i: int, j: int) -> int:
        k = self._index[(i, j)]
        return int(self.successes[k] + self.failures[k])

    def updated(self, edge_outcomes: dict, guru_outcomes: dict) -> "TrustState":
        """Copy with one observation added per edge and per directly voting agent."""
        succ, fail = self.successes.copy(), self.failures.copy()
        ssucc, sfail = self.self_successes.copy(), self.self_failures.copy()
        for edge, ok in edge_outcomes.items():
            k = self._index[edge]
            if ok:
                succ[k] += 1
            else:
                fail[k] += 1
        for g, ok in guru_outcomes.items():
            if ok:
                ssucc[g] += 1
            else:
                sfail[g] += 1
        return TrustState(self.edges, succ, fail, ssucc, sfail)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    profile: DelegationProfile
    result: str
    accuracy: float
    neg_alpha_frac: float
    max_weight: int
    guru_count: int

    def row(self) -> dict:
        return {
            "epoch": self.epoch,
            "result": self.result,
            "accuracy": repr(self.accuracy),
            "neg_alpha_frac": repr(self.neg_alpha_frac),
            "max_weight": self.max_weight,
            "guru_count": self.guru_count,
        }


def choose_delegations(trust: TrustState, graph: SocialGraph, roles: Sequence[str],
                       cap: int | None = None, seed: int | None = None) -> DelegationProfile:
    """Trust-driven profile; always acyclic and within ``cap``.

    Delegators try out-neighbours by descending trust (ties to the lowest id)
    and skip any that would close a cycle or push the receiving guru past the
    cap; with no acceptable neighbour they vote directly. Active agents also
    vote directly when their own track record beats the best neighbour's
    score. Agents are processed in ascending id order, or in a seeded random
    order when ``seed`` is given, which decides who gets room under a cap.
    """
    n = graph.n
    parent: list[int | None] = [None] * n
    weight = [1] * n

    def guru(x):
        while parent[x] is not None:
            x = parent[x]
        return x

    order = range(n) if seed is None else np.random.default_rng(seed).permutation(n)
    for i in order:
        i = int(i)
        role = roles[i]
        nbrs = graph.out_neighbors(i)
        if role == DIRECT_ONLY or not nbrs:
            continue
        ranked = sorted(nbrs, key=lambda j: (-trust.score(i, j), j))
        if role == ACTIVE and trust.self_estimate(i) > trust.score(i, ranked[0]):
            continue
        for j in ranked:
            g = guru(j)
            if g == i:
                continue
            if cap is not None and weight[g] + weight[i] > cap:
                continue
            parent[i] = j
            weight[g] += weight[i]
            break
    return DelegationProfile(tuple(parent))


def run_epoch(state: TrustState, scenario: Scenario, epoch_seed: int, epoch: int = 0,
              profile: DelegationProfile | None = None) -> tuple[EpochRecord, TrustState]:
    """Play one poll; ``profile`` overrides the trust-driven choice when given."""
    rng = np.random.default_rng(epoch_seed)
    order_seed = int(rng.integers(2**63))
    if profile is None:
        profile = choose_delegations(state, scenario.graph, scenario.roles, scenario.cap, order_seed)
    tally = resolve(scenario.graph, profile)
    comp = scenario.competences
    gurus = tally.gurus
    draws = rng.random(len(gurus))
    votes = {g: bool(u < comp[g]) for g, u in zip(gurus, draws)}
    result = weighted_majority(tally, votes, scenario.graph.n)

    delegations = profile.delegations()
    edge_outcomes = {(i, j): votes[tally.guru_of[i]] for i, j in delegations.items()}
    neg = count_negative_alpha(comp, delegations, scenario.alpha)
    record = EpochRecord(
        epoch=epoch,
        profile=profile,
        result=result,
        accuracy=tally_accuracy(tally, comp),
        neg_alpha_frac=neg / len(delegations) if delegations else 0.0,
        max_weight=tally.max_weight(),
        guru_count=len(gurus),
    )
    return record, state.updated(edge_outcomes, votes)


def run_scenario(scenario: Scenario, epochs: int, seed: int) -> list[EpochRecord]:
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    state = TrustState.initial(scenario.graph)
    epoch_seeds = np.random.SeedSequence(seed).generate_state(epochs, dtype=np.uint64)
    records = []
    for t, s in enumerate(epoch_seeds):
        record, state = run_epoch(state, scenario, int(s), epoch=t)
        records.append(record)
    return records


def run_simulation(config: ScenarioConfig, epochs: int, seed: int | None = None) -> list[EpochRecord]:
    """Build the network from ``config`` and run ``epochs`` polls.

    The network comes from ``config.seed``; poll randomness from ``seed``
    (defaults to ``config.seed``).
    """
    scenario = random_scenario(config)
    return run_scenario(scenario, epochs, config.seed if seed is None else seed)


def write_csv(records: Iterable[EpochRecord], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator="\r\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())


def records_to_csv(records: Iterable[EpochRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def fraction_correct(records: Sequence[EpochRecord]) -> float:
    return sum(r.result == CORRECT for r in records) / len(records)
