"""Named delegation structures, seeded random networks, and alpha-delegation rules."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, asdict
from typing import Sequence

import numpy as np

from .core import SocialGraph

KAHNG = "kahng"
REFINED = "refined"

PRESET = "preset"
ACTIVE = "active"
DIRECT_ONLY = "direct"
ROLES = (PRESET, ACTIVE, DIRECT_ONLY)


class DelegationClass(enum.Enum):
    POSITIVE_ALPHA = "positive-alpha"
    NEGATIVE_ALPHA = "negative-alpha"
    NON_ALPHA = "non-alpha"


@dataclass(frozen=True)
class StarParams:
    n: int = 7
    epsilon: float = 0.01
    inverted: bool = False

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise ValueError(f"star needs an odd n >= 3, got {self.n}")
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 0.5), got {self.epsilon}")


def star_layout(n: int) -> tuple[list[int], int, list[int]]:
    """``(isolated, center, leaves)`` ids for a star of ``n`` agents.

    The ``(n-1)/2`` isolated agents come first; the center is the second star
    agent, so ``n = 7`` gives isolated 0..2, center 4, leaves 3, 5, 6.
    """
    m = (n - 1) // 2
    isolated = list(range(m))
    center = m + 1
    leaves = [i for i in range(m, n) if i != center]
    return isolated, center, leaves


def make_star(params: StarParams) -> tuple[SocialGraph, list[float]]:
    """Star of ``(n+1)/2`` agents beside ``(n-1)/2`` isolated ones.

    Leaves have competence ``1 - eps`` and may delegate to a center of
    ``1 - 2 eps``; isolated agents are always wrong. ``inverted`` flips every
    competence to ``1 - p``.
    """
    isolated, center, leaves = star_layout(params.n)
    eps = params.epsilon
    comp = [0.0] * params.n
    for i in leaves:
        comp[i] = 1.0 - eps
    comp[center] = 1.0 - 2.0 * eps
    if params.inverted:
        comp = [1.0 if i in isolated else (2.0 * eps if i == center else eps) for i in range(params.n)]
    graph = SocialGraph(params.n, frozenset((leaf, center) for leaf in leaves))
    return graph, comp


# Figure ids 1..5 map to 0..4.
EXAMPLE2_COMPETENCES = (1.0, 0.5, 0.7, 0.6, 0.5)
EXAMPLE2_EDGES = ((3, 1), (3, 2), (4, 2))


def make_example2() -> tuple[SocialGraph, list[float]]:
    """Five agents where delegating to the best neighbour is not optimal."""
    return SocialGraph(5, frozenset(EXAMPLE2_EDGES)), list(EXAMPLE2_COMPETENCES)


def _check_alpha(alpha: float) -> None:
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")


def delegation_allowed(p_i: float, p_j: float, alpha: float, model: str = REFINED) -> bool:
    """Whether i may delegate to j under the original or the refined condition."""
    _check_alpha(alpha)
    if model == KAHNG:
        return p_j > p_i + alpha
    if model == REFINED:
        return (p_i >= 0.5 and p_j > p_i + alpha) or (p_i <= 0.5 and p_j < p_i - alpha)
    raise ValueError(f"unknown delegation model {model!r}")


def classify_delegation(p_i: float, p_j: float, alpha: float) -> DelegationClass:
    _check_alpha(alpha)
    if p_i >= 0.5 and p_j > p_i + alpha:
        return DelegationClass.POSITIVE_ALPHA
    if p_i <= 0.5 and p_j < p_i - alpha:
        return DelegationClass.NEGATIVE_ALPHA
    return DelegationClass.NON_ALPHA


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters for a seeded random delegation network.

    ``competence`` is one of ``{"kind": "beta", "a": .., "b": ..}``,
    ``{"kind": "uniform", "low": .., "high": ..}`` or
    ``{"kind": "fixed", "values": [...], "shuffle": true}``. A fixed list is
    assigned in a seeded random order unless ``shuffle`` is false.
    """

    n: int = 100
    competence: dict = field(default_factory=lambda: {"kind": "beta", "a": 4.0, "b": 2.0})
    edge_model: str = "random-k"
    out_degree: int = 5
    preset_delegation_fraction: float = 0.90
    preset_share_of_delegations: float = 0.95
    alpha: float = 0.0
    cap: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        for name in ("preset_delegation_fraction", "preset_share_of_delegations"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        _check_alpha(self.alpha)
        if self.cap is not None and self.cap < 1:
            raise ValueError(f"cap must be >= 1, got {self.cap}")
        if self.edge_model not in ("random-k", "preferential"):
            raise ValueError(f"unknown edge model {self.edge_model!r}")
        if self.out_degree < 0 or (self.out_degree > 0 and self.out_degree >= self.n):
            raise ValueError(f"out_degree {self.out_degree} infeasible for n={self.n}")
        kind = self.competence.get("kind")
        if kind == "fixed" and len(self.competence.get("values", ())) != self.n:
            raise ValueError("fixed competence list must have one value per agent")
        if kind not in ("beta", "uniform", "fixed"):
            raise ValueError(f"unknown competence distribution {kind!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class Scenario:
    graph: SocialGraph
    competences: tuple
    roles: tuple
    alpha: float = 0.0
    cap: int | None = None


def _draw_competences(config: ScenarioConfig, rng: np.random.Generator) -> np.ndarray:
    spec = config.competence
    kind = spec["kind"]
    if kind == "beta":
        return rng.beta(spec.get("a", 4.0), spec.get("b", 2.0), size=config.n)
    if kind == "uniform":
        return rng.uniform(spec.get("low", 0.0), spec.get("high", 1.0), size=config.n)
    values = np.asarray(spec["values"], dtype=float)
    return rng.permutation(values) if spec.get("shuffle", True) else values


def _draw_edges(config: ScenarioConfig, rng: np.random.Generator) -> set[tuple[int, int]]:
    n, k = config.n, config.out_degree
    edges = set()
    if config.edge_model == "random-k":
        for i in range(n):
            others = np.delete(np.arange(n), i)
            for j in rng.choice(others, size=k, replace=False):
                edges.add((i, int(j)))
        return edges
    # preferential: targets drawn proportional to 1 + current in-degree
    indeg = np.zeros(n)
    for i in rng.permutation(n):
        w = indeg + 1.0
        w[i] = 0.0
        for j in rng.choice(n, size=k, replace=False, p=w / w.sum()):
            edges.add((int(i), int(j)))
            indeg[j] += 1
    return edges


def random_scenario(config: ScenarioConfig) -> Scenario:
    """Seeded network with per-agent roles drawn from the preset/active fractions."""
    rng = np.random.default_rng(config.seed)
    comp = np.clip(_draw_competences(config, rng), 0.0, 1.0)
    edges = _draw_edges(config, rng)
    u = rng.random(config.n)
    delegating = config.preset_delegation_fraction
    preset_cut = delegating * config.preset_share_of_delegations
    roles = tuple(PRESET if x < preset_cut else ACTIVE if x < delegating else DIRECT_ONLY for x in u)
    return Scenario(
        SocialGraph(config.n, frozenset(edges)),
        tuple(float(p) for p in comp),
        roles,
        config.alpha,
        config.cap,
    )


def example2_profiles_named() -> dict[str, dict[int, int]]:
    """The two delegation combinations singled out for the five-agent example."""
    return {"optimum": {3: 1, 4: 2}, "upward": {3: 2, 4: 2}}


def all_roles(n: int, role: str) -> tuple:
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    return (role,) * n


def count_negative_alpha(competences: Sequence[float], delegations: dict[int, int], alpha: float) -> int:
    return sum(
        classify_delegation(competences[i], competences[j], alpha) is DelegationClass.NEGATIVE_ALPHA
        for i, j in delegations.items()
    )
