"""Delegation graphs, profiles, and transitive resolution into guru weights.

Agents are dense integer ids ``0..n-1``. A :class:`DelegationProfile` stores one
action per agent: ``None`` for a direct vote, or the id of the agent it
delegates to. Resolution follows every chain to its terminal direct voter
(the guru) and counts the weight each guru carries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

CORRECT = "correct"
INCORRECT = "incorrect"


class DelegationError(ValueError):
    """Base class for invalid delegation profiles."""


class CycleError(DelegationError):
    def __init__(self, member: int, cycle: Sequence[int] = ()):
        self.member = member
        self.cycle = tuple(cycle)
        super().__init__(f"delegation cycle through agent {member}: {list(self.cycle)}")


class NonEdgeError(DelegationError):
    def __init__(self, source: int, target: int):
        self.source = source
        self.target = target
        super().__init__(f"agent {source} delegates to {target} but ({source}, {target}) is not an edge")


@dataclass(frozen=True)
class Agent:
    id: int
    competence: float


@dataclass(frozen=True)
class SocialGraph:
    """Directed permissible-delegation edges; ``(i, j)`` means i may delegate to j.

    Construction does not validate; use :func:`validate_graph` for a report.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(i), int(j)) for i, j in self.edges))
        out: dict[int, list[int]] = {}
        for i, j in self.edges:
            out.setdefault(i, []).append(j)
        object.__setattr__(self, "_out", {i: tuple(sorted(js)) for i, js in out.items()})

    def out_neighbors(self, i: int) -> tuple[int, ...]:
        """Permissible targets of agent ``i`` in ascending id order."""
        return self._out.get(i, ())

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def out_degree(self, i: int) -> int:
        return len(self.out_neighbors(i))

    def in_degree(self, j: int) -> int:
        return sum(1 for _, t in self.edges if t == j)


@dataclass(frozen=True)
class DelegationProfile:
    """One action per agent: ``None`` votes directly, an int delegates to that agent."""

    targets: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "targets", tuple(None if t is None else int(t) for t in self.targets)
        )

    @classmethod
    def direct(cls, n: int) -> "DelegationProfile":
        return cls((None,) * n)

    @classmethod
    def from_mapping(cls, n: int, delegations: Mapping[int, int | None]) -> "DelegationProfile":
        """Build a profile from ``{agent: target}``; unlisted agents vote directly."""
        targets = [None] * n
        for i, j in delegations.items():
            if not 0 <= i < n:
                raise ValueError(f"agent id {i} out of range for n={n}")
            targets[i] = j
        return cls(tuple(targets))

    @property
    def n(self) -> int:
        return len(self.targets)

    def delegations(self) -> dict[int, int]:
        return {i: t for i, t in enumerate(self.targets) if t is not None}

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic key with Direct ordered before any delegation target."""
        return tuple(-1 if t is None else t for t in self.targets)


@dataclass(frozen=True)
class Tally:
    """Resolved voting weights of the gurus, plus each agent's guru."""

    weights: Mapping[int, int]
    guru_of: tuple

    @property
    def gurus(self) -> list[int]:
        return sorted(self.weights)

    @property
    def n(self) -> int:
        return len(self.guru_of)

    def max_weight(self) -> int:
        return max(self.weights.values(), default=0)


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.valid


def validate_graph(graph: SocialGraph, competences: Sequence[float] | None = None) -> ValidationReport:
    """Collect every violation of the graph and competence invariants."""
    issues = []
    if graph.n < 0:
        issues.append(f"negative agent count {graph.n}")
    for i, j in graph.sorted_edges():
        if i == j:
            issues.append(f"self-loop on agent {i}")
        for end in (i, j):
            if not 0 <= end < graph.n:
                issues.append(f"edge ({i}, {j}) endpoint {end} out of range")
    if competences is not None:
        if len(competences) != graph.n:
            issues.append(f"{len(competences)} competences for {graph.n} agents")
        for i, p in enumerate(competences):
            if not 0.0 <= p <= 1.0:
                issues.append(f"competence of agent {i} is {p}, outside [0, 1]")
    return ValidationReport(tuple(issues))


def check_profile(graph: SocialGraph, profile: DelegationProfile) -> None:
    """Raise if ``profile`` does not fit ``graph``; cycles are reported by :func:`resolve`."""
    if profile.n != graph.n:
        raise DelegationError(f"profile covers {profile.n} agents, graph has {graph.n}")
    for i, j in enumerate(profile.targets):
        if j is not None and not graph.has_edge(i, j):
            raise NonEdgeError(i, j)


def resolve(graph: SocialGraph, profile: DelegationProfile) -> Tally:
    """Follow every delegation chain to its guru and count guru weights."""
    check_profile(graph, profile)
    n = graph.n
    targets = profile.targets
    guru_of: list[int | None] = [None] * n
    for start in range(n):
        if guru_of[start] is not None:
            continue
        path = []
        on_path = set()
        node = start
        while guru_of[node] is None and targets[node] is not None:
            if node in on_path:
                cycle = path[path.index(node):]
                raise CycleError(node, cycle)
            on_path.add(node)
            path.append(node)
            node = targets[node]
        guru = node if guru_of[node] is None else guru_of[node]
        guru_of[node] = guru
        for member in path:
            guru_of[member] = guru
    weights: dict[int, int] = {}
    for g in guru_of:
        weights[g] = weights.get(g, 0) + 1
    return Tally(dict(sorted(weights.items())), tuple(guru_of))


def is_acyclic(profile: DelegationProfile) -> bool:
    targets = profile.targets
    state = [0] * len(targets)  # 0 unseen, 1 on current path, 2 done
    for start in range(len(targets)):
        path = []
        node = start
        while node is not None and state[node] == 0:
            state[node] = 1
            path.append(node)
            node = targets[node]
        if node is not None and state[node] == 1:
            return False
        for member in path:
            state[member] = 2
    return True


def weighted_majority(tally: Tally, guru_votes: Mapping[int, bool], n: int) -> str:
    """Return ``CORRECT`` iff the correct gurus carry strictly more than ``n / 2``.

    A tie counts as incorrect.
    """
    gurus = set(tally.weights)
    voted = set(guru_votes)
    if gurus != voted:
        missing = sorted(gurus - voted)
        extra = sorted(voted - gurus)
        raise ValueError(f"guru votes mismatch: missing {missing}, extra {extra}")
    correct = sum(tally.weights[g] for g, ok in guru_votes.items() if ok)
    return CORRECT if 2 * correct > n else INCORRECT


def agents_from(competences: Iterable[float]) -> list[Agent]:
    return [Agent(i, float(p)) for i, p in enumerate(competences)]
