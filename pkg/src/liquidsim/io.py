"""JSON documents for scenarios and profiles.

A scenario document looks like::

    {"agents": [{"id": 0, "p": 0.99}, ...],
     "edges": [[3, 4], [5, 4]],
     "profile": {"3": "4", "0": "direct"},
     "roles": {"0": "preset", "1": "direct"}}

``profile`` and ``roles`` are optional; unknown keys are rejected. Agents left
out of ``profile`` vote directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import DelegationProfile, SocialGraph, validate_graph
from .scenarios import ROLES

SCENARIO_KEYS = {"agents", "edges", "profile", "roles"}
AGENT_KEYS = {"id", "p"}


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioDoc:
    graph: SocialGraph
    competences: tuple
    profile: DelegationProfile | None = None
    roles: tuple | None = None


def _agent_id(key, n: int) -> int:
    try:
        i = int(key)
    except (TypeError, ValueError):
        raise SchemaError(f"agent id {key!r} is not an integer") from None
    if not 0 <= i < n:
        raise SchemaError(f"agent id {i} out of range for {n} agents")
    return i


def parse_profile(mapping: dict, n: int) -> DelegationProfile:
    if not isinstance(mapping, dict):
        raise SchemaError("profile must be an object")
    targets: list[int | None] = [None] * n
    for key, action in mapping.items():
        i = _agent_id(key, n)
        targets[i] = None if action == "direct" else _agent_id(action, n)
    return DelegationProfile(tuple(targets))


def profile_to_json(profile: DelegationProfile) -> dict:
    return {str(i): ("direct" if t is None else str(t)) for i, t in enumerate(profile.targets)}


def parse_scenario(data: dict) -> ScenarioDoc:
    if not isinstance(data, dict):
        raise SchemaError("scenario must be a JSON object")
    unknown = set(data) - SCENARIO_KEYS
    if unknown:
        raise SchemaError(f"unknown scenario keys: {sorted(unknown)}")
    if "agents" not in data:
        raise SchemaError("scenario has no 'agents'")
    agents = data["agents"]
    n = len(agents)
    comp: list[float | None] = [None] * n
    for a in agents:
        if not isinstance(a, dict) or set(a) != AGENT_KEYS:
            raise SchemaError(f"agent entry must have exactly keys {sorted(AGENT_KEYS)}: {a!r}")
        i = _agent_id(a["id"], n)
        if comp[i] is not None:
            raise SchemaError(f"duplicate agent id {i}")
        comp[i] = float(a["p"])
    edges = []
    for e in data.get("edges", []):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise SchemaError(f"edge must be a pair of integers: {e!r}")
        edges.append(tuple(e))
    if len(set(edges)) != len(edges):
        raise SchemaError("duplicate edges")
    graph = SocialGraph(n, frozenset(edges))
    report = validate_graph(graph, comp)
    if not report.valid:
        raise SchemaError("; ".join(report.issues))
    profile = parse_profile(data["profile"], n) if "profile" in data else None
    roles = None
    if "roles" in data:
        role_list = [None] * n
        for key, role in data["roles"].items():
            if role not in ROLES:
                raise SchemaError(f"unknown role {role!r}")
            role_list[_agent_id(key, n)] = role
        if None in role_list:
            raise SchemaError("roles must cover every agent")
        roles = tuple(role_list)
    return ScenarioDoc(graph, tuple(comp), profile, roles)


def scenario_to_json(graph: SocialGraph, competences, profile: DelegationProfile | None = None,
                     roles=None) -> dict:
    doc = {
        "agents": [{"id": i, "p": float(p)} for i, p in enumerate(competences)],
        "edges": [list(e) for e in graph.sorted_edges()],
    }
    if profile is not None:
        doc["profile"] = profile_to_json(profile)
    if roles is not None:
        doc["roles"] = {str(i): r for i, r in enumerate(roles)}
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def load_scenario(path) -> ScenarioDoc:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(json.load(fh))


def load_profile(path, n: int) -> DelegationProfile:
    """Read a profile file: either a bare mapping or ``{"profile": {...}}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict) and set(data) == {"profile"}:
        data = data["profile"]
    return parse_profile(data, n)
