"""Exit criteria for the package; one PASS/FAIL line each is printed at session end."""

import time

import numpy as np
import pytest

from liquidsim.accuracy import condorcet_accuracy, exact_accuracy_dp, exact_accuracy_enum, mc_accuracy
from liquidsim.cli import main
from liquidsim.core import DelegationProfile, SocialGraph
from liquidsim.dynamics import run_simulation
from liquidsim.odp import enumerate_profiles, search_space_size, solve_bruteforce, solve_local_search
from liquidsim.scenarios import ScenarioConfig, StarParams, make_example2, make_star, star_layout

from oracles import binomial_upper_tail, brute_accuracy

RESULTS = {}

EX2_OPTIMUM = {3: 1, 4: 2}  # figure agents 4->2, 5->3
EX2_UPWARD = {3: 2, 4: 2}  # figure agents 4->3, 5->3


@pytest.fixture
def criterion(request):
    name = request.node.name

    def record(ok, detail):
        RESULTS[name] = (bool(ok), detail)
        assert ok, detail

    return record


def test_c01_example2_range(criterion):
    graph, comp = make_example2()
    start = time.perf_counter()
    profiles = list(enumerate_profiles(graph))
    values = [exact_accuracy_dp(graph, comp, p).value for p in profiles]
    elapsed = time.perf_counter() - start
    # every valid combination: (1 + out-degree) per agent, none cyclic
    expected_count = search_space_size(graph)
    ok = (
        len(profiles) == expected_count == 6
        and abs(min(values) - 0.675) <= 1e-9
        and abs(max(values) - 0.850) <= 1e-9
        and elapsed < 1.0
    )
    criterion(ok, f"{len(profiles)} profiles, min={min(values):.12f} max={max(values):.12f}, {elapsed:.3f}s")


def test_c02_named_combinations(criterion):
    graph, comp = make_example2()
    best = exact_accuracy_dp(graph, comp, DelegationProfile.from_mapping(5, EX2_OPTIMUM)).value
    upward = exact_accuracy_dp(graph, comp, DelegationProfile.from_mapping(5, EX2_UPWARD)).value
    ok = abs(best - 0.85) <= 1e-9 and abs(upward - 0.70) <= 1e-9
    criterion(ok, f"optimum={best:.12f} upward={upward:.12f}")


def test_c03_odp(criterion):
    graph, comp = make_example2()
    sol = solve_bruteforce(graph, comp)
    hits = sum(
        abs(solve_local_search(graph, comp, iterations=1000, seed=s).accuracy - sol.accuracy) <= 1e-9
        for s in range(20)
    )
    ok = abs(sol.accuracy - 0.85) <= 1e-9 and sol.profile.delegations() == EX2_OPTIMUM and hits >= 19
    criterion(ok, f"bruteforce={sol.accuracy:.12f} {sol.profile.delegations()}, local search matched {hits}/20")


def test_c04_example1(criterion):
    graph, comp = make_star(StarParams(7, 0.01))
    _, center, leaves = star_layout(7)
    direct = DelegationProfile.direct(7)
    delegate = DelegationProfile.from_mapping(7, {leaf: center for leaf in leaves})
    closed = 0.99**3 * 0.98
    d_dp = exact_accuracy_dp(graph, comp, direct).value
    d_enum = exact_accuracy_enum(graph, comp, direct).value
    d_brute = brute_accuracy(comp, direct.targets)
    all_del = exact_accuracy_dp(graph, comp, delegate).value
    capped = solve_bruteforce(graph, comp, cap=3).accuracy
    # oracle for the cap: best over the 8 leaf subsets that keep the centre at weight <= 3
    subset_best = max(
        brute_accuracy(comp, [center if (i in leaves and mask >> leaves.index(i) & 1) else None for i in range(7)])
        for mask in range(8)
        if 1 + bin(mask).count("1") <= 3
    )
    ok = (
        abs(d_dp - 0.95089302) <= 1e-9
        and abs(closed - 0.95089302) <= 1e-12
        and abs(d_enum - d_dp) <= 1e-12
        and abs(d_brute - d_dp) <= 1e-12
        and abs(all_del - 0.98) <= 1e-9
        and abs(capped - 0.9702) <= 1e-9
        and abs(subset_best - 0.9702) <= 1e-12
    )
    criterion(ok, f"direct={d_dp:.10f} (enum {d_enum:.10f}) delegate={all_del:.10f} cap3={capped:.10f}")


def test_c05_star_asymptotics(criterion):
    eps = 0.01
    ns = [7, 21, 51, 101]
    star = [exact_accuracy_dp(*make_star(StarParams(n, eps)), DelegationProfile.direct(n)).value for n in ns]
    inv_ns = [7, 21, 51, 101, 201, 301, 461]
    inverted = [
        exact_accuracy_dp(*make_star(StarParams(n, eps, inverted=True)), DelegationProfile.direct(n)).value
        for n in inv_ns
    ]
    inv_oracle = [1 - 0.99 ** ((n + 1) / 2) * (0.98 / 0.99) for n in inv_ns]
    star_oracle = [(1 - eps) ** ((n - 1) / 2) * (1 - 2 * eps) for n in ns]
    ok = (
        all(a > b for a, b in zip(star, star[1:]))
        and star[-1] < 0.60
        and np.allclose(star, star_oracle, atol=1e-12)
        and all(a < b for a, b in zip(inverted, inverted[1:]))
        and inverted[-1] > 0.9
        and np.allclose(inverted, inv_oracle, atol=1e-12)
    )
    criterion(ok, f"star n=101 {star[-1]:.6f}; inverted n=461 {inverted[-1]:.6f}")


def test_c06_condorcet(criterion):
    ns = list(range(1, 102, 2))
    values = [condorcet_accuracy(n, 0.6) for n in ns]
    oracle = [float(binomial_upper_tail(n, 0.6)) for n in ns]
    ok = (
        all(a < b for a, b in zip(values, values[1:]))
        and values[-1] > 0.97
        and max(abs(a - b) for a, b in zip(values, oracle)) <= 1e-6
    )
    criterion(ok, f"n=101 -> {values[-1]:.10f} (oracle {oracle[-1]:.10f})")


def _random_instance(rng):
    g = int(rng.integers(1, 13))
    extra = int(rng.integers(0, 13))
    n = g + extra
    comp = rng.random(n)
    gurus = rng.choice(n, size=g, replace=False)
    others = [i for i in range(n) if i not in set(gurus.tolist())]
    targets = [None] * n
    attached = list(gurus.tolist())
    for i in rng.permutation(others):
        targets[int(i)] = int(attached[rng.integers(len(attached))])
        attached.append(int(i))
    edges = {(i, t) for i, t in enumerate(targets) if t is not None}
    return SocialGraph(n, edges), comp, DelegationProfile(tuple(targets)), g


def test_c07_oracle_equivalence(criterion):
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    max_g = 0
    for _ in range(200):
        graph, comp, profile, g = _random_instance(rng)
        max_g = max(max_g, g)
        worst = max(worst, abs(exact_accuracy_dp(graph, comp, profile).value
                               - exact_accuracy_enum(graph, comp, profile).value))
    elapsed = time.perf_counter() - start
    criterion(worst <= 1e-12 and max_g <= 12 and elapsed < 30, f"max diff {worst:.2e}, g<= {max_g}, {elapsed:.2f}s")


def test_c08_monte_carlo_calibration(criterion):
    graph, comp = make_example2()
    profile = DelegationProfile.from_mapping(5, EX2_OPTIMUM)
    start = time.perf_counter()
    inside = 0
    for seed in range(100):
        res = mc_accuracy(graph, comp, profile, 10**6, seed)
        inside += abs(res.value - 0.85) <= 5 * res.stderr
    elapsed = time.perf_counter() - start
    criterion(inside >= 99 and elapsed < 60, f"{inside}/100 seeds within 5 stderr, {elapsed:.1f}s")


def dynamics_config(seed):
    """50 agents, the 10 lowest ids below 0.5 competence, cap 10.

    Placing the poor agents at the lowest ids makes them the default pick while
    every trust score is still tied, i.e. trust that has not been earned.
    """
    rng = np.random.default_rng(seed)
    values = list(rng.uniform(0.05, 0.45, 10)) + list(rng.uniform(0.55, 0.95, 40))
    return ScenarioConfig(
        n=50,
        competence={"kind": "fixed", "values": values, "shuffle": False},
        cap=10,
        alpha=0.0,
        seed=seed,
    )


def test_c09_dynamics_decay(criterion):
    start = time.perf_counter()
    first_neg, last_neg, first_acc, last_acc = [], [], [], []
    for seed in range(20):
        records = run_simulation(dynamics_config(seed), 200, seed)
        neg = [r.neg_alpha_frac for r in records]
        acc = [r.accuracy for r in records]
        first_neg.append(np.median(neg[:20]))
        last_neg.append(np.median(neg[-20:]))
        first_acc.append(np.mean(acc[:20]))
        last_acc.append(np.mean(acc[-20:]))
    elapsed = time.perf_counter() - start
    med_first, med_last = np.median(first_neg), np.median(last_neg)
    acc_first, acc_last = np.mean(first_acc), np.mean(last_acc)
    ok = med_last < med_first and acc_last >= acc_first and elapsed < 120
    criterion(ok, f"neg-alpha median {med_first:.4f} -> {med_last:.4f}; "
                  f"accuracy mean {acc_first:.4f} -> {acc_last:.4f}; {elapsed:.1f}s")


def _cli_bytes(tmp_path, tag, argv):
    out = tmp_path / f"{tag}.out"
    code = main(argv + ["--out", str(out)])
    assert code == 0, argv
    return out.read_bytes()


def test_c10_cli_reproducibility(criterion, tmp_path, capsys):
    ex2 = tmp_path / "ex2.json"
    main(["scenario", "--kind", "example2", "--out", str(ex2)])
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"n": 40, "cap": 8, "seed": 3}')
    commands = {
        "scenario-star": ["scenario", "--kind", "star", "--n", "7", "--epsilon", "0.01"],
        "scenario-inverted": ["scenario", "--kind", "inverted-star", "--n", "9"],
        "scenario-example2": ["scenario", "--kind", "example2"],
        "scenario-random": ["scenario", "--kind", "random", "--n", "60", "--seed", "11"],
        "accuracy-all": ["accuracy", "--scenario", str(ex2), "--all-profiles"],
        "accuracy-mc": ["accuracy", "--scenario", str(ex2), "--mc", "1000000", "--seed", "7"],
        "odp": ["odp", "--scenario", str(ex2), "--cap", "3"],
        "odp-heuristic": ["odp", "--scenario", str(ex2), "--heuristic", "--iters", "300", "--seed", "2"],
        "dynamics": ["dynamics", "--config", str(cfg), "--epochs", "30", "--seed", "4"],
        "jury": ["jury", "--p", "0.6", "--n-max", "201"],
    }
    differing = [
        tag for tag, argv in commands.items()
        if _cli_bytes(tmp_path, tag + "-a", argv) != _cli_bytes(tmp_path, tag + "-b", argv)
    ]
    capsys.readouterr()
    criterion(not differing, f"{len(commands)} commands, differing: {differing or 'none'}")
