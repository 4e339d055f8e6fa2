# Capping guru weight on the 7-agent star, and heuristic vs exhaustive search.
import numpy as np

from liquidsim import SocialGraph, StarParams, make_star, solve_bruteforce, solve_local_search

graph, comp = make_star(StarParams(7, 0.01))
for cap in (None, 4, 3, 2, 1):
    sol = solve_bruteforce(graph, comp, cap=cap)
    print(f"cap={cap}: accuracy {sol.accuracy:.6f}, delegations {sol.profile.delegations()}, "
          f"{sol.feasible_count} feasible profiles")

# A random 9-agent network: local search against the exact optimum.
rng = np.random.default_rng(0)
n = 9
edges = {(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < 0.2}
comp = rng.uniform(0.3, 0.9, n)
graph = SocialGraph(n, edges)
exact = solve_bruteforce(graph, comp)
print("search space:", exact.feasible_count, "valid profiles")
for seed in range(3):
    heur = solve_local_search(graph, comp, iterations=2000, seed=seed)
    print(f"seed {seed}: local {heur.accuracy:.6f} vs optimum {exact.accuracy:.6f}")
