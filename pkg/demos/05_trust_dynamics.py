# Repeated polls: poor agents start out as everybody's tie-broken choice and
# lose delegations as their gurus' votes are revealed.
import numpy as np

from liquidsim import ScenarioConfig, run_simulation

rng = np.random.default_rng(0)
values = list(rng.uniform(0.05, 0.45, 10)) + list(rng.uniform(0.55, 0.95, 40))
config = ScenarioConfig(n=50, competence={"kind": "fixed", "values": values, "shuffle": False}, cap=10, seed=0)
records = run_simulation(config, epochs=200)

for window, label in ((slice(0, 20), "first 20"), (slice(-20, None), "last 20")):
    chunk = records[window]
    print(f"{label}: accuracy {np.mean([r.accuracy for r in chunk]):.3f}, "
          f"negative-alpha share {np.median([r.neg_alpha_frac for r in chunk]):.3f}, "
          f"max weight {max(r.max_weight for r in chunk)}, "
          f"correct polls {sum(r.result == 'correct' for r in chunk)}/20")
