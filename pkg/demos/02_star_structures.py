# The star and its inverted twin: how direct voting behaves as n grows.
import numpy as np

from liquidsim import DelegationProfile, StarParams, exact_accuracy_dp, make_star
from liquidsim.scenarios import star_layout

eps = 0.01
print(" n    star(direct)  star(delegate)  inverted(direct)")
for n in (7, 21, 51, 101, 201, 461):
    graph, comp = make_star(StarParams(n, eps))
    _, center, leaves = star_layout(n)
    direct = exact_accuracy_dp(graph, comp, DelegationProfile.direct(n)).value
    delegate = exact_accuracy_dp(graph, comp, DelegationProfile.from_mapping(n, {l: center for l in leaves})).value
    inv_graph, inv_comp = make_star(StarParams(n, eps, inverted=True))
    inverted = exact_accuracy_dp(inv_graph, inv_comp, DelegationProfile.direct(n)).value
    print(f"{n:4d}  {direct:12.6f}  {delegate:14.6f}  {inverted:16.6f}")

# Direct voting needs every star agent right, so it decays like (1 - eps)^(n/2);
# delegating to the centre pins accuracy at 1 - 2 eps whatever n is.
n = np.arange(7, 462, 2)
print("closed form at n=461:", (1 - eps) ** ((n[-1] - 1) / 2) * (1 - 2 * eps))
