# Every delegation profile of the five-agent network, and why the best one
# does not send everybody to the most competent neighbour.
from liquidsim import DelegationProfile, exact_accuracy_dp, make_example2, solve_bruteforce
from liquidsim.odp import profile_accuracies

graph, comp = make_example2()
print("competences:", comp)
print("may delegate:", graph.sorted_edges())

# Agent 3 can vote, go to 1, or go to 2; agent 4 can vote or go to 2.
for profile, acc in profile_accuracies(graph, comp):
    print(f"{profile.delegations()!s:20}  accuracy {acc:.3f}")

best = solve_bruteforce(graph, comp)
print("optimum:", best.profile.delegations(), round(best.accuracy, 6))

# Both delegators moving to the most competent agent (id 2, p = 0.7)
# concentrates weight 3 on one coin flip.
upward = DelegationProfile.from_mapping(5, {3: 2, 4: 2})
print("all upward:", exact_accuracy_dp(graph, comp, upward).value)
