"""Liquid-democracy delegation networks with a binary ground truth."""

__version__ = "0.1.0"

from .core import (
    CORRECT,
    INCORRECT,
    Agent,
    CycleError,
    DelegationError,
    DelegationProfile,
    NonEdgeError,
    SocialGraph,
    Tally,
    resolve,
    validate_graph,
    weighted_majority,
)
from .accuracy import (
    AccuracyResult,
    TooLargeError,
    condorcet_accuracy,
    exact_accuracy_dp,
    exact_accuracy_enum,
    jury_curve,
    mc_accuracy,
)
from .scenarios import (
    DelegationClass,
    Scenario,
    ScenarioConfig,
    StarParams,
    classify_delegation,
    delegation_allowed,
    make_example2,
    make_star,
    random_scenario,
)
from .odp import OdpSolution, SearchSpaceTooLarge, enumerate_profiles, solve_bruteforce, solve_local_search
from .dynamics import EpochRecord, TrustState, choose_delegations, run_epoch, run_simulation
