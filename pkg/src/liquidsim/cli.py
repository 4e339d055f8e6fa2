"""Command-line front end.

Exit codes: 0 ok, 1 I/O failure, 2 usage or malformed input, 3 invalid
profile (cycle or non-edge), 4 search space too large. Output is plain text;
no colour is ever emitted, so ``NO_COLOR`` is honoured trivially.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .accuracy import exact_accuracy_dp, jury_curve, mc_accuracy
from .core import DelegationError, DelegationProfile
from .dynamics import records_to_csv, run_simulation
from .io import SchemaError, dumps, load_profile, load_scenario, profile_to_json, scenario_to_json
from .odp import SearchSpaceTooLarge, profile_accuracies, solve_bruteforce, solve_local_search
from .scenarios import ScenarioConfig, StarParams, make_example2, make_star, random_scenario

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_PROFILE, EXIT_SEARCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(text: str, args, inputs=(), seed=None) -> None:
    """Write the primary output and, for files, a sidecar manifest."""
    if args.out is None:
        sys.stdout.write(text)
        return
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    manifest = {
        "subcommand": args.command,
        "inputs": list(inputs),
        "seed": seed,
        "output": args.out,
        "version": __version__,
        "config": {k: v for k, v in vars(args).items() if k != "func"},
        "created": datetime.now(timezone.utc).isoformat(),
    }
    with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
        fh.write(dumps(manifest))


def cmd_scenario(args) -> int:
    kind = args.kind
    profile = roles = None
    try:
        if kind in ("star", "inverted-star"):
            graph, comp = make_star(StarParams(args.n, args.epsilon, inverted=kind == "inverted-star"))
        elif kind == "example2":
            graph, comp = make_example2()
        else:
            data = {}
            if args.config:
                with open(args.config, encoding="utf-8") as fh:
                    data = json.load(fh)
            data.setdefault("n", args.n)
            data.setdefault("seed", args.seed)
            sc = random_scenario(ScenarioConfig.from_dict(data))
            graph, comp, roles = sc.graph, sc.competences, sc.roles
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(dumps(scenario_to_json(graph, comp, profile, roles)), args, [args.config] if args.config else [], args.seed)
    return EXIT_OK


def cmd_accuracy(args) -> int:
    doc = load_scenario(args.scenario)
    inputs = [args.scenario]
    if args.all_profiles:
        rows = profile_accuracies(doc.graph, doc.competences)
        values = [acc for _, acc in rows]
        out = {
            "count": len(rows),
            "min": min(values),
            "max": max(values),
            "profiles": [{"profile": profile_to_json(p), "accuracy": acc} for p, acc in rows],
        }
        _emit(dumps(out), args, inputs)
        return EXIT_OK
    if args.profile:
        profile = load_profile(args.profile, doc.graph.n)
        inputs.append(args.profile)
    else:
        profile = doc.profile or DelegationProfile.direct(doc.graph.n)
    exact = exact_accuracy_dp(doc.graph, doc.competences, profile)
    out = {"profile": profile_to_json(profile), "exact": {"value": exact.value, "method": exact.method}}
    if args.mc:
        est = mc_accuracy(doc.graph, doc.competences, profile, args.mc, args.seed, workers=args.workers)
        out["monte_carlo"] = {"value": est.value, "stderr": est.stderr, "trials": est.trials, "seed": args.seed}
    _emit(dumps(out), args, inputs, args.seed if args.mc else None)
    return EXIT_OK


def cmd_odp(args) -> int:
    doc = load_scenario(args.scenario)
    if args.heuristic:
        sol = solve_local_search(doc.graph, doc.competences, args.cap, args.iters, args.seed)
    else:
        sol = solve_bruteforce(doc.graph, doc.competences, args.cap)
    _emit(dumps(sol.to_dict()), args, [args.scenario], args.seed if args.heuristic else None)
    return EXIT_OK


def cmd_dynamics(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        config = ScenarioConfig.from_dict(data)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if args.epochs < 1:
        raise UsageError("--epochs must be >= 1")
    records = run_simulation(config, args.epochs, args.seed)
    _emit(records_to_csv(records), args, [args.config], args.seed)
    return EXIT_OK


def cmd_jury(args) -> int:
    if not 0.0 <= args.p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["n", "accuracy"])
    for n, acc in jury_curve(args.p, args.n_max):
        writer.writerow([n, repr(acc)])
    _emit(buf.getvalue(), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liquidsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scenario", help="write a scenario JSON")
    p.add_argument("--kind", required=True, choices=["star", "inverted-star", "example2", "random"])
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="ScenarioConfig JSON for --kind random")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("accuracy", help="probability of a correct decision")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--profile")
    group.add_argument("--all-profiles", action="store_true")
    p.add_argument("--mc", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_accuracy)

    p = sub.add_parser("odp", help="solve the optimal delegation problem")
    p.add_argument("--scenario", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_odp)

    p = sub.add_parser("dynamics", help="repeated polls with trust learning")
    p.add_argument("--config", required=True)
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("jury", help="Condorcet jury curve over odd n")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_jury)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"liquidsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DelegationError as exc:
        print(f"liquidsim: invalid profile: {exc}", file=sys.stderr)
        return EXIT_PROFILE
    except SearchSpaceTooLarge as exc:
        print(f"liquidsim: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except SchemaError as exc:
        print(f"liquidsim: malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"liquidsim: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
