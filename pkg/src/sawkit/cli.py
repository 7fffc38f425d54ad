"""Command-line front door.

Commands: ``check`` (property report + assertions on a family file),
``construct`` (named families to a file), ``search`` (maximum-family search),
``chains`` (exact and sampled chain statistics), ``verify`` (the acceptance
suite).  Exit codes: 0 success, 1 failed assertion or mismatch, 2 input
error, 3 budget exhausted without a verdict.

``SAWKIT_WORKERS`` sets the default worker count; workers never change any
output byte, only wall time.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .chains import check_chain_lemma, chain_stats, monte_carlo_chain_stats
from .constructions import (
    consecutive_layers,
    lightning,
    middle_layers,
    odd_intersecting_extremal,
    power_set_minus_one,
    star,
)
from .families import (
    Family,
    elements_of,
    first_disjoint_pair,
    first_saw_violation,
    is_antichain,
    min_saw_t,
)
from .familyio import (
    FamilyParseError,
    TEXT_FORMAT,
    JSON_FORMAT,
    document_from_family,
    emit_family,
    parse_family,
)
from .search import (
    Mode,
    SearchProblem,
    SearchStatus,
    exhaustive_oracle,
    search_max,
)
from .sunflowers import (
    DEFAULT_ODD_BUDGET,
    OddSearchStatus,
    describe_members,
    find_even_sunflower,
    find_odd_sunflower,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _default_workers() -> int:
    raw = os.environ.get("SAWKIT_WORKERS", "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(value, 1)


def build_property_report(fam: Family, odd_budget: int = DEFAULT_ODD_BUDGET) -> dict:
    """Assemble the full property report; every embedded certificate has been
    re-verified by the module that produced it."""
    report: dict = {
        "n": fam.n,
        "size": len(fam),
        "layers": [int(c) for c in fam.layers],
        "min_saw_t": min_saw_t(fam),
        "antichain": is_antichain(fam),
    }
    pair = first_disjoint_pair(fam)
    report["intersecting"] = {
        "holds": pair is None,
        "witness": None if pair is None else [list(elements_of(pair[0])), list(elements_of(pair[1]))],
    }
    stats = chain_stats(fam)
    report["lym_sum"] = _rational(stats.lym_sum)
    report["expected_weight"] = _rational(stats.expected_weight)
    if 0 in fam or len(fam) == 0:
        report["even_sunflower"] = {"status": "not_applicable", "members": None}
        report["odd_sunflower"] = {"status": "not_applicable", "members": None}
    else:
        even = find_even_sunflower(fam)
        report["even_sunflower"] = {
            "status": "found" if even is not None else "none_exact",
            "members": None if even is None else describe_members(even.members),
        }
        odd = find_odd_sunflower(fam, budget=odd_budget)
        report["odd_sunflower"] = {
            "status": odd.status.value,
            "members": None
            if odd.certificate is None
            else describe_members(odd.certificate.members),
        }
    saw1 = first_saw_violation(fam, 1)
    if saw1 is None and 0 not in fam:
        lemma = check_chain_lemma(fam)
        report["chain_lemma"] = {
            "applicable": True,
            "lym": _rational(lemma.lym),
            "bound_holds": lemma.bound_holds,
            "equality": lemma.equality,
            "structure_ok": lemma.structure_ok if lemma.structure_checked else None,
        }
    else:
        report["chain_lemma"] = {"applicable": False}
    return report


def _print_json(payload: dict, stream=None) -> None:
    print(json.dumps(payload, sort_keys=True), file=stream or sys.stdout)


def _load_family(path: str) -> Family:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_family(text).to_family()


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        fam = _load_family(args.file)
    except (OSError, FamilyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_property_report(fam, odd_budget=args.odd_budget)
    _print_json(report)
    exit_code = EXIT_OK
    for assertion in args.assertions or []:
        if assertion.startswith("t-saw="):
            try:
                t = int(assertion.split("=", 1)[1])
            except ValueError:
                print(f"error: bad assertion {assertion!r}", file=sys.stderr)
                return EXIT_INPUT
            violation = first_saw_violation(fam, t)
            if violation is not None:
                print(
                    f"assertion failed: not {t}-saw "
                    f"(witness mu={violation.mu} > {violation.allowed})",
                    file=sys.stderr,
                )
                exit_code = EXIT_MISMATCH
        elif assertion == "intersecting":
            if not report["intersecting"]["holds"]:
                print("assertion failed: not intersecting", file=sys.stderr)
                exit_code = EXIT_MISMATCH
        elif assertion == "antichain":
            if not report["antichain"]:
                print("assertion failed: not an antichain", file=sys.stderr)
                exit_code = EXIT_MISMATCH
        else:
            print(f"error: unknown assertion {assertion!r}", file=sys.stderr)
            return EXIT_INPUT
    return exit_code


def _parse_set_token(token: str) -> list[int]:
    if token == "-":
        return []
    try:
        return [int(part) for part in token.split(",")]
    except ValueError:
        raise ValueError(f"bad set token {token!r}; expected '-' or comma-separated integers")


def _cmd_construct(args: argparse.Namespace) -> int:
    params = args.params
    try:
        if args.name == "consecutive-layers":
            n, lo, hi = (int(p) for p in params)
            fam = consecutive_layers(n, lo, hi)
        elif args.name == "middle-layers":
            n, t = (int(p) for p in params)
            fam = middle_layers(n, t)
        elif args.name == "lightning":
            (k,) = (int(p) for p in params)
            fam = lightning(k)
        elif args.name == "star":
            n, i = (int(p) for p in params)
            fam = star(n, i)
        elif args.name == "odd-intersecting-extremal":
            (k,) = (int(p) for p in params)
            fam = odd_intersecting_extremal(k)
        elif args.name == "power-set-minus-one":
            n = int(params[0])
            elements = _parse_set_token(params[1])
            mask = 0
            for e in elements:
                mask |= 1 << (e - 1)
            fam = power_set_minus_one(n, mask)
        else:
            print(f"error: unknown construction {args.name!r}", file=sys.stderr)
            return EXIT_INPUT
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = document_from_family(fam, JSON_FORMAT if args.json else TEXT_FORMAT)
    text = emit_family(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    mode = Mode.EXHAUSTIVE if args.mode == "exhaustive" else Mode.BRANCH_AND_BOUND
    window = tuple(args.window) if args.window else None
    try:
        if args.oracle:
            outcome = exhaustive_oracle(args.n, args.t, require_intersecting=args.intersecting)
        else:
            outcome = search_max(
                SearchProblem(
                    n=args.n,
                    t=args.t,
                    require_intersecting=args.intersecting,
                    layer_window=window,
                    mode=mode,
                    symmetry=args.symmetry,
                    budget=args.budget,
                    enumerate_all_optima=args.all_optima,
                )
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = {
        "n": args.n,
        "t": args.t,
        "intersecting": args.intersecting,
        "mode": mode.value if not args.oracle else "exhaustive_oracle",
        "optimum": outcome.optimum,
        "status": outcome.status.value,
        "nodes_explored": outcome.nodes_explored,
        "optima": [
            [list(elements_of(int(m))) for m in fam.masks] for fam in outcome.optima
        ],
        "orbit_sizes": list(outcome.orbit_sizes) if outcome.orbit_sizes else None,
        "seed": args.seed,
    }
    _print_json(payload)
    if outcome.status is SearchStatus.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_chains(args: argparse.Namespace) -> int:
    try:
        fam = _load_family(args.file)
    except (OSError, FamilyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    stats = chain_stats(fam)
    payload: dict = {
        "n": fam.n,
        "size": len(fam),
        "lym_sum": _rational(stats.lym_sum),
        "expected_weight": _rational(stats.expected_weight),
        "hits_by_layer": [_rational(h) for h in stats.hits_by_layer],
    }
    if args.trials:
        mc = monte_carlo_chain_stats(fam, trials=args.trials, seed=args.seed, workers=args.workers)
        payload["monte_carlo"] = {
            "trials": mc.trials,
            "seed": args.seed,
            "mean_hits": mc.mean_hits,
            "mean_weight": mc.mean_weight,
            "var_hits": mc.var_hits,
            "var_weight": mc.var_weight,
        }
    _print_json(payload)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    return run_verification(level=args.level, workers=args.workers)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sawkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="report the properties of a family file")
    p_check.add_argument("file")
    p_check.add_argument(
        "--assert",
        dest="assertions",
        action="append",
        metavar="PROP",
        help="'t-saw=T', 'intersecting' or 'antichain'; exit 1 if violated",
    )
    p_check.add_argument("--odd-budget", type=int, default=DEFAULT_ODD_BUDGET)

    p_construct = sub.add_parser("construct", help="emit a named family")
    p_construct.add_argument(
        "name",
        choices=[
            "consecutive-layers",
            "middle-layers",
            "lightning",
            "star",
            "odd-intersecting-extremal",
            "power-set-minus-one",
        ],
    )
    p_construct.add_argument("params", nargs="*")
    p_construct.add_argument("-o", "--output")
    p_construct.add_argument("--json", action="store_true", help="emit the json format")

    p_search = sub.add_parser("search", help="maximum t-saw family search")
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--t", type=int, required=True)
    p_search.add_argument("--intersecting", action="store_true")
    p_search.add_argument("--mode", choices=["exhaustive", "bb"], default="bb")
    p_search.add_argument("--oracle", action="store_true", help="use the independent exhaustive oracle")
    p_search.add_argument("--all-optima", action="store_true")
    p_search.add_argument("--symmetry", action="store_true")
    p_search.add_argument("--budget", type=int, default=None, help="node budget (exit 3 if exhausted)")
    p_search.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    p_search.add_argument("--seed", type=int, default=0, help="echoed in the report; the sequential search is deterministic")

    p_chains = sub.add_parser("chains", help="exact and sampled chain statistics")
    p_chains.add_argument("file")
    p_chains.add_argument("--trials", type=int, default=0)
    p_chains.add_argument("--seed", type=int, default=0)
    p_chains.add_argument("--workers", type=int, default=_default_workers())

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--level", choices=["quick", "full"], default="quick")
    p_verify.add_argument("--workers", type=int, default=_default_workers())

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "construct": _cmd_construct,
        "search": _cmd_search,
        "chains": _cmd_chains,
        "verify": _cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
