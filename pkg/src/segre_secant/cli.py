"""Command-line surface: single queries, grid sweeps, certificate replays.

Subcommands
-----------
dim         dimension of one secant variety (optionally cross-checked
            against the affine-reduction path, and against the closed-form
            classification when m = 1)
verify      grid sweep comparing Monte-Carlo dimensions with the m = 1
            classification, cell by cell
replay      arithmetic certificates of the inductive nondefectivity proof
grassmann   closed-form sweep of k = 1 Grassmann secants of Veronese images
numerology  the counting invariants q, r, q* (and e, e* when m = 1)

Conventions: data goes to stdout (JSON by default, CSV on request with a
fixed column set), diagnostics to stderr.  Exit code 0 means success and
agreement, 1 a usage or sizing error, 2 a mathematical discrepancy.  The
seed comes from --seed, falling back to the SEGRE_SECANT_SEED environment
variable, then 0; identical seed, primes and flags produce byte-identical
output regardless of --jobs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .affine import GenericityError, secant_dimension_via_reduction
from .field import DEFAULT_PRIME, SECOND_PRIME, PrimeField, SizingError
from .grassmann import check_corollary
from .induction import replay_main_theorem
from .numerology import classify, closed_form_e, closed_form_estar, expected_dimension, invariants
from .terracini import (
    DEFAULT_MEMORY_BUDGET,
    RNG_DESCRIPTION,
    SegreVeroneseSpec,
    dimension_profile,
    secant_dimension,
)

SCHEMA = "segre-secant/1"

#: Fixed CSV layout for secant-dimension rows.
CSV_COLUMNS = (
    "n", "m", "a", "b", "s", "N",
    "expected_dim", "computed_dim", "defect",
    "rule", "prime", "seed", "trials", "method",
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISCREPANCY = 2


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class SweepConfig:
    """Grid and engine settings for the verify sweep."""

    n_range: tuple[int, ...]
    m_range: tuple[int, ...]
    a_range: tuple[int, ...]
    b_range: tuple[int, ...]
    s_policy: str  # "uptoqstar" or "list"
    s_list: tuple[int, ...]
    trials: int
    primes: tuple[int, ...]
    seed: int
    fmt: str
    memory_budget: int
    jobs: int

    def __post_init__(self) -> None:
        if not (self.n_range and self.m_range and self.a_range and self.b_range):
            raise ValueError("all grid ranges must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.primes:
            raise ValueError("need at least one prime")
        if self.s_policy == "list" and not self.s_list:
            raise ValueError("explicit s policy needs a nonempty --s-list")
        if tuple(self.m_range) != (1,):
            raise ValueError("classification comparison requires m = 1")


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SEGRE_SECANT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"SEGRE_SECANT_SEED must be an integer, got {env!r}")


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValueError(f"--primes must be a comma-separated integer list, got {text!r}")
    if not primes:
        raise ValueError("--primes must name at least one prime")
    return primes


def _parse_s_list(text: str) -> tuple[int, ...]:
    values = tuple(int(part) for part in text.split(",") if part.strip())
    return values


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _emit_csv(rows, columns) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row.get(col, "") for col in columns])


def _report_row(report, rule: str) -> dict:
    d = report.to_dict()
    d.pop("schema", None)
    d.pop("rng", None)
    d["rule"] = rule
    return d


# ---------------------------------------------------------------------------
# dim

def cmd_dim(args) -> int:
    spec = SegreVeroneseSpec(args.n, args.m, args.a, args.b)
    field = PrimeField(args.prime)
    seed = _resolve_seed(args)
    report = secant_dimension(
        spec, args.s, trials=args.trials, field=field, seed=seed,
        memory_budget=args.memory_budget,
    )
    rule = ""
    payload = report.to_dict()
    agreements = []
    if args.m == 1:
        verdict = classify(args.n, args.a, args.b, args.s)
        rule = verdict.rule
        payload["classification"] = {
            "defective": verdict.defective,
            "defect": verdict.defect,
            "dim": verdict.dim,
            "rule": verdict.rule,
        }
        agreements.append(report.computed_dim == verdict.dim)
    rows = [_report_row(report, rule)]
    if args.cross_check:
        reduction = secant_dimension_via_reduction(
            spec, args.s, trials=args.trials, field=field, seed=seed,
            memory_budget=args.memory_budget,
        )
        payload["cross_check"] = reduction.to_dict()
        payload["cross_check"].pop("schema", None)
        agreements.append(reduction.computed_dim == report.computed_dim)
        rows.append(_report_row(reduction, rule))
    agree = all(agreements)
    payload["agreement"] = agree
    if args.format == "json":
        _emit_json(payload)
    else:
        _emit_csv(rows, CSV_COLUMNS)
    if not agree:
        print(
            f"discrepancy for {spec} s={args.s}: seed={seed} prime={field.p} "
            f"trials={args.trials} (witness preserved for investigation)",
            file=sys.stderr,
        )
        return EXIT_DISCREPANCY
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _verify_cell(job) -> dict:
    """Worker for one (n, m, a, b) cell; returns rows or an error record."""
    (n, m, a, b, s_policy, s_list, trials, primes, seed, memory_budget) = job
    try:
        spec = SegreVeroneseSpec(n, m, a, b)
        if s_policy == "uptoqstar":
            s_values = tuple(range(1, invariants(n, m, a, b).qstar + 2))
        else:
            s_values = s_list
        s_max = max(s_values)
        profiles = [
            dimension_profile(
                spec, s_max, trials=trials, field=PrimeField(p), seed=seed,
                memory_budget=memory_budget,
            )
            for p in primes
        ]
        rows = []
        for s in s_values:
            per_prime = [int(profile[s - 1]) for profile in profiles]
            computed = max(per_prime)
            prime = primes[per_prime.index(computed)]
            verdict = classify(n, a, b, s)
            expected = expected_dimension(n, m, a, b, s)
            rows.append({
                "n": n, "m": m, "a": a, "b": b, "s": s, "N": spec.N,
                "expected_dim": expected,
                "computed_dim": computed,
                "defect": expected - computed,
                "rule": verdict.rule,
                "prime": prime,
                "seed": seed,
                "trials": trials,
                "method": "terracini",
                "classify_dim": verdict.dim,
                "agree": computed == verdict.dim,
            })
        return {"cell": (n, m, a, b), "rows": rows}
    except (ValueError, SizingError, GenericityError) as exc:
        return {"cell": (n, m, a, b), "error": str(exc)}


def run_verify(config: SweepConfig) -> tuple[dict, list[dict], int]:
    """Execute the sweep; returns (payload, csv rows, exit code)."""
    jobs = [
        (n, m, a, b, config.s_policy, config.s_list, config.trials,
         config.primes, config.seed, config.memory_budget)
        for n in config.n_range
        for m in config.m_range
        for a in config.a_range
        for b in config.b_range
    ]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_verify_cell, jobs))
    else:
        results = [_verify_cell(job) for job in jobs]
    rows: list[dict] = []
    errors: list[dict] = []
    for result in results:
        if "error" in result:
            errors.append({"cell": list(result["cell"]), "error": result["error"]})
        else:
            rows.extend(result["rows"])
    agreements = sum(1 for row in rows if row["agree"])
    discrepancies = len(rows) - agreements + len(errors)
    payload = {
        "schema": SCHEMA,
        "rng": RNG_DESCRIPTION,
        "config": {
            "n_range": list(config.n_range),
            "m_range": list(config.m_range),
            "a_range": list(config.a_range),
            "b_range": list(config.b_range),
            "s_policy": config.s_policy,
            "s_list": list(config.s_list),
            "trials": config.trials,
            "primes": list(config.primes),
            "seed": config.seed,
            "memory_budget": config.memory_budget,
        },
        "cells": rows,
        "errors": errors,
        "summary": {
            "cells": len(rows),
            "agreements": agreements,
            "discrepancies": discrepancies,
        },
    }
    exit_code = EXIT_OK if discrepancies == 0 else EXIT_DISCREPANCY
    return payload, rows, exit_code


def cmd_verify(args) -> int:
    config = SweepConfig(
        n_range=tuple(range(args.n_min, args.n_max + 1)),
        m_range=(args.m,),
        a_range=tuple(range(args.a_min, args.a_max + 1)),
        b_range=tuple(range(args.b_min, args.b_max + 1)),
        s_policy=args.s_policy,
        s_list=_parse_s_list(args.s_list) if args.s_list is not None else (),
        trials=args.trials,
        primes=_parse_primes(args.primes),
        seed=_resolve_seed(args),
        fmt=args.format,
        memory_budget=args.memory_budget,
        jobs=args.jobs,
    )
    payload, rows, exit_code = run_verify(config)
    if args.format == "json":
        _emit_json(payload)
    else:
        _emit_csv(rows, CSV_COLUMNS)
    summary = payload["summary"]
    print(
        f"cells / agreements / discrepancies: "
        f"{summary['cells']} / {summary['agreements']} / {summary['discrepancies']}",
        file=sys.stderr,
    )
    for error in payload["errors"]:
        print(f"cell {tuple(error['cell'])}: {error['error']}", file=sys.stderr)
    return exit_code


# ---------------------------------------------------------------------------
# replay

def _fraction_str(value: Fraction | None) -> str:
    return "" if value is None else str(value)


def cmd_replay(args) -> int:
    if args.n_max < 3 or args.a_max < 4 or args.b_max < 1:
        raise ValueError(
            f"the inductive region starts at n = 3, a = 4, b = 1; "
            f"got bounds ({args.n_max}, {args.a_max}, {args.b_max})"
        )
    report = replay_main_theorem(args.n_max, args.a_max, args.b_max)
    cells = [
        {
            "n": cell.n, "a": cell.a, "b": cell.b, "case": cell.case,
            "cond1": cell.cond1, "cond3star": cell.cond3star, "cond4": cell.cond4,
            "dagger": cell.dagger,
            "ddagger": cell.ddagger,
            "f": _fraction_str(cell.f),
            "g": _fraction_str(cell.g),
            "estar_matches": cell.estar_matches,
            "certificate_ok": cell.certificate_ok,
            "passed": cell.passed,
        }
        for cell in report.cells
    ]
    payload = {
        "schema": SCHEMA,
        "bounds": {"n_max": args.n_max, "a_max": args.a_max, "b_max": args.b_max},
        "cells": cells,
        "base_attributions": [list(item) for item in report.base_attributions],
        "summary": {
            "cells": len(cells),
            "failures": len(report.failures),
            "case_counts": report.case_counts(),
            "all_passed": report.all_passed,
        },
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        columns = ("n", "a", "b", "case", "cond1", "cond3star", "cond4",
                   "dagger", "ddagger", "f", "g", "estar_matches",
                   "certificate_ok", "passed")
        _emit_csv(cells, columns)
    print(
        f"inductive cells / failures: {len(cells)} / {len(report.failures)}",
        file=sys.stderr,
    )
    return EXIT_OK if report.all_passed else EXIT_DISCREPANCY


# ---------------------------------------------------------------------------
# grassmann

def cmd_grassmann(args) -> int:
    if args.n_max < 2 or args.a_max < 2:
        raise ValueError(f"bounds must be >= 2, got ({args.n_max}, {args.a_max})")
    report = check_corollary(args.n_max, args.a_max)
    cells = [
        {
            "n": cell.n, "a": cell.a, "s": cell.s,
            "expected_dim": cell.expected_dim, "dim": cell.dim, "defect": cell.defect,
        }
        for cell in report.cells
    ]
    payload = {
        "schema": SCHEMA,
        "bounds": {"n_max": args.n_max, "a_max": args.a_max, "k": 1},
        "cells": cells,
        "defective": [c for c in cells if c["defect"] > 0],
        "summary": {"cells": len(cells), "passed": report.passed},
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        _emit_csv(cells, ("n", "a", "s", "expected_dim", "dim", "defect"))
    print(
        f"grassmann cells / defective: {len(cells)} / {len(payload['defective'])}",
        file=sys.stderr,
    )
    return EXIT_OK if report.passed else EXIT_DISCREPANCY


# ---------------------------------------------------------------------------
# numerology

def cmd_numerology(args) -> int:
    num = invariants(args.n, args.m, args.a, args.b)
    spec = SegreVeroneseSpec(args.n, args.m, args.a, args.b)
    payload = {
        "schema": SCHEMA,
        "n": args.n, "m": args.m, "a": args.a, "b": args.b,
        "N": spec.N, "q": num.q, "r": num.r, "qstar": num.qstar,
    }
    if args.m == 1:
        payload["e"] = closed_form_e(args.n, args.a, args.b)
        payload["estar"] = closed_form_estar(args.n, args.a, args.b)
    if args.format == "json":
        _emit_json(payload)
    else:
        columns = [key for key in payload if key != "schema"]
        _emit_csv([payload], columns)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring

def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default json)")


def _add_engine_options(parser) -> None:
    parser.add_argument("--trials", type=int, default=3,
                        help="random trials per prime (default 3)")
    parser.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: SEGRE_SECANT_SEED or 0)")
    parser.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET,
                        help="largest allowed matrix entry count")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segre-secant",
                     description="Secant dimensions of Segre-Veronese embeddings "
                                 "by exact rank computation over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="dimension of one secant variety",
                           description="Monte-Carlo dimension of sigma_s, with the "
                                       "closed-form verdict when m = 1.")
    for name in ("n", "m", "a", "b", "s"):
        p_dim.add_argument(f"--{name}", type=int, required=True)
    p_dim.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p_dim.add_argument("--cross-check", action="store_true",
                       help="also compute through the affine reduction and compare")
    _add_engine_options(p_dim)
    _add_format(p_dim)
    p_dim.set_defaults(func=cmd_dim)

    p_verify = sub.add_parser("verify", help="grid sweep against the classification",
                              description="Monte-Carlo dimension vs closed form on a "
                                          "grid of (n, 1, a, b, s) cells.")
    p_verify.add_argument("--n-min", type=int, default=1)
    p_verify.add_argument("--n-max", type=int, default=4)
    p_verify.add_argument("--m", type=int, default=1)
    p_verify.add_argument("--a-min", type=int, default=1)
    p_verify.add_argument("--a-max", type=int, default=5)
    p_verify.add_argument("--b-min", type=int, default=1)
    p_verify.add_argument("--b-max", type=int, default=5)
    p_verify.add_argument("--s-policy", choices=("uptoqstar", "list"),
                          default="uptoqstar",
                          help="s values per cell: 1..q*+1 or an explicit list")
    p_verify.add_argument("--s-list", type=str, default=None,
                          help="comma-separated s values (with --s-policy list)")
    p_verify.add_argument("--primes", type=str,
                          default=f"{DEFAULT_PRIME},{SECOND_PRIME}")
    p_verify.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                          help="parallel cell workers (default: available cores)")
    _add_engine_options(p_verify)
    _add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_replay = sub.add_parser("replay", help="inductive certificates",
                              description="Exact arithmetic replay of the inductive "
                                          "case analysis behind the classification.")
    p_replay.add_argument("--n-max", type=int, required=True)
    p_replay.add_argument("--a-max", type=int, required=True)
    p_replay.add_argument("--b-max", type=int, required=True)
    _add_format(p_replay)
    p_replay.set_defaults(func=cmd_replay)

    p_grass = sub.add_parser("grassmann", help="k = 1 Grassmann defectivity sweep",
                             description="Closed-form sweep of Sec_(1, s-1) of "
                                         "Veronese images within bounds.")
    p_grass.add_argument("--n-max", type=int, required=True)
    p_grass.add_argument("--a-max", type=int, required=True)
    _add_format(p_grass)
    p_grass.set_defaults(func=cmd_grassmann)

    p_num = sub.add_parser("numerology", help="counting invariants",
                           description="q, r, q* and, for m = 1, the closed-form "
                                       "thresholds e and e*.")
    for name in ("n", "m", "a", "b"):
        p_num.add_argument(f"--{name}", type=int, required=True)
    _add_format(p_num)
    p_num.set_defaults(func=cmd_numerology)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, SizingError, GenericityError) as exc:
        print(f"segre-secant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
