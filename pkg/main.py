"""
magquot - Main Entry Point
Command-line workbench for quotients of the magmatic operad
"""

import sys
import os
import argparse
import time

# Add current directory to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import config
from caslattice import (
    cas_join, cas_leq, cas_meet, lattice_axioms_check, left_rank_invariant_check,
    morphism_agreement_check,
)
from catalog import cas_index
from completion import backtracking_complete, buchberger_complete
from linear import quotient_dim
from quotients import completion_counts_diff, quotient_dims
from rewriting import BudgetExceeded
from storage import (
    build_report, default_report_path, read_input, report_rows, save_csv,
    save_json, write_rules,
)
from suites import SUITE_NAMES, run_suite
from tables import ArityTable


class VerificationFailed(Exception):
    """A verification command found a counterexample."""

    def __init__(self, report):
        super().__init__(report.get("status", "failed"))
        self.report = report


def status(args, message):
    """Print a status line unless --quiet."""
    if not args.quiet:
        print(message)


def emit(args, report, name):
    """Write --json / --csv outputs of a report."""
    if args.json:
        path = args.json if args.json is not True else default_report_path(report["command"], name)
        save_json(path, report, verbose=not args.quiet)
    if getattr(args, "csv", None):
        path = args.csv if args.csv is not True else default_report_path(report["command"], name, "csv")
        save_csv(path, report_rows(report), verbose=not args.quiet)


# =============================================================================
# Commands
# =============================================================================

def compute_dims(spec, n_max, linear=False):
    """
    Per-arity dimensions of a builtin or file quotient.

    Set-theoretic congruences go through the union-find oracle, linear
    generators through ideal spaces.

    Returns:
        Report dictionary
    """
    started = time.perf_counter()
    quotient = read_input(spec)
    use_linear = linear or quotient.congruence is None
    if use_linear:
        if quotient.linear is None:
            raise ValueError(f"{quotient.name} has no linear generators")
        route = "linear"
        generators = [str(element) for element in quotient.linear]
        table = ArityTable(f"dims {quotient.name}")
        for n in range(1, n_max + 1):
            try:
                table[n] = quotient_dim(quotient.linear, n)
            except BudgetExceeded:
                table.cutoff = n
                break
    else:
        route = "oracle"
        generators = [[a.word, b.word] for a, b in quotient.congruence]
        table = quotient_dims(quotient.congruence, n_max)
        table.label = f"dims {quotient.name}"

    inputs = {"spec": quotient.name, "n_max": n_max, "route": route, "generators": generators}
    outcome = "ok" if table.cutoff is None else "budget_exhausted"
    return build_report("dims", inputs, {"dims": table}, outcome, time.perf_counter() - started)


def cmd_dims(args):
    n_max = args.n_max if args.n_max is not None else config.DEFAULT_N_MAX
    if n_max < 1:
        raise ValueError(f"--n-max must be at least 1, got {n_max}")
    report = compute_dims(args.spec, n_max, linear=args.linear)
    table = report["tables"]["dims"]
    values = [table["values"][str(n)] for n in range(1, n_max + 1) if str(n) in table["values"]]

    print(" ".join(str(v) for v in values))
    if table["cutoff"] is not None:
        status(args, f"⚠ Stopped at arity {table['cutoff']}: over the enumeration budget "
                     f"(MAGQUOT_MAX_ENUM_ARITY={config.MAX_ENUM_ARITY})")
    else:
        status(args, f"✓ {report['inputs']['spec']}: {len(values)} arities by {report['inputs']['route']}")
    emit(args, report, report["inputs"]["spec"])
    return config.EXIT_OK


def compute_completion(spec, max_arity=None, max_steps=None, backtrack=False):
    """
    Complete a builtin or file rewrite system.

    Returns:
        (report, trace or None)
    """
    started = time.perf_counter()
    quotient = read_input(spec)
    if quotient.system is None:
        raise ValueError(f"{quotient.name} has no rewrite system")
    system = quotient.system
    max_arity = config.COMPLETION_MAX_ARITY if max_arity is None else max_arity
    max_steps = config.COMPLETION_MAX_STEPS if max_steps is None else max_steps

    inputs = {
        "spec": quotient.name,
        "rules": [str(rule) for rule in system],
        "max_arity": max_arity,
        "algorithm": "backtrack" if backtrack else "buchberger",
    }
    if backtrack:
        result = backtracking_complete(system, max_arity=max_arity)
        trace = result.trace
        outcome = result.status
        details = {"nodes_visited": result.nodes_visited, "deepest_rule_count": result.deepest_rule_count}
        if result.certificate is not None:
            details["convergent"] = bool(result.certificate)
    else:
        inputs["max_steps"] = max_steps
        trace = buchberger_complete(system, max_arity=max_arity, max_steps=max_steps)
        outcome = trace.status
        details = {"reason": trace.reason} if trace.reason else None

    tables = {}
    if trace is not None:
        tables["per_arity_counts"] = trace.per_arity_counts
        tables["final_rules"] = sorted(str(rule) for rule in trace.final_rules)
        tables["complete_through_arity"] = trace.complete_through_arity
        gamma = cas_index(quotient.name)
        if gamma is not None:
            diff = completion_counts_diff(gamma, trace.per_arity_counts, trace.complete_through_arity)
            if diff is not None:
                details = dict(details or {}, reference_counts=diff)
    report = build_report("complete", inputs, tables, outcome, time.perf_counter() - started, details)
    return report, trace


def cmd_complete(args):
    report, trace = compute_completion(args.spec, args.max_arity, args.max_steps, args.backtrack)
    name = report["inputs"]["spec"]

    if trace is None:
        status(args, f"⚠ {name}: no convergent orientation found ({report['status']})")
    else:
        counts = trace.per_arity_counts.as_list()
        print(f"{len(trace.final_rules)} rules; per arity: {' '.join(map(str, counts))}")
        if trace.completed:
            status(args, f"✓ {name}: completed with {len(trace.added_rules)} added, "
                         f"{len(trace.removed_rules)} removed")
        else:
            status(args, f"⚠ {name}: {trace.status} ({trace.reason})")
        diff = (report.get("details") or {}).get("reference_counts")
        if diff is not None and diff["differing"]:
            arities = ", ".join(diff["differing"])
            status(args, f"⚠ {name}: rules per arity differ from the reference counts at arity {arities}")
        elif diff is not None:
            status(args, f"✓ {name}: rules per arity match the reference counts "
                         f"through arity {diff['compared_through']}")
        if args.rules_out:
            write_rules(args.rules_out, trace.final_rules, verbose=not args.quiet)
        if args.trace:
            save_json(args.trace, trace.to_dict(), verbose=not args.quiet)
    emit(args, report, name)
    return config.EXIT_OK


def cmd_verify(args):
    started = time.perf_counter()
    ok, results = run_suite(args.suite, quiet=args.quiet, golden_dir=args.golden_dir)
    report = build_report(
        "verify", {"suite": args.suite}, {"results": results},
        "passed" if ok else "failed", time.perf_counter() - started,
    )
    emit(args, report, args.suite)
    if not ok:
        raise VerificationFailed(report)
    return config.EXIT_OK


def cmd_caslattice(args):
    if args.operation == "verify":
        checks = [
            ("lattice axioms", lattice_axioms_check(args.gamma_max)),
            ("morphism criterion", morphism_agreement_check(7, 5)),
        ]
        checks += [
            (f"left rank γ={gamma}", left_rank_invariant_check(gamma, 9))
            for gamma in (3, 4, 5)
        ]
        for label, (ok, message) in checks:
            status(args, f"  {'✓' if ok else '✗'} {label}: {message}")
        results = [{"check": label, "ok": ok, "message": message} for label, (ok, message) in checks]
        ok = all(result["ok"] for result in results)
        report = build_report(
            "caslattice", {"operation": "verify", "gamma_max": args.gamma_max},
            {"results": results}, "passed" if ok else "failed",
        )
        emit(args, report, "verify")
        if not ok:
            raise VerificationFailed(report)
        return config.EXIT_OK

    if args.gamma is None or args.gamma_prime is None:
        raise ValueError(f"caslattice {args.operation} needs two indices")
    gamma, gamma_prime = args.gamma, args.gamma_prime
    if args.operation == "meet":
        print(cas_meet(gamma, gamma_prime))
    elif args.operation == "join":
        print(cas_join(gamma, gamma_prime))
    else:
        print("true" if cas_leq(gamma, gamma_prime) else "false")
    return config.EXIT_OK


# =============================================================================
# Argument Parsing
# =============================================================================

def build_parser():
    parser = argparse.ArgumentParser(
        prog="magquot",
        description="Quotients of the magmatic operad: dimensions, completion, verification",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress status lines")
    common.add_argument("--json", nargs="?", const=True, default=None, metavar="PATH",
                        help="write the report as JSON (default path under data/reports)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    dims = subparsers.add_parser("dims", parents=[common], help="per-arity dimensions")
    dims.add_argument("spec", help="builtin (cas:γ, mag:i,j, as, aas, 2nil, rc:γ) or generator file")
    dims.add_argument("--n-max", type=int, default=None)
    dims.add_argument("--linear", action="store_true", help="use linear generators even for congruences")
    dims.add_argument("--csv", nargs="?", const=True, default=None, metavar="PATH")
    dims.set_defaults(handler=cmd_dims)

    complete = subparsers.add_parser("complete", parents=[common], help="complete a rewrite system")
    complete.add_argument("spec", help="builtin or rule file")
    complete.add_argument("--max-arity", type=int, default=None)
    complete.add_argument("--max-steps", type=int, default=None)
    complete.add_argument("--backtrack", action="store_true", help="search over rule orientations")
    complete.add_argument("--rules-out", default=None, metavar="PATH", help="write the final rules")
    complete.add_argument("--trace", default=None, metavar="PATH", help="write the completion trace")
    complete.add_argument("--csv", nargs="?", const=True, default=None, metavar="PATH")
    complete.set_defaults(handler=cmd_complete)

    verify = subparsers.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES + ["all"])
    verify.add_argument("--golden-dir", default=None, metavar="DIR", help="golden reports checked by 'all'")
    verify.set_defaults(handler=cmd_verify)

    lattice = subparsers.add_parser("caslattice", parents=[common], help="lattice of comb associative operads")
    lattice.add_argument("operation", choices=["meet", "join", "leq", "verify"])
    lattice.add_argument("gamma", type=int, nargs="?")
    lattice.add_argument("gamma_prime", type=int, nargs="?")
    lattice.add_argument("--gamma-max", type=int, default=20)
    lattice.set_defaults(handler=cmd_caslattice)

    return parser


def main(argv=None):
    """
    Parse arguments and run a command.

    Returns:
        Exit code: 0 success, 2 input error, 3 verification failure
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        return args.handler(args)
    except VerificationFailed:
        return config.EXIT_VERIFY_FAILED
    except BudgetExceeded as e:
        status(args, f"⚠ {e}")
        return config.EXIT_OK
    except ValueError as e:
        print(f"✗ {e}", file=sys.stderr)
        return config.EXIT_INPUT_ERROR


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n👋 Interrupted.")
        sys.exit(config.EXIT_UNEXPECTED)
    except Exception as e:
        print(f"\n❌ An error occurred: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(config.EXIT_UNEXPECTED)
