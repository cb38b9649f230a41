"""Command-line front end.

Machine-readable JSON goes to stdout, a one-line human summary to stderr.
Exit codes: 0 success, 1 validation or verification failure, 2 usage
error.  Every numeric value in a report is an exact rational string.

Commands:

  solve --alg {ssw|medium|smallbig|auto|dp|brute} -i FILE
  loads -i FILE
  verify {fig1|fig2|fig5|fig6|fig7|fig8|all}
  gen --m M --d D --seed S [--structured]
  extend -i FILE
  search --m M --d D --threshold T [--shard I/N] [--full] [--jobs J]
         [--checkpoint-dir DIR]
  optimum -i FILE
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import approx, exact, fileio, instances, model, reduction, search
from .errors import RingLoadingError
from .scaled import from_int, parse_rational, rational_str


def _read_instance(path: str, need_split: bool):
    inst, split = fileio.parse_instance(Path(path).read_bytes())
    if need_split and split is None:
        raise RingLoadingError(f"{path}: a split routing ('cw' fields) is required")
    return inst, split


def _emit(report: dict, summary: str) -> None:
    json.dump(report, sys.stdout, indent=1)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _solve_report(inst, split, unsplit, extra: dict) -> dict:
    increase = model.additive_increase(inst, split, unsplit)
    report = fileio.routing_report(unsplit, increase, model.edge_loads(inst, unsplit))
    report.update(extra)
    return report


def _cmd_solve(args) -> int:
    inst, split = _read_instance(args.instance, need_split=True)
    if args.alg == "brute":
        unsplit, value = exact.brute_force_min_increase(inst, split)
        report = _solve_report(inst, split, unsplit, {"branch": "brute"})
        _emit(report, f"brute force: max increase {report['max_increase']}")
        return 0

    cross, _ = reduction.reduce_to_crossing(inst, split)
    if args.alg == "dp":
        z, value = exact.dp_min_increase(cross)
        unsplit = reduction.lift_solution(cross, z)
        report = _solve_report(
            inst, split, unsplit,
            {"branch": "dp", "crossing_performance": rational_str(value)},
        )
        _emit(report, f"dp optimum: max increase {report['max_increase']}")
        return 0

    if args.alg == "auto":
        solved = approx.solve_19_14(cross)
    elif args.alg == "ssw":
        solved = approx.ssw_three_halves(cross)
    elif args.alg == "smallbig":
        solved = approx.small_big_solve(cross)
    else:  # medium: strongest available margin
        best, margin = None, -1
        for k in range(cross.m):
            d = cross.demand_value(k)
            if min(d, cross.D - d) > margin:
                best, margin = k, min(d, cross.D - d)
        if best is None:
            solved = approx.ssw_three_halves(cross)
        else:
            solved = approx.medium_demand_solve(cross, best, margin)
    unsplit = reduction.lift_solution(cross, solved.z)
    report = _solve_report(
        inst, split, unsplit,
        {
            "branch": solved.branch,
            "crossing_performance": rational_str(solved.perf),
            "bound": rational_str(solved.bound),
        },
    )
    _emit(
        report,
        f"{solved.branch}: max increase {report['max_increase']}"
        f" (certified bound {report['bound']})",
    )
    return 0


def _cmd_loads(args) -> int:
    inst, split = _read_instance(args.instance, need_split=True)
    loads = model.edge_loads(inst, split)
    report = {
        "loads": [rational_str(load) for load in loads],
        "max": rational_str(max(loads)),
    }
    _emit(report, f"max edge load {report['max']}")
    return 0


def _verify_one(name: str) -> dict:
    inst, split = instances.builtin(name)
    checks: dict[str, dict] = {}

    def check(label: str, expected, actual) -> None:
        checks[label] = {
            "expected": expected,
            "actual": actual,
            "pass": expected == actual,
        }

    loads = model.edge_loads(inst, split)
    if name == "fig1":
        check("split_loads_uniform", ["2"] * 4, [rational_str(l) for l in loads])
        _, L = exact.brute_force_optimum_L(inst)
        check("optimum_load", "4", rational_str(L))
    elif name == "fig2":
        check("max_load", "37", rational_str(max(loads)))
        peak = from_int(37)
        check("peak_edges", [2, 3], [k + 1 for k, l in enumerate(loads) if l == peak])
        cross, _ = reduction.reduce_to_crossing(inst, split)
        _, value = exact.dp_min_increase(cross)
        check("min_increase", "11", rational_str(value))
    elif name == "fig5":
        cross, _ = reduction.reduce_to_crossing(inst, split)
        _, value = exact.dp_min_increase(cross)
        _, brute = exact.brute_force_min_increase(inst, split)
        check("min_increase_at_least_101", True, value >= from_int(101))
        check("dp_equals_brute", rational_str(brute), rational_str(value))
    elif name == "fig6":
        _, value = exact.brute_force_min_increase(inst, split)
        check("min_increase", "11", rational_str(value))
    elif name == "fig7":
        check("loads_uniform", ["37"] * 16, [rational_str(l) for l in loads])
        certified = instances.certify_split_optimal(inst, split)
        check("split_optimum", "37", rational_str(certified) if certified else None)
        _, L = exact.brute_force_optimum_L(inst)
        check("optimum_load", "47", rational_str(L))
    elif name == "fig8":
        certified = instances.certify_split_optimal(inst, split)
        check("split_optimum", "39", rational_str(certified) if certified else None)
        _, L = exact.brute_force_optimum_L(inst)
        check("optimum_load", "50", rational_str(L))

    report = {
        "name": name,
        "checks": checks,
        "passes": all(entry["pass"] for entry in checks.values()),
    }
    if "min_increase" in checks:
        report["min_increase"] = checks["min_increase"]["actual"]
    return report


def _cmd_verify(args) -> int:
    names = instances.BUILTIN_NAMES if args.name == "all" else (args.name,)
    reports = [_verify_one(name) for name in names]
    passes = all(rep["passes"] for rep in reports)
    report = reports[0] if len(reports) == 1 else {"passes": passes, "reports": reports}
    _emit(report, "all checks pass" if passes else "some checks FAILED")
    return 0 if passes else 1


def _cmd_gen(args) -> int:
    if args.m < 2:
        raise RingLoadingError("the instance file format needs m >= 2")
    cross = instances.random_crossing(args.m, args.d, args.seed, args.structured)
    inst, split = cross.to_ring()
    sys.stdout.write(fileio.write_instance(inst, split).decode())
    print(
        f"crossing instance m={args.m} D={args.d} seed={args.seed}"
        f"{' structured' if args.structured else ''}",
        file=sys.stderr,
    )
    return 0


def _cmd_extend(args) -> int:
    inst, split = _read_instance(args.instance, need_split=True)
    result = instances.equalize_extension(inst, split)
    sys.stdout.write(fileio.write_instance(result.instance, result.split).decode())
    print(
        f"added {len(result.added)} demands; all within D: "
        f"{'yes' if result.all_within_max_demand else 'NO'}",
        file=sys.stderr,
    )
    return 0


def _parse_shard(text: str) -> tuple[int, int]:
    index, _, count = text.partition("/")
    return int(index), int(count)


def _cmd_search(args) -> int:
    threshold = parse_rational(args.threshold)
    if args.shard is None and not args.full:
        raise RingLoadingError(
            "a full family search takes hours; pass --full to run it anyway, "
            "or --shard I/N for one slice"
        )
    if args.shard is not None:
        checkpoint = None
        if args.checkpoint_dir:
            index, count = _parse_shard(args.shard)
            checkpoint = Path(args.checkpoint_dir) / f"shard-{index}-of-{count}.txt"
            checkpoint.parent.mkdir(parents=True, exist_ok=True)
        hits = search.search_lower_bound(
            args.m, args.d, threshold, _parse_shard(args.shard), checkpoint
        )
    else:
        shards = max(args.jobs * 16, 1)
        hits = search.search_parallel(args.m, args.d, threshold, shards, args.jobs)
    for hit in hits:
        record = {
            "pairs": [[v, u] for u, v in hit.form.pairs],
            "min_increase": rational_str(hit.min_increase),
        }
        sys.stdout.write(json.dumps(record) + "\n")
    print(f"{len(hits)} sequence(s) at threshold >= {args.threshold}", file=sys.stderr)
    return 0


def _cmd_optimum(args) -> int:
    inst, _ = _read_instance(args.instance, need_split=False)
    unsplit, L = exact.brute_force_optimum_L(inst)
    loads = model.edge_loads(inst, unsplit)
    report = {
        "dirs": list(unsplit.dirs),
        "optimum_load": rational_str(L),
        "loads": [rational_str(load) for load in loads],
    }
    _emit(report, f"optimum unsplittable load {report['optimum_load']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringload",
        description="Exact and approximate unsplittable routing on rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="turn a split routing into an unsplittable one")
    solve.add_argument("--alg", choices=("ssw", "medium", "smallbig", "auto", "dp", "brute"),
                       default="auto")
    solve.add_argument("-i", "--instance", required=True)
    solve.set_defaults(func=_cmd_solve)

    loads = sub.add_parser("loads", help="edge loads of the split routing")
    loads.add_argument("-i", "--instance", required=True)
    loads.set_defaults(func=_cmd_loads)

    verify = sub.add_parser("verify", help="re-check a built-in instance")
    verify.add_argument("name", choices=instances.BUILTIN_NAMES + ("all",))
    verify.set_defaults(func=_cmd_verify)

    gen = sub.add_parser("gen", help="generate a random crossing instance")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--structured", action="store_true")
    gen.set_defaults(func=_cmd_gen)

    extend = sub.add_parser("extend", help="equalize edge loads with extra demands")
    extend.add_argument("-i", "--instance", required=True)
    extend.set_defaults(func=_cmd_extend)

    search_cmd = sub.add_parser("search", help="scan the structured family for lower bounds")
    search_cmd.add_argument("--m", type=int, required=True)
    search_cmd.add_argument("--d", type=int, required=True)
    search_cmd.add_argument("--threshold", required=True, help='exact rational, e.g. "11"')
    search_cmd.add_argument("--shard", help="I/N: run slice I of N")
    search_cmd.add_argument("--full", action="store_true",
                            help="run the whole family (long-running)")
    search_cmd.add_argument("--jobs", type=int, default=1)
    search_cmd.add_argument("--checkpoint-dir")
    search_cmd.set_defaults(func=_cmd_search)

    optimum = sub.add_parser("optimum", help="optimum unsplittable load by enumeration")
    optimum.add_argument("-i", "--instance", required=True)
    optimum.set_defaults(func=_cmd_optimum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RingLoadingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
