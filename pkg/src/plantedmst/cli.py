"""Command-line front door.

Subcommands: gen, mst, simulate, fp, theory, bp, hyptest, table1.
Every command is a pure function of its flags and --seed: rerunning with
identical flags reproduces byte-identical output, regardless of
--threads. JSON payloads carry a schema_version field; CSV payloads carry
a header row.

Exit codes: 0 success, 2 usage or invalid parameter, 3 numeric
non-convergence, 4 capacity guard. Failures print a machine-readable JSON
object to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bp_oracle, fixed_point, instances, mst, theory, weight_models
from .errors import CapacityError, ConvergenceError
from .experiments import simulate_trials
from .hypothesis_test import error_rates
from .instances import DEFAULT_MAX_N

SCHEMA_VERSION = 1


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True) + "\n"


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write output file {out!r}: {exc}") from exc


def _model_for(args, n: int) -> weight_models.EdgeWeightModel:
    return weight_models.EdgeWeightModel(mu=args.mu, n=n)


def cmd_gen(args) -> int:
    inst = instances.gen_instance(
        args.n, args.model, _model_for(args, args.n), args.seed, max_n=args.max_n
    )
    try:
        sidecar = instances.dump_instance(inst, args.out)
    except OSError as exc:
        raise OSError(f"cannot write instance to {args.out!r}: {exc}") from exc
    sys.stdout.write(
        _json_text(
            {
                "schema_version": SCHEMA_VERSION,
                "csv": args.out,
                "sidecar": sidecar,
                "n": inst.n,
                "kind": inst.kind,
                "planted_edges": len(inst.planted),
                "seed": inst.seed,
            }
        )
    )
    return 0


def cmd_mst(args) -> int:
    inst = instances.load_instance(args.infile)
    result = mst.evaluate(inst, mst.kruskal_mst(inst))
    _write_out(_json_text(result.to_json_dict()), args.out)
    return 0


def cmd_simulate(args) -> int:
    results = simulate_trials(
        args.model, args.n, args.mu, args.trials, args.seed,
        threads=args.threads, max_n=args.max_n,
    )
    rows = ["trial,seed,overlap,weight"]
    for t in range(results.trials):
        rows.append(
            f"{t},{int(results.seeds[t])},"
            f"{float(results.overlaps[t])!r},{float(results.weights[t])!r}"
        )
    csv_text = "\n".join(rows) + "\n"
    summary = results.summary()
    if args.format == "csv":
        _write_out(csv_text, args.out)
        if args.out is not None:
            sys.stdout.write(_json_text(summary))
    else:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "summary": summary,
            "trials": [
                {
                    "trial": t,
                    "seed": int(results.seeds[t]),
                    "overlap": float(results.overlaps[t]),
                    "weight": float(results.weights[t]),
                }
                for t in range(results.trials)
            ],
        }
        _write_out(_json_text(payload), args.out)
        if args.out is not None:
            sys.stdout.write(_json_text(summary))
    return 0


def cmd_fp(args) -> int:
    cdf = weight_models.exponential_cdf(args.mu)
    s_max = args.s_max if args.s_max is not None else args.mu * np.log(1e12)
    grid = fixed_point.default_grid(s_max, args.grid_points)
    if args.model == "tree":
        sol = fixed_point.iterate_tree(
            cdf, grid, tol=args.tol, max_iter=args.max_iter,
            bush_filter=args.bush_filter,
        )
    else:
        sol = fixed_point.iterate_path(cdf, grid, tol=args.tol, max_iter=args.max_iter)
    rows = ["s,p_minus,p_plus,aux"]
    for i, s in enumerate(sol.minus.grid):
        aux = repr(float(sol.aux.values[i])) if sol.aux is not None else ""
        rows.append(
            f"{float(s)!r},{float(sol.minus.values[i])!r},"
            f"{float(sol.plus.values[i])!r},{aux}"
        )
    _write_out("\n".join(rows) + "\n", args.out)
    return 0


def cmd_theory(args) -> int:
    pred = theory.predict(args.model, args.mu, bush_filter=args.bush_filter)
    _write_out(_json_text(pred.to_json_dict()), args.out)
    return 0


def cmd_bp(args) -> int:
    if args.integrated:
        # the model's size scale is irrelevant here; only P enters
        model = weight_models.EdgeWeightModel(mu=args.mu, n=2)
        est = bp_oracle.mc_overlap(
            args.model, model, args.trials, args.seed,
            depth_cap=args.depth_cap, population_cap=args.pop_cap,
            bush_filter=args.bush_filter, threads=args.threads,
        )
        s_field = "integrated"
    else:
        config = bp_oracle.BranchingConfig(
            model_kind=args.model, side=args.side, s=args.s,
            trials=args.trials, seed=args.seed, depth_cap=args.depth_cap,
            population_cap=args.pop_cap, bush_filter=args.bush_filter,
        )
        F_s = float(weight_models.exponential_cdf(args.mu)(args.s))
        est = bp_oracle.simulate_extinction(config, F_s, threads=args.threads)
        s_field = args.s
    _write_out(
        _json_text(
            {
                "schema_version": SCHEMA_VERSION,
                "model": args.model,
                "s": s_field,
                "estimate": est.point_estimate,
                "std_error": est.std_error,
                "trials": est.trials,
                "truncated": est.truncated_count,
            }
        ),
        args.out,
    )
    return 0


def cmd_hyptest(args) -> int:
    rates = error_rates(
        args.n, args.trials, args.model, args.mu, args.epsilon, args.seed,
        threads=args.threads, max_n=args.max_n,
    )
    _write_out(
        _json_text(
            {
                "schema_version": SCHEMA_VERSION,
                "model": args.model,
                "n": args.n,
                "mu": args.mu,
                "epsilon": args.epsilon,
                "trials": rates.trials,
                "type1": rates.type1,
                "type2": rates.type2,
                "ci1": list(rates.ci1),
                "ci2": list(rates.ci2),
                "mean_w_h0": rates.mean_w_h0,
                "mean_w_h1": rates.mean_w_h1,
                "warning": rates.warning,
            }
        ),
        args.out,
    )
    return 0


def cmd_table1(args) -> int:
    rows = ["mu,model,metric,paper,computed,abs_err"]
    for mu, model_kind, metric, ref, computed, abs_err in theory.table1_rows():
        rows.append(f"{mu!r},{model_kind},{metric},{ref!r},{computed!r},{abs_err!r}")
    _write_out("\n".join(rows) + "\n", args.out)
    return 0


def _add_common(p, *, seed=True, threads=True, out=True):
    if seed:
        p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    if threads:
        p.add_argument(
            "--threads", type=int, default=os.cpu_count() or 1,
            help="worker threads; never affects results",
        )
    if out:
        p.add_argument("--out", type=str, default=None, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plantedmst",
        description="Planted spanning structure recovery with minimum spanning trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance and dump it to CSV")
    p.add_argument("--model", choices=instances.KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    _add_common(p, threads=False, out=False)
    p.add_argument("--out", type=str, required=True, help="instance CSV path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mst", help="recover the MST of a dumped instance")
    p.add_argument("--in", dest="infile", type=str, required=True)
    _add_common(p, seed=False, threads=False)
    p.set_defaults(func=cmd_mst)

    p = sub.add_parser("simulate", help="run recovery trials and summarize")
    p.add_argument("--model", choices=instances.KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fp", help="dump fixed-point solutions on a grid")
    p.add_argument("--model", choices=("tree", "path"), required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--s-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=fixed_point.DEFAULT_GRID_POINTS)
    p.add_argument("--tol", type=float, default=fixed_point.DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=fixed_point.DEFAULT_MAX_ITER)
    p.add_argument(
        "--bush-filter", action=argparse.BooleanOptionalAction, default=False,
        help="tree model only: subject side-branch edges to the threshold",
    )
    _add_common(p, seed=False, threads=False)
    p.set_defaults(func=cmd_fp)

    p = sub.add_parser("theory", help="asymptotic overlap and weight predictions")
    p.add_argument("--model", choices=("tree", "path"), required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument(
        "--bush-filter", action=argparse.BooleanOptionalAction, default=True,
        help="tree model only: variant matching the reference table (default on)",
    )
    _add_common(p, seed=False, threads=False)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("bp", help="branching-process Monte Carlo oracle")
    p.add_argument("--model", choices=("tree", "path"), required=True)
    p.add_argument("--mu", type=float, default=1.0)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--s", type=float, default=None, help="weight threshold")
    mode.add_argument(
        "--integrated", action="store_true",
        help="integrate over planted weights (overlap estimate)",
    )
    p.add_argument("--side", choices=("minus", "plus"), default="minus")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--depth-cap", type=int, default=60)
    p.add_argument("--pop-cap", type=int, default=10**6)
    p.add_argument(
        "--bush-filter", action=argparse.BooleanOptionalAction, default=True,
        help="tree model only: subject side-branch edges to the threshold",
    )
    _add_common(p)
    p.set_defaults(func=cmd_bp)

    p = sub.add_parser("hyptest", help="empirical error rates of the weight test")
    p.add_argument("--model", choices=("tree", "path"), default="tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    _add_common(p)
    p.set_defaults(func=cmd_hyptest)

    p = sub.add_parser("table1", help="compare theory against the reference table")
    _add_common(p, seed=False, threads=False)
    p.set_defaults(func=cmd_table1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        _report_error(exc, 4)
        return 4
    except ConvergenceError as exc:
        _report_error(exc, 3)
        return 3
    except (ValueError, NotImplementedError) as exc:
        _report_error(exc, 2)
        return 2
    except OSError as exc:
        _report_error(exc, 1)
        return 1


def _report_error(exc: Exception, code: int) -> None:
    sys.stderr.write(
        _json_text(
            {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        )
    )


if __name__ == "__main__":
    sys.exit(main())
