"""Command-line front end: dataset ingestion, dispatch, CSV/JSON emission."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .comparators import classical_moments, sample_l_moments
from .distributions import DistributionSpec, make_distribution
from .errors import InvalidParameterError, MomentsUndefinedError, SolverError
from .experiments import (
    ESTIMATORS,
    RATIO_COLUMNS,
    SimulationConfig,
    run_mc_study,
    sampling_distribution_study,
)
from .mad import population_mad_moments, sample_mad_moments
from .medad import population_medad_moments, sample_medad_moments
from .reference import population_discrepancies
from .robustness import STATISTICS, contamination_sweep, sensitivity_curve


@dataclass
class Dataset:
    values: np.ndarray
    source: str
    column: int
    skipped: int


def load_dataset(path: str, column: int = 0, delimiter: str = ",") -> Dataset:
    """Parse one numeric column from a delimited text file.

    A leading header row (non-numeric first cell) is skipped, as is any
    other row whose target cell fails to parse; the skip count is kept.
    """
    values = []
    skipped = 0
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise InvalidParameterError(f"cannot read {path}: {exc}") from exc
    with fh:
        for row in csv.reader(fh, delimiter=delimiter):
            if not row:
                continue
            if column >= len(row):
                raise InvalidParameterError(
                    f"column {column} out of range for row with {len(row)} cells"
                )
            try:
                values.append(float(row[column]))
            except ValueError:
                skipped += 1
    if not values:
        raise InvalidParameterError(f"no numeric rows in {path}")
    return Dataset(values=np.asarray(values), source=path, column=column, skipped=skipped)


def _moment_dict(ms, prefix: str, ratio_prefix: str) -> dict:
    out = {f"{prefix}{k + 1}": ms.values[k] for k in range(len(ms.values))}
    if ms.ratios is None:
        out["ratios_defined"] = False
    else:
        for k, r in enumerate(ms.ratios):
            out[f"{ratio_prefix}{k + 3}"] = r
    return out


def _int_list(text: str):
    return tuple(int(tok) for tok in text.split(","))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="slicemoments", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--deterministic", action="store_true",
                       help="suppress the timestamp metadata field")

    p = sub.add_parser("population", help="population moments of an analytic distribution")
    p.add_argument("--dist", required=True, help="family:p1,p2 (e.g. cauchy:0,1, t:3)")
    p.add_argument("--system", choices=("mad", "medad"), required=True)
    p.add_argument("--orders", type=int, default=4)
    p.add_argument("--tol", type=float, default=None)
    add_common(p)

    p = sub.add_parser("moments", help="sample moments of a dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--systems", default="mad,medad,l,classical")
    p.add_argument("--orders", type=int, default=4)
    add_common(p)

    p = sub.add_parser("simulate", help="seeded Cauchy estimator bias/MSE study")
    p.add_argument("--dist", default=None)
    p.add_argument("--n", default=None, help="comma-separated sample sizes")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--estimators", default=None)
    p.add_argument("--config", default=None, help="flat key=value file; flags override")
    add_common(p)

    p = sub.add_parser("sampdist", help="sampling distribution of the shape ratios")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)

    p = sub.add_parser("influence", help="add-one sensitivity curve of a statistic")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--stat", required=True, choices=sorted(STATISTICS))
    p.add_argument("--zmin", type=float, required=True)
    p.add_argument("--zmax", type=float, required=True)
    p.add_argument("--grid", type=int, default=101)
    add_common(p)

    p = sub.add_parser("breakdown", help="upper-tail contamination sweep")
    p.add_argument("--input", required=True)
    p.add_argument("--column", type=int, default=0)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--order", type=int, required=True, help="slice count b of phi_{b+1}")
    p.add_argument("--magnitude", type=float, default=1e12)
    p.add_argument("--max-count", type=int, default=None)
    add_common(p)

    return parser


def _read_config_file(path: str) -> dict:
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                if not _:
                    raise InvalidParameterError(f"bad config line: {line!r}")
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read config {path}: {exc}") from exc
    return out


def _run_population(args):
    spec = DistributionSpec.parse(args.dist)
    model = make_distribution(spec)
    if args.system == "mad":
        tol = args.tol if args.tol is not None else 1e-10
        ms = population_mad_moments(model, args.orders, tol=tol)
        results = _moment_dict(ms, "delta", "gamma")
    else:
        tol = args.tol if args.tol is not None else 1e-12
        ms = population_medad_moments(model, args.orders, tol=tol)
        results = _moment_dict(ms, "phi", "psi")
    disc = population_discrepancies(args.system, spec, ms)
    return results, disc


def _run_moments(args):
    ds = load_dataset(args.input, column=args.column, delimiter=args.delimiter)
    systems = [s.strip() for s in args.systems.split(",") if s.strip()]
    results = {"n": int(ds.values.size), "rows_skipped": ds.skipped}
    for system in systems:
        if system == "mad":
            results["mad"] = _moment_dict(sample_mad_moments(ds.values, args.orders),
                                          "delta", "gamma")
        elif system == "medad":
            results["medad"] = _moment_dict(sample_medad_moments(ds.values, args.orders),
                                            "phi", "psi")
        elif system == "l":
            lm = sample_l_moments(ds.values)
            results["l"] = {
                "lambda1": lm.lambda1, "lambda2": lm.lambda2,
                "lambda3": lm.lambda3, "lambda4": lm.lambda4,
                "tau3": lm.tau3, "tau4": lm.tau4,
            }
        elif system == "classical":
            cm = classical_moments(ds.values)
            results["classical"] = {"mean": cm.mean, "sd": cm.sd, "g1": cm.g1, "g2": cm.g2}
        else:
            raise InvalidParameterError(f"unknown system {system!r}")
    return results, []


def _run_simulate(args):
    file_cfg = _read_config_file(args.config) if args.config else {}

    def pick(flag, key, default, cast):
        if flag is not None:
            return flag
        if key in file_cfg:
            return cast(file_cfg[key])
        return default

    dist = pick(args.dist, "dist", "cauchy:0,1", str)
    sizes = pick(_int_list(args.n) if args.n else None, "n", (25, 50, 100),
                 lambda s: _int_list(s))
    reps = pick(args.reps, "reps", 10000, int)
    seed = pick(args.seed, "seed", 0, int)
    est_text = pick(args.estimators, "estimators", ",".join(ESTIMATORS), str)
    estimators = tuple(e.strip() for e in est_text.split(",") if e.strip())
    config = SimulationConfig(
        spec=DistributionSpec.parse(dist),
        sample_sizes=tuple(sizes),
        replicates=reps,
        master_seed=seed,
        estimators=estimators,
    )
    report = run_mc_study(config)
    results = {
        "rows": report.rows,
        "skipped_replicates": {f"{k[0]},n={k[1]}": v for k, v in report.skipped.items()},
    }
    return results, []


def _run_sampdist(args):
    table = sampling_distribution_study(
        DistributionSpec.parse(args.dist), n=args.n, B=args.reps, seed=args.seed
    )
    rows = [
        dict(zip(("rep",) + RATIO_COLUMNS, (int(row[0]),) + tuple(row[1:])))
        for row in table.rows
    ]
    return {"rows": rows}, []


def _run_influence(args):
    ds = load_dataset(args.input, column=args.column, delimiter=args.delimiter)
    grid = np.linspace(args.zmin, args.zmax, args.grid)
    curve = sensitivity_curve(ds.values, args.stat, grid)
    rows = [{"z": float(z), "sc": float(v)} for z, v in zip(curve.z_grid, curve.values)]
    return {"statistic": args.stat, "rows": rows}, []


def _run_breakdown(args):
    ds = load_dataset(args.input, column=args.column, delimiter=args.delimiter)
    report = contamination_sweep(
        ds.values, b=args.order, magnitude=args.magnitude, max_count=args.max_count
    )
    rows = [
        {"contaminated": k, "statistic": v, "diverged": bool(flag)}
        for k, v, flag in report.results
    ]
    results = {
        "order": report.b,
        "analytic_fraction": report.analytic_fraction,
        "magnitude": report.magnitude,
        "first_diverged": report.first_diverged,
        "rows": rows,
    }
    return results, []


_RUNNERS = {
    "population": _run_population,
    "moments": _run_moments,
    "simulate": _run_simulate,
    "sampdist": _run_sampdist,
    "influence": _run_influence,
    "breakdown": _run_breakdown,
}


def _to_csv(results) -> str:
    buf = io.StringIO()
    rows = results.get("rows") if isinstance(results, dict) else None
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    else:
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])

        def emit(prefix, obj):
            if isinstance(obj, dict):
                for k, v in obj.items():
                    emit(f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}", v)
            else:
                writer.writerow([prefix, obj])

        emit("", results)
    return buf.getvalue()


def dispatch(argv):
    """Run one subcommand; returns (exit status, rendered output text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return 2, str(exc)
    params = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "format", "out", "deterministic") and v is not None
    }
    try:
        results, discrepancies = _RUNNERS[args.command](args)
    except (InvalidParameterError, MomentsUndefinedError, SolverError) as exc:
        return 1, f"error: {exc}"
    envelope = {
        "command": args.command,
        "params": params,
        "results": results,
        "discrepancies": discrepancies,
        "metadata": {"tool_version": __version__},
    }
    if not args.deterministic:
        envelope["metadata"]["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    if args.format == "json":
        text = json.dumps(envelope, indent=2)
    else:
        text = _to_csv(results)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        return 0, f"wrote {args.out}"
    return 0, text


def main(argv=None) -> int:
    status, text = dispatch(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if status == 0 else sys.stderr
    print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
