"""Command-line interface.

    defzero analyze FILE [--format text|json]
    defzero sample --n N --p P --seed S [--emit-network PATH] [--format ...]
    defzero sweep --n-grid 20,40,80 --c 1 --beta 3.5 --trials 2000 --seed 7
    defzero experiment (isolated|four-species|matrix-indep|
                        paired-given-defzero|exact-small) ...

Exit codes: 0 success, 1 usage or configuration error, 2 input-data error
(a network file that does not parse).  Estimate tables go to stdout or
--out as CSV (default) or JSON; every output embeds the configuration that
produced it, so any table can be regenerated from its own header.  CSV
output starts with a single `#` comment line carrying that configuration.
The environment variable DEFZERO_THREADS caps trial parallelism; results
are identical for any setting.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .experiments import (
    ErTrialConfig,
    EstimateRow,
    IsolatedTailSpec,
    SweepSpec,
    estimate_four_species_given_paired,
    estimate_isolated_tail,
    estimate_matrix_independence,
    estimate_paired_given_def_zero,
    exact_def_zero_prob_small,
    sweep_threshold,
)
from .netparse import (
    NetworkParseError,
    document_from_network,
    parse_network,
    serialize_network,
    to_reaction_network,
)
from .network import DeficiencyReport
from .rng import derive_seed
from .sampler import sample_er_network

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for input-data
    # errors here, so route usage problems to exit code 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class OutputRecord:
    """One self-describing result table."""

    command: str
    config: dict
    rows: list[dict]
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": self.schema_version,
                "command": self.command,
                "config": self.config,
                "rows": self.rows,
            },
            sort_keys=True,
        )

    def to_csv(self, columns: list[str]) -> str:
        header = (
            f"# schema_version={self.schema_version} command={self.command} "
            f"config={json.dumps(self.config, sort_keys=True)}"
        )
        lines = [header, ",".join(columns)]
        for row in self.rows:
            lines.append(
                ",".join("" if row.get(c) is None else repr(row.get(c)) for c in columns)
            )
        return "\n".join(lines) + "\n"


_ESTIMATE_COLUMNS = [
    "n", "p", "trials", "successes", "estimate", "ci_low", "ci_high", "wall_time_ms",
]


def _estimate_columns(rows: list[EstimateRow]) -> list[str]:
    cols = list(_ESTIMATE_COLUMNS)
    if any(r.k is not None for r in rows):
        cols.insert(1, "k")
    if any(r.conditioning_count is not None for r in rows):
        cols.insert(-1, "conditioning_count")
    return cols


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_rows(command: str, config: dict, rows: list[EstimateRow], args) -> None:
    record = OutputRecord(
        command=command, config=config, rows=[r.to_dict() for r in rows]
    )
    if args.format == "json":
        _emit(record.to_json() + "\n", args.out)
    else:
        _emit(record.to_csv(_estimate_columns(rows)), args.out)


def render_report(report: DeficiencyReport) -> str:
    """Human-readable deficiency report."""
    if report.num_complexes == 0:
        return "empty network, deficiency: 0\n"
    lines = [
        f"complexes: {report.num_complexes}",
        f"components: {report.num_components}",
        f"rank: {report.rank}",
        f"deficiency: {report.deficiency}",
        f"paired: {'yes' if report.is_paired else 'no'}",
        "component  complexes  rank  deficiency",
    ]
    for i, comp in enumerate(report.components, start=1):
        lines.append(
            f"{i:<9}  {comp.complex_count:<9}  {comp.rank:<4}  {comp.deficiency}"
        )
    return "\n".join(lines) + "\n"


def _cmd_analyze(args) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"defzero: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        doc = parse_network(text)
    except NetworkParseError as exc:
        print(f"defzero: {args.path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = to_reaction_network(doc).deficiency()
    if args.format == "json":
        record = OutputRecord(
            command="analyze",
            config={"path": args.path},
            rows=[report.to_dict()],
        )
        _emit(record.to_json() + "\n", None)
    else:
        _emit(render_report(report), None)
    return EXIT_OK


def _cmd_sample(args) -> int:
    if not 0.0 <= args.p <= 1.0:
        print(f"defzero: p must be in [0, 1], got {args.p}", file=sys.stderr)
        return EXIT_USAGE
    cfg = ErTrialConfig(args.n, args.p, args.seed)
    net = sample_er_network(cfg)
    report = net.deficiency()
    if args.emit_network:
        _emit(serialize_network(document_from_network(net)), args.emit_network)
    if args.format == "json":
        record = OutputRecord(
            command="sample",
            config={"n": args.n, "p": args.p, "seed": args.seed},
            rows=[report.to_dict()],
        )
        _emit(record.to_json() + "\n", None)
    else:
        _emit(render_report(report), None)
    return EXIT_OK


def _parse_grid(raw: str) -> tuple[int, ...]:
    try:
        grid = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {raw!r}")
    if not grid:
        raise argparse.ArgumentTypeError("the grid is empty")
    return grid


def _cmd_sweep(args) -> int:
    try:
        spec = SweepSpec(
            n_grid=args.n_grid,
            c=args.c,
            beta=args.beta,
            trials=args.trials,
            master_seed=args.seed,
        )
    except ValueError as exc:
        print(f"defzero: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = sweep_threshold(spec)
    config = {
        "n_grid": list(spec.n_grid),
        "c": spec.c,
        "beta": spec.beta,
        "trials": spec.trials,
        "seed": spec.master_seed,
    }
    _emit_rows("sweep", config, rows, args)
    return EXIT_OK


def _cmd_experiment(args) -> int:
    try:
        if args.experiment == "isolated":
            rows = []
            for n in sorted(set(args.n_grid)):
                alpha = float(n) if args.alpha is None else args.alpha
                spec = IsolatedTailSpec(
                    n=n, alpha=alpha, trials=args.trials, seed=derive_seed(args.seed, n)
                )
                rows.append(estimate_isolated_tail(spec))
            config = {
                "n_grid": sorted(set(args.n_grid)),
                "alpha": args.alpha,
                "trials": args.trials,
                "seed": args.seed,
            }
            _emit_rows("experiment isolated", config, rows, args)
        elif args.experiment == "four-species":
            row = estimate_four_species_given_paired(
                args.n, args.k, args.trials, args.seed
            )
            config = {"n": args.n, "k": args.k, "trials": args.trials, "seed": args.seed}
            _emit_rows("experiment four-species", config, [row], args)
        elif args.experiment == "matrix-indep":
            row = estimate_matrix_independence(args.n, args.k, args.trials, args.seed)
            config = {"n": args.n, "k": args.k, "trials": args.trials, "seed": args.seed}
            _emit_rows("experiment matrix-indep", config, [row], args)
        elif args.experiment == "paired-given-defzero":
            if not 0.0 <= args.p <= 1.0:
                print(f"defzero: p must be in [0, 1], got {args.p}", file=sys.stderr)
                return EXIT_USAGE
            row = estimate_paired_given_def_zero(
                ErTrialConfig(args.n, args.p, args.seed), args.trials
            )
            config = {"n": args.n, "p": args.p, "trials": args.trials, "seed": args.seed}
            _emit_rows("experiment paired-given-defzero", config, [row], args)
        else:  # exact-small
            if not 0.0 <= args.p <= 1.0:
                print(f"defzero: p must be in [0, 1], got {args.p}", file=sys.stderr)
                return EXIT_USAGE
            value = exact_def_zero_prob_small(args.n, args.p)
            if args.format == "json":
                record = OutputRecord(
                    command="experiment exact-small",
                    config={"n": args.n, "p": args.p},
                    rows=[{"n": args.n, "p": args.p, "exact_probability": value}],
                )
                _emit(record.to_json() + "\n", args.out)
            else:
                _emit(f"{value!r}\n", args.out)
    except ValueError as exc:
        print(f"defzero: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="defzero",
        description="Random binary reaction networks: exact deficiency and "
        "threshold experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="deficiency report for a network file")
    p_analyze.add_argument("path")
    p_analyze.add_argument("--format", choices=["text", "json"], default="text")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_sample = sub.add_parser("sample", help="sample one network and report it")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--p", type=float, required=True)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--emit-network", metavar="PATH")
    p_sample.add_argument("--format", choices=["text", "json"], default="text")
    p_sample.set_defaults(func=_cmd_sample)

    p_sweep = sub.add_parser("sweep", help="deficiency-zero probability sweep")
    p_sweep.add_argument("--n-grid", type=_parse_grid, required=True)
    p_sweep.add_argument("--c", type=float, default=1.0)
    p_sweep.add_argument("--beta", type=float, required=True)
    p_sweep.add_argument("--trials", type=int, required=True)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", metavar="PATH")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_exp = sub.add_parser("experiment", help="estimators for specific structure laws")
    exp_sub = p_exp.add_subparsers(dest="experiment", required=True)

    e_isolated = exp_sub.add_parser(
        "isolated", help="tail of the isolated-vertex count"
    )
    e_isolated.add_argument("--n-grid", type=_parse_grid, required=True)
    e_isolated.add_argument(
        "--alpha", type=float, default=None, help="defaults to alpha = n per grid point"
    )
    e_isolated.add_argument("--trials", type=int, required=True)
    e_isolated.add_argument("--seed", type=int, default=0)

    e_four = exp_sub.add_parser(
        "four-species", help="all reaction vectors touch four species, under pairing"
    )
    e_four.add_argument("--n", type=int, required=True)
    e_four.add_argument("--k", type=int, required=True)
    e_four.add_argument("--trials", type=int, required=True)
    e_four.add_argument("--seed", type=int, default=0)

    e_matrix = exp_sub.add_parser(
        "matrix-indep", help="column independence of sampled sign matrices"
    )
    e_matrix.add_argument("--n", type=int, required=True)
    e_matrix.add_argument("--k", type=int, required=True)
    e_matrix.add_argument("--trials", type=int, required=True)
    e_matrix.add_argument("--seed", type=int, default=0)

    e_paired = exp_sub.add_parser(
        "paired-given-defzero", help="paired fraction among deficiency-zero draws"
    )
    e_paired.add_argument("--n", type=int, required=True)
    e_paired.add_argument("--p", type=float, required=True)
    e_paired.add_argument("--trials", type=int, required=True)
    e_paired.add_argument("--seed", type=int, default=0)

    e_exact = exp_sub.add_parser(
        "exact-small", help="exact deficiency-zero probability for n in {1, 2}"
    )
    e_exact.add_argument("--n", type=int, choices=[1, 2], required=True)
    e_exact.add_argument("--p", type=float, required=True)

    for sp in (e_isolated, e_four, e_matrix, e_paired, e_exact):
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--format", choices=["csv", "json", "text"], default=None)
    p_exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "format", None) is None and args.command == "experiment":
        args.format = "text" if args.experiment == "exact-small" else "csv"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
