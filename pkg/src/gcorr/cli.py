"""Command-line entry point.

Subcommands: ``gen``, ``embed``, ``test``, ``sim-convergence``, ``sim-power``,
``sim-null``. Reports are CSV (default) or JSON and always carry the full
run configuration, so every output can be regenerated from its own header.

Exit codes: 0 success, 1 usage or parse error, 2 incompatible data.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .graphgen import Setting, as_seed, erdos_renyi, sample_pair
from .io import GraphFormat, parse_graph, write_graph
from .kernel import KernelSpec
from .spectral import ase, lse, select_dimension, spectrum
from .testing import (
    DEFAULT_PERMUTATIONS,
    convergence_study,
    default_dimension,
    independence_test,
    null_density_study,
    power_study,
)

log = logging.getLogger("gcorr")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"command": self.command, **self.options}


def parse_d_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"1..10"`` -> [1, ..., 10]."""
    lo, sep, hi = text.partition("..")
    try:
        values = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}") from None
    if not values or values[0] < 1:
        raise argparse.ArgumentTypeError(f"dimension range must be nonempty and >= 1: {text!r}")
    return values


def parse_counts(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad count list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty count list")
    return values


def _kernel(text: str) -> KernelSpec:
    try:
        return KernelSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    try:
        return as_seed(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _probability(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcorr", allow_abbrev=False,
                     description="Independence testing for latent position random graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, report=True):
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if report:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
            p.add_argument("--timestamp", action="store_true",
                           help="add a metadata field with the wall-clock time")

    def latent(p):
        p.add_argument("--setting", type=Setting, default=Setting.LINEAR,
                       choices=list(Setting), metavar="SETTING")
        p.add_argument("--noise", type=float, default=0.0)
        p.add_argument("--kernel1", type=_kernel, default=KernelSpec.parse("gaussian:1"))
        p.add_argument("--kernel2", type=_kernel, default=KernelSpec.parse("laplace:1"))

    p = sub.add_parser("gen", allow_abbrev=False, help="sample a graph (pair) and write it")
    common(p, report=False)
    latent(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--model", choices=("latent", "er"), default="latent")
    p.add_argument("--p", type=float, default=0.3, help="edge probability for --model er")
    p.add_argument("--out2", default=None, help="where to write the second graph of the pair")
    p.add_argument("--graph-format", choices=[f.value for f in GraphFormat], default=None)

    p = sub.add_parser("embed", allow_abbrev=False, help="write embedding rows as CSV")
    common(p, report=False)
    p.add_argument("graph")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--kind", choices=("ase", "lse"), default="ase")
    p.add_argument("--graph-format", choices=[f.value for f in GraphFormat], default=None)

    p = sub.add_parser("test", allow_abbrev=False, help="permutation test on two graph files")
    common(p)
    p.add_argument("graph1")
    p.add_argument("graph2")
    dims = p.add_mutually_exclusive_group()
    dims.add_argument("--d", type=int, default=None)
    dims.add_argument("--d-range", type=parse_d_range, default=None)
    p.add_argument("--perms", type=int, default=DEFAULT_PERMUTATIONS)
    p.add_argument("--alpha", type=_probability, default=0.05)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--graph-format", choices=[f.value for f in GraphFormat], default=None)

    p = sub.add_parser("sim-convergence", allow_abbrev=False, help="gCorr vs latent HSIC over n")
    common(p)
    latent(p)
    p.add_argument("--n", type=parse_counts, default=[100, 500, 1000])
    p.add_argument("--d-range", type=parse_d_range, default=list(range(1, 6)))
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--rho", type=float, default=1.0)

    p = sub.add_parser("sim-power", allow_abbrev=False, help="empirical power over n")
    common(p)
    latent(p)
    p.add_argument("--n", type=parse_counts, default=[20, 40, 60, 80, 100])
    p.add_argument("--perms", type=int, default=199)
    p.add_argument("--alpha", type=_probability, default=0.05)
    p.add_argument("--replicates", type=int, default=50)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sim-null", allow_abbrev=False, help="sampling distribution of gCov")
    common(p)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--replicates", type=int, default=500)
    p.add_argument("--hypothesis", choices=("h0", "h1"), default="h0")
    p.add_argument("--d", type=int, default=None)
    return parser


def _jsonable(value):
    if isinstance(value, KernelSpec):
        return str(value)
    if isinstance(value, Setting):
        return value.value
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def config_from_args(args: argparse.Namespace) -> RunConfig:
    opts = {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k != "command"}
    return RunConfig(args.command, opts)


def render_report(config: RunConfig, rows: list[dict], fmt: str, timestamp: bool = False) -> str:
    cfg = config.as_dict()
    if fmt == "json":
        doc = {"config": cfg, "results": rows}
        if timestamp:
            doc["metadata"] = {"timestamp": datetime.now(timezone.utc).isoformat()}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(cfg, sort_keys=True)}\n")
    if timestamp:
        buf.write(f"# timestamp: {datetime.now(timezone.utc).isoformat()}\n")
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load(path, fmt):
    try:
        return parse_graph(path, fmt)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _cmd_gen(cfg, args):
    if args.model == "er":
        g1 = erdos_renyi(args.n, args.p, args.seed)
        g2 = None
    else:
        _, g1, g2 = sample_pair(args.setting, args.n, args.kernel1, args.kernel2,
                                args.noise, args.rho, args.seed)
    if args.out is None:
        raise UsageError("gen requires --out")
    write_graph(g1, args.out, args.graph_format)
    if args.out2 is not None:
        if g2 is None:
            raise UsageError("--out2 is only meaningful with --model latent")
        write_graph(g2, args.out2, args.graph_format)


def _cmd_embed(cfg, args):
    g = _load(args.graph, args.graph_format)
    d = select_dimension(spectrum(g)) if args.d is None else args.d
    if not 1 <= d <= g.n:
        raise UsageError(f"--d must lie in [1, {g.n}]")
    emb = (ase if args.kind == "ase" else lse)(g, d)
    buf = io.StringIO()
    np.savetxt(buf, emb.rows, delimiter=",", fmt="%.17g",
               header=",".join(f"dim{j + 1}" for j in range(d)), comments="")
    _emit(buf.getvalue(), args.out)


def _cmd_test(cfg, args):
    g1 = _load(args.graph1, args.graph_format)
    g2 = _load(args.graph2, args.graph_format)
    if g1.n != g2.n:
        raise DataError(f"node-count mismatch: {args.graph1} has {g1.n} nodes, "
                        f"{args.graph2} has {g2.n}")
    if args.d_range is not None:
        dims = args.d_range
    elif args.d is not None:
        dims = [args.d]
    else:
        dims = [default_dimension(g1, g2)]
    if max(dims) > g1.n or args.perms < 1:
        raise UsageError("need d <= n and --perms >= 1")
    rows = []
    for d in dims:
        rep = independence_test(g1, g2, d, args.perms, args.seed, args.workers)
        row = rep.as_dict()
        row["reject"] = rep.p_value <= args.alpha
        rows.append(row)
    return rows


def _cmd_convergence(cfg, args):
    table = convergence_study(args.setting, args.n, args.noise, (args.kernel1, args.kernel2),
                              args.d_range, args.replicates, args.seed, args.rho)
    return table.to_dict(orient="records")


def _cmd_power(cfg, args):
    estimates = power_study(args.setting, args.n, args.noise, args.perms, args.alpha,
                            args.replicates, args.seed, (args.kernel1, args.kernel2),
                            args.d, workers=args.workers)
    return [asdict(e) for e in estimates]


def _cmd_null(cfg, args):
    values = null_density_study(args.n, args.replicates, args.seed, args.hypothesis, args.d)
    return [{"replicate": i, "gcov": float(v)} for i, v in enumerate(values)]


_COMMANDS = {
    "gen": _cmd_gen,
    "embed": _cmd_embed,
    "test": _cmd_test,
    "sim-convergence": _cmd_convergence,
    "sim-power": _cmd_power,
    "sim-null": _cmd_null,
}


def run(config: RunConfig, args: argparse.Namespace) -> int:
    try:
        rows = _COMMANDS[config.command](config, args)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except DataError as exc:
        log.error("%s", exc)
        return EXIT_DATA
    except ValueError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_USAGE
    if rows is not None:
        rows = [{k: _jsonable(v) for k, v in r.items()} for r in rows]
        _emit(render_report(config, rows, args.format, args.timestamp), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    return run(config_from_args(args), args)


if __name__ == "__main__":
    sys.exit(main())
