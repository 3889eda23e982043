"""Command-line front end.

Exit codes: 0 success, 1 a statistical check failed, 2 invalid input or usage.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .errors import EmpsupError
from .harness import ExperimentConfig, convergence_table, run_experiment, verify_maximal_inequality
from .limits import DensitySpec, argmax_sup_density, symmetric_unit_grid
from .process import order_statistics, sup_unweighted, sup_weighted

RECORD_COLUMNS = ["n", "replication", "v", "tau", "r_index", "r_over_n", "normalized", "side"]
TABLE_COLUMNS = ["n", "ks_to_gumbel", "mass_interior", "p_tau_le_half", "mean_v_over_an", "independence_tv"]


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(x), ".17g")


@dataclass
class RunManifest:
    command: str
    config: dict
    master_seed: Optional[int]
    version: str = __version__
    started: str = ""
    finished: str = ""
    outputs: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


def _now():
    return datetime.now(timezone.utc).isoformat()


def _write_csv(path: Path, header, rows):
    lines = [",".join(header)] + [",".join(r) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _int_list(text: str):
    try:
        return [int(float(s)) if "e" in s.lower() else int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def _alpha(text: str):
    if text == "loglog":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--alpha takes 'loglog' or a float, got {text!r}")


def _grid(text: str):
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--grid takes <int>x<int>, got {text!r}")


def _read_values(args):
    if args.values is not None:
        raw = [s for s in args.values.split(",") if s.strip()]
    elif args.input is not None:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {args.input}: {e}")
        raw = [s for s in text.splitlines() if s.strip()]
    else:
        raise UsageError("give an input file or --values")
    try:
        return [float(s) for s in raw]
    except ValueError as e:
        raise UsageError(f"malformed input: {e}")


def cmd_sup(args):
    sample = order_statistics(_read_values(args))
    res = sup_weighted(sample) if args.weighted else sup_unweighted(sample)
    out = {"n": sample.n, "value": res.value, "location": res.location, "index": res.index, "side": res.side.value}
    print(json.dumps(out))
    return 0


def _resolve_config(args) -> ExperimentConfig:
    base = {}
    if args.config is not None:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot load config {args.config}: {e}")
        base = dict(data.get("config", data))
    for key, value in (
        ("n_values", args.n),
        ("replications", args.reps),
        ("master_seed", args.seed),
        ("alpha_rule", args.alpha),
        ("weighted", args.weighted),
    ):
        if value is not None:
            base[key] = value
    if "weighted" in base and "normalize" not in base:
        base["normalize"] = base["weighted"]
    try:
        return ExperimentConfig.from_dict(base)
    except TypeError as e:
        raise UsageError(f"bad config: {e}")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _finish(out: Path, manifest: RunManifest):
    manifest.finished = _now()
    (out / "manifest.json").write_text(manifest.to_json(), encoding="utf-8", newline="\n")


def cmd_experiment(args):
    config = _resolve_config(args)
    out = _out_dir(args)
    manifest = RunManifest("experiment", config.to_dict(), config.master_seed, started=_now())
    records = run_experiment(config, workers=args.workers)
    rows = (
        [
            str(r.n),
            str(r.replication),
            fmt(r.v),
            fmt(r.tau),
            str(r.r_index),
            fmt(r.r_over_n),
            "" if r.normalized is None else fmt(r.normalized),
            r.side.value,
        ]
        for r in records
    )
    _write_csv(out / "records.csv", RECORD_COLUMNS, rows)
    manifest.outputs = ["records.csv"]
    _finish(out, manifest)
    return 0


def cmd_table(args):
    config = _resolve_config(args)
    out = _out_dir(args)
    manifest = RunManifest("table", config.to_dict(), config.master_seed, started=_now())
    table = convergence_table(config, workers=args.workers)
    rows = ([str(r.n)] + [fmt(getattr(r, c)) for c in TABLE_COLUMNS[1:]] for r in table)
    _write_csv(out / "table.csv", TABLE_COLUMNS, rows)
    manifest.outputs = ["table.csv"]
    _finish(out, manifest)
    return 0


def cmd_verify(args):
    report = verify_maximal_inequality(args.n, args.a, args.lam, args.reps, args.seed, workers=args.workers)
    print(json.dumps(report.to_dict()))
    return 0 if report.passed else 1


def cmd_density(args):
    nx, ny = args.grid
    if nx < 1 or ny < 1 or not args.ymax > 0:
        raise UsageError("grid sizes and --ymax must be positive")
    spec = DensitySpec(truncation_j=args.trunc_j)
    x = symmetric_unit_grid(nx)
    y = np.linspace(0.0, args.ymax, ny)
    f = argmax_sup_density(x[:, None], y[None, :], spec)
    out = _out_dir(args)
    config = {"grid": [nx, ny], "trunc_j": args.trunc_j, "ymax": args.ymax}
    manifest = RunManifest("density", config, None, started=_now())
    rows = ([fmt(x[i]), fmt(y[j]), fmt(f[i, j])] for i in range(nx) for j in range(ny))
    _write_csv(out / "density.csv", ["x", "y", "f"], rows)
    manifest.outputs = ["density.csv"]
    _finish(out, manifest)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="empsup", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sup", help="supremum and maximizer of one sample")
    s.add_argument("input", nargs="?", help="file with one value per line")
    s.add_argument("--values", help="comma-separated values instead of a file")
    s.add_argument("--weighted", type=_bool, default=True)
    s.set_defaults(func=cmd_sup)

    for name, func, helptext in (
        ("experiment", cmd_experiment, "replication records as CSV"),
        ("table", cmd_table, "convergence diagnostics as CSV"),
    ):
        e = sub.add_parser(name, help=helptext)
        e.add_argument("--config", help="config JSON or a manifest from an earlier run")
        e.add_argument("--seed", type=int)
        e.add_argument("--reps", type=int)
        e.add_argument("--n", type=_int_list)
        e.add_argument("--alpha", type=_alpha)
        e.add_argument("--weighted", type=_bool)
        e.add_argument("--out", required=True)
        e.add_argument("--workers", type=int, default=1)
        e.set_defaults(func=func)

    v = sub.add_parser("verify", help="Monte Carlo check of the maximal inequality")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--a", type=float, required=True)
    v.add_argument("--lam", "--lambda", dest="lam", type=float, required=True)
    v.add_argument("--reps", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="joint density of (argmax|B|, sup|B|) on a grid")
    d.add_argument("--grid", type=_grid, default=(101, 101))
    d.add_argument("--trunc-j", type=int, default=50)
    d.add_argument("--ymax", type=float, default=3.0)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EmpsupError, UsageError, ValueError) as e:
        print(f"empsup {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
