"""Command-line front door.

Subcommands: analyze, generate, er-curve, map, boundary, sample,
sampling-report. Every run with an ``--out`` directory writes its primary
artifacts plus a ``manifest.json`` recording the resolved parameters,
master seed, tool version, input digests and wall-clock duration -- enough
to replay the run bit-exactly. Option precedence is flag > config file >
built-in default. If no seed is given, one is drawn and recorded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import secrets
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .er_theory import er_curve
from .graph import Graph, load_edge_list_file, summary_stats
from .models import ModelSpec, generate
from .sampling import DEFAULT_RATES, SamplingPlan, sample_edges, sampling_report
from .sweep import SearchConfig, boundary_search, fit_boundary_line, uniqueness_map
from .uniqueness import uniqueness_report


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.9g" % float(x)


def _parse_grid(spec: str, integer: bool = False) -> list:
    """Parse a grid argument: "5", "2,5,10", "1:30" (step 1), "1:30:0.5",
    or "100:20000:log10" (10 log-spaced points)."""
    spec = spec.strip()
    if "," in spec:
        vals = [float(tok) for tok in spec.split(",") if tok.strip()]
    elif ":" in spec:
        parts = spec.split(":")
        lo, hi = float(parts[0]), float(parts[1])
        if len(parts) == 2:
            vals = list(np.arange(lo, hi + 0.5, 1.0))
        elif parts[2].startswith("log"):
            count = int(parts[2][3:] or 10)
            vals = list(np.geomspace(lo, hi, count))
        else:
            step = float(parts[2])
            vals = list(np.arange(lo, hi + step / 2, step))
    else:
        vals = [float(spec)]
    if not vals:
        raise ValueError(f"empty grid spec {spec!r}")
    if integer:
        out: list[int] = []
        for v in vals:
            iv = int(round(v))
            if iv not in out:
                out.append(iv)
        return out
    return vals


def _edge_list_text(g: Graph) -> str:
    lines = [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _json_dump(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


class Run:
    """Collects artifacts and writes them with a manifest on close."""

    def __init__(self, command: str, params: dict, out: str | None, inputs=()):
        self.command = command
        self.params = params
        self.out = Path(out) if out else None
        self.inputs = list(inputs)
        self.started = time.time()
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def write_text(self, name: str, text: str) -> None:
        if self.out:
            (self.out / name).write_text(text)
        else:
            sys.stdout.write(text)

    def write_json(self, name: str, payload: dict) -> None:
        if self.out:
            _json_dump(self.out / name, payload)
        else:
            sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")

    def finish(self) -> None:
        if not self.out:
            return
        manifest = {
            "command": self.command,
            "parameters": self.params,
            "version": __version__,
            "duration_seconds": round(time.time() - self.started, 3),
            "input_digests": {p: _sha256(p) for p in self.inputs},
        }
        _json_dump(self.out / "manifest.json", manifest)


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """flag > config-file value > default."""
    config = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            config = json.load(fh)
    resolved = {}
    for key, fallback in defaults.items():
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
        elif key in config:
            resolved[key] = config[key]
        else:
            resolved[key] = fallback
    return resolved


def _seed_or_draw(value) -> int:
    return int(value) if value is not None else secrets.randbits(63)


def _model_spec_params(p: dict) -> dict:
    if p["model"] == "ws" and p.get("beta") is None:
        raise ValueError("--beta is required for the ws model")
    return p


def _cmd_analyze(args) -> int:
    p = _resolve(args, {"input": None, "out": None, "format": "json", "per_node": False})
    if not p["input"]:
        raise ValueError("--input is required")
    g = load_edge_list_file(p["input"])
    stats = summary_stats(g)
    report = uniqueness_report(g)
    payload = {
        "n": stats.n,
        "m": stats.m,
        "avg_degree": stats.avg_degree,
        "clustering": stats.clustering,
    }
    payload.update(report.to_dict(include_per_node=bool(p["per_node"])))
    if p["per_node"] and g.labels:
        payload["labels"] = g.labels
    run = Run("analyze", p, p["out"], inputs=[p["input"]])
    if p["format"] == "csv":
        header = "n,m,avg_degree,clustering,neighborhood_uniqueness,degree_uniqueness,nonempty_fraction"
        row = ",".join(
            _fmt(x)
            for x in (
                stats.n,
                stats.m,
                stats.avg_degree,
                stats.clustering,
                report.neighborhood_uniqueness,
                report.degree_uniqueness,
                report.nonempty_fraction,
            )
        )
        run.write_text("analysis.csv", header + "\n" + row + "\n")
    else:
        run.write_json("analysis.json", payload)
    run.finish()
    return 0


def _cmd_generate(args) -> int:
    p = _resolve(
        args,
        {"model": "er", "n": 1000, "k": 10.0, "beta": None, "seed": None, "out": None},
    )
    p["seed"] = _seed_or_draw(p["seed"])
    _model_spec_params(p)
    spec = ModelSpec(
        family=p["model"],
        n=int(p["n"]),
        avg_degree=float(p["k"]),
        seed=p["seed"],
        beta=float(p["beta"]) if p["beta"] is not None else None,
    )
    g = generate(spec)
    run = Run("generate", p, p["out"])
    run.write_text("edges.txt", _edge_list_text(g))
    run.write_json(
        "genspec.json",
        {
            "family": spec.family,
            "n": spec.n,
            "avg_degree": spec.avg_degree,
            "beta": spec.beta,
            "seed": spec.seed,
            "realized_m": g.m,
            "realized_avg_degree": 2.0 * g.m / g.n,
        },
    )
    run.finish()
    return 0


def _cmd_er_curve(args) -> int:
    p = _resolve(args, {"n": 1000, "k_grid": None, "out": None})
    grid = _parse_grid(p["k_grid"]) if p["k_grid"] else None
    curve = er_curve(int(p["n"]), grid)
    lines = ["avg_k,expected_Uk,expected_Ndelta"]
    for k, uk, nd in zip(curve.avg_degrees, curve.degree_uniqueness, curve.nonempty_fraction):
        lines.append(f"{_fmt(k)},{_fmt(uk)},{_fmt(nd)}")
    run = Run("er-curve", p, p["out"])
    run.write_text("curve.csv", "\n".join(lines) + "\n")
    run.finish()
    return 0


def _cmd_map(args) -> int:
    p = _resolve(
        args,
        {
            "model": "er",
            "beta": None,
            "n_grid": "100:1000:log4",
            "k_grid": "1:20",
            "reps": 10,
            "seed": None,
            "jobs": None,
            "out": None,
        },
    )
    p["seed"] = _seed_or_draw(p["seed"])
    _model_spec_params(p)
    jobs = _jobs(p["jobs"])
    result = uniqueness_map(
        family=p["model"],
        n_grid=_parse_grid(str(p["n_grid"]), integer=True),
        k_grid=_parse_grid(str(p["k_grid"])),
        reps=int(p["reps"]),
        seed=p["seed"],
        beta=float(p["beta"]) if p["beta"] is not None else None,
        jobs=jobs,
    )
    lines = ["n,avg_k,mean_uniqueness,sem,reps"]
    for cell in result.cells:
        if cell.skipped:
            lines.append(f"{cell.n},{_fmt(cell.avg_degree)},,,0")
        else:
            lines.append(
                f"{cell.n},{_fmt(cell.avg_degree)},{_fmt(cell.mean)},{_fmt(cell.sem)},{cell.reps}"
            )
    run = Run("map", p, p["out"])
    run.write_text("map.csv", "\n".join(lines) + "\n")
    run.finish()
    return 0


def _cmd_boundary(args) -> int:
    p = _resolve(
        args,
        {
            "model": "er",
            "beta": None,
            "n_grid": "1000",
            "k_lo": 1.0,
            "k_hi": 100.0,
            "target": 0.5,
            "tol": 0.02,
            "max_sims": 30,
            "batch": 5,
            "confidence": 0.99,
            "min_width": 0.05,
            "seed": None,
            "jobs": None,
            "out": None,
        },
    )
    p["seed"] = _seed_or_draw(p["seed"])
    _model_spec_params(p)
    jobs = _jobs(p["jobs"])
    config = SearchConfig(
        target=float(p["target"]),
        confidence=float(p["confidence"]),
        batch_size=int(p["batch"]),
        max_sims=int(p["max_sims"]),
        tolerance=float(p["tol"]),
        k_lo=float(p["k_lo"]),
        k_hi=float(p["k_hi"]),
        min_width=float(p["min_width"]),
    )
    beta = float(p["beta"]) if p["beta"] is not None else None
    points = []
    details = []
    for n in _parse_grid(str(p["n_grid"]), integer=True):
        result = boundary_search(p["model"], n, config, p["seed"], beta, jobs)
        points.append((n, result.k_star))
        details.append(
            {
                "n": n,
                "k_star": result.k_star,
                "status": result.status,
                "total_sims": result.total_sims,
                "evaluations": [
                    {
                        "avg_degree": pt.avg_degree,
                        "mean": pt.mean,
                        "sem": pt.sem,
                        "sims": pt.sims,
                        "status": pt.status,
                    }
                    for pt in result.evaluations
                ],
            }
        )
    lines = ["n,k_star,evaluations"]
    for (n, k_star), det in zip(points, details):
        lines.append(f"{n},{_fmt(k_star)},{det['total_sims']}")
    run = Run("boundary", p, p["out"])
    run.write_text("boundary.csv", "\n".join(lines) + "\n")
    run.write_json("boundary_points.json", {"points": details})
    if len(points) >= 3:
        fit = fit_boundary_line(points)
        run.write_json(
            "fit.json",
            {"m": fit.slope, "c": fit.intercept, "residuals": fit.residuals, "rmse": fit.rmse},
        )
    run.finish()
    return 0


def _cmd_sample(args) -> int:
    p = _resolve(
        args,
        {"input": None, "rate": 0.5, "mode": "bernoulli", "seed": None, "out": None},
    )
    if not p["input"]:
        raise ValueError("--input is required")
    p["seed"] = _seed_or_draw(p["seed"])
    g = load_edge_list_file(p["input"])
    plan = SamplingPlan(rate=float(p["rate"]), mode=p["mode"], seed=p["seed"])
    sampled = sample_edges(g, plan)
    run = Run("sample", p, p["out"], inputs=[p["input"]])
    run.write_text("edges.txt", _edge_list_text(sampled))
    run.write_json(
        "sample_info.json",
        {
            "rate": plan.rate,
            "mode": plan.mode,
            "seed": plan.seed,
            "original_m": g.m,
            "retained_m": sampled.m,
            "n": sampled.n,
        },
    )
    run.finish()
    return 0


def _cmd_sampling_report(args) -> int:
    p = _resolve(
        args,
        {"input": None, "rates": None, "mode": "bernoulli", "seed": None, "out": None},
    )
    if not p["input"]:
        raise ValueError("--input is required")
    p["seed"] = _seed_or_draw(p["seed"])
    g = load_edge_list_file(p["input"])
    rates = _parse_grid(str(p["rates"])) if p["rates"] else list(DEFAULT_RATES)
    report = sampling_report(g, rates, seed=p["seed"], mode=p["mode"])
    lines = ["rate,avg_degree,uniqueness,degree_error,triangle_error"]
    for row in report.rows:
        lines.append(
            ",".join(
                _fmt(x)
                for x in (
                    row.rate,
                    row.avg_degree,
                    row.uniqueness,
                    row.degree_error,
                    row.triangle_error,
                )
            )
        )
    run = Run("sampling-report", p, p["out"], inputs=[p["input"]])
    run.write_text("report.csv", "\n".join(lines) + "\n")
    run.finish()
    return 0


def _jobs(value) -> int:
    if value is not None:
        return max(1, int(value))
    env = os.environ.get("NETUNIQ_JOBS")
    return max(1, int(env)) if env else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netuniq",
        description="Quantify and mitigate node re-identification risk in networks.",
    )
    parser.add_argument("--version", action="version", version=f"netuniq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **options):
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON file with default parameter values")
        sp.add_argument("--out", help="output directory (stdout if omitted)")
        for opt, kwargs in options.items():
            sp.add_argument(f"--{opt.replace('_', '-')}", **kwargs)
        sp.set_defaults(handler=handler)
        return sp

    add(
        "analyze",
        _cmd_analyze,
        input={"help": "edge-list file"},
        format={"choices": ["json", "csv"]},
        per_node={"action": "store_true", "default": None,
                  "help": "include per-node occurrence counts"},
    )
    add(
        "generate",
        _cmd_generate,
        model={"choices": ["er", "ws", "rgg"]},
        n={"type": int},
        k={"type": float, "help": "target average degree"},
        beta={"type": float, "help": "ws rewiring probability"},
        seed={"type": int},
    )
    add("er-curve", _cmd_er_curve, n={"type": int}, k_grid={"help": "degree grid"})
    add(
        "map",
        _cmd_map,
        model={"choices": ["er", "ws", "rgg"]},
        beta={"type": float},
        n_grid={"help": "e.g. 100:20000:log10"},
        k_grid={"help": "e.g. 1:100"},
        reps={"type": int},
        seed={"type": int},
        jobs={"type": int},
    )
    add(
        "boundary",
        _cmd_boundary,
        model={"choices": ["er", "ws", "rgg"]},
        beta={"type": float},
        n_grid={"help": "sizes to search, e.g. 1000,5000,10000"},
        k_lo={"type": float},
        k_hi={"type": float},
        target={"type": float},
        tol={"type": float},
        max_sims={"type": int},
        batch={"type": int},
        confidence={"type": float},
        min_width={"type": float},
        seed={"type": int},
        jobs={"type": int},
    )
    add(
        "sample",
        _cmd_sample,
        input={"help": "edge-list file"},
        rate={"type": float},
        mode={"choices": ["bernoulli", "exact-count"]},
        seed={"type": int},
    )
    add(
        "sampling-report",
        _cmd_sampling_report,
        input={"help": "edge-list file"},
        rates={"help": "comma list, e.g. 1.0,0.9,0.8"},
        mode={"choices": ["bernoulli", "exact-count"]},
        seed={"type": int},
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
