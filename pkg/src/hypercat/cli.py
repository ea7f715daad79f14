"""Command-line front end.

Subcommands: eval, mandel-scan, verify-moments, sample, thermal, metric.
Options can come from flags or from a JSON config file (--config); flags
win. Exit codes: 0 success, 2 configuration/validation error, 3
numerical-domain error, 4 convergence failure. Sweeps report row-level
failures in an error column and keep going; the exit code then reflects
the worst failure class seen. Output is deterministic: CSV uses '.'
decimals and 17 significant digits, JSON has a fixed key order, and a
fixed seed reproduces sample files byte for byte.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass

import click
import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    HypercatError,
    SeriesOverflowError,
    ValidationError,
)
from .geometry import fd_check_metric, metric_density
from .moments import verify_moments, weight_case
from .params import ParamSet
from .series import hyper_even_pCq, hyper_odd_pSq, hyper_pFq
from .states import Parity, StateSpec
from .statistics import (
    ThermalSpec,
    expect_N,
    mandel_Q,
    photon_count_summary,
    sample_photon_counts,
    thermal_factorial_moment_direct,
    thermal_normal_moment,
    thermal_partition,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def parse_params(text: str) -> ParamSet:
    """Parse "a1,a2/b1" (slash splits numerator/denominator, empty side ok)."""
    if "/" not in text:
        raise ValidationError(
            f"--params must contain '/' separating numerator and denominator lists, got {text!r}"
        )
    left, right = text.split("/", 1)

    def side(s: str) -> list[float]:
        out = []
        for piece in s.split(","):
            piece = piece.strip()
            if piece:
                try:
                    out.append(float(piece))
                except ValueError as exc:
                    raise ValidationError(f"bad parameter value {piece!r}") from exc
        return out

    return ParamSet(side(left), side(right))


def parse_grid(text: str) -> np.ndarray:
    """Parse "start:stop:steps" into an inclusive linspace."""
    pieces = text.split(":")
    if len(pieces) != 3:
        raise ValidationError(f"--grid must look like start:stop:steps, got {text!r}")
    try:
        start, stop, steps = float(pieces[0]), float(pieces[1]), int(pieces[2])
    except ValueError as exc:
        raise ValidationError(f"bad grid specification {text!r}") from exc
    if steps < 1:
        raise ValidationError(f"grid needs at least one point, got steps={steps}")
    return np.linspace(start, stop, steps)


@dataclass
class RunConfig:
    command: str
    params: ParamSet | None
    parity: str
    grid: np.ndarray | None
    x: float | None
    tol: float
    nmax: int
    seed: int
    samples: int
    beta: float
    omega: float
    out: str | None
    fmt: str

    def echo_dict(self) -> dict:
        d: dict = {}
        if self.params is not None:
            d["a"] = list(self.params.a_list)
            d["b"] = list(self.params.b_list)
        if self.parity:
            d["parity"] = self.parity
        if self.grid is not None:
            d["grid"] = [float(v) for v in self.grid]
        if self.x is not None:
            d["x"] = self.x
        d["tol"] = self.tol
        if self.command in ("verify-moments", "thermal"):
            d["nmax"] = self.nmax
        if self.command == "sample":
            d["seed"] = self.seed
            d["samples"] = self.samples
        if self.command == "thermal":
            d["beta"] = self.beta
            d["omega"] = self.omega
        return d


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config file {path!r}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError(f"config file {path!r} must hold a JSON object")
    return cfg


def _resolve(flag_value, cfg: dict, key: str, default):
    if flag_value is not None:
        return flag_value
    if key in cfg:
        return cfg[key]
    return default


def _build_config(command: str, cfg_path, params, parity, grid, x, tol, nmax, seed,
                  samples, beta, omega, out, fmt) -> RunConfig:
    cfg = _load_config(cfg_path)
    params_text = _resolve(params, cfg, "params", None)
    grid_text = _resolve(grid, cfg, "grid", None)
    return RunConfig(
        command=command,
        params=parse_params(str(params_text)) if params_text is not None else None,
        parity=str(_resolve(parity, cfg, "parity", "even")),
        grid=parse_grid(str(grid_text)) if grid_text is not None else None,
        x=_resolve(x, cfg, "x", None),
        tol=float(_resolve(tol, cfg, "tol", 1e-9)),
        nmax=int(_resolve(nmax, cfg, "nmax", 20)),
        seed=int(_resolve(seed, cfg, "seed", 0)),
        samples=int(_resolve(samples, cfg, "samples", 100_000)),
        beta=float(_resolve(beta, cfg, "beta", 1.0)),
        omega=float(_resolve(omega, cfg, "omega", 1.0)),
        out=_resolve(out, cfg, "out", None),
        fmt=str(_resolve(fmt, cfg, "format", "csv")),
    )


def _write_report(cfg: RunConfig, columns: list[str], rows: list[dict],
                  max_rel_error: float | None = None) -> None:
    if cfg.fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt(row.get(c)) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        doc: dict = {"command": cfg.command, "params": cfg.echo_dict(), "results": rows}
        if max_rel_error is not None:
            doc["max_rel_error"] = max_rel_error
        text = json.dumps(doc, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _worst_exit(rows: list[dict]) -> int:
    codes = [row.get("_exit", EXIT_OK) for row in rows]
    if EXIT_CONVERGENCE in codes:
        return EXIT_CONVERGENCE
    if EXIT_DOMAIN in codes:
        return EXIT_DOMAIN
    return EXIT_OK


def _classify(exc: HypercatError) -> int:
    if isinstance(exc, ConvergenceError):
        return EXIT_CONVERGENCE
    if isinstance(exc, (DomainError, SeriesOverflowError)):
        return EXIT_DOMAIN
    return EXIT_CONFIG


def _strip_private(rows: list[dict]) -> list[dict]:
    return [{k: v for k, v in row.items() if not k.startswith("_")} for row in rows]


_common = [
    click.option("--params", "params", default=None, help='parameter lists "a1,a2/b1"'),
    click.option("--parity", default=None, type=click.Choice(["full", "even", "odd"])),
    click.option("--grid", default=None, help="x grid start:stop:steps"),
    click.option("--x", "x", default=None, type=float, help="single x value"),
    click.option("--tol", default=None, type=float, help="tolerance (default 1e-9)"),
    click.option("--nmax", default=None, type=int, help="max order (default 20)"),
    click.option("--seed", default=None, type=int, help="RNG seed (default 0)"),
    click.option("--samples", default=None, type=int, help="sample count (default 100000)"),
    click.option("--beta", default=None, type=float, help="inverse temperature"),
    click.option("--omega", default=None, type=float, help="oscillator energy"),
    click.option("--out", default=None, help="output path (default stdout)"),
    click.option("--format", "fmt", default=None, type=click.Choice(["csv", "json"])),
    click.option("--config", "cfg_path", default=None, help="JSON config file; flags override"),
]


def _with_common(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
def main() -> None:
    """Hypergeometric cat-state numerics: series, statistics, weights, geometry."""


def _run(command: str, kwargs: dict, body) -> None:
    try:
        cfg = _build_config(command, **kwargs)
        code = body(cfg)
    except HypercatError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(_classify(exc))
    sys.exit(code)


@main.command("eval")
@_with_common
def cmd_eval(**kwargs) -> None:
    """Evaluate F, C, S and the F-C-S residual over an x grid."""

    def body(cfg: RunConfig) -> int:
        if cfg.params is None:
            raise ValidationError("eval needs --params")
        if cfg.grid is None or cfg.grid.size == 0:
            raise ValidationError("eval needs a non-empty --grid")
        rows = []
        for x in cfg.grid:
            row: dict = {"x": float(x)}
            try:
                f = hyper_pFq(cfg.params, float(x), cfg.tol).value
                c = hyper_even_pCq(cfg.params, float(x), cfg.tol).value
                s = hyper_odd_pSq(cfg.params, float(x), cfg.tol).value
                row.update(F=f, C=c, S=s, identity_residual=f - c - s)
            except HypercatError as exc:
                row["error"] = str(exc)
                row["_exit"] = _classify(exc)
            rows.append(row)
        _write_report(cfg, ["x", "F", "C", "S", "identity_residual", "error"],
                      _strip_private(rows))
        return _worst_exit(rows)

    _run("eval", kwargs, body)


@main.command("mandel-scan")
@_with_common
def cmd_mandel_scan(**kwargs) -> None:
    """Mandel Q and mean photon number for both parities over an x grid."""

    def body(cfg: RunConfig) -> int:
        if cfg.params is None:
            raise ValidationError("mandel-scan needs --params")
        if cfg.grid is None or cfg.grid.size == 0:
            raise ValidationError("mandel-scan needs a non-empty --grid")
        rows = []
        for x in cfg.grid:
            row: dict = {"x": float(x)}
            try:
                if x < 0:
                    raise DomainError(f"x = |z|^2 must be >= 0, got {x}")
                z = math.sqrt(float(x))
                qe = mandel_Q(StateSpec(cfg.params, Parity.EVEN, z))
                qo = mandel_Q(StateSpec(cfg.params, Parity.ODD, z))
                row.update(Q_even=qe.q_value, Q_odd=qo.q_value,
                           N_even=qe.mean_n, N_odd=qo.mean_n)
            except HypercatError as exc:
                row["error"] = str(exc)
                row["_exit"] = _classify(exc)
            rows.append(row)
        _write_report(cfg, ["x", "Q_even", "Q_odd", "N_even", "N_odd", "error"],
                      _strip_private(rows))
        return _worst_exit(rows)

    _run("mandel-scan", kwargs, body)


@main.command("verify-moments")
@_with_common
def cmd_verify_moments(**kwargs) -> None:
    """Quadrature moments of the closed-form weight vs rho(n); exit 0 iff within tol."""

    def body(cfg: RunConfig) -> int:
        if cfg.params is None:
            raise ValidationError("verify-moments needs --params")
        case = weight_case(cfg.params)
        filt = "all" if cfg.parity == "full" else cfg.parity
        report = verify_moments(case, cfg.nmax, cfg.tol, parity_filter=filt)
        rows = [
            {"n": e.n, "target": e.target_rho, "value": e.quadrature_value,
             "rel_error": e.rel_error}
            for e in report.entries
        ]
        _write_report(cfg, ["n", "target", "value", "rel_error"], rows,
                      max_rel_error=report.max_rel_error)
        return EXIT_OK if report.max_rel_error <= cfg.tol else EXIT_CONVERGENCE

    _run("verify-moments", kwargs, body)


@main.command("sample")
@_with_common
def cmd_sample(**kwargs) -> None:
    """Draw photon counts, write them to --out, print a summary to stdout."""

    def body(cfg: RunConfig) -> int:
        if cfg.params is None:
            raise ValidationError("sample needs --params")
        if cfg.x is None:
            raise ValidationError("sample needs --x (the value of |z|^2)")
        if cfg.out is None:
            raise ValidationError("sample needs --out for the sample file")
        if cfg.x < 0:
            raise DomainError(f"x must be >= 0, got {cfg.x}")
        parity = Parity(cfg.parity)
        state = StateSpec(cfg.params, parity, math.sqrt(cfg.x))
        counts = sample_photon_counts(state, cfg.samples, cfg.seed)
        summary = photon_count_summary(counts, parity)
        if parity is not Parity.FULL:
            q = mandel_Q(state)
            summary["q_analytic"] = q.q_value
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            if cfg.fmt == "csv":
                fh.write("n\n")
                fh.write("\n".join(str(int(v)) for v in counts) + "\n")
            else:
                doc = {"command": cfg.command, "params": cfg.echo_dict(),
                       "results": [int(v) for v in counts]}
                fh.write(json.dumps(doc) + "\n")
        click.echo(json.dumps(summary, sort_keys=True))
        return EXIT_OK

    _run("sample", kwargs, body)


@main.command("thermal")
@_with_common
def cmd_thermal(**kwargs) -> None:
    """Thermal normal-ordered moments r = 0..nmax with the direct-sum oracle and Z."""

    def body(cfg: RunConfig) -> int:
        spec = ThermalSpec(beta=cfg.beta, omega=cfg.omega)
        z = thermal_partition(spec)
        rows = []
        for r in range(cfg.nmax + 1):
            rows.append({
                "r": r,
                "moment": thermal_normal_moment(spec, r),
                "direct_sum": thermal_factorial_moment_direct(spec, r),
                "partition_function": z,
            })
        _write_report(cfg, ["r", "moment", "direct_sum", "partition_function"], rows)
        return EXIT_OK

    _run("thermal", kwargs, body)


@main.command("metric")
@_with_common
def cmd_metric(**kwargs) -> None:
    """Metric density for both parities with a finite-difference deviation column."""

    def body(cfg: RunConfig) -> int:
        if cfg.params is None:
            raise ValidationError("metric needs --params")
        if cfg.params.p != 1 or cfg.params.q != 0:
            raise ValidationError(
                f"metric is implemented for the (p,q)=(1,0) family, got ({cfg.params.p},{cfg.params.q})"
            )
        if cfg.grid is None or cfg.grid.size == 0:
            raise ValidationError("metric needs a non-empty --grid")
        a = cfg.params.a_list[0]
        rows = []
        for x in cfg.grid:
            row: dict = {"x": float(x)}
            try:
                de = metric_density(Parity.EVEN, a, float(x)).density
                do = metric_density(Parity.ODD, a, float(x)).density
                row.update(density_even=de, density_odd=do)
                if 0.0 < x < 1.0:
                    h = min(1e-5, float(x) / 2.0, (1.0 - float(x)) / 2.0)
                    dev_e = fd_check_metric(Parity.EVEN, a, float(x), h)
                    dev_o = fd_check_metric(Parity.ODD, a, float(x), h)
                    row["fd_deviation"] = max(dev_e, dev_o)
            except HypercatError as exc:
                row["error"] = str(exc)
                row["_exit"] = _classify(exc)
            rows.append(row)
        _write_report(cfg, ["x", "density_even", "density_odd", "fd_deviation", "error"],
                      _strip_private(rows))
        return _worst_exit(rows)

    _run("metric", kwargs, body)


if __name__ == "__main__":
    main()
