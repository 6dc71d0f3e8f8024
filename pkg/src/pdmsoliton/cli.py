"""Command-line entry point ``pdmsoliton``.

Settings are merged as built-in defaults, then a ``key=value`` config file
(``--config``), then command-line flags; the rightmost source wins. Exit
codes: 0 success, 1 verification failed, 2 usage error, 3 I/O error,
4 numerical guard.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .exceptions import NumericalGuardError
from .kdv import (KdVState, conserved_charges, evolve_series, isospectral_drift_report)
from .numgrid import PERIODIC, SampledField, make_uniform_grid
from .pdm_schemes import effective_potential_u, get_scheme, sech2_problem
from .solitons import traveling_one_soliton
from .spectral_solver import spectrum_of
from .susy import add_bound_state, pairing_check, partner_potentials
from .verification import run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_GUARD = 0, 1, 2, 3, 4

COMMANDS = ("potential", "spectrum", "susy", "kdv", "verify")
BUILTIN_POTENTIALS = ("zero", "one-soliton", "two-soliton", "bdd-one-soliton",
                      "bdd-two-soliton", "scheme")
BUILTIN_INITIAL = ("one-soliton", "two-soliton")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    scheme: str = "zk"
    alpha: float | None = None
    beta: float | None = None
    q: float = 1.0
    lam: float = 1.0
    epsilon: float = 0.0
    xmin: float | None = None
    xmax: float | None = None
    n: int | None = None
    t_final: float = 0.5
    dt: float = 1e-3
    samples: int = 5
    levels: int = 1
    potential: str = "one-soliton"
    initial: str = "one-soliton"
    input: str | None = None
    out: str | None = None
    tolerance: float | None = None

    def validate(self):
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, float) and not math.isfinite(val):
                raise UsageError(f"{f.name} must be finite, got {val}")
        if self.q <= 0:
            raise UsageError("q must be positive")

    def line_grid(self):
        xmin = -20.0 / self.q if self.xmin is None else self.xmin
        xmax = 20.0 / self.q if self.xmax is None else self.xmax
        return make_uniform_grid(xmin, xmax, 4001 if self.n is None else self.n)

    def ring_grid(self):
        xmin = -30.0 / self.q if self.xmin is None else self.xmin
        xmax = 30.0 / self.q if self.xmax is None else self.xmax
        return make_uniform_grid(xmin, xmax, 1024 if self.n is None else self.n, PERIODIC)


# config-file / flag key -> (RunConfig field, type)
_KEYS = {
    "scheme": ("scheme", str), "alpha": ("alpha", float), "beta": ("beta", float),
    "q": ("q", float), "lambda": ("lam", float), "epsilon": ("epsilon", float),
    "xmin": ("xmin", float), "xmax": ("xmax", float), "n": ("n", int),
    "t_final": ("t_final", float), "dt": ("dt", float), "samples": ("samples", int),
    "levels": ("levels", int), "potential": ("potential", str),
    "initial": ("initial", str), "in": ("input", str), "out": ("out", str),
    "tolerance": ("tolerance", float),
}


def parse_config_text(text: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        name, typ = _KEYS[key]
        try:
            out[name] = None if value.lower() == "none" else typ(value)
        except ValueError:
            raise UsageError(f"config line {lineno}: bad value for {key}: {value!r}")
    return out


def dump_config(cfg: RunConfig) -> str:
    lines = [f"# pdmsoliton {__version__} effective configuration"]
    by_field = {name: key for key, (name, _) in _KEYS.items()}
    for f in fields(cfg):
        if f.name == "command":
            continue
        val = getattr(cfg, f.name)
        lines.append(f"{by_field[f.name]} = {'none' if val is None else repr(val) if isinstance(val, float) else val}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--dump-config", metavar="PATH",
                        help="write the effective configuration and continue")
    common.add_argument("--scheme", help="zk | bdd | bastard | likuhn | custom")
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--q", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--xmin", type=float)
    common.add_argument("--xmax", type=float)
    common.add_argument("--n", type=int)
    common.add_argument("--t-final", dest="t_final", type=float)
    common.add_argument("--dt", type=float)
    common.add_argument("--samples", type=int)
    common.add_argument("--levels", type=int)
    common.add_argument("--potential", choices=BUILTIN_POTENTIALS)
    common.add_argument("--initial", choices=BUILTIN_INITIAL)
    common.add_argument("--in", dest="input", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--tolerance", type=float)

    parser = argparse.ArgumentParser(
        prog="pdmsoliton",
        description="PDM Schroedinger models, SUSY partners and KdV solitons.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "potential": "write the reduced potential u(x) for a scheme",
        "spectrum": "bound states of a builtin or CSV potential",
        "susy": "soliton ladder by SUSY bound-state addition",
        "kdv": "evolve KdV initial data and track charges and spectrum",
        "verify": "run the reproduction report",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        merged.update(parse_config_text(text))
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if f.name != "command" and val is not None:
            merged[f.name] = val
    cfg = RunConfig(command=args.command, **merged)
    cfg.validate()
    return cfg


def atomic_write(path: str | Path, text: str):
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _scheme(cfg):
    try:
        return get_scheme(cfg.scheme, cfg.alpha, cfg.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read_field(path, kind="dirichlet_line") -> SampledField:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    try:
        return SampledField.from_csv(text, kind)
    except ValueError as exc:
        raise OSError(f"cannot parse {path}: {exc}") from exc


def run_potential(cfg: RunConfig, log) -> int:
    scheme = _scheme(cfg)
    grid = cfg.line_grid()
    u = effective_potential_u(sech2_problem(scheme, cfg.lam, cfg.q, cfg.epsilon), grid)
    out = cfg.out or "potential.csv"
    atomic_write(out, u.to_csv())
    i = int(np.argmin(u.values))
    asym = 0.5 * (u.values[0] + u.values[-1])
    log(f"scheme={scheme.name} alpha={scheme.alpha} beta={scheme.beta} "
        f"lambda={cfg.lam} q={cfg.q}")
    log(f"asymptotic value: {asym:.12g}")
    log(f"minimum: {u.values[i]:.12g} at x = {grid.x[i]:.6g}")
    log(f"wrote {out}")
    return EXIT_OK


def _builtin_potential(cfg: RunConfig):
    grid = cfg.line_grid()
    q = cfg.q
    s2 = lambda x: 1.0 / np.cosh(q * x) ** 2  # noqa: E731
    name = cfg.potential
    if name == "zero":
        return grid.constant(0.0)
    if name == "one-soliton":
        return grid.sample(lambda x: -2 * q * q * s2(x))
    if name == "two-soliton":
        return grid.sample(lambda x: -6 * q * q * s2(x))
    if name == "bdd-one-soliton":
        return grid.sample(lambda x: q * q * (1 - 2 * s2(x)))
    if name == "bdd-two-soliton":
        return grid.sample(lambda x: q * q * (1 - 6 * s2(x)))
    if name == "scheme":
        return effective_potential_u(sech2_problem(_scheme(cfg), cfg.lam, q), grid)
    raise UsageError(f"unknown builtin potential {name!r}")


def run_spectrum(cfg: RunConfig, log) -> int:
    u = _read_field(cfg.input) if cfg.input else _builtin_potential(cfg)
    spec = spectrum_of(u)
    out = Path(cfg.out or "spectrum_out")
    names = []
    for i, psi in enumerate(spec.eigenfunctions):
        name = f"psi_{i}.csv"
        atomic_write(out / name, psi.to_csv())
        names.append(name)
    atomic_write(out / "spectrum.json", _json(spec.to_json_dict(names)))
    log(f"threshold: {spec.threshold:.12g}")
    log("eigenvalues: " + ", ".join(f"{e:.10g}" for e in spec.eigenvalues))
    log(f"wrote {out / 'spectrum.json'}")
    return EXIT_OK


def run_susy(cfg: RunConfig, log) -> int:
    if cfg.levels < 1:
        raise UsageError("--levels must be at least 1")
    grid = cfg.line_grid()
    out = Path(cfg.out or "susy_out")
    V = grid.constant(0.0)
    rungs = []
    for k in range(1, cfg.levels + 1):
        mu = -(k * cfg.q) ** 2
        added = add_bound_state(V, mu)
        report = pairing_check(partner_potentials(added.v))
        V = added.potential
        spec = spectrum_of(V)
        atomic_write(out / f"V_{k}.csv", V.to_csv())
        atomic_write(out / f"pairing_{k}.json", _json(report.to_json_dict()))
        rungs.append({"level": k, "mu_new": mu, "potential": f"V_{k}.csv",
                      "pairing": f"pairing_{k}.json",
                      "spectrum": [float(e) for e in spec.eigenvalues]})
        log(f"rung {k}: added mu = {mu:.6g}; spectrum "
            + ", ".join(f"{e:.8g}" for e in spec.eigenvalues))
    atomic_write(out / "susy.json", _json({"q": cfg.q, "rungs": rungs}))
    return EXIT_OK


def run_kdv(cfg: RunConfig, log) -> int:
    grid = cfg.ring_grid()
    q = cfg.q
    if cfg.input:
        u0 = _read_field(cfg.input, PERIODIC)
        grid = u0.grid
    elif cfg.initial == "one-soliton":
        u0 = traveling_one_soliton(q, 0.0, grid)
    else:
        u0 = grid.sample(lambda x: -6 * q * q / np.cosh(q * x) ** 2)
    if cfg.samples < 1 or cfg.t_final <= 0:
        raise UsageError("need samples >= 1 and t_final > 0")
    out = Path(cfg.out or "kdv_out")
    report = isospectral_drift_report(u0, cfg.t_final, cfg.samples, cfg.dt)
    states = [KdVState(u0, 0.0)] + evolve_series(
        KdVState(u0, 0.0), cfg.dt, report.times[1:])
    charges = []
    for i, st in enumerate(states):
        atomic_write(out / f"t_{i}.csv", st.u.to_csv())
        charges.append(list(conserved_charges(st.u).as_tuple()))
    manifest = {"times": report.times, "charges": charges, "drift": report.drift,
                "eigenvalues": report.eigenvalues, "dt": cfg.dt}
    if not cfg.input and cfg.initial == "one-soliton":
        exact = traveling_one_soliton(q, cfg.t_final, grid)
        manifest["linf_vs_exact"] = (states[-1].u - exact).max_abs()
        log(f"L_inf vs exact soliton at t={cfg.t_final}: {manifest['linf_vs_exact']:.3e}")
    atomic_write(out / "manifest.json", _json(manifest))
    log(f"isospectral drift: {report.drift:.3e}")
    log(f"wrote {len(states)} snapshots to {out}")
    return EXIT_OK


def run_verify_cmd(cfg: RunConfig, log) -> int:
    report = run_verify(cfg.tolerance)
    text = _json(report)
    if cfg.out:
        atomic_write(cfg.out, text)
        log(f"wrote {cfg.out}")
    else:
        sys.stdout.write(text)
    for e in report["entries"]:
        log(f"{e['id']} {'PASS' if e['passed'] else 'FAIL'} {e['name']}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


RUNNERS = {"potential": run_potential, "spectrum": run_spectrum, "susy": run_susy,
           "kdv": run_kdv, "verify": run_verify_cmd}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    def log(msg):
        print(msg, file=sys.stderr)

    try:
        cfg = resolve_config(args)
        if args.dump_config:
            atomic_write(args.dump_config, dump_config(cfg))
        return RUNNERS[cfg.command](cfg, log)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        log(f"pdmsoliton: error: {exc}")
        return EXIT_USAGE
    except NumericalGuardError as exc:
        log(f"pdmsoliton: numerical guard: {exc}")
        return EXIT_GUARD
    except OSError as exc:
        log(f"pdmsoliton: I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
