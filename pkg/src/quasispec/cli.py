"""Command-line front end.

Subcommands: ``specfun``, ``potential``, ``solve``, ``classify``, ``scan``,
``momentum``. Options come from (lowest to highest priority) built-in
defaults, a ``key = value`` config file given with ``--config``, and flags.

Exit codes: 0 success, 1 unexpected failure, 2 invalid configuration,
3 solver failure (a partial report is still written).

Data files are deterministic; the run timestamp and environment go to a
``<out>.meta.json`` sidecar.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .asymptotics import R_CUT, classify, critical_alpha_eq19
from .errors import DomainError, PreconditionError, SolverError
from .momentum import MomentumDiscretization, coupling_spectrum, solve_self_consistent_momentum
from .potential import ModelParams, v_coulomb, v_large_r_asymptote, v_of_r
from .radial import (
    RadialGrid,
    classify_level,
    scan_extra_levels,
    solve_linear_eigenvalue,
    solve_self_consistent,
)
from . import specfun

SCHEMA = 1
JOBS_ENV = "QUASISPEC_JOBS"

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# ------------------------------------------------------------ option tables


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int_list(text) -> list[int]:
    if isinstance(text, list):
        return [int(v) for v in text]
    return [int(v) for v in str(text).replace(" ", "").split(",") if v]


@dataclass(frozen=True)
class Opt:
    type: object
    default: object
    help: str
    choices: tuple | None = None


_MODEL = {
    "alpha": Opt(float, None, "coupling constant"),
    "mass": Opt(float, 1.0, "fermion mass m"),
    "l": Opt(int, 0, "orbital angular momentum"),
    "charge_sign": Opt(int, 1, "+1 attractive, -1 repulsive", (1, -1)),
}
_IO = {
    "out": Opt(str, None, "output file (stdout if omitted)"),
    "format": Opt(str, None, "output format", ("json", "csv")),
}

OPTIONS: dict[str, dict[str, Opt]] = {
    "specfun": {
        "x": Opt(float, None, "argument (x_min for k-imag-zeros)"),
        "nu": Opt(float, None, "real order for k-real"),
        "mu": Opt(float, None, "imaginary order for k-imag and k-imag-zeros"),
        "n_mesh": Opt(int, None, "sign-scan mesh size for k-imag-zeros"),
        **_IO,
    },
    "potential": {
        **_MODEL,
        "energy_over_m": Opt(float, None, "energy parameter E / m"),
        "r_min": Opt(float, None, "first radius (default 1e-3/(m alpha))"),
        "r_max": Opt(float, None, "last radius (default 50/(m alpha))"),
        "n_points": Opt(int, 400, "number of radii"),
        "spacing": Opt(str, "logarithmic", "radius spacing", ("logarithmic", "uniform")),
        **_IO,
    },
    "solve": {
        **_MODEL,
        "n": Opt(int, 0, "radial node count"),
        "mode": Opt(str, "self-consistent", "which problem to solve",
                    ("self-consistent", "frozen", "frozen-coulomb")),
        "e_param_over_m": Opt(float, None, "frozen energy parameter / m (mode frozen)"),
        "n_points": Opt(int, 20000, "radial mesh points"),
        "tol": Opt(float, 1e-10, "self-consistency tolerance |g(E*)| / m"),
        "max_iter": Opt(int, 200, "iteration limit"),
        "wavefunction": Opt(_bool, False, "include r, chi arrays in JSON output"),
        **_IO,
    },
    "classify": {
        **_MODEL,
        "energy_over_m": Opt(float, None, "binding energy E / m"),
        "energy_over_m_alpha2": Opt(float, None, "binding energy E / (m alpha^2)"),
        "r_cut": Opt(float, R_CUT, "E r threshold of the asymptotic region"),
        **_IO,
    },
    "scan": {
        "alpha_min": Opt(float, 1.0 / 137.0, "smallest coupling"),
        "alpha_max": Opt(float, 0.5, "largest coupling"),
        "alpha_count": Opt(int, 8, "number of couplings (0 gives an empty table)"),
        "alpha_spacing": Opt(str, "log", "coupling spacing", ("log", "linear")),
        "l_values": Opt(_int_list, [0, 1], "comma-separated l values"),
        "mass": Opt(float, 1.0, "fermion mass m"),
        "charge_sign": Opt(int, 1, "+1 attractive, -1 repulsive", (1, -1)),
        "n_max": Opt(int, 3, "largest node count searched"),
        "e_lo_over_m_alpha2": Opt(float, 1e-3, "lower end of the energy window / (m alpha^2)"),
        "e_hi_over_m_alpha2": Opt(float, 1.0, "upper end of the energy window / (m alpha^2)"),
        "mesh_points": Opt(int, 24, "sign-scan points per node count"),
        "r_cut": Opt(float, R_CUT, "E r threshold of the asymptotic region"),
        "jobs": Opt(int, None, f"parallel rows (default ${JOBS_ENV} or 1)"),
        **_IO,
    },
    "momentum": {
        **_MODEL,
        "mode": Opt(str, "spectrum", "fixed-energy spectrum or physical solve",
                    ("spectrum", "self-consistent")),
        "e_param_over_m": Opt(float, None, "kernel energy / m (mode spectrum)"),
        "trial_binding_over_m": Opt(float, None, "kinetic-side energy / m (mode spectrum)"),
        "n": Opt(int, 0, "coupling index to solve for (mode self-consistent)"),
        "n_nodes": Opt(int, 200, "momentum nodes"),
        "scale": Opt(float, None, "node mapping scale p0 (default max(sqrt(mE), m alpha))"),
        "n_keep": Opt(int, 8, "number of couplings reported"),
        **_IO,
    },
}

_SPECFUN_FUNCS = ("ci", "si", "f", "k-real", "k-imag", "k-imag-zeros")
_DEFAULT_FORMAT = {"specfun": "json", "potential": "csv", "solve": "json", "classify": "json",
                   "scan": "csv", "momentum": "json"}
_FORMATS = {"specfun": ("json",), "classify": ("json",), "momentum": ("json",)}


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)

    @property
    def out(self):
        return self.options.get("out")

    @property
    def format(self) -> str:
        return self.options["format"]

    def params(self, alpha=None, l=None) -> ModelParams:
        o = self.options
        return ModelParams(
            alpha=o["alpha"] if alpha is None else alpha,
            mass=o["mass"],
            l=o["l"] if l is None else l,
            charge_sign=o["charge_sign"],
        )

    def to_dict(self) -> dict:
        d = {"subcommand": self.subcommand}
        d.update({k: v for k, v in self.options.items() if k != "out"})
        return d


# ------------------------------------------------------------ config parsing


class _JsonErrorParser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("ConfigError", message, None)
        sys.exit(EXIT_CONFIG)


def _build_parser() -> argparse.ArgumentParser:
    parser = _JsonErrorParser(prog="quasispec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_JsonErrorParser)
    for name, table in OPTIONS.items():
        p = sub.add_parser(name)
        if name == "specfun":
            p.add_argument("function", choices=_SPECFUN_FUNCS)
        p.add_argument("--config", default=None, help="key = value config file")
        for key, opt in table.items():
            # plain strings here; conversion happens once, after merging
            extra = {"nargs": "?", "const": "true"} if opt.type is _bool else {}
            p.add_argument("--" + key.replace("_", "-"), dest=key, default=argparse.SUPPRESS,
                           help=opt.help, **extra)
    return parser


def read_config_file(path: str, subcommand: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; unknown keys are rejected."""
    table = OPTIONS[subcommand]
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in table:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r} for {subcommand}")
            values[key] = value
    return values


def _convert(key: str, opt: Opt, raw):
    try:
        value = opt.type(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: {exc}") from None
    if opt.choices is not None and value not in opt.choices:
        raise ConfigError(f"{key}: {value!r} not in {list(opt.choices)}")
    if isinstance(value, float) and not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite")
    return value


_POSITIVE = {"alpha", "mass", "n_points", "tol", "max_iter", "n_nodes", "r_cut", "mesh_points",
             "jobs", "n_keep", "r_min", "r_max", "scale", "e_lo_over_m_alpha2",
             "e_hi_over_m_alpha2", "n_mesh", "alpha_min", "alpha_max"}
_NONNEG = {"l", "n", "n_max", "alpha_count"}


def resolve_config(subcommand: str, flags: dict, config_values: dict | None = None) -> RunConfig:
    """Merge defaults < config file < flags, convert and validate."""
    table = OPTIONS[subcommand]
    merged = {k: opt.default for k, opt in table.items()}
    raw = dict(config_values or {})
    raw.update({k: v for k, v in flags.items() if k in table})
    unknown = set(flags) - set(table) - {"function", "config", "subcommand"}
    if unknown:
        raise ConfigError(f"unknown options {sorted(unknown)}")
    for key, value in raw.items():
        if value is not None:
            merged[key] = _convert(key, table[key], value)
    if subcommand == "scan" and merged["jobs"] is None:
        env = os.environ.get(JOBS_ENV)
        merged["jobs"] = _convert("jobs", table["jobs"], env) if env else 1
    if merged.get("format") is None:
        merged["format"] = _DEFAULT_FORMAT[subcommand]
    if merged["format"] not in _FORMATS.get(subcommand, ("json", "csv")):
        raise ConfigError(f"{subcommand} supports only {list(_FORMATS[subcommand])} output")
    if "function" in flags:
        merged = {"function": flags["function"], **merged}
    for key, value in merged.items():
        if value is None or isinstance(value, (str, list, bool)):
            continue
        if key in _POSITIVE and not value > 0:
            raise ConfigError(f"{key} must be > 0")
        if key in _NONNEG and value < 0:
            raise ConfigError(f"{key} must be >= 0")
    cfg = RunConfig(subcommand, merged)
    _check_required(cfg)
    return cfg


def _require(cfg, *keys):
    missing = [k for k in keys if cfg.options.get(k) is None]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _check_required(cfg: RunConfig):
    o = cfg.options
    sc = cfg.subcommand
    if "alpha" in OPTIONS[sc]:
        _require(cfg, "alpha")
    if sc == "specfun":
        fn = o["function"]
        needs = {"ci": ("x",), "si": ("x",), "f": ("x",), "k-real": ("nu", "x"),
                 "k-imag": ("mu", "x"), "k-imag-zeros": ("mu", "x")}[fn]
        _require(cfg, *needs)
    elif sc == "potential":
        _require(cfg, "energy_over_m")
        if o["energy_over_m"] < 0:
            raise ConfigError("energy_over_m must be >= 0")
    elif sc == "solve" and o["mode"] == "frozen":
        _require(cfg, "e_param_over_m")
    elif sc == "classify":
        given = [k for k in ("energy_over_m", "energy_over_m_alpha2") if o[k] is not None]
        if len(given) != 1:
            raise ConfigError("give exactly one of --energy-over-m, --energy-over-m-alpha2")
    elif sc == "momentum" and o["mode"] == "spectrum":
        _require(cfg, "e_param_over_m", "trial_binding_over_m")
    elif sc == "scan":
        if o["e_lo_over_m_alpha2"] > o["e_hi_over_m_alpha2"]:
            raise ConfigError("e_lo_over_m_alpha2 must not exceed e_hi_over_m_alpha2")
        if any(l < 0 for l in o["l_values"]):
            raise ConfigError("l_values must be >= 0")


# ------------------------------------------------------------ outputs


def _energies(E: float, params: ModelParams) -> dict:
    return {"over_m": E / params.mass, "over_m_alpha2": E / (params.mass * params.alpha**2)}


def _json_text(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"


def _envelope(cfg: RunConfig, **payload) -> dict:
    return {"schema": SCHEMA, "config": cfg.to_dict(), **payload}


def _csv_text(cfg: RunConfig, columns: list[str], rows, comments: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(f"# schema: {SCHEMA}\n")
    buf.write("# config: " + json.dumps(cfg.to_dict(), sort_keys=True) + "\n")
    for k, v in (comments or {}).items():
        buf.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _write(cfg: RunConfig, text: str, argv: list[str] | None):
    out = cfg.out
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    meta = {
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
        "argv": list(argv) if argv is not None else sys.argv[1:],
        "python": platform.python_version(),
        "numpy": np.__version__,
        "platform": platform.platform(),
    }
    with open(out + ".meta.json", "w", encoding="utf-8") as fh:
        fh.write(_json_text(meta))


def _emit_error(kind: str, message: str, cfg: RunConfig | None, **extra):
    doc = {"schema": SCHEMA, "error": {"type": kind, "message": message}, **extra}
    if cfg is not None:
        doc["config"] = cfg.to_dict()
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")
    return doc


# ------------------------------------------------------------ subcommands


def _run_specfun(cfg: RunConfig) -> str:
    o = cfg.options
    fn = o["function"]
    if fn == "ci":
        result = asdict(specfun.cosine_integral_eval(o["x"]))
    elif fn == "si":
        result = asdict(specfun.sine_integral_si_eval(o["x"]))
    elif fn == "f":
        result = asdict(specfun.f_kernel_eval(o["x"]))
    elif fn == "k-real":
        result = {"nu": o["nu"], "x": o["x"], "value": specfun.bessel_k_real_order(o["nu"], o["x"])}
    elif fn == "k-imag":
        v, log_scale = specfun.bessel_k_imag_order_scaled(o["mu"], o["x"])
        result = {"mu": o["mu"], "x": o["x"], "value": specfun.bessel_k_imag_order(o["mu"], o["x"]),
                  "scaled_value": v, "log_scale": log_scale}
    else:
        zeros = specfun.k_imag_zeros(o["mu"], o["x"], n_mesh=o["n_mesh"])
        result = {"mu": o["mu"], "x_min": o["x"], "zeros": [float(z) for z in zeros]}
    return _json_text(_envelope(cfg, function=fn, result=result))


def _run_potential(cfg: RunConfig) -> str:
    o = cfg.options
    params = cfg.params()
    m, a = params.mass, params.alpha
    E = o["energy_over_m"] * m
    r_min = o["r_min"] if o["r_min"] is not None else 1e-3 / (m * a)
    r_max = o["r_max"] if o["r_max"] is not None else 50.0 / (m * a)
    if not r_min < r_max:
        raise ConfigError("r_min must be below r_max")
    if o["spacing"] == "logarithmic":
        r = np.geomspace(r_min, r_max, o["n_points"])
    else:
        r = np.linspace(r_min, r_max, o["n_points"])
    v = v_of_r(params, E, r)
    vc = v_coulomb(params, r)
    va = v_large_r_asymptote(params, E, r) if E > 0 else np.full_like(r, np.nan)
    cols = ["r", "v", "v_coulomb", "v_large_r_asymptote"]
    if cfg.format == "csv":
        rows = zip(r.tolist(), v.tolist(), vc.tolist(), va.tolist())
        return _csv_text(cfg, cols, rows)
    data = {c: arr.tolist() for c, arr in zip(cols, (r, v, vc, va))}
    return _json_text(_envelope(cfg, result=data))


class _SolverFailure(Exception):
    def __init__(self, exc: SolverError, text: str):
        super().__init__(str(exc))
        self.exc = exc
        self.text = text


def _run_solve(cfg: RunConfig) -> str:
    o = cfg.options
    params = cfg.params()
    report = None
    try:
        if o["mode"] == "self-consistent":
            grid = RadialGrid.for_coupling(params, o["n"], params.coulomb_binding(o["n"] + params.l + 1),
                                           n_points=o["n_points"])
            res, report = solve_self_consistent(params, o["n"], grid=grid, tol=o["tol"],
                                                max_iter=o["max_iter"])
        else:
            e_param = 0.0 if o["mode"] == "frozen-coulomb" else o["e_param_over_m"] * params.mass
            grid = RadialGrid.for_coupling(params, o["n"], e_param, n_points=o["n_points"])
            res = solve_linear_eigenvalue(params, e_param, o["n"], grid, max_iter=o["max_iter"])
    except SolverError as exc:
        partial = exc.report.to_dict() if getattr(exc, "report", None) is not None else None
        doc = _envelope(cfg, status="failed", error={"type": type(exc).__name__, "message": str(exc)},
                        self_consistency=partial)
        raise _SolverFailure(exc, _json_text(doc)) from exc
    res.classification = classify_level(params, res.binding_energy)
    energies = _energies(res.binding_energy, params)
    if cfg.format == "csv":
        comments = {"binding_energy_over_m": energies["over_m"],
                    "binding_energy_over_m_alpha2": energies["over_m_alpha2"],
                    "node_count": res.node_count, "classification": res.classification}
        return _csv_text(cfg, ["r", "chi"], zip(res.r.tolist(), res.chi.tolist()), comments)
    doc = _envelope(cfg, status="ok", binding_energy=energies,
                    result=res.to_dict(wavefunction=o["wavefunction"]),
                    self_consistency=None if report is None else report.to_dict())
    return _json_text(doc)


def _run_classify(cfg: RunConfig) -> str:
    o = cfg.options
    params = cfg.params()
    if o["energy_over_m"] is not None:
        E = o["energy_over_m"] * params.mass
    else:
        E = o["energy_over_m_alpha2"] * params.mass * params.alpha**2
    rep = classify(params, E, r_cut=o["r_cut"])
    return _json_text(_envelope(cfg, energy=_energies(E, params), result=rep.to_dict()))


SCAN_COLUMNS = [
    "alpha", "l", "levels_found", "coulomb_like", "anomalous_candidates",
    "ground_binding_over_m", "ground_binding_over_m_alpha2", "branch", "gamma",
    "alpha_threshold_18", "critical_alpha_eq19", "eq19_satisfiable", "status",
]


def _scan_alphas(o) -> list[float]:
    n = o["alpha_count"]
    lo, hi = o["alpha_min"], o["alpha_max"]
    if n == 0 or lo > hi:
        return []
    if n == 1:
        return [lo]
    grid = np.geomspace(lo, hi, n) if o["alpha_spacing"] == "log" else np.linspace(lo, hi, n)
    return [float(a) for a in grid]


def scan_row(task: tuple) -> list:
    """One scan row; failures are reported in the status column."""
    alpha, l, o = task
    row = dict.fromkeys(SCAN_COLUMNS, "")
    row.update(alpha=alpha, l=l)
    try:
        params = ModelParams(alpha=alpha, mass=o["mass"], l=l, charge_sign=o["charge_sign"])
        scale = params.mass * alpha**2
        window = (o["e_lo_over_m_alpha2"] * scale, min(o["e_hi_over_m_alpha2"] * scale, 1.999 * params.mass))
        levels = scan_extra_levels(params, None, o["n_max"], window, mesh_points=o["mesh_points"])
        row["levels_found"] = len(levels)
        row["coulomb_like"] = sum(lv.classification == "coulomb-like" for lv in levels)
        row["anomalous_candidates"] = len(levels) - row["coulomb_like"]
        if levels:
            reports = [classify(params, lv.binding_energy, o["r_cut"]) for lv in levels]
            ground = max(levels, key=lambda lv: lv.binding_energy)
            g_rep = classify(params, ground.binding_energy, o["r_cut"])
            E = ground.binding_energy
            row["ground_binding_over_m"] = E / params.mass
            row["ground_binding_over_m_alpha2"] = E / scale
            row["branch"] = "|".join(sorted({r.branch.value for r in reports}))
            row["gamma"] = g_rep.gamma
            row["alpha_threshold_18"] = g_rep.alpha_threshold_18
            row["critical_alpha_eq19"] = critical_alpha_eq19(params, E, o["r_cut"] / E)
            row["eq19_satisfiable"] = any(r.eq19_satisfiable for r in reports)
        row["status"] = "ok"
    except Exception as exc:  # recorded in-row, the scan continues
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    return [row[c] for c in SCAN_COLUMNS]


def _run_scan(cfg: RunConfig) -> str:
    o = cfg.options
    tasks = [(a, l, o) for a in _scan_alphas(o) for l in o["l_values"]]
    if o["jobs"] > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=o["jobs"]) as pool:
            rows = list(pool.map(scan_row, tasks))
    else:
        rows = [scan_row(t) for t in tasks]
    if cfg.format == "csv":
        return _csv_text(cfg, SCAN_COLUMNS, rows)
    return _json_text(_envelope(cfg, columns=SCAN_COLUMNS, rows=rows))


def _run_momentum(cfg: RunConfig) -> str:
    o = cfg.options
    params = cfg.params()
    m = params.mass
    if o["mode"] == "self-consistent":
        try:
            E = solve_self_consistent_momentum(params, o["n"], n_nodes=o["n_nodes"])
        except SolverError as exc:
            doc = _envelope(cfg, status="failed", error={"type": type(exc).__name__, "message": str(exc)})
            raise _SolverFailure(exc, _json_text(doc)) from exc
        e_param = trial = E
    else:
        e_param, trial = o["e_param_over_m"] * m, o["trial_binding_over_m"] * m
        if e_param < 0:
            raise ConfigError("e_param_over_m must be >= 0")
    scale = o["scale"] if o["scale"] is not None else max(math.sqrt(m * trial), m * params.alpha)
    disc = MomentumDiscretization.build(o["n_nodes"], scale, params.l)
    spec = coupling_spectrum(e_param, trial, disc, m, n_keep=o["n_keep"])
    doc = _envelope(cfg, status="ok", result=spec.to_dict(),
                    discretization={"n_nodes": int(disc.nodes.size), "scale": disc.scale,
                                    "mapping": disc.mapping})
    if o["mode"] == "self-consistent":
        doc["binding_energy"] = _energies(e_param, params)
    return _json_text(doc)


_RUNNERS = {
    "specfun": _run_specfun,
    "potential": _run_potential,
    "solve": _run_solve,
    "classify": _run_classify,
    "scan": _run_scan,
    "momentum": _run_momentum,
}


def run(cfg: RunConfig, argv: list[str] | None = None) -> int:
    """Execute a resolved configuration and write its artifact."""
    try:
        text = _RUNNERS[cfg.subcommand](cfg)
    except _SolverFailure as fail:
        _write(cfg, fail.text, argv)
        _emit_error(type(fail.exc).__name__, str(fail.exc), cfg)
        return EXIT_SOLVER
    except SolverError as exc:
        _emit_error(type(exc).__name__, str(exc), cfg)
        return EXIT_SOLVER
    except (ConfigError, DomainError, PreconditionError) as exc:
        _emit_error(type(exc).__name__, str(exc), cfg)
        return EXIT_CONFIG
    _write(cfg, text, argv)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = vars(parser.parse_args(argv))
    sub = ns.pop("subcommand")
    config_path = ns.pop("config", None)
    try:
        file_values = read_config_file(config_path, sub) if config_path else {}
        cfg = resolve_config(sub, ns, file_values)
    except OSError as exc:
        _emit_error("ConfigError", str(exc), None)
        return EXIT_CONFIG
    except (ConfigError, DomainError) as exc:
        _emit_error(type(exc).__name__, str(exc), None)
        return EXIT_CONFIG
    try:
        cfg.params() if "alpha" in OPTIONS[sub] else None
    except (DomainError, ValueError) as exc:
        _emit_error(type(exc).__name__, str(exc), cfg)
        return EXIT_CONFIG
    return run(cfg, argv)


if __name__ == "__main__":
    sys.exit(main())
