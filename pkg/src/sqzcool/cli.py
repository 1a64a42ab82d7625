"""Command-line front end.

One INI config file drives every subcommand.  Exactly one of [model]
(reduced single-cavity parameters) or [fullmodel] (three-mode
laboratory parameters, collapsed onto the reduced model before any
task runs) must be present; [run] picks the scheme and seed; each task
reads its own section.  JSON results embed the resolved configuration
and can themselves be passed back as --config to rerun bit-identically.

Exit codes: 0 success, 2 config or parameter error, 3 infeasible
suppression, 4 instability / empty feasible set, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import __version__
from .cooling import (
    SearchSpec,
    maximize_rate,
    minimize_phonons,
)
from .errors import (
    ConvergenceError,
    EmptyFeasibleSetError,
    HeatingDivergenceError,
    InfeasibleSuppressionError,
    InvalidParameterError,
    NumericalError,
    SingularityError,
    SqzCoolError,
    UnstableSystemError,
)
from .fullmodel import (
    FullModelParams,
    adiabatic_report,
    classical_steady_state,
    extract_reduced,
    frame_rotation,
)
from .gaussian import steady_state
from .model import ReducedParams, Scheme, SqueezedBath, apply_scheme
from .response import rates, scan_spectrum, solve_suppression

__all__ = ["main", "console_main"]


class ConfigError(SqzCoolError):
    """Configuration file is malformed or inconsistent."""


# ---------------------------------------------------------------------------
# config schema

_REQUIRED = object()


def _as_float(v) -> float:
    try:
        out = float(v)
    except (TypeError, ValueError):
        raise ConfigError(f"expected a number, got {v!r}") from None
    if not math.isfinite(out):
        raise ConfigError(f"expected a finite number, got {v!r}")
    return out


def _as_int(v) -> int:
    if isinstance(v, bool):
        raise ConfigError(f"expected an integer, got {v!r}")
    try:
        if isinstance(v, str):
            return int(v.strip())
        if isinstance(v, float) and not v.is_integer():
            raise ValueError
        return int(v)
    except (TypeError, ValueError):
        raise ConfigError(f"expected an integer, got {v!r}") from None


def _as_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, str):
        low = v.strip().lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
    raise ConfigError(f"expected true/false, got {v!r}")


def _as_str(v) -> str:
    if isinstance(v, str):
        return v.strip()
    raise ConfigError(f"expected a string, got {v!r}")


def _as_opt_float(v):
    if v is None:
        return None
    if isinstance(v, str) and v.strip().lower() in ("", "none"):
        return None
    return _as_float(v)


_MODEL_KEYS = {
    "delta": (_as_float, _REQUIRED),
    "kappa": (_as_float, _REQUIRED),
    "gamma": (_as_float, _REQUIRED),
    "g_coupling": (_as_float, _REQUIRED),
    "omega_m": (_as_float, 1.0),
    "eps_mag": (_as_float, 0.0),
    "eps_phase": (_as_float, 0.0),
    "r_s": (_as_float, 0.0),
    "phi_s": (_as_float, 0.0),
    "n_th": (_as_float, 0.0),
    # reserved for a future two-sided coupling; must stay 0
    "kappa_0": (_as_float, 0.0),
}

_FULLMODEL_KEYS = {
    "omega_m": (_as_float, _REQUIRED),
    "gamma": (_as_float, _REQUIRED),
    "delta_s": (_as_float, _REQUIRED),
    "delta_p": (_as_float, _REQUIRED),
    "kappa_s": (_as_float, _REQUIRED),
    "kappa_p": (_as_float, _REQUIRED),
    "g_s": (_as_float, _REQUIRED),
    "g_p": (_as_float, _REQUIRED),
    "eps0_re": (_as_float, 0.0),
    "eps0_im": (_as_float, 0.0),
    "drive_s_re": (_as_float, 0.0),
    "drive_s_im": (_as_float, 0.0),
    "drive_p_re": (_as_float, 0.0),
    "drive_p_im": (_as_float, 0.0),
    "r_s": (_as_float, 0.0),
    "phi_s": (_as_float, 0.0),
    "n_th": (_as_float, 0.0),
}

_RUN_KEYS = {
    "scheme": (_as_str, "ESIS"),
    "seed": (_as_int, 0),
}

_OUTPUT_KEYS = {
    "path": (_as_str, ""),
    "format": (_as_str, ""),
}

_SEARCH_KEYS = {
    "g_min": (_as_float, SearchSpec.g_min),
    "g_max": (_as_float, SearchSpec.g_max),
    "eps_bound_frac": (_as_float, SearchSpec.eps_bound_frac),
    "eps_pin": (_as_opt_float, None),
    "pin_suppression": (_as_bool, True),
    "n_starts": (_as_int, SearchSpec.n_starts),
    "max_evals_per_start": (_as_int, SearchSpec.max_evals_per_start),
    "xatol": (_as_float, SearchSpec.xatol),
    "r_s_max": (_as_float, SearchSpec.r_s_max),
    "g_ref": (_as_float, SearchSpec.g_ref),
}

_SCHEMA = {
    "model": _MODEL_KEYS,
    "fullmodel": _FULLMODEL_KEYS,
    "run": _RUN_KEYS,
    "output": _OUTPUT_KEYS,
    "spectrum": {
        "omega_min": (_as_float, -2.0),
        "omega_max": (_as_float, 2.0),
        "n_points": (_as_int, 401),
        "schemes": (_as_str, "SB,ES,IS,ESIS"),
        "normalized": (_as_bool, True),
        "pin_suppression": (_as_bool, False),
    },
    "rates": {
        "normalized": (_as_bool, True),
    },
    "suppress": {},
    "steady": {},
    "optimize": {
        "objective": (_as_str, "phonons"),
        **_SEARCH_KEYS,
    },
    "sweep": {
        "kappa_over_4omega_min": (_as_float, 1.0),
        "kappa_over_4omega_max": (_as_float, 100.0),
        "n_points": (_as_int, 7),
        "schemes": (_as_str, "SB,ES,IS,ESIS"),
        **_SEARCH_KEYS,
    },
    "validate-adiabatic": {},
}


def _read_raw_config(path: str) -> dict[str, dict[str, object]]:
    """Read an INI file, or a JSON result document pinned as config."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None

    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path!r} is not valid JSON: {exc}")
        cfg = doc.get("config", doc) if isinstance(doc, dict) else None
        if not isinstance(cfg, dict) or not all(
                isinstance(v, dict) for v in cfg.values()):
            raise ConfigError(
                f"JSON config {path!r} must hold sections of key/value maps")
        return {str(s): dict(kv) for s, kv in cfg.items()}

    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise ConfigError(f"config {path!r} is not valid INI: {exc}")
    if parser.defaults():
        raise ConfigError("a [DEFAULT] section is not supported")
    return {s: dict(parser.items(s)) for s in parser.sections()}


def _resolve_section(raw: dict, name: str) -> dict[str, object]:
    schema = _SCHEMA[name]
    given = raw.get(name, {})
    out: dict[str, object] = {}
    for key, (conv, default) in schema.items():
        if key in given:
            try:
                out[key] = conv(given[key])
            except ConfigError as exc:
                raise ConfigError(f"[{name}] {key}: {exc}") from None
        elif default is _REQUIRED:
            raise ConfigError(f"[{name}] missing required key {key!r}")
        else:
            out[key] = default
    return out


def _validate_raw(raw: dict) -> None:
    for section, keys in raw.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in keys:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
    has_model = "model" in raw
    has_full = "fullmodel" in raw
    if has_model == has_full:
        raise ConfigError(
            "exactly one of [model] or [fullmodel] must be present")


def _parse_schemes(text: str) -> list[Scheme]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise ConfigError("schemes list is empty")
    out = []
    for name in names:
        try:
            scheme = Scheme[name.upper()]
        except KeyError:
            raise ConfigError(f"unknown scheme {name!r}") from None
        if scheme in out:
            raise ConfigError(f"scheme {name!r} listed twice")
        out.append(scheme)
    return out


def _build_reduced(section: dict) -> ReducedParams:
    if section["kappa_0"] != 0.0:
        raise ConfigError("kappa_0 is reserved and must be 0")
    return ReducedParams(
        delta=section["delta"], kappa=section["kappa"],
        gamma=section["gamma"], g_coupling=section["g_coupling"],
        omega_m=section["omega_m"], eps_mag=section["eps_mag"],
        eps_phase=section["eps_phase"],
        bath=SqueezedBath(r_s=section["r_s"], phi_s=section["phi_s"]),
        n_th=section["n_th"])


def _build_full(section: dict) -> FullModelParams:
    return FullModelParams(
        omega_m=section["omega_m"], gamma=section["gamma"],
        delta_s=section["delta_s"], delta_p=section["delta_p"],
        kappa_s=section["kappa_s"], kappa_p=section["kappa_p"],
        g_s=section["g_s"], g_p=section["g_p"],
        eps0=complex(section["eps0_re"], section["eps0_im"]),
        drive_s=complex(section["drive_s_re"], section["drive_s_im"]),
        drive_p=complex(section["drive_p_re"], section["drive_p_im"]),
        n_th=section["n_th"],
        bath=SqueezedBath(r_s=section["r_s"], phi_s=section["phi_s"]))


def _search_spec(section: dict, seed: int) -> SearchSpec:
    return SearchSpec(
        g_min=section["g_min"], g_max=section["g_max"],
        eps_bound_frac=section["eps_bound_frac"],
        eps_pin=section["eps_pin"],
        pin_suppression=section["pin_suppression"],
        n_starts=section["n_starts"],
        max_evals_per_start=section["max_evals_per_start"],
        xatol=section["xatol"], r_s_max=section["r_s_max"],
        g_ref=section["g_ref"], seed=seed)


# ---------------------------------------------------------------------------
# output plumbing

def _canon_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if v is None:
        return "none"
    return str(v)


def _config_hash(task: str, resolved: dict) -> str:
    lines = [f"task={task}"]
    for section in sorted(resolved):
        for key in sorted(resolved[section]):
            lines.append(f"{section}.{key}="
                         f"{_canon_value(resolved[section][key])}")
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def _jsonable(obj):
    """Make results JSON-safe: NaN -> null, inf -> 'inf', arrays -> lists."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Scheme):
        return obj.value
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return None
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, Scheme):
        return v.value
    return str(v)


def _write_text(path: str, text: str, quiet: bool, what: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        if not quiet:
            print(f"wrote {what} to {path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _emit(task: str, resolved: dict, result: dict, columns: list[str],
          rows: list[list], fmt: str, path: str, quiet: bool) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# units=omega_m version={__version__}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(c) for c in row])
        _write_text(path, buf.getvalue(), quiet, f"{task} csv")
        return
    doc = {
        "task": task,
        "version": __version__,
        "units": "omega_m",
        "seed": resolved["run"]["seed"],
        "config_hash": _config_hash(task, resolved),
        "config": resolved,
        "result": _jsonable(result),
    }
    text = json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"
    _write_text(path, text, quiet, f"{task} json")


# ---------------------------------------------------------------------------
# task handlers

def _prepare(args, task: str, extra_sections: tuple[str, ...] = ()):
    """Common front half: read, validate, resolve, build parameters."""
    raw = _read_raw_config(args.config)
    _validate_raw(raw)
    kind = "model" if "model" in raw else "fullmodel"
    resolved = {kind: _resolve_section(raw, kind),
                "run": _resolve_section(raw, "run")}
    for name in extra_sections:
        resolved[name] = _resolve_section(raw, name)
    if args.seed is not None:
        resolved["run"]["seed"] = int(args.seed)

    scheme_name = resolved["run"]["scheme"]
    try:
        scheme = Scheme[str(scheme_name).upper()]
    except KeyError:
        raise ConfigError(f"[run] unknown scheme {scheme_name!r}") from None
    resolved["run"]["scheme"] = scheme.value

    full = None
    classical = None
    if kind == "fullmodel":
        full = _build_full(resolved["fullmodel"])
        classical = classical_steady_state(full)
        params = extract_reduced(full, classical)
    else:
        params = _build_reduced(resolved["model"])

    out_section = _resolve_section(raw, "output")
    fmt = args.format or out_section["format"]
    if fmt and fmt not in ("csv", "json"):
        raise ConfigError(f"[output] format must be csv or json, got {fmt!r}")
    path = args.out if args.out is not None else out_section["path"]
    return resolved, params, scheme, fmt, path, full, classical


def cmd_spectrum(args) -> int:
    resolved, params, _, fmt, path, _, _ = _prepare(args, "spectrum",
                                                    ("spectrum",))
    sec = resolved["spectrum"]
    if sec["n_points"] < 1:
        raise ConfigError("[spectrum] n_points must be >= 1")
    if not sec["omega_min"] <= sec["omega_max"]:
        raise ConfigError("[spectrum] needs omega_min <= omega_max")
    schemes = _parse_schemes(sec["schemes"])
    if sec["normalized"] and (params.g_coupling == 0.0 or params.kappa == 0.0):
        raise ConfigError(
            "[spectrum] normalized output needs g_coupling > 0 and kappa > 0")

    grid = np.linspace(sec["omega_min"], sec["omega_max"], sec["n_points"])
    scale = (4.0 * params.g_coupling ** 2 / params.kappa
             if sec["normalized"] else 1.0)
    rows: list[list] = []
    points = []
    infeasible = False
    for scheme in schemes:
        applied = apply_scheme(params, scheme)
        if sec["pin_suppression"] and scheme in (Scheme.ES, Scheme.ESIS):
            sol = solve_suppression(applied)
            if sol.feasible:
                applied = replace(applied, bath=sol.bath())
            else:
                infeasible = True
                msg = (f"suppression infeasible: tanh r_s = "
                       f"{sol.rhs_modulus:.6g} >= 1")
                for w in grid:
                    rows.append([float(w), scheme, math.nan, msg])
                    points.append({"omega_over_omega_m": float(w),
                                   "scheme": scheme.value,
                                   "s_ff_normalized": math.nan, "error": msg})
                continue
        for w, pt in zip(grid, scan_spectrum(applied, scheme,
                                             grid * params.omega_m)):
            rows.append([float(w), scheme, pt.s_ff / scale, pt.error])
            points.append({"omega_over_omega_m": float(w),
                           "scheme": scheme.value,
                           "s_ff_normalized": pt.s_ff / scale,
                           "error": pt.error})
    _emit("spectrum", resolved, {"points": points},
          ["omega_over_omega_m", "scheme", "s_ff_normalized", "error"],
          rows, fmt or "csv", path, args.quiet)
    return 3 if infeasible else 0


def cmd_rates(args) -> int:
    resolved, params, scheme, fmt, path, _, _ = _prepare(args, "rates",
                                                         ("rates",))
    rr = rates(params, scheme, normalized=resolved["rates"]["normalized"])
    result = {"scheme": scheme.value, "gamma_minus": rr.gamma_minus,
              "gamma_plus": rr.gamma_plus, "gamma_opt": rr.gamma_opt,
              "normalized": rr.normalized}
    _emit("rates", resolved, result,
          ["scheme", "gamma_minus", "gamma_plus", "gamma_opt", "normalized"],
          [[scheme, rr.gamma_minus, rr.gamma_plus, rr.gamma_opt,
            rr.normalized]],
          fmt or "json", path, args.quiet)
    return 0


def cmd_suppress(args) -> int:
    resolved, params, scheme, fmt, path, _, _ = _prepare(args, "suppress",
                                                         ("suppress",))
    sol = solve_suppression(apply_scheme(params, scheme))
    result = {"r_s": sol.r_s, "phi_s": sol.phi_s, "feasible": sol.feasible,
              "rhs_modulus": sol.rhs_modulus}
    _emit("suppress", resolved, result,
          ["r_s", "phi_s", "feasible", "rhs_modulus"],
          [[sol.r_s if sol.feasible else None,
            sol.phi_s if sol.feasible else None,
            sol.feasible, sol.rhs_modulus]],
          fmt or "json", path, args.quiet)
    return 0 if sol.feasible else 3


def cmd_steady(args) -> int:
    resolved, params, scheme, fmt, path, _, _ = _prepare(args, "steady",
                                                         ("steady",))
    state = steady_state(apply_scheme(params, scheme))
    result = {"scheme": scheme.value, "n_a": state.n_a, "n_b": state.n_b,
              "max_real_eig": state.max_real_eig, "residual": state.residual,
              "stable": state.stable, "covariance": state.covariance}
    flat = [f"v{i}{j}" for i in range(4) for j in range(4)]
    row = [scheme, state.n_a, state.n_b, state.max_real_eig, state.residual,
           state.stable] + [float(x) for x in state.covariance.ravel()]
    _emit("steady", resolved, result,
          ["scheme", "n_a", "n_b", "max_real_eig", "residual", "stable"]
          + flat,
          [row], fmt or "json", path, args.quiet)
    return 0


def _result_dict(res) -> dict:
    return {
        "scheme": res.scheme.value,
        "n_f_min": res.n_f_min,
        "n_f_rate_equation": res.n_f_rate_equation,
        "g_opt": res.g_opt,
        "eps_opt": res.eps_opt,
        "phi_eps_opt": res.phi_eps_opt,
        "r_s_opt": res.r_s_opt,
        "phi_s_opt": res.phi_s_opt,
        "gamma_minus_normalized": res.gamma_minus_normalized,
        "gamma_plus_normalized": res.gamma_plus_normalized,
        "gamma_opt_normalized": res.gamma_opt_normalized,
        "gamma_tot": res.gamma_tot,
        "evaluations": res.evaluations,
        "converged": res.converged,
    }


def cmd_optimize(args) -> int:
    resolved, params, scheme, fmt, path, _, _ = _prepare(args, "optimize",
                                                         ("optimize",))
    sec = resolved["optimize"]
    objective = sec["objective"].lower()
    if objective not in ("phonons", "rate"):
        raise ConfigError(
            f"[optimize] objective must be phonons or rate, got {objective!r}")
    spec = _search_spec(sec, resolved["run"]["seed"])
    runner = minimize_phonons if objective == "phonons" else maximize_rate
    res = runner(params, scheme, spec)
    result = {"objective": objective, **_result_dict(res)}
    cols = list(result.keys())
    _emit("optimize", resolved, result, cols,
          [[result[c] for c in cols]], fmt or "json", path, args.quiet)
    return 0


_SWEEP_COLUMNS = [
    "kappa_over_4omega", "scheme", "gamma_minus", "gamma_plus", "gamma_opt",
    "n_f_rate_equation", "n_f_lyapunov", "g_opt", "eps_opt", "r_s", "phi_s",
    "gamma_tot", "stable", "evaluations", "error",
]


def _sweep_point(task) -> list[dict]:
    base, ratio, schemes, spec = task
    kappa = 4.0 * ratio * base.omega_m
    delta = math.hypot(base.omega_m, 0.5 * kappa)
    point = replace(base, kappa=kappa, delta=delta)
    out = []
    for scheme in schemes:
        cell = {"kappa_over_4omega": ratio, "scheme": scheme.value}
        try:
            rate_res = maximize_rate(point, scheme, spec)
            phon_res = minimize_phonons(point, scheme, spec)
        except SqzCoolError as exc:
            cell["error"] = f"{type(exc).__name__}: {exc}"
            cell["infeasible"] = isinstance(exc, InfeasibleSuppressionError)
            out.append(cell)
            continue
        cell.update({
            "gamma_minus": rate_res.gamma_minus_normalized,
            "gamma_plus": rate_res.gamma_plus_normalized,
            "gamma_opt": rate_res.gamma_opt_normalized,
            "n_f_rate_equation": phon_res.n_f_rate_equation,
            "n_f_lyapunov": phon_res.n_f_min,
            "g_opt": phon_res.g_opt,
            "eps_opt": phon_res.eps_opt,
            "r_s": phon_res.r_s_opt,
            "phi_s": phon_res.phi_s_opt,
            "gamma_tot": phon_res.gamma_tot,
            "stable": True,
            "evaluations": rate_res.evaluations + phon_res.evaluations,
            "error": None,
        })
        out.append(cell)
    return out


def cmd_sweep(args) -> int:
    resolved, params, _, fmt, path, _, _ = _prepare(args, "sweep", ("sweep",))
    sec = resolved["sweep"]
    if sec["n_points"] < 2:
        raise ConfigError("[sweep] n_points must be >= 2")
    lo, hi = sec["kappa_over_4omega_min"], sec["kappa_over_4omega_max"]
    if not (0.0 < lo < hi):
        raise ConfigError("[sweep] needs 0 < kappa_over_4omega_min < "
                          "kappa_over_4omega_max")
    schemes = _parse_schemes(sec["schemes"])
    spec = _search_spec(sec, resolved["run"]["seed"])
    ratios = np.geomspace(lo, hi, sec["n_points"])
    tasks = [(params, float(r), schemes, spec) for r in ratios]

    workers = args.workers if args.workers else 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_point = list(pool.map(_sweep_point, tasks))
    else:
        per_point = [_sweep_point(t) for t in tasks]

    cells = [cell for point in per_point for cell in point]
    any_infeasible = any(cell.get("infeasible") for cell in cells)
    all_failed = all(cell.get("error") for cell in cells)
    rows = []
    records = []
    for cell in cells:
        row = [cell.get(c) for c in _SWEEP_COLUMNS]
        rows.append(row)
        records.append({c: cell.get(c) for c in _SWEEP_COLUMNS})
    _emit("sweep", resolved, {"rows": records}, _SWEEP_COLUMNS, rows,
          fmt or "csv", path, args.quiet)
    if all_failed:
        return 4
    if any_infeasible:
        return 3
    return 0


def cmd_validate_adiabatic(args) -> int:
    resolved, params, _, fmt, path, full, classical = _prepare(
        args, "validate-adiabatic", ("validate-adiabatic",))
    if full is None or classical is None:
        raise ConfigError("validate-adiabatic requires a [fullmodel] section")
    report = adiabatic_report(full, classical)
    result = {
        "classical": {
            "alpha_s": classical.alpha_s,
            "alpha_p": classical.alpha_p,
            "beta": classical.beta,
            "residual": classical.residual,
            "delta_s_eff": classical.delta_s_eff,
            "delta_p_eff": classical.delta_p_eff,
        },
        "adiabatic": {
            "margin": report.margin,
            "valid": report.valid,
            "lhs": report.lhs,
            "rhs_terms": list(report.rhs_terms),
            "detuning_shift_s": report.detuning_shift_s,
            "dissipation_shift_s": report.dissipation_shift_s,
            "mech_detuning_shift": report.mech_detuning_shift,
        },
        "reduced": {
            "delta": params.delta, "kappa": params.kappa,
            "gamma": params.gamma, "g_coupling": params.g_coupling,
            "omega_m": params.omega_m, "eps_mag": params.eps_mag,
            "eps_phase": params.eps_phase, "n_th": params.n_th,
            "r_s": params.bath.r_s, "phi_s": params.bath.phi_s,
        },
        "frame_rotation": frame_rotation(full, classical),
    }
    row = [report.margin, report.valid, report.lhs, report.rhs_terms[0],
           report.rhs_terms[1], report.detuning_shift_s,
           report.dissipation_shift_s, report.mech_detuning_shift,
           classical.residual]
    _emit("validate-adiabatic", resolved, result,
          ["margin", "valid", "lhs", "rhs_mech", "rhs_parametric",
           "detuning_shift_s", "dissipation_shift_s", "mech_detuning_shift",
           "classical_residual"],
          [row], fmt or "json", path, args.quiet)
    return 0


# ---------------------------------------------------------------------------
# entry points

_HANDLERS = {
    "spectrum": cmd_spectrum,
    "rates": cmd_rates,
    "suppress": cmd_suppress,
    "steady": cmd_steady,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "validate-adiabatic": cmd_validate_adiabatic,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqzcool",
        description="Quantum noise spectra, cooling rates, and optimized "
                    "ground-state cooling for a squeezed optomechanical "
                    "cavity.")
    parser.add_argument("--version", action="version",
                        version=f"sqzcool {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "spectrum": "force noise spectrum over a frequency grid",
        "rates": "cooling and heating rates at +-omega_m",
        "suppress": "input squeezing that nulls the heating rate",
        "steady": "exact Gaussian steady state",
        "optimize": "optimize phonon number or net rate for one scheme",
        "sweep": "optimize every scheme across a kappa/(4 omega_m) grid "
                 "(delta is recomputed as sqrt(omega_m^2 + kappa^2/4) at "
                 "each point)",
        "validate-adiabatic": "classical fixed point and pump-elimination "
                              "validity of the three-mode model",
    }
    for name, desc in descriptions.items():
        p = sub.add_parser(name, help=desc, description=desc)
        p.add_argument("--config", required=True,
                       help="INI config, or a JSON result to rerun")
        p.add_argument("--out", default=None,
                       help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default: csv for spectrum and "
                            "sweep, json otherwise)")
        p.add_argument("--seed", type=int, default=None,
                       help="override [run] seed")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel workers for sweep (default 1)")
        p.add_argument("--quiet", action="store_true",
                       help="suppress the status line on stderr")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except InvalidParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleSuppressionError as exc:
        print(f"infeasible suppression: {exc}", file=sys.stderr)
        return 3
    except (UnstableSystemError, HeatingDivergenceError,
            EmptyFeasibleSetError) as exc:
        print(f"unstable system: {exc}", file=sys.stderr)
        return 4
    except (SingularityError, NumericalError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 5


def console_main() -> None:
    sys.exit(main())
