"""Configuration-driven pipeline: parse a run description, execute the
requested checks, and emit CSV tables plus a structured report.

Reruns with an identical config are byte-identical: no wall-clock data
is written, floats are fixed at 17 significant digits, and files land
via staging plus atomic rename.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Optional, Sequence, Union

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

import numpy as np

from . import __version__
from .errors import ConfigError
from .monotone import MonotoneFn, log_uniform_grid
from .spectrum import (
    FinitePoints,
    LatticeFamily,
    SampledCurve,
    SpectralModel,
    resolvent_envelope,
)
from .increase import (
    PositiveIncreaseCert,
    find_certificate,
    polynomial_floor_check,
    verify_certificate,
)
from . import bounds as _bounds
from .bounds import BoundReport, GrowthCurve, THEOREM_IDS

_MODEL_VARIANTS = ("lattice", "finite", "curve")
_PROFILES = ("power", "log")
_FLOAT_FMT = "%.17g"

_CHECK_PARAM_KEYS = {
    "banach_upper": {"c_grid"},
    "hilbert_upper": set(),
    "lower_41b": {"c"},
    "resolvent_41a": {"c_grid"},
    "sandwich_62": {"epsilon", "curve_scale"},
    "yosida_log": {"omega"},
    "classical_cp": {"alpha"},
    "classical_eberhardt": {"alpha"},
    "holomorphic_classify": set(),
}


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    variant: str
    profile: str = "power"
    alpha: float = 0.5
    scale: float = 1.0
    k_max: float = 1e10
    imag_bound: float = 0.0
    points: tuple[tuple[float, float], ...] = ()


@dataclasses.dataclass(frozen=True)
class GridSpec:
    t_min: float = 1e-5
    t_max: float = 1e-1
    t_per_decade: int = 16
    s_min: float = 10.0
    s_max: float = 1e8
    s_per_decade: int = 16
    eta_min: float = 10.0
    eta_max: float = 1e8
    eta_per_decade: int = 16


@dataclasses.dataclass(frozen=True)
class CheckSpec:
    check_id: str
    params: tuple[tuple[str, object], ...] = ()

    def param(self, key: str, default: object = None) -> object:
        for k, v in self.params:
            if k == key:
                return v
        return default


@dataclasses.dataclass(frozen=True)
class OutputSpec:
    directory: str = "out"


@dataclasses.dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    grids: GridSpec
    checks: tuple[CheckSpec, ...]
    output: OutputSpec


@dataclasses.dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    report: Optional[BoundReport]
    error: Optional[str]


@dataclasses.dataclass(frozen=True)
class RunReport:
    config: RunConfig
    outcomes: tuple[CheckOutcome, ...]
    certificate: Optional[PositiveIncreaseCert]
    certificate_verified: Optional[bool]
    polynomial_floor: Optional[float]
    curve: GrowthCurve
    envelope: MonotoneFn
    truncation: dict
    timings: dict  # in-memory only; never serialized


def _reject_unknown(table: dict, known: set, where: str) -> None:
    for key in table:
        if key not in known:
            raise ConfigError(
                f"unknown key {key!r} in [{where}]; known keys: {sorted(known)}"
            )


def _as_float(table: dict, key: str, where: str, default: float) -> float:
    v = table.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"[{where}] {key} must be a number")
    return float(v)


def _as_int(table: dict, key: str, where: str, default: int) -> int:
    v = table.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"[{where}] {key} must be an integer")
    return int(v)


def _parse_model(table: dict) -> ModelSpec:
    _reject_unknown(
        table,
        {"variant", "profile", "alpha", "scale", "k_max", "imag_bound", "points"},
        "model",
    )
    variant = table.get("variant")
    if variant not in _MODEL_VARIANTS:
        raise ConfigError(
            f"unknown model variant {variant!r}; known variants: {_MODEL_VARIANTS}"
        )
    profile = table.get("profile", "power")
    if profile not in _PROFILES:
        raise ConfigError(f"unknown profile {profile!r}; known profiles: {_PROFILES}")
    pts = table.get("points", [])
    if not isinstance(pts, list) or any(
        not (isinstance(p, list) and len(p) == 2) for p in pts
    ):
        raise ConfigError("[model] points must be a list of [re, im] pairs")
    if variant in ("finite", "curve") and not pts:
        raise ConfigError(f"[model] variant {variant!r} requires points")
    return ModelSpec(
        variant=variant,
        profile=profile,
        alpha=_as_float(table, "alpha", "model", 0.5),
        scale=_as_float(table, "scale", "model", 1.0),
        k_max=_as_float(table, "k_max", "model", 1e10),
        imag_bound=_as_float(table, "imag_bound", "model", 0.0),
        points=tuple((float(p[0]), float(p[1])) for p in pts),
    )


def _parse_grids(table: dict) -> GridSpec:
    known = {
        "t_min", "t_max", "t_per_decade",
        "s_min", "s_max", "s_per_decade",
        "eta_min", "eta_max", "eta_per_decade",
    }
    _reject_unknown(table, known, "grids")
    g = GridSpec(
        t_min=_as_float(table, "t_min", "grids", 1e-5),
        t_max=_as_float(table, "t_max", "grids", 1e-1),
        t_per_decade=_as_int(table, "t_per_decade", "grids", 16),
        s_min=_as_float(table, "s_min", "grids", 10.0),
        s_max=_as_float(table, "s_max", "grids", 1e8),
        s_per_decade=_as_int(table, "s_per_decade", "grids", 16),
        eta_min=_as_float(table, "eta_min", "grids", 10.0),
        eta_max=_as_float(table, "eta_max", "grids", 1e8),
        eta_per_decade=_as_int(table, "eta_per_decade", "grids", 16),
    )
    for lo, hi, per, name in (
        (g.t_min, g.t_max, g.t_per_decade, "t"),
        (g.s_min, g.s_max, g.s_per_decade, "s"),
        (g.eta_min, g.eta_max, g.eta_per_decade, "eta"),
    ):
        if not (0.0 < lo < hi):
            raise ConfigError(
                f"[grids] requires 0 < {name}_min < {name}_max, "
                f"got {name}_min={lo:g}, {name}_max={hi:g}"
            )
        if per < 4:
            raise ConfigError(f"[grids] {name}_per_decade must be >= 4, got {per}")
    return g


def _parse_checks(items: list) -> tuple[CheckSpec, ...]:
    out = []
    for i, tab in enumerate(items):
        where = f"checks[{i}]"
        if not isinstance(tab, dict):
            raise ConfigError(f"[{where}] must be a table")
        cid = tab.get("id")
        if cid not in THEOREM_IDS:
            raise ConfigError(
                f"[{where}] unknown check id {cid!r}; known ids: {list(THEOREM_IDS)}"
            )
        _reject_unknown(tab, {"id"} | _CHECK_PARAM_KEYS[cid], where)
        if cid in ("classical_cp", "classical_eberhardt") and "alpha" not in tab:
            raise ConfigError(f"[{where}] check {cid} requires an alpha parameter")
        params = []
        for key in sorted(_CHECK_PARAM_KEYS[cid]):
            if key in tab:
                val = tab[key]
                if key == "c_grid":
                    if not isinstance(val, list) or not val:
                        raise ConfigError(f"[{where}] c_grid must be a non-empty list")
                    params.append((key, tuple(float(x) for x in val)))
                else:
                    params.append((key, float(val)))
        out.append(CheckSpec(check_id=cid, params=tuple(params)))
    return tuple(out)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a TOML run description (strict keys)."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config document: {exc}") from exc
    _reject_unknown(doc, {"model", "grids", "checks", "output"}, "top level")
    if "model" not in doc:
        raise ConfigError("config requires a [model] table")
    model = _parse_model(doc["model"])
    grids = _parse_grids(doc.get("grids", {}))
    checks_raw = doc.get("checks", [])
    if not isinstance(checks_raw, list):
        raise ConfigError("checks must be an array of tables ([[checks]])")
    checks = _parse_checks(checks_raw)
    out_tab = doc.get("output", {})
    _reject_unknown(out_tab, {"directory"}, "output")
    directory = out_tab.get("directory", "out")
    if not isinstance(directory, str) or not directory:
        raise ConfigError("[output] directory must be a non-empty string")
    return RunConfig(
        model=model, grids=grids, checks=checks, output=OutputSpec(directory)
    )


def echo_config(config: RunConfig) -> str:
    """Serialize a RunConfig back to its TOML form (round-trip stable)."""
    m, g = config.model, config.grids
    lines = [
        "[model]",
        f'variant = "{m.variant}"',
        f'profile = "{m.profile}"',
        f"alpha = {_FLOAT_FMT % m.alpha}",
        f"scale = {_FLOAT_FMT % m.scale}",
        f"k_max = {_FLOAT_FMT % m.k_max}",
        f"imag_bound = {_FLOAT_FMT % m.imag_bound}",
    ]
    if m.points:
        pts = ", ".join(
            f"[{_FLOAT_FMT % re}, {_FLOAT_FMT % im}]" for re, im in m.points
        )
        lines.append(f"points = [{pts}]")
    lines += [
        "",
        "[grids]",
        f"t_min = {_FLOAT_FMT % g.t_min}",
        f"t_max = {_FLOAT_FMT % g.t_max}",
        f"t_per_decade = {g.t_per_decade}",
        f"s_min = {_FLOAT_FMT % g.s_min}",
        f"s_max = {_FLOAT_FMT % g.s_max}",
        f"s_per_decade = {g.s_per_decade}",
        f"eta_min = {_FLOAT_FMT % g.eta_min}",
        f"eta_max = {_FLOAT_FMT % g.eta_max}",
        f"eta_per_decade = {g.eta_per_decade}",
    ]
    for spec in config.checks:
        lines += ["", "[[checks]]", f'id = "{spec.check_id}"']
        for key, val in spec.params:
            if isinstance(val, tuple):
                lines.append(
                    f"{key} = [" + ", ".join(_FLOAT_FMT % x for x in val) + "]"
                )
            else:
                lines.append(f"{key} = {_FLOAT_FMT % val}")
    lines += ["", "[output]", f'directory = "{config.output.directory}"', ""]
    return "\n".join(lines)


def build_model(spec: ModelSpec) -> SpectralModel:
    if spec.variant == "lattice":
        if spec.profile == "power":
            profile = ("power", spec.alpha, spec.scale)
        else:
            profile = ("log", spec.scale)
        return LatticeFamily(
            profile, k_max=spec.k_max, imag_bound_b=spec.imag_bound
        )
    pts = tuple(complex(re, im) for re, im in spec.points)
    if spec.variant == "finite":
        return FinitePoints(pts, imag_bound_b=spec.imag_bound)
    return SampledCurve(pts, imag_bound_b=spec.imag_bound)


def _t_grid(g: GridSpec) -> np.ndarray:
    return log_uniform_grid(g.t_min, g.t_max, g.t_per_decade)[::-1]


def _run_one_check(
    spec: CheckSpec,
    model: SpectralModel,
    curve: GrowthCurve,
    envelope: MonotoneFn,
    grids: GridSpec,
) -> BoundReport:
    cid = spec.check_id
    if cid == "banach_upper":
        return _bounds.check_banach_upper(curve, envelope, spec.param("c_grid"))
    if cid == "hilbert_upper":
        return _bounds.check_hilbert_upper(curve, envelope)
    if cid == "lower_41b":
        return _bounds.check_lower_41b(curve, envelope, float(spec.param("c", 0.5)))
    if cid == "resolvent_41a":
        K = _bounds.k_function(curve)
        eta = log_uniform_grid(grids.eta_min, grids.eta_max, grids.eta_per_decade)
        return _bounds.check_resolvent_41a(model, K, spec.param("c_grid"), eta)
    if cid == "sandwich_62":
        eps = float(spec.param("epsilon", 0.1))
        scale = float(spec.param("curve_scale", 1.0))
        used = curve
        if scale != 1.0:
            # Documented fault-injection hook: rescales the curve to
            # exercise the two-sided band's failure path.
            used = GrowthCurve(
                t_grid=curve.t_grid,
                values=curve.values * scale,
                model_ref=curve.model_ref + f"*{scale:g}",
                upper_bounds=curve.upper_bounds * scale,
                saturated=curve.saturated,
            )
        return _bounds.check_sandwich_62(used, envelope, eps)
    if cid == "yosida_log":
        eta = log_uniform_grid(
            max(grids.eta_min, 10.0), grids.eta_max, grids.eta_per_decade
        )
        return _bounds.check_yosida_log(model, float(spec.param("omega", 0.0)), eta)
    if cid in ("classical_cp", "classical_eberhardt"):
        alpha = spec.param("alpha")
        if alpha is None:
            raise ConfigError(f"check {cid} requires an alpha parameter")
        return _bounds.check_classical(curve, float(alpha), cid)
    if cid == "holomorphic_classify":
        return _bounds.classify_regularity(curve, model)
    raise ConfigError(f"unknown check id {cid!r}")  # unreachable after parse


def run_pipeline(config: RunConfig, seed: int = 0) -> RunReport:
    """Build the model once, share curve and envelope across checks,
    and record per-check failures without aborting the run."""
    timings: dict = {}
    t0 = time.perf_counter()
    model = build_model(config.model)
    s_grid = log_uniform_grid(
        config.grids.s_min, config.grids.s_max, config.grids.s_per_decade
    )
    envelope = resolvent_envelope(model, s_grid)
    curve = _bounds.growth_curve(model, _t_grid(config.grids))
    timings["setup_s"] = time.perf_counter() - t0

    cert = None
    verified = None
    floor = None
    try:
        cert = find_certificate(envelope)
    except ConfigError:
        pass
    if cert is not None:
        verified = verify_certificate(envelope, cert, seed=seed).passed
        floor = polynomial_floor_check(envelope, cert)

    outcomes = []
    for spec in config.checks:
        t1 = time.perf_counter()
        try:
            rep = _run_one_check(spec, model, curve, envelope, config.grids)
            outcomes.append(CheckOutcome(spec.check_id, rep, None))
        except Exception as exc:
            outcomes.append(
                CheckOutcome(spec.check_id, None, f"{type(exc).__name__}: {exc}")
            )
        timings[spec.check_id + "_s"] = time.perf_counter() - t1

    truncation = {
        "curve_saturated_samples": sum(curve.saturated),
        "curve_samples": len(curve.saturated),
        "max_upper_bound_gap": float(
            np.max(curve.upper_bounds / curve.values) - 1.0
        ),
    }
    return RunReport(
        config=config,
        outcomes=tuple(outcomes),
        certificate=cert,
        certificate_verified=verified,
        polynomial_floor=floor,
        curve=curve,
        envelope=envelope,
        truncation=truncation,
        timings=timings,
    )


def _fmt(x: float) -> str:
    return _FLOAT_FMT % x


def _csv_lines(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    out = [",".join(header)]
    for row in rows:
        out.append(
            ",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(out) + "\n"


def _config_dict(config: RunConfig) -> dict:
    return {
        "model": dataclasses.asdict(config.model),
        "grids": dataclasses.asdict(config.grids),
        "checks": [
            {"id": c.check_id, **{k: list(v) if isinstance(v, tuple) else v for k, v in c.params}}
            for c in config.checks
        ],
        "output": dataclasses.asdict(config.output),
    }


def emit_outputs(report: RunReport, config: RunConfig) -> list[Path]:
    """Write CSV tables, the JSON report, and the text summary.

    All content is staged in a scratch directory and moved into place
    atomically; nothing lands on a failed run.
    """
    out_dir = Path(config.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not os.access(out_dir, os.W_OK):
        raise OSError(f"output directory {out_dir} is not writable")
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_dir))
    files: dict[str, str] = {}

    curve = report.curve
    files["growth.csv"] = _csv_lines(
        ["t", "derivative_norm", "upper_bound", "saturated"],
        [
            (float(t), float(v), float(u), int(s))
            for t, v, u, s in zip(
                curve.t_grid, curve.values, curve.upper_bounds, curve.saturated
            )
        ],
    )
    env = report.envelope
    files["envelope.csv"] = _csv_lines(
        ["s", "envelope"],
        [(float(s), float(v)) for s, v in zip(env.grid, env.values)],
    )

    curve_by_t = {float(t): float(v) for t, v in zip(curve.t_grid, curve.values)}
    for oc in report.outcomes:
        if oc.report is None:
            continue
        rows = []
        four_col = all(x in curve_by_t for x, _ in oc.report.ratio_series)
        for x, r in oc.report.ratio_series:
            if four_col and math.isfinite(r) and r != 0.0:
                lhs = curve_by_t[x]
                rows.append((float(x), lhs, lhs / r, float(r)))
            else:
                rows.append((float(x), float(r)))
        header = (
            ["t", "lhs", "envelope", "ratio"] if four_col else ["x", "ratio"]
        )
        files[f"check_{oc.check_id}.csv"] = _csv_lines(header, rows)

    payload = {
        "version": __version__,
        "config": _config_dict(config),
        "model_ref": curve.model_ref,
        "certificate": (
            None
            if report.certificate is None
            else dataclasses.asdict(report.certificate)
        ),
        "certificate_verified": report.certificate_verified,
        "polynomial_floor": report.polynomial_floor,
        "truncation": report.truncation,
        "checks": [
            {
                "id": oc.check_id,
                "error": oc.error,
                **(
                    {}
                    if oc.report is None
                    else {
                        "verdict": oc.report.verdict,
                        "fitted_c": oc.report.fitted_c,
                        "fitted_C": oc.report.fitted_C,
                        "notes": oc.report.notes,
                        "ratio_series": [
                            [x, r] for x, r in oc.report.ratio_series
                        ],
                    }
                ),
            }
            for oc in report.outcomes
        ],
    }
    files["report.json"] = json.dumps(payload, indent=2, sort_keys=True) + "\n"

    width = max([len(o.check_id) for o in report.outcomes] + [8])
    lines = [
        f"model: {curve.model_ref}",
        f"t window: [{_fmt(float(curve.t_grid[-1]))}, {_fmt(float(curve.t_grid[0]))}]"
        f"  s window: [{_fmt(env.domain_start)}, {_fmt(env.domain_end)}]",
        "",
        f"{'check'.ljust(width)}  verdict       fitted_C",
    ]
    for oc in report.outcomes:
        if oc.report is None:
            lines.append(f"{oc.check_id.ljust(width)}  error         {oc.error}")
        else:
            lines.append(
                f"{oc.check_id.ljust(width)}  {oc.report.verdict.ljust(12)}  "
                f"{_fmt(oc.report.fitted_C)}"
            )
    files["summary.txt"] = "\n".join(lines) + "\n"

    written: list[Path] = []
    try:
        for name, content in files.items():
            tmp = staging / name
            with open(tmp, "w", encoding="utf-8", newline="") as fh:
                fh.write(content)
        for name in files:
            target = out_dir / name
            os.replace(staging / name, target)
            written.append(target)
    finally:
        for leftover in staging.iterdir() if staging.exists() else []:
            leftover.unlink()
        if staging.exists():
            staging.rmdir()
    return written


def _exit_code(report: RunReport) -> int:
    for oc in report.outcomes:
        if oc.report is None or oc.report.verdict != "pass":
            return 1
    return 0


def _emit_echo_only(config: RunConfig) -> None:
    out_dir = Path(config.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {"version": __version__, "config": _config_dict(config), "checks": []}
    (out_dir / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out_dir / "summary.txt").write_text(
        "no checks requested; config echoed to report.json\n", encoding="utf-8"
    )


def _cmd_check(config: RunConfig, seed: int) -> int:
    if not config.checks:
        _emit_echo_only(config)
        return 0
    report = run_pipeline(config, seed=seed)
    emit_outputs(report, config)
    return _exit_code(report)


def _cmd_curve(config: RunConfig, seed: int) -> int:
    stripped = dataclasses.replace(config, checks=())
    report = run_pipeline(stripped, seed=seed)
    emit_outputs(report, stripped)
    return 0


def _cmd_certify(config: RunConfig, seed: int) -> int:
    model = build_model(config.model)
    s_grid = log_uniform_grid(
        config.grids.s_min, config.grids.s_max, config.grids.s_per_decade
    )
    envelope = resolvent_envelope(model, s_grid)
    cert = find_certificate(envelope)
    out_dir = Path(config.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload: dict = {"model_ref": _bounds.model_ref(model), "certificate": None}
    code = 1
    if cert is not None:
        ver = verify_certificate(envelope, cert, seed=seed)
        payload["certificate"] = dataclasses.asdict(cert)
        payload["verified"] = ver.passed
        payload["worst_ratio"] = ver.worst_ratio
        payload["polynomial_floor"] = polynomial_floor_check(envelope, cert)
        code = 0 if ver.passed else 1
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    (out_dir / "certificate.json").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return code


def _cmd_classify(config: RunConfig, seed: int) -> int:
    classify_cfg = dataclasses.replace(
        config, checks=(CheckSpec("holomorphic_classify"),)
    )
    report = run_pipeline(classify_cfg, seed=seed)
    emit_outputs(report, classify_cfg)
    oc = report.outcomes[0]
    if oc.report is not None:
        sys.stdout.write(oc.report.notes.split(";")[0] + "\n")
    return _exit_code(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="specgrowth",
        description="spectral growth-rate checks for differentiable semigroups",
    )
    parser.add_argument("verb", choices=["check", "curve", "certify", "classify"])
    parser.add_argument("--config", required=True, help="path to a TOML run config")
    parser.add_argument("--out", default=None, help="override the output directory")
    parser.add_argument("--seed", type=int, default=0, help="randomized probe seed")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for interface compatibility; evaluation is "
        "deterministic and vectorized, so the value does not change results",
    )
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        sys.stderr.write(f"cannot read config: {exc}\n")
        return 2
    try:
        config = parse_config(text)
        if args.out is not None:
            config = dataclasses.replace(config, output=OutputSpec(args.out))
        handler = {
            "check": _cmd_check,
            "curve": _cmd_curve,
            "certify": _cmd_certify,
            "classify": _cmd_classify,
        }[args.verb]
        return handler(config, args.seed)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
