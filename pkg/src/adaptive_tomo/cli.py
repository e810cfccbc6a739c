"""Command-line front end.

Commands
--------
run          one campaign: CSV of per-N means, power-law fit JSON, provenance
sweep-alpha  campaigns over a grid of preliminary-budget fractions
sweep-noise  noise-floor sweep over error magnitudes, slope fit per protocol
fit          re-fit a previously emitted campaign CSV
fixtures     print the named reference states and their sanity-check values

Every option can also be given in a flat ``key = value`` config file
(``--config``); explicit flags override file values.  Numeric grids accept
either comma lists (``100,1000,10000``) or ``start:stop:count`` for
log-spaced points; exponents may be fractional (``1e-1.5``).

Outputs are written atomically into the output directory (``--out``, or the
``ADAPTIVE_TOMO_OUT`` environment variable, or the working directory).  Exit
status is 0 on success, 1 on runtime failure, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import TomographyError, UsageError
from .fixtures import NAMED_STATES, named_state
from .harness import (
    CampaignResult,
    CampaignSpec,
    NoiseFloorResult,
    ScalingFit,
    fit_power_law,
    noise_floor_sweep,
    run_campaign,
)
from .measurement import FixedError, NoError, PerExperimentError, PerSettingError
from .protocols import (
    Adaptive,
    AdaptivePow,
    KnownBasis,
    ProtocolSpec,
    ReducedAdaptive,
    Static,
    protocol_name,
)
from .states import density_to_bloch, fidelity, purity

OUTPUT_DIR_ENV = "ADAPTIVE_TOMO_OUT"

_DEFAULT_AXIS = (2.0 / math.sqrt(5.0), 1.0 / math.sqrt(5.0), 0.0)

PROTOCOL_NAMES = ("static", "adaptive", "adaptive-pow", "reduced-adaptive", "known-basis")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: defaults, then config file, then flags."""

    command: str
    protocol: str = "static"
    alpha: float = 0.5
    exponent: float = 2.0 / 3.0
    state: str = "eq7"
    n_grid: tuple[int, ...] = (100, 188, 355, 669, 1262, 2378, 4481, 8446, 15918, 30000)
    reps: int = 150
    model: str = "none"
    e_value: float = 0.0
    error_axis: tuple[float, float, float] = _DEFAULT_AXIS
    seed: int = 0
    out_dir: str = ""
    threads: int = 1
    alphas: tuple[float, ...] = (0.1, 0.3, 0.5, 0.7, 0.9)
    protocols: tuple[str, ...] = ("static", "adaptive")
    e_grid: tuple[float, ...] = ()
    n_start: int = 1000
    n_cap: int = 20_000_000
    csv_path: str = ""
    gnuplot: bool = False


_FLOAT_WITH_EXP = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)[eE]([+-]?\d+\.?\d*)$")


def parse_float(text: str) -> float:
    """Float parser that also accepts fractional exponents like 1e-1.5."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _FLOAT_WITH_EXP.match(text)
    if not m:
        raise UsageError(f"cannot parse number {text!r}")
    mantissa = float(m.group(1)) if m.group(1) not in ("", "+", "-") else float(m.group(1) + "1")
    return mantissa * 10.0 ** float(m.group(2))


def parse_float_grid(text: str) -> tuple[float, ...]:
    """Comma list, or start:stop:count log-spaced."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid {text!r} must be start:stop:count")
        start, stop = parse_float(parts[0]), parse_float(parts[1])
        try:
            count = int(parts[2])
        except ValueError:
            raise UsageError(f"grid count {parts[2]!r} is not an integer") from None
        if start <= 0 or stop <= start or count < 2:
            raise UsageError(f"grid {text!r} needs 0 < start < stop and count >= 2")
        return tuple(float(x) for x in np.geomspace(start, stop, count))
    return tuple(parse_float(part) for part in text.split(","))


def parse_n_grid(text: str) -> tuple[int, ...]:
    values = [int(round(x)) for x in parse_float_grid(text)]
    out: list[int] = []
    for v in values:
        if not out or v > out[-1]:
            out.append(v)
        elif v < out[-1]:
            raise UsageError(f"sample-size grid {text!r} is not increasing")
    return tuple(out)


def parse_axis(text: str) -> tuple[float, float, float]:
    parts = [parse_float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"axis {text!r} must be three comma-separated numbers")
    norm = math.sqrt(sum(p * p for p in parts))
    if norm == 0:
        raise UsageError("axis must be nonzero")
    return (parts[0] / norm, parts[1] / norm, parts[2] / norm)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptive-tomo",
        description="Simulate static and adaptive single-qubit tomography.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", dest="out_dir", help="output directory")
        p.add_argument("--seed", type=int, help="master seed (default 0)")
        p.add_argument("--reps", type=int, help="repetitions per grid point (default 150)")
        p.add_argument("--threads", type=int, help="worker threads (default 1)")
        p.add_argument("--state", help="named state (eq7, eq10) or Bloch triple x,y,z")
        p.add_argument("--gnuplot", action="store_const", const=True,
                       help="also emit a gnuplot script for the CSV")

    p_run = sub.add_parser("run", help="run one campaign")
    common(p_run)
    p_run.add_argument("--protocol", help="|".join(PROTOCOL_NAMES))
    p_run.add_argument("--alpha", help="preliminary fraction for adaptive/reduced")
    p_run.add_argument("--exponent", help="preliminary exponent for adaptive-pow")
    p_run.add_argument("--n", help="single sample size")
    p_run.add_argument("--n-grid", dest="n_grid", help="comma list or start:stop:count")
    p_run.add_argument("--model", help="error model: none, 1, 2 or 3")
    p_run.add_argument("--e", dest="e_value", help="error magnitude in radians")
    p_run.add_argument("--error-axis", dest="error_axis",
                       help="fixed rotation axis for model 3 (x,y,z)")

    p_alpha = sub.add_parser("sweep-alpha", help="sweep the preliminary fraction")
    common(p_alpha)
    p_alpha.add_argument("--alpha-grid", dest="alphas", help="comma list of fractions")
    p_alpha.add_argument("--n-grid", dest="n_grid", help="comma list or start:stop:count")

    p_noise = sub.add_parser("sweep-noise", help="noise-floor sweep over E")
    common(p_noise)
    p_noise.add_argument("--model", help="error model: 1, 2 or 3")
    p_noise.add_argument("--protocols", help="comma list of protocol names")
    p_noise.add_argument("--e-grid", dest="e_grid", help="comma list or start:stop:count")
    p_noise.add_argument("--error-axis", dest="error_axis",
                         help="fixed rotation axis for model 3 (x,y,z)")
    p_noise.add_argument("--alpha", help="preliminary fraction for adaptive/reduced")
    p_noise.add_argument("--n-start", dest="n_start", help="floor-search ladder start")
    p_noise.add_argument("--n-cap", dest="n_cap", help="floor-search sample cap")

    p_fit = sub.add_parser("fit", help="re-fit an emitted campaign CSV")
    common(p_fit)
    p_fit.add_argument("--csv", dest="csv_path", help="campaign CSV to fit")

    p_fixtures = sub.add_parser("fixtures", help="print the named reference states")
    common(p_fixtures)

    return parser


_KEY_PARSERS = {
    "protocol": str,
    "alpha": parse_float,
    "exponent": parse_float,
    "state": str,
    "n": str,
    "n_grid": str,
    "reps": int,
    "model": str,
    "e_value": parse_float,
    "error_axis": parse_axis,
    "seed": int,
    "out_dir": str,
    "threads": int,
    "alphas": str,
    "protocols": str,
    "e_grid": str,
    "n_start": int,
    "n_cap": int,
    "csv_path": str,
    "gnuplot": lambda s: s.strip().lower() in ("1", "true", "yes"),
}

_FILE_KEY_ALIASES = {
    "n-grid": "n_grid",
    "e": "e_value",
    "error-axis": "error_axis",
    "alpha-grid": "alphas",
    "e-grid": "e_grid",
    "n-start": "n_start",
    "n-cap": "n_cap",
    "out": "out_dir",
    "csv": "csv_path",
}


def _read_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise UsageError(f"config file {path!r} not found")
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = _FILE_KEY_ALIASES.get(key, key.replace("-", "_"))
            if key not in _KEY_PARSERS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _KEY_PARSERS[key](value)
            except (UsageError, ValueError) as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def parse_config(argv: Sequence[str]) -> RunConfig:
    """Resolve argv (and any --config file) into a validated RunConfig."""
    ns = _build_parser().parse_args(argv)
    given = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}

    from_file: dict = _read_config_file(ns.config) if ns.config else {}
    merged: dict = {**from_file, **given}
    command = merged.pop("command")

    # A single sample size and a grid are the same option; within each source
    # the explicit single value wins, and flags beat the file as usual.
    merged.pop("n", None)
    for source in (from_file, given):
        if "n" in source:
            merged["n_grid"] = str(source["n"])
        elif "n_grid" in source:
            merged["n_grid"] = source["n_grid"]

    # Normalise string-typed flag values.
    for key in ("alpha", "exponent", "e_value"):
        if isinstance(merged.get(key), str):
            merged[key] = parse_float(merged[key])
    for key in ("reps", "seed", "threads", "n_start", "n_cap"):
        if isinstance(merged.get(key), str):
            try:
                merged[key] = int(merged[key])
            except ValueError:
                raise UsageError(f"{key} must be an integer, got {merged[key]!r}") from None
    if isinstance(merged.get("error_axis"), str):
        merged["error_axis"] = parse_axis(merged["error_axis"])

    if isinstance(merged.get("n_grid"), str):
        merged["n_grid"] = parse_n_grid(merged["n_grid"])

    if isinstance(merged.get("alphas"), str):
        merged["alphas"] = parse_float_grid(merged["alphas"])
    if isinstance(merged.get("e_grid"), str):
        merged["e_grid"] = parse_float_grid(merged["e_grid"])
    if isinstance(merged.get("protocols"), str):
        merged["protocols"] = tuple(
            name.strip() for name in merged["protocols"].split(",") if name.strip()
        )

    if not merged.get("out_dir"):
        merged["out_dir"] = os.environ.get(OUTPUT_DIR_ENV, ".")

    known = {f.name for f in fields(RunConfig)}
    unknown = set(merged) - known
    if unknown:
        raise UsageError(f"unknown option(s): {sorted(unknown)}")
    config = RunConfig(command=command, **merged)
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    if config.protocol not in PROTOCOL_NAMES:
        raise UsageError(
            f"protocol must be one of {', '.join(PROTOCOL_NAMES)}, got {config.protocol!r}"
        )
    if not 0.0 < config.alpha < 1.0:
        raise UsageError(f"alpha must be in (0, 1), got {config.alpha}")
    if not 0.0 < config.exponent < 1.0:
        raise UsageError(f"exponent must be in (0, 1), got {config.exponent}")
    if config.reps < 2:
        raise UsageError(f"reps must be >= 2, got {config.reps}")
    if config.threads < 1:
        raise UsageError(f"threads must be >= 1, got {config.threads}")
    if config.model not in ("none", "1", "2", "3"):
        raise UsageError(f"model must be none, 1, 2 or 3, got {config.model!r}")
    if config.e_value < 0:
        raise UsageError(f"error magnitude must be >= 0, got {config.e_value}")
    if any(n < 6 for n in config.n_grid):
        raise UsageError(f"sample sizes must be >= 6, got {config.n_grid}")
    if any(not 0.0 < a < 1.0 for a in config.alphas):
        raise UsageError(f"alpha grid values must be in (0, 1), got {config.alphas}")
    for name in config.protocols:
        if name not in PROTOCOL_NAMES:
            raise UsageError(f"unknown protocol {name!r} in --protocols")
    if config.e_grid and any(e <= 0 for e in config.e_grid):
        raise UsageError("e-grid values must be positive")
    if config.e_grid and any(
        b <= a for a, b in zip(config.e_grid, config.e_grid[1:])
    ):
        raise UsageError("e-grid must be strictly increasing")
    if config.n_start < 6:
        raise UsageError(f"n-start must be >= 6, got {config.n_start}")
    if config.n_cap < config.n_start:
        raise UsageError("n-cap must be >= n-start")
    _resolve_state(config.state)
    if config.command == "fit" and not config.csv_path:
        raise UsageError("fit requires --csv")


def _resolve_state(text: str) -> tuple[float, float, float]:
    if text in NAMED_STATES:
        return NAMED_STATES[text]
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(
            f"state {text!r} is neither a named state {sorted(NAMED_STATES)} "
            f"nor a Bloch triple x,y,z"
        )
    bloch = tuple(parse_float(p) for p in parts)
    if math.sqrt(sum(x * x for x in bloch)) > 1.0 + 1e-9:
        raise UsageError(f"Bloch vector {bloch} lies outside the unit ball")
    return bloch


def _resolve_protocol(config: RunConfig, name: Optional[str] = None) -> ProtocolSpec:
    name = name if name is not None else config.protocol
    if name == "static":
        return Static()
    if name == "adaptive":
        return Adaptive(config.alpha)
    if name == "adaptive-pow":
        return AdaptivePow(config.exponent)
    if name == "reduced-adaptive":
        return ReducedAdaptive(config.alpha)
    if name == "known-basis":
        return KnownBasis()
    raise UsageError(f"unknown protocol {name!r}")


def _resolve_error_model(config: RunConfig, e_value: Optional[float] = None):
    e = config.e_value if e_value is None else e_value
    if config.model == "none" or e == 0.0:
        return NoError()
    if config.model == "1":
        return PerSettingError(e)
    if config.model == "2":
        return PerExperimentError(e)
    return FixedError(e, config.error_axis)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=False)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _campaign_csv(results: Sequence[CampaignResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["protocol", "N", "reps", "mean_infidelity", "stderr", "seed"])
    for result in results:
        name = protocol_name(result.spec.protocol)
        for row in result.rows:
            writer.writerow(
                [name, row.n, row.reps, _fmt(row.mean_infidelity), _fmt(row.stderr),
                 result.seed]
            )
    return buf.getvalue()


def _fit_entry(name: str, fit: ScalingFit) -> dict:
    return {
        "protocol": name,
        "beta": fit.beta,
        "p": fit.p,
        "sigma_p": fit.sigma_p,
        "sigma_beta": fit.sigma_beta,
        "fit_range": [fit.fit_range[0], fit.fit_range[1]],
    }


def _fits_from_rows(rows: Sequence[tuple[str, int, float]]) -> list[dict]:
    order: list[str] = []
    grouped: dict[str, list[tuple[int, float]]] = {}
    for name, n, mean in rows:
        if name not in grouped:
            grouped[name] = []
            order.append(name)
        grouped[name].append((n, mean))
    return [_fit_entry(name, fit_power_law(grouped[name])) for name in order]


def _provenance(config: RunConfig) -> str:
    return json.dumps(
        {"artifact_version": __version__, "config": asdict(config)}, indent=2
    ) + "\n"


def config_from_provenance(data: dict) -> RunConfig:
    """Rebuild the resolved RunConfig from a provenance JSON payload."""
    raw = dict(data["config"])
    for key in ("n_grid", "alphas", "protocols", "e_grid", "error_axis"):
        if key in raw and isinstance(raw[key], list):
            raw[key] = tuple(raw[key])
    return RunConfig(**raw)


_GNUPLOT = """set logscale xy
set xlabel 'N'
set ylabel 'mean infidelity'
set datafile separator ','
plot 'campaign.csv' every ::1 using 2:4 with linespoints title 'campaign'
"""


def execute(config: RunConfig) -> int:
    """Run the resolved command, write its files, and return an exit status."""
    os.makedirs(config.out_dir, exist_ok=True)

    if config.command == "fixtures":
        eq7 = named_state("eq7")
        eq10 = named_state("eq10")
        for name, rho in (("eq7", eq7), ("eq10", eq10)):
            bloch = density_to_bloch(rho)
            print(
                f"{name}: bloch = ({bloch[0]:.6f}, {bloch[1]:.6f}, {bloch[2]:.6f}), "
                f"purity = {purity(rho):.6f}"
            )
        print(f"purity(eq10) = {purity(eq10):.4f}")
        print(f"F(eq10, eq7) = {fidelity(eq10, eq7):.4f}")
        return 0

    if config.command == "fit":
        with open(config.csv_path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            required = {"protocol", "N", "mean_infidelity"}
            if reader.fieldnames is None or not required <= set(reader.fieldnames):
                raise UsageError(
                    f"{config.csv_path} is not a campaign CSV "
                    f"(needs columns {sorted(required)})"
                )
            rows = [
                (row["protocol"], int(row["N"]), float(row["mean_infidelity"]))
                for row in reader
            ]
        payload = {"fits": _fits_from_rows(rows)}
        _atomic_write(
            os.path.join(config.out_dir, "fit.json"),
            json.dumps(payload, indent=2) + "\n",
        )
        _atomic_write(os.path.join(config.out_dir, "provenance.json"), _provenance(config))
        print(f"fitted {len(payload['fits'])} protocol(s) from {config.csv_path}")
        return 0

    state_bloch = _resolve_state(config.state)

    if config.command == "run":
        spec = CampaignSpec(
            protocol=_resolve_protocol(config),
            state_bloch=state_bloch,
            n_grid=config.n_grid,
            reps=config.reps,
            error_model=_resolve_error_model(config),
            seed=config.seed,
        )
        result = run_campaign(spec, threads=config.threads)
        name = protocol_name(spec.protocol)
        for row in result.rows:
            print(
                f"{name} N={row.n} reps={row.reps} "
                f"mean={row.mean_infidelity:.6e} stderr={row.stderr:.6e}"
            )
        _atomic_write(os.path.join(config.out_dir, "campaign.csv"), _campaign_csv([result]))
        fit_rows = [(name, row.n, row.mean_infidelity) for row in result.rows]
        fits = _fits_from_rows(fit_rows) if len(result.rows) >= 3 else []
        _atomic_write(
            os.path.join(config.out_dir, "fit.json"),
            json.dumps({"fits": fits}, indent=2) + "\n",
        )
        _atomic_write(os.path.join(config.out_dir, "provenance.json"), _provenance(config))
        if config.gnuplot:
            _atomic_write(os.path.join(config.out_dir, "campaign.gp"), _GNUPLOT)
        return 0

    if config.command == "sweep-alpha":
        base = CampaignSpec(
            protocol=Adaptive(0.5),
            state_bloch=state_bloch,
            n_grid=config.n_grid,
            reps=config.reps,
            error_model=_resolve_error_model(config),
            seed=config.seed,
        )
        results = []
        entries = []
        for alpha in config.alphas:
            spec = CampaignSpec(
                protocol=Adaptive(alpha),
                state_bloch=state_bloch,
                n_grid=config.n_grid,
                reps=config.reps,
                error_model=base.error_model,
                seed=config.seed,
            )
            result = run_campaign(spec, threads=config.threads)
            results.append(result)
            fit = fit_power_law([(r.n, r.mean_infidelity) for r in result.rows])
            entry = _fit_entry(protocol_name(spec.protocol), fit)
            entry["alpha"] = alpha
            entries.append(entry)
            print(f"alpha={alpha} beta={fit.beta:.6f} p={fit.p:+.4f}")
        _atomic_write(os.path.join(config.out_dir, "campaign.csv"), _campaign_csv(results))
        _atomic_write(
            os.path.join(config.out_dir, "fit.json"),
            json.dumps({"alpha_sweep": entries}, indent=2) + "\n",
        )
        _atomic_write(os.path.join(config.out_dir, "provenance.json"), _provenance(config))
        return 0

    if config.command == "sweep-noise":
        if config.model == "none":
            raise UsageError("sweep-noise requires --model 1, 2 or 3")
        e_grid = config.e_grid or tuple(float(x) for x in np.geomspace(1e-3, 3e-2, 5))
        results = noise_floor_sweep(
            lambda e: _resolve_error_model(config, e),
            e_grid,
            [_resolve_protocol(config, name) for name in config.protocols],
            state_bloch,
            reps=config.reps,
            seed=config.seed,
            n_start=config.n_start,
            n_cap=config.n_cap,
            threads=config.threads,
        )
        _atomic_write(os.path.join(config.out_dir, "floors.csv"), _floors_csv(results, config))
        entries = []
        for result in results:
            name = protocol_name(result.protocol)
            entry: dict = {"protocol": name}
            if result.slope_fit is not None:
                entry.update(
                    slope=result.slope_fit.p,
                    sigma_slope=result.slope_fit.sigma_p,
                    beta=result.slope_fit.beta,
                    fit_range=list(result.slope_fit.fit_range),
                )
            else:
                entry["slope"] = None
            entry["floors"] = [
                {
                    "e": pt.error_magnitude,
                    "converged": pt.converged,
                    "floor_infidelity": pt.floor_infidelity,
                    "n_at_floor": pt.n_at_floor,
                }
                for pt in result.points
            ]
            entries.append(entry)
            slope = "n/a" if result.slope_fit is None else f"{result.slope_fit.p:.3f}"
            print(f"{name}: floor slope vs E = {slope}")
        _atomic_write(
            os.path.join(config.out_dir, "fit.json"),
            json.dumps({"noise_floors": entries}, indent=2) + "\n",
        )
        _atomic_write(os.path.join(config.out_dir, "provenance.json"), _provenance(config))
        return 0

    raise UsageError(f"unknown command {config.command!r}")


def _floors_csv(results: Sequence[NoiseFloorResult], config: RunConfig) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["protocol", "E", "converged", "floor_infidelity", "n_at_floor", "stderr", "seed"]
    )
    for result in results:
        name = protocol_name(result.protocol)
        for pt in result.points:
            writer.writerow(
                [
                    name,
                    _fmt(pt.error_magnitude),
                    int(pt.converged),
                    "" if pt.floor_infidelity is None else _fmt(pt.floor_infidelity),
                    "" if pt.n_at_floor is None else pt.n_at_floor,
                    "" if pt.stderr is None else _fmt(pt.stderr),
                    config.seed,
                ]
            )
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return execute(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TomographyError, ValueError) as exc:
        print(
            f"error: {type(exc).__name__}: {exc} "
            f"(protocol={config.protocol}, n_grid={config.n_grid}, "
            f"model={config.model}, E={config.e_value})",
            file=sys.stderr,
        )
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
