"""Command-line surface: matrices, turbulence sweeps, robust-mode ranking
and the validation suite, with CSV/JSON output.

Exit codes: 0 success, 1 validation failure, 2 invalid parameters,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import reference, serialization, validate
from .channel import (
    DEFAULT_STRENGTH_COEFF,
    DEFAULT_W_VARIANT,
    OpticalConfig,
    TurbulenceSpec,
    derive_constants,
)
from .engine import (
    DEFAULT_ORDERING,
    ModeIndex,
    ModePair,
    NORMALIZATION_CALIBRATED,
    NORMALIZATION_RAW,
    expand_modes,
    joint_probability,
    parse_mode,
    probability_matrix,
    selection_rule_allowed,
)
from .errors import DomainError, NumericalError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARAMS = 2
EXIT_NUMERICAL = 3

DEFAULT_GRID = validate.SWEEP_GRID


@dataclass
class RunConfig:
    """Resolved run parameters shared by the subcommands."""

    wavelength: float = reference.REFERENCE_WAVELENGTH
    distance: float = reference.REFERENCE_DISTANCE
    pump_waist: float = reference.REFERENCE_W0 / math.sqrt(2.0)
    cn2: float | None = None
    rytov: float | None = None
    modes: tuple[ModeIndex, ...] = DEFAULT_ORDERING
    normalization: str = NORMALIZATION_CALIBRATED
    fmt: str | None = None
    output: str | None = None

    def optical(self) -> OpticalConfig:
        return OpticalConfig(self.wavelength, self.distance, self.pump_waist)

    def turbulence(self) -> TurbulenceSpec:
        if self.cn2 is not None and self.rytov is not None:
            raise DomainError("give either --cn2 or --rytov, not both")
        if self.cn2 is not None:
            return TurbulenceSpec.from_cn2(self.cn2)
        if self.rytov is not None:
            return TurbulenceSpec.from_rytov(self.rytov)
        return TurbulenceSpec.vacuum()


@dataclass
class SweepResult:
    grid: list[float]
    series: dict[str, list[float]]
    params: dict = field(default_factory=dict)


def _read_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise DomainError(f"config line is not key=value: {raw!r}")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _parse_modes_arg(tokens: str) -> tuple[ModeIndex, ...]:
    modes = tuple(parse_mode(tok) for tok in tokens.replace(",", " ").split())
    if not modes:
        raise DomainError("mode list is empty")
    return modes


def _parse_pair(token: str) -> ModePair:
    parts = token.split(":")
    if len(parts) != 2:
        raise DomainError(f"pair token {token!r} must look like 'ss:ii', e.g. 00:01")
    return ModePair(parse_mode(parts[0]), parse_mode(parts[1]))


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    file_vals = _read_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(key: str, cast):
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            return flag_val
        if key in file_vals:
            return cast(file_vals[key])
        return None

    def pick_group(*keys):
        # a flag from a mutually exclusive group overrides the whole group
        # in the config file, not just its own key
        flagged = {k: getattr(args, k, None) for k in keys}
        if any(v is not None for v in flagged.values()):
            return flagged
        return {k: file_vals.get(k) for k in keys}

    cfg = RunConfig()
    wavelength = pick("wavelength", float)
    if wavelength is not None:
        cfg.wavelength = wavelength
    distance = pick("distance", float)
    if distance is not None:
        cfg.distance = distance
    pump = pick("pump_waist", float)
    if pump is not None:
        cfg.pump_waist = pump

    turb = pick_group("cn2", "rytov")
    if turb["cn2"] is not None and turb["rytov"] is not None:
        raise DomainError("give either cn2 or rytov, not both")
    cfg.cn2 = float(turb["cn2"]) if turb["cn2"] is not None else None
    cfg.rytov = float(turb["rytov"]) if turb["rytov"] is not None else None

    grid = pick_group("modes", "max_sum")
    if grid["modes"] is not None and grid["max_sum"] is not None:
        raise DomainError("give either modes or max_sum, not both")
    if grid["modes"] is not None:
        cfg.modes = _parse_modes_arg(str(grid["modes"]))
    elif grid["max_sum"] is not None:
        cfg.modes = tuple(expand_modes(int(grid["max_sum"])))

    normalize = pick("normalize", str)
    if normalize is not None:
        if normalize not in (NORMALIZATION_RAW, NORMALIZATION_CALIBRATED):
            raise DomainError(f"unknown normalization {normalize!r}")
        cfg.normalization = normalize
    fmt = pick("format", str)
    if fmt is not None:
        if fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {fmt!r}")
        cfg.fmt = fmt
    out = pick("output", str)
    if out is not None:
        cfg.output = out
    return cfg


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _compute_matrix(cfg: RunConfig):
    optical = cfg.optical()
    turb = cfg.turbulence().resolve(optical)
    consts = derive_constants(optical, turb.gamma)
    return probability_matrix(
        cfg.modes, consts, normalization=cfg.normalization,
        reference_value=reference.CALIBRATION_REFERENCE, turbulence=turb,
    )


def cmd_matrix(cfg: RunConfig) -> int:
    matrix = _compute_matrix(cfg)
    if cfg.fmt == "json":
        _emit(serialization.matrix_to_json(matrix), cfg.output)
    elif cfg.fmt == "csv" or cfg.output:
        _emit(serialization.matrix_to_csv(matrix), cfg.output)
    else:
        header = "\n".join(
            f"# {k}={v}" for k, v in serialization.matrix_params(matrix).items()
            if v is not None
        )
        _emit(header + "\n" + serialization.format_matrix_table(matrix), None)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, grid: list[float], pairs: list[ModePair]) -> int:
    if not grid:
        raise DomainError("sweep grid is empty")
    if any(g < 0 for g in grid):
        raise DomainError("sweep grid values must be >= 0")
    if list(grid) != sorted(grid):
        raise DomainError("sweep grid must be ascending")
    optical = cfg.optical()
    vac = derive_constants(optical)
    anchor = joint_probability(ModePair(ModeIndex(0, 0), ModeIndex(0, 0)), vac)
    series: dict[str, list[float]] = {f"P{p.label()}": [] for p in pairs}
    for s2 in grid:
        turb = TurbulenceSpec.from_rytov(s2).resolve(optical)
        consts = derive_constants(optical, turb.gamma)
        scale = (reference.CALIBRATION_REFERENCE / anchor
                 if cfg.normalization == NORMALIZATION_CALIBRATED else 1.0)
        for pair in pairs:
            series[f"P{pair.label()}"].append(scale * joint_probability(pair, consts))
    params = {
        "wavelength_m": cfg.wavelength,
        "distance_m": cfg.distance,
        "pump_waist_m": cfg.pump_waist,
        "strength_coeff": DEFAULT_STRENGTH_COEFF,
        "w_variant": DEFAULT_W_VARIANT,
        "normalization": cfg.normalization,
    }
    result = SweepResult(list(grid), series, params)
    if cfg.fmt == "json":
        _emit(serialization.sweep_to_json(result.grid, result.series, result.params),
              cfg.output)
    else:
        _emit(serialization.sweep_to_csv(result.grid, result.series, result.params),
              cfg.output)
    return EXIT_OK


_NOTABLE = {
    ("00", "02"): "robust", ("00", "20"): "robust",
    ("00", "01"): "dominant-crosstalk", ("00", "10"): "dominant-crosstalk",
    ("00", "12"): "weak-crosstalk", ("00", "21"): "weak-crosstalk",
}


def cmd_rank(cfg: RunConfig) -> int:
    turb_matrix = _compute_matrix(cfg)
    vac_cfg = RunConfig(**{**cfg.__dict__, "cn2": None, "rytov": None})
    vac_matrix = _compute_matrix(vac_cfg)

    retained, leaking = [], []
    n = len(cfg.modes)
    for i in range(n):
        for j in range(i, n):
            s, d = cfg.modes[i], cfg.modes[j]
            pair = ModePair(s, d)
            pt = turb_matrix.values[i][j]
            note = _NOTABLE.get((s.label(), d.label()), "")
            if selection_rule_allowed(pair):
                pv = vac_matrix.values[i][j]
                # pv = 0 for an allowed pair cannot happen at sane
                # parameters; None keeps the JSON standard if it ever does
                retention = pt / pv if pv > 0 else None
                retained.append((retention, pair, pt, pv, note))
            else:
                leaking.append((pt, pair, note))
    retained.sort(key=lambda r: r[0] if r[0] is not None else float("-inf"),
                  reverse=True)
    leaking.sort(key=lambda r: r[0], reverse=True)

    if cfg.fmt == "json":
        doc = {
            "retention": [
                {"pair": p.label(), "retention": r, "p_turb": pt, "p_vac": pv,
                 "note": note}
                for r, p, pt, pv, note in retained
            ],
            "leakage": [
                {"pair": p.label(), "p_turb": pt, "note": note}
                for pt, p, note in leaking
            ],
        }
        _emit(json.dumps(doc, indent=2), cfg.output)
        return EXIT_OK
    lines = ["retention (allowed pairs, P_turb / P_vac descending):"]
    for r, p, pt, pv, note in retained:
        shown = f"{r:.4f}" if r is not None else "n/a"
        lines.append(f"  {p.label():>9}  retention={shown}  "
                     f"P_turb={pt:.5f}  P_vac={pv:.5f}  {note}")
    lines.append("leakage (forbidden pairs, P_turb descending):")
    for pt, p, note in leaking:
        lines.append(f"  {p.label():>9}  P_turb={pt:.6f}  {note}")
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def cmd_validate(vacuum_only: bool, output: str | None, nodes: int = 512) -> int:
    results = validate.run_checks(vacuum_only=vacuum_only, oracle_nodes=nodes)
    report = {
        "passed": all(r.passed for r in results),
        "checks": [r.as_dict() for r in results],
    }
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        dev = f"  max_dev={r.max_deviation:.3e}" if r.max_deviation is not None else ""
        print(f"{status:4}  {r.name}{dev}")
        if not r.passed:
            print(f"      {r.detail}")
    if output:
        Path(output).write_text(json.dumps(report, indent=2))
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--wavelength", type=float, help="wavelength [m]")
    parser.add_argument("--distance", type=float, help="propagation distance [m]")
    parser.add_argument("--pump-waist", dest="pump_waist", type=float,
                        help="pump amplitude spot at the crystal [m] "
                             "(effective width W0 = sqrt(2) x this)")
    turb = parser.add_mutually_exclusive_group()
    turb.add_argument("--cn2", type=float, help="refractive-index structure constant")
    turb.add_argument("--rytov", type=float, help="Rytov variance (dimensionless)")
    modes = parser.add_mutually_exclusive_group()
    modes.add_argument("--modes", type=str,
                       help="mode tokens, e.g. '00 01 10' (default: 10-mode grid)")
    modes.add_argument("--max-sum", dest="max_sum", type=int,
                       help="expand all modes with m+n <= S")
    parser.add_argument("--normalize", choices=[NORMALIZATION_RAW,
                                                NORMALIZATION_CALIBRATED])
    parser.add_argument("--format", dest="format", choices=["csv", "json"])
    parser.add_argument("--output", type=str, help="output path (default stdout)")
    parser.add_argument("--config", type=str,
                        help="key=value config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgspdc",
        description="Joint detection probabilities of photon pairs in "
                    "Hermite-Gaussian modes through atmospheric turbulence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_matrix = sub.add_parser("matrix", help="compute a probability matrix")
    _add_common(p_matrix)

    p_sweep = sub.add_parser("sweep", help="sweep probabilities over rytov values")
    _add_common(p_sweep)
    p_sweep.add_argument("--grid", type=str,
                         help="comma-separated ascending rytov values "
                              "(default 0,0.01,...,0.1)")
    p_sweep.add_argument("--pairs", type=str, default="00:00 00:01",
                         help="pair tokens 'ss:ii', space separated")

    p_rank = sub.add_parser("rank", help="rank mode pairs by turbulence robustness")
    _add_common(p_rank)

    p_val = sub.add_parser("validate", help="run the validation suite")
    p_val.add_argument("--vacuum-only", action="store_true",
                       help="skip turbulence fixtures")
    p_val.add_argument("--output", type=str, help="write a JSON report here")
    p_val.add_argument("--nodes", type=int, default=512,
                       help="oracle quadrature nodes per axis")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.vacuum_only, args.output, args.nodes)
        cfg = _build_run_config(args)
        if args.command == "matrix":
            return cmd_matrix(cfg)
        if args.command == "sweep":
            grid = ([float(tok) for tok in args.grid.split(",")]
                    if args.grid else list(DEFAULT_GRID))
            pairs = [_parse_pair(tok) for tok in args.pairs.split()]
            return cmd_sweep(cfg, grid, pairs)
        if args.command == "rank":
            if cfg.cn2 is None and cfg.rytov is None:
                raise DomainError("rank needs a turbulent channel: give --rytov or --cn2")
            return cmd_rank(cfg)
        raise DomainError(f"unknown command {args.command!r}")
    except DomainError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
