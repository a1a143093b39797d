"""Validation suite: golden-matrix regression, selection rules, symmetry,
oracle agreement, trends and robust-mode ordering.

Each check returns a CheckResult; the CLI validate command and the
acceptance tests share these functions so there is a single source of truth
for every criterion.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from . import reference
from .channel import (
    DEFAULT_STRENGTH_COEFF,
    TurbulenceSpec,
    derive_constants,
    turbulence_strength,
)
from .engine import (
    DEFAULT_ORDERING,
    ModeIndex,
    ModePair,
    expand_modes,
    joint_probability,
    pi_factor,
    probability_matrix,
    selection_rule_allowed,
)
from .oracle import QuadratureSpec, overlap_table
from .specfun import SQRT_PI, HalfInteger, gamma_half, hyp2f1_real, hyp2f1_terminating

SWEEP_GRID = tuple(round(0.01 * i, 10) for i in range(11))


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_deviation: float | None = None
    detail: str = ""
    elapsed_s: float | None = None
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "detail": self.detail,
            "elapsed_s": self.elapsed_s,
            **({"extras": self.extras} if self.extras else {}),
        }


def _reference_matrix(rytov: float, w_variant: str | None = None,
                      gamma_scale: float = 1.0,
                      strength_coeff: float = DEFAULT_STRENGTH_COEFF):
    cfg = reference.reference_config()
    gamma = gamma_scale * turbulence_strength(rytov, strength_coeff)
    kwargs = {} if w_variant is None else {"w_variant": w_variant}
    consts = derive_constants(cfg, gamma, **kwargs)
    turb = TurbulenceSpec.from_rytov(rytov, strength_coeff=strength_coeff).resolve(cfg)
    return probability_matrix(DEFAULT_ORDERING, consts,
                              reference_value=reference.CALIBRATION_REFERENCE,
                              turbulence=turb)


def check_vacuum_golden(w_variant: str | None = None) -> CheckResult:
    """All 100 vacuum entries within tolerance; zero entries at noise level."""
    t0 = time.perf_counter()
    matrix = _reference_matrix(0.0, w_variant)
    elapsed = time.perf_counter() - t0
    golden = reference.VACUUM_MATRIX
    peak = matrix.max_value()
    worst = 0.0
    zero_worst = 0.0
    for i in range(10):
        for j in range(10):
            dev = abs(matrix.values[i][j] - golden[i][j])
            worst = max(worst, dev)
            if golden[i][j] == 0.0:
                zero_worst = max(zero_worst, matrix.values[i][j] / peak)
    passed = worst <= reference.ENTRY_TOL and zero_worst <= 1e-6
    return CheckResult(
        "vacuum_golden", passed, worst,
        f"max |dev| {worst:.2e} (tol {reference.ENTRY_TOL}); "
        f"zero entries <= {zero_worst:.2e} of peak (tol 1e-6); "
        f"w_variant={matrix.consts.w_variant}",
        elapsed,
    )


def check_turbulence_golden(gamma_scale: float = 1.0,
                            strength_coeff: float = DEFAULT_STRENGTH_COEFF) -> CheckResult:
    """All 100 turbulence entries within tolerance at the reference rytov."""
    t0 = time.perf_counter()
    matrix = _reference_matrix(reference.REFERENCE_RYTOV,
                               gamma_scale=gamma_scale,
                               strength_coeff=strength_coeff)
    elapsed = time.perf_counter() - t0
    golden = reference.TURBULENCE_MATRIX
    worst = 0.0
    tiny_worst = 0.0
    for i in range(10):
        for j in range(10):
            dev = abs(matrix.values[i][j] - golden[i][j])
            if golden[i][j] < 1e-4:
                tiny_worst = max(tiny_worst, dev)
            else:
                worst = max(worst, dev)
    passed = worst <= reference.ENTRY_TOL and tiny_worst <= reference.TINY_ENTRY_TOL
    return CheckResult(
        "turbulence_golden", passed, max(worst, tiny_worst),
        f"max |dev| {worst:.2e} (tol {reference.ENTRY_TOL}); "
        f"tiny entries {tiny_worst:.2e} (tol {reference.TINY_ENTRY_TOL}); "
        f"gamma={matrix.consts.gamma:.6g}",
        elapsed,
    )


def check_selection_rules() -> CheckResult:
    """Vacuum zero pattern coincides exactly with the selection rules."""
    matrix = _reference_matrix(0.0)
    peak = matrix.max_value()
    mismatches = []
    worst = 0.0
    for s in matrix.ordering:
        for i in matrix.ordering:
            allowed = selection_rule_allowed(ModePair(s, i))
            value = matrix.value(s, i)
            if allowed:
                worst = max(worst, 0.0)
                if value <= 1e-6 * peak:
                    mismatches.append((s.label(), i.label(), "allowed-but-zero"))
            else:
                worst = max(worst, value / peak)
                if value > 1e-6 * peak:
                    mismatches.append((s.label(), i.label(), "forbidden-but-nonzero"))
    return CheckResult(
        "selection_rules", not mismatches, worst,
        f"forbidden entries <= {worst:.2e} of peak; mismatches: {mismatches or 'none'}",
    )


def check_oracle(nodes: int = 512) -> CheckResult:
    """Quadrature oracle reproduces the engine's vacuum ratios (orders <= 2)
    and is self-converged under node doubling."""
    t0 = time.perf_counter()
    cfg = reference.reference_config()
    consts = derive_constants(cfg)
    spec = QuadratureSpec.for_config(cfg, nodes=nodes, max_order=2)
    table = overlap_table(cfg, spec, max_order=2, check_convergence=True)
    anchor_engine = pi_factor(0, 0, consts) ** 2
    anchor_oracle = abs(table[0, 0]) ** 4
    worst = 0.0
    zero_worst = 0.0
    for ms in range(3):
        for ns in range(3):
            for mi in range(3):
                for ni in range(3):
                    pair = ModePair(ModeIndex(ms, ns), ModeIndex(mi, ni))
                    eng = joint_probability(pair, consts) / anchor_engine
                    orc = (abs(table[ms, mi]) ** 2 * abs(table[ns, ni]) ** 2
                           / anchor_oracle)
                    if selection_rule_allowed(pair):
                        worst = max(worst, abs(orc / eng - 1.0))
                    else:
                        zero_worst = max(zero_worst, orc)
    elapsed = time.perf_counter() - t0
    passed = worst <= 1e-2 and zero_worst <= 1e-6 and elapsed < 60.0
    return CheckResult(
        "oracle_agreement", passed, worst,
        f"allowed-pair ratio dev {worst:.2e} (tol 1e-2); forbidden-pair "
        f"oracle residue {zero_worst:.2e}; nodes={nodes}",
        elapsed,
        extras={
            "detection_waist_m": spec.resolved_waist(cfg),
            "detection_phase_rate": "k/(4R), half the propagated-beam curvature",
            "pump_width_m": cfg.pump_waist,
            "half_width_m": spec.half_width,
        },
    )


def check_symmetry_factorization() -> CheckResult:
    """Exchange symmetry and the factorization cross-identity, orders <= 3,
    in vacuum and at the reference turbulence.

    The cross-identity products are assembled through joint_probability so
    the memoized assembly path is what gets exercised, not just the raw
    per-axis factors.
    """
    cfg = reference.reference_config()
    worst = 0.0
    rng = range(4)
    for rytov in (0.0, reference.REFERENCE_RYTOV):
        consts = derive_constants(cfg, turbulence_strength(rytov))
        modes = expand_modes(3)
        for s in modes:
            for i in modes:
                p = joint_probability(ModePair(s, i), consts)
                q = joint_probability(ModePair(i, s), consts)
                if p != 0.0 or q != 0.0:
                    worst = max(worst, abs(p - q) / max(abs(p), abs(q)))
        joint = {}
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        joint[(a, b, c, d)] = joint_probability(
                            ModePair(ModeIndex(a, b), ModeIndex(c, d)), consts)
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        p1 = joint[(a, b, c, d)]
                        for a2 in rng:
                            for b2 in rng:
                                for c2 in rng:
                                    for d2 in rng:
                                        lhs = p1 * joint[(a2, b2, c2, d2)]
                                        rhs = (joint[(a, b2, c, d2)]
                                               * joint[(a2, b, c2, d)])
                                        if lhs != 0.0 or rhs != 0.0:
                                            worst = max(
                                                worst,
                                                abs(lhs - rhs) / max(abs(lhs), abs(rhs)),
                                            )
    return CheckResult(
        "symmetry_factorization", worst <= 1e-10, worst,
        f"worst relative deviation {worst:.2e} (tol 1e-10)",
    )


def _trend_series(pair: ModePair, grid=SWEEP_GRID) -> list[float]:
    cfg = reference.reference_config()
    vac = derive_constants(cfg)
    scale = reference.CALIBRATION_REFERENCE / joint_probability(
        ModePair(ModeIndex(0, 0), ModeIndex(0, 0)), vac)
    out = []
    for s2 in grid:
        consts = derive_constants(cfg, turbulence_strength(s2))
        out.append(scale * joint_probability(pair, consts))
    return out


def check_trend_allowed() -> CheckResult:
    """P(00,00) strictly decreasing across the sweep grid."""
    series = _trend_series(ModePair(ModeIndex(0, 0), ModeIndex(0, 0)))
    ok = all(a > b for a, b in zip(series, series[1:]))
    return CheckResult(
        "trend_allowed_decreasing", ok, None,
        "P(00,00) over rytov grid: " + ", ".join(f"{v:.5f}" for v in series),
    )


def check_trend_forbidden() -> CheckResult:
    """P(00,01) starting at zero and strictly increasing across the grid.

    The underlying model rises from zero but peaks inside the grid (leak-in
    competes with beam-spread loss), so the strict global monotonicity
    demanded here fails beyond the peak; see the detail for the series.
    """
    series = _trend_series(ModePair(ModeIndex(0, 0), ModeIndex(0, 1)))
    starts_zero = series[0] <= 1e-6 * reference.CALIBRATION_REFERENCE
    increasing = all(a < b for a, b in zip(series, series[1:]))
    rising_prefix = len(series)
    for idx in range(1, len(series)):
        if series[idx] <= series[idx - 1]:
            rising_prefix = idx
            break
    return CheckResult(
        "trend_forbidden_increasing", starts_zero and increasing, None,
        f"P(00,01) starts at {series[0]:.2e}, rises through grid index "
        f"{rising_prefix - 1} (rytov {SWEEP_GRID[rising_prefix - 1]}) then "
        "falls; series: " + ", ".join(f"{v:.6f}" for v in series),
    )


def check_robust_ordering() -> CheckResult:
    """Crosstalk is nonuniform at the reference turbulence: leakage into
    (00,01)/(00,10) beats (00,12)/(00,21), and the allowed (00,02)/(00,20)
    pairs retain more than leaks gain."""
    turb = _reference_matrix(reference.REFERENCE_RYTOV)
    vac = _reference_matrix(0.0)

    def t(s, i):
        return turb.value(ModeIndex(*s), ModeIndex(*i))

    def v(s, i):
        return vac.value(ModeIndex(*s), ModeIndex(*i))

    leak_strong = min(t((0, 0), (0, 1)), t((0, 0), (1, 0)))
    leak_weak = max(t((0, 0), (1, 2)), t((0, 0), (2, 1)))
    retention_02 = t((0, 0), (0, 2)) / v((0, 0), (0, 2))
    retention_20 = t((0, 0), (2, 0)) / v((0, 0), (2, 0))
    stay_beats_leak = (t((0, 0), (0, 2)) > t((0, 0), (0, 1))
                       and t((0, 0), (2, 0)) > t((0, 0), (1, 0)))
    ordering_ok = leak_strong > leak_weak
    passed = ordering_ok and stay_beats_leak
    return CheckResult(
        "robust_mode_ordering", passed, None,
        f"leak(00->01/10) >= {leak_strong:.4g} > leak(00->12/21) <= "
        f"{leak_weak:.4g}; retention(00,02)={retention_02:.4f}, "
        f"retention(00,20)={retention_20:.4f}; allowed pairs outweigh leaks: "
        f"{stay_beats_leak}",
    )


def check_specfun() -> CheckResult:
    """Anchor values and invariants of the special-function kernel."""
    failures = []

    def expect(label, got, want, rtol=1e-13, atol=0.0):
        if abs(got - want) > rtol * abs(want) + atol:
            failures.append(f"{label}: {got!r} != {want!r}")

    expect("gamma(1/2)", gamma_half(HalfInteger(1)), SQRT_PI)
    expect("gamma(1)", gamma_half(HalfInteger(2)), 1.0)
    expect("gamma(5/2)", gamma_half(HalfInteger(5)), 0.75 * SQRT_PI)
    for twice in range(1, 120):
        x = HalfInteger(twice)
        ratio = gamma_half(HalfInteger(twice + 2)) / gamma_half(x)
        if abs(ratio - x.value) > 1e-13 * x.value:
            failures.append(f"recursion at {x}")
    expect("2F1(-1,-1;-1/2;1/2)",
           hyp2f1_terminating(1, 1, HalfInteger(-1), 0.5).real, 0.0, atol=1e-15)
    for k, l, c, x in ((2, 3, HalfInteger(-3), 0.3 + 0.2j),
                       (4, 1, HalfInteger(3), -0.7 + 0.1j)):
        if hyp2f1_terminating(k, l, c, x) != hyp2f1_terminating(l, k, c, x):
            failures.append(f"termination symmetry at {(k, l)}")
    expect("pfaff closed form", hyp2f1_real(0.5, 3.0, 3.0, -1.0), 2 ** -0.5, rtol=1e-12)
    expect("log identity", hyp2f1_real(1.0, 1.0, 2.0, -0.5),
           math.log(1.5) / 0.5, rtol=1e-12)
    grid = (-0.5, 0.5, 1.0, 1.5)
    for a in grid:
        for b in grid:
            for c in grid:
                for x in (-0.9, -0.7, -0.5, -0.3, -0.1):
                    direct, scale = _series_reference(a, b, c, x)
                    via = hyp2f1_real(a, b, c, x)
                    # the alternating series cancels completely at zeros of
                    # the function, so its conditioning scale sets the floor
                    tol = 1e-10 * max(abs(direct), abs(via), 1e-6 * scale)
                    if abs(via - direct) > tol:
                        failures.append(f"pfaff vs series at {(a, b, c, x)}")
    return CheckResult(
        "specfun", not failures, None,
        "all anchors/invariants ok" if not failures else "; ".join(failures[:5]),
    )


def _series_reference(a: float, b: float, c: float, x: float) -> tuple[float, float]:
    # plain alternating series at negative x, independent of the Pfaff path;
    # also returns the sum of |term| as the cancellation scale
    total, term, scale = 1.0, 1.0, 1.0
    for n in range(20_000):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        scale += abs(term)
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            break
    return total, scale


ALL_CHECKS = (
    check_vacuum_golden,
    check_turbulence_golden,
    check_selection_rules,
    check_oracle,
    check_symmetry_factorization,
    check_trend_allowed,
    check_trend_forbidden,
    check_robust_ordering,
    check_specfun,
)

_TURBULENCE_CHECKS = {check_turbulence_golden, check_symmetry_factorization,
                      check_trend_allowed, check_trend_forbidden,
                      check_robust_ordering}


def run_checks(vacuum_only: bool = False, oracle_nodes: int = 512) -> list[CheckResult]:
    results = []
    for fn in ALL_CHECKS:
        if vacuum_only and fn in _TURBULENCE_CHECKS:
            continue
        results.append(fn(oracle_nodes) if fn is check_oracle else fn())
    return results
