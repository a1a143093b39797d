"""Closed-form joint detection probabilities for photon-pair transverse modes.

Evaluates the two overlap kernels (f_kernel, k_kernel), the per-axis factor
pi_factor and the joint probability P(signal, idler) = Pi(m_s, m_i) *
Pi(n_s, n_i), and assembles probability matrices over ordered mode grids.

The quadruple sum in pi_factor mixes alternating signs, so terms are
accumulated in descending magnitude with Neumaier-compensated addition.
pi_factor values are memoized per constant set; all functions are pure, and
cache fills are idempotent, so concurrent use is safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .channel import (
    DEFAULT_STRENGTH_COEFF,
    DerivedConstants,
    OpticalConfig,
    ResolvedTurbulence,
    derive_constants,
)
from .errors import CalibrationError, DomainError, NumericalError
from .specfun import HalfInteger, gamma_half, hyp2f1_real, hyp2f1_terminating

DEFAULT_MAX_ORDER = 10

# calibrated normalization anchors the vacuum (00,00) entry to this value,
# the first entry of the reference vacuum matrix
DEFAULT_REFERENCE_VALUE = 0.31307

# below this the removable 1/c3 singularity in k_kernel switches to its
# first-order expansion in c3
_SMALL_C3_FACTOR = 1e-6

_IMAG_RTOL = 1e-10
_NEGATIVE_CLAMP = 1e-12


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Transverse mode orders (m, n) along the two Cartesian axes."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError(f"mode orders must be nonnegative, got ({self.m}, {self.n})")

    @property
    def total_order(self) -> int:
        return self.m + self.n

    def label(self) -> str:
        if self.m <= 9 and self.n <= 9:
            return f"{self.m}{self.n}"
        return f"{self.m},{self.n}"


@dataclass(frozen=True)
class ModePair:
    signal: ModeIndex
    idler: ModeIndex

    def label(self) -> str:
        return f"({self.signal.label()},{self.idler.label()})"


def parse_mode(token: str) -> ModeIndex:
    """Parse 'mn' two-digit tokens (or 'm,n' for orders above 9)."""
    token = token.strip()
    if "," in token:
        parts = token.split(",")
        if len(parts) != 2:
            raise DomainError(f"cannot parse mode token {token!r}")
        return ModeIndex(int(parts[0]), int(parts[1]))
    if len(token) != 2 or not token.isdigit():
        raise DomainError(f"cannot parse mode token {token!r} (expected two digits)")
    return ModeIndex(int(token[0]), int(token[1]))


def expand_modes(max_sum: int) -> list[ModeIndex]:
    """All modes with m + n <= max_sum, ordered by total order then by m.

    This matches the reference ordering 00, 01, 10, 02, 11, 20, ...
    """
    if max_sum < 0:
        raise DomainError(f"max_sum must be >= 0, got {max_sum}")
    return [ModeIndex(m, s - m) for s in range(max_sum + 1) for m in range(s + 1)]


#: the 10-mode ordering used by the reference matrices
DEFAULT_ORDERING: tuple[ModeIndex, ...] = tuple(expand_modes(3))


def sigma(k: int, l: int) -> int:
    """Parity factor (-1)^k + (-1)^l, one of -2, 0, 2."""
    return (-1) ** k + (-1) ** l


def _neumaier(values) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def _compensated_sum(terms: list[complex]) -> complex:
    ordered = sorted(terms, key=abs, reverse=True)
    return complex(
        _neumaier([t.real for t in ordered]),
        _neumaier([t.imag for t in ordered]),
    )


def f_kernel(mu: int, nu: int, k: int, l: int, consts: DerivedConstants) -> complex:
    """First overlap kernel; exactly 0 whenever sigma(k, l) vanishes.

    The sigma guard also means Gamma and the terminating hypergeometric are
    only ever evaluated at even k + l.
    """
    if not (0 <= k <= mu and 0 <= l <= nu):
        raise DomainError(f"indices out of range: mu={mu}, nu={nu}, k={k}, l={l}")
    sig = sigma(k, l)
    if sig == 0:
        return 0.0 + 0.0j
    zeta = consts.zeta
    # k + l is even past the sigma guard, so i^(k+l) is the real sign
    # (-1)^((k+l)/2)
    i_power = -1 if (k + l) % 4 == 2 else 1
    val = math.comb(mu, k) * math.comb(nu, l) * 2 ** (mu + nu) * sig
    val = val * i_power * gamma_half(HalfInteger(k + l + 1))
    val *= (math.sqrt(2.0) / consts.w) ** (mu + nu - k - l)
    val *= cmath.sqrt(1 - zeta) * cmath.sqrt(zeta) ** (k + l)
    val *= hyp2f1_terminating(k, l, HalfInteger(1 - k - l), 1 / (2 * zeta))
    return val


@lru_cache(maxsize=None)
def _hyp(a: float, b: float, c: float, x: float) -> float:
    return hyp2f1_real(a, b, c, x)


@lru_cache(maxsize=None)
def k_kernel(a: int, b: int, consts: DerivedConstants) -> complex:
    """Second overlap kernel, the double sum over (p, q).

    The first bracket term needs p+q and a+b-p-q both even, the second and
    third both odd, so the kernel vanishes identically for odd a + b. The
    odd terms each carry 1/c3 but their sum is O(c3); below the small-c3
    threshold they are evaluated through the first-order expansion so the
    removable singularity never amplifies roundoff.
    """
    if a < 0 or b < 0:
        raise DomainError(f"kernel orders must be nonnegative, got ({a}, {b})")
    c1, c2, c3, c4 = consts.c1, consts.c2, consts.c3, consts.c4
    small_c3 = abs(c3) < _SMALL_C3_FACTOR * (c1 + c2)
    terms: list[complex] = []
    for p in range(a + 1):
        for q in range(b + 1):
            s = p + q
            t = a + b - p - q
            pre = (
                math.comb(a, p) * math.comb(b, q) * (-1) ** (b - q)
                * c1 ** (-(2 + s) / 2) * c2 ** (-t / 2)
            )
            if s % 2 == 0 and t % 2 == 0:
                g = gamma_half(HalfInteger(1 + s)) * gamma_half(HalfInteger(1 + t))
                bracket = (
                    sigma(0, s) * sigma(0, t) * math.sqrt(c1 / c2) * g
                    * _hyp((1 + s) / 2, (1 + t) / 2, 0.5, c4)
                )
            elif s % 2 == 1 and t % 2 == 1:
                sig2 = sigma(1, s) * sigma(1, t)
                g = gamma_half(HalfInteger(2 + s)) * gamma_half(HalfInteger(2 + t))
                if small_c3:
                    bracket = 1j * sig2 * g * c3 * (
                        (3 + a + b) - (2 + s) * (2 + t)
                    ) / (c2 * (1 + s) * (1 + t))
                else:
                    hi = _hyp((2 + s) / 2, (2 + t) / 2, 0.5, c4)
                    lo = _hyp((2 + s) / 2, (2 + t) / 2, -0.5, c4)
                    bracket = 1j * sig2 * g * (
                        (4 * c1 * c2 + c3 ** 2 * (4 + a + b)) * hi
                        - (4 * c1 * c2 + c3 ** 2) * lo
                    ) / (c2 * c3 * (1 + s) * (1 + t))
            else:
                continue
            terms.append(pre * bracket)
    if not terms:
        return 0.0 + 0.0j
    return 0.25 * (0.5 ** ((a + b) / 2)) * _compensated_sum(terms)


@lru_cache(maxsize=None)
def _pi_cached(mu: int, nu: int, consts: DerivedConstants) -> float:
    terms: list[complex] = []
    fvals: dict[tuple[int, int], complex] = {}
    for k1 in range(mu + 1):
        for l1 in range(nu + 1):
            if sigma(k1, l1) == 0:
                continue
            fvals[(k1, l1)] = f_kernel(mu, nu, k1, l1, consts)
    for (k1, l1), f1 in fvals.items():
        for (k3, l3), f3 in fvals.items():
            kk = k_kernel(mu + nu - k1 - l1, mu + nu - k3 - l3, consts)
            terms.append(f1 * f3.conjugate() * kk)
    total = _compensated_sum(terms)
    pref = 1.0 / (
        consts.wavelength ** 2 * consts.distance ** 2
        * math.sqrt(math.pi * consts.b1)
        * math.factorial(mu) * math.factorial(nu) * 2 ** (mu + nu)
    )
    value = pref * total
    if abs(value.imag) > _IMAG_RTOL * abs(value.real) + 1e-300:
        raise NumericalError(
            f"pi_factor({mu}, {nu}) lost realness: {value!r} "
            "(kernel bug or regime violation)"
        )
    result = value.real
    if -_NEGATIVE_CLAMP <= result < 0.0:
        result = 0.0
    return result


def pi_factor(mu: int, nu: int, consts: DerivedConstants,
              max_order: int = DEFAULT_MAX_ORDER) -> float:
    """Per-axis probability factor: the quadruple kernel sum with prefactor.

    Symmetric in (mu, nu); the memo key is sorted so the symmetry is exact.
    """
    if mu < 0 or nu < 0:
        raise DomainError(f"orders must be nonnegative, got ({mu}, {nu})")
    if max(mu, nu) > max_order:
        raise DomainError(
            f"order {max(mu, nu)} exceeds max_order={max_order}; the paraxial "
            "closed form degrades for high orders"
        )
    return _pi_cached(min(mu, nu), max(mu, nu), consts)


def joint_probability(pair: ModePair, consts: DerivedConstants,
                      max_order: int = DEFAULT_MAX_ORDER) -> float:
    """P(signal, idler) = Pi(m_s, m_i) * Pi(n_s, n_i), unnormalized."""
    s, i = pair.signal, pair.idler
    return (pi_factor(s.m, i.m, consts, max_order)
            * pi_factor(s.n, i.n, consts, max_order))


def selection_rule_allowed(pair: ModePair, pump: ModeIndex = ModeIndex(0, 0)) -> bool:
    """Vacuum selection rules: per axis, signal+idler order must have the
    pump's parity and be at least the pump order."""
    s, i = pair.signal, pair.idler
    return (
        (s.m + i.m) % 2 == pump.m % 2 and s.m + i.m >= pump.m
        and (s.n + i.n) % 2 == pump.n % 2 and s.n + i.n >= pump.n
    )


NORMALIZATION_RAW = "raw"
NORMALIZATION_CALIBRATED = "calibrated"


@dataclass(frozen=True)
class Normalization:
    """How a matrix was scaled.

    calibrated mode rescales every entry by one global factor chosen so the
    reference pair (in vacuum, over the same geometry) lands on
    reference_value; raw_reference_value reports the unscaled magnitude so
    the absolute scale stays inspectable.
    """

    mode: str
    reference_pair: ModePair | None
    reference_value: float | None
    calibration_factor: float
    raw_reference_value: float


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Joint probabilities over an ordered mode grid.

    values[i][j] = P(signal=ordering[i], idler=ordering[j]). turbulence
    carries the resolved channel input when the caller supplies it.
    """

    ordering: tuple[ModeIndex, ...]
    values: tuple[tuple[float, ...], ...]
    consts: DerivedConstants
    normalization: Normalization
    turbulence: "ResolvedTurbulence | None" = None

    @property
    def size(self) -> int:
        return len(self.ordering)

    def value(self, signal: ModeIndex, idler: ModeIndex) -> float:
        return self.values[self.ordering.index(signal)][self.ordering.index(idler)]

    def max_value(self) -> float:
        return max(max(row) for row in self.values)


def _vacuum_reference_raw(consts: DerivedConstants, pair: ModePair,
                          max_order: int) -> float:
    cfg = OpticalConfig.from_w0(consts.wavelength, consts.distance, consts.w0)
    vac = derive_constants(cfg, 0.0, consts.w_variant)
    return joint_probability(pair, vac, max_order)


def probability_matrix(
    modes,
    consts: DerivedConstants,
    normalization: str = NORMALIZATION_CALIBRATED,
    reference_pair: ModePair | None = None,
    reference_value: float = DEFAULT_REFERENCE_VALUE,
    max_order: int = DEFAULT_MAX_ORDER,
    turbulence: ResolvedTurbulence | None = None,
) -> ProbabilityMatrix:
    """Fill the grid of joint probabilities for every ordered mode pair.

    With calibrated normalization all entries are rescaled by the single
    global factor that maps the vacuum reference pair onto reference_value,
    so matrices for different turbulence strengths stay mutually comparable.
    """
    ordering = tuple(modes)
    if not ordering:
        raise DomainError("mode list must be nonempty")
    if normalization not in (NORMALIZATION_RAW, NORMALIZATION_CALIBRATED):
        raise DomainError(f"unknown normalization {normalization!r}")
    if reference_pair is None:
        reference_pair = ModePair(ModeIndex(0, 0), ModeIndex(0, 0))
    if turbulence is None and consts.gamma == 0.0:
        turbulence = ResolvedTurbulence(cn2=0.0, rytov=0.0,
                                        strength_coeff=DEFAULT_STRENGTH_COEFF,
                                        gamma=0.0)

    raw = [[joint_probability(ModePair(s, i), consts, max_order) for i in ordering]
           for s in ordering]
    raw_ref = joint_probability(reference_pair, consts, max_order)

    if normalization == NORMALIZATION_CALIBRATED:
        anchor = _vacuum_reference_raw(consts, reference_pair, max_order)
        if anchor <= 0.0:
            raise CalibrationError(
                f"calibration reference {reference_pair.label()} is {anchor}; "
                "cannot normalize"
            )
        factor = reference_value / anchor
        norm = Normalization(NORMALIZATION_CALIBRATED, reference_pair,
                             reference_value, factor, raw_ref)
    else:
        factor = 1.0
        norm = Normalization(NORMALIZATION_RAW, reference_pair, None, 1.0, raw_ref)

    peak = max(max(abs(v) for v in row) for row in raw)
    floor = -_NEGATIVE_CLAMP * peak
    values = []
    for row in raw:
        out = []
        for v in row:
            if floor <= v < 0.0:
                v = 0.0
            elif v < floor:
                raise NumericalError(f"matrix entry {v} is negative beyond the floor")
            out.append(v * factor)
        values.append(tuple(out))
    return ProbabilityMatrix(ordering, tuple(values), consts, norm, turbulence)
