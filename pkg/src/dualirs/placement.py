"""AIRS placement: exhaustive 1-D search, closed-form placements, and the
TAPR/TPAR comparison."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import SystemParams, dbm_to_watts
from .geometry import Scheme
from .link import closed_form_terms, rate, ratio_a, ratio_b, snr_approx, snr_closed
from .reflection import InfeasibleError, feasible_interval

DEFAULT_STEP = 0.01


class Method(enum.Enum):
    GRID_SEARCH = "GRID_SEARCH"
    CLOSED_FORM = "CLOSED_FORM"


@dataclass(frozen=True)
class PlacementResult:
    scheme: Scheme
    x_star: float
    snr_star: float
    rate_star: float
    method: Method
    feasible_interval: tuple[float, float]


def _active_scheme(scheme) -> Scheme:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.DOUBLE_PIRS:
        raise ValueError("the double-PIRS baseline has no AIRS to place")
    return scheme


def placement_grid(low: float, high: float, step: float) -> np.ndarray:
    """Uniform grid from ``low`` with spacing ``step``, always ending at ``high``."""
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step!r}")
    n = int(math.floor((high - low) / step + 1e-9))
    grid = low + step * np.arange(n + 1)
    if high - grid[-1] > 1e-9 * max(1.0, high):
        grid = np.append(grid, high)
    else:
        grid[-1] = high
    return grid


def _separated(scheme: Scheme, params: SystemParams, x: np.ndarray) -> np.ndarray:
    """Mask of placements where the AIRS does not sit on the PIRS."""
    inter = params.D - x if scheme is Scheme.TAPR else x
    return (inter != 0.0) | (params.H_A != params.H_P)


def optimize_grid(scheme, params: SystemParams, step: float = DEFAULT_STEP) -> PlacementResult:
    """Best placement on a uniform grid over the feasible interval.

    Ties go to the smaller abscissa.
    """
    scheme = _active_scheme(scheme)
    low, high = feasible_interval(scheme, params)
    grid = placement_grid(low, high, step)
    grid = grid[_separated(scheme, params, grid)]
    snr = closed_form_terms(scheme, params, grid)[0]
    i = int(np.argmax(snr))
    return PlacementResult(scheme, float(grid[i]), float(snr[i]), rate(float(snr[i])),
                           Method.GRID_SEARCH, (low, high))


def closed_form_x(scheme, params: SystemParams) -> float:
    """Stationary point of the far-field problem, before projection."""
    scheme = _active_scheme(scheme)
    a, b = ratio_a(params), ratio_b(params)
    if scheme is Scheme.TAPR:
        return a * params.D / (a + b)
    return a * b * params.D / (a * b + 1.0)


def suboptimal_closed(scheme, params: SystemParams) -> PlacementResult:
    """Far-field placement projected onto the feasible interval."""
    scheme = _active_scheme(scheme)
    low, high = feasible_interval(scheme, params)
    x = min(max(closed_form_x(scheme, params), low), high)
    metrics = snr_closed(scheme, params, x)
    return PlacementResult(scheme, x, metrics.snr, metrics.rate, Method.CLOSED_FORM, (low, high))


class Preference(enum.Enum):
    TAPR = "TAPR"
    TPAR = "TPAR"
    TIE = "TIE"


@dataclass(frozen=True)
class ComparisonVerdict:
    """Which deployment order wins.

    ``snr_gap`` is SNR(TAPR) - SNR(TPAR). ``np_below`` tells whether
    N_p < H_P / sqrt(beta) and ``pf_below`` whether P_F < P_t sigma^2 / sigma_F^2;
    either is None when exactly at its threshold.
    """

    preferred: Preference
    snr_gap: float
    np_below: bool | None
    pf_below: bool | None
    approximate: bool


def _signed_difference(u: float, v: float, rtol: float = 1e-12) -> float:
    """u - v, snapped to zero when equal up to rounding."""
    diff = u - v
    return 0.0 if abs(diff) <= rtol * max(abs(u), abs(v)) else diff


def approx_gap(params: SystemParams) -> float:
    """Factored SNR(TAPR) - SNR(TPAR) of the far-field approximation."""
    p = params
    power = _signed_difference(p.P_t / p.sigmaF2, p.pf / p.sigma2)
    size = _signed_difference(p.H_P ** 2, p.N_p ** 2 * p.beta)
    return p.beta * p.N_a / p.D ** 2 * power * size / p.H_P ** 2


def _in_amplifying_regime(params: SystemParams) -> bool:
    for scheme in (Scheme.TAPR, Scheme.TPAR):
        try:
            low, _ = feasible_interval(scheme, params)
        except InfeasibleError:
            return False
        if not closed_form_x(scheme, params) > low:
            return False
    return True


def _best_snr(scheme: Scheme, params: SystemParams, step: float) -> float:
    # a scheme that cannot reach eta >= 1 anywhere delivers nothing
    try:
        return optimize_grid(scheme, params, step).snr_star
    except InfeasibleError:
        return 0.0


def compare_schemes(params: SystemParams, step: float = DEFAULT_STEP) -> ComparisonVerdict:
    """Compare TAPR and TPAR at their respective optimized placements.

    In the amplifying regime (eta > 1 at both closed-form placements) the sign
    comes from the factored far-field gap; otherwise both schemes are
    grid-searched and their optimal SNRs compared, an infeasible scheme
    counting as zero SNR.
    """
    p = params
    size = _signed_difference(p.H_P ** 2, p.N_p ** 2 * p.beta)
    power = _signed_difference(p.P_t / p.sigmaF2, p.pf / p.sigma2)
    np_below = None if size == 0 else size > 0
    pf_below = None if power == 0 else power > 0

    approximate = _in_amplifying_regime(p)
    if approximate:
        gap = approx_gap(p)
    else:
        gap = _signed_difference(_best_snr(Scheme.TAPR, p, step), _best_snr(Scheme.TPAR, p, step))
    if gap > 0:
        preferred = Preference.TAPR
    elif gap < 0:
        preferred = Preference.TPAR
    else:
        preferred = Preference.TIE
    return ComparisonVerdict(preferred, gap, np_below, pf_below, approximate)


class Axis(enum.Enum):
    P_F = "P_F"
    N_p = "N_p"


@dataclass
class MonotonicityReport:
    scheme: Scheme
    axis: Axis
    values: list[float]
    x_stars: list[float]
    expected: str  # "non-increasing" or "non-decreasing"
    violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def expected_trend(scheme, axis) -> str:
    scheme, axis = Scheme.parse(scheme), Axis(axis)
    if axis is Axis.N_p and scheme is Scheme.TPAR:
        return "non-decreasing"
    return "non-increasing"


def monotonicity_report(scheme, params: SystemParams, axis, values: Sequence[float],
                        step: float = DEFAULT_STEP) -> MonotonicityReport:
    """Grid-search x* along one axis and flag steps against the expected trend.

    ``values`` are P_F in dBm for the P_F axis, element counts for N_p.
    A violation at index i means x*[i] moved the wrong way from x*[i-1] by
    more than rounding.
    """
    scheme, axis = _active_scheme(scheme), Axis(axis)
    x_stars = []
    for v in values:
        if axis is Axis.P_F:
            p = params.replace(P_F=dbm_to_watts(v))
        else:
            p = params.replace(N_p=int(v))
        x_stars.append(optimize_grid(scheme, p, step).x_star)
    trend = expected_trend(scheme, axis)
    sign = -1.0 if trend == "non-increasing" else 1.0
    tol = 1e-9
    violations = [i for i in range(1, len(x_stars))
                  if sign * (x_stars[i] - x_stars[i - 1]) < -tol]
    return MonotonicityReport(scheme, axis, list(values), x_stars, trend, violations)


def sweep_placements(scheme, params: SystemParams, pf_dbm: Iterable[float],
                     step: float = DEFAULT_STEP) -> list[tuple[float, PlacementResult, PlacementResult]]:
    """(P_F dBm, grid result, closed-form result) per budget."""
    out = []
    for v in pf_dbm:
        p = params.with_pf_dbm(v)
        out.append((v, optimize_grid(scheme, p, step), suboptimal_closed(scheme, p)))
    return out
