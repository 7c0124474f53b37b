"""Receiver SNR and rate.

Two independent routes are provided. :func:`snr_matrix` multiplies out the
complex cascade and is the reference; :func:`snr_closed` evaluates the
distance-only expressions obtained after optimal phasing and is checked
against it. :func:`snr_approx` is the far-field approximation used for the
closed-form placements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ChannelSet, build_channels
from .config import SystemParams
from .geometry import PlacementError, Scheme, hop_distances
from .reflection import (InfeasibleError, ReflectionDesign, amplification_power,
                         min_feasible_x, optimal_design)

# relative slack when checking a design against the amplification budget
POWER_RTOL = 1e-9


@dataclass(frozen=True)
class LinkMetrics:
    signal_power: float
    airs_noise_power: float
    rx_noise_power: float
    snr: float
    rate: float

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.snr) if self.snr > 0 else -math.inf


def rate(snr):
    """Achievable rate log2(1 + snr) in bps/Hz."""
    if np.any(np.asarray(snr) < 0):
        raise ValueError(f"SNR must be non-negative, got {snr!r}")
    return np.log2(1.0 + snr) if isinstance(snr, np.ndarray) else math.log2(1.0 + snr)


def _metrics(signal: float, airs_noise: float, sigma2: float) -> LinkMetrics:
    snr = signal / (airs_noise + sigma2)
    return LinkMetrics(signal, airs_noise, sigma2, snr, rate(snr))


def snr_matrix(scheme, params: SystemParams, x_TA: float | None = None,
               design: Optional[ReflectionDesign] = None,
               channels: Optional[ChannelSet] = None) -> LinkMetrics:
    """SNR from the explicit complex cascade.

    Without ``design`` the optimal phases and budget-tight gain are used.
    The double-PIRS baseline transmits with ``P_t + P_F`` and adds no
    amplification noise.
    """
    scheme = Scheme.parse(scheme)
    if channels is None:
        channels = build_channels(scheme, params, x_TA)
    if design is None:
        design = optimal_design(scheme, params, x_TA, channels)
    phi1, phi2 = design.cascade_order(scheme)
    theta1 = np.exp(1j * phi1)
    theta2 = np.exp(1j * phi2)

    if scheme is Scheme.DOUBLE_PIRS:
        if design.eta != 1.0:
            raise InfeasibleError("passive surfaces cannot amplify (eta must be 1)")
        cascade = (channels.h3 * theta2) @ channels.S12 @ (theta1 * channels.g1)
        return _metrics((params.P_t + params.pf) * abs(cascade) ** 2, 0.0, params.sigma2)

    if design.eta < 1.0:
        raise InfeasibleError(f"eta = {design.eta} < 1")
    spent = amplification_power(scheme, params, channels, design)
    if spent > params.pf * (1.0 + POWER_RTOL):
        raise InfeasibleError(f"design spends {spent:.6g} W > P_F = {params.pf:.6g} W")

    upstream = (channels.h3 * theta2) @ channels.S12
    cascade = design.eta * (upstream @ (theta1 * channels.g1))
    # row vector seen by the AIRS noise on its way to the Rx
    if scheme is Scheme.TAPR:
        downstream = design.eta * upstream * theta1
    else:
        downstream = design.eta * channels.h3 * theta2
    noise = params.sigmaF2 * float(np.vdot(downstream, downstream).real)
    return _metrics(params.P_t * abs(cascade) ** 2, noise, params.sigma2)


def _coefficients(params: SystemParams) -> tuple[float, float, float]:
    c1 = params.sigmaF2 * params.pf * params.beta * params.N_p ** 2
    c2 = params.sigma2 * params.P_t * params.H_P ** 2
    c3 = params.H_P ** 2 * params.sigmaF2 * params.sigma2 / params.beta
    return c1, c2, c3


def ratio_a(params: SystemParams) -> float:
    """P_t sigma^2 / (P_F sigma_F^2): transmit-side vs amplifier-side SNR weight."""
    return params.P_t * params.sigma2 / (params.pf * params.sigmaF2)


def ratio_b(params: SystemParams) -> float:
    """beta N_p^2 / H_P^2: power gain of the PIRS hop above its terminal."""
    return params.beta * params.N_p ** 2 / params.H_P ** 2


def _squared_hops(scheme: Scheme, params: SystemParams, x):
    """(d1^2, d2^2, d3^2) for scalar or array x, with TAPR/TPAR hop order."""
    x = np.asarray(x, dtype=float)
    dz2 = (params.H_P - params.H_A) ** 2
    if scheme is Scheme.TAPR:
        return x ** 2 + params.H_A ** 2, (params.D - x) ** 2 + dz2, params.H_P ** 2
    return params.H_P ** 2, x ** 2 + dz2, (params.D - x) ** 2 + params.H_A ** 2


def closed_form_terms(scheme, params: SystemParams, x):
    """Vectorized closed-form (snr, signal, airs_noise) over placements ``x``.

    No range checking; see :func:`snr_closed` for the checked scalar API.
    """
    scheme = Scheme.parse(scheme)
    p = params
    c1, c2, c3 = _coefficients(p)
    sq1, sq2, sq3 = _squared_hops(scheme, p, x)
    if scheme is Scheme.TAPR:
        d_ta2, d_ap2 = sq1, sq2
        snr = (p.P_t * p.pf * p.beta ** 2 * p.N_a * p.N_p ** 2
               / (c1 * d_ta2 + c2 * d_ap2 + c3 * d_ta2 * d_ap2))
        eta2 = p.pf * d_ta2 / (p.N_a * (p.P_t * p.beta + d_ta2 * p.sigmaF2))
        noise = p.sigmaF2 * eta2 * p.N_a * p.N_p ** 2 * p.beta ** 2 / (sq3 * d_ap2)
        signal = p.P_t * eta2 * p.N_a ** 2 * p.N_p ** 2 * p.beta ** 3 / (d_ta2 * d_ap2 * sq3)
    elif scheme is Scheme.TPAR:
        d_ap2, d_ar2 = sq2, sq3
        a = ratio_a(p)
        snr = (p.N_a * p.beta ** 2 * p.N_p ** 2 * p.P_t * p.pf
               / (c2 / a * d_ap2 + a * c1 * d_ar2 + c3 * d_ap2 * d_ar2))
        eta2 = p.pf * d_ap2 * sq1 / (p.N_a * (p.P_t * p.beta ** 2 * p.N_p ** 2 + d_ap2 * p.sigmaF2 * sq1))
        noise = p.sigmaF2 * eta2 * p.N_a * p.beta / d_ar2
        signal = p.P_t * eta2 * p.N_a ** 2 * p.N_p ** 2 * p.beta ** 3 / (sq1 * d_ap2 * d_ar2)
    else:
        raise ValueError("closed forms exist for TAPR and TPAR only")
    return snr, signal, noise


def _check_range(scheme: Scheme, params: SystemParams, x_TA: float) -> float:
    x = float(x_TA)
    low = min_feasible_x(scheme, params)
    slack = 1e-12 * params.D
    if not (low - slack <= x <= params.D + slack):
        if low > params.D:
            raise InfeasibleError(f"no feasible placement: x_TA >= {low:.6g} m > D")
        raise PlacementError(f"x_TA = {x} outside feasible range [{low:.6g}, {params.D}]")
    hop_distances(scheme, params, min(max(x, 0.0), params.D))
    return x


def snr_closed(scheme, params: SystemParams, x_TA: float) -> LinkMetrics:
    """Closed-form SNR after optimal phasing and budget-tight amplification."""
    scheme = Scheme.parse(scheme)
    x = _check_range(scheme, params, x_TA)
    snr, signal, noise = (float(v) for v in closed_form_terms(scheme, params, x))
    return LinkMetrics(signal, noise, params.sigma2, snr, rate(snr))


def snr_approx(scheme, params: SystemParams) -> float:
    """Far-field SNR at the closed-form placement, valid while eta > 1."""
    scheme = Scheme.parse(scheme)
    p = params
    scale = p.beta * p.N_a / p.D ** 2
    if scheme is Scheme.TAPR:
        return scale * (p.P_t / p.sigmaF2 + p.pf * p.N_p ** 2 * p.beta / (p.sigma2 * p.H_P ** 2))
    if scheme is Scheme.TPAR:
        return scale * (p.P_t * p.N_p ** 2 * p.beta / (p.sigmaF2 * p.H_P ** 2) + p.pf / p.sigma2)
    raise ValueError("approximate SNR exists for TAPR and TPAR only")


def dominance_ratio(params: SystemParams) -> float:
    """Ratio to D of the distance scale below which the product-distance
    noise term is negligible in both closed-form denominators."""
    p = params
    sb = math.sqrt(p.beta)
    sigma, sigma_f = math.sqrt(p.sigma2), math.sqrt(p.sigmaF2)
    first = sb * p.N_p * math.sqrt(p.P_t * p.beta) / (p.H_P * sigma_f) + math.sqrt(p.pf * p.beta) / sigma
    second = sb * p.N_p * math.sqrt(p.pf * p.beta) / (p.H_P * sigma) + math.sqrt(p.P_t * p.beta) / sigma_f
    return min(first, second) / p.D


def dominance_condition(params: SystemParams, threshold: float = 10.0) -> tuple[bool, float]:
    """Whether the far-field approximation applies, with the ratio to D."""
    ratio = dominance_ratio(params)
    return ratio >= threshold, ratio
