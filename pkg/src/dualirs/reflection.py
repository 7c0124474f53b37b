"""Phase design of both surfaces and the AIRS amplification factor."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet
from .config import SystemParams
from .geometry import Scheme, hop_distances

TWO_PI = 2.0 * np.pi


class InfeasibleError(ValueError):
    """The AIRS cannot satisfy eta >= 1 under its amplification budget."""


@dataclass(frozen=True)
class ReflectionDesign:
    """Phase shifts (rad, in [0, 2pi)) of both surfaces and the common gain.

    For the double-PIRS baseline ``phi_A`` holds the Tx-side PIRS and
    ``eta`` is 1.
    """

    phi_P: np.ndarray
    phi_A: np.ndarray
    eta: float

    def cascade_order(self, scheme) -> tuple[np.ndarray, np.ndarray]:
        """(IRS1, IRS2) phase vectors in propagation order."""
        if Scheme.parse(scheme) is Scheme.TPAR:
            return self.phi_P, self.phi_A
        return self.phi_A, self.phi_P


def optimal_phases(scheme, channels: ChannelSet) -> tuple[np.ndarray, np.ndarray]:
    """Phases that make every term of the cascaded sum real and positive.

    Uses the rank-one structure ``S12[j, i] = S12[j, 0] S12[0, i] / S12[0, 0]``,
    so the first surface cancels ``S12[0, i] g1[i]`` and the second cancels
    ``h3[j] S12[j, 0] / S12[0, 0]``. Returns ``(phi_A, phi_P)``.
    """
    scheme = Scheme.parse(scheme)
    S = channels.S12
    phi1 = -np.angle(S[0, :] * channels.g1)
    phi2 = -np.angle(channels.h3 * S[:, 0]) + np.angle(S[0, 0])
    phi1 = np.mod(phi1, TWO_PI)
    phi2 = np.mod(phi2, TWO_PI)
    if scheme is Scheme.TPAR:
        return phi2, phi1
    return phi1, phi2


def _budget_margin(params: SystemParams) -> float:
    margin = params.pf - params.N_a * params.sigmaF2
    if margin <= 0:
        raise InfeasibleError(
            f"P_F = {params.pf:.6g} W does not exceed the amplification noise floor "
            f"N_a*sigmaF2 = {params.N_a * params.sigmaF2:.6g} W")
    return margin


def incident_power_per_element(scheme, params: SystemParams, x_TA: float) -> float:
    """Signal power reaching one AIRS element, per unit transmit power."""
    scheme = Scheme.parse(scheme)
    d1, d2, _ = hop_distances(scheme, params, x_TA)
    if scheme is Scheme.TAPR:
        return params.beta / d1 ** 2
    if scheme is Scheme.TPAR:
        return params.beta ** 2 * params.N_p ** 2 / (d1 ** 2 * d2 ** 2)
    raise ValueError("the double-PIRS baseline has no active surface")


def amplification_factor(scheme, params: SystemParams, x_TA: float) -> float:
    """Common AIRS gain spending the budget P_F exactly.

    Raises :class:`InfeasibleError` when the budget is below the noise floor
    or the resulting gain would be below one.
    """
    _budget_margin(params)
    g = incident_power_per_element(scheme, params, x_TA)
    eta2 = params.pf / (params.N_a * (params.P_t * g + params.sigmaF2))
    eta = math.sqrt(eta2)
    # relative slack absorbs rounding at the boundary x = min_feasible_x
    if eta < 1.0 - 1e-12:
        raise InfeasibleError(f"eta = {eta:.12g} < 1 at x_TA = {x_TA}")
    return max(eta, 1.0)


def min_feasible_x(scheme, params: SystemParams) -> float:
    """Smallest x_TA with eta >= 1 (0 if the whole segment is feasible)."""
    scheme = Scheme.parse(scheme)
    margin = _budget_margin(params)
    if scheme is Scheme.TAPR:
        x2 = params.N_a * params.beta * params.P_t / margin - params.H_A ** 2
    elif scheme is Scheme.TPAR:
        x2 = (params.N_a * params.N_p ** 2 * params.beta ** 2 * params.P_t
              / (margin * params.H_P ** 2) - (params.H_P - params.H_A) ** 2)
    else:
        raise ValueError("the double-PIRS baseline has no placement constraint")
    return math.sqrt(max(0.0, x2))


def feasible_interval(scheme, params: SystemParams) -> tuple[float, float]:
    low = min_feasible_x(scheme, params)
    if low > params.D:
        raise InfeasibleError(f"eta >= 1 requires x_TA >= {low:.6g} m > D = {params.D} m")
    return low, params.D


def optimal_design(scheme, params: SystemParams, x_TA: float | None,
                   channels: ChannelSet) -> ReflectionDesign:
    scheme = Scheme.parse(scheme)
    phi_A, phi_P = optimal_phases(scheme, channels)
    if scheme is Scheme.DOUBLE_PIRS:
        return ReflectionDesign(phi_P, phi_A, 1.0)
    return ReflectionDesign(phi_P, phi_A, amplification_factor(scheme, params, x_TA))


def amplification_power(scheme, params: SystemParams, channels: ChannelSet,
                        design: ReflectionDesign) -> float:
    """Power radiated by the AIRS, evaluated on the matrices themselves.

    ``eta^2 (P_t ||Theta_A g||^2 + sigmaF2 ||Theta_A||_F^2)`` where ``g`` is
    the signal vector arriving at the AIRS.
    """
    scheme = Scheme.parse(scheme)
    theta_A = np.exp(1j * design.phi_A)
    if scheme is Scheme.TAPR:
        incident = channels.g1
    elif scheme is Scheme.TPAR:
        incident = channels.S12 @ (np.exp(1j * design.phi_P) * channels.g1)
    else:
        raise ValueError("the double-PIRS baseline has no active surface")
    forwarded = theta_A * incident
    return design.eta ** 2 * (params.P_t * float(np.vdot(forwarded, forwarded).real)
                              + params.sigmaF2 * float(np.sum(np.abs(theta_A) ** 2)))
