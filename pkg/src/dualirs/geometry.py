"""Node placement and hop distances for the three deployments.

Everything lives in the y = 0 plane: Tx at the origin, Rx at (D, 0, 0), the
PIRS hovering above one terminal and the AIRS at abscissa ``x_TA``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import SystemParams


class Scheme(enum.Enum):
    TAPR = "TAPR"  # Tx -> AIRS -> PIRS -> Rx
    TPAR = "TPAR"  # Tx -> PIRS -> AIRS -> Rx
    DOUBLE_PIRS = "DOUBLE_PIRS"  # Tx -> PIRS -> PIRS -> Rx baseline

    @classmethod
    def parse(cls, name) -> "Scheme":
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper().replace("-", "_")
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown scheme {name!r}") from None


class PlacementError(ValueError):
    """AIRS abscissa outside [0, D]."""


@dataclass(frozen=True)
class NodeLayout:
    """Positions of the terminals and of the two surfaces in cascade order.

    ``u_IRS1`` is the surface hit first by the Tx signal. ``x_TA`` is None
    for the double-PIRS baseline.
    """

    scheme: Scheme
    u_T: np.ndarray
    u_R: np.ndarray
    u_IRS1: np.ndarray
    u_IRS2: np.ndarray
    x_TA: float | None

    @property
    def u_A(self) -> np.ndarray | None:
        return {Scheme.TAPR: self.u_IRS1, Scheme.TPAR: self.u_IRS2}.get(self.scheme)

    @property
    def u_P(self) -> np.ndarray | None:
        return {Scheme.TAPR: self.u_IRS2, Scheme.TPAR: self.u_IRS1}.get(self.scheme)


@dataclass(frozen=True)
class HopDistances:
    """The three hop lengths Tx->IRS1, IRS1->IRS2, IRS2->Rx (m)."""

    d1: float
    d2: float
    d3: float

    def __iter__(self):
        return iter((self.d1, self.d2, self.d3))


def _check_x(params: SystemParams, x_TA: float) -> float:
    x = float(x_TA)
    if not (math.isfinite(x) and 0.0 <= x <= params.D):
        raise PlacementError(f"x_TA = {x_TA!r} outside [0, {params.D}]")
    return x


def layout(scheme, params: SystemParams, x_TA: float | None = None) -> NodeLayout:
    scheme = Scheme.parse(scheme)
    u_T = np.array([0.0, 0.0, 0.0])
    u_R = np.array([params.D, 0.0, 0.0])
    if scheme is Scheme.DOUBLE_PIRS:
        return NodeLayout(scheme, u_T, u_R, np.array([0.0, 0.0, params.H_P]),
                          np.array([params.D, 0.0, params.H_P]), None)
    x = _check_x(params, x_TA)
    u_A = np.array([x, 0.0, params.H_A])
    if scheme is Scheme.TAPR:
        return NodeLayout(scheme, u_T, u_R, u_A, np.array([params.D, 0.0, params.H_P]), x)
    return NodeLayout(scheme, u_T, u_R, np.array([0.0, 0.0, params.H_P]), u_A, x)


def hop_distances(scheme, params: SystemParams, x_TA: float | None = None) -> HopDistances:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.DOUBLE_PIRS:
        return HopDistances(params.H_P, params.D, params.H_P)
    x = _check_x(params, x_TA)
    dz = params.H_P - params.H_A
    if scheme is Scheme.TAPR:
        hops = HopDistances(math.hypot(x, params.H_A), math.hypot(params.D - x, dz), params.H_P)
    else:
        hops = HopDistances(params.H_P, math.hypot(x, dz), math.hypot(params.D - x, params.H_A))
    if min(hops) <= 0.0:
        raise PlacementError(f"x_TA = {x} puts the AIRS on top of the PIRS")
    return hops
