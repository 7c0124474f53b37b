"""LOS channel synthesis: ULA steering vectors, UPA responses and the
three blocks of the double-reflection cascade.

Every surface is a horizontal UPA whose normal is the +z axis. Angles are
derived from the link direction; any other convention only rotates the
per-element phases, which the phase design removes again.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import SystemParams
from .geometry import HopDistances, Scheme, hop_distances, layout


@dataclass(frozen=True)
class ArrayShape:
    n_x: int
    n_y: int

    def __post_init__(self):
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError(f"array dimensions must be >= 1, got {self.n_x}x{self.n_y}")

    @property
    def size(self) -> int:
        return self.n_x * self.n_y

    @classmethod
    def square_ish(cls, n: int) -> "ArrayShape":
        """Factor pair of ``n`` with the smallest aspect mismatch (n_x <= n_y)."""
        if n < 1:
            raise ValueError(f"element count must be >= 1, got {n}")
        n_x = math.isqrt(n)
        while n % n_x:
            n_x -= 1
        return cls(n_x, n // n_x)


def steering_vector(theta: float, m: int) -> np.ndarray:
    """ULA response ``[1, e^{-j pi theta}, ..., e^{-j pi (m-1) theta}]``."""
    if m < 1:
        raise ValueError(f"array length must be >= 1, got {m}")
    return np.exp(-1j * np.pi * theta * np.arange(m))


def upa_response(theta: float, vartheta: float, shape: ArrayShape,
                 spacing: float, lam: float) -> np.ndarray:
    """UPA response as the Kronecker product of the x- and y-axis ULAs."""
    k = 2.0 * spacing / lam * math.sin(theta)
    return np.kron(steering_vector(k * math.cos(vartheta), shape.n_x),
                   steering_vector(k * math.sin(vartheta), shape.n_y))


def angles_from_geometry(from_pos, to_pos) -> tuple[float, float]:
    """(elevation from the vertical normal, azimuth in the array plane)."""
    d = np.asarray(to_pos, dtype=float) - np.asarray(from_pos, dtype=float)
    horizontal = math.hypot(d[0], d[1])
    if horizontal == 0.0 and d[2] == 0.0:
        raise ValueError("coincident positions have no link direction")
    return math.atan2(horizontal, abs(d[2])), math.atan2(d[1], d[0])


def los_block(from_pos, to_pos, tx_shape: Optional[ArrayShape],
              rx_shape: Optional[ArrayShape], params: SystemParams,
              tx_spacing: Optional[float] = None,
              rx_spacing: Optional[float] = None) -> np.ndarray:
    """Rank-one LOS channel of shape (N_rx, N_tx).

    ``None`` as a shape stands for a single antenna. Spacings default to half
    a wavelength.
    """
    from_pos = np.asarray(from_pos, dtype=float)
    to_pos = np.asarray(to_pos, dtype=float)
    theta, vartheta = angles_from_geometry(from_pos, to_pos)
    d = float(np.linalg.norm(to_pos - from_pos))
    half = params.lam / 2

    def response(shape, spacing):
        if shape is None:
            return np.ones(1, dtype=complex)
        return upa_response(theta, vartheta, shape, half if spacing is None else spacing, params.lam)

    a_tx = response(tx_shape, tx_spacing)
    a_rx = response(rx_shape, rx_spacing)
    gain = math.sqrt(params.beta) / d * np.exp(-2j * np.pi * d / params.lam)
    return gain * np.outer(a_rx, a_tx.conj())


@dataclass(frozen=True)
class ChannelSet:
    """Cascade ``h3 @ diag(IRS2) @ S12 @ diag(IRS1) @ g1``.

    ``h3`` is already the (conjugated) row of the last hop, so no further
    Hermitian transpose is applied when evaluating the cascade.
    """

    scheme: Scheme
    g1: np.ndarray
    S12: np.ndarray
    h3: np.ndarray
    distances: HopDistances

    @property
    def n1(self) -> int:
        return self.g1.shape[0]

    @property
    def n2(self) -> int:
        return self.h3.shape[0]


def double_pirs_sizes(params: SystemParams) -> tuple[int, int]:
    """Element split of the double-PIRS baseline: N_a + N_p shared equally."""
    total = params.N_a + params.N_p
    return total // 2, total - total // 2


def surface_shapes(scheme, params: SystemParams) -> tuple[ArrayShape, ArrayShape]:
    """Default array shapes of (IRS1, IRS2) in cascade order."""
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.TAPR:
        sizes = params.N_a, params.N_p
    elif scheme is Scheme.TPAR:
        sizes = params.N_p, params.N_a
    else:
        sizes = double_pirs_sizes(params)
    return ArrayShape.square_ish(sizes[0]), ArrayShape.square_ish(sizes[1])


def _spacings(scheme: Scheme, params: SystemParams) -> tuple[float, float]:
    if scheme is Scheme.TAPR:
        return params.delta_A, params.delta_P
    if scheme is Scheme.TPAR:
        return params.delta_P, params.delta_A
    return params.delta_P, params.delta_P


def build_channels(scheme, params: SystemParams, x_TA: float | None = None,
                   shapes: Optional[tuple[ArrayShape, ArrayShape]] = None) -> ChannelSet:
    scheme = Scheme.parse(scheme)
    hops = hop_distances(scheme, params, x_TA)
    nodes = layout(scheme, params, x_TA)
    shape1, shape2 = shapes if shapes is not None else surface_shapes(scheme, params)
    sp1, sp2 = _spacings(scheme, params)
    g1 = los_block(nodes.u_T, nodes.u_IRS1, None, shape1, params, rx_spacing=sp1)[:, 0]
    S12 = los_block(nodes.u_IRS1, nodes.u_IRS2, shape1, shape2, params, sp1, sp2)
    h3 = los_block(nodes.u_IRS2, nodes.u_R, shape2, None, params, tx_spacing=sp2)[0, :]
    return ChannelSet(scheme, g1, S12, h3, hops)
