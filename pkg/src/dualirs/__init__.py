"""Link simulator and AIRS placement optimizer for a point-to-point link
aided by one active and one passive intelligent reflecting surface."""
from .channel import ArrayShape, ChannelSet, build_channels
from .config import (ParamsError, SystemParams, db_to_linear, dbm_to_watts, default_params,
                     dump_params, load_params)
from .geometry import Scheme, hop_distances, layout
from .link import LinkMetrics, rate, snr_approx, snr_closed, snr_matrix
from .placement import compare_schemes, optimize_grid, suboptimal_closed
from .reflection import InfeasibleError, ReflectionDesign, amplification_factor, min_feasible_x

__all__ = [
    "ArrayShape", "ChannelSet", "InfeasibleError", "LinkMetrics", "ParamsError",
    "ReflectionDesign", "Scheme", "SystemParams", "amplification_factor", "build_channels",
    "compare_schemes", "db_to_linear", "dbm_to_watts", "default_params", "dump_params",
    "hop_distances", "layout", "load_params", "min_feasible_x", "optimize_grid", "rate",
    "snr_approx", "snr_closed", "snr_matrix", "suboptimal_closed",
]
