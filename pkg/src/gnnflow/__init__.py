"""Analytical data-movement models for the EnGN and HyGCN GNN accelerators."""

from .analysis import (
    ComparisonResult,
    EnergyWeights,
    LinkRule,
    SweepPoint,
    SweepSeries,
    SweepSpec,
    compare,
    energy_estimate,
    fitting_factor_sweep,
    run_sweep,
    saturation_point,
)
from .config import RunConfig, emit_config, load_config
from .core import (
    CommonHwParams,
    EngnConfig,
    Hierarchy,
    HygcnConfig,
    TileParams,
    TransferMetrics,
    bounded_transfer,
    ceil_div,
)
from .engn import MovementBreakdown, evaluate_engn
from .hygcn import evaluate_hygcn
from .oracle import Discrepancy, TransferTrace, check_breakdown, simulate_transfer
from .serialize import emit_breakdown
from .svgplot import emit_plot

__version__ = "0.1.0"

__all__ = [
    "CommonHwParams",
    "ComparisonResult",
    "Discrepancy",
    "EnergyWeights",
    "EngnConfig",
    "Hierarchy",
    "HygcnConfig",
    "LinkRule",
    "MovementBreakdown",
    "RunConfig",
    "SweepPoint",
    "SweepSeries",
    "SweepSpec",
    "TileParams",
    "TransferMetrics",
    "TransferTrace",
    "bounded_transfer",
    "ceil_div",
    "check_breakdown",
    "compare",
    "emit_breakdown",
    "emit_config",
    "emit_plot",
    "energy_estimate",
    "evaluate_engn",
    "evaluate_hygcn",
    "fitting_factor_sweep",
    "load_config",
    "run_sweep",
    "saturation_point",
    "simulate_transfer",
    "__version__",
]
