"""The eight HyGCN movement levels and their combined breakdown.

HyGCN splits the work across two engines: Ma SIMD cores aggregate
neighbour features, hand the result to a systolic combination array of Mc
PEs through an inter-phase buffer, and the combination engine loads only
the (1 - gamma) fraction of weights that its internal reuse cannot cover.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from .core import Hierarchy, HygcnConfig, TileParams, TransferMetrics, bounded_transfer
from .engn import MovementBreakdown


def weight_load_bits(tile: TileParams, cfg: HygcnConfig) -> int:
    """N*T*sigma*(1-gamma) rounded half-up to whole bits.

    The reuse fraction is the one quantity that can make a bit total
    fractional; it is carried as an exact rational (parsed from the decimal
    form of gamma) so the rounding boundary is platform-independent.
    """
    remaining = Fraction(1) - Fraction(str(cfg.gamma))
    exact = tile.N * tile.T * cfg.sigma * remaining
    return floor(exact + Fraction(1, 2))


def hygcn_loadvertL2(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """All K vertex features from L2 into the aggregation cores."""
    return bounded_transfer(
        tile.K * cfg.sigma,
        [cfg.B, cfg.Ma * cfg.sigma],
        tile.N,
        label="loadvertL2",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def hygcn_loadedges(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Post-sliding edge list from L2, bandwidth-limited."""
    return bounded_transfer(
        cfg.edges_after_sliding(tile) * cfg.sigma,
        [cfg.B],
        1,
        label="loadedges",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def hygcn_loadweights(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Weight traffic into the systolic array, net of internal reuse."""
    return bounded_transfer(
        weight_load_bits(tile, cfg),
        [cfg.B, cfg.Mc * cfg.sigma],
        1,
        label="loadweights",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def hygcn_aggregate(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Neighbour-feature accumulation across the SIMD cores."""
    return bounded_transfer(
        tile.N * cfg.edges_after_sliding(tile) * cfg.sigma,
        [cfg.Ma * cfg.simd_width],
        1,
        label="aggregate",
        hierarchy=Hierarchy.L1_TO_L1,
    )


def hygcn_writeinterphase(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Aggregated features staged into the inter-phase buffer."""
    return bounded_transfer(
        tile.K * tile.N * cfg.sigma,
        [cfg.B],
        1,
        label="writeinterphase",
        hierarchy=Hierarchy.L1_TO_L2,
    )


def hygcn_combine(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Matrix-vector transform traffic inside the systolic array: one pass
    over the K*N aggregated features plus the N*T weights."""
    moved = (tile.K * tile.N + tile.N * tile.T) * cfg.sigma
    return TransferMetrics(
        label="combine",
        hierarchy=Hierarchy.L1_TO_L1,
        chunk_bits=moved,
        iterations=1 if moved else 0,
        data_movement_bits=moved,
        payload_bits=moved,
        source_bits=moved,
        caps=None,
        multiplier=1,
    )


def hygcn_readinterphase(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Aggregated features fetched back by the combination engine.

    The Mc cap is applied verbatim in bits per iteration; set
    mc_cap_in_elements to scale it by sigma instead.
    """
    mc_cap = cfg.Mc * cfg.sigma if cfg.mc_cap_in_elements else cfg.Mc
    return bounded_transfer(
        cfg.edges_after_sliding(tile) * tile.N * cfg.sigma,
        [cfg.B, mc_cap],
        1,
        label="readinterphase",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def hygcn_writeL2(tile: TileParams, cfg: HygcnConfig) -> TransferMetrics:
    """Final K*T output features to the output buffer."""
    return bounded_transfer(
        tile.K * tile.T * cfg.sigma,
        [cfg.B],
        1,
        label="writeL2",
        hierarchy=Hierarchy.L1_TO_L2,
    )


HYGCN_LEVELS = (
    hygcn_loadvertL2,
    hygcn_loadedges,
    hygcn_loadweights,
    hygcn_aggregate,
    hygcn_writeinterphase,
    hygcn_combine,
    hygcn_readinterphase,
    hygcn_writeL2,
)

HYGCN_LEVEL_LABELS = (
    "loadvertL2",
    "loadedges",
    "loadweights",
    "aggregate",
    "writeinterphase",
    "combine",
    "readinterphase",
    "writeL2",
)

# Engine that executes each level; used to report a pipelined iteration
# bound alongside the plain sum (the two engines can overlap, the levels
# within one engine cannot).
HYGCN_PHASES = {
    "aggregation": ("loadvertL2", "loadedges", "aggregate", "writeinterphase"),
    "combination": ("loadweights", "combine", "readinterphase", "writeL2"),
}


def evaluate_hygcn(tile: TileParams, cfg: HygcnConfig) -> MovementBreakdown:
    """All eight HyGCN movement levels for one tile, in model order."""
    return MovementBreakdown(
        accelerator="hygcn",
        levels=tuple(build(tile, cfg) for build in HYGCN_LEVELS),
    )


def phase_iterations(breakdown: MovementBreakdown) -> dict[str, int]:
    """Iteration sums per engine, plus the pipelined bound max(phases)."""
    sums = {
        phase: sum(breakdown.level(label).iterations for label in labels)
        for phase, labels in HYGCN_PHASES.items()
    }
    sums["pipelined_bound"] = max(sums.values())
    return sums
