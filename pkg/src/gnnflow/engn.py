"""The seven EnGN movement levels and their combined breakdown.

EnGN streams a tile through a single M x Mprime PE array: vertices arrive
from L2 and from a dedicated high-degree vertex cache, edges and weights
from L2, aggregation circulates partial results around a physical PE ring,
and results are written back to the cache and L2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EngnConfig,
    Hierarchy,
    TileParams,
    TransferMetrics,
    bounded_transfer,
    ceil_div,
)


@dataclass(frozen=True)
class MovementBreakdown:
    """Ordered per-level costs for one accelerator evaluation."""

    accelerator: str
    levels: tuple[TransferMetrics, ...]

    def __post_init__(self) -> None:
        labels = [lv.label for lv in self.levels]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate level labels in breakdown: {labels}")

    @property
    def total_dm_bits(self) -> int:
        return sum(lv.data_movement_bits for lv in self.levels)

    @property
    def total_iterations(self) -> int:
        return sum(lv.iterations for lv in self.levels)

    @property
    def total_payload_bits(self) -> int:
        return sum(lv.payload_bits for lv in self.levels)

    @property
    def max_level_iterations(self) -> int:
        """Largest single-level iteration count: the fully-overlapped bound."""
        return max((lv.iterations for lv in self.levels), default=0)

    def level(self, label: str) -> TransferMetrics:
        for lv in self.levels:
            if lv.label == label:
                return lv
        raise KeyError(f"no level named {label!r} in {self.accelerator} breakdown")


def engn_loadvertcache(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """High-degree vertex features from the dedicated cache to the PE rows."""
    return bounded_transfer(
        tile.L * cfg.sigma,
        [cfg.bstar, cfg.M * cfg.sigma],
        tile.N,
        label="loadvertcache",
        hierarchy=Hierarchy.CACHE_TO_L1,
    )


def engn_loadvertL2(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """Remaining vertex features from the L2 bank to the PE rows."""
    return bounded_transfer(
        (tile.K - tile.L) * cfg.sigma,
        [cfg.B, cfg.M * cfg.sigma],
        tile.N,
        label="loadvertL2",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def engn_loadedges(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """Edge list from L2, limited by memory bandwidth only."""
    return bounded_transfer(
        tile.P * cfg.sigma,
        [cfg.B],
        1,
        label="loadedges",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def engn_loadweights(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """N x T weight matrix streamed in T-element columns."""
    return bounded_transfer(
        tile.T * cfg.sigma,
        [cfg.B, cfg.M * cfg.sigma],
        tile.N,
        label="loadweights",
        hierarchy=Hierarchy.L2_TO_L1,
    )


def engn_aggregate(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """Ring traffic between the M PEs while partial results circulate.

    Defined directly, not as a bounded transfer: each iteration every PE
    forwards T elements to its M-1 ring successors. The feature-overflow
    term clamps to zero when the array rows cover the feature vector.
    """
    m, t, sigma = cfg.M, tile.T, cfg.sigma
    iterations = ceil_div(tile.K, m)
    if tile.N > m:
        iterations += ceil_div(tile.K * (tile.N - m), m)
    chunk = m * (m - 1) * t * sigma
    moved = chunk * iterations
    return TransferMetrics(
        label="aggregate",
        hierarchy=Hierarchy.L1_TO_L1,
        chunk_bits=chunk,
        iterations=iterations,
        data_movement_bits=moved,
        payload_bits=moved,
        source_bits=moved,
        caps=None,
        multiplier=1,
    )


def engn_writecache(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """High-degree vertex results back into the dedicated cache."""
    # Destination is the vertex cache, so this is weighted with the cache
    # cost; the serialized tag keeps the generic store label.
    return bounded_transfer(
        tile.L * cfg.sigma,
        [cfg.M * cfg.sigma, cfg.bstar],
        tile.T,
        label="writecache",
        hierarchy=Hierarchy.L1_TO_CACHE,
        table_tag="L1-L2",
    )


def engn_writeL2(tile: TileParams, cfg: EngnConfig) -> TransferMetrics:
    """Remaining vertex results back to the L2 bank."""
    return bounded_transfer(
        (tile.K - tile.L) * cfg.sigma,
        [cfg.M * cfg.sigma, cfg.B],
        tile.T,
        label="writeL2",
        hierarchy=Hierarchy.L1_TO_L2,
    )


ENGN_LEVELS = (
    engn_loadvertcache,
    engn_loadvertL2,
    engn_loadedges,
    engn_loadweights,
    engn_aggregate,
    engn_writecache,
    engn_writeL2,
)

ENGN_LEVEL_LABELS = (
    "loadvertcache",
    "loadvertL2",
    "loadedges",
    "loadweights",
    "aggregate",
    "writecache",
    "writeL2",
)


def evaluate_engn(tile: TileParams, cfg: EngnConfig) -> MovementBreakdown:
    """All seven EnGN movement levels for one tile, in model order."""
    return MovementBreakdown(
        accelerator="engn",
        levels=tuple(build(tile, cfg) for build in ENGN_LEVELS),
    )
