"""Core parameter types and the bounded-transfer primitive.

Every movement level in the EnGN and HyGCN models is an instance of the
same pattern: a payload of bits moved through a channel whose per-iteration
capacity is the minimum of one or more caps (memory bandwidth, PE row width,
cache port). All arithmetic is exact integer arithmetic so that ceiling
boundaries, which decide iteration counts, are reproducible everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


def ceil_div(a: int, b: int) -> int:
    """Integer ceiling of a/b with no floating-point rounding."""
    if b == 0:
        raise ValueError("ceil_div: divisor must be >= 1, got 0")
    if a < 0 or b < 0:
        raise ValueError(f"ceil_div: arguments must be non-negative, got ({a}, {b})")
    return -(-a // b)


class Hierarchy(Enum):
    """Which pair of memory levels a movement level crosses."""

    L1_TO_L1 = "L1-L1"
    L2_TO_L1 = "L2-L1"
    L1_TO_L2 = "L1-L2"
    CACHE_TO_L1 = "L2*-L1"
    L1_TO_CACHE = "L1-L2*"


def _require_count(name: str, value: int, minimum: int = 0) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class TileParams:
    """One graph tile: K vertices (L of them high-degree), P edges,
    N input feature elements and T output feature elements per vertex."""

    K: int
    L: int
    P: int
    N: int
    T: int

    def __post_init__(self) -> None:
        for name in ("K", "L", "P", "N", "T"):
            _require_count(name, getattr(self, name))
        if self.L > self.K:
            raise ValueError(f"L must satisfy 0 <= L <= K, got L={self.L}, K={self.K}")


@dataclass(frozen=True)
class CommonHwParams:
    """Bit precision sigma and L2 memory bandwidth B (bits per iteration)."""

    sigma: int
    B: int

    def __post_init__(self) -> None:
        _require_count("sigma", self.sigma, minimum=1)
        _require_count("B", self.B, minimum=1)


@dataclass(frozen=True)
class EngnConfig:
    """EnGN hardware: M x Mprime PE array plus a dedicated vertex cache.

    Bstar is the cache bandwidth; left unset it tracks B (the common L2
    bandwidth), since no separate figure is available.
    """

    common: CommonHwParams
    M: int = 128
    Mprime: int = 16
    Bstar: int | None = None

    def __post_init__(self) -> None:
        _require_count("M", self.M, minimum=1)
        _require_count("Mprime", self.Mprime, minimum=1)
        if self.Bstar is not None:
            _require_count("Bstar", self.Bstar, minimum=1)

    @property
    def bstar(self) -> int:
        return self.Bstar if self.Bstar is not None else self.common.B

    @property
    def sigma(self) -> int:
        return self.common.sigma

    @property
    def B(self) -> int:
        return self.common.B


@dataclass(frozen=True)
class HygcnConfig:
    """HyGCN hardware: Ma SIMD aggregation cores, an Mc-PE systolic
    combination array with reuse fraction gamma, and the edge count Ps
    left after window sliding (defaults to the tile's P).

    simd_width is the per-core feature-component width used by the
    aggregation engine. mc_cap_in_elements switches the inter-phase read
    cap from Mc (verbatim, bits) to Mc*sigma for sensitivity studies.
    """

    common: CommonHwParams
    Ma: int = 32
    Mc: int = 4096
    gamma: float = 0.0
    Ps: int | None = None
    simd_width: int = 8
    mc_cap_in_elements: bool = False

    def __post_init__(self) -> None:
        _require_count("Ma", self.Ma, minimum=1)
        _require_count("Mc", self.Mc, minimum=1)
        _require_count("simd_width", self.simd_width, minimum=1)
        if self.Ps is not None:
            _require_count("Ps", self.Ps)
        if not isinstance(self.gamma, (int, float)) or isinstance(self.gamma, bool):
            raise ValueError(f"gamma must be a number in [0, 1], got {self.gamma!r}")
        if not 0.0 <= float(self.gamma) <= 1.0:
            raise ValueError(f"gamma must be within [0, 1], got {self.gamma}")

    def edges_after_sliding(self, tile: TileParams) -> int:
        return self.Ps if self.Ps is not None else tile.P

    @property
    def sigma(self) -> int:
        return self.common.sigma

    @property
    def B(self) -> int:
        return self.common.B


@dataclass(frozen=True)
class TransferMetrics:
    """Cost of one movement level.

    data_movement_bits follows the closed-form chunk x iterations count,
    which over-counts the final partial iteration; payload_bits is the
    exact number of useful bits. source_bits / caps / multiplier record
    the bounded-transfer inputs so the step oracle can replay the level;
    caps is None for levels defined directly rather than as a transfer
    loop. table_tag, when set, is the hierarchy label used in serialized
    output where it differs from the cost-weighting tag.
    """

    label: str
    hierarchy: Hierarchy
    chunk_bits: int
    iterations: int
    data_movement_bits: int
    payload_bits: int
    source_bits: int
    caps: tuple[int, ...] | None
    multiplier: int
    table_tag: str | None = None

    @property
    def hierarchy_label(self) -> str:
        return self.table_tag if self.table_tag is not None else self.hierarchy.value


def bounded_transfer(
    total_bits: int,
    caps: list[int] | tuple[int, ...],
    multiplier: int,
    *,
    label: str = "transfer",
    hierarchy: Hierarchy = Hierarchy.L2_TO_L1,
    table_tag: str | None = None,
) -> TransferMetrics:
    """Move total_bits through a channel limited by min(caps) bits per step.

    chunk      = min(total_bits, min(caps))
    iterations = ceil(total_bits / min(caps))
    data movement counts chunk x multiplier x iterations; payload counts the
    exact total_bits x multiplier. A total of zero yields zero iterations.
    """
    _require_count("total_bits", total_bits)
    _require_count("multiplier", multiplier)
    if not caps:
        raise ValueError("bounded_transfer: caps must be a non-empty list")
    for cap in caps:
        _require_count("cap", cap, minimum=1)

    tightest = min(caps)
    chunk = min(total_bits, tightest)
    iterations = ceil_div(total_bits, tightest)
    return TransferMetrics(
        label=label,
        hierarchy=hierarchy,
        chunk_bits=chunk,
        iterations=iterations,
        data_movement_bits=chunk * multiplier * iterations,
        payload_bits=total_bits * multiplier,
        source_bits=total_bits,
        caps=tuple(caps),
        multiplier=multiplier,
        table_tag=table_tag,
    )
