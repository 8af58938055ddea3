"""Step-level transfer simulator used to cross-check the closed forms.

The simulator moves a payload greedily, one bandwidth-limited step at a
time, and therefore knows nothing about the min/ceil algebra it is meant
to validate: matching iteration counts are evidence, not tautology.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import CommonHwParams, EngnConfig, HygcnConfig, TileParams, TransferMetrics
from .engn import MovementBreakdown


@dataclass(frozen=True)
class TransferTrace:
    """Per-step moved-bit counts for one simulated transfer."""

    steps: tuple[int, ...]

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def total_moved(self) -> int:
        return sum(self.steps)


@dataclass(frozen=True)
class Discrepancy:
    """One mismatch between a breakdown level and the step simulation."""

    level: str
    field: str
    expected: int
    actual: int

    def __str__(self) -> str:
        return (
            f"{self.level}: {self.field} mismatch "
            f"(oracle {self.expected}, breakdown {self.actual})"
        )


def simulate_transfer(total_bits: int, caps: list[int] | tuple[int, ...]) -> TransferTrace:
    """Move total_bits with at most min(caps) bits per step."""
    if not caps:
        raise ValueError("simulate_transfer: caps must be a non-empty list")
    for cap in caps:
        if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
            raise ValueError(f"simulate_transfer: caps must be integers >= 1, got {cap!r}")
    if not isinstance(total_bits, int) or isinstance(total_bits, bool) or total_bits < 0:
        raise ValueError(f"simulate_transfer: total_bits must be a non-negative integer, got {total_bits!r}")

    step = min(caps)
    full, remainder = divmod(total_bits, step)
    steps = [step] * full
    if remainder:
        steps.append(remainder)
    return TransferTrace(steps=tuple(steps))


def _check_level(level: TransferMetrics) -> list[Discrepancy]:
    if level.caps is None:
        # Directly-defined levels (ring aggregation, systolic combine) are
        # validated by re-derivation in the test suite, not by stepping.
        return []
    trace = simulate_transfer(level.source_bits, level.caps)
    found = []
    if trace.step_count != level.iterations:
        found.append(
            Discrepancy(level.label, "iterations", trace.step_count, level.iterations)
        )
    expected_payload = trace.total_moved * level.multiplier
    if expected_payload != level.payload_bits:
        found.append(
            Discrepancy(level.label, "payload_bits", expected_payload, level.payload_bits)
        )
    return found


def check_breakdown(breakdown: MovementBreakdown) -> list[Discrepancy]:
    """Replay every transfer-shaped level; return all mismatches (empty = agreement)."""
    found: list[Discrepancy] = []
    for level in breakdown.levels:
        found.extend(_check_level(level))
    return found


def random_case(
    rng: random.Random, accelerator: str
) -> tuple[TileParams, EngnConfig | HygcnConfig]:
    """Draw a plausible (tile, config) pair for randomized cross-checks.

    Ranges are wide enough to exercise every cap and degenerate case
    (empty tiles, single-PE arrays, full reuse) while keeping step counts
    small enough for bulk simulation.
    """
    k = rng.randint(0, 2000)
    tile = TileParams(
        K=k,
        L=rng.randint(0, k),
        P=rng.randint(0, 20000),
        N=rng.randint(0, 64),
        T=rng.randint(0, 16),
    )
    common = CommonHwParams(sigma=rng.choice((1, 2, 4, 8)), B=rng.randint(64, 4096))
    if accelerator == "engn":
        config: EngnConfig | HygcnConfig = EngnConfig(
            common=common,
            M=rng.randint(1, 256),
            Mprime=rng.randint(1, 256),
            Bstar=rng.choice((None, rng.randint(64, 4096))),
        )
    elif accelerator == "hygcn":
        config = HygcnConfig(
            common=common,
            Ma=rng.randint(1, 128),
            Mc=rng.randint(64, 8192),
            gamma=rng.randint(0, 20) / 20,
            Ps=rng.choice((None, rng.randint(0, 20000))),
        )
    else:
        raise ValueError(f"unknown accelerator {accelerator!r}")
    return tile, config
