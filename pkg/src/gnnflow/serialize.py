"""Deterministic text serialization for breakdowns, sweeps, comparisons,
and energy estimates: aligned tables, CSV, and round-trippable JSON.

All bit and iteration quantities are exact integers and are printed as
such; derived floats (ratios, weighted costs) use a fixed decimal format
so identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import os
import tempfile

from .analysis import ComparisonResult, EnergyWeights, SweepSeries, energy_estimate
from .core import Hierarchy, TransferMetrics
from .engn import MovementBreakdown
from .hygcn import phase_iterations

BREAKDOWN_CSV_HEADER = "level,hierarchy,chunk_bits,iterations,data_movement_bits,payload_bits"

FORMATS = ("table", "csv", "json")


def fmt_number(value: int | float) -> str:
    """Integers verbatim; floats with six decimals, trailing zeros trimmed."""
    if isinstance(value, int):
        return str(value)
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.6f}".rstrip("0").rstrip(".")


def _table(rows: list[list[str]], right_align_from: int = 1) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [
            cell.rjust(widths[i]) if i >= right_align_from else cell.ljust(widths[i])
            for i, cell in enumerate(row)
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


# -- breakdowns -------------------------------------------------------------

def breakdown_to_csv(breakdown: MovementBreakdown) -> str:
    lines = [BREAKDOWN_CSV_HEADER]
    for lv in breakdown.levels:
        lines.append(
            f"{lv.label},{lv.hierarchy_label},{lv.chunk_bits},{lv.iterations},"
            f"{lv.data_movement_bits},{lv.payload_bits}"
        )
    lines.append(
        f"TOTAL,,,{breakdown.total_iterations},"
        f"{breakdown.total_dm_bits},{breakdown.total_payload_bits}"
    )
    return "\n".join(lines) + "\n"


def breakdown_to_table(breakdown: MovementBreakdown) -> str:
    rows = [["level", "hierarchy", "chunk_bits", "iterations",
             "data_movement_bits", "payload_bits"]]
    for lv in breakdown.levels:
        rows.append([
            lv.label, lv.hierarchy_label, str(lv.chunk_bits), str(lv.iterations),
            str(lv.data_movement_bits), str(lv.payload_bits),
        ])
    rows.append([
        "TOTAL", "", "", str(breakdown.total_iterations),
        str(breakdown.total_dm_bits), str(breakdown.total_payload_bits),
    ])
    text = f"{breakdown.accelerator} movement breakdown\n" + _table(rows, right_align_from=2)
    text += f"max single-level iterations: {breakdown.max_level_iterations}\n"
    if breakdown.accelerator == "hygcn":
        phases = phase_iterations(breakdown)
        text += (
            "phase iterations: aggregation={aggregation} combination={combination} "
            "pipelined_bound={pipelined_bound}\n".format(**phases)
        )
    return text


def _level_to_dict(lv: TransferMetrics) -> dict:
    return {
        "label": lv.label,
        "hierarchy": lv.hierarchy.value,
        "table_tag": lv.table_tag,
        "chunk_bits": lv.chunk_bits,
        "iterations": lv.iterations,
        "data_movement_bits": lv.data_movement_bits,
        "payload_bits": lv.payload_bits,
        "source_bits": lv.source_bits,
        "caps": list(lv.caps) if lv.caps is not None else None,
        "multiplier": lv.multiplier,
    }


def _level_from_dict(data: dict) -> TransferMetrics:
    return TransferMetrics(
        label=data["label"],
        hierarchy=Hierarchy(data["hierarchy"]),
        table_tag=data["table_tag"],
        chunk_bits=data["chunk_bits"],
        iterations=data["iterations"],
        data_movement_bits=data["data_movement_bits"],
        payload_bits=data["payload_bits"],
        source_bits=data["source_bits"],
        caps=tuple(data["caps"]) if data["caps"] is not None else None,
        multiplier=data["multiplier"],
    )


def breakdown_to_dict(breakdown: MovementBreakdown) -> dict:
    return {
        "accelerator": breakdown.accelerator,
        "levels": [_level_to_dict(lv) for lv in breakdown.levels],
        "totals": {
            "iterations": breakdown.total_iterations,
            "data_movement_bits": breakdown.total_dm_bits,
            "payload_bits": breakdown.total_payload_bits,
        },
    }


def breakdown_from_dict(data: dict) -> MovementBreakdown:
    return MovementBreakdown(
        accelerator=data["accelerator"],
        levels=tuple(_level_from_dict(item) for item in data["levels"]),
    )


def breakdown_to_json(breakdown: MovementBreakdown) -> str:
    return json.dumps(breakdown_to_dict(breakdown), indent=2) + "\n"


def breakdown_from_json(text: str) -> MovementBreakdown:
    return breakdown_from_dict(json.loads(text))


def emit_breakdown(breakdown: MovementBreakdown, fmt: str) -> str:
    if fmt == "table":
        return breakdown_to_table(breakdown)
    if fmt == "csv":
        return breakdown_to_csv(breakdown)
    if fmt == "json":
        return breakdown_to_json(breakdown)
    raise ValueError(f"unknown format {fmt!r} (expected table, csv, or json)")


# -- sweep series -----------------------------------------------------------

def series_to_csv(series: SweepSeries) -> str:
    lines = [f"{series.spec.parameter},{BREAKDOWN_CSV_HEADER}"]
    for point in series.points:
        value = fmt_number(point.value)
        for lv in point.breakdown.levels:
            lines.append(
                f"{value},{lv.label},{lv.hierarchy_label},{lv.chunk_bits},"
                f"{lv.iterations},{lv.data_movement_bits},{lv.payload_bits}"
            )
        bd = point.breakdown
        lines.append(
            f"{value},TOTAL,,,{bd.total_iterations},"
            f"{bd.total_dm_bits},{bd.total_payload_bits}"
        )
    return "\n".join(lines) + "\n"


def series_to_table(series: SweepSeries) -> str:
    rows = [[series.spec.parameter, "total_iterations", "data_movement_bits",
             "payload_bits", "dominant_level"]]
    for point in series.points:
        bd = point.breakdown
        dominant = max(bd.levels, key=lambda lv: lv.data_movement_bits)
        rows.append([
            fmt_number(point.value), str(bd.total_iterations),
            str(bd.total_dm_bits), str(bd.total_payload_bits), dominant.label,
        ])
    links = " ".join(str(rule) for rule in series.spec.links)
    header = f"{series.accelerator} sweep over {series.spec.parameter}"
    if links:
        header += f" (links: {links})"
    return header + "\n" + _table(rows)


def series_to_dict(series: SweepSeries) -> dict:
    return {
        "accelerator": series.accelerator,
        "parameter": series.spec.parameter,
        "links": [str(rule) for rule in series.spec.links],
        "points": [
            {"value": point.value, "breakdown": breakdown_to_dict(point.breakdown)}
            for point in series.points
        ],
    }


def series_to_json(series: SweepSeries) -> str:
    return json.dumps(series_to_dict(series), indent=2) + "\n"


def emit_series(series: SweepSeries, fmt: str) -> str:
    if fmt == "table":
        return series_to_table(series)
    if fmt == "csv":
        return series_to_csv(series)
    if fmt == "json":
        return series_to_json(series)
    raise ValueError(f"unknown format {fmt!r} (expected table, csv, or json)")


# -- comparisons ------------------------------------------------------------

def _ratio_text(ratio: float | None) -> str:
    return "undefined" if ratio is None else fmt_number(ratio)


def comparison_rows(result: ComparisonResult) -> list[tuple[str, int | None, int | None, float | None]]:
    engn_dm = {lv.label: lv.data_movement_bits for lv in result.engn.levels}
    hygcn_dm = {lv.label: lv.data_movement_bits for lv in result.hygcn.levels}
    return [
        (label, engn_dm.get(label), hygcn_dm.get(label), result.level_ratios[label])
        for label in result.level_order
    ]


def comparison_to_csv(result: ComparisonResult) -> str:
    lines = ["level,engn_dm_bits,hygcn_dm_bits,hygcn_over_engn"]
    for label, engn_dm, hygcn_dm, ratio in comparison_rows(result):
        engn_text = "" if engn_dm is None else str(engn_dm)
        hygcn_text = "" if hygcn_dm is None else str(hygcn_dm)
        lines.append(f"{label},{engn_text},{hygcn_text},{_ratio_text(ratio)}")
    lines.append(
        f"TOTAL,{result.engn.total_dm_bits},{result.hygcn.total_dm_bits},"
        f"{_ratio_text(result.total_ratio)}"
    )
    return "\n".join(lines) + "\n"


def comparison_to_table(result: ComparisonResult) -> str:
    rows = [["level", "engn_dm_bits", "hygcn_dm_bits", "hygcn/engn"]]
    for label, engn_dm, hygcn_dm, ratio in comparison_rows(result):
        rows.append([
            label,
            "-" if engn_dm is None else str(engn_dm),
            "-" if hygcn_dm is None else str(hygcn_dm),
            _ratio_text(ratio),
        ])
    rows.append([
        "TOTAL", str(result.engn.total_dm_bits), str(result.hygcn.total_dm_bits),
        _ratio_text(result.total_ratio),
    ])
    return "engn vs hygcn data movement\n" + _table(rows)


def comparison_to_json(result: ComparisonResult) -> str:
    payload = {
        "engn": breakdown_to_dict(result.engn),
        "hygcn": breakdown_to_dict(result.hygcn),
        "levels": [
            {"level": label, "engn_dm_bits": e, "hygcn_dm_bits": h, "ratio": ratio}
            for label, e, h, ratio in comparison_rows(result)
        ],
        "total_ratio": result.total_ratio,
        "loadvertL2_ratio": result.loadvertl2_ratio,
    }
    return json.dumps(payload, indent=2) + "\n"


def emit_comparison(result: ComparisonResult, fmt: str) -> str:
    if fmt == "table":
        return comparison_to_table(result)
    if fmt == "csv":
        return comparison_to_csv(result)
    if fmt == "json":
        return comparison_to_json(result)
    raise ValueError(f"unknown format {fmt!r} (expected table, csv, or json)")


# -- energy -----------------------------------------------------------------

def energy_report(breakdown: MovementBreakdown, weights: EnergyWeights, fmt: str) -> str:
    per_level = [
        (lv.label, lv.hierarchy_label, weights.for_hierarchy(lv.hierarchy),
         lv.data_movement_bits * weights.for_hierarchy(lv.hierarchy))
        for lv in breakdown.levels
    ]
    total = energy_estimate(breakdown, weights)
    if fmt == "csv":
        lines = ["level,hierarchy,weight,weighted_cost"]
        for label, tag, weight, cost in per_level:
            lines.append(f"{label},{tag},{fmt_number(weight)},{fmt_number(cost)}")
        lines.append(f"TOTAL,,,{fmt_number(total)}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "accelerator": breakdown.accelerator,
            "levels": [
                {"level": label, "hierarchy": tag, "weight": weight, "weighted_cost": cost}
                for label, tag, weight, cost in per_level
            ],
            "total_weighted_cost": total,
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "table":
        rows = [["level", "hierarchy", "weight", "weighted_cost"]]
        for label, tag, weight, cost in per_level:
            rows.append([label, tag, fmt_number(weight), fmt_number(cost)])
        rows.append(["TOTAL", "", "", fmt_number(total)])
        return (
            f"{breakdown.accelerator} weighted movement cost\n"
            + _table(rows, right_align_from=2)
        )
    raise ValueError(f"unknown format {fmt!r} (expected table, csv, or json)")


# -- file output ------------------------------------------------------------

def atomic_write(path: str, text: str) -> None:
    """Write via a temp file and rename so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".gnnflow-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
