"""Scalability studies on top of the movement models: parameter sweeps,
bandwidth-saturation detection, the array fitting-factor study, weighted
energy estimates, and the side-by-side accelerator comparison."""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, replace

from .core import EngnConfig, Hierarchy, HygcnConfig, TileParams
from .engn import MovementBreakdown, evaluate_engn
from .hygcn import evaluate_hygcn

TILE_PARAMETERS = ("K", "L", "P", "N", "T")
COMMON_PARAMETERS = ("sigma", "B")
ENGN_PARAMETERS = ("M", "Mprime", "Bstar")
HYGCN_PARAMETERS = ("Ma", "Mc", "gamma", "Ps")

SWEEPABLE = {
    "engn": TILE_PARAMETERS + COMMON_PARAMETERS + ENGN_PARAMETERS + ("fitting_factor",),
    "hygcn": TILE_PARAMETERS + COMMON_PARAMETERS + HYGCN_PARAMETERS,
}

_FLOAT_PARAMETERS = {"gamma"}

_BINARY_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}


def round_half_up(value: float) -> int:
    """Nearest integer with .5 rounding away from zero toward +inf."""
    return math.floor(value + 0.5)


def _eval_expr(node: ast.AST, env: dict[str, int | float]) -> int | float:
    if isinstance(node, ast.Expression):
        return _eval_expr(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ValueError(f"linkage rule references unknown parameter {node.id!r}")
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPS:
        return _BINARY_OPS[type(node.op)](
            _eval_expr(node.left, env), _eval_expr(node.right, env)
        )
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval_expr(node.operand, env)
    raise ValueError(f"unsupported linkage expression element: {ast.dump(node)}")


def evaluate_link(expr: str, env: dict[str, int | float]) -> int | float:
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"invalid linkage expression {expr!r}: {exc.msg}") from exc
    return _eval_expr(tree, env)


@dataclass(frozen=True)
class LinkRule:
    """Derived-parameter update applied at every sweep point, e.g. P = 10*K."""

    target: str
    expr: str

    @classmethod
    def parse(cls, text: str) -> "LinkRule":
        if "=" not in text:
            raise ValueError(f"linkage rule must look like NAME=EXPR, got {text!r}")
        target, expr = text.split("=", 1)
        return cls(target.strip(), expr.strip())

    def __str__(self) -> str:
        return f"{self.target}={self.expr}"


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple[int | float, ...]
    links: tuple[LinkRule, ...] = ()

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("sweep values must be non-empty")
        diffs = [b - a for a, b in zip(self.values, self.values[1:])]
        if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ValueError(f"sweep values must be strictly monotone, got {self.values}")
        known = set(SWEEPABLE["engn"]) | set(SWEEPABLE["hygcn"])
        if self.parameter not in known:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}")
        for rule in self.links:
            if rule.target not in known or rule.target == "fitting_factor":
                raise ValueError(f"linkage rule targets unknown parameter {rule.target!r}")


@dataclass(frozen=True)
class SweepPoint:
    value: int | float
    breakdown: MovementBreakdown


@dataclass(frozen=True)
class SweepSeries:
    spec: SweepSpec
    accelerator: str
    points: tuple[SweepPoint, ...]


@dataclass(frozen=True)
class EnergyWeights:
    """Relative cost per moved bit for each hierarchy crossing. An L2
    access costs roughly six register-file accesses; the dedicated vertex
    cache has no published figure and defaults to the L2 weight."""

    w_l1: float = 1.0
    w_l2: float = 6.0
    w_cache: float = 6.0

    def __post_init__(self) -> None:
        for name in ("w_l1", "w_l2", "w_cache"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    def for_hierarchy(self, hierarchy: Hierarchy) -> float:
        if hierarchy is Hierarchy.L1_TO_L1:
            return self.w_l1
        if hierarchy in (Hierarchy.L2_TO_L1, Hierarchy.L1_TO_L2):
            return self.w_l2
        return self.w_cache


def _accelerator_of(cfg: EngnConfig | HygcnConfig) -> str:
    if isinstance(cfg, EngnConfig):
        return "engn"
    if isinstance(cfg, HygcnConfig):
        return "hygcn"
    raise ValueError(f"unsupported hardware config type: {type(cfg).__name__}")


def _base_env(
    tile: TileParams, cfg: EngnConfig | HygcnConfig
) -> dict[str, int | float | None]:
    # Bstar and Ps stay None while unset so they keep tracking B and P
    # across sweep points; _read_view resolves them for link expressions.
    env: dict[str, int | float | None] = {
        "K": tile.K, "L": tile.L, "P": tile.P, "N": tile.N, "T": tile.T,
        "sigma": cfg.common.sigma, "B": cfg.common.B,
    }
    if isinstance(cfg, EngnConfig):
        env.update(M=cfg.M, Mprime=cfg.Mprime, Bstar=cfg.Bstar)
    else:
        env.update(Ma=cfg.Ma, Mc=cfg.Mc, gamma=cfg.gamma, Ps=cfg.Ps)
    return env


def _read_view(env: dict[str, int | float | None]) -> dict[str, int | float]:
    view = dict(env)
    if view.get("Bstar") is None and "Bstar" in view:
        view["Bstar"] = view["B"]
    if view.get("Ps") is None and "Ps" in view:
        view["Ps"] = view["P"]
    return {name: value for name, value in view.items() if value is not None}


def _coerce(name: str, value: int | float) -> int | float:
    if name in _FLOAT_PARAMETERS:
        return float(value)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"parameter {name} requires an integer value, got {value}")
        return int(value)
    return value


def _materialize(
    env: dict[str, int | float | None], cfg: EngnConfig | HygcnConfig
) -> tuple[TileParams, EngnConfig | HygcnConfig]:
    tile = TileParams(K=env["K"], L=env["L"], P=env["P"], N=env["N"], T=env["T"])
    common = replace(cfg.common, sigma=env["sigma"], B=env["B"])
    if isinstance(cfg, EngnConfig):
        new_cfg: EngnConfig | HygcnConfig = replace(
            cfg, common=common, M=env["M"], Mprime=env["Mprime"], Bstar=env["Bstar"]
        )
    else:
        new_cfg = replace(
            cfg, common=common, Ma=env["Ma"], Mc=env["Mc"],
            gamma=env["gamma"], Ps=env["Ps"],
        )
    return tile, new_cfg


def run_sweep(
    spec: SweepSpec, tile: TileParams, cfg: EngnConfig | HygcnConfig
) -> SweepSeries:
    """Evaluate the model at every swept value with linkage rules applied."""
    accelerator = _accelerator_of(cfg)
    if spec.parameter not in SWEEPABLE[accelerator]:
        raise ValueError(
            f"parameter {spec.parameter!r} is not applicable to {accelerator}"
        )
    if spec.parameter == "fitting_factor":
        if spec.links:
            raise ValueError("fitting_factor sweeps do not take linkage rules")
        return fitting_factor_sweep(tile, cfg, list(spec.values))

    evaluate = evaluate_engn if accelerator == "engn" else evaluate_hygcn
    points = []
    for value in spec.values:
        env = _base_env(tile, cfg)
        env[spec.parameter] = _coerce(spec.parameter, value)
        for rule in spec.links:
            derived = evaluate_link(rule.expr, _read_view(env))
            if rule.target not in _FLOAT_PARAMETERS and isinstance(derived, float):
                derived = round_half_up(derived)
            env[rule.target] = _coerce(rule.target, derived)
        point_tile, point_cfg = _materialize(env, cfg)
        points.append(SweepPoint(value=value, breakdown=evaluate(point_tile, point_cfg)))
    return SweepSeries(spec=spec, accelerator=accelerator, points=tuple(points))


def saturation_point(series: SweepSeries) -> int | float:
    """Smallest swept bandwidth whose iteration total already matches the
    total at the largest swept bandwidth (the over-provisioning threshold)."""
    if series.spec.parameter != "B":
        raise ValueError("saturation_point requires a series swept over B")
    points = sorted(series.points, key=lambda p: p.value)
    for prev, cur in zip(points, points[1:]):
        if cur.breakdown.total_iterations > prev.breakdown.total_iterations:
            raise ValueError(
                "model violation: total_iterations increased from "
                f"{prev.breakdown.total_iterations} at B={prev.value} to "
                f"{cur.breakdown.total_iterations} at B={cur.value}"
            )
    saturated = points[-1].breakdown.total_iterations
    return next(
        p.value for p in points if p.breakdown.total_iterations == saturated
    )


def fitting_factor_sweep(
    tile: TileParams, cfg: EngnConfig, factors: list[float]
) -> SweepSeries:
    """Evaluate EnGN with a square array sized so K*N/M^2 hits each factor.

    The factor is inverted to M = Mprime = round(sqrt(K*N/f)), ties half-up.
    """
    if not isinstance(cfg, EngnConfig):
        raise ValueError("fitting_factor_sweep applies to EnGN configurations only")
    spec = SweepSpec(parameter="fitting_factor", values=tuple(factors))
    points = []
    for factor in spec.values:
        if factor <= 0:
            raise ValueError(f"fitting factor must be > 0, got {factor}")
        m = round_half_up(math.sqrt(tile.K * tile.N / factor))
        if m < 1:
            raise ValueError(f"fitting factor {factor} yields PE array dimension < 1")
        sized = replace(cfg, M=m, Mprime=m)
        points.append(SweepPoint(value=factor, breakdown=evaluate_engn(tile, sized)))
    return SweepSeries(spec=spec, accelerator="engn", points=tuple(points))


def energy_estimate(breakdown: MovementBreakdown, weights: EnergyWeights) -> float:
    """Relative movement cost: data_movement_bits weighted per hierarchy."""
    return sum(
        level.data_movement_bits * weights.for_hierarchy(level.hierarchy)
        for level in breakdown.levels
    )


@dataclass(frozen=True)
class ComparisonResult:
    """Paired breakdowns plus hygcn/engn data-movement ratios per level.

    Ratios are None when a level is missing on either side or the EnGN
    side moved zero bits; consumers print those as 'undefined'.
    """

    engn: MovementBreakdown
    hygcn: MovementBreakdown
    level_order: tuple[str, ...]
    level_ratios: dict[str, float | None]
    total_ratio: float | None

    @property
    def loadvertl2_ratio(self) -> float | None:
        return self.level_ratios.get("loadvertL2")


def compare(
    tile: TileParams, engn_cfg: EngnConfig, hygcn_cfg: HygcnConfig
) -> ComparisonResult:
    """Evaluate both accelerators on the same tile and tabulate ratios."""
    engn_bd = evaluate_engn(tile, engn_cfg)
    hygcn_bd = evaluate_hygcn(tile, hygcn_cfg)
    engn_dm = {lv.label: lv.data_movement_bits for lv in engn_bd.levels}
    hygcn_dm = {lv.label: lv.data_movement_bits for lv in hygcn_bd.levels}

    order = [lv.label for lv in engn_bd.levels]
    order += [lv.label for lv in hygcn_bd.levels if lv.label not in engn_dm]

    ratios: dict[str, float | None] = {}
    for label in order:
        if label in engn_dm and label in hygcn_dm and engn_dm[label] > 0:
            ratios[label] = hygcn_dm[label] / engn_dm[label]
        else:
            ratios[label] = None

    total_ratio = (
        hygcn_bd.total_dm_bits / engn_bd.total_dm_bits
        if engn_bd.total_dm_bits > 0
        else None
    )
    return ComparisonResult(
        engn=engn_bd,
        hygcn=hygcn_bd,
        level_order=tuple(order),
        level_ratios=ratios,
        total_ratio=total_ratio,
    )
