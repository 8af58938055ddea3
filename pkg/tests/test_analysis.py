"""Unit tests for sweeps, saturation, fitting factor, energy, and compare."""

from __future__ import annotations

import pytest

from gnnflow.analysis import (
    EnergyWeights,
    LinkRule,
    SweepPoint,
    SweepSeries,
    SweepSpec,
    compare,
    energy_estimate,
    evaluate_link,
    fitting_factor_sweep,
    run_sweep,
    saturation_point,
)
from gnnflow.core import CommonHwParams, EngnConfig, Hierarchy, HygcnConfig, TileParams, TransferMetrics
from gnnflow.engn import MovementBreakdown, evaluate_engn

K_LINKS = (LinkRule.parse("P=10*K"), LinkRule.parse("L=0.1*K"))


def engn_setup(K=1000, L=100, P=10000, M=16, B=1000, Bstar=None):
    tile = TileParams(K=K, L=L, P=P, N=30, T=5)
    cfg = EngnConfig(common=CommonHwParams(sigma=4, B=B), M=M, Mprime=M, Bstar=Bstar)
    return tile, cfg


def hygcn_setup(K=1000, L=100, P=10000, B=1000, gamma=0.0):
    tile = TileParams(K=K, L=L, P=P, N=30, T=5)
    cfg = HygcnConfig(common=CommonHwParams(sigma=4, B=B), gamma=gamma)
    return tile, cfg


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(parameter="K", values=())
    with pytest.raises(ValueError):
        SweepSpec(parameter="K", values=(1, 3, 2))
    with pytest.raises(ValueError):
        SweepSpec(parameter="K", values=(1, 1))
    with pytest.raises(ValueError):
        SweepSpec(parameter="warp_size", values=(1, 2))
    with pytest.raises(ValueError):
        SweepSpec(parameter="K", values=(1, 2), links=(LinkRule.parse("Q=2*K"),))
    SweepSpec(parameter="K", values=(4, 3, 2))  # descending is fine


def test_link_rule_parsing_and_eval():
    rule = LinkRule.parse(" P = 10*K ")
    assert (rule.target, rule.expr) == ("P", "10*K")
    assert str(rule) == "P=10*K"
    assert evaluate_link("10*K", {"K": 7}) == 70
    assert evaluate_link("0.1*K", {"K": 500}) == 50.0
    with pytest.raises(ValueError):
        LinkRule.parse("P10K")
    with pytest.raises(ValueError):
        evaluate_link("Q+1", {"K": 1})
    with pytest.raises(ValueError):
        evaluate_link("__import__('os')", {"K": 1})


def test_sweep_tile_growth_is_strictly_increasing():
    tile, cfg = engn_setup()
    spec = SweepSpec(parameter="K", values=(500, 1000, 2000, 4000), links=K_LINKS)
    series = run_sweep(spec, tile, cfg)
    totals = [p.breakdown.total_dm_bits for p in series.points]
    assert totals == sorted(totals)
    assert len(set(totals)) == len(totals)
    # linked parameters took effect
    assert series.points[0].breakdown.level("loadedges").payload_bits == 500 * 10 * 4


def test_degenerate_single_point_sweep():
    tile, cfg = engn_setup()
    series = run_sweep(SweepSpec(parameter="B", values=(1000,)), tile, cfg)
    assert len(series.points) == 1
    assert series.points[0].breakdown == evaluate_engn(tile, cfg)


def test_gamma_sweep_matches_linear_reuse():
    tile, cfg = hygcn_setup()
    spec = SweepSpec(parameter="gamma", values=(0, 0.25, 0.5, 0.75, 1))
    series = run_sweep(spec, tile, cfg)
    dms = [p.breakdown.level("loadweights").data_movement_bits for p in series.points]
    assert dms == [600, 450, 300, 150, 0]


def test_sweep_parameter_applicability():
    engn_tile, engn_cfg = engn_setup()
    hygcn_tile, hygcn_cfg = hygcn_setup()
    with pytest.raises(ValueError, match="not applicable"):
        run_sweep(SweepSpec(parameter="gamma", values=(0, 1)), engn_tile, engn_cfg)
    with pytest.raises(ValueError, match="not applicable"):
        run_sweep(SweepSpec(parameter="Bstar", values=(1, 2)), hygcn_tile, hygcn_cfg)
    with pytest.raises(ValueError, match="integer"):
        run_sweep(SweepSpec(parameter="K", values=(1.5, 2.5)), engn_tile, engn_cfg)


def test_unset_bstar_tracks_swept_bandwidth():
    tile, cfg = engn_setup(K=100, L=100, P=0, Bstar=None)  # cache traffic only
    spec = SweepSpec(parameter="B", values=(32, 64, 400))
    series = run_sweep(spec, tile, cfg)
    # loadvertcache is capped by min(Bstar, M*sigma) = min(B, 64)
    iters = [p.breakdown.level("loadvertcache").iterations for p in series.points]
    assert iters == [13, 7, 7]  # ceil(400/32), ceil(400/64), ceil(400/64)


def test_sweep_is_deterministic():
    tile, cfg = hygcn_setup()
    spec = SweepSpec(parameter="K", values=(500, 1000), links=K_LINKS)
    assert run_sweep(spec, tile, cfg) == run_sweep(spec, tile, cfg)


def test_saturation_point_engn_example():
    tile, cfg = engn_setup(K=100, L=10, P=1000)
    values = tuple(2**i for i in range(1, 13))  # 2 .. 4096
    series = run_sweep(SweepSpec(parameter="B", values=values), tile, cfg)
    totals = [p.breakdown.total_iterations for p in series.points]
    assert all(a >= b for a, b in zip(totals, totals[1:]))
    # the largest quantity min'd against B is the 4000-bit edge payload
    assert saturation_point(series) == 4096


def test_saturation_point_single_point():
    tile, cfg = engn_setup()
    series = run_sweep(SweepSpec(parameter="B", values=(64,)), tile, cfg)
    assert saturation_point(series) == 64


def test_saturation_independent_of_tile_size_for_hygcn():
    values = tuple(2**i for i in range(1, 15))
    saturations = []
    for k in (500, 2000):
        tile, cfg = hygcn_setup(K=k, L=k // 10, P=10 * k)
        series = run_sweep(SweepSpec(parameter="B", values=values), tile, cfg)
        saturations.append(saturation_point(series))
    assert saturations[0] == saturations[1]


def test_saturation_point_requires_b_series():
    tile, cfg = engn_setup()
    series = run_sweep(SweepSpec(parameter="K", values=(1000, 2000), links=K_LINKS),
                       tile, cfg)
    with pytest.raises(ValueError, match="swept over B"):
        saturation_point(series)


def test_saturation_point_reports_model_violation():
    at_b2 = evaluate_engn(*engn_setup(B=2))
    at_b4096 = evaluate_engn(*engn_setup(B=4096))
    spec = SweepSpec(parameter="B", values=(2, 4096))

    honest = SweepSeries(spec=spec, accelerator="engn",
                         points=(SweepPoint(2, at_b2), SweepPoint(4096, at_b4096)))
    assert saturation_point(honest) == 4096

    # iteration totals that grow with bandwidth cannot come from the model
    swapped = SweepSeries(spec=spec, accelerator="engn",
                          points=(SweepPoint(2, at_b4096), SweepPoint(4096, at_b2)))
    with pytest.raises(ValueError, match="model violation"):
        saturation_point(swapped)


def test_fitting_factor_series():
    tile, cfg = engn_setup(K=100, L=10, P=1000)
    series = fitting_factor_sweep(tile, cfg, [0.25, 0.5, 1, 2, 4, 8])
    totals = [p.breakdown.total_iterations for p in series.points]
    # frozen from the independent reference formulas with
    # M = round(sqrt(K*N/f)) in {110, 77, 55, 39, 27, 19}
    assert totals == [10, 13, 13, 16, 31, 81]
    assert totals[2:] == sorted(totals[2:])  # non-decreasing once f >= 1


def test_fitting_factor_array_size_inversion():
    # K*N a perfect square and f=1 puts M exactly at sqrt(K*N)
    tile = TileParams(K=90, L=9, P=900, N=10, T=5)
    cfg = EngnConfig(common=CommonHwParams(sigma=4, B=1000))
    series = fitting_factor_sweep(tile, cfg, [1])
    chunk = series.points[0].breakdown.level("aggregate").chunk_bits
    assert chunk == 30 * 29 * 5 * 4  # M = 30


def test_fitting_factor_errors():
    tile, cfg = engn_setup(K=100)
    with pytest.raises(ValueError, match="> 0"):
        fitting_factor_sweep(tile, cfg, [0])
    with pytest.raises(ValueError, match="dimension < 1"):
        fitting_factor_sweep(tile, cfg, [10**9])
    with pytest.raises(ValueError, match="linkage"):
        run_sweep(
            SweepSpec(parameter="fitting_factor", values=(1, 2), links=K_LINKS),
            tile, cfg,
        )


def _single_level_breakdown(hierarchy, bits):
    level = TransferMetrics(
        label="only", hierarchy=hierarchy, chunk_bits=bits, iterations=1,
        data_movement_bits=bits, payload_bits=bits, source_bits=bits,
        caps=(bits or 1,), multiplier=1,
    )
    return MovementBreakdown(accelerator="engn", levels=(level,))


def test_energy_weights():
    weights = EnergyWeights()
    assert energy_estimate(_single_level_breakdown(Hierarchy.L1_TO_L1, 100), weights) == 100
    assert energy_estimate(_single_level_breakdown(Hierarchy.L2_TO_L1, 100), weights) == 600
    assert energy_estimate(_single_level_breakdown(Hierarchy.L1_TO_CACHE, 100), weights) == 600
    with pytest.raises(ValueError):
        EnergyWeights(w_l1=0)


def test_energy_linear_in_weights_and_bits():
    bd = evaluate_engn(*engn_setup())
    e1 = energy_estimate(bd, EnergyWeights(w_l2=6))
    e2 = energy_estimate(bd, EnergyWeights(w_l2=12))
    e3 = energy_estimate(bd, EnergyWeights(w_l2=18))
    assert e2 - e1 == pytest.approx(e3 - e2)

    double = _single_level_breakdown(Hierarchy.L2_TO_L1, 200)
    single = _single_level_breakdown(Hierarchy.L2_TO_L1, 100)
    w = EnergyWeights()
    assert energy_estimate(double, w) == 2 * energy_estimate(single, w)


def test_ring_traffic_dominates_weighted_cost_despite_unit_weight():
    bd = evaluate_engn(*engn_setup(M=16))
    weights = EnergyWeights()
    aggregate_cost = bd.level("aggregate").data_movement_bits * weights.w_l1
    assert aggregate_cost > energy_estimate(bd, weights) / 2


def test_compare_defaults():
    tile = TileParams(K=1000, L=100, P=10000, N=30, T=5)
    common = CommonHwParams(sigma=4, B=1000)
    result = compare(tile, EngnConfig(common=common), HygcnConfig(common=common))
    assert result.total_ratio is not None and result.total_ratio > 1
    assert result.level_order[:5] == (
        "loadvertcache", "loadvertL2", "loadedges", "loadweights", "aggregate")
    # dual-engine staging levels exist only on the HyGCN side
    for label in ("writeinterphase", "combine", "readinterphase"):
        assert result.level_ratios[label] is None
        assert result.hygcn.level(label).data_movement_bits > 0
    assert result.loadvertl2_ratio == pytest.approx(1.0)


def test_compare_empty_tile_has_no_division_errors():
    tile = TileParams(K=0, L=0, P=0, N=0, T=0)
    common = CommonHwParams(sigma=4, B=1000)
    result = compare(tile, EngnConfig(common=common), HygcnConfig(common=common))
    assert result.total_ratio is None
    assert all(ratio is None for ratio in result.level_ratios.values())


def test_cache_share_halves_vertex_bank_traffic():
    lo = evaluate_engn(*engn_setup(K=1000, L=0, M=128))
    hi = evaluate_engn(*engn_setup(K=1000, L=500, M=128))
    assert hi.level("loadvertL2").data_movement_bits == pytest.approx(
        lo.level("loadvertL2").data_movement_bits / 2, rel=0.05)
