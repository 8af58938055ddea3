"""Unit tests for config loading, defaults, overrides, and round-trips."""

from __future__ import annotations

import pytest

from gnnflow.config import emit_config, load_config, parse_overrides


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_builtin_defaults():
    run = load_config(accelerator="engn")
    assert (run.tile.K, run.tile.L, run.tile.P, run.tile.N, run.tile.T) == (
        1000, 100, 10000, 30, 5)
    assert (run.engn.common.sigma, run.engn.common.B) == (4, 1000)
    assert (run.engn.M, run.engn.Mprime) == (128, 16)
    assert run.engn.bstar == 1000  # tracks B
    assert (run.hygcn.Ma, run.hygcn.Mc, run.hygcn.gamma) == (32, 4096, 0.0)
    assert run.hygcn.edges_after_sliding(run.tile) == 10000  # tracks P
    assert run.hardware is run.engn


def test_empty_file_gives_defaults(tmp_path):
    run = load_config(path=write(tmp_path, ""), accelerator="engn")
    assert (run.engn.M, run.engn.Mprime) == (128, 16)


def test_tile_linkage_defaults(tmp_path):
    path = write(tmp_path, "[tile]\nK = 500\n")
    run = load_config(path=path)
    assert run.tile.P == 5000
    assert run.tile.L == 50

    path = write(tmp_path, "[tile]\nK = 500\nP = 123\nL = 7\n")
    run = load_config(path=path)
    assert (run.tile.P, run.tile.L) == (123, 7)


def test_file_values_and_overrides(tmp_path):
    path = write(tmp_path, "[tile]\nK = 700\n\n[hardware]\nB = 512\ngamma = 0.25\n")
    run = load_config(path=path, overrides=parse_overrides(["K=900", "Ma=16"]))
    assert run.tile.K == 900
    assert run.hygcn.common.B == 512
    assert run.hygcn.gamma == 0.25
    assert run.hygcn.Ma == 16


def test_invalid_gamma_names_field_and_range(tmp_path):
    path = write(tmp_path, "[hardware]\ngamma = 1.5\n")
    with pytest.raises(ValueError, match=r"gamma.*\[0, 1\]"):
        load_config(path=path)


def test_unknown_key_and_section_rejected(tmp_path):
    with pytest.raises(ValueError, match="unknown key 'Q'"):
        load_config(path=write(tmp_path, "[tile]\nQ = 1\n"))
    with pytest.raises(ValueError, match=r"unknown section \[misc\]"):
        load_config(path=write(tmp_path, "[misc]\nK = 1\n"))
    # tile keys do not belong in [hardware]
    with pytest.raises(ValueError, match="unknown key"):
        load_config(path=write(tmp_path, "[hardware]\nK = 1\n"))


def test_parse_error_carries_line_context(tmp_path):
    path = write(tmp_path, "[tile]\nK = 1000\nwhat is this\n")
    with pytest.raises(ValueError, match="line"):
        load_config(path=path)


def test_bad_value_names_key(tmp_path):
    path = write(tmp_path, "[tile]\nK = twelve\n")
    with pytest.raises(ValueError, match="K"):
        load_config(path=path)


def test_missing_file_is_an_error():
    with pytest.raises(ValueError, match="cannot read"):
        load_config(path="/nonexistent/gnnflow.cfg")


def test_overrides_validation():
    with pytest.raises(ValueError, match="KEY=VALUE"):
        parse_overrides(["K"])
    with pytest.raises(ValueError, match="unknown parameter"):
        parse_overrides(["Q=1"])
    assert parse_overrides(["mc_cap_in_elements=true"]) == {"mc_cap_in_elements": True}
    assert parse_overrides(["gamma=0.5", "K=10"]) == {"gamma": 0.5, "K": 10}


def test_emit_load_round_trip(tmp_path):
    original = load_config(
        overrides={"K": 1234, "gamma": 0.3, "Bstar": 777, "simd_width": 4},
        accelerator="hygcn",
    )
    path = write(tmp_path, emit_config(original), name="emitted.cfg")
    reloaded = load_config(path=path, accelerator="hygcn")
    assert reloaded == original


def test_emit_round_trip_with_tracking_defaults(tmp_path):
    original = load_config()
    text = emit_config(original)
    assert "Bstar" not in text  # unset values keep tracking, not frozen
    assert "Ps" not in text
    reloaded = load_config(path=write(tmp_path, text, name="defaults.cfg"))
    assert reloaded == original


def test_unknown_accelerator_rejected():
    with pytest.raises(ValueError, match="unknown accelerator"):
        load_config(accelerator="tpu")
    run = load_config()
    with pytest.raises(ValueError, match="no accelerator selected"):
        _ = run.hardware
