from fractions import Fraction

import numpy as np
import pytest

from tncodes.polarization import (
    ChannelStats,
    FrozenMap,
    bec_channel_stats,
    bec_density_evolution,
    degenerate_bound,
    select_channels,
    union_bound,
    wilson_interval,
)


def test_density_evolution_first_levels():
    rates, _ = bec_density_evolution(Fraction(1, 2), 1)
    assert rates == [Fraction(3, 4), Fraction(1, 4)]
    rates, _ = bec_density_evolution(Fraction(1, 2), 2)
    assert rates == [
        Fraction(15, 16), Fraction(9, 16), Fraction(7, 16), Fraction(1, 16)
    ]


@pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 4), Fraction(2, 3)])
@pytest.mark.parametrize("L", [1, 4, 8])
def test_density_evolution_is_a_martingale(eps, L):
    rates, _ = bec_density_evolution(eps, L)
    assert sum(rates) == eps * len(rates)


def test_z_rates_are_reflected_x_rates():
    stats = bec_channel_stats(0.25, 6)
    np.testing.assert_allclose(stats.err_z, stats.err_x[::-1])
    assert stats.trials == 0  # exact stats marker


def test_density_evolution_polarizes():
    rates, _ = bec_density_evolution(0.25, 10)
    rates = np.asarray(rates, dtype=float)
    frac_extreme = np.mean((rates < 1e-6) | (rates > 1 - 1e-6))
    assert frac_extreme > 0.5


def _stats(err_x, err_z, **meta):
    err_x = np.asarray(err_x, float)
    err_z = np.asarray(err_z, float)
    return ChannelStats(len(err_x), err_x, err_z, trials=100, **meta)


def test_select_channels_keeps_best_worst_quadrature():
    stats = _stats([0.4, 0.01, 0.3, 0.02], [0.1, 0.02, 0.5, 0.2])
    fmap = select_channels(stats, 2)
    assert [r == "data" for r in fmap.roles] == [False, True, False, True]
    assert fmap.k == 2


def test_select_channels_ties_break_by_wire_index():
    stats = _stats([0.3, 0.3, 0.3], [0.3, 0.3, 0.3])
    fmap = select_channels(stats, 2)
    assert fmap.roles[:2] == ("data", "data")


def test_frozen_role_reveals_worse_quadrature():
    # wire 0: x worse -> freeze0 (x syndrome); wire 1: z worse -> freezeplus
    stats = _stats([0.9, 0.1], [0.1, 0.9])
    fmap = select_channels(stats, 0)
    assert fmap.roles == ("freeze0", "freezeplus")


def test_select_rejects_bad_k():
    stats = _stats([0.1], [0.1])
    with pytest.raises(ValueError):
        select_channels(stats, 2)


def test_union_and_degenerate_bounds_by_hand():
    stats = _stats([0.10, 0.30, 0.02], [0.20, 0.05, 0.40])
    fmap = FrozenMap(3, 1, ("data", "freeze0", "freezeplus"))
    raw, clamped = union_bound(stats, fmap)
    # data: 0.10 + 0.20; freeze0 (x revealed): z rate 0.05; freezeplus: x 0.02
    assert raw == pytest.approx(0.37)
    assert clamped == pytest.approx(0.37)
    assert degenerate_bound(stats) == pytest.approx(0.10 + 0.05 + 0.02)


def test_union_bound_clamps_at_one():
    stats = _stats([0.9, 0.9], [0.9, 0.9])
    fmap = FrozenMap(2, 2, ("data", "data"))
    raw, clamped = union_bound(stats, fmap)
    assert raw == pytest.approx(3.6)
    assert clamped == 1.0


def test_union_bound_size_mismatch():
    stats = _stats([0.1], [0.1])
    with pytest.raises(ValueError):
        union_bound(stats, FrozenMap(2, 1, ("data", "freeze0")))


def test_frozen_map_validation():
    with pytest.raises(ValueError):
        FrozenMap(2, 1, ("data", "bogus"))
    with pytest.raises(ValueError):
        FrozenMap(2, 2, ("data", "freeze0"))  # only one data wire


def test_frozen_map_json_roundtrip():
    fmap = FrozenMap(2, 1, ("data", "freezeplus"), "depol:0.1", "polar", "standard")
    assert FrozenMap.from_json(fmap.to_json()) == fmap


def test_channel_stats_csv_roundtrip():
    stats = _stats([0.125, 0.5], [0.25, 0.0625], channel="erasure:0.25")
    text = stats.to_csv(comments=["config_hash=deadbeef0123"])
    assert text.startswith("# config_hash=deadbeef0123\n")
    back = ChannelStats.from_csv(text, channel="erasure:0.25")
    np.testing.assert_allclose(back.err_x, stats.err_x)
    np.testing.assert_allclose(back.err_z, stats.err_z)
    assert back.trials == stats.trials and back.channel == stats.channel


def test_channel_stats_csv_rejects_other_headers():
    with pytest.raises(ValueError):
        ChannelStats.from_csv("a,b\n1,2\n")


def test_wilson_interval():
    low, high = wilson_interval(0, 100)
    assert low == pytest.approx(0.0, abs=1e-12) and 0.0 < high < 0.05
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
    assert low == pytest.approx(0.40383, abs=1e-4)
    low, high = wilson_interval(100, 100)
    assert high == pytest.approx(1.0) and low > 0.95
