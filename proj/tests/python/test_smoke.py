"""Smoke tests for the fiwi extension module."""

import math

import pytest

import fiwi


@pytest.fixture(scope="module")
def cfg():
    return fiwi.validate_config(fiwi.NetworkConfig())


def test_defaults_validate(cfg):
    assert cfg.config.num_aps == 16
    assert cfg.config.backhaul_capacity == pytest.approx(15e9)


def test_validation_rejects_bad_fields():
    bad = fiwi.NetworkConfig()
    bad.nakagami_los = 1
    with pytest.raises(Exception, match="nakagami_los"):
        fiwi.validate_config(bad)


def test_zipf_properties():
    pop = fiwi.zipf_popularity(1000, 0.8)
    assert sum(pop.probs) == pytest.approx(1.0, abs=1e-12)
    assert pop.probs[0] / pop.probs[1] == pytest.approx(2**0.8)
    assert pop.prefix_hit_ratio(0) == 0.0
    assert pop.miss_ratio(1000) == 0.0


def test_blockage_probability():
    p_los, p_nlos = fiwi.blockage_probability(500.0, 0.002)
    assert p_los == pytest.approx(math.exp(-1.0))
    assert p_los + p_nlos == 1.0


def test_vabwf_budget_equality(cfg):
    gains = [1e-3, 2e-4, 5e-5]
    res = fiwi.vabwf(gains, 100, cfg)
    c = cfg.config
    cache_power = 100 * c.caching_power_coeff * c.file_size
    used = c.power_amp_coeff * res.sum_power() + cache_power
    assert used == pytest.approx(c.max_power - c.circuit_power, rel=1e-12)
    assert fiwi.verify_kkt(res, gains, 100, cfg).passes(1e-8)


def test_single_user_closed_form(cfg):
    res = fiwi.vabwf([3e-4], 0, cfg)
    assert res.powers[0] == pytest.approx(6.0 / 1.2, rel=1e-12)


def test_bound_maximization(cfg):
    pop = fiwi.zipf_popularity(cfg.config.num_files, cfg.config.zipf_delta)
    best = fiwi.maximize_upper_bound(cfg, pop)
    assert 0.0 < best.cache_utilization < 1.0
    assert best.r_plus > 0.0
    assert best.r_plus >= fiwi.upper_bound(best.p_t_star / 2.0, cfg, pop) * (1 - 1e-6)


def test_trial_determinism():
    raw = fiwi.NetworkConfig()
    raw.ue_density = 5e-5
    raw.num_files = 60
    raw.cache_size = 2.4e10
    raw.dp_bandwidth_unit = 1e8
    cfg = fiwi.validate_config(raw)
    a = fiwi.run_trial(cfg, "vabwf-dp", 7)
    b = fiwi.run_trial(cfg, "vabwf-dp", 7)
    assert a.throughput == b.throughput
    assert a.backhaul_load <= raw.backhaul_capacity
    assert a.ue_count == b.ue_count

    stats = fiwi.run_benchmark(cfg, "wf-fc", 3, 7)
    assert stats.trials == 3
    assert stats.mean_throughput > 0.0
