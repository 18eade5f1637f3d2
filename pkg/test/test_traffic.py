# -*- coding: utf-8 -*-
import numpy as np
import pytest

from lislsim.errors import ConfigError
from lislsim.orbital import ShellParams, GeoCoord, place_shell
from lislsim.traffic import (DEFAULT_REGIONS, DEFAULT_WEIGHT, TrafficRegion,
                             WeightedSatellite, FlowGenParams, EndpointSampler,
                             make_rng, region_weight, assign_weights,
                             weight_histogram, sample_endpoints,
                             generate_flows)

KiB = 1 << 10
MiB = 1 << 20
GiB = 1 << 30


def uniform(n):
    return [WeightedSatellite(k, 1.0) for k in range(1, n + 1)]


def test_default_regions():
    assert len(DEFAULT_REGIONS) == 7
    na = DEFAULT_REGIONS[0]
    assert na.name == 'North America'
    assert (na.lat_min, na.lat_max) == (25.0, 50.0)
    assert sorted(r.weight for r in DEFAULT_REGIONS) == \
        [2.0, 3.0, 4.0, 5.0, 8.0, 9.0, 9.5]


def test_region_weight():
    assert region_weight(GeoCoord(48, 10), DEFAULT_REGIONS) == 9.0
    assert region_weight(GeoCoord(0, -150), DEFAULT_REGIONS) == \
        DEFAULT_WEIGHT
    # Middle East and Africa overlap here
    assert region_weight(GeoCoord(30, 40), DEFAULT_REGIONS) == 5.0
    assert region_weight(GeoCoord(0, -150), DEFAULT_REGIONS, 0.5) == 0.5


def test_region_validation():
    with pytest.raises(ConfigError):
        TrafficRegion('bad', 50, 25, 0, 10, 1.0)
    with pytest.raises(ConfigError):
        TrafficRegion('bad', 0, 10, 20, 10, 1.0)
    with pytest.raises(ConfigError) as e:
        TrafficRegion('bad', 0, 10, 0, 10, 0)
    assert 'region bad' in str(e.value)


def test_assign_weights_default_shell():
    params = ShellParams()
    weights = assign_weights(place_shell(params), DEFAULT_REGIONS,
                             params.inclination_deg)
    assert len(weights) == 1584
    assert [w.id for w in weights] == list(range(1, 1585))

    histogram = dict(weight_histogram(weights))
    assert sum(histogram.values()) == 1584
    low = histogram[DEFAULT_WEIGHT]
    for weight, count in histogram.items():
        if weight != DEFAULT_WEIGHT:
            assert low > count


def test_assign_weights_without_regions():
    params = ShellParams(6, 6)
    weights = assign_weights(place_shell(params), [], 53.0, 2.5)
    assert set(w.weight for w in weights) == set([2.5])
    assert weight_histogram(weights) == [(2.5, 36)]


def test_sampler_follows_weights():
    rng = make_rng(11)
    sampler = EndpointSampler([WeightedSatellite(1, 9.0),
                               WeightedSatellite(2, 1.0)])
    heavy = sum(1 for _ in range(100000) if sampler.draw(rng) == 1)
    assert abs(heavy / 100000.0 - 0.9) < 0.01


def test_sampler_uniform_chi_square():
    n = 10
    draws = 100000
    rng = make_rng(5)
    sampler = EndpointSampler(uniform(n))
    counts = np.zeros(n)
    for _ in range(draws):
        counts[sampler.draw(rng) - 1] += 1
    expected = draws / float(n)
    chi2 = ((counts - expected) ** 2 / expected).sum()
    # 99th percentile of chi-square with 9 degrees of freedom
    assert chi2 < 21.666


def test_sampler_unequal_weights_chi_square():
    weights = [WeightedSatellite(k, float(k)) for k in range(1, 11)]
    draws = 100000
    rng = make_rng(17)
    sampler = EndpointSampler(weights)
    counts = np.zeros(10)
    for _ in range(draws):
        counts[sampler.draw(rng) - 1] += 1
    expected = draws * np.arange(1, 11) / 55.0
    chi2 = ((counts - expected) ** 2 / expected).sum()
    # 99.9th percentile of chi-square with 9 degrees of freedom
    assert chi2 < 27.877


def test_sampler_never_pairs_with_itself():
    rng = make_rng(3)
    for _ in range(1000):
        src, dst = sample_endpoints(uniform(2), rng)
        assert set([src, dst]) == set([1, 2])


def test_sampler_needs_two_satellites():
    with pytest.raises(ValueError):
        EndpointSampler(uniform(1))


def test_sampler_needs_two_positive_weights():
    weights = [WeightedSatellite(1, 0.0), WeightedSatellite(2, 0.0),
               WeightedSatellite(3, 4.0)]
    with pytest.raises(ConfigError) as e:
        EndpointSampler(weights)
    assert 'positive weight, got 1' in str(e.value)
    with pytest.raises(ConfigError):
        EndpointSampler([WeightedSatellite(1, 1.0), WeightedSatellite(2, -1.0),
                         WeightedSatellite(3, 1.0)])


def test_zero_weight_never_drawn():
    rng = make_rng(8)
    sampler = EndpointSampler([WeightedSatellite(1, 0.0),
                               WeightedSatellite(2, 1.0),
                               WeightedSatellite(3, 0.0),
                               WeightedSatellite(4, 1.0)])
    seen = set(sampler.draw(rng) for _ in range(10000))
    assert seen == set([2, 4])


def test_default_weight_must_be_positive():
    states = place_shell(ShellParams(3, 3))
    for bad in (0, 0.0, -1.0, True, '1'):
        with pytest.raises(ConfigError) as e:
            assign_weights(states, [], 53.0, bad)
        assert e.value.field == 'default_weight'


def test_flow_params_validation():
    with pytest.raises(ConfigError) as e:
        FlowGenParams(min_flow_bytes=2 * KiB, max_flow_bytes=KiB)
    assert e.value.field == 'min_flow_bytes'
    with pytest.raises(ConfigError):
        FlowGenParams(total_bytes=KiB, max_flow_bytes=MiB)
    with pytest.raises(ConfigError):
        FlowGenParams(total_bytes=0)
    with pytest.raises(ConfigError):
        FlowGenParams(seed=-1)
    with pytest.raises(ConfigError):
        FlowGenParams(seed=1 << 64)
    assert FlowGenParams(seed=(1 << 64) - 1).seed == (1 << 64) - 1


def test_fixed_size_flows():
    params = FlowGenParams(10 * KiB, KiB, KiB)
    flows = generate_flows(params, uniform(5))
    assert len(flows) == 10
    assert all(f.size_bytes == KiB for f in flows)


def test_last_flow_truncated():
    params = FlowGenParams(2 * KiB + KiB // 2, KiB, KiB)
    flows = generate_flows(params, uniform(5))
    assert [f.size_bytes for f in flows] == [KiB, KiB, KiB // 2]


def test_flows_spend_budget_exactly():
    params = FlowGenParams(64 * MiB, KiB, 10 * MiB, seed=42)
    flows = generate_flows(params, uniform(20))
    assert sum(f.size_bytes for f in flows) == 64 * MiB
    assert [f.flow_id for f in flows] == list(range(len(flows)))
    for f in flows[:-1]:
        assert KiB <= f.size_bytes <= 10 * MiB
    assert 0 < flows[-1].size_bytes <= 10 * MiB
    assert all(f.src != f.dst for f in flows)


def test_flows_are_reproducible():
    weights = uniform(30)
    a = generate_flows(FlowGenParams(GiB // 8, seed=9), weights)
    b = generate_flows(FlowGenParams(GiB // 8, seed=9), weights)
    c = generate_flows(FlowGenParams(GiB // 8, seed=10), weights)
    assert a == b
    assert a != c


def test_mean_flow_count_over_seeds():
    weights = uniform(10)
    counts = [len(generate_flows(FlowGenParams(GiB, KiB, 10 * MiB, seed),
                                 weights))
              for seed in range(100)]
    assert 195 <= np.mean(counts) <= 230
