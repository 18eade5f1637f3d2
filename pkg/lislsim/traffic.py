# -*- coding: utf-8 -*-
"""Region-weighted traffic generation.

Every satellite is weighted by the rectangular population regions its
sub-satellite point falls in (the heaviest region wins where boxes
overlap).  Flows are then drawn all at once: endpoints proportional to
weight, sizes uniform over a byte range, until a total budget is spent.

Randomness comes from numpy's ``Generator`` over the PCG64 bit generator,
seeded from :attr:`FlowGenParams.seed`, so flow lists are reproducible
across platforms.
"""
from collections import namedtuple, Counter

import numpy as np

from .errors import ConfigError
from .orbital import subsatellite_point


DEFAULT_WEIGHT = 1.0


class TrafficRegion(namedtuple('TrafficRegion', [
        'name', 'lat_min', 'lat_max', 'lon_min', 'lon_max', 'weight'])):
    __slots__ = ()

    def __new__(cls, name, lat_min, lat_max, lon_min, lon_max, weight):
        field = 'region %s' % name
        if not lat_min <= lat_max:
            raise ConfigError(field, 'lat_min %r > lat_max %r'
                              % (lat_min, lat_max))
        if not lon_min <= lon_max:
            raise ConfigError(field, 'lon_min %r > lon_max %r'
                              % (lon_min, lon_max))
        if not weight > 0:
            raise ConfigError(field, 'weight must be > 0, got %r' % weight)
        return super(TrafficRegion, cls).__new__(
            cls, name, float(lat_min), float(lat_max), float(lon_min),
            float(lon_max), float(weight))

    def contains(self, pos):
        return (self.lat_min <= pos.lat_deg <= self.lat_max and
                self.lon_min <= pos.lon_deg <= self.lon_max)


# North America's latitude band is [25, 50]; the published table's
# "[25, -50]" would cover the open Pacific instead.
DEFAULT_REGIONS = (
    TrafficRegion('North America', 25, 50, -130, -60, 8.0),
    TrafficRegion('Europe', 35, 60, -15, 45, 9.0),
    TrafficRegion('Asia', 10, 55, 60, 150, 9.5),
    TrafficRegion('Middle East', 12, 38, 30, 65, 5.0),
    TrafficRegion('South America', -55, 15, -85, -30, 4.0),
    TrafficRegion('Africa', -35, 37, -20, 55, 3.0),
    TrafficRegion('Oceania', -50, -10, 110, 180, 2.0),
)


WeightedSatellite = namedtuple('WeightedSatellite', ['id', 'weight'])

DataFlow = namedtuple('DataFlow', ['flow_id', 'src', 'dst', 'size_bytes'])


class FlowGenParams(namedtuple('FlowGenParams', [
        'total_bytes', 'min_flow_bytes', 'max_flow_bytes', 'seed'])):
    __slots__ = ()

    def __new__(cls, total_bytes=1 << 30, min_flow_bytes=1 << 10,
                max_flow_bytes=10 << 20, seed=0):
        for field, value in (('total_bytes', total_bytes),
                             ('min_flow_bytes', min_flow_bytes),
                             ('max_flow_bytes', max_flow_bytes)):
            if isinstance(value, bool) or not isinstance(value, int) \
                    or value <= 0:
                raise ConfigError(field, 'must be a positive integer, got %r'
                                  % (value,))
        if min_flow_bytes > max_flow_bytes:
            raise ConfigError('min_flow_bytes', 'exceeds max_flow_bytes '
                              '(%d > %d)' % (min_flow_bytes, max_flow_bytes))
        if max_flow_bytes > total_bytes:
            raise ConfigError('max_flow_bytes', 'exceeds total_bytes '
                              '(%d > %d)' % (max_flow_bytes, total_bytes))
        if isinstance(seed, bool) or not isinstance(seed, int) or \
                not 0 <= seed < 1 << 64:
            raise ConfigError('seed', 'must be a 64-bit unsigned integer, '
                              'got %r' % (seed,))
        return super(FlowGenParams, cls).__new__(
            cls, total_bytes, min_flow_bytes, max_flow_bytes, seed)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def region_weight(pos, regions, default_weight=DEFAULT_WEIGHT):
    rv = None
    for region in regions:
        if region.contains(pos) and (rv is None or region.weight > rv):
            rv = region.weight
    if rv is None:
        return default_weight
    return rv


def assign_weights(states, regions, inclination_deg,
                   default_weight=DEFAULT_WEIGHT):
    if isinstance(default_weight, bool) or \
            not isinstance(default_weight, (int, float)) or \
            not default_weight > 0:
        raise ConfigError('default_weight', 'must be > 0, got %r'
                          % (default_weight,))
    return [WeightedSatellite(s.id, region_weight(
        subsatellite_point(s, inclination_deg), regions, default_weight))
        for s in states]


def weight_histogram(weights):
    """Number of satellites per distinct weight, ascending by weight."""
    return sorted(Counter(w.weight for w in weights).items())


class _WeightTable(object):
    """Cumulative weights over a fixed list of satellites."""

    def __init__(self, weights):
        self.ids = [w.id for w in weights]
        self.cdf = np.cumsum([w.weight for w in weights], dtype=float)
        self.total = self.cdf[-1]

    def draw(self, rng):
        idx = int(np.searchsorted(self.cdf, rng.random() * self.total,
                                  side='right'))
        return self.ids[min(idx, len(self.ids) - 1)]


def _check_weights(weights, where=''):
    negative = [w for w in weights if w.weight < 0]
    if negative:
        raise ConfigError('weights', 'satellite %d has negative weight %r'
                          % (negative[0].id, negative[0].weight))
    positive = sum(1 for w in weights if w.weight > 0)
    if positive < 2:
        raise ConfigError('weights', 'need at least 2 satellites with '
                          'positive weight%s, got %d' % (where, positive))


class EndpointSampler(object):
    """Draws (src, dst) pairs with probability proportional to weight.
    The destination is redrawn until it differs from the source.  With
    ``shell_of`` (id -> altitude) the destination is drawn among the
    satellites of the source's shell only.
    """

    def __init__(self, weights, shell_of=None):
        weights = list(weights)
        if len(weights) < 2:
            raise ValueError('need at least 2 satellites to pick flow '
                             'endpoints, got %d' % len(weights))
        _check_weights(weights)
        self.sources = _WeightTable(weights)
        self.shell_of = shell_of
        self.within = None
        if shell_of is not None:
            members = {}
            for w in weights:
                members.setdefault(shell_of[w.id], []).append(w)
            if len(members) > 1:
                self.within = {}
                for shell, group in sorted(members.items()):
                    _check_weights(group, ' in the %g km shell' % shell)
                    self.within[shell] = _WeightTable(group)

    def draw(self, rng):
        return self.sources.draw(rng)

    def sample(self, rng):
        src = self.sources.draw(rng)
        table = self.sources
        if self.within is not None:
            table = self.within[self.shell_of[src]]
        dst = table.draw(rng)
        while dst == src:
            dst = table.draw(rng)
        return src, dst


def sample_endpoints(weights, rng, shell_of=None):
    return EndpointSampler(weights, shell_of).sample(rng)


def generate_flows(params, weights, rng=None, shell_of=None):
    """Generates flows until ``params.total_bytes`` is spent.  The last
    flow is truncated so the sizes add up to the budget exactly.
    """
    if rng is None:
        rng = make_rng(params.seed)
    sampler = EndpointSampler(weights, shell_of)
    remaining = params.total_bytes
    rv = []
    while remaining > 0:
        src, dst = sampler.sample(rng)
        size = int(rng.integers(params.min_flow_bytes, params.max_flow_bytes,
                                endpoint=True))
        size = min(size, remaining)
        rv.append(DataFlow(len(rv), src, dst, size))
        remaining -= size
    return rv
