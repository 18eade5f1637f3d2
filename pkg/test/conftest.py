# -*- coding: utf-8 -*-
import logging

import pytest
from click.testing import CliRunner

from lislsim import json
from lislsim.orbital import ShellParams, SatelliteState, place_shell
from lislsim.simulator import Simulator
from lislsim.topology import (Arrangement, SatelliteRecord, generate_records,
                              build_graphs)


SMALL_SHELL = {
    'SHELL_PLANES': 4,
    'SHELL_SATS_PER_PLANE': 4,
    'TRAFFIC_TOTAL_BYTES': 1 << 20,
    'TRAFFIC_MIN_FLOW_BYTES': 4 << 10,
    'TRAFFIC_MAX_FLOW_BYTES': 64 << 10,
    'SIM_CHUNK_BYTES': 4096,
}


@pytest.fixture
def small_config():
    return dict(SMALL_SHELL)


@pytest.fixture
def sim(tmpdir, small_config):
    return Simulator(small_config, root_path=str(tmpdir))


@pytest.fixture
def config_file(tmpdir, small_config):
    def inner(**overrides):
        config = dict(small_config)
        config.update(overrides)
        path = tmpdir.join('config.json')
        path.write(json.dumps(config))
        return str(path)
    return inner


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def make_graph():
    """Builds a ShellGraph straight from ``{id: [neighbor, ...]}``."""
    def inner(adjacency, altitude_km=550.0):
        records = [SatelliteRecord(k, altitude_km, len(v), tuple(v))
                   for k, v in sorted(adjacency.items())]
        states = [SatelliteState(k, 0, 0, 0.0, 0.0, altitude_km)
                  for k in adjacency]
        return build_graphs(records, states)[altitude_km]
    return inner


@pytest.fixture
def chain(make_graph):
    """A line of ``hops`` links: 1 -> 2 -> ... -> hops + 1."""
    def inner(hops):
        adjacency = dict((k, [k + 1]) for k in range(1, hops + 1))
        adjacency[hops + 1] = []
        return make_graph(adjacency)
    return inner


def shell_graph(params, arrangement):
    graphs = build_graphs(generate_records(params, arrangement),
                          place_shell(params))
    return graphs[params.altitude_km]


@pytest.fixture(scope='session')
def default_graphs():
    params = ShellParams()
    return dict((a, shell_graph(params, a)) for a in Arrangement)


@pytest.fixture(scope='session')
def small_graphs():
    params = ShellParams(4, 4, 550.0, 53.0)
    return dict((a, shell_graph(params, a)) for a in Arrangement)


@pytest.fixture(autouse=True)
def reset_logger():
    yield
    logger = logging.getLogger('lislsim')
    del logger.handlers[:]
    logger.__class__ = logging.Logger
