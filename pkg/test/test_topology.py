# -*- coding: utf-8 -*-
import os

import pytest

from lislsim import json
from lislsim.errors import ConfigError, RecordLoadError, TopologyError
from lislsim.orbital import ShellParams, SatelliteState, place_shell
from lislsim.topology import (Arrangement, SatelliteRecord, plane_index,
                              neighbor_ids, apply_arrangement,
                              generate_records, write_records, read_records,
                              build_graphs, diameter, unreachable_pair,
                              is_strongly_connected, max_hops_formula)

from conftest import shell_graph


def test_neighbor_ids():
    assert neighbor_ids(0, 0, 72, 22) == (22, 2, 1563, 23)
    assert neighbor_ids(0, 1, 72, 22) == (1, 3, 1564, 24)
    assert neighbor_ids(71, 21, 72, 22) == (1583, 1563, 1562, 22)


def test_neighbor_ids_guards():
    with pytest.raises(ValueError):
        neighbor_ids(72, 0, 72, 22)
    with pytest.raises(ValueError):
        neighbor_ids(0, -1, 72, 22)
    with pytest.raises(ValueError):
        neighbor_ids(0, 0, 2, 22)


def test_plane_index():
    assert plane_index(1, 22) == (0, 0)
    assert plane_index(23, 22) == (1, 0)
    assert plane_index(1584, 22) == (71, 21)


def test_apply_arrangement():
    n = (22, 2, 1563, 23)
    assert apply_arrangement(n, Arrangement.FULL4) == [22, 2, 1563, 23]
    assert apply_arrangement(n, Arrangement.THREE_WITHIN_PLANE) == \
        [2, 1563, 23]
    assert apply_arrangement(n, Arrangement.THREE_BETWEEN_PLANES) == \
        [22, 2, 23]
    assert apply_arrangement(n, Arrangement.TWO) == [2, 23]


def test_arrangement_parse():
    assert Arrangement.parse('full4') is Arrangement.FULL4
    assert Arrangement.parse('1') is Arrangement.FULL4
    assert Arrangement.parse(4) is Arrangement.TWO
    assert Arrangement.parse('THREE_WITHIN_PLANE') is \
        Arrangement.THREE_WITHIN_PLANE
    assert Arrangement.parse(' three-between-planes ') is \
        Arrangement.THREE_BETWEEN_PLANES
    assert Arrangement.parse(Arrangement.TWO) is Arrangement.TWO
    with pytest.raises(ConfigError) as e:
        Arrangement.parse('five')
    assert e.value.field == 'arrangement'
    assert [a.number for a in Arrangement] == [1, 2, 3, 4]
    assert [a.lisl_count for a in Arrangement] == [4, 3, 3, 2]


def test_generate_default_records():
    params = ShellParams()
    records = generate_records(params, Arrangement.FULL4)
    assert len(records) == 1584
    assert all(r.lisl_count == 4 and len(r.neighbors) == 4
               for r in records)
    records = generate_records(params, Arrangement.TWO)
    assert len(records) == 1584
    assert all(r.lisl_count == 2 for r in records)
    assert all(r.altitude_km == 540.0 for r in records)


def test_generate_three_by_three():
    records = generate_records(ShellParams(3, 3), Arrangement.FULL4)
    assert records[4].id == 5
    assert records[4].neighbors == (4, 6, 2, 8)


def test_neighbors_reconstruct_from_id():
    q = 22
    for record in generate_records(ShellParams(), Arrangement.FULL4):
        p, i = plane_index(record.id, q)
        assert neighbor_ids(p, i, 72, q) == record.neighbors


def test_records_round_trip(tmpdir):
    records = generate_records(ShellParams(), Arrangement.FULL4)
    directory = str(tmpdir.join('satellites'))
    write_records(records, directory)
    assert len(os.listdir(directory)) == 1584
    assert read_records(directory) == records

    with open(os.path.join(directory, 'sat_1.json')) as f:
        data = json.load(f)
    assert data == {'id': 1, 'altitude_km': 540.0, 'lisl_count': 4,
                    'neighbors': [22, 2, 1563, 23]}


def test_write_records_removes_stale_files(tmpdir):
    directory = str(tmpdir)
    write_records(generate_records(ShellParams(4, 4), Arrangement.TWO),
                  directory)
    write_records(generate_records(ShellParams(3, 3), Arrangement.TWO),
                  directory)
    assert len(os.listdir(directory)) == 9
    assert len(read_records(directory)) == 9


def _write(tmpdir, name, data):
    tmpdir.join(name).write(json.dumps(data))


def test_read_empty_directory(tmpdir):
    with pytest.raises(RecordLoadError) as e:
        read_records(str(tmpdir))
    assert 'no satellite records found' in str(e.value)


def test_read_missing_directory(tmpdir):
    with pytest.raises(RecordLoadError) as e:
        read_records(str(tmpdir.join('nope')))
    assert 'no such directory' in str(e.value)


def test_read_dangling_neighbor(tmpdir):
    directory = str(tmpdir)
    write_records(generate_records(ShellParams(), Arrangement.FULL4),
                  directory)
    _write(tmpdir, 'sat_7.json', {'id': 7, 'altitude_km': 540.0,
                                  'lisl_count': 1, 'neighbors': [9999]})
    with pytest.raises(RecordLoadError) as e:
        read_records(directory)
    assert e.value.filename == 'sat_7.json'
    assert 'neighbor 9999 does not exist' in str(e.value)


def test_read_malformed_json(tmpdir):
    tmpdir.join('sat_1.json').write('{"id": 1,')
    with pytest.raises(RecordLoadError) as e:
        read_records(str(tmpdir))
    assert 'malformed JSON' in str(e.value)


def test_read_duplicate_id(tmpdir):
    record = {'id': 1, 'altitude_km': 540.0, 'lisl_count': 0,
              'neighbors': []}
    _write(tmpdir, 'a.json', record)
    _write(tmpdir, 'b.json', record)
    with pytest.raises(RecordLoadError) as e:
        read_records(str(tmpdir))
    assert 'duplicate id 1' in str(e.value)


@pytest.mark.parametrize('data, message', [
    ([], 'expected a JSON object'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 0}, 'missing field'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 0, 'neighbors': [],
      'color': 'red'}, 'unexpected field'),
    ({'id': 0, 'altitude_km': 540.0, 'lisl_count': 0, 'neighbors': []},
     'id must be'),
    ({'id': 1, 'altitude_km': -1, 'lisl_count': 0, 'neighbors': []},
     'altitude_km'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 5, 'neighbors': []},
     'lisl_count must be'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 2, 'neighbors': [2]},
     'does not match'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 2, 'neighbors': [2, 2]},
     'duplicate neighbor'),
    ({'id': 1, 'altitude_km': 540.0, 'lisl_count': 1, 'neighbors': [1]},
     'itself'),
])
def test_read_invalid_record(tmpdir, data, message):
    _write(tmpdir, 'sat_1.json', data)
    with pytest.raises(RecordLoadError) as e:
        read_records(str(tmpdir))
    assert message in str(e.value)


def test_build_default_graphs(default_graphs):
    g = default_graphs[Arrangement.FULL4]
    assert g.number_of_nodes() == 1584
    assert g.number_of_edges() == 6336
    assert default_graphs[Arrangement.TWO].number_of_edges() == 3168
    assert g.successors(1) == (2, 22, 23, 1563)
    assert g.has_edge(1, 2)
    assert not default_graphs[Arrangement.TWO].has_edge(1, 22)
    assert g.state(1).plane == 0
    assert g.record(1).neighbors == (22, 2, 1563, 23)


def test_build_separates_altitudes():
    params = ShellParams(3, 3)
    states = place_shell(params)
    low = generate_records(params, Arrangement.FULL4)
    high = [SatelliteRecord(r.id + 9, 550.0, r.lisl_count,
                            tuple(n + 9 for n in r.neighbors)) for r in low]
    high_states = [s._replace(id=s.id + 9, altitude_km=550.0)
                   for s in states]
    graphs = build_graphs(low + high, states + high_states)
    assert sorted(graphs) == [540.0, 550.0]
    assert set(graphs[540.0].nodes) == set(range(1, 10))
    assert set(graphs[550.0].nodes) == set(range(10, 19))
    assert graphs[540.0].number_of_edges() == 36


def test_build_rejects_cross_shell_links():
    states = [SatelliteState(1, 0, 0, 0.0, 0.0, 540.0),
              SatelliteState(2, 0, 1, 0.0, 90.0, 550.0)]
    records = [SatelliteRecord(1, 540.0, 1, (2,)),
               SatelliteRecord(2, 550.0, 0, ())]
    with pytest.raises(TopologyError) as e:
        build_graphs(records, states)
    assert 'crosses shells' in str(e.value)


def test_build_requires_states():
    with pytest.raises(TopologyError):
        build_graphs([SatelliteRecord(1, 540.0, 0, ())], [])


def test_full4_links_are_symmetric(default_graphs, small_graphs):
    for graph in (default_graphs[Arrangement.FULL4],
                  small_graphs[Arrangement.FULL4],
                  shell_graph(ShellParams(6, 8), Arrangement.FULL4)):
        for u, v in graph.edges():
            assert graph.has_edge(v, u)


def test_reduced_arrangements_are_one_way(small_graphs):
    graph = small_graphs[Arrangement.TWO]
    assert graph.has_edge(1, 2)
    assert not graph.has_edge(2, 1)


def test_generate_records_with_first_id():
    params = ShellParams(4, 4, 1150.0)
    base = generate_records(params, Arrangement.FULL4)
    stacked = generate_records(params, Arrangement.FULL4, first_id=17)
    assert [r.id for r in stacked] == list(range(17, 33))
    for a, b in zip(base, stacked):
        assert b.neighbors == tuple(n + 16 for n in a.neighbors)
        assert b.altitude_km == 1150.0
    graphs = build_graphs(stacked, place_shell(params, first_id=17))
    assert diameter(graphs[1150.0]) == 4


def test_graph_is_frozen(default_graphs):
    with pytest.raises(Exception):
        default_graphs[Arrangement.FULL4].digraph.add_edge(1, 3)


@pytest.mark.parametrize('arrangement, expected', [
    (Arrangement.FULL4, 47),
    (Arrangement.THREE_WITHIN_PLANE, 57),
    (Arrangement.THREE_BETWEEN_PLANES, 82),
    (Arrangement.TWO, 92),
])
def test_default_shell_diameter(default_graphs, arrangement, expected):
    assert diameter(default_graphs[arrangement]) == expected
    assert max_hops_formula(arrangement, 72, 22) == expected


@pytest.mark.parametrize('o, q', [(4, 4), (6, 4), (4, 6), (8, 6), (10, 4),
                                  (6, 10)])
def test_small_shell_diameter_matches_formula(o, q):
    params = ShellParams(o, q)
    for arrangement in Arrangement:
        assert diameter(shell_graph(params, arrangement)) == \
            max_hops_formula(arrangement, o, q)


def test_four_by_four_diameters(small_graphs):
    assert [diameter(small_graphs[a]) for a in Arrangement] == [4, 5, 5, 6]


def test_even_shells_strongly_connected(default_graphs):
    for graph in default_graphs.values():
        assert is_strongly_connected(graph)
    for o in range(4, 11, 2):
        for q in range(4, 11, 2):
            params = ShellParams(o, q)
            for arrangement in Arrangement:
                assert is_strongly_connected(shell_graph(params,
                                                         arrangement))


def test_diameter_reports_unreachable_pair(make_graph):
    graph = make_graph({1: [2], 2: [3], 3: []})
    assert unreachable_pair(graph) == (2, 1)
    assert not is_strongly_connected(graph)
    with pytest.raises(TopologyError) as e:
        diameter(graph)
    assert '2 cannot reach 1' in str(e.value)
