# -*- coding: utf-8 -*-
"""Satellite records, LISL arrangements and per-altitude shell graphs.

A satellite with 0-indexed plane ``p`` and plane index ``i`` has id
``p*q + i + 1`` and four canonical neighbors: the previous and next
satellite in its own plane (n1, n2) and the same-index satellite in the
previous and next plane (n3, n4).  An arrangement keeps a subset of them
as outgoing links; the graph is always directed.
"""
import os
import enum
import glob
from collections import namedtuple

import networkx as nx

from . import json
from .errors import ConfigError, RecordLoadError, TopologyError


RECORD_FIELDS = ('id', 'altitude_km', 'lisl_count', 'neighbors')
RECORD_FILENAME = 'sat_%d.json'


class Arrangement(enum.Enum):
    FULL4 = 'full4'
    THREE_WITHIN_PLANE = 'three-within-plane'
    THREE_BETWEEN_PLANES = 'three-between-planes'
    TWO = 'two'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace('_', '-')
        rv = _arrangement_aliases.get(key)
        if rv is None:
            raise ConfigError('arrangement', 'unknown arrangement %r; '
                              'expected one of %s' % (value, ', '.join(
                                  a.value for a in cls)))
        return rv

    @property
    def number(self):
        return _arrangement_order.index(self) + 1

    @property
    def lisl_count(self):
        return len(_kept_slots[self])


_arrangement_order = [Arrangement.FULL4, Arrangement.THREE_WITHIN_PLANE,
                      Arrangement.THREE_BETWEEN_PLANES, Arrangement.TWO]

_arrangement_aliases = dict((a.value, a) for a in Arrangement)
_arrangement_aliases.update((str(n), a) for n, a in
                            enumerate(_arrangement_order, 1))

# positions kept out of (n1, n2, n3, n4)
_kept_slots = {
    Arrangement.FULL4: (0, 1, 2, 3),
    Arrangement.THREE_WITHIN_PLANE: (1, 2, 3),
    Arrangement.THREE_BETWEEN_PLANES: (0, 1, 3),
    Arrangement.TWO: (1, 3),
}


SatelliteRecord = namedtuple('SatelliteRecord', RECORD_FIELDS)


def plane_index(sat_id, q):
    """Inverse of ``id = p*q + i + 1``: returns ``(p, i)``."""
    return divmod(sat_id - 1, q)


def neighbor_ids(p, i, o, q):
    if o < 3 or q < 3:
        raise ValueError('shell must have at least 3 planes and 3 '
                         'satellites per plane, got %dx%d' % (o, q))
    if not 0 <= p < o:
        raise ValueError('plane %d out of range [0, %d)' % (p, o))
    if not 0 <= i < q:
        raise ValueError('plane index %d out of range [0, %d)' % (i, q))
    # Python's % already yields a result in [0, n) for negative operands
    n1 = p * q + (i - 1) % q + 1
    n2 = p * q + (i + 1) % q + 1
    n3 = q * ((p - 1) % o) + i + 1
    n4 = q * ((p + 1) % o) + i + 1
    return n1, n2, n3, n4


def apply_arrangement(neighbors, arrangement):
    return [neighbors[slot] for slot in _kept_slots[arrangement]]


def generate_records(params, lisl_arrangement, first_id=1):
    """Records for one shell.  Stacked shells in one directory use
    disjoint id ranges, so every id and neighbor is shifted to start at
    ``first_id``.
    """
    o, q = params.planes, params.sats_per_plane
    shift = first_id - 1
    rv = []
    for k in range(1, o * q + 1):
        p, i = plane_index(k, q)
        kept = [n + shift for n in apply_arrangement(
            neighbor_ids(p, i, o, q), lisl_arrangement)]
        rv.append(SatelliteRecord(id=k + shift,
                                  altitude_km=params.altitude_km,
                                  lisl_count=len(kept),
                                  neighbors=tuple(kept)))
    return rv


def write_records(records, directory):
    """Writes one ``sat_<id>.json`` file per record.  Stale record files
    left in ``directory`` by an earlier, larger shell are removed so the
    directory always describes exactly ``records``.
    """
    if not os.path.isdir(directory):
        os.makedirs(directory)
    keep = set()
    for record in records:
        name = RECORD_FILENAME % record.id
        keep.add(name)
        with open(os.path.join(directory, name), 'w') as f:
            json.dump(dict(zip(RECORD_FIELDS, (record.id,
                                               record.altitude_km,
                                               record.lisl_count,
                                               list(record.neighbors)))),
                      f, indent=2)
            f.write('\n')
    for path in glob.glob(os.path.join(directory, 'sat_*.json')):
        if os.path.basename(path) not in keep:
            os.remove(path)
    return directory


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _parse_record(filename, data):
    if not isinstance(data, dict):
        raise RecordLoadError(filename, 'expected a JSON object')
    missing = [f for f in RECORD_FIELDS if f not in data]
    if missing:
        raise RecordLoadError(filename, 'missing field(s) %s'
                              % ', '.join(missing))
    extra = sorted(set(data) - set(RECORD_FIELDS))
    if extra:
        raise RecordLoadError(filename, 'unexpected field(s) %s'
                              % ', '.join(extra))
    sat_id, altitude, count, neighbors = [data[f] for f in RECORD_FIELDS]
    if not _is_int(sat_id) or sat_id < 1:
        raise RecordLoadError(filename, 'id must be a positive integer')
    if isinstance(altitude, bool) or not isinstance(altitude, (int, float)) \
            or altitude <= 0:
        raise RecordLoadError(filename, 'altitude_km must be positive')
    if not _is_int(count) or not 0 <= count <= 4:
        raise RecordLoadError(filename, 'lisl_count must be in [0, 4]')
    if not isinstance(neighbors, list) or \
            not all(_is_int(n) and n >= 1 for n in neighbors):
        raise RecordLoadError(filename, 'neighbors must be a list of '
                              'positive integer ids')
    if len(neighbors) != count:
        raise RecordLoadError(filename, 'lisl_count %d does not match %d '
                              'neighbors' % (count, len(neighbors)))
    if len(set(neighbors)) != len(neighbors):
        raise RecordLoadError(filename, 'duplicate neighbor ids')
    if sat_id in neighbors:
        raise RecordLoadError(filename, 'satellite lists itself as '
                              'a neighbor')
    return SatelliteRecord(id=sat_id, altitude_km=float(altitude),
                           lisl_count=count, neighbors=tuple(neighbors))


def read_records(directory):
    """Loads every ``*.json`` record file in ``directory`` and returns the
    records sorted by id.
    """
    if not os.path.isdir(directory):
        raise RecordLoadError(directory, 'no such directory')
    paths = sorted(glob.glob(os.path.join(directory, '*.json')))
    if not paths:
        raise RecordLoadError(directory, 'no satellite records found')

    by_id = {}
    origin = {}
    for path in paths:
        filename = os.path.basename(path)
        try:
            with open(path) as f:
                data = json.load(f)
        except ValueError as e:
            raise RecordLoadError(filename, 'malformed JSON (%s)' % e)
        record = _parse_record(filename, data)
        if record.id in by_id:
            raise RecordLoadError(filename, 'duplicate id %d (also in %s)'
                                  % (record.id, origin[record.id]))
        by_id[record.id] = record
        origin[record.id] = filename

    for sat_id in sorted(by_id):
        for n in by_id[sat_id].neighbors:
            if n not in by_id:
                raise RecordLoadError(origin[sat_id], 'neighbor %d does '
                                      'not exist' % n)
    return [by_id[k] for k in sorted(by_id)]


class ShellGraph(object):
    """Directed LISL graph for the satellites at one altitude.  Built once
    by :func:`build_graphs` and frozen afterwards; safe to share between
    readers.
    """

    def __init__(self, altitude_km):
        self.altitude_km = altitude_km
        self.digraph = nx.DiGraph(altitude_km=altitude_km)
        self._successors = None

    def __repr__(self):
        return '<%s %gkm: %d nodes, %d edges>' % (
            self.__class__.__name__, self.altitude_km,
            self.number_of_nodes(), self.number_of_edges())

    def __contains__(self, sat_id):
        return sat_id in self.digraph

    def __len__(self):
        return self.digraph.number_of_nodes()

    def _freeze(self):
        self._successors = dict(
            (u, tuple(sorted(self.digraph.successors(u))))
            for u in self.digraph)
        nx.freeze(self.digraph)

    @property
    def nodes(self):
        return sorted(self.digraph)

    def number_of_nodes(self):
        return self.digraph.number_of_nodes()

    def number_of_edges(self):
        return self.digraph.number_of_edges()

    def edges(self):
        return sorted(self.digraph.edges())

    def has_edge(self, u, v):
        return self.digraph.has_edge(u, v)

    def successors(self, u):
        """Outgoing neighbors of ``u`` in ascending id order."""
        return self._successors[u]

    def out_degree(self, u):
        return self.digraph.out_degree(u)

    def state(self, sat_id):
        return self.digraph.nodes[sat_id]['state']

    def record(self, sat_id):
        return self.digraph.nodes[sat_id]['record']


def build_graphs(records, states):
    """Two passes: first every satellite becomes a node of the graph for
    its altitude, then each neighbor list becomes directed edges.  Returns
    a dict mapping altitude to :class:`ShellGraph`.
    """
    if not isinstance(states, dict):
        states = dict((s.id, s) for s in states)

    graphs = {}
    shell_of = {}
    for record in records:
        state = states.get(record.id)
        if state is None:
            raise TopologyError('satellite %d has no orbital state'
                                % record.id)
        graph = graphs.get(record.altitude_km)
        if graph is None:
            graph = graphs[record.altitude_km] = \
                ShellGraph(record.altitude_km)
        graph.digraph.add_node(record.id, state=state, record=record)
        shell_of[record.id] = record.altitude_km

    for record in records:
        graph = graphs[record.altitude_km]
        for v in record.neighbors:
            if v not in shell_of:
                raise TopologyError('satellite %d links to unknown '
                                    'satellite %d' % (record.id, v))
            if shell_of[v] != record.altitude_km:
                raise TopologyError('link %d -> %d crosses shells '
                                    '(%g km -> %g km)' % (
                                        record.id, v, record.altitude_km,
                                        shell_of[v]))
            graph.digraph.add_edge(record.id, v)

    for graph in graphs.values():
        graph._freeze()
    return graphs


def unreachable_pair(graph):
    """Returns an ordered pair ``(u, v)`` with no path from u to v, or
    ``None`` when the graph is strongly connected.
    """
    g = graph.digraph
    if g.number_of_nodes() == 0 or nx.is_strongly_connected(g):
        return None
    nodes = set(g)
    for u in sorted(nodes):
        reach = nx.descendants(g, u)
        reach.add(u)
        if len(reach) < len(nodes):
            return u, min(nodes - reach)


def is_strongly_connected(graph):
    return unreachable_pair(graph) is None


def diameter(graph):
    """Largest hop count over all ordered pairs of satellites."""
    pair = unreachable_pair(graph)
    if pair is not None:
        raise TopologyError('shell at %g km is not strongly connected: '
                            '%d cannot reach %d'
                            % ((graph.altitude_km,) + pair))
    rv = 0
    for _, lengths in nx.all_pairs_shortest_path_length(graph.digraph):
        rv = max(rv, max(lengths.values()))
    return rv


def max_hops_formula(arrangement, o, q):
    """Worst-case hop count predicted for an arrangement on an o x q shell.
    The halved terms are floored for odd counts.
    """
    if arrangement is Arrangement.FULL4:
        return (o + q) // 2
    if arrangement is Arrangement.THREE_WITHIN_PLANE:
        return o // 2 + q - 1
    if arrangement is Arrangement.THREE_BETWEEN_PLANES:
        return o - 1 + q // 2
    return o + q - 2
