# -*- coding: utf-8 -*-
"""Discrete-event, store-and-forward simulation of flows over LISLs.

Every flow is injected at its source at time 0 and cut into chunks of
``chunk_bytes`` (the last one partial).  A chunk is fully received by a
satellite before it is sent on.  Each directed link carries one chunk at a
time, first in first out, taking ``ceil(bits * 1e9 / bitrate)`` ns per
chunk.  Time is integer nanoseconds.  At the same instant finished
transmissions run first, then chunk arrivals, then flow completions, each
in the order they were scheduled.
"""
import math
import time
import heapq
from logging import getLogger
from collections import namedtuple, deque

from . import json
from .errors import ConfigError, RoutingError, SimulationError
from .orbital import slant_range_km
from .routing import RouteCache, route
from .signals import (simulation_started, flow_completed, flow_dropped,
                      simulation_finished)


SPEED_OF_LIGHT_M_S = 299792458

TRANSMISSION_COMPLETE = 'transmission-complete'
CHUNK_ARRIVAL = 'chunk-arrival'
FLOW_COMPLETE = 'flow-complete'

_PRIORITY = {TRANSMISSION_COMPLETE: 0, CHUNK_ARRIVAL: 1, FLOW_COMPLETE: 2}

ACCEPT = 'accept'
DROP_FLOW = 'drop-flow'


class SimParams(namedtuple('SimParams', [
        'link_bitrate_bps', 'chunk_bytes', 'buffer_cap_bytes', 'seed'])):
    __slots__ = ()

    def __new__(cls, link_bitrate_bps=100 * 10 ** 9, chunk_bytes=65536,
                buffer_cap_bytes=None, seed=0):
        for field, value in (('link_bitrate_bps', link_bitrate_bps),
                             ('chunk_bytes', chunk_bytes)):
            if isinstance(value, bool) or not isinstance(value, int) \
                    or value <= 0:
                raise ConfigError(field, 'must be a positive integer, got %r'
                                  % (value,))
        if buffer_cap_bytes is not None:
            if isinstance(buffer_cap_bytes, bool) or \
                    not isinstance(buffer_cap_bytes, int) or \
                    buffer_cap_bytes <= 0:
                raise ConfigError('buffer_cap_bytes', 'must be a positive '
                                  'integer, got %r' % (buffer_cap_bytes,))
            if buffer_cap_bytes < chunk_bytes:
                raise ConfigError('buffer_cap_bytes', 'smaller than one '
                                  'chunk (%d < %d)' % (buffer_cap_bytes,
                                                       chunk_bytes))
        if isinstance(seed, bool) or not isinstance(seed, int) or \
                not 0 <= seed < 1 << 64:
            raise ConfigError('seed', 'must be a 64-bit unsigned integer')
        return super(SimParams, cls).__new__(
            cls, link_bitrate_bps, chunk_bytes, buffer_cap_bytes, seed)

    def transmission_ns(self, nbytes):
        return -(-nbytes * 8 * 10 ** 9 // self.link_bitrate_bps)


class SimReport(namedtuple('SimReport', [
        'flow_count', 'flows_dropped', 'bytes_delivered', 'bytes_dropped',
        'sim_time_ns', 'wall_time_ms', 'cache_hits', 'cache_misses',
        'per_link_busy_ns'])):
    __slots__ = ()

    @property
    def sim_time_s(self):
        return self.sim_time_ns / 1e9

    def deterministic(self):
        """The report without its wall-clock field, for comparisons."""
        return self._replace(wall_time_ms=0)

    def as_dict(self):
        rv = self._asdict()
        busy = rv.pop('per_link_busy_ns')
        if busy is not None:
            rv['per_link_busy_ns'] = dict(
                ('%d->%d' % link, ns) for link, ns in sorted(busy.items()))
        return rv

    def as_text(self):
        rows = [
            ('flows', self.flow_count),
            ('flows_dropped', self.flows_dropped),
            ('bytes_delivered', self.bytes_delivered),
            ('bytes_dropped', self.bytes_dropped),
            ('sim_time_ns', self.sim_time_ns),
            ('sim_time_s', '%.9f' % self.sim_time_s),
            ('wall_time_ms', self.wall_time_ms),
            ('cache_hits', self.cache_hits),
            ('cache_misses', self.cache_misses),
        ]
        if self.per_link_busy_ns is not None:
            rows.append(('links_used', len(self.per_link_busy_ns)))
        return '\n'.join('%s = %s' % row for row in rows)

    def as_json(self, **extra):
        rv = self.as_dict()
        rv.update(extra)
        return json.dumps(rv)


SimEvent = namedtuple('SimEvent', ['time_ns', 'priority', 'sequence', 'kind',
                                   'payload'])


class LinkState(object):
    __slots__ = ('endpoints', 'busy_until', 'queue', 'current', 'busy_ns',
                 'delay_ns', 'intervals')

    def __init__(self, endpoints, delay_ns=0, record_intervals=False):
        self.endpoints = endpoints
        self.busy_until = 0
        self.queue = deque()
        self.current = None
        self.busy_ns = 0
        self.delay_ns = delay_ns
        self.intervals = [] if record_intervals else None

    def __repr__(self):
        return '<LinkState %d->%d queued=%d>' % (
            self.endpoints + (len(self.queue),))


class FlowState(object):
    __slots__ = ('flow', 'path', 'chunks_total', 'chunks_arrived',
                 'bytes_arrived', 'dropped', 'completed', 'finish_ns')

    def __init__(self, flow, path, chunk_bytes):
        self.flow = flow
        self.path = path
        self.chunks_total = -(-flow.size_bytes // chunk_bytes)
        self.chunks_arrived = 0
        self.bytes_arrived = 0
        self.dropped = False
        self.completed = False
        self.finish_ns = None


def drop_policy(buffered_bytes, chunk_bytes, params):
    """Decides whether a relay holding ``buffered_bytes`` can take an
    incoming chunk.  Without a cap every chunk is accepted.
    """
    cap = params.buffer_cap_bytes
    if cap is not None and buffered_bytes + chunk_bytes > cap:
        return DROP_FLOW
    return ACCEPT


def propagation_delays(graph, inclination_deg):
    """Per-link light travel time in ns from the epoch positions."""
    rv = {}
    for u, v in graph.edges():
        km = slant_range_km(graph.state(u), graph.state(v), inclination_deg)
        rv[(u, v)] = int(math.ceil(km * 1e12 / SPEED_OF_LIGHT_M_S))
    return rv


class Engine(object):
    """One simulation run.  Not reusable: create a new engine per run.

    :param params: :class:`SimParams`
    :param logger: where per-flow lines go; defaults to ``lislsim``
    :param link_delays: optional ``{(u, v): ns}`` propagation delays
    :param link_stats: keep per-link busy time and transmission intervals
    """

    def __init__(self, params, logger=None, link_delays=None,
                 link_stats=False):
        self.params = params
        self.logger = logger or getLogger('lislsim')
        self.link_delays = link_delays or {}
        self.link_stats = link_stats
        self.progress_funcs = []
        self.links = {}
        self.buffered = {}
        self.flows = []
        self.now = 0
        self._events = []
        self._sequence = 0
        self._tx_cache = {}
        self._done = 0
        self._completed = 0
        self._ran = False

    def on_progress(self, f):
        """Registers ``f(completed, total, sim_time_ns)``, called once per
        completed flow from inside the event loop.
        """
        self.progress_funcs.append(f)
        return f

    def _schedule(self, time_ns, kind, payload):
        if time_ns < self.now:
            raise SimulationError('event %s scheduled in the past (%d < %d)'
                                  % (kind, time_ns, self.now))
        heapq.heappush(self._events,
                       SimEvent(time_ns, _PRIORITY[kind], self._sequence,
                                kind, payload))
        self._sequence += 1

    def _tx_ns(self, nbytes):
        rv = self._tx_cache.get(nbytes)
        if rv is None:
            rv = self._tx_cache[nbytes] = self.params.transmission_ns(nbytes)
        return rv

    def _link(self, u, v):
        link = self.links.get((u, v))
        if link is None:
            link = self.links[(u, v)] = LinkState(
                (u, v), self.link_delays.get((u, v), 0), self.link_stats)
        return link

    def _enqueue(self, link, chunk):
        link.queue.append(chunk)
        if link.current is None:
            self._start(link)

    def _start(self, link):
        chunk = link.queue.popleft()
        tx = self._tx_ns(chunk[1])
        link.current = chunk
        link.busy_until = self.now + tx
        link.busy_ns += tx
        if link.intervals is not None:
            link.intervals.append((self.now, link.busy_until))
        self._schedule(link.busy_until, TRANSMISSION_COMPLETE, link)

    def _resolve(self, graphs, routes, flow):
        for altitude, graph in graphs.items():
            if flow.src in graph:
                cache = routes.get(altitude)
                if cache is None:
                    cache = routes[altitude] = RouteCache(graph)
                return route(cache, graph, flow.src, flow.dst)
        raise RoutingError('satellite %d is not in any shell' % flow.src)

    def run(self, graphs, flows, routes=None):
        """Simulates ``flows`` over ``graphs`` (altitude -> ShellGraph)
        and returns a :class:`SimReport`.  ``routes`` maps altitude to a
        :class:`RouteCache`; missing caches are created.
        """
        if self._ran:
            raise SimulationError('engine instances run only once')
        self._ran = True
        started = time.perf_counter()
        routes = {} if routes is None else routes
        chunk_bytes = self.params.chunk_bytes
        simulation_started.send(self, flows=len(flows))

        for flow in flows:
            try:
                path = self._resolve(graphs, routes, flow).path
            except RoutingError as e:
                fs = FlowState(flow, None, chunk_bytes)
                self.flows.append(fs)
                self._drop(fs, 'unroutable: %s' % e)
                continue
            fs = FlowState(flow, path, chunk_bytes)
            self.flows.append(fs)
            if len(path) == 1:
                fs.bytes_arrived = flow.size_bytes
                fs.chunks_arrived = fs.chunks_total
                self._schedule(0, FLOW_COMPLETE, fs)
                continue
            link = self._link(path[0], path[1])
            left = flow.size_bytes
            while left > 0:
                size = min(chunk_bytes, left)
                self._enqueue(link, (fs, size, 0))
                left -= size

        total = len(self.flows)
        while self._events and self._done < total:
            event = heapq.heappop(self._events)
            self.now = event.time_ns
            if event.kind == TRANSMISSION_COMPLETE:
                self._transmitted(event.payload)
            elif event.kind == CHUNK_ARRIVAL:
                fs, size, hop = event.payload
                self._arrive(fs, size, hop)
            else:
                self._complete(event.payload)

        if self._done < total:
            raise SimulationError('event queue drained with %d flow(s) '
                                  'unfinished' % (total - self._done))

        report = self._report(routes, started)
        simulation_finished.send(self, report=report)
        return report

    def _transmitted(self, link):
        chunk = link.current
        link.current = None
        fs, size, hop = chunk
        u = link.endpoints[0]
        if hop > 0:
            self.buffered[u] -= size
        if not fs.dropped:
            self._schedule(self.now + link.delay_ns, CHUNK_ARRIVAL,
                           (fs, size, hop + 1))
        if link.queue:
            self._start(link)

    def _arrive(self, fs, size, hop):
        if fs.dropped:
            return
        path = fs.path
        if hop == len(path) - 1:
            fs.chunks_arrived += 1
            fs.bytes_arrived += size
            if fs.chunks_arrived == fs.chunks_total:
                self._schedule(self.now, FLOW_COMPLETE, fs)
            return
        v = path[hop]
        held = self.buffered.get(v, 0)
        if drop_policy(held, size, self.params) == DROP_FLOW:
            self._drop(fs, 'buffer full at satellite %d (%d + %d > %d bytes)'
                       % (v, held, size, self.params.buffer_cap_bytes))
            return
        self.buffered[v] = held + size
        self._enqueue(self._link(v, path[hop + 1]), (fs, size, hop))

    def _drop(self, fs, reason):
        fs.dropped = True
        fs.finish_ns = self.now
        self._done += 1
        for link in self.links.values():
            if not any(c[0] is fs for c in link.queue):
                continue
            kept = deque()
            for chunk in link.queue:
                if chunk[0] is fs:
                    if chunk[2] > 0:
                        self.buffered[link.endpoints[0]] -= chunk[1]
                else:
                    kept.append(chunk)
            link.queue = kept
        flow = fs.flow
        self.logger.warning('flow %d dropped: %d -> %d, %d bytes at %d ns '
                            '(%s)', flow.flow_id, flow.src, flow.dst,
                            flow.size_bytes, self.now, reason)
        flow_dropped.send(self, flow=flow, reason=reason, time_ns=self.now)

    def _complete(self, fs):
        fs.completed = True
        fs.finish_ns = self.now
        self._done += 1
        self._completed += 1
        flow = fs.flow
        self.logger.info('flow %d complete: %d -> %d, %d bytes, %d hops '
                         'at %d ns', flow.flow_id, flow.src, flow.dst,
                         flow.size_bytes, len(fs.path) - 1, self.now)
        flow_completed.send(self, flow=flow, time_ns=self.now)
        for f in self.progress_funcs:
            try:
                f(self._completed, len(self.flows), self.now)
            except Exception as e:
                raise SimulationError('progress observer %r failed at %d ns: '
                                      '%s' % (f, self.now, e))

    def _report(self, routes, started):
        delivered = sum(fs.flow.size_bytes for fs in self.flows
                        if fs.completed)
        dropped = sum(fs.flow.size_bytes for fs in self.flows if fs.dropped)
        busy = None
        if self.link_stats:
            busy = dict((k, link.busy_ns) for k, link in self.links.items())
        return SimReport(
            flow_count=len(self.flows),
            flows_dropped=sum(1 for fs in self.flows if fs.dropped),
            bytes_delivered=delivered,
            bytes_dropped=dropped,
            sim_time_ns=self.now,
            wall_time_ms=int((time.perf_counter() - started) * 1000),
            cache_hits=sum(c.hits for c in routes.values()),
            cache_misses=sum(c.misses for c in routes.values()),
            per_link_busy_ns=busy)


def run(graphs, flows, routes, params, **options):
    return Engine(params, **options).run(graphs, flows, routes)
