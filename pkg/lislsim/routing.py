# -*- coding: utf-8 -*-
"""Centralised hop-count routing with a transparent route cache."""
from threading import Lock
from collections import namedtuple, OrderedDict, deque

from .errors import RoutingError


class Route(namedtuple('Route', ['path'])):
    __slots__ = ()

    @property
    def src(self):
        return self.path[0]

    @property
    def dst(self):
        return self.path[-1]

    @property
    def hops(self):
        return len(self.path) - 1

    def links(self):
        return list(zip(self.path, self.path[1:]))


def shortest_path(graph, src, dst):
    """Breadth-first search over the directed LISLs.  Neighbors are
    expanded in ascending id order, so among equally short paths the
    same one is always returned.
    """
    if src not in graph:
        raise RoutingError('satellite %d is not in the %g km shell'
                           % (src, graph.altitude_km))
    if dst not in graph:
        raise RoutingError('satellite %d is not in the %g km shell'
                           % (dst, graph.altitude_km))
    if src == dst:
        return Route((src,))

    parent = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in graph.successors(u):
            if v in parent:
                continue
            parent[v] = u
            if v == dst:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return Route(tuple(reversed(path)))
            queue.append(v)
    raise RoutingError('satellite %d is unreachable from %d' % (dst, src))


class RouteCache(object):
    """Maps ``(src, dst)`` to a :class:`Route` for one graph.  Lookups may
    happen from several threads; insertion is serialised.  With
    ``maxsize`` set the least recently used routes are evicted.
    """

    def __init__(self, graph=None, maxsize=None):
        self.graph = graph
        self.maxsize = maxsize
        self.hits = 0
        self.misses = 0
        self._routes = OrderedDict()
        self._lock = Lock()

    def __len__(self):
        return len(self._routes)

    def __contains__(self, pair):
        return pair in self._routes

    @property
    def hit_rate(self):
        total = self.hits + self.misses
        if not total:
            return 0.0
        return self.hits / float(total)

    def bind(self, graph):
        """Ties an unbound cache to ``graph``; a bound cache only accepts
        the graph it already holds.
        """
        with self._lock:
            if self.graph is None:
                self.graph = graph
            elif self.graph is not graph:
                raise RoutingError('route cache belongs to the %g km shell, '
                                   'not %g km' % (self.graph.altitude_km,
                                                  graph.altitude_km))

    def get(self, src, dst):
        with self._lock:
            rv = self._routes.get((src, dst))
            if rv is not None:
                self.hits += 1
                if self.maxsize is not None:
                    self._routes.move_to_end((src, dst))
            return rv

    def put(self, src, dst, route):
        with self._lock:
            self.misses += 1
            self._routes[(src, dst)] = route
            if self.maxsize is not None:
                while len(self._routes) > self.maxsize:
                    self._routes.popitem(last=False)


def route(cache, graph, src, dst):
    cache.bind(graph)
    rv = cache.get(src, dst)
    if rv is not None:
        return rv
    # computed outside the lock; a racing caller stores an equal route
    rv = shortest_path(graph, src, dst)
    cache.put(src, dst, rv)
    return rv


def next_hop(route, current):
    try:
        idx = route.path.index(current)
    except ValueError:
        raise RoutingError('satellite %d is not on route %s'
                           % (current, '->'.join(map(str, route.path))))
    if idx == len(route.path) - 1:
        raise RoutingError('satellite %d is already at destination'
                           % current)
    return route.path[idx + 1]
