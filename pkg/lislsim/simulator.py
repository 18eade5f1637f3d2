# -*- coding: utf-8 -*-
import os
from threading import Lock
from collections import namedtuple

from werkzeug.datastructures import ImmutableDict

from .config import ConfigAttribute, Config
from .engine import Engine, propagation_delays
from .errors import TopologyError
from .orbital import place_shell
from .routing import RouteCache
from .topology import (Arrangement, generate_records, write_records,
                       read_records, build_graphs, diameter,
                       max_hops_formula)
from .traffic import assign_weights, generate_flows
from .exports import export_all


_logger_lock = Lock()

ValidationRow = namedtuple('ValidationRow', [
    'arrangement', 'diameter', 'formula', 'match'])

SweepRow = namedtuple('SweepRow', [
    'arrangement', 'trial', 'seed', 'flow_count', 'flows_dropped',
    'sim_time_ns', 'wall_time_ms', 'cache_hit_rate'])

SweepMean = namedtuple('SweepMean', [
    'arrangement', 'trials', 'flow_count', 'sim_time_ns', 'wall_time_ms'])


class Simulator(object):
    """Ties the pipeline together: records -> shell graphs -> weights ->
    flows -> routes -> engine.  All settings live in :attr:`config`.

    :param config: optional mapping applied on top of the defaults
    :param root_path: base for relative config file names
    """

    config_class = Config
    engine_class = Engine
    route_cache_class = RouteCache

    debug = ConfigAttribute('DEBUG')
    logger_name = ConfigAttribute('LOGGER_NAME')
    records_dir = ConfigAttribute('RECORDS_DIR')
    export_dir = ConfigAttribute('EXPORT_DIR')
    arrangement = ConfigAttribute('ARRANGEMENT',
                                  get_converter=Arrangement.parse)

    default_config = ImmutableDict({
        'SHELL_PLANES':                         72,
        'SHELL_SATS_PER_PLANE':                 22,
        'SHELL_ALTITUDE_KM':                    540.0,
        'SHELL_INCLINATION_DEG':                53.0,
        'SHELL_PHASING_OFFSET':                 0,
        'SHELL_EXTRA_ALTITUDES_KM':             (),
        'ARRANGEMENT':                          'full4',
        'TRAFFIC_TOTAL_BYTES':                  1 << 30,
        'TRAFFIC_MIN_FLOW_BYTES':               1 << 10,
        'TRAFFIC_MAX_FLOW_BYTES':               10 << 20,
        'TRAFFIC_SEED':                         0,
        'TRAFFIC_DEFAULT_WEIGHT':               1.0,
        'TRAFFIC_REGIONS':                      None,
        'SIM_LINK_BITRATE_BPS':                 100 * 10 ** 9,
        'SIM_CHUNK_BYTES':                      65536,
        'SIM_BUFFER_CAP_BYTES':                 None,
        'SIM_PROPAGATION_DELAY':                True,
        'ROUTE_CACHE_SIZE':                     None,
        'RECORDS_DIR':                          'satellites',
        'EXPORT_DIR':                           'export',
        'DEBUG':                                False,
        'LOGGER_NAME':                          'lislsim',
        'LOGGER_HANDLER_POLICY':                'always',
    })

    def __init__(self, config=None, root_path=None):
        if root_path is None:
            root_path = os.getcwd()
        self.root_path = root_path
        self.config = self.make_config()
        if config:
            self.config.from_mapping(config)
        self._logger = None

    def __repr__(self):
        return '<%s %dx%d %s>' % (self.__class__.__name__,
                                  self.config['SHELL_PLANES'],
                                  self.config['SHELL_SATS_PER_PLANE'],
                                  self.config['ARRANGEMENT'])

    @property
    def logger(self):
        if self._logger and self._logger.name == self.logger_name:
            return self._logger
        with _logger_lock:
            if self._logger and self._logger.name == self.logger_name:
                return self._logger
            from lislsim.log import create_logger
            self._logger = rv = create_logger(self)
            return rv

    def make_config(self):
        return self.config_class(self.root_path, self.default_config)

    def _path(self, path):
        return os.path.join(self.root_path, path)

    def states(self):
        """Orbital states of every configured shell."""
        return [s for params, first_id in self.config.shells()
                for s in place_shell(params, first_id)]

    def records(self, arrangement=None):
        if arrangement is None:
            arrangement = self.arrangement
        arrangement = Arrangement.parse(arrangement)
        return [r for params, first_id in self.config.shells()
                for r in generate_records(params, arrangement, first_id)]

    def generate(self, out_dir=None):
        out_dir = self._path(out_dir or self.records_dir)
        records = self.records()
        write_records(records, out_dir)
        self.logger.debug('wrote %d satellite records to %s',
                          len(records), out_dir)
        return records

    def load(self, record_dir=None):
        return read_records(self._path(record_dir or self.records_dir))

    def shell_states(self, records):
        """Orbital states for ``records``.  Every altitude present is laid
        out with the configured planes and satellites per plane, over the
        block of ``o*q`` ids that holds its lowest id.
        """
        base = self.config.shell_params()
        size = base.size
        ids_at = {}
        for record in records:
            ids_at.setdefault(record.altitude_km, []).append(record.id)
        rv = {}
        for altitude, ids in sorted(ids_at.items()):
            first_id = (min(ids) - 1) // size * size + 1
            outside = [k for k in ids if k >= first_id + size]
            if outside:
                raise TopologyError('satellite %d is outside the configured '
                                    '%dx%d shell at %g km' % (
                                        outside[0], base.planes,
                                        base.sats_per_plane, altitude))
            params = base._replace(altitude_km=altitude)
            for state in place_shell(params, first_id):
                rv[state.id] = state
        return rv

    def build(self, records):
        """Builds one graph per altitude found in ``records``."""
        graphs = build_graphs(records, self.shell_states(records))
        for graph in graphs.values():
            self.logger.debug('built %r', graph)
        return graphs

    def weights(self, graphs):
        states = [graphs[a].state(n) for a in sorted(graphs)
                  for n in graphs[a].nodes]
        return assign_weights(states, self.config.regions(),
                              self.config['SHELL_INCLINATION_DEG'],
                              self.config.default_weight())

    def flows(self, weights, seed=None, graphs=None):
        """Generates the flows.  With ``graphs`` every destination lies in
        the shell of its source.
        """
        params = self.config.flow_params()
        if seed is not None:
            params = params._replace(seed=seed)
        shell_of = None
        if graphs is not None:
            shell_of = dict((n, altitude) for altitude, graph in graphs.items()
                            for n in graph.nodes)
        return generate_flows(params, weights, shell_of=shell_of)

    def route_caches(self, graphs):
        maxsize = self.config['ROUTE_CACHE_SIZE']
        return dict((altitude, self.route_cache_class(graph, maxsize))
                    for altitude, graph in graphs.items())

    def make_engine(self, graphs, seed=None, **options):
        params = self.config.sim_params()
        if seed is not None:
            params = params._replace(seed=seed)
        if self.config['SIM_PROPAGATION_DELAY']:
            delays = {}
            inclination = self.config['SHELL_INCLINATION_DEG']
            for graph in graphs.values():
                delays.update(propagation_delays(graph, inclination))
            options.setdefault('link_delays', delays)
        return self.engine_class(params, logger=self.logger, **options)

    def simulate(self, record_dir=None, records=None, seed=None,
                 progress=None, **options):
        """Runs the whole pipeline and returns the :class:`SimReport`.
        ``records`` skips loading from ``record_dir``.
        """
        if records is None:
            records = self.load(record_dir)
        graphs = self.build(records)
        flows = self.flows(self.weights(graphs), seed, graphs)
        self.logger.debug('generated %d flows', len(flows))
        engine = self.make_engine(graphs, seed, **options)
        if progress is not None:
            engine.on_progress(progress)
        routes = self.route_caches(graphs)
        report = engine.run(graphs, flows, routes)
        self.logger.debug('route cache: %d hits, %d misses',
                          report.cache_hits, report.cache_misses)
        return report

    def validate(self):
        """BFS diameter against the hop formula for every arrangement.
        With an odd plane or satellite count the formula column is None.
        """
        params = self.config.shell_params()
        o, q = params.planes, params.sats_per_plane
        comparable = o % 2 == 0 and q % 2 == 0
        states = place_shell(params)
        rv = []
        for arrangement in Arrangement:
            graphs = build_graphs(generate_records(params, arrangement),
                                  states)
            measured = diameter(graphs[params.altitude_km])
            if comparable:
                formula = max_hops_formula(arrangement, o, q)
                rv.append(ValidationRow(arrangement, measured, formula,
                                        measured == formula))
            else:
                rv.append(ValidationRow(arrangement, measured, None, None))
        return rv

    def export(self, record_dir=None, out_dir=None):
        graphs = self.build(self.load(record_dir))
        states = [graphs[a].state(n) for a in sorted(graphs)
                  for n in graphs[a].nodes]
        return export_all(self._path(out_dir or self.export_dir), states,
                          graphs, self.weights(graphs),
                          self.config.regions(),
                          self.config['SHELL_INCLINATION_DEG'])

    def sweep(self, arrangements=None, trials=3, progress=None):
        """Runs ``trials`` simulations per arrangement with seeds
        ``seed + k`` and returns ``(rows, means)``.
        """
        if trials < 1:
            raise ValueError('trials must be >= 1, got %d' % trials)
        if arrangements is None:
            arrangements = list(Arrangement)
        base_seed = self.config['TRAFFIC_SEED']
        rows = []
        means = []
        for arrangement in map(Arrangement.parse, arrangements):
            records = self.records(arrangement)
            batch = []
            for k in range(trials):
                seed = base_seed + k
                report = self.simulate(records=records, seed=seed)
                total = report.cache_hits + report.cache_misses
                row = SweepRow(arrangement, k + 1, seed, report.flow_count,
                               report.flows_dropped, report.sim_time_ns,
                               report.wall_time_ms,
                               report.cache_hits / float(total)
                               if total else 0.0)
                batch.append(row)
                if progress is not None:
                    progress(row)
            rows.extend(batch)
            means.append(SweepMean(
                arrangement, trials,
                sum(r.flow_count for r in batch) / float(trials),
                sum(r.sim_time_ns for r in batch) / float(trials),
                sum(r.wall_time_ms for r in batch) / float(trials)))
        return rows, means
