# -*- coding: utf-8 -*-
import os
import re
import types
import errno

from werkzeug.utils import import_string

from . import json
from .errors import ConfigError
from .orbital import ShellParams
from .topology import Arrangement
from .traffic import TrafficRegion, FlowGenParams, DEFAULT_REGIONS
from .engine import SimParams


_size_re = re.compile(r'^\s*(\d+(?:\.\d+)?)\s*([kmgt]i?b|b)?\s*$', re.I)

# binary throughout: 1 KB is 1 KiB
_size_units = {
    None: 1,
    'b': 1,
    'k': 1 << 10,
    'm': 1 << 20,
    'g': 1 << 30,
    't': 1 << 40,
}


def parse_size(value, field='size'):
    """Converts ``value`` to a byte count.  Integers pass through, strings
    may carry a binary unit suffix: ``'10 MiB'``, ``'1KB'``, ``'1 GiB'``.
    """
    if isinstance(value, bool):
        raise ConfigError(field, 'expected a byte size, got %r' % value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if value != int(value):
            raise ConfigError(field, 'byte size must be whole, got %r' % value)
        return int(value)
    m = _size_re.match(str(value))
    if m is None:
        raise ConfigError(field, 'cannot parse byte size %r' % value)
    number, unit = m.groups()
    if unit is not None:
        unit = unit[0].lower()
    rv = float(number) * _size_units[unit]
    if rv != int(rv):
        raise ConfigError(field, 'byte size must be whole, got %r' % value)
    return int(rv)


def _flatten(mapping, prefix=''):
    for key, value in mapping.items():
        key = prefix + str(key).upper()
        if isinstance(value, dict):
            for item in _flatten(value, key + '_'):
                yield item
        else:
            yield key, value


class ConfigAttribute(object):
    def __init__(self, name, get_converter=None):
        self.__name__ = name
        self.get_converter = get_converter

    def __get__(self, obj, type=None):
        if obj is None:
            return self
        rv = obj.config[self.__name__]
        if self.get_converter is not None:
            rv = self.get_converter(rv)
        return rv

    def __set__(self, obj, value):
        obj.config[self.__name__] = value


class Config(dict):
    """Flat mapping of UPPERCASE simulation settings.  Only keys present
    in the defaults are accepted; nested input such as
    ``{"shell": {"planes": 72}}`` is flattened to ``SHELL_PLANES``.
    """

    def __init__(self, root_path, defaults=None):
        dict.__init__(self, defaults or {})
        self.root_path = root_path
        self.known_keys = frozenset(self)

    def __repr__(self):
        return '<%s %s>' % (self.__class__.__name__, dict.__repr__(self))

    def __setitem__(self, key, value):
        if self.known_keys and key not in self.known_keys:
            raise ConfigError(key, 'unknown configuration key')
        dict.__setitem__(self, key, value)

    def from_envvar(self, variable_name, silent=False):
        rv = os.environ.get(variable_name)
        if not rv:
            if silent:
                return False
            raise RuntimeError('The environment variable %r is not set '
                               'and as such configuration could not be '
                               'loaded.  Set this variable and make it '
                               'point to a configuration file' %
                               variable_name)
        return self.from_file(rv, silent=silent)

    def from_file(self, filename, silent=False):
        if filename.endswith('.py'):
            return self.from_pyfile(filename, silent=silent)
        return self.from_json(filename, silent=silent)

    def from_pyfile(self, filename, silent=False):
        filename = os.path.join(self.root_path, filename)
        d = types.ModuleType('config')
        d.__file__ = filename
        try:
            with open(filename) as config_file:
                exec(compile(config_file.read(), filename, 'exec'), d.__dict__)
        except IOError as e:
            if silent and e.errno in (errno.ENOENT, errno.EISDIR):
                return False
            e.strerror = 'Unable to load configuration file (%s)' % e.strerror
            raise
        self.from_object(d)
        return True

    def from_object(self, obj):
        if isinstance(obj, str):
            obj = import_string(obj)
        for key in dir(obj):
            if key.isupper():
                self[key] = getattr(obj, key)

    def from_json(self, filename, silent=False):
        filename = os.path.join(self.root_path, filename)

        try:
            with open(filename) as json_file:
                obj = json.loads(json_file.read())
        except IOError as e:
            if silent and e.errno in (errno.ENOENT, errno.EISDIR):
                return False
            e.strerror = 'Unable to load configuration file (%s)' % e.strerror
            raise
        except ValueError as e:
            raise ConfigError(filename, 'malformed JSON (%s)' % e)
        if not isinstance(obj, dict):
            raise ConfigError(filename, 'top level must be an object')
        return self.from_mapping(obj)

    def from_mapping(self, *mapping, **kwargs):
        mappings = []
        if len(mapping) == 1:
            if hasattr(mapping[0], 'items'):
                mappings.append(_flatten(mapping[0]))
            else:
                mappings.append(mapping[0])
        elif len(mapping) > 1:
            raise TypeError(
                'expected at most 1 positional argument, got %d' % len(mapping)
            )
        mappings.append(_flatten(kwargs))
        for mapping in mappings:
            for (key, value) in mapping:
                self[key.upper()] = value
        return True

    def get_namespace(self, namespace, lowercase=True, trim_namespace=True):
        rv = {}
        for k, v in self.items():
            if not k.startswith(namespace):
                continue
            if trim_namespace:
                key = k[len(namespace):]
            else:
                key = k
            if lowercase:
                key = key.lower()
            rv[key] = v
        return rv

    def shell_params(self):
        ns = self.get_namespace('SHELL_')
        return ShellParams(planes=ns['planes'],
                           sats_per_plane=ns['sats_per_plane'],
                           altitude_km=ns['altitude_km'],
                           inclination_deg=ns['inclination_deg'],
                           phasing_offset=ns['phasing_offset'])

    def shells(self):
        """The primary shell followed by one shell per extra altitude, all
        with the primary's plane layout.  Returns ``[(ShellParams,
        first_id), ...]`` with consecutive, disjoint id blocks.
        """
        primary = self.shell_params()
        extra = self['SHELL_EXTRA_ALTITUDES_KM'] or ()
        if isinstance(extra, (str, bytes, int, float)):
            raise ConfigError('SHELL_EXTRA_ALTITUDES_KM', 'expected a list '
                              'of altitudes, got %r' % (extra,))
        rv = [(primary, 1)]
        seen = set([primary.altitude_km])
        for idx, altitude in enumerate(extra):
            field = 'SHELL_EXTRA_ALTITUDES_KM[%d]' % idx
            try:
                params = primary._replace(
                    altitude_km=ShellParams(altitude_km=altitude).altitude_km)
            except ConfigError as e:
                raise ConfigError(field, str(e))
            if params.altitude_km in seen:
                raise ConfigError(field, 'duplicate altitude %g km'
                                  % params.altitude_km)
            seen.add(params.altitude_km)
            rv.append((params, 1 + len(rv) * primary.size))
        return rv

    def arrangement(self):
        return Arrangement.parse(self['ARRANGEMENT'])

    def flow_params(self):
        ns = self.get_namespace('TRAFFIC_')
        return FlowGenParams(
            total_bytes=parse_size(ns['total_bytes'], 'TRAFFIC_TOTAL_BYTES'),
            min_flow_bytes=parse_size(ns['min_flow_bytes'],
                                      'TRAFFIC_MIN_FLOW_BYTES'),
            max_flow_bytes=parse_size(ns['max_flow_bytes'],
                                      'TRAFFIC_MAX_FLOW_BYTES'),
            seed=ns['seed'])

    def regions(self):
        rv = self['TRAFFIC_REGIONS']
        if rv is None:
            return list(DEFAULT_REGIONS)
        regions = []
        for idx, item in enumerate(rv):
            if isinstance(item, TrafficRegion):
                regions.append(item)
                continue
            try:
                regions.append(TrafficRegion(**item))
            except TypeError as e:
                raise ConfigError('TRAFFIC_REGIONS[%d]' % idx, str(e))
        return regions

    def default_weight(self):
        rv = self['TRAFFIC_DEFAULT_WEIGHT']
        if isinstance(rv, bool) or not isinstance(rv, (int, float)) or \
                not rv > 0:
            raise ConfigError('TRAFFIC_DEFAULT_WEIGHT', 'must be > 0, got %r'
                              % (rv,))
        return float(rv)

    def sim_params(self):
        cap = self['SIM_BUFFER_CAP_BYTES']
        if cap is not None:
            cap = parse_size(cap, 'SIM_BUFFER_CAP_BYTES')
        return SimParams(
            link_bitrate_bps=int(self['SIM_LINK_BITRATE_BPS']),
            chunk_bytes=parse_size(self['SIM_CHUNK_BYTES'], 'SIM_CHUNK_BYTES'),
            buffer_cap_bytes=cap,
            seed=self['TRAFFIC_SEED'])
