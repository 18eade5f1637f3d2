# -*- coding: utf-8 -*-
"""Satellite placement on circular inclined orbits.

Positions are an epoch snapshot: satellites do not move during a run and
Earth rotation is ignored, so the sub-satellite point is a pure function of
the orbital plane's right ascension and the satellite's argument of
latitude.  Angles are degrees at the interface and radians inside.
"""
import math
from collections import namedtuple

from .errors import ConfigError


EARTH_RADIUS_KM = 6371.0


class ShellParams(namedtuple('ShellParams', [
        'planes', 'sats_per_plane', 'altitude_km', 'inclination_deg',
        'phasing_offset'])):
    """Generative description of one orbital shell: ``planes`` (o) rings of
    ``sats_per_plane`` (q) satellites.  ``phasing_offset`` shifts plane p
    by ``p * phasing_offset / o`` satellite slots.
    """
    __slots__ = ()

    def __new__(cls, planes=72, sats_per_plane=22, altitude_km=540.0,
                inclination_deg=53.0, phasing_offset=0):
        _check_int('planes', planes, 3)
        _check_int('sats_per_plane', sats_per_plane, 3)
        _check_int('phasing_offset', phasing_offset, 0)
        if isinstance(altitude_km, bool) or \
                not isinstance(altitude_km, (int, float)) or \
                not altitude_km > 0:
            raise ConfigError('altitude_km',
                              'must be > 0, got %r' % (altitude_km,))
        if isinstance(inclination_deg, bool) or \
                not isinstance(inclination_deg, (int, float)) or \
                not 0 <= inclination_deg < 180:
            raise ConfigError('inclination_deg',
                              'must be in [0, 180), got %r'
                              % (inclination_deg,))
        return super(ShellParams, cls).__new__(
            cls, planes, sats_per_plane, float(altitude_km),
            float(inclination_deg), phasing_offset)

    @property
    def size(self):
        return self.planes * self.sats_per_plane


def _check_int(field, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, 'must be an integer, got %r' % (value,))
    if value < minimum:
        raise ConfigError(field, 'must be >= %d, got %d' % (minimum, value))


SatelliteState = namedtuple('SatelliteState', [
    'id', 'plane', 'index', 'raan_deg', 'arg_lat_deg', 'altitude_km'])

GeoCoord = namedtuple('GeoCoord', ['lat_deg', 'lon_deg'])


def wrap180(deg):
    """Wraps an angle in degrees into (-180, 180]."""
    rv = math.fmod(deg, 360.0)
    if rv <= -180.0:
        rv += 360.0
    elif rv > 180.0:
        rv -= 360.0
    return rv


def place_shell(params, first_id=1):
    """Returns one :class:`SatelliteState` per satellite, ids
    ``first_id .. first_id + o*q - 1``, planes evenly spaced in right
    ascension and satellites evenly spaced in argument of latitude within
    each plane.
    """
    o, q = params.planes, params.sats_per_plane
    plane_step = 360.0 / o
    slot_step = 360.0 / q
    rv = []
    for p in range(o):
        raan = p * plane_step
        for i in range(q):
            arg_lat = math.fmod((i + p * params.phasing_offset / o)
                                * slot_step, 360.0)
            rv.append(SatelliteState(id=first_id + p * q + i, plane=p,
                                     index=i, raan_deg=raan,
                                     arg_lat_deg=arg_lat,
                                     altitude_km=params.altitude_km))
    return rv


def subsatellite_point(state, inclination_deg):
    inc = math.radians(inclination_deg)
    u = math.radians(state.arg_lat_deg)
    lat = math.asin(math.sin(inc) * math.sin(u))
    y = math.cos(inc) * math.sin(u)
    x = math.cos(u)
    # directly over a pole the longitude is undefined; pin it to the node
    if abs(x) < 1e-12 and abs(y) < 1e-12:
        lon = 0.0
    else:
        lon = math.degrees(math.atan2(y, x))
    return GeoCoord(lat_deg=math.degrees(lat),
                    lon_deg=wrap180(lon + state.raan_deg))


def ecef_position(state, inclination_deg):
    """Earth-centred cartesian position in km at the epoch."""
    r = EARTH_RADIUS_KM + state.altitude_km
    inc = math.radians(inclination_deg)
    raan = math.radians(state.raan_deg)
    u = math.radians(state.arg_lat_deg)
    cu, su = math.cos(u), math.sin(u)
    cr, sr = math.cos(raan), math.sin(raan)
    ci = math.cos(inc)
    return (r * (cr * cu - sr * su * ci),
            r * (sr * cu + cr * su * ci),
            r * su * math.sin(inc))


def slant_range_km(a, b, inclination_deg):
    pa = ecef_position(a, inclination_deg)
    pb = ecef_position(b, inclination_deg)
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(pa, pb)))
