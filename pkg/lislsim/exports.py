# -*- coding: utf-8 -*-
"""Plot-ready delimited text exports.  Every file starts with a header
row naming its columns.
"""
import os
import csv

from .orbital import subsatellite_point, slant_range_km
from .traffic import weight_histogram


SATELLITES_FILE = 'satellites.csv'
EDGES_FILE = 'edges.csv'
REGIONS_FILE = 'regions.csv'
HISTOGRAM_FILE = 'weight_histogram.csv'


def _write(path, header, rows):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def write_satellites(path, states, weights, inclination_deg):
    weight_of = dict((w.id, w.weight) for w in weights)
    rows = []
    for s in sorted(states, key=lambda s: s.id):
        pos = subsatellite_point(s, inclination_deg)
        rows.append((s.id, s.plane, s.index, '%.6f' % pos.lat_deg,
                     '%.6f' % pos.lon_deg, weight_of[s.id]))
    return _write(path, ('id', 'plane', 'index', 'lat_deg', 'lon_deg',
                         'weight'), rows)


def write_edges(path, graphs, inclination_deg):
    rows = []
    for altitude in sorted(graphs):
        graph = graphs[altitude]
        for u, v in graph.edges():
            km = slant_range_km(graph.state(u), graph.state(v),
                                inclination_deg)
            rows.append((u, v, altitude, '%.3f' % km))
    return _write(path, ('src', 'dst', 'altitude_km', 'length_km'), rows)


def write_regions(path, regions):
    return _write(path, ('name', 'lat_min', 'lat_max', 'lon_min', 'lon_max',
                         'weight'), [tuple(r) for r in regions])


def write_histogram(path, weights):
    return _write(path, ('weight', 'count'), weight_histogram(weights))


def export_all(out_dir, states, graphs, weights, regions, inclination_deg):
    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    join = lambda name: os.path.join(out_dir, name)
    return [
        write_satellites(join(SATELLITES_FILE), states, weights,
                         inclination_deg),
        write_edges(join(EDGES_FILE), graphs, inclination_deg),
        write_regions(join(REGIONS_FILE), regions),
        write_histogram(join(HISTOGRAM_FILE), weights),
    ]
