# -*- coding: utf-8 -*-
import io
import enum

import simplejson as _json


class JSONEncoder(_json.JSONEncoder):
    def default(self, o):
        if isinstance(o, enum.Enum):
            return o.value
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        return _json.JSONEncoder.default(self, o)


class JSONDecoder(_json.JSONDecoder):
    pass


def _defaults(kw):
    kw.setdefault('cls', JSONEncoder)
    kw.setdefault('sort_keys', True)


def dumps(obj, **kw):
    _defaults(kw)
    return _json.dumps(obj, **kw)


def dump(obj, fp, **kw):
    _defaults(kw)
    text = _wrap_writer_for_text(fp)
    _json.dump(obj, text, **kw)
    if text is not fp:
        text.flush()
        text.detach()


def loads(s, **kw):
    if isinstance(s, bytes):
        s = s.decode(kw.pop('encoding', None) or 'utf-8')
    kw.setdefault('cls', JSONDecoder)
    return _json.loads(s, **kw)


def load(fp, **kw):
    fp = _wrap_reader_for_text(fp, kw.pop('encoding', None) or 'utf-8')
    kw.setdefault('cls', JSONDecoder)
    return _json.load(fp, **kw)


def _wrap_reader_for_text(fp, encoding):
    if isinstance(fp.read(0), bytes):
        fp = io.TextIOWrapper(io.BufferedReader(fp), encoding)
    return fp


def _wrap_writer_for_text(fp, encoding='utf-8'):
    try:
        fp.write('')
    except TypeError:
        fp = io.TextIOWrapper(fp, encoding)
    return fp
