# -*- coding: utf-8 -*-


class LislError(Exception):
    """Base class for every error raised by lislsim."""
    exit_code = 1


class ConfigError(LislError, ValueError):
    exit_code = 2

    def __init__(self, field, message):
        self.field = field
        LislError.__init__(self, '%s: %s' % (field, message))


class RecordLoadError(LislError):
    exit_code = 3

    def __init__(self, filename, message):
        self.filename = filename
        LislError.__init__(self, '%s: %s' % (filename, message))


class TopologyError(LislError):
    pass


class RoutingError(LislError):
    pass


class SimulationError(LislError):
    pass
