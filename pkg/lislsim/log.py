# -*- coding: utf-8 -*-
import sys
from logging import getLogger, getLoggerClass,  \
                    StreamHandler, Formatter,   \
                    NOTSET, DEBUG, WARNING


#: dropped flows and errors outside debug mode
PROD_LOG_FORMAT = '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'

#: one line per completed flow, with the emitting engine code location
DEBUG_LOG_FORMAT = (
    '%(levelname)s in %(module)s [%(pathname)s:%(lineno)d]:\n' +
    '%(message)s'
)


def _should_log_for(sim, mode):
    policy = sim.config['LOGGER_HANDLER_POLICY']
    return policy == mode or policy == 'always'


class _ModeHandler(StreamHandler):
    """Writes to stderr only while the simulator is in ``mode`` ('debug'
    or 'production') and the handler policy allows that mode.
    """

    mode = None

    def __init__(self, sim, level, fmt):
        StreamHandler.__init__(self, sys.stderr)
        self.sim = sim
        self.setLevel(level)
        self.setFormatter(Formatter(fmt))

    def active(self):
        in_debug = bool(self.sim.debug)
        return in_debug == (self.mode == 'debug') and \
            _should_log_for(self.sim, self.mode)

    def emit(self, record):
        if self.active():
            StreamHandler.emit(self, record)


class DebugFlowHandler(_ModeHandler):
    mode = 'debug'


class ProductionHandler(_ModeHandler):
    mode = 'production'


def create_logger(sim):
    """Creates the logger for a simulator.  The effective level follows
    ``sim.debug`` at every call: in debug mode every per-flow line is
    shown, otherwise only warnings (dropped flows) and errors reach
    stderr.  Handlers attached under the same name earlier are removed.
    """
    Logger = getLoggerClass()

    class SimulatorLogger(Logger):
        def getEffectiveLevel(self):
            if self.level == NOTSET and sim.debug:
                return DEBUG
            return Logger.getEffectiveLevel(self)

        # the stdlib caches isEnabledFor per level; DEBUG can flip later
        def isEnabledFor(self, level):
            if self.manager.disable >= level:
                return False
            return level >= self.getEffectiveLevel()

    logger = getLogger(sim.logger_name)
    del logger.handlers[:]
    logger.__class__ = SimulatorLogger
    logger.addHandler(DebugFlowHandler(sim, DEBUG, DEBUG_LOG_FORMAT))
    logger.addHandler(ProductionHandler(sim, WARNING, PROD_LOG_FORMAT))
    return logger
