# -*- coding: utf-8 -*-
from blinker import Namespace

_signals = Namespace()
simulation_started = _signals.signal('simulation-started')
flow_completed = _signals.signal('flow-completed')
flow_dropped = _signals.signal('flow-dropped')
simulation_finished = _signals.signal('simulation-finished')
