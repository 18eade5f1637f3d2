# -*- coding: utf-8 -*-
__version__ = '0.1.0'

from .errors import (LislError, ConfigError, RecordLoadError, TopologyError,
                     RoutingError, SimulationError)
from .config import Config
from .orbital import ShellParams
from .topology import Arrangement
from .traffic import TrafficRegion, FlowGenParams, DataFlow
from .engine import Engine, SimParams, SimReport
from .simulator import Simulator
from .signals import (simulation_started, flow_completed, flow_dropped,
                      simulation_finished)
