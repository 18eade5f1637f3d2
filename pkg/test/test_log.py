# -*- coding: utf-8 -*-
import logging

import pytest

from lislsim.simulator import Simulator


def test_logger_is_cached():
    sim = Simulator()
    assert sim.logger is sim.logger
    assert sim.logger.name == 'lislsim'


def test_logger_follows_name():
    sim = Simulator({'LOGGER_NAME': 'lislsim.test'})
    assert sim.logger.name == 'lislsim.test'
    sim.logger_name = 'lislsim.other'
    assert sim.logger.name == 'lislsim.other'
    del logging.getLogger('lislsim.test').handlers[:]
    del logging.getLogger('lislsim.other').handlers[:]


def test_debug_level_follows_simulator():
    sim = Simulator()
    assert sim.logger.getEffectiveLevel() != logging.DEBUG
    sim.debug = True
    assert sim.logger.getEffectiveLevel() == logging.DEBUG


def test_production_shows_warnings_only(capsys):
    sim = Simulator()
    sim.logger.info('flow 1 complete')
    sim.logger.warning('flow 2 dropped')
    err = capsys.readouterr().err
    assert 'flow 1 complete' not in err
    assert 'WARNING in test_log: flow 2 dropped' in err


def test_debug_shows_flow_lines(capsys):
    sim = Simulator({'DEBUG': True})
    sim.logger.info('flow 1 complete')
    err = capsys.readouterr().err
    assert 'INFO in test_log' in err
    assert 'flow 1 complete' in err


@pytest.mark.parametrize('policy, debug, shown', [
    ('always', False, True),
    ('always', True, True),
    ('debug', False, False),
    ('debug', True, True),
    ('production', False, True),
    ('production', True, False),
    ('never', False, False),
])
def test_handler_policy(capsys, policy, debug, shown):
    sim = Simulator({'LOGGER_HANDLER_POLICY': policy, 'DEBUG': debug})
    sim.logger.warning('flow 2 dropped')
    assert ('flow 2 dropped' in capsys.readouterr().err) == shown


def test_debug_switched_on_after_first_use(capsys):
    sim = Simulator()
    sim.logger.info('flow 0 complete')
    sim.debug = True
    sim.logger.info('flow 1 complete')
    err = capsys.readouterr().err
    assert 'flow 0 complete' not in err
    assert 'flow 1 complete' in err


def test_debug_simulator_after_quiet_one(capsys):
    Simulator().logger.info('flow 0 complete')
    Simulator({'DEBUG': True}).logger.info('flow 1 complete')
    err = capsys.readouterr().err
    assert 'flow 0 complete' not in err
    assert 'flow 1 complete' in err


def test_disabled_levels_stay_quiet(capsys):
    sim = Simulator({'DEBUG': True})
    logging.disable(logging.INFO)
    try:
        sim.logger.info('flow 1 complete')
    finally:
        logging.disable(logging.NOTSET)
    assert 'flow 1 complete' not in capsys.readouterr().err
