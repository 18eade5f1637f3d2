# -*- coding: utf-8 -*-
"""Command line entry point.

Exit codes: 0 success, 1 simulation or topology error, 2 configuration
error, 3 satellite record load error, 4 run finished with dropped flows,
5 diameter/formula mismatch in ``validate``.
"""
import sys
from functools import update_wrapper

import click

from . import json
from .errors import LislError, ConfigError
from .simulator import Simulator
from .topology import Arrangement


EXIT_DROPPED = 4
EXIT_MISMATCH = 5


class LislCommandError(click.ClickException):
    def __init__(self, error):
        click.ClickException.__init__(self, '%s: %s' % (
            error.__class__.__name__, error))
        self.exit_code = error.exit_code


class ScriptInfo(object):
    def __init__(self, config_path=None, debug=None, create_simulator=None):
        #: Path of the JSON or Python configuration file, if any.
        self.config_path = config_path
        #: Overrides the DEBUG setting when not None.
        self.debug = debug
        #: Optional factory taking this script info, used by tests.
        self.create_simulator = create_simulator
        self._loaded = None

    def load_simulator(self):
        if self._loaded is not None:
            return self._loaded
        if self.create_simulator is not None:
            rv = self.create_simulator(self)
        else:
            rv = Simulator()
            try:
                if self.config_path is not None:
                    rv.config.from_file(self.config_path)
                else:
                    rv.config.from_envvar('LISLSIM_SETTINGS', silent=True)
            except IOError as e:
                raise ConfigError(e.filename or self.config_path,
                                  e.strerror or str(e))
        if self.debug is not None:
            rv.debug = self.debug
        self._loaded = rv
        return rv


pass_script_info = click.make_pass_decorator(ScriptInfo, ensure=True)


def with_simulator(f):
    """Passes the configured :class:`Simulator` as first argument and
    turns lislsim errors into click errors with the matching exit code.
    """
    @click.pass_context
    def decorator(__cx, *args, **kwargs):
        try:
            sim = __cx.ensure_object(ScriptInfo).load_simulator()
            return __cx.invoke(f, sim, *args, **kwargs)
        except LislError as e:
            raise LislCommandError(e)
    return update_wrapper(decorator, f)


def set_debug_value(cx, param, value):
    if value is not None:
        cx.ensure_object(ScriptInfo).debug = value


def set_config_value(cx, param, value):
    if value is not None:
        cx.ensure_object(ScriptInfo).config_path = value


debug_option = click.Option(['--debug/--no-debug'],
    help='Enable or disable debug output (one line per flow).',
    default=None, callback=set_debug_value, expose_value=False)


def config_option(f):
    return click.option('-c', '--config', type=click.Path(dir_okay=False),
                        help='JSON or Python configuration file.',
                        callback=set_config_value, expose_value=False,
                        is_eager=True)(f)


def parse_arrangements(cx, param, value):
    if value is None:
        return list(Arrangement)
    try:
        return [Arrangement.parse(v) for v in value.split(',') if v.strip()]
    except ConfigError as e:
        raise click.BadParameter(str(e))


class LislGroup(click.Group):
    def __init__(self, create_simulator=None, **extra):
        params = list(extra.pop('params', None) or ())
        params.append(debug_option)
        click.Group.__init__(self, params=params, **extra)
        self.create_simulator = create_simulator

    def main(self, *args, **kwargs):
        obj = kwargs.get('obj')
        if obj is None:
            obj = ScriptInfo(create_simulator=self.create_simulator)
        kwargs['obj'] = obj
        kwargs.setdefault('auto_envvar_prefix', 'LISLSIM')
        return click.Group.main(self, *args, **kwargs)


class ProgressReporter(object):
    """Progress bar fed by the engine's progress observer.  Only drawn
    when stderr is a terminal.
    """

    def __init__(self, label='Simulating'):
        self.label = label
        self.bar = None
        self.stream = click.get_text_stream('stderr')
        self.enabled = self.stream.isatty()

    def __call__(self, completed, total, sim_time_ns):
        if not self.enabled:
            return
        if self.bar is None:
            self.bar = click.progressbar(length=total, label=self.label,
                                         file=self.stream)
            self.bar.__enter__()
        self.bar.update(1)

    def close(self):
        if self.bar is not None:
            self.bar.__exit__(None, None, None)
            self.bar = None


cli = LislGroup(help='''\
Flow-level simulator of laser inter-satellite links in LEO shells.

Settings come from --config (JSON or Python file) or the file named by
the LISLSIM_SETTINGS environment variable; everything else uses the
built-in defaults (72 planes of 22 satellites at 53 degrees, 1 GiB of
traffic, 100 Gbps links).

Example usage:

  lislsim generate --out satellites
  lislsim simulate --records satellites --seed 3
''')


@cli.command('generate', short_help='Writes one record file per satellite.')
@config_option
@click.option('--out', 'out_dir', type=click.Path(file_okay=False),
              help='Record directory (default: RECORDS_DIR).')
@with_simulator
def generate_command(sim, out_dir):
    records = sim.generate(out_dir)
    click.echo('wrote %d satellite records to %s'
               % (len(records), out_dir or sim.records_dir))


@cli.command('simulate', short_help='Runs the simulation on a record '
             'directory.')
@config_option
@click.option('--records', 'record_dir', type=click.Path(file_okay=False),
              help='Record directory (default: RECORDS_DIR).')
@click.option('--seed', type=int, default=None,
              help='Overrides TRAFFIC_SEED.')
@click.option('--json', 'as_json', is_flag=True,
              help='Print the report as one JSON line.')
@with_simulator
@click.pass_context
def simulate_command(cx, sim, record_dir, seed, as_json):
    progress = ProgressReporter()
    try:
        report = sim.simulate(record_dir, seed=seed, progress=progress)
    finally:
        progress.close()
    if as_json:
        click.echo(report.as_json(arrangement=sim.config['ARRANGEMENT'],
                                  seed=sim.config['TRAFFIC_SEED']
                                  if seed is None else seed))
    else:
        click.echo(report.as_text())
    if report.flows_dropped:
        cx.exit(EXIT_DROPPED)


@cli.command('validate', short_help='Compares BFS diameters with the hop '
             'formulas.')
@config_option
@with_simulator
@click.pass_context
def validate_command(cx, sim):
    rows = sim.validate()
    click.echo('%-22s %8s %8s  %s' % ('arrangement', 'diameter', 'formula',
                                      'match'))
    for row in rows:
        if row.formula is None:
            click.echo('%-22s %8d %8s  %s' % (row.arrangement.value,
                                              row.diameter, '-',
                                              'skipped (odd)'))
        else:
            click.echo('%-22s %8d %8d  %s' % (row.arrangement.value,
                                              row.diameter, row.formula,
                                              'yes' if row.match else 'NO'))
    if rows and rows[0].formula is None:
        click.echo('plane or per-plane count is odd; formula comparison '
                   'skipped', err=True)
    if any(row.match is False for row in rows):
        cx.exit(EXIT_MISMATCH)


@cli.command('export', short_help='Writes plot-ready delimited files.')
@config_option
@click.option('--records', 'record_dir', type=click.Path(file_okay=False),
              help='Record directory (default: RECORDS_DIR).')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False),
              help='Output directory (default: EXPORT_DIR).')
@with_simulator
def export_command(sim, record_dir, out_dir):
    for path in sim.export(record_dir, out_dir):
        click.echo(path)


@cli.command('sweep', short_help='Repeats the simulation per arrangement.')
@config_option
@click.option('--trials', type=click.IntRange(min=1), default=3,
              help='Trials per arrangement.')
@click.option('--arrangements', callback=parse_arrangements, default=None,
              help='Comma separated, e.g. full4,two or 1,2,3,4.')
@click.option('--out', 'out_file', type=click.File('w'), default=None,
              help='Also write one JSON line per trial here.')
@with_simulator
@click.pass_context
def sweep_command(cx, sim, trials, arrangements, out_file):
    header = '%-22s %6s %6s %10s %12s' % ('arrangement', 'trial', 'flows',
                                         'sim time', 'real time')
    click.echo(header)

    def trial_done(row):
        click.echo('%-22s %6d %6d %9.6fs %11.3fs' % (
            row.arrangement.value, row.trial, row.flow_count,
            row.sim_time_ns / 1e9, row.wall_time_ms / 1e3))
        if out_file is not None:
            out_file.write(json.dumps(row._asdict()) + '\n')

    rows, means = sim.sweep(arrangements, trials, progress=trial_done)
    for mean in means:
        click.echo('%-22s %6s %6.2f %9.6fs %11.3fs' % (
            mean.arrangement.value, 'mean', mean.flow_count,
            mean.sim_time_ns / 1e9, mean.wall_time_ms / 1e3))
    if any(row.flows_dropped for row in rows):
        cx.exit(EXIT_DROPPED)


def main(as_module=False):
    args = sys.argv[1:]
    if as_module:
        name = 'python -m ' + __package__
    else:
        name = None
    cli.main(args=args, prog_name=name)


if __name__ == '__main__':
    main(as_module=True)
