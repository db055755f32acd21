#------------------------------------------------------------------------------
#
# Copyright (c) turbdiff contributors.
# All rights reserved.
#
# This code is licensed under the MIT License.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files(the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and / or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions :
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
#
#------------------------------------------------------------------------------

'''Command-line front end: ``turbdiff <command> --config run.ini --out dir``.

Commands: kubo, simulate, sweep, corrector, validate-field. Each one writes its
outputs plus manifest.json into an output directory that only appears once
the command has finished.
'''
import argparse
import logging
import math
import os
import sys

import numpy as np

from . import __version__
from . import analysis
from . import config as run_config
from . import corrector
from . import field
from . import field_checks
from . import kubo
from . import log
from . import manifest
from . import spectrum
from . import tracer
from .constants import Csv, EnvVars, ExitCodes, Verdict
from .turbdiff_error import ConfigError, TurbdiffError

COMMANDS = ('kubo', 'simulate', 'sweep', 'corrector', 'validate-field')


class CommandResult(object):  # pylint: disable=too-few-public-methods
    def __init__(self, report, exit_code=ExitCodes.SUCCESS, derived=None):
        self.report = report
        self.exit_code = exit_code
        self.derived = derived or {}


def _warn_horizon(logger, params, mode_cfg, t_final):
    horizon = tracer.validity_horizon(params, mode_cfg.k_min_ratio)
    if t_final > horizon:
        logger.warn("t_final %(t)s exceeds the infrared validity horizon %(h)s; "
                    "lower k_min_ratio for a faithful finite-mode field",
                    {'t': t_final, 'h': horizon})
    return horizon


def cmd_kubo(config, out, threads=1, log_context=None):
    '''Taylor-Kubo matrix in both kinds, D_eps over the eps grid, and the phase verdict.'''
    params = config.model_params()
    phase = kubo.classify_phase(params.alpha, params.beta)
    one_sided = kubo.taylor_kubo(params, log_context=log_context)

    rows = []
    regularized = []
    for eps in config['kubo']['eps_grid']:
        d_eps = kubo.regularized_diffusivity(params, eps, log_context=log_context)
        regularized.append({'eps': eps, 'matrix': d_eps.to_dict()})
        rows.append([eps, d_eps.kind, float(d_eps.value[0, 0]), d_eps.abs_error_estimate])

    report = {
        'params': params.to_dict(),
        'phase': phase.to_dict(),
        'one_sided': one_sided.to_dict(),
        'covariance': one_sided.as_covariance().to_dict(),
        'regularized': regularized,
        }
    if 'json' in config['output']['formats']:
        manifest.write_json(out.file(Csv.KUBO_REPORT), report)
    if 'csv' in config['output']['formats']:
        manifest.write_csv(out.file(Csv.KUBO), Csv.KUBO_HEADER, rows)
    return CommandResult(report)


def _simulate(config, params, threads, log_context):
    logger = log.Logger('Simulate', log_context)
    mode_cfg = config.mode_config()
    dt = config.resolve_dt(params, log_context)
    cfg = config.integration_config(dt)
    horizon = _warn_horizon(logger, params, mode_cfg, cfg.t_final)
    table = field.ShellTable(params, mode_cfg.n_shells, mode_cfg.k_min_ratio, log_context)
    ensemble = tracer.run_ensemble(params, mode_cfg, cfg, config['ensemble']['n_traj'],
                                   config['ensemble']['master_seed'], n_jobs=threads,
                                   table=table, log_context=log_context)
    derived = {'dt': dt, 'validity_horizon': horizon, 'shells': table.manifest()}
    return ensemble, derived


def _msd_rows(curve):
    d = curve.d
    for index, s in enumerate(curve.times):
        row = [float(s), float(curve.msd_trace[index]), float(curve.stderr[index])]
        row.extend(float(curve.msd_matrix[index, i, j]) for i in range(d) for j in range(d))
        yield row

def msd_header(d):
    return ['s', 'msd_trace', 'stderr'] + ['msd_{}{}'.format(i + 1, j + 1)
                                           for i in range(d) for j in range(d)]


def cmd_simulate(config, out, threads=1, log_context=None):
    '''Ensemble, MSD, VACF, both estimates and their comparison with D*.'''
    params = config.model_params()
    ensemble, derived = _simulate(config, params, threads, log_context)
    window = config.window()
    formats = config['output']['formats']

    curve = analysis.msd(ensemble)
    fit = analysis.fit_exponent(curve, window)
    slope = analysis.msd_slope(curve, window)
    vacf = analysis.lagrangian_vacf(ensemble)
    green_kubo = analysis.green_kubo(vacf, strict=config['analysis']['strict_tail'],
                                     log_context=log_context)

    report = {
        'params': params.to_dict(),
        'phase': kubo.classify_phase(params.alpha, params.beta).to_dict(),
        'exponent_fit': fit.to_dict(),
        'msd_slope': slope.to_dict(),
        'green_kubo': green_kubo.to_dict(),
        }
    exit_code = ExitCodes.SUCCESS
    if report['phase']['verdict'] == Verdict.DIFFUSIVE:
        prediction = kubo.taylor_kubo(params, log_context=log_context).as_covariance()
        report['prediction'] = prediction.to_dict()
        report['compare'] = {
            'msd_slope': analysis.compare(slope, prediction).to_dict(),
            'green_kubo': analysis.compare(green_kubo, prediction).to_dict(),
            }
        if report['compare']['msd_slope']['verdict'] != 'pass':
            exit_code = ExitCodes.STATISTICAL

    if 'csv' in formats:
        manifest.write_csv(out.file(Csv.MSD), msd_header(curve.d), _msd_rows(curve))
        manifest.write_csv(out.file(Csv.VACF), Csv.VACF_HEADER,
                           ([float(s), float(c), float(e)]
                            for s, c, e in zip(vacf.lags, vacf.vacf, vacf.stderr)))
    if 'json' in formats:
        manifest.write_json(out.file(Csv.ESTIMATE), report)
    if 'npz' in formats:
        np.savez(out.file('trajectories.npz'), times=ensemble.times, positions=ensemble.positions)
    return CommandResult(report, exit_code, derived)


def _sweep_point(config, params, threads, log_context):
    phase = kubo.classify_phase(params.alpha, params.beta)
    row = [params.alpha, params.beta, phase.margin, phase.verdict, math.nan, math.nan, 'ok']
    if not config['sweep']['simulate']:
        return row
    try:
        ensemble, _ = _simulate(config, params, threads, log_context)
        fit = analysis.fit_exponent(analysis.msd(ensemble), config.window())
        row[4], row[5] = fit.exponent, fit.stderr
    except (TurbdiffError, ValueError) as exp:
        log.Logger('Sweep', log_context).warn("Point (%(alpha)s, %(beta)s) failed: %(error)s",
                                              {'alpha': params.alpha, 'beta': params.beta,
                                               'error': exp})
        row[6] = type(exp).__name__
    return row

def cmd_sweep(config, out, threads=1, log_context=None):
    '''Phase verdict on the (alpha, beta) grid, with MSD exponents when simulating.'''
    base = config.model_params()
    rows = []
    for alpha in config['sweep']['alpha_grid']:
        for beta in config['sweep']['beta_grid']:
            try:
                params = base.with_exponents(alpha, beta)
            except ValueError as exp:
                rows.append([alpha, beta, math.nan, '', math.nan, math.nan, type(exp).__name__])
                continue
            rows.append(_sweep_point(config, params, threads, log_context))
    manifest.write_csv(out.file(Csv.PHASE), Csv.PHASE_HEADER, rows)
    return CommandResult({'points': len(rows)})


def cmd_corrector(config, out, threads=1, log_context=None):
    '''Corrector integral over the grid with fitted and theoretical exponents.'''
    params = config.model_params()
    section = config['corrector']
    if section['deepen']:
        fit = corrector.deepen_scaling(section['op'], params, section['grid'], section['parameter'],
                                       log_context=log_context)
    else:
        fit = corrector.fit_scaling(section['op'], params, section['grid'], section['parameter'],
                                    log_context=log_context)
    rows = [[fit.parameter, value, integral, fit.exponent, fit.theory_exponent]
            for value, integral in fit.grid]
    manifest.write_csv(out.file(Csv.SCALING), Csv.SCALING_HEADER, rows)
    if 'json' in config['output']['formats']:
        manifest.write_json(out.file('scaling.json'), fit.to_dict())
    return CommandResult(fit.to_dict())


def cmd_validate_field(config, out, threads=1, log_context=None):
    '''Statistical battery of the synthesized field; any failed check sets exit code 4.'''
    params = config.model_params()
    mode_cfg = config.mode_config()
    section = config['validate']
    results = field_checks.run_battery(params, section['n_realizations'], params.seed,
                                       times=section['times'], ou_steps=section['ou_steps'],
                                       n_shells=mode_cfg.n_shells,
                                       modes_per_shell=mode_cfg.modes_per_shell,
                                       k_min_ratio=mode_cfg.k_min_ratio, log_context=log_context)
    report = {
        'checks': [result.to_dict() for result in results],
        'passed': all(result.passed for result in results),
        }
    manifest.write_json(out.file(Csv.VALIDATE_REPORT), report)
    exit_code = ExitCodes.SUCCESS if report['passed'] else ExitCodes.STATISTICAL
    return CommandResult(report, exit_code)


HANDLERS = {
    'kubo': cmd_kubo,
    'simulate': cmd_simulate,
    'sweep': cmd_sweep,
    'corrector': cmd_corrector,
    'validate-field': cmd_validate_field,
    }


def run_command(command, config, out_dir, threads=1, expected_outputs=None, log_context=None):
    '''Validate, run and record one command; returns (CommandResult, RunManifest).'''
    logger = log.Logger('Cli', log_context)
    run_config.validate(config, log_context)
    record = manifest.RunManifest(command, config)
    with manifest.OutputDirectory(out_dir, log_context) as out:
        result = HANDLERS[command](config, out, threads, log_context)
        record.derived = result.derived
        record.derived['energy_normalization'] = spectrum.energy_normalization(config['model']['d'])
        record.outputs = manifest.digest_outputs(out.path)
        record.finished = manifest.now()
        record.write(out.file(Csv.MANIFEST))

    if expected_outputs is not None and expected_outputs != record.outputs:
        logger.warn("Rerun outputs differ from the manifest: %(names)s",
                    {'names': sorted(name for name in set(expected_outputs) | set(record.outputs)
                                     if expected_outputs.get(name) != record.outputs.get(name))})
        result.exit_code = result.exit_code or ExitCodes.FAILURE
    return result, record


def _thread_count(requested):
    value = requested if requested is not None else os.environ.get(EnvVars.THREADS, 1)
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise ConfigError("Thread count should be an integer >= 1, got {!r}.".format(value),
                          {'threads': value})
    return threads

def build_parser():
    parser = argparse.ArgumentParser(prog='turbdiff',
                                     description='Turbulent diffusion simulator and quadrature lab.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--config', help='INI run configuration')
    parser.add_argument('--from-manifest', dest='from_manifest',
                        help='rerun the resolved config recorded in a manifest.json')
    parser.add_argument('--out', help='output directory (default: [output] dir)')
    parser.add_argument('--seed', type=int, help='override model seed and master seed')
    parser.add_argument('--threads', type=int, help='worker count; never changes results')
    parser.add_argument('--verbose', action='store_true', help='debug logging to stderr')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        log.set_logging_options({'level': logging.DEBUG, 'handler': logging.StreamHandler()})
    log_context = log.create_log_context()
    logger = log.Logger('Cli', log_context)

    try:
        expected = None
        if args.from_manifest:
            previous = manifest.RunManifest.load(args.from_manifest)
            config, expected = previous.config, previous.outputs
            if previous.command != args.command:
                raise TurbdiffError("Manifest records command {!r}, not {!r}.".format(
                    previous.command, args.command))
        elif args.config:
            config = run_config.load(args.config)
        else:
            sys.stderr.write('turbdiff: one of --config or --from-manifest is required\n')
            return ExitCodes.VALIDATION
        if args.seed is not None:
            config = config.with_seed(args.seed)
        threads = _thread_count(args.threads)
        out_dir = args.out or config['output']['dir']
        logger.info("Running %(command)s into %(out)s", {'command': args.command, 'out': out_dir})
        result, _ = run_command(args.command, config, out_dir, threads, expected, log_context)
        return result.exit_code
    except TurbdiffError as exp:
        logger.exception("%(command)s failed", {'command': args.command})
        sys.stderr.write('turbdiff: {}\n'.format(exp))
        return exp.exit_code
    except ValueError as exp:
        logger.exception("%(command)s rejected its input", {'command': args.command})
        sys.stderr.write('turbdiff: {}\n'.format(exp))
        return ExitCodes.VALIDATION
    except (IOError, OSError) as exp:
        sys.stderr.write('turbdiff: {}\n'.format(exp))
        return ExitCodes.FAILURE
