"""The ``tempokey`` command.

    tempokey <qber-curve|distance|rate-curve|simulate|attack-optimize>
             [--config FILE] [--out PATH] [--seed N] [--expect-attack] [-v]

CSV and JSON go to ``--out`` (or ``output.path`` in the configuration),
standard output otherwise. Exit codes: 0 success, 2 configuration or
validation error, 3 statistical inconsistency, 4 output error.
"""
import argparse
import csv
import io
import json
import sys

from tempokey import error, logger
from tempokey.cli.config import RunConfig
from tempokey.distance import qber_sweep, rate_cutoff, secure_distance, sweep
from tempokey.montecarlo import compare_to_analytic, run_simulation
from tempokey.protocols.kinds import ProtocolKind
from tempokey.security import attack
from tempokey.security.optimizer import optimize_attack_bruteforce
from tempokey.utils import seeding
from tempokey.utils.atomic_write import atomic_write
from tempokey.utils.json_utils import finite_or_label, json_encode_np
from tempokey.version import VERSION

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STATISTICS = 3
EXIT_OUTPUT = 4

QBER_COLUMNS = ['protocol', 'V_A', 'Q', 'I_AB', 'chi_AE', 'delta_I']
RATE_COLUMNS = ['source', 'protocol', 'L_km', 'rate', 'rate_db']
OPTIMIZER_TOLERANCE = 1e-4


def format_number(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return '{:.12g}'.format(value)
    return str(value)


def _config_comment(cfg):
    return '# config: {}\n'.format(json.dumps(cfg.echo(), sort_keys=True, default=json_encode_np))


def _csv_text(cfg, columns, rows, footer=()):
    buf = io.StringIO()
    buf.write(_config_comment(cfg))
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    for line in footer:
        buf.write('# {}\n'.format(line))
    return buf.getvalue()


def _json_text(command, cfg, body):
    report = {'command': command, 'version': VERSION, 'config': cfg.echo()}
    report.update(body)
    return json.dumps(report, indent=2, sort_keys=True, default=json_encode_np) + '\n'


def write_output(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with atomic_write(path, newline='') as f:
            f.write(text)
    except (IOError, OSError) as e:
        raise error.OutputError('Cannot write {}: {}'.format(path, e))
    logger.info('Wrote %s', path)


def cmd_qber_curve(cfg, args):
    q_grid = cfg.q_grid()
    rows = []
    for protocol in cfg.protocols():
        for row in qber_sweep(protocol, cfg['analysis']['v_a_values'], q_grid):
            rows.append([row.protocol.value, float(row.v_a), float(row.q), row.i_ab, row.chi_ae, row.delta_i])
    write_output(cfg.output_path(), _csv_text(cfg, QBER_COLUMNS, rows))
    return EXIT_OK


def cmd_distance(cfg, args):
    c = cfg.channel()
    entries = []
    for protocol in cfg.protocols():
        for v_a in cfg['analysis']['v_a_values']:
            link = c.replace(v_a=v_a)
            result = secure_distance(protocol, link)
            entries.append({
                'protocol': protocol.value,
                'v_a': v_a,
                'max_qber': attack.max_qber(protocol, v_a),
                'length_km': finite_or_label(result.length_km),
                'bracket_width_km': result.bracket_width_km,
            })
    write_output(cfg.output_path(), _json_text('distance', cfg, {'distances': entries}))
    return EXIT_OK


def cmd_rate_curve(cfg, args):
    c = cfg.channel()
    r = cfg['rates']
    rows, footer = [], []
    for source in cfg.sources():
        kwargs = cfg.model_kwargs(source)
        curve = sweep(source, r['protocol'], c, r['l_min'], r['l_max'], r['l_step'], **kwargs)
        for p in curve.points:
            rate_db = p.rate_db if p.rate_db is not None else float('-inf')
            rows.append([source.value, curve.protocol.value, p.length_km, p.rate, float(rate_db)])
        cutoff = rate_cutoff(source, curve.protocol, c, **kwargs)
        footer.append('cutoff,{},{},{}'.format(source.value, curve.protocol.value,
                                               format_number(finite_or_label(cutoff.length_km))))
    write_output(cfg.output_path(), _csv_text(cfg, RATE_COLUMNS, rows, footer))
    return EXIT_OK


def cmd_simulate(cfg, args):
    sim = cfg.simulation()
    result = run_simulation(sim)
    report = compare_to_analytic(result, sim)
    if args.expect_attack:
        ok = 'visibility' in report.flagged
    else:
        ok = report.consistent
    body = {
        'bit_generator': seeding.BIT_GENERATOR,
        'result': result.to_dict(),
        'comparison': report.to_dict(),
        'expect_attack': bool(args.expect_attack),
        'passed': ok,
    }
    write_output(cfg.output_path(), _json_text('simulate', cfg, body))
    if not ok:
        logger.error('Simulation disagrees with the channel model: flagged %s', report.flagged)
        return EXIT_STATISTICS
    return EXIT_OK


def cmd_attack_optimize(cfg, args):
    a = cfg['attack_optimize']
    protocol = ProtocolKind.parse(a['protocol'])
    q, v_a = a['q'], a['v_a']
    v, _ = attack.key_coherence(protocol, q, v_a)
    v_target = v_a if protocol is ProtocolKind.TS3 else float(v)
    optimum = optimize_attack_bruteforce(protocol, q, v_target, a['grid_resolution'])
    point = attack.secret_rate(protocol, q, v_a)
    body = {
        'v_target': v_target,
        'bruteforce': {
            'params': dict(optimum.params._asdict()),
            's_rho_e': optimum.s_max,
            'dq_step': optimum.dq_step,
            's_step': optimum.s_step,
            'geometry': None if optimum.geometry is None else dict(optimum.geometry._asdict()),
        },
        'closed_form': dict(point._asdict()),
        'difference': optimum.s_max - point.s_rho_e,
        'within_tolerance': abs(optimum.s_max - point.s_rho_e) <= OPTIMIZER_TOLERANCE,
        'chi_over_i_ab': point.chi_ae / point.i_ab if point.i_ab > 0 else None,
    }
    write_output(cfg.output_path(), _json_text('attack-optimize', cfg, body))
    return EXIT_OK


COMMANDS = {
    'qber-curve': cmd_qber_curve,
    'distance': cmd_distance,
    'rate-curve': cmd_rate_curve,
    'simulate': cmd_simulate,
    'attack-optimize': cmd_attack_optimize,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON run configuration (defaults when omitted)')
    common.add_argument('--out', help='output file (standard output when omitted)')
    common.add_argument('--seed', type=int, help='simulation seed, overrides the configuration')
    common.add_argument('--expect-attack', action='store_true',
                        help='simulate: succeed only if the coherence check flags an eavesdropper')
    common.add_argument('-v', '--verbose', action='store_true')

    parser = argparse.ArgumentParser(prog='tempokey', description='Security analysis of time-coding QKD protocols.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + VERSION)
    sub = parser.add_subparsers(dest='command')
    sub.required = True
    for name in sorted(COMMANDS):
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        logger.set_level(logger.INFO)
    try:
        cfg = RunConfig.load(args.config) if args.config else RunConfig()
        cfg.override(seed=args.seed, out=args.out)
        return COMMANDS[args.command](cfg, args)
    except error.OutputError as e:
        logger.error('%s', e)
        return EXIT_OUTPUT
    except (error.ValidationError, error.Unregistered) as e:
        logger.error('%s', e)
        return EXIT_CONFIG
    except error.EstimationError as e:
        logger.error('%s', e)
        return EXIT_STATISTICS


if __name__ == '__main__':
    sys.exit(main())
