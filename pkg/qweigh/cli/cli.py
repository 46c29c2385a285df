import argparse
import json
import logging
import sys
from contextlib import redirect_stdout, redirect_stderr
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from qweigh.designs import identity, sylvester, w43_power, paley_one, paley_two, tensor
from qweigh.designs import verify_weighing, read_matrix, write_matrix, serialize_matrix
from qweigh.field import make_field, elem_from_rank, legendre, is_prime_power
from qweigh.protocols import wm_recover, bv_recover, sls_quantum, sls_classical, reports_to_frame
from qweigh.protocols import wm_budget, classical_bounds, sls_bounds, corollary_family
from qweigh.protocols import optimal_tree, family_tables, sls_family
from qweigh.protocols.reports import _Report
from qweigh.utils import QweighError, configure_logging, defaults

logger = logging.getLogger(__name__)

_FAMILIES = {'identity': identity, 'sylvester': sylvester, 'w43': w43_power,
             'paley1': paley_one, 'paley2': paley_two}


#------------------------------------------------------------------------------------
def _common():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=defaults.getpar('default_seed'),
                        help='seed for sample-mode measurements')
    common.add_argument('--format', choices=('text', 'json', 'csv'), default='text')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    return common


def _field_args(parser):
    parser.add_argument('--p', type=int, required=True, help='odd prime')
    parser.add_argument('--k', type=int, default=1, help='extension degree')


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog='qweigh', description='Query complexity of weighing matrix and shifted Legendre problems')
    sub = parser.add_subparsers(dest='command', required=True)

    field = sub.add_parser('field', help='finite field information').add_subparsers(dest='action', required=True)
    info = field.add_parser('info', parents=[common])
    _field_args(info)

    chi = sub.add_parser('chi', parents=[common], help='quadratic character by rank')
    _field_args(chi)
    chi.add_argument('--x', type=int, default=None, help='element rank (all ranks when omitted)')

    matrix = sub.add_parser('matrix', help='weighing matrices').add_subparsers(dest='action', required=True)
    for name, arg, what in (('sylvester', '--t', 'tensor power'), ('w43', '--t', 'tensor power'),
                            ('paley1', '--q', 'prime power, 3 mod 4'), ('paley2', '--q', 'prime power, 1 mod 4'),
                            ('identity', '--n', 'dimension')):
        m = matrix.add_parser(name, parents=[common])
        m.add_argument(arg, type=int, required=True, help=what)
        m.add_argument('--out', default=None, help='write the matrix file here')
    m = matrix.add_parser('tensor', parents=[common])
    m.add_argument('--file', nargs=2, required=True, metavar=('LEFT', 'RIGHT'))
    m.add_argument('--out', default=None)
    m = matrix.add_parser('verify', parents=[common])
    m.add_argument('--file', required=True)

    run = sub.add_parser('run', help='run a protocol').add_subparsers(dest='action', required=True)
    wm = run.add_parser('wm', parents=[common])
    src = wm.add_mutually_exclusive_group(required=True)
    src.add_argument('--file', help='verified matrix file')
    src.add_argument('--matrix', choices=sorted(_FAMILIES), help='built-in family')
    wm.add_argument('--param', type=int, default=1, help='t, q or n of the built-in family')
    wm.add_argument('--mode', choices=('full', 'sample'), default='full')
    bv = run.add_parser('bv', parents=[common])
    bv.add_argument('--n', type=int, required=True, help='number of bits')
    bv.add_argument('--s', default=None, help='hidden bit string')
    sq = run.add_parser('sls-quantum', parents=[common])
    sq.add_argument('--mode', choices=('full', 'sample'), default='full')
    sc = run.add_parser('sls-classical', parents=[common])
    for p in (wm, sq, sc):
        p.add_argument('--s', type=int, default=None, help='hidden rank')
    for p in (sq, sc):
        _field_args(p)
    for p in (wm, bv, sq, sc):
        p.add_argument('--all-s', action='store_true', help='run every hidden value')

    bounds = sub.add_parser('bounds', parents=[common], help='classical lower bounds')
    bounds.add_argument('--n', type=int)
    bounds.add_argument('--k', type=int)
    bounds.add_argument('--q', type=int, help='shifted Legendre bounds for F_q instead')
    bounds.add_argument('--eps', type=float, default=0.0)

    family = sub.add_parser('family', parents=[common], help='tensor-power family table')
    family.add_argument('--n', type=int, required=True)
    family.add_argument('--k', type=int, required=True)
    family.add_argument('--t-max', type=int, default=3)
    family.add_argument('--eps', type=float, default=0.0)

    tree = sub.add_parser('tree', parents=[common], help='optimal classical decision tree')
    tree.add_argument('--family', choices=('identity', 'w43', 'sylvester', 'sls'), required=True)
    tree.add_argument('--param', type=int, required=True, help='n for identity, t for w43/sylvester, q for sls')

    table = sub.add_parser('table', parents=[common], help='quantum vs classical table')
    table.add_argument('--eps', type=float, default=0.0)
    return parser


#------------------------------------------------------------------------------------
def _text_value(v):
    if(isinstance(v, (dict, list, tuple))):
        return json.dumps(v)
    return str(v)


def _render(data, fmt):
    '''
    Render a DataFrame, a report, a list of reports or a plain dict in the chosen format
    '''
    if(isinstance(data, _Report)):
        data = data.to_dict() if fmt != 'csv' else reports_to_frame([data])
    elif(isinstance(data, list) and len(data) > 0 and isinstance(data[0], _Report)):
        data = [r.to_dict() for r in data] if fmt == 'json' else reports_to_frame(data)
    if(isinstance(data, pd.DataFrame)):
        if(fmt == 'json'):
            return data.to_json(orient='records') + '\n'
        if(fmt == 'csv'):
            return data.to_csv(index=False)
        return data.to_string(index=False) + '\n'
    if(fmt == 'json'):
        return json.dumps(data) + '\n'
    if(isinstance(data, list)):
        data = pd.DataFrame(data)
        return data.to_csv(index=False) if fmt == 'csv' else data.to_string(index=False) + '\n'
    if(fmt == 'csv'):
        return pd.DataFrame([{k: _text_value(v) for k, v in data.items()}]).to_csv(index=False)
    return ''.join(f'{k}: {_text_value(v)}\n' for k, v in data.items())


def _render_matrix(M, fmt):
    if(fmt == 'json'):
        return json.dumps({'n': M.n, 'k': M.claimed_weight, 'rows': serialize_matrix(M).split('\n')[1:-1]}) + '\n'
    if(fmt == 'csv'):
        return pd.DataFrame(M.entries).to_csv(index=False, header=False)
    return serialize_matrix(M)


def _fan_out(fn, values):
    '''
    Independent runs, one fresh oracle each; results come back in input order
    '''
    with ThreadPoolExecutor(max_workers=4) as pool:
        return list(pool.map(fn, values))


#------------------------------------------------------------------------------------
def _cmd_field(args):
    F = make_field(args.p, args.k)
    return {'p': F.p, 'k': F.k, 'q': F.q, 'modulus': list(F.modulus),
            'generator': list(F.generator.coeffs), 'generator_rank': F.rank(F.generator)}


def _cmd_chi(args):
    F = make_field(args.p, args.k)
    if(args.x is not None):
        return {'q': F.q, 'x': args.x, 'chi': legendre(F, elem_from_rank(F, args.x))}
    return pd.DataFrame({'x': np.arange(F.q), 'chi': F.chi_table.astype(int)})


def _cmd_matrix(args):
    if(args.action == 'verify'):
        M = read_matrix(args.file)
        cert = verify_weighing(M)
        if(args.format == 'text'):
            return f'W({cert.n},{cert.k}) verified\n'
        return _render({'n': cert.n, 'k': cert.k, 'verified': cert.verified,
                        'hadamard': cert.is_hadamard, 'conference': cert.is_conference}, args.format)
    if(args.action == 'tensor'):
        M = tensor(read_matrix(args.file[0]), read_matrix(args.file[1]))
    else:
        param = {'sylvester': 't', 'w43': 't', 'paley1': 'q', 'paley2': 'q', 'identity': 'n'}[args.action]
        M = _FAMILIES[args.action](getattr(args, param))
    if(args.out is not None):
        write_matrix(M, args.out)
        return f'W({M.n},{M.claimed_weight}) written to {args.out}\n'
    return _render_matrix(M, args.format)


def _hidden_values(args, count):
    if(args.all_s):
        return list(range(count))
    if(args.s is None):
        raise ValueError('give --s or --all-s')
    return [args.s]


def _cmd_run(args):
    if(args.action == 'wm'):
        M = read_matrix(args.file) if args.file is not None else _FAMILIES[args.matrix](args.param)
        values = _hidden_values(args, M.n)
        reports = _fan_out(lambda s: wm_recover(M, s, args.mode, args.seed), values)
    elif(args.action == 'bv'):
        if(args.all_s):
            values = list(range(2**args.n))
        elif(args.s is None):
            raise ValueError('give --s or --all-s')
        else:
            values = [args.s]
        reports = _fan_out(lambda s: bv_recover(args.n, s), values)
    else:
        F = make_field(args.p, args.k)
        values = _hidden_values(args, F.q)
        if(args.action == 'sls-quantum'):
            reports = _fan_out(lambda s: sls_quantum(F, s, args.mode, args.seed), values)
        else:
            reports = _fan_out(lambda s: sls_classical(F, s), values)
    return reports if args.all_s else reports[0]


def _cmd_bounds(args):
    if(args.q is not None):
        return sls_bounds(args.q, args.eps)
    if(args.n is None or args.k is None):
        raise ValueError('give --n and --k, or --q')
    return classical_bounds(args.n, args.k, args.eps)


def _cmd_family(args):
    return corollary_family(args.n, args.k, args.t_max, args.eps)


def _cmd_tree(args):
    if(args.family == 'sls'):
        F = make_field(*_prime_power(args.param))
        members = sls_family(F)
        lower = sls_bounds(F.q).min_depth
    else:
        M = {'identity': identity, 'w43': w43_power, 'sylvester': sylvester}[args.family](args.param)
        members = family_tables(M)
        lower = classical_bounds(M.n, M.claimed_weight).min_depth
    tree, depth = optimal_tree(members)
    return {'family': args.family, 'param': args.param, 'members': tree.n_members,
            'depth': depth, 'lower_bound': lower}


def _prime_power(q):
    pk = is_prime_power(q)
    if(pk is None):
        raise ValueError(f'q = {q} is not a prime power')
    return pk


def _cmd_table(args):
    return table_reproduction(args.eps)


def table_reproduction(eps=0.0):
    '''
    Quantum upper bounds against classical lower bounds: the three asymptotic regimes of k,
    followed by concrete rows for the identity, W(4,3)-power and Sylvester families.

    Parameters
    ----------
    eps : float, optional
     Classical error probability

    Returns
    ----------
    pandas DataFrame
     columns family, n, k, quantum, classical
    '''
    rows = [{'family': 'k = o(n)', 'n': 'n', 'k': 'k', 'quantum': 'pi/4 sqrt(n/k) + 2',
             'classical': f'(1-{eps}) n/k - O(1)'},
            {'family': 'k = Theta(n)', 'n': 'n', 'k': 'k', 'quantum': 'O(1)',
             'classical': f'log_3 n + log_3(1-{eps})'},
            {'family': 'k = n', 'n': 'n', 'k': 'n', 'quantum': '1',
             'classical': f'log n + log(1-{eps})'}]
    concrete = [('identity', identity, (4, 16, 64)), ('w43', w43_power, (1, 2, 3)),
                ('sylvester', sylvester, (2, 4, 6))]
    for name, build, params in concrete:
        for param in params:
            cert = verify_weighing(build(param))
            b = classical_bounds(cert.n, cert.k, eps)
            rows.append({'family': f'{name}({param})', 'n': str(cert.n), 'k': str(cert.k),
                         'quantum': str(wm_budget(cert.n, cert.k)),
                         'classical': f'{max(b.bound_log3, b.bound_nk, b.bound_log2):.4f}'})
    return pd.DataFrame(rows, columns=['family', 'n', 'k', 'quantum', 'classical'])


_COMMANDS = {'field': _cmd_field, 'chi': _cmd_chi, 'matrix': _cmd_matrix, 'run': _cmd_run,
             'bounds': _cmd_bounds, 'family': _cmd_family, 'tree': _cmd_tree, 'table': _cmd_table}


def dispatch(argv, stdout=None, stderr=None):
    '''
    Parse argv, run the command and write its output.

    Returns
    ----------
    int
     0 on success, 2 on a usage error, 1 when a verification or protocol check fails
    '''
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if(args.verbose):
        configure_logging(verbose=True, stream=stderr)
    logger.debug('command %s with %s', args.command, vars(args))
    try:
        out = _COMMANDS[args.command](args)
        if(not isinstance(out, str)):
            out = _render(out, args.format)
    except QweighError as e:
        stderr.write(f'qweigh: error: {e}\n')
        return 1
    except (ValueError, OSError) as e:
        stderr.write(f'qweigh: usage error: {e}\n')
        return 2
    stdout.write(out)
    return 0


def main():
    sys.exit(dispatch(sys.argv[1:]))
