#!/usr/bin/env python3
"""
Command line front end: optcurve <command> [options].
"""

import argparse
import json
import logging
import os
import sys

import pandas as pd

from . import util
from .curves1 import EllipticCurve, find_optimal_elliptic, verify_elliptic
from .curves2 import (Genus2Curve, Genus2Recipe, construct_fibered_sextic,
                      find_optimal_genus2, verify_genus2)
from .curves3 import Genus3Cover, verify_optimal_genus3
from .disc19 import Disc19Field, enumerate_disc19_primes
from .errors import (InconsistentCountsError, NotFoundError, OptCurveError,
                     UnsupportedError)
from .search import ALL_FORMS, SliceSpace, exhaust_genus3, find_optimal_genus3
from .store import ResultStore
from .tables import TABLES, audit_tables, emit_table, load_dataset
from .zeta import extension_counts, is_optimal_lpoly, lpoly_from_counts

__all__ = ['run_cli', 'main', 'settings_dir']

SETTINGS_ENV = 'OPTCURVE_HOME'
DEFAULT_SETTINGS_DIR = '~/.optcurve'

FORMATS = ('text', 'json', 'csv')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2

GENUS3_CMD = 'genus3 find'


def settings_dir():
    path = os.path.expanduser(os.environ.get(SETTINGS_ENV,
                                             DEFAULT_SETTINGS_DIR))
    if not os.path.exists(path):
        os.makedirs(path)
    return path


def _configure_logging(verbose):
    logging.basicConfig(filename=os.path.join(settings_dir(), 'log.txt'),
                        level=logging.INFO)
    if not verbose:
        return None
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: '
                                           '%(message)s'))
    root = logging.getLogger()
    root.addHandler(handler)
    root.setLevel(logging.INFO)
    return handler


def _int_list(text):
    try:
        return [int(s) for s in text.split(',') if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('Expected comma separated integers, '
                                         'got %r.' % text)


def _kind(text):
    try:
        return util.parse_kind(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _render(payload, fmt, frame=None):
    if fmt == 'json':
        return json.dumps(payload, sort_keys=True, indent=2)
    if frame is None:
        if isinstance(payload, dict):
            frame = pd.json_normalize(payload)
        else:
            frame = pd.DataFrame(payload)
    if fmt == 'csv':
        return frame.to_csv(index=False).rstrip('\n')
    if frame.empty:
        return '  '.join(str(c) for c in frame.columns)
    if isinstance(payload, dict) and len(frame) == 1:
        return frame.iloc[0].to_string()
    return frame.to_string(index=False)


def _write(args, text):
    if args.out:
        with open(args.out, 'w') as f:
            f.write(text + '\n')
    else:
        sys.stdout.write(text + '\n')


def _field(args):
    return Disc19Field.from_q(args.q)


def _store(args):
    return ResultStore(args.store) if args.store else None


def _status(report):
    return EXIT_OK if report.get('pass') else EXIT_FAIL


def fields(args):
    records = [{'q': f.q, 'm': f.m} for f in enumerate_disc19_primes(args.max)]
    frame = pd.DataFrame(records, columns=['q', 'm'])
    _write(args, _render(records, args.format, frame))
    return EXIT_OK


def elliptic_find(args):
    field = _field(args)
    E = find_optimal_elliptic(field, args.kind, args.threads)
    report = verify_elliptic(E, args.kind)
    store = _store(args)
    if store is not None:
        store.record_hit('elliptic find', {'q': field.q, 'kind': args.kind},
                         E.to_dict(), report)
    _write(args, _render(report, args.format))
    return _status(report)


def elliptic_verify(args):
    E = EllipticCurve(_field(args), args.a, args.b)
    report = verify_elliptic(E, args.expect)
    _write(args, _render(report, args.format))
    return _status(report)


def _recipe(args):
    E = EllipticCurve(_field(args), args.a, args.b)
    return Genus2Recipe(E, args.alpha, args.beta)


def genus2_construct(args):
    recipe = _recipe(args)
    C = construct_fibered_sextic(recipe, kind=args.kind)
    payload = dict(recipe.to_dict(), q=C.q, sextic=list(C.sextic.coeffs),
                   curve=str(C), count=C.count)
    _write(args, _render(payload, args.format))
    return EXIT_OK


def genus2_find(args):
    field = _field(args)
    recipe, C = find_optimal_genus2(field, args.kind, args.threads)
    report = verify_genus2(recipe, args.kind)
    store = _store(args)
    if store is not None:
        store.record_hit('genus2 find', {'q': field.q, 'kind': args.kind},
                         recipe.to_dict(), report)
    _write(args, _render(report, args.format))
    return _status(report)


def genus2_verify(args):
    report = verify_genus2(_recipe(args), args.expect, args.sextic)
    _write(args, _render(report, args.format))
    return _status(report)


def _search_params(field, kind, forms, E):
    return {'q': field.q, 'kind': kind, 'forms': sorted(set(forms)),
            'E': E.to_dict()}


def _genus3_search(args, field, kind, forms, max_hits=None):
    # Resumes from the store unless an explicit cursor is given.
    E = find_optimal_elliptic(field, kind, args.threads)
    store = _store(args)
    params = _search_params(field, kind, forms, E)
    cursor = getattr(args, 'cursor', None)
    if cursor is None:
        cursor = (store.last_cursor(GENUS3_CMD, params) or 0
                  if store is not None else 0)
    result = find_optimal_genus3(field, kind, forms=forms,
                                 budget=getattr(args, 'budget', None),
                                 cursor=cursor, max_hits=max_hits,
                                 threads=args.threads,
                                 allow_large=args.allow_large, curve=E)
    if store is not None:
        store.record_search(GENUS3_CMD, params, result, cursor)
    return result, params


def _hit_frame(hits):
    columns = ['form', 'E', 'u', 'v', 'count', 'target', 'pass']
    return pd.DataFrame([{k: r.get(k) for k in columns} for r in hits],
                        columns=columns)


def _stored_hits(args, params):
    store = _store(args)
    if store is None:
        return 0
    return sum(1 for rec in store.records(GENUS3_CMD, params)
               if rec['hit'] is not None)


def genus3_find(args):
    result, params = _genus3_search(args, _field(args), args.kind,
                                    args.forms, args.max_hits)
    payload = result.to_dict()
    if args.format == 'json':
        _write(args, _render(payload, 'json'))
    else:
        hits = _hit_frame(payload['hits'])
        if args.format == 'csv':
            _write(args, _render(payload['hits'], 'csv', hits))
        else:
            summary = {k: v for k, v in payload.items() if k != 'hits'}
            _write(args, _render(summary, 'text') + '\n\n' +
                   _render(payload['hits'], 'text', hits))
    return EXIT_OK if result or _stored_hits(args, params) else EXIT_FAIL


def genus3_verify(args):
    E = EllipticCurve(_field(args), args.a, args.b)
    cover = Genus3Cover.from_table(E, args.u, args.v, args.ysq_coeff)
    report = verify_optimal_genus3(cover, args.expect)
    _write(args, _render(report, args.format))
    return _status(report)


def genus3_exhaust(args):
    field = _field(args)
    store = _store(args)
    if store is None:
        out = exhaust_genus3(field, args.forms, args.threads,
                             args.allow_large)
        counts = {kind: len(r) for kind, r in out['results'].items()}
        summaries = {kind: r.to_dict() for kind, r in out['results'].items()}
    else:
        counts, summaries = {}, {}
        for kind in util.KINDS:
            result, params = _genus3_search(args, field, kind, args.forms)
            counts[kind] = _stored_hits(args, params)
            summaries[kind] = result.to_dict()
    exclusive = bool(counts[util.MAXIMAL]) != bool(counts[util.MINIMAL])
    payload = {'q': field.q, 'forms': sorted(set(args.forms)),
               'exclusive': exclusive,
               'hits': counts,
               'total': SliceSpace(field.q, args.forms).candidates,
               'status': {k: s['status'] for k, s in summaries.items()}}
    _write(args, _render(payload, args.format))
    return EXIT_OK if exclusive else EXIT_FAIL


def _curve_from_json(field, genus, text):
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError('Curve must be a JSON object, got %r.' % (text,))
    try:
        if genus == 2 and 'sextic' in data:
            return Genus2Curve(field.q, data['sextic'])
        E = EllipticCurve(field, data['a'], data['b'])
        if genus == 1:
            return E
        if genus == 2:
            return construct_fibered_sextic(
                Genus2Recipe(E, data['alpha'], data['beta']))
        return Genus3Cover.from_table(E, data['u'], data['v'],
                                      data.get('ysq_coeff', 1))
    except KeyError as e:
        raise ValueError('Curve JSON lacks %s.' % e)


def zeta(args):
    field = _field(args)
    curve = _curve_from_json(field, args.genus, args.curve)
    counts = extension_counts(curve, args.genus, args.max_r, args.allow_large)
    L = lpoly_from_counts(counts)
    optimal = [kind for kind in util.KINDS
               if is_optimal_lpoly(L, field, args.genus, kind)]
    payload = {'q': field.q, 'g': args.genus, 'N': list(counts.N),
               'L': list(L.coeffs), 'lpoly': str(L),
               'kind': optimal[0] if optimal else util.NEITHER}
    _write(args, _render(payload, args.format))
    return EXIT_OK


def audit(args):
    dataset = load_dataset(args.dataset) if args.dataset else None
    report = audit_tables(dataset, args.table, args.q)
    if args.format == 'json':
        text = report.to_json()
    else:
        text = _render(report.to_dict(), args.format, report.to_frame())
        if args.format == 'text':
            text += '\n\n' + '  '.join('%s: %d' % kv
                                       for kv in report.summary.items())
    _write(args, text)
    return EXIT_OK if report.ok else EXIT_FAIL


def _table_entry(args, field, kind):
    if args.genus == 1:
        return find_optimal_elliptic(field, kind, args.threads)
    if args.genus == 2:
        return find_optimal_genus2(field, kind, args.threads)[1]
    result = find_optimal_genus3(field, kind, forms=args.forms,
                                 budget=args.budget, max_hits=1,
                                 threads=args.threads,
                                 allow_large=args.allow_large)
    return result.hits[0][0] if result else None


def table(args):
    results, skipped = [], []
    for field in enumerate_disc19_primes(args.max):
        for kind in util.KINDS:
            try:
                curve = _table_entry(args, field, kind)
            except NotFoundError as e:
                logging.warning(e)
                curve = None
            except UnsupportedError as e:
                logging.warning(e)
                skipped.append(field.q)
                curve = None
            results.append((field.q, kind, curve))
    scope = {'genus': args.genus, 'max': args.max,
             'skipped': sorted(set(skipped))}
    if args.genus == 3:
        scope.update(forms=sorted(set(args.forms)), budget=args.budget)
    _write(args, emit_table(results, args.format, scope=scope))
    return EXIT_OK


def _common_parser(top=True):
    # Options accepted before and after the command. The leaf copies leave
    # flags they did not see unset, so values given up front survive.
    def default(value):
        return value if top else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format',
                        choices=FORMATS,
                        default=default('text'),
                        help='Output format.')
    common.add_argument('--threads',
                        type=int,
                        default=default(None),
                        help='Worker processes, default $OPTCURVE_THREADS '
                             'or 1.')
    common.add_argument('--out',
                        type=str,
                        default=default(None),
                        help='Write output to this file.')
    common.add_argument('--store',
                        type=str,
                        default=default(None),
                        help='JSON lines file for search results.')
    common.add_argument('--verbose',
                        action='store_true',
                        default=default(False),
                        help='Mirror log records to stderr.')
    common.add_argument('--allow-large',
                        dest='allow_large',
                        action='store_true',
                        default=default(False),
                        help='Permit searches and counts above the size '
                             'gates.')
    return common


def _add_field(parser, q_required=True):
    parser.add_argument('--q',
                        type=int,
                        required=q_required,
                        help='A prime of discriminant -19.')


def _add_curve(parser):
    _add_field(parser)
    parser.add_argument('--a', type=int, required=True)
    parser.add_argument('--b', type=int, required=True)


def build_parser():
    common = _common_parser(top=False)
    parser = argparse.ArgumentParser(prog='optcurve',
                                     parents=[_common_parser()])
    subparsers = parser.add_subparsers(dest='command')

    parser_fields = subparsers.add_parser(
        'fields', parents=[common],
        help='List the primes of discriminant -19.')
    parser_fields.add_argument('--max',
                               type=int,
                               default=1000,
                               help='Largest q to list.')
    parser_fields.set_defaults(func=fields)

    parser_elliptic = subparsers.add_parser('elliptic',
                                            help='Optimal elliptic curves.')
    elliptic_sub = parser_elliptic.add_subparsers(dest='action')
    elliptic_sub.required = True
    parser_efind = elliptic_sub.add_parser(
        'find', parents=[common],
        help='Find the lexicographically first optimal curve.')
    _add_field(parser_efind)
    parser_efind.add_argument('--kind', type=_kind, required=True)
    parser_efind.set_defaults(func=elliptic_find)
    parser_everify = elliptic_sub.add_parser(
        'verify', parents=[common], help='Count points and classify.')
    _add_curve(parser_everify)
    parser_everify.add_argument('--expect', type=_kind, default=None)
    parser_everify.set_defaults(func=elliptic_verify)

    parser_genus2 = subparsers.add_parser('genus2',
                                          help='Fibered product curves.')
    genus2_sub = parser_genus2.add_subparsers(dest='action')
    genus2_sub.required = True
    for name, func, help_text in (
            ('construct', genus2_construct, 'Build the sextic of a recipe.'),
            ('verify', genus2_verify, 'Check a recipe against a kind.')):
        p = genus2_sub.add_parser(name, parents=[common], help=help_text)
        _add_curve(p)
        p.add_argument('--alpha', type=int, required=True)
        p.add_argument('--beta', type=int, required=True)
        if name == 'construct':
            p.add_argument('--kind', type=_kind, default=None)
        else:
            p.add_argument('--expect', type=_kind, required=True)
            p.add_argument('--sextic',
                           type=_int_list,
                           default=None,
                           help='Expected coefficients, lowest degree first.')
        p.set_defaults(func=func)
    parser_g2find = genus2_sub.add_parser(
        'find', parents=[common], help='Search recipes over the optimal E.')
    _add_field(parser_g2find)
    parser_g2find.add_argument('--kind', type=_kind, required=True)
    parser_g2find.set_defaults(func=genus2_find)

    parser_genus3 = subparsers.add_parser('genus3',
                                          help='Double covers of elliptic '
                                               'curves.')
    genus3_sub = parser_genus3.add_subparsers(dest='action')
    genus3_sub.required = True
    parser_g3find = genus3_sub.add_parser(
        'find', parents=[common], help='Search the normalized forms.')
    _add_field(parser_g3find)
    parser_g3find.add_argument('--kind', type=_kind, required=True)
    parser_g3find.add_argument('--forms',
                               type=_int_list,
                               default=[1],
                               help='Comma separated subset of 1,2,3.')
    parser_g3find.add_argument('--budget',
                               type=int,
                               default=None,
                               help='Stop after about this many candidates.')
    parser_g3find.add_argument('--cursor',
                               type=int,
                               default=None,
                               help='Slice to start from, default the '
                                    'stored cursor or 0.')
    parser_g3find.add_argument('--max-hits',
                               dest='max_hits',
                               type=int,
                               default=None)
    parser_g3find.set_defaults(func=genus3_find)
    parser_g3verify = genus3_sub.add_parser(
        'verify', parents=[common], help='Verify a cover z^2 = u + v y.')
    _add_curve(parser_g3verify)
    parser_g3verify.add_argument('--u',
                                 type=_int_list,
                                 required=True,
                                 help='alpha_0,...,alpha_3.')
    parser_g3verify.add_argument('--v',
                                 type=_int_list,
                                 required=True,
                                 help='beta_0,beta_1.')
    parser_g3verify.add_argument('--expect', type=_kind, required=True)
    parser_g3verify.add_argument('--ysq-coeff',
                                 dest='ysq_coeff',
                                 type=int,
                                 default=1,
                                 help='Printed coefficient of y^2.')
    parser_g3verify.set_defaults(func=genus3_verify)
    parser_g3exhaust = genus3_sub.add_parser(
        'exhaust', parents=[common],
        help='Search both kinds and check that only one has covers.')
    _add_field(parser_g3exhaust)
    parser_g3exhaust.add_argument('--forms',
                                  type=_int_list,
                                  default=list(ALL_FORMS))
    parser_g3exhaust.set_defaults(func=genus3_exhaust)

    parser_zeta = subparsers.add_parser(
        'zeta', parents=[common],
        help='L-polynomial from counts over extensions.')
    _add_field(parser_zeta)
    parser_zeta.add_argument('--genus', type=int, choices=(1, 2, 3),
                             required=True)
    parser_zeta.add_argument('--curve',
                             type=str,
                             required=True,
                             help='JSON, e.g. {"a": 1, "b": 38}.')
    parser_zeta.add_argument('--max-r',
                             dest='max_r',
                             type=int,
                             default=None,
                             help='Largest extension degree, default the '
                                  'genus.')
    parser_zeta.set_defaults(func=zeta)

    parser_audit = subparsers.add_parser(
        'audit', parents=[common], help='Re-verify the published tables.')
    parser_audit.add_argument('--table',
                              choices=TABLES,
                              action='append',
                              default=None)
    _add_field(parser_audit, q_required=False)
    parser_audit.add_argument('--dataset',
                              type=str,
                              default=None,
                              help='CSV to audit instead of the embedded '
                                   'tables.')
    parser_audit.set_defaults(func=audit)

    parser_table = subparsers.add_parser(
        'table', parents=[common], help='Find and tabulate optimal curves.')
    parser_table.add_argument('--genus', type=int, choices=(1, 2, 3),
                              default=1)
    parser_table.add_argument('--max', type=int, default=1000)
    parser_table.add_argument('--forms', type=_int_list, default=[1])
    parser_table.add_argument('--budget', type=int, default=None)
    parser_table.set_defaults(func=table)
    return parser


def run_cli(argv=None):
    """
    Parses argv and runs the command.

    Returns
    -------
    int
        0 on success, 1 when a verification fails, 2 on invalid input.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INVALID
    if not hasattr(args, 'func'):
        parser.print_usage(sys.stderr)
        return EXIT_INVALID
    handler = _configure_logging(args.verbose)
    try:
        logging.info(['optcurve'] + argv)
        return args.func(args)
    except (NotFoundError, InconsistentCountsError) as e:
        logging.exception(e)
        sys.stderr.write('error: %s\n' % e)
        return EXIT_FAIL
    except (OptCurveError, ValueError) as e:
        logging.exception(e)
        sys.stderr.write('error: %s\n' % e)
        return EXIT_INVALID
    except Exception as e:
        logging.exception(e)
        sys.stderr.write('error: %s\n' % e)
        return EXIT_FAIL
    finally:
        if handler is not None:
            logging.getLogger().removeHandler(handler)


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
