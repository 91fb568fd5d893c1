#!/usr/bin/env python3
"""
The published example tables as an embedded dataset, the auditor that
re-verifies every row, and the renderer for tables of search results.
"""

import collections
import json
import logging
import os
from typing import NamedTuple

import pandas as pd

from . import util
from .curves1 import EllipticCurve, verify_elliptic
from .curves2 import Genus2Curve, Genus2Recipe, verify_genus2
from .curves3 import Genus3Cover, verify_optimal_genus3
from .disc19 import Disc19Field
from .errors import (DatasetError, DegenerateCoverError,
                     DegenerateRecipeError, SingularCurveError)

__all__ = ['PaperTableRow', 'AuditReport', 'load_dataset', 'audit_tables',
           'emit_table', 'describe', 'DATASET_PATH']

logger = logging.getLogger(__name__)

DATASET_PATH = os.path.join(os.path.dirname(__file__), 'data',
                            'published_tables.csv')

TABLES = ('elliptic', 'genus2', 'genus3')
COLUMNS = ['table', 'q', 'role', 'payload', 'normalization']

PASS = 'PASS'
NORMALIZED_PASS = 'NORMALIZED-PASS'
FAIL_COUNT = 'FAIL(count)'
FAIL_GENUS = 'FAIL(genus)'
FAIL_KIND = 'FAIL(E-kind)'
FAIL_CONSTRUCTION = 'FAIL(construction)'
ERROR_PARSE = 'ERROR(parse)'

_FAILURES = {'E-kind': FAIL_KIND, 'genus': FAIL_GENUS, 'count': FAIL_COUNT}


def _parse_pairs(text):
    out = {}
    for token in str(text).split():
        key, sep, value = token.partition('=')
        if not sep or not key or not value:
            raise DatasetError('Malformed field %r.' % token)
        try:
            if ',' in value:
                out[key] = [int(v) for v in value.split(',')]
            else:
                out[key] = int(value)
        except ValueError:
            raise DatasetError('Non-integer value in %r.' % token)
    return out


class PaperTableRow(NamedTuple):
    """
    One row of a published table. payload and normalization hold the raw
    key=value text; fields() parses them.
    """
    table: str
    q: int
    role: str
    payload: str
    normalization: str = ''

    def fields(self):
        return _parse_pairs(self.payload)

    def normalizations(self):
        return _parse_pairs(self.normalization)


def load_dataset(path=None):
    """
    Reads the table dataset.

    Parameters
    ----------
    path : str, optional
        CSV with columns table, q, role, payload, normalization. Defaults to
        the embedded dataset.

    Returns
    -------
    list of PaperTableRow

    Raises
    ------
    DatasetError
        If the table, q or role column of a row is invalid.
    """
    path = DATASET_PATH if path is None else path
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = set(COLUMNS) - set(df.columns)
    if missing:
        raise DatasetError('Dataset %s lacks columns %s.'
                           % (path, sorted(missing)))
    rows = []
    for i, rec in enumerate(df[COLUMNS].itertuples(index=False), 2):
        table = rec.table.strip().lower()
        if table not in TABLES:
            raise DatasetError('Line %d: unknown table %r.' % (i, rec.table))
        try:
            q = int(rec.q)
            role = util.parse_kind(rec.role)
        except ValueError as e:
            raise DatasetError('Line %d: %s' % (i, e))
        rows.append(PaperTableRow(table, q, role, rec.payload.strip(),
                                  rec.normalization.strip()))
    return rows


class AuditReport:
    """
    Per-row audit outcomes in dataset order plus a status summary.
    """
    def __init__(self, rows):
        self.rows = rows

    @property
    def summary(self):
        return dict(sorted(collections.Counter(
            r['status'] for r in self.rows).items()))

    @property
    def ok(self):
        return all(r['status'] in (PASS, NORMALIZED_PASS) for r in self.rows)

    def to_dict(self):
        return {'rows': self.rows, 'summary': self.summary, 'ok': self.ok}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_frame(self):
        return pd.DataFrame([{'table': r['table'], 'q': r['q'],
                              'role': r['role'], 'status': r['status']}
                             for r in self.rows],
                            columns=['table', 'q', 'role', 'status'])


def _infinity_only(report):
    # Would another infinity convention alone have given the target?
    count, n_inf = report.get('count'), report.get('infinity')
    if count is None or n_inf is None:
        return False
    return any(count - n_inf + alt == report['target']
               for alt in (0, 1, 2) if alt != n_inf)


def _audit_elliptic(row, field, data, norm):
    E = EllipticCurve(field, data['a'], data['b'])
    report = verify_elliptic(E, row.role)
    return (PASS if report['pass'] else FAIL_COUNT), report


def _audit_genus2(row, field, data, norm):
    E = EllipticCurve(field, data['a'], data['b'])
    recipe = Genus2Recipe(E, data['alpha'], data['beta'])
    report = verify_genus2(recipe, row.role, data.get('sextic'))
    if report['E1_kind'] != row.role or report['E2_kind'] != row.role:
        status = FAIL_KIND
    elif report.get('construction_match') is False or 'error' in report:
        status = FAIL_CONSTRUCTION
    elif report['count'] != report['target']:
        status = FAIL_COUNT
    else:
        status = PASS
    return status, report


def _coeffs(value):
    return value if isinstance(value, list) else [value]


def _audit_genus3(row, field, data, norm):
    E = EllipticCurve(field, data['a'], data['b'])
    cover = Genus3Cover.from_table(E, _coeffs(data['u']), _coeffs(data['v']),
                                   norm.get('ysq_coeff', 1))
    report = verify_optimal_genus3(cover, row.role)
    if report['pass']:
        return (NORMALIZED_PASS if norm else PASS), report
    report['infinity_only'] = (report['failure'] == 'count' and
                               _infinity_only(report))
    return _FAILURES[report['failure']], report


_AUDITORS = {'elliptic': _audit_elliptic, 'genus2': _audit_genus2,
             'genus3': _audit_genus3}


def audit_row(row):
    """
    Verifies one row and returns its audit record; never raises on a bad row.
    """
    record = {'table': row.table, 'q': row.q, 'role': row.role,
              'payload': row.payload, 'normalization': row.normalization}
    try:
        data = row.fields()
        norm = row.normalizations()
        field = Disc19Field.from_q(row.q)
        status, report = _AUDITORS[row.table](row, field, data, norm)
    except (DatasetError, KeyError, ValueError) as e:
        if isinstance(e, (SingularCurveError, DegenerateRecipeError,
                          DegenerateCoverError)):
            status = FAIL_CONSTRUCTION
        else:
            status = ERROR_PARSE
        report = {'error': str(e) if not isinstance(e, KeyError)
                  else 'Missing field %s.' % e}
    record['status'] = status
    record['details'] = report
    logger.info('Audit %s q=%d %s: %s', row.table, row.q, row.role, status)
    return record


def audit_tables(dataset=None, tables=None, q=None):
    """
    Re-verifies every selected row of the dataset.

    Parameters
    ----------
    dataset : list of PaperTableRow, optional
        Rows to audit, the embedded dataset by default.
    tables : iterable of str, optional
        Restrict to these tables.
    q : int, optional
        Restrict to this field.

    Returns
    -------
    AuditReport
        One record per selected row, in dataset order.
    """
    rows = load_dataset() if dataset is None else dataset
    if tables is not None:
        tables = set(tables)
        rows = [r for r in rows if r.table in tables]
    if q is not None:
        rows = [r for r in rows if r.q == q]
    return AuditReport([audit_row(r) for r in rows])


def describe(curve):
    """
    Formats a curve the way the tables print it.
    """
    if isinstance(curve, Genus3Cover):
        return '%s, %s' % (curve.E, curve)
    return str(curve)


def emit_table(results, fmt='text', absent='-', scope=None):
    """
    Renders q | maximal | minimal tables.

    Parameters
    ----------
    results : iterable of (q, kind, curve)
        curve may be None for a searched but empty cell.
    fmt : str
        'text', 'csv' or 'json'.
    absent : str
        Marker for cells without a curve.
    scope : dict, optional
        What was searched; JSON output records it next to the rows so an
        absent cell reads as "not found in this scope".

    Returns
    -------
    str
    """
    cells = collections.defaultdict(dict)
    for q, kind, curve in results:
        cells[q][util.parse_kind(kind)] = (describe(curve)
                                           if curve is not None else absent)
    records = [{'q': q,
                util.MAXIMAL: cells[q].get(util.MAXIMAL, absent),
                util.MINIMAL: cells[q].get(util.MINIMAL, absent)}
               for q in sorted(cells)]
    columns = ['q', util.MAXIMAL, util.MINIMAL]
    if fmt == 'json':
        if scope is not None:
            return json.dumps({'rows': records, 'scope': scope},
                              sort_keys=True, indent=2)
        return json.dumps(records, sort_keys=True, indent=2)
    df = pd.DataFrame(records, columns=columns)
    if fmt == 'csv':
        return df.to_csv(index=False)
    if fmt != 'text':
        raise ValueError('Unknown format %r.' % (fmt,))
    if df.empty:
        return '  '.join(columns)
    return df.to_string(index=False)
