"""JSON documents for relations, contraction parameters and reports.

A relation document looks like::

    {
      "ambient_dim": 2,
      "spanning_pairs": [{"f": [[1, 0], [0, 0]], "g": [[1, 0], [0, 0]]}],
      "tol": {"rank_rel": 1e-10, "psd_abs": 1e-10, "eq_tol": 1e-8}
    }

Complex numbers are ``[re, im]`` pairs; ``tol`` is optional.  Unknown keys are
rejected.  Reports use a fixed key order so that emitted bytes are stable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from . import subspace as sub
from .errors import DocumentDimensionMismatch, SchemaError
from .relation import LinearRelation, from_blocks

__all__ = ['parse_relation', 'emit_relation', 'relation_to_dict', 'parse_parameter_file',
           'parse_complex_literal', 'Report', 'emit_report', 'parse_report',
           'encode_complex', 'decode_complex', 'clean_float']

_TOL_KEYS = ('rank_rel', 'psd_abs', 'eq_tol')


def clean_float(x, digits=None):
    """Round to ``digits`` decimals (if given) and turn ``-0.0`` into ``0.0``."""
    x = float(x)
    if digits is not None:
        x = round(x, digits)
    return x + 0.0


def encode_complex(z, digits=None):
    z = complex(z)
    return [clean_float(z.real, digits), clean_float(z.imag, digits)]


def _fail(path, msg, line=None):
    where = f'line {line}, ' if line is not None else ''
    raise SchemaError(f'{where}{path}: {msg}')


def _real(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        _fail(path, f'expected a number, got {type(x).__name__}')
    if not math.isfinite(x):
        _fail(path, 'non-finite numeral')
    return float(x)


def decode_complex(x, path='value'):
    if not (isinstance(x, list) and len(x) == 2):
        _fail(path, f'malformed complex literal {json.dumps(x)}; expected [re, im]')
    return complex(_real(x[0], f'{path}[0]'), _real(x[1], f'{path}[1]'))


def _vector(x, path, length=None):
    if not isinstance(x, list):
        _fail(path, 'expected a list of [re, im] pairs')
    v = np.array([decode_complex(c, f'{path}[{i}]') for i, c in enumerate(x)], dtype=complex)
    if length is not None and len(v) != length:
        raise DocumentDimensionMismatch(f'{path}: length {len(v)} != ambient_dim {length}')
    return v


def _matrix(x, path):
    """A matrix as a list of rows, each a list of ``[re, im]`` pairs."""
    if not isinstance(x, list):
        _fail(path, 'expected a list of rows')
    if not x:
        return np.zeros((0, 0), dtype=complex)
    rows = [_vector(r, f'{path}[{i}]') for i, r in enumerate(x)]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DocumentDimensionMismatch(f'{path}: rows have lengths {sorted(widths)}')
    return np.array(rows, dtype=complex).reshape(len(rows), widths.pop())


def _check_keys(obj, allowed, path, required=()):
    if not isinstance(obj, dict):
        _fail(path, f'expected an object, got {type(obj).__name__}')
    for k in obj:
        if k not in allowed:
            _fail(path, f'unknown field {k!r}')
    for k in required:
        if k not in obj:
            _fail(path, f'missing field {k!r}')


def _load(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise SchemaError(f'document is not UTF-8: {exc}') from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f'line {exc.lineno}, column {exc.colno}: {exc.msg}') from None


def _parse_tol(obj, path):
    _check_keys(obj, _TOL_KEYS, path)
    vals = {k: _real(v, f'{path}.{k}') for k, v in obj.items()}
    try:
        return sub.ToleranceProfile(**vals)
    except ValueError as exc:
        raise SchemaError(f'{path}: {exc}') from None


def parse_relation(data, tol=None):
    """Parse a relation document.

    ``tol`` overrides any tolerance stored in the document.
    """
    doc = _load(data)
    _check_keys(doc, ('ambient_dim', 'spanning_pairs', 'tol'), '$',
                required=('ambient_dim', 'spanning_pairs'))
    n = doc['ambient_dim']
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        _fail('$.ambient_dim', f'expected a positive integer, got {json.dumps(n)}')
    pairs = doc['spanning_pairs']
    if not isinstance(pairs, list) or not pairs:
        _fail('$.spanning_pairs', 'expected a non-empty list')
    if tol is None:
        tol = _parse_tol(doc['tol'], '$.tol') if 'tol' in doc else sub.DEFAULT_TOL
    F, G = [], []
    for i, p in enumerate(pairs):
        path = f'$.spanning_pairs[{i}]'
        _check_keys(p, ('f', 'g'), path, required=('f', 'g'))
        F.append(_vector(p['f'], f'{path}.f', n))
        G.append(_vector(p['g'], f'{path}.g', n))
    return from_blocks(np.column_stack(F), np.column_stack(G), tol)


def relation_to_dict(T, digits=None, include_tol=True):
    """Document for ``T`` built from its orthonormal basis pairs."""
    pairs = [{'f': [encode_complex(z, digits) for z in f],
              'g': [encode_complex(z, digits) for z in g]} for f, g in T.pairs()]
    doc = {'ambient_dim': T.n, 'spanning_pairs': pairs}
    if include_tol:
        doc['tol'] = {k: getattr(T.tol, k) for k in _TOL_KEYS}
    return doc


def emit_relation(T, digits=None):
    """Serialize ``T``; a relation with ``dim T = 0`` has no document form."""
    if T.dim == 0:
        raise SchemaError('the zero relation cannot be written: documents need at least one pair')
    return (json.dumps(relation_to_dict(T, digits), indent=2) + '\n').encode()


def parse_parameter_file(data):
    """Contraction parameter file: ``{"K": rows, "D_basis"?: rows, "target_basis"?: rows}``."""
    doc = _load(data)
    _check_keys(doc, ('K', 'D_basis', 'target_basis'), '$', required=('K',))
    out = {'K': _matrix(doc['K'], '$.K')}
    for key in ('D_basis', 'target_basis'):
        out[key] = _matrix(doc[key], f'$.{key}') if key in doc else None
    return out


def parse_complex_literal(text, allow_inf=False):
    """Parse ``a+bi`` style literals (``2``, ``-1i``, ``i``, ``1.5-2e-3i``); ``inf`` if allowed."""
    s = str(text).strip()
    if allow_inf and s.lower() in ('inf', '+inf', 'infinity'):
        return math.inf
    low = s.lower()
    if not s or 'j' in low or 'n' in low or ' ' in s:
        raise SchemaError(f'malformed complex literal {text!r}')
    try:
        z = complex(s.replace('i', 'j'))
    except ValueError:
        raise SchemaError(f'malformed complex literal {text!r}') from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SchemaError(f'non-finite complex literal {text!r}')
    return z


@dataclass
class Report:
    """Structured result of a CLI command.

    Complex numbers are stored already encoded as ``[re, im]`` lists so that
    ``parse_report(emit_report(r)) == r`` holds exactly.
    """
    command: str
    parameters: dict = field(default_factory=dict)
    parts: Optional[dict] = None
    classification: Optional[dict] = None
    deficiency: Optional[list] = None
    eigenvalues: Optional[list] = None
    infinite: Optional[dict] = None
    relation: Optional[dict] = None
    values: Optional[dict] = None


_REPORT_KEYS = tuple(f.name for f in fields(Report))


def emit_report(report):
    doc = {}
    for k in _REPORT_KEYS:
        v = getattr(report, k)
        if v is not None:
            doc[k] = v
    return (json.dumps(doc, indent=2, allow_nan=False) + '\n').encode()


def parse_report(data):
    doc = _load(data)
    _check_keys(doc, _REPORT_KEYS, '$', required=('command',))
    if not isinstance(doc['command'], str):
        _fail('$.command', 'expected a string')
    expected = {'parameters': dict, 'parts': dict, 'classification': dict, 'deficiency': list,
                'eigenvalues': list, 'infinite': dict, 'relation': dict, 'values': dict}
    for k, typ in expected.items():
        if k in doc and not isinstance(doc[k], typ):
            _fail(f'$.{k}', f'expected {typ.__name__}')
    return Report(**doc)
