"""Command-line front end: ``relcalc <command> ...``.

Exit codes: 0 success, 1 malformed input (schema, literals, files),
2 a mathematical precondition fails, 3 an internal numerical check fails.
Reports are JSON on standard output with numbers rounded to ``REPORT_DIGITS``
decimals.
"""
from __future__ import annotations

import argparse
import math
import os
import re
import sys

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import debranges as dbr
from . import jacobi as jac
from . import subspace as sub
from .errors import (NotSymmetric, NumericalFailure, PreconditionError, SchemaError,
                     SingularPencil)
from .extensions import ExtensionParameter, defect_kernel, extend_by_contraction, is_symmetric
from .io import (Report, emit_report, encode_complex, parse_complex_literal,
                 parse_parameter_file, parse_relation, relation_to_dict)
from .relation import adjoint, classify, deficiency_index, parts
from .spectra import eigenvalues
from .transforms import z_transform

__all__ = ['run', 'main', 'build_parser', 'REPORT_DIGITS', 'TOL_ENV']

REPORT_DIGITS = 10
TOL_ENV = 'RELCALC_TOL_EQ'


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(f'{self.prog}: {message}')


def _c(z):
    return encode_complex(z, REPORT_DIGITS)


def _tol_from_args(args):
    """Tolerance overrides, or ``None`` when nothing was overridden."""
    over = {}
    env = os.environ.get(TOL_ENV)
    if env is not None:
        try:
            over['eq_tol'] = float(env)
        except ValueError:
            raise SchemaError(f'{TOL_ENV}={env!r} is not a number') from None
    for flag, key in (('tol_rank', 'rank_rel'), ('tol_psd', 'psd_abs'), ('tol_eq', 'eq_tol')):
        v = getattr(args, flag)
        if v is not None:
            over[key] = v
    if not over:
        return None
    try:
        return sub.ToleranceProfile(**over)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _read(path):
    try:
        with open(path, 'rb') as fh:
            return fh.read()
    except OSError as exc:
        raise SchemaError(f'cannot read {path}: {exc.strerror}') from None


def _load_relation(path, tol):
    return parse_relation(_read(path), tol)


def _parts_dict(T):
    p = parts(T)
    return {'n': T.n, 'dim': T.dim, 'dom': p.dom.dim, 'ran': p.ran.dim,
            'ker': p.ker.dim, 'mul': p.mul.dim}


def _eig_entries(rep):
    entries = [{'value': _c(z), 'geometric': int(g), 'algebraic': int(a)}
               for (z, g), a in zip(rep.finite_eigenvalues, rep.algebraic)]
    entries.sort(key=lambda e: (e['value'][0], e['value'][1]))
    infinite = {'multiplicity': int(rep.infinite_multiplicity),
                'algebraic': int(rep.infinite_algebraic)}
    return entries, infinite


def _spectrum_fields(T, report):
    try:
        rep = eigenvalues(T)
    except SingularPencil:
        report.values = dict(report.values or {}, pencil='singular')
        return
    report.eigenvalues, report.infinite = _eig_entries(rep)


def _complex_list(text, allow_inf=False):
    items = [s for s in str(text).split(',')]
    if not items or any(not s.strip() for s in items):
        raise SchemaError(f'malformed list {text!r}')
    return [parse_complex_literal(s, allow_inf) for s in items]


def _real_list(text, name):
    out = []
    for z in _complex_list(text):
        if z.imag != 0:
            raise SchemaError(f'--{name} entries must be real, got {text!r}')
        out.append(z.real)
    return out


def _tau_arg(text):
    t = parse_complex_literal(text, allow_inf=True)
    return jac.INFINITY if t == math.inf else t


def cmd_analyze(args, tol):
    T = _load_relation(args.file, tol)
    rep = classify(T)
    points = [1j, -1j] + [parse_complex_literal(z) for z in args.zeta or []]
    report = Report('analyze', parameters={'zeta': [_c(z) for z in points]},
                    parts=_parts_dict(T), classification=rep.flags(),
                    deficiency=[{'zeta': _c(z), 'index': deficiency_index(T, z)} for z in points])
    if T.dim == T.n:
        _spectrum_fields(T, report)
    return report


def cmd_adjoint(args, tol):
    T = adjoint(_load_relation(args.file, tol))
    return Report('adjoint', parts=_parts_dict(T),
                  relation=relation_to_dict(T, REPORT_DIGITS, include_tol=False))


def cmd_ztransform(args, tol):
    zeta = parse_complex_literal(args.zeta)
    T = z_transform(_load_relation(args.file, tol), zeta)
    return Report('ztransform', parameters={'zeta': _c(zeta)}, parts=_parts_dict(T),
                  classification=classify(T).flags(),
                  relation=relation_to_dict(T, REPORT_DIGITS, include_tol=False))


def cmd_extend(args, tol):
    zeta = parse_complex_literal(args.zeta)
    A = _load_relation(args.file, tol)
    param_doc = parse_parameter_file(_read(args.k))
    if not is_symmetric(A):
        raise NotSymmetric('A is not symmetric')
    K = param_doc['K']
    D = param_doc['D_basis']
    if D is None:
        kern = defect_kernel(A, zeta).basis
        if K.shape[1] > kern.shape[1]:
            raise PreconditionError(f'K has {K.shape[1]} columns but dim ker(A* - zeta) = '
                                    f'{kern.shape[1]}')
        D = kern[:, :K.shape[1]]
    A_hat = extend_by_contraction(A, ExtensionParameter(zeta, K, D, param_doc['target_basis']))
    params = {'zeta': _c(zeta), 'K': [[_c(z) for z in row] for row in K]}
    return Report('extend', parameters=params, parts=_parts_dict(A_hat),
                  classification=classify(A_hat).flags(),
                  relation=relation_to_dict(A_hat, REPORT_DIGITS, include_tol=False))


def cmd_spectrum(args, tol):
    T = _load_relation(args.file, tol)
    report = Report('spectrum', parts=_parts_dict(T))
    report.eigenvalues, report.infinite = _eig_entries(eigenvalues(T))
    return report


def cmd_jacobi(args, tol):
    tol = tol or sub.DEFAULT_TOL
    b, q = _real_list(args.b, 'b'), _real_list(args.q, 'q')
    try:
        model = jac.JacobiModel(b, q, args.n)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    tau = _tau_arg(args.tau)
    params = {'b': list(model.b[:model.N - 1]), 'q': list(model.q[:model.N]), 'n': model.N,
              'tau': 'inf' if tau is jac.INFINITY else _c(tau)}
    report = Report('jacobi', parameters=params)
    if args.report == 'eig':
        T = jac.j_relation(model, tau, tol)
        report.classification = classify(T).flags()
        report.eigenvalues, report.infinite = _eig_entries(eigenvalues(T))
    else:
        zeta = parse_complex_literal(args.zeta)
        params['zeta'] = _c(zeta)
        B = jac.restricted_B(model, tol)
        P = jac.extension_parameter_for(model, tau, zeta)
        report.values = {
            'K': _c(P.K[0, 0]),
            'extension_matches': bool(jac.cross_validate_extension(model, tau, zeta, tol)),
            'adjoint_identity': bool(adjoint(B).equals(jac.adjoint_of_B(model, tol))),
        }
    return report


def cmd_debranges(args, tol):
    tol = tol or sub.DEFAULT_TOL
    roots = _complex_list(args.roots)
    tau = parse_complex_literal(args.tau)
    w = parse_complex_literal(args.w)
    model = dbr.build_model(roots, tol=tol)
    params = {'roots': [_c(r) for r in roots], 'tau': _c(tau), 'w': _c(w)}
    report = Report('debranges', parameters=params)
    if args.report == 'eig':
        S = dbr.s_tau(model, tau, w)
        report.classification = classify(S).flags()
        report.eigenvalues, report.infinite = _eig_entries(eigenvalues(S))
    elif args.report == 'phi':
        report.values = {'phi': [_c(c) for c in dbr.phi_tau(model, tau)],
                         'roots': [_c(z) for z in dbr.spectrum_via_phi(model, tau)]}
    else:
        S = dbr.s_tau(model, tau, w)
        pencil = eigenvalues(S).multiset()
        pencil = np.sort_complex(pencil[pencil.imag >= -tol.psd_abs])
        phi = np.sort_complex(np.array(dbr.spectrum_via_phi(model, tau), dtype=complex))
        match = len(pencil) == len(phi) and _multiset_distance(pencil, phi) <= 1e-6
        report.values = {'spectrum_matches': bool(match),
                         'selfadjoint': bool(classify(S).is_selfadjoint)}
    return report


def _multiset_distance(a, b):
    """Largest distance under the best matching of two equal-size complex multisets."""
    if len(a) == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def build_parser():
    p = _Parser(prog='relcalc', description='Linear relations: adjoints, transforms, '
                'extensions and spectra.')
    p.add_argument('--tol-rank', type=float, default=None, help='relative rank cutoff')
    p.add_argument('--tol-psd', type=float, default=None, help='semidefiniteness floor')
    p.add_argument('--tol-eq', type=float, default=None,
                   help=f'subspace equality threshold (also ${TOL_ENV})')
    cmds = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    a = cmds.add_parser('analyze', help='parts, classification, indices, eigenvalues')
    a.add_argument('file')
    a.add_argument('--zeta', action='append', help='extra point for deficiency indices')
    a.set_defaults(func=cmd_analyze)

    a = cmds.add_parser('adjoint', help='adjoint relation')
    a.add_argument('file')
    a.set_defaults(func=cmd_adjoint)

    a = cmds.add_parser('ztransform', help='Z transform at a point')
    a.add_argument('file')
    a.add_argument('--zeta', required=True)
    a.set_defaults(func=cmd_ztransform)

    a = cmds.add_parser('extend', help='extension of a symmetric relation by a contraction')
    a.add_argument('file')
    a.add_argument('--k', required=True, help='JSON file with K (and optional bases)')
    a.add_argument('--zeta', default='i')
    a.set_defaults(func=cmd_extend)

    a = cmds.add_parser('spectrum', help='eigenvalues of a square relation')
    a.add_argument('file')
    a.set_defaults(func=cmd_spectrum)

    a = cmds.add_parser('jacobi', help='truncated Jacobi matrix extensions')
    a.add_argument('--b', required=True, help='off-diagonal entries, comma separated')
    a.add_argument('--q', required=True, help='diagonal entries, comma separated')
    a.add_argument('--n', required=True, type=int, help='truncation size')
    a.add_argument('--tau', required=True, help='complex literal or inf')
    a.add_argument('--zeta', default='i', help='point used by --report validate')
    a.add_argument('--report', choices=('eig', 'validate'), default='eig')
    a.set_defaults(func=cmd_jacobi)

    a = cmds.add_parser('debranges', help='polynomial de Branges space extensions')
    a.add_argument('--roots', required=True, help='zeros of e, comma separated')
    a.add_argument('--tau', required=True)
    a.add_argument('--w', default='i')
    a.add_argument('--report', choices=('eig', 'phi', 'validate'), default='eig')
    a.set_defaults(func=cmd_debranges)
    return p


_NEGATIVE_LITERAL = re.compile(r'^-[0-9.i]')


def _attach_negative_values(argv):
    """Turn ``--opt -1i,-2i`` into ``--opt=-1i,-2i`` so argparse does not read a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        out.append(tok)
        if tok.startswith('--') and '=' not in tok:
            nxt = next(it, None)
            if nxt is None:
                break
            if _NEGATIVE_LITERAL.match(nxt):
                out[-1] = f'{tok}={nxt}'
            else:
                out.append(nxt)
    return out


def run(argv=None, stdout=None, stderr=None):
    """Execute one command and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_attach_negative_values(argv))
        report = args.func(args, _tol_from_args(args))
    except SchemaError as exc:
        print(f'error: {exc}', file=stderr)
        return 1
    except (PreconditionError, ValueError) as exc:
        print(f'error: {type(exc).__name__}: {exc}', file=stderr)
        return 2
    except NumericalFailure as exc:
        print(f'error: {type(exc).__name__}: {exc}', file=stderr)
        return 3
    out = emit_report(report).decode()
    stdout.write(out)
    return 0


def main():
    sys.exit(run())
