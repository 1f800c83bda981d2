"""Finite sections of Jacobi matrices and their one-dimensional extensions.

``J_N`` is the ``N x N`` real tridiagonal matrix with diagonal ``q`` and
positive off-diagonal ``b``.  Restricting it to ``{f : f_1 = 0}`` gives a
symmetric relation ``B_N`` with deficiency indices ``(1, 1)``.  Its dissipative
extensions are the rank-one perturbations ``J_N + tau delta_1 delta_1^*`` with
``Im tau >= 0`` together with the multivalued ``J(inf) = B_N (+) span{(0, delta_1)}``.

>>> m = JacobiModel(b=[1, 1], q=[0, 0, 0], N=3)
>>> np.round(np.linalg.eigvalsh(jacobi_matrix(m)), 8) + 0.0
array([-1.41421356,  0.        ,  1.41421356])
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import subspace as sub
from .errors import DegenerateMobius, PreconditionError, ZetaIsEigenvalue
from .extensions import ExtensionParameter, extend_by_contraction
from .relation import direct_sum, from_blocks, graph

__all__ = ['JacobiModel', 'Infinity', 'INFINITY', 'jacobi_matrix', 'jacobi_relation',
           'restricted_B', 'adjoint_of_B', 'j_tau', 'j_infinity', 'j_relation', 'poly_first_kind',
           'poly_second_kind', 'psi_vector', 'm_finite', 'beta_tau',
           'extension_parameter_for', 'cross_validate_extension', 'delta']


class Infinity(enum.Enum):
    """The point at infinity of the extended parameter line."""
    INFINITY = 'inf'

    def __repr__(self):
        return 'INFINITY'


INFINITY = Infinity.INFINITY


def _is_inf(tau):
    return tau is INFINITY


@dataclass(frozen=True, eq=False)
class JacobiModel:
    """Jacobi coefficients truncated at size ``N``.

    ``b`` needs at least ``N - 1`` positive entries and ``q`` at least ``N``
    real ones; extra entries are kept so that shifted models can reuse them.
    ``N = 1`` is allowed for resolvent checks but has no restricted relation.
    """
    b: tuple
    q: tuple
    N: int

    def __post_init__(self):
        b = tuple(float(x) for x in np.asarray(self.b, dtype=float).ravel())
        q = tuple(float(x) for x in np.asarray(self.q, dtype=float).ravel())
        N = int(self.N)
        if N < 1:
            raise ValueError(f'N must be >= 1, got {N}')
        if len(b) < N - 1 or len(q) < N:
            raise ValueError(f'N = {N} needs len(b) >= {N - 1} and len(q) >= {N}, '
                             f'got {len(b)} and {len(q)}')
        if not all(np.isfinite(b)) or not all(np.isfinite(q)):
            raise ValueError('coefficients must be finite')
        if any(x <= 0 for x in b):
            raise ValueError('off-diagonal entries b_k must be positive')
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'N', N)

    def shifted(self):
        """Model with the first row and column removed (coefficients ``b_{k+1}, q_{k+1}``)."""
        return JacobiModel(self.b[1:], self.q[1:], self.N - 1)


def delta(N, k=1):
    e = np.zeros(N, dtype=complex)
    e[k - 1] = 1
    return e


def jacobi_matrix(m):
    N = m.N
    off = np.asarray(m.b[:N - 1])
    return np.diag(np.asarray(m.q[:N])) + np.diag(off, 1) + np.diag(off, -1)


def jacobi_relation(m, tol=sub.DEFAULT_TOL):
    return graph(jacobi_matrix(m), tol)


def _require_restrictable(m):
    if m.N < 2:
        raise ValueError('the restricted relation needs N >= 2')


def restricted_B(m, tol=sub.DEFAULT_TOL):
    """``{(f, J_N f) : f_1 = 0}``."""
    _require_restrictable(m)
    E = np.eye(m.N, dtype=complex)[:, 1:]
    return from_blocks(E, jacobi_matrix(m) @ E, tol)


def j_tau(m, tau, tol=sub.DEFAULT_TOL):
    """Graph of ``J_N + tau delta_1 delta_1^*``."""
    if _is_inf(tau):
        return j_infinity(m, tol)
    Jt = jacobi_matrix(m).astype(complex)
    Jt[0, 0] += complex(tau)
    return graph(Jt, tol)


def j_infinity(m, tol=sub.DEFAULT_TOL):
    """``B_N (+) span{(0, delta_1)}``."""
    N = m.N
    tail = from_blocks(np.zeros((N, 1)), delta(N)[:, None], tol)
    return direct_sum(restricted_B(m, tol), tail)


def adjoint_of_B(m, tol=sub.DEFAULT_TOL):
    """``J_N (+) span{(0, delta_1)}``, which equals ``adjoint(restricted_B(m))``."""
    N = m.N
    tail = from_blocks(np.zeros((N, 1)), delta(N)[:, None], tol)
    return direct_sum(jacobi_relation(m, tol), tail)


def j_relation(m, tau, tol=sub.DEFAULT_TOL):
    return j_infinity(m, tol) if _is_inf(tau) else j_tau(m, tau, tol)


def _check_index(m, k):
    if not 1 <= k <= m.N:
        raise IndexError(f'k = {k} outside 1..{m.N}')


def _recurrence(b, q, z, start, k):
    """Run ``b_{j-1} p_{j-1} + q_j p_j + b_j p_{j+1} = z p_j`` from ``start = (p_1, p_2)``."""
    p_prev, p = start
    if k == 1:
        return p_prev
    for j in range(2, k):
        # j is 1-based; b[j-1] = b_j, b[j-2] = b_{j-1}
        p_prev, p = p, ((z - q[j - 1]) * p - b[j - 2] * p_prev) / b[j - 1]
    return p


def poly_first_kind(m, z, k):
    """``pi_k(z)`` with ``pi_1 = 1``."""
    _check_index(m, k)
    z = complex(z)
    if k == 1:
        return complex(1)
    return _recurrence(m.b, m.q, z, (1, (z - m.q[0]) / m.b[0]), k)


def poly_second_kind(m, z, k):
    """``theta_k(z)`` with ``theta_1 = 0`` and ``theta_2 = 1/b_1``."""
    _check_index(m, k)
    z = complex(z)
    if k == 1:
        return complex(0)
    return _recurrence(m.b, m.q, z, (0, 1 / m.b[0]), k)


def psi_vector(m, zeta):
    """``(J_N - zeta)^{-1} delta_1``."""
    zeta = complex(zeta)
    A = jacobi_matrix(m) - zeta * np.eye(m.N)
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= sub.DEFAULT_TOL.rank_rel * max(1.0, s[0]):
        raise ZetaIsEigenvalue(f'{zeta} is an eigenvalue of J_N')
    return np.linalg.solve(A, delta(m.N))


def m_finite(m, zeta):
    """First entry of ``psi_vector``: the finite-section Weyl function."""
    return complex(psi_vector(m, zeta)[0])


def beta_tau(tau, m_val, m_conj_val):
    """``(1 + tau m(zeta)) / (1 + tau m(conj zeta))``; ``m(zeta)/m(conj zeta)`` at infinity."""
    if _is_inf(tau):
        if m_conj_val == 0:
            raise DegenerateMobius('m(conj zeta) = 0')
        return complex(m_val) / complex(m_conj_val)
    den = 1 + complex(tau) * complex(m_conj_val)
    if abs(den) <= 1e-300:
        raise DegenerateMobius(f'1 + tau m(conj zeta) = 0 for tau = {tau}')
    return (1 + complex(tau) * complex(m_val)) / den


def extension_parameter_for(m, tau, zeta=1j):
    """The one-dimensional contraction parameter of ``J(tau)`` over ``B_N`` at ``zeta``.

    Deficiency kernels are spanned by ``psi(zeta)`` and ``psi(conj zeta)``;
    with unit vectors along them, the scalar is
    ``beta_tau * conj(u) * ||psi(conj zeta)|| / ||psi(zeta)||``, ``u = zeta/|zeta|``.
    """
    zeta = complex(zeta)
    if zeta.imag <= 0:
        raise PreconditionError('zeta must lie in the open upper half-plane')
    pz, pc = psi_vector(m, zeta), psi_vector(m, zeta.conjugate())
    beta = beta_tau(tau, pz[0], pc[0])
    u = zeta / abs(zeta)
    nz, nc = np.linalg.norm(pz), np.linalg.norm(pc)
    K = np.array([[beta * u.conjugate() * nc / nz]])
    return ExtensionParameter(zeta, K, (pz / nz)[:, None], (pc / nc)[:, None])


def cross_validate_extension(m, tau, zeta=1j, tol=sub.DEFAULT_TOL):
    """Compare ``J(tau)`` with the generic extension built from ``beta_tau``."""
    if not _is_inf(tau) and complex(tau).imag < 0:
        raise PreconditionError('tau must lie in the closed upper half-plane or be INFINITY')
    B = restricted_B(m, tol)
    A_hat = extend_by_contraction(B, extension_parameter_for(m, tau, zeta))
    return A_hat.equals(j_relation(m, tau, tol))
