"""Dissipative and symmetric extensions of symmetric relations.

The builder realizes every closed dissipative extension of a symmetric
relation ``A`` as

    A_hat = A (+) (V - I) D,

where ``D`` is a set of pairs ``(v, zeta v)`` with ``v`` in ``ker(A* - zeta)``
and ``V(v, zeta v) = (zeta/|zeta|) (w, conj(zeta) w)`` with ``w`` in
``ker(A* - conj(zeta))``.  In coordinates, ``v = D_basis c`` and
``w = target_basis K c``; ``V`` is a contraction exactly when ``||K|| <= 1``.
The inverse direction Z-transforms ``A`` and ``A_hat`` onto the unit circle and
reads ``K`` off the orthogonal difference of the two images.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import subspace as sub
from .errors import (AlphaNotQuasiRegular, DomainNotInDeficiencySpace, IndicesUnequal,
                     JoinNotContractive, NotAContraction, NotAnExtension, NotDissipative,
                     NotOrthogonal, NotSymmetric, NumericalFailure, PreconditionError)
from .relation import (LinearRelation, _psd_test, _small, adjoint, classify,
                       contraction_form, deficiency_index, deficiency_space,
                       direct_sum, dissipativity_form, from_blocks, operator_matrix,
                       orthogonal_difference, parts)
from .spectra import in_quasi_regular
from .transforms import z_transform_scaled

__all__ = ['ExtensionParameter', 'VonNeumannDecomposition', 'IndexBudget',
           'defect_kernel', 'von_neumann_decompose', 'extend_by_contraction',
           'extension_parameter', 'maximal_dissipative_extension',
           'selfadjoint_extension_at', 'contractive_join', 'eta_e',
           'index_budget', 'is_symmetric', 'is_dissipative']


def is_symmetric(T):
    return _small(dissipativity_form(T), T.tol)


def is_dissipative(T):
    return _psd_test(dissipativity_form(T), T.tol)[0]


def _is_contraction(T):
    return _psd_test(contraction_form(T), T.tol)[0]


def _is_isometry(T):
    return _small(contraction_form(T), T.tol)


def _require_symmetric(A):
    if not is_symmetric(A):
        raise NotSymmetric('the relation to be extended must be symmetric')


def _require_nonreal(zeta):
    if complex(zeta).imag == 0:
        raise PreconditionError(f'zeta = {zeta} must be nonreal')


def defect_kernel(A, zeta):
    """``ker(A* - zeta I)``, the domain of ``N_zeta(A*)``."""
    return parts(deficiency_space(adjoint(A), zeta)).dom


@dataclass(frozen=True, eq=False)
class ExtensionParameter:
    """Contraction ``K`` between deficiency kernels at ``zeta``.

    ``D_basis`` (``n x q``) is an orthonormal basis of the chosen subspace of
    ``ker(A* - zeta)``; ``target_basis`` (``n x p``) an orthonormal basis of
    ``ker(A* - conj(zeta))``, or ``None`` to let the builder pick one.
    """
    zeta: complex
    K: np.ndarray
    D_basis: np.ndarray
    target_basis: Optional[np.ndarray] = None

    def __post_init__(self):
        K = np.atleast_2d(np.asarray(self.K, dtype=complex))
        D = np.asarray(self.D_basis, dtype=complex)
        if D.ndim == 1:
            D = D[:, None]
        if K.size == 0:
            K = K.reshape(K.shape[0] if K.ndim == 2 else 0, D.shape[1])
        if K.shape[1] != D.shape[1]:
            raise ValueError(f'K has {K.shape[1]} columns but D_basis has {D.shape[1]}')
        object.__setattr__(self, 'K', K)
        object.__setattr__(self, 'D_basis', D)
        object.__setattr__(self, 'zeta', complex(self.zeta))
        if self.target_basis is not None:
            E = np.asarray(self.target_basis, dtype=complex)
            if E.ndim == 1:
                E = E[:, None]
            object.__setattr__(self, 'target_basis', E)

    def operator(self, target_basis=None):
        """The map ``v -> w`` as an ``n x n`` matrix (zero off ``D``)."""
        E = self.target_basis if target_basis is None else target_basis
        return E @ self.K @ self.D_basis.conj().T


@dataclass(frozen=True, eq=False)
class VonNeumannDecomposition:
    A: LinearRelation
    N_minus: LinearRelation
    N_plus: LinearRelation
    zeta: complex
    is_orthogonal: bool = field(default=False)

    def total(self):
        return direct_sum(direct_sum(self.A, self.N_minus), self.N_plus)


class IndexBudget(NamedTuple):
    eta_A: int
    eta_hat: int
    codim: int

    @property
    def holds(self):
        return self.eta_A == self.eta_hat + self.codim


def von_neumann_decompose(A, zeta=1j):
    """``A* = A (+) N_{conj zeta}(A*) (+) N_zeta(A*)`` for symmetric ``A``."""
    _require_symmetric(A)
    _require_nonreal(zeta)
    Astar = adjoint(A)
    n_minus = deficiency_space(Astar, complex(zeta).conjugate())
    n_plus = deficiency_space(Astar, zeta)
    dec = VonNeumannDecomposition(A, n_minus, n_plus, complex(zeta))
    if not dec.total().equals(Astar):
        raise NumericalFailure('direct sum of the three summands differs from A*')
    ortho = (sub.is_orthogonal(A.space, n_minus.space)
             and sub.is_orthogonal(A.space, n_plus.space)
             and sub.is_orthogonal(n_minus.space, n_plus.space))
    return VonNeumannDecomposition(A, n_minus, n_plus, complex(zeta), ortho)


def _check_orthonormal(B, tol, name):
    if B.shape[1] and np.linalg.norm(B.conj().T @ B - np.eye(B.shape[1]), 2) > tol.eq_tol:
        raise ValueError(f'{name} must have orthonormal columns')


def _check_in(B, S, name):
    for j in range(B.shape[1]):
        if not sub.member(B[:, j], S):
            raise DomainNotInDeficiencySpace(
                f'column {j} of {name} is not in ker(A* - zeta I)' if name == 'D_basis'
                else f'column {j} of {name} is not in ker(A* - conj(zeta) I)')


def extend_by_contraction(A, P):
    """``A (+) (V - I) D`` for the contraction encoded by ``P``."""
    tol = A.tol
    _require_symmetric(A)
    zeta = P.zeta
    _require_nonreal(zeta)
    D = P.D_basis
    if D.shape[0] != A.n:
        raise ValueError(f'D_basis has {D.shape[0]} rows, expected {A.n}')
    _check_orthonormal(D, tol, 'D_basis')
    _check_in(D, defect_kernel(A, zeta), 'D_basis')
    E = P.target_basis
    if E is None:
        E = defect_kernel(A, zeta.conjugate()).basis
    else:
        _check_orthonormal(E, tol, 'target_basis')
        _check_in(E, defect_kernel(A, zeta.conjugate()), 'target_basis')
    K = P.K
    if K.shape[0] != E.shape[1]:
        raise ValueError(f'K has {K.shape[0]} rows, target basis has {E.shape[1]} columns')
    knorm = np.linalg.norm(K, 2) if K.size else 0.0
    if knorm > 1 + tol.psd_abs:
        raise NotAContraction(f'||K|| = {knorm:.6g} > 1')
    if zeta.imag < 0 and K.size and np.linalg.norm(K.conj().T @ K - np.eye(K.shape[1]), 2) > tol.eq_tol:
        raise NotAContraction('for zeta in the lower half-plane K must be isometric')
    if D.shape[1] == 0:
        return A
    u = zeta / abs(zeta)
    W = E @ K
    return direct_sum(A, from_blocks(u * W - D, abs(zeta) * W - zeta * D, tol))


def extension_parameter(A, A_hat, zeta=1j):
    """Recover ``(D, K)`` with ``extend_by_contraction(A, P) == A_hat``."""
    tol = A.tol
    zeta = complex(zeta)
    _require_symmetric(A)
    _require_nonreal(zeta)
    if not A_hat.contains(A):
        raise NotAnExtension('A_hat does not contain A')
    if zeta.imag > 0 and not is_dissipative(A_hat):
        raise NotDissipative('A_hat is not dissipative')
    if zeta.imag < 0 and not is_symmetric(A_hat):
        raise NotSymmetric('for zeta in the lower half-plane A_hat must be symmetric')
    V = z_transform_scaled(A, zeta)
    V_hat = z_transform_scaled(A_hat, zeta)
    W = orthogonal_difference(V_hat, V)
    E = defect_kernel(A, zeta.conjugate()).basis
    if W.dim == 0:
        return ExtensionParameter(zeta, np.zeros((E.shape[1], 0)), np.zeros((A.n, 0)), E)
    Wmat = operator_matrix(W)
    D = parts(W).dom.basis
    K = E.conj().T @ (Wmat @ D)
    return ExtensionParameter(zeta, K, D, E)


def maximal_dissipative_extension(A, zeta=1j):
    """``A (+) N_zeta(A*)`` for ``zeta`` in the upper half-plane."""
    zeta = complex(zeta)
    if zeta.imag <= 0:
        raise PreconditionError('zeta must lie in the open upper half-plane')
    _require_symmetric(A)
    N = deficiency_space(adjoint(A), zeta)
    A_hat = direct_sum(A, N)
    rep = classify(A_hat)
    if not rep.is_maximal_dissipative:
        raise NumericalFailure('A (+) N_zeta(A*) is not maximal dissipative')
    if deficiency_space(A_hat, zeta).dim != deficiency_index(A, -1j):
        raise NumericalFailure('dim N_zeta(A_hat) differs from eta_-(A)')
    return A_hat


def selfadjoint_extension_at(A, alpha):
    """``A (+) N_alpha(A*)`` for real ``alpha`` in the quasi-regular set of ``A``."""
    alpha = complex(alpha)
    if alpha.imag != 0:
        raise PreconditionError('alpha must be real')
    alpha = alpha.real
    _require_symmetric(A)
    if not in_quasi_regular(A, alpha):
        raise AlphaNotQuasiRegular(f'{alpha} is an eigenvalue of A')
    ep, em = deficiency_index(A, 1j), deficiency_index(A, -1j)
    if ep != em:
        raise IndicesUnequal(f'deficiency indices ({ep}, {em}) differ')
    L = direct_sum(A, deficiency_space(adjoint(A), alpha))
    if not classify(L).is_selfadjoint:
        raise NumericalFailure('A (+) N_alpha(A*) is not selfadjoint')
    return L


def contractive_join(V, W):
    """Orthogonal join ``V (+) W`` of two contractions, checked to be contractive."""
    for name, X in (('V', V), ('W', W)):
        if not _is_contraction(X):
            raise NotAContraction(f'{name} is not a contraction')
    if not sub.is_orthogonal(V.space, W.space):
        raise NotOrthogonal('V and W are not orthogonal in C^n (+) C^n')
    J = LinearRelation(V.n, sub.sum(V.space, W.space))
    ok, _, vec = _psd_test(contraction_form(J), J.tol)
    if not ok:
        witness = (J.F @ vec, J.G @ vec)
        raise JoinNotContractive('V (+) W is not a contraction', witness)
    if _is_isometry(V):
        pv, pw = parts(V), parts(W)
        if not (sub.is_orthogonal(pv.dom, pw.dom) and sub.is_orthogonal(pv.ran, pw.ran)):
            raise JoinNotContractive('isometric V requires dom V _|_ dom W and ran V _|_ ran W')
    return J


def eta_e(V):
    """``dim(C^n (-) dom V)`` for a contraction, cross-checked at the point 2."""
    if not _is_contraction(V):
        raise NotAContraction('V is not a contraction')
    value = V.n - parts(V).dom.dim
    if deficiency_index(V, 2.0) != value:
        raise NumericalFailure('eta_e disagrees with the deficiency index at 2')
    return value


def index_budget(A, A_hat, check=True):
    """``(eta_-(A), eta_-(A_hat), dim A_hat - dim A)``.

    With ``check`` and ``A`` symmetric, ``A_hat`` dissipative, the identity
    ``eta_-(A) = eta_-(A_hat) + dim[A_hat / A]`` is enforced.
    """
    if not A_hat.contains(A):
        raise NotAnExtension('A_hat does not contain A')
    budget = IndexBudget(deficiency_index(A, -1j), deficiency_index(A_hat, -1j),
                         A_hat.dim - A.dim)
    if check and is_symmetric(A) and is_dissipative(A_hat) and not budget.holds:
        raise NumericalFailure(f'index identity fails: {budget}')
    return budget
