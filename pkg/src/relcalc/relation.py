"""Linear relations in C^n (+) C^n.

A relation ``T`` is a :class:`~relcalc.subspace.Subspace` of C^{2n}; an element
is a pair ``(f, g)`` stacked as ``[f; g]``.  Splitting an orthonormal basis of
``T`` into its top and bottom ``n`` rows gives the blocks ``F`` and ``G`` used
throughout: every pair of ``T`` is ``(F c, G c)`` for a coefficient vector
``c`` with ``||(F c, G c)|| = ||c||``.

Finite dimension makes every relation closed, every range closed, and
"bounded" the same thing as "operator"; those coincidences are used freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import subspace as sub
from .errors import (DimensionMismatch, DomainNotContained, NonTrivialIntersection,
                     NotAnOperator, NotOrthogonal)
from .subspace import DEFAULT_TOL, Subspace

__all__ = ['LinearRelation', 'RelationParts', 'ClassificationReport', 'graph',
           'from_pairs', 'from_blocks', 'zero_relation', 'parts', 'inverse',
           'flip_U', 'rotate_W', 'adjoint', 'add', 'compose', 'scale', 'shift',
           'direct_sum', 'orthogonal_sum', 'orthogonal_difference',
           'orthogonal_complement', 'operator_part', 'multivalued_part',
           'reduce', 'classify', 'deficiency_space', 'deficiency_index',
           'operator_matrix', 'operator_norm', 'relative_bound',
           'eta_minus', 'eta_plus']


@dataclass(frozen=True, eq=False)
class LinearRelation:
    n: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != 2 * self.n:
            raise DimensionMismatch(
                f'relation space lives in C^{self.space.ambient_dim}, '
                f'expected C^{2 * self.n}')

    @property
    def tol(self):
        return self.space.tol

    @property
    def dim(self):
        return self.space.dim

    @property
    def F(self):
        return self.space.basis[:self.n]

    @property
    def G(self):
        return self.space.basis[self.n:]

    def pairs(self):
        """Basis pairs ``[(f_1, g_1), ...]`` of the orthonormal basis."""
        return [(self.F[:, j], self.G[:, j]) for j in range(self.dim)]

    def equals(self, other):
        _check_n(self, other)
        return sub.equals(self.space, other.space)

    def contains(self, other):
        """``other`` is a subrelation of ``self``."""
        _check_n(self, other)
        return sub.contains(self.space, other.space)

    def has_pair(self, f, g):
        return sub.member(np.concatenate([np.ravel(f), np.ravel(g)]), self.space)

    def __repr__(self):
        return f'LinearRelation(n={self.n}, dim={self.dim})'


@dataclass(frozen=True)
class RelationParts:
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


@dataclass(frozen=True)
class ClassificationReport:
    is_operator: bool
    is_bounded: bool
    is_symmetric: bool
    is_selfadjoint: bool
    is_dissipative: bool
    is_positive: bool
    is_contraction: bool
    is_isometry: bool
    is_unitary: bool
    is_maximal_dissipative: bool
    # coefficient vector (w.r.t. the relation's orthonormal basis) realizing
    # the most negative eigenvalue of the form behind ``witness_property``
    witness: Optional[np.ndarray] = None
    witness_property: Optional[str] = None

    FLAGS = ('is_operator', 'is_bounded', 'is_symmetric', 'is_selfadjoint',
             'is_dissipative', 'is_positive', 'is_contraction', 'is_isometry',
             'is_unitary', 'is_maximal_dissipative')

    def flags(self):
        return {name: getattr(self, name) for name in self.FLAGS}


def _check_n(T, S):
    if T.n != S.n:
        raise DimensionMismatch(f'relations act in C^{T.n} and C^{S.n}')


def from_blocks(F, G, tol=DEFAULT_TOL):
    """Relation spanned by the pairs ``(F[:, j], G[:, j])``."""
    F = np.asarray(F, dtype=complex)
    G = np.asarray(G, dtype=complex)
    if F.ndim == 1:
        F, G = F[:, None], G[:, None]
    if F.shape != G.shape:
        raise DimensionMismatch(f'F block {F.shape} and G block {G.shape} differ')
    n = F.shape[0]
    return LinearRelation(n, sub.from_basis(np.vstack([F, G]), tol))


def zero_relation(n, tol=DEFAULT_TOL):
    return LinearRelation(n, sub.zero(2 * n, tol))


def graph(A, tol=DEFAULT_TOL):
    """Graph ``{(f, A f)}`` of a square matrix."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f'graph needs a square matrix, got {A.shape}')
    n = A.shape[0]
    return from_blocks(np.eye(n), A, tol)


def from_pairs(pairs, tol=DEFAULT_TOL, n=None):
    """Relation spanned by a list of ``(f, g)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        if n is None:
            raise ValueError('n is required for an empty pair list')
        return zero_relation(n, tol)
    fs = [np.asarray(f, dtype=complex).ravel() for f, _ in pairs]
    gs = [np.asarray(g, dtype=complex).ravel() for _, g in pairs]
    lengths = {len(v) for v in fs + gs}
    if len(lengths) != 1 or (n is not None and lengths != {n}):
        raise DimensionMismatch(f'pair components have lengths {sorted(lengths)}')
    return from_blocks(np.column_stack(fs), np.column_stack(gs), tol)


def _map_blocks(T, a, b, c, d):
    """Relation ``{(a f + b g, c f + d g) : (f, g) in T}``."""
    F, G = T.F, T.G
    return LinearRelation(T.n, sub.from_basis(np.vstack([a * F + b * G, c * F + d * G]),
                                              T.tol) if T.dim else T.space)


def parts(T):
    """Domain, range, kernel and multivalued part of ``T``."""
    n, tol = T.n, T.tol
    # F and G are blocks of an orthonormal basis: rank is measured against 1
    dom = sub.from_basis(T.F, tol, scale=1.0) if T.dim else sub.zero(n, tol)
    ran = sub.from_basis(T.G, tol, scale=1.0) if T.dim else sub.zero(n, tol)
    top = LinearRelation(n, sub.Subspace(2 * n, np.eye(2 * n)[:, :n], tol))
    bottom = LinearRelation(n, sub.Subspace(2 * n, np.eye(2 * n)[:, n:], tol))
    ker_rel = sub.intersect(T.space, top.space)
    mul_rel = sub.intersect(T.space, bottom.space)
    ker = sub.Subspace(n, ker_rel.basis[:n], tol)
    mul = sub.Subspace(n, mul_rel.basis[n:], tol)
    return RelationParts(dom, ran, ker, mul)


def inverse(T):
    """``T^{-1} = U T``; ``U(f, g) = (g, f)``."""
    return _map_blocks(T, 0, 1, 1, 0)


flip_U = inverse


def rotate_W(T):
    """``W T`` with ``W(f, g) = (-g, f)``."""
    return _map_blocks(T, 0, -1, 1, 0)


def adjoint(T):
    """``T* = (W T)^perp``."""
    return LinearRelation(T.n, sub.complement(rotate_W(T).space))


def orthogonal_complement(T):
    """``T^perp`` regarded as a relation."""
    return LinearRelation(T.n, sub.complement(T.space))


def scale(zeta, T):
    """``zeta T = {(f, zeta g)}``."""
    return _map_blocks(T, 1, 0, 0, zeta)


def shift(T, zeta):
    """``T - zeta I = {(f, g - zeta f)}``."""
    return _map_blocks(T, 1, 0, -zeta, 1)


def add(T, S):
    """Operator-like sum ``{(f, g + h) : (f, g) in T, (f, h) in S}``.

    Coefficient pairs with equal first components are the null space of
    ``[F_T, -F_S]``.
    """
    _check_n(T, S)
    n, tol = T.n, T.tol
    if T.dim == 0 or S.dim == 0:
        return zero_relation(n, tol)
    N = sub.nullspace(np.hstack([T.F, -S.F]), tol, scale=1.0)
    if N.shape[1] == 0:
        return zero_relation(n, tol)
    c, d = N[:T.dim], N[T.dim:]
    return from_blocks(T.F @ c, T.G @ c + S.G @ d, tol)


def compose(S, T):
    """``S T = {(f, k) : (f, g) in T, (g, k) in S}``."""
    _check_n(T, S)
    n, tol = T.n, T.tol
    if T.dim == 0 or S.dim == 0:
        return zero_relation(n, tol)
    N = sub.nullspace(np.hstack([T.G, -S.F]), tol, scale=1.0)
    if N.shape[1] == 0:
        return zero_relation(n, tol)
    c, d = N[:T.dim], N[T.dim:]
    return from_blocks(T.F @ c, S.G @ d, tol)


def direct_sum(T, S):
    """``T (+) S`` for relations with trivial intersection."""
    _check_n(T, S)
    meet = sub.intersect(T.space, S.space)
    if meet.dim:
        raise NonTrivialIntersection(
            f'relations intersect in a subspace of dimension {meet.dim}')
    return LinearRelation(T.n, sub.sum(T.space, S.space))


def orthogonal_sum(T, S):
    _check_n(T, S)
    if not sub.is_orthogonal(T.space, S.space):
        raise NotOrthogonal('summands are not orthogonal in C^n (+) C^n')
    return LinearRelation(T.n, sub.sum(T.space, S.space))


def orthogonal_difference(T, S):
    """``T (-) S = T & S^perp``."""
    _check_n(T, S)
    return LinearRelation(T.n, sub.intersect(T.space, sub.complement(S.space)))


def multivalued_part(T):
    """``T_inf = {(0, g) in T}``."""
    n = T.n
    bottom = sub.Subspace(2 * n, np.eye(2 * n)[:, n:], T.tol)
    return LinearRelation(n, sub.intersect(T.space, bottom))


def operator_part(T):
    """``T_op = T (-) T_inf``; always an operator."""
    return orthogonal_difference(T, multivalued_part(T))


def reduce(T, S):
    """``T_S = T & ((mul S)^perp (+) (mul S)^perp)``, embedded in C^{2n}."""
    _check_n(T, S)
    perp = sub.complement(parts(S).mul)
    z = np.zeros_like(perp.basis)
    box = sub.Subspace(2 * T.n, np.vstack([np.hstack([perp.basis, z]),
                                           np.hstack([z, perp.basis])]), T.tol)
    return LinearRelation(T.n, sub.intersect(T.space, box))


def _hermitian(X):
    return (X + X.conj().T) / 2


def _psd_test(H, tol):
    """Return ``(is_psd, min_eig, eigvec)`` for a Hermitian matrix."""
    if H.shape[0] == 0:
        return True, 0.0, None
    w, V = np.linalg.eigh(_hermitian(H))
    scale_ = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol.psd_abs * scale_), float(w[0]), V[:, 0]


def _small(H, tol):
    if H.shape[0] == 0:
        return True
    w = np.linalg.eigvalsh(_hermitian(H))
    return bool(np.max(np.abs(w)) <= tol.psd_abs)


def dissipativity_form(T):
    """Hermitian matrix of ``c -> Im <F c, G c>``."""
    F, G = T.F, T.G
    return (F.conj().T @ G - G.conj().T @ F) / 2j


def contraction_form(T):
    """Hermitian matrix of ``c -> ||F c||^2 - ||G c||^2``."""
    F, G = T.F, T.G
    return F.conj().T @ F - G.conj().T @ G


def deficiency_space(T, zeta):
    """``N_zeta(T) = {(f, zeta f) in T}``."""
    return LinearRelation(T.n, sub.intersect(T.space, graph(zeta * np.eye(T.n), T.tol).space))


def deficiency_index(T, zeta, ambient=None):
    """``eta_zeta(T) = dim ran(T - zeta I)^perp``.

    With ``ambient`` (a subspace ``H0`` of C^n) the codimension is taken
    inside ``H0``; this is how indices of reduced relations ``T_S`` living in
    ``(mul S)^perp`` are measured.
    """
    ran = parts(shift(T, zeta)).ran
    if ambient is None:
        return T.n - ran.dim
    return ambient.dim - sub.intersect(ran, ambient).dim


def eta_minus(T):
    """``eta_-`` measured at the test point ``-i``."""
    return deficiency_index(T, -1j)


def eta_plus(T):
    return deficiency_index(T, 1j)


def classify(T):
    tol = T.tol
    pr = parts(T)
    is_operator = pr.mul.dim == 0

    M_im = dissipativity_form(T)
    dissipative, _, v_dis = _psd_test(M_im, tol)
    symmetric = _small(M_im, tol) if T.dim else True

    M_re = (T.F.conj().T @ T.G + T.G.conj().T @ T.F) / 2
    positive_form, _, v_pos = _psd_test(M_re, tol)
    positive = symmetric and positive_form

    C = contraction_form(T)
    contraction, _, v_con = _psd_test(C, tol)
    isometry = _small(C, tol) if T.dim else True
    unitary = isometry and pr.dom.dim == T.n and pr.ran.dim == T.n

    selfadjoint = symmetric and T.equals(adjoint(T))
    maximal = dissipative and deficiency_index(T, -1j) == 0

    witness, prop = None, None
    for ok, vec, name in ((dissipative, v_dis, 'is_dissipative'),
                          (contraction, v_con, 'is_contraction'),
                          (positive_form, v_pos, 'is_positive')):
        if not ok:
            witness, prop = vec, name
            break
    return ClassificationReport(
        is_operator=is_operator, is_bounded=is_operator, is_symmetric=symmetric,
        is_selfadjoint=selfadjoint, is_dissipative=dissipative,
        is_positive=positive, is_contraction=contraction, is_isometry=isometry,
        is_unitary=unitary, is_maximal_dissipative=maximal, witness=witness,
        witness_property=prop)


def operator_matrix(T):
    """Matrix ``G F^+`` of an operator relation (acting correctly on ``dom T``)."""
    if parts(T).mul.dim:
        raise NotAnOperator('relation has a nontrivial multivalued part')
    if T.dim == 0:
        return np.zeros((T.n, T.n), dtype=complex)
    return T.G @ np.linalg.pinv(T.F, rcond=T.tol.rank_rel)


def operator_norm(T):
    """Norm of an operator relation on its domain."""
    if T.dim == 0:
        if parts(T).mul.dim:
            raise NotAnOperator('relation has a nontrivial multivalued part')
        return 0.0
    return float(np.linalg.norm(operator_matrix(T), 2))


def relative_bound(S, T):
    """Smallest ``c`` with ``||S f|| <= c ||(f, h)||`` for all ``(f, h) in T``.

    The norm on pairs is the Euclidean one of C^{2n}.  With an orthonormal
    basis ``[F; H]`` of ``T`` the supremum is the spectral norm of
    ``S_mat F``.
    """
    _check_n(S, T)
    S_mat = operator_matrix(S)
    if not parts(S).dom.contains(parts(T).dom):
        raise DomainNotContained('dom T is not contained in dom S')
    if T.dim == 0:
        return 0.0
    return float(np.linalg.norm(S_mat @ T.F, 2))
