"""Linear subspaces of C^d represented by orthonormal bases.

Every rank decision in the package goes through :func:`orth`, which keeps the
left singular vectors whose singular values are at least
``tol.rank_rel * sigma_max``.  Subspace equality is measured by the spectral
norm distance of orthogonal projectors, so two different bases of the same
span compare equal.

>>> import numpy as np
>>> S = span([[1, 0], [1, 0]])
>>> S.dim
1
>>> complement(S).equals(span([[0, 1]]))
True
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch

__all__ = ['ToleranceProfile', 'DEFAULT_TOL', 'Subspace', 'orth',
           'nullspace', 'span', 'from_basis', 'zero', 'full', 'complement',
           'sum', 'intersect', 'member', 'equals', 'contains', 'projector',
           'distance', 'is_orthogonal', 'direct_sum_dims']

# absolute floor: a matrix whose largest singular value is below this is zero
_ABS_FLOOR = 1e-300


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical thresholds shared by all operations.

    Attributes
    ----------
    rank_rel : float
        Relative singular-value cutoff for rank decisions.
    psd_abs : float
        Negative-eigenvalue floor for semidefiniteness tests of Hermitian
        forms (scaled by ``max(1, ||form||)``).
    eq_tol : float
        Projector-distance threshold for subspace equality and membership.
    """
    rank_rel: float = 1e-10
    psd_abs: float = 1e-10
    eq_tol: float = 1e-8

    def __post_init__(self):
        for name in ('rank_rel', 'psd_abs', 'eq_tol'):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f'{name} must be finite and > 0, got {value!r}')


DEFAULT_TOL = ToleranceProfile()


def _as_matrix(vectors, d=None):
    """Stack ``vectors`` as columns of a complex matrix."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        if d is not None and vectors.shape[0] != d:
            raise DimensionMismatch(
                f'expected vectors of length {d}, got {vectors.shape[0]}')
        return np.asarray(vectors, dtype=complex)
    cols = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if not cols:
        if d is None:
            raise ValueError('cannot infer the ambient dimension of an empty '
                             'vector list')
        return np.zeros((d, 0), dtype=complex)
    lengths = {len(c) for c in cols}
    if len(lengths) != 1:
        raise DimensionMismatch(f'vectors have different lengths {sorted(lengths)}')
    length = lengths.pop()
    if d is not None and length != d:
        raise DimensionMismatch(f'expected vectors of length {d}, got {length}')
    if length < 1:
        raise ValueError('vectors must have length >= 1')
    return np.column_stack(cols)


def orth(A, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of the column span of ``A``.

    Singular values below ``tol.rank_rel * scale`` are dropped; ``scale``
    defaults to the largest singular value.  Pass ``scale=1`` for blocks cut
    out of an orthonormal basis, whose natural size is 1 even when every
    singular value is rounding noise.
    """
    A = np.asarray(A, dtype=complex)
    d, k = A.shape
    if k == 0 or d == 0:
        return np.zeros((d, 0), dtype=complex)
    U, s, _ = scipy.linalg.svd(A, full_matrices=False, lapack_driver='gesvd')
    if s[0] <= _ABS_FLOOR:
        return np.zeros((d, 0), dtype=complex)
    r = int(np.sum(s >= tol.rank_rel * (s[0] if scale is None else scale)))
    return U[:, :r]


def nullspace(A, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of the (numerical) null space of ``A``.

    Singular values below ``tol.rank_rel * scale`` count as zero; ``scale``
    defaults to the largest singular value of ``A`` (or 1 for a zero matrix).
    """
    A = np.asarray(A, dtype=complex)
    m, k = A.shape
    if k == 0:
        return np.zeros((0, 0), dtype=complex)
    if m == 0:
        return np.eye(k, dtype=complex)
    _, s, Vh = scipy.linalg.svd(A, full_matrices=True, lapack_driver='gesvd')
    if scale is None:
        scale = s[0] if s[0] > _ABS_FLOOR else 1.0
    r = int(np.sum(s >= tol.rank_rel * scale))
    return Vh[r:].conj().T


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^d stored as a ``d x r`` matrix with orthonormal columns.

    Instances are immutable; construct them with :func:`span` or
    :func:`from_basis` rather than directly unless the basis is already
    orthonormal.
    """
    ambient_dim: int
    basis: np.ndarray
    tol: ToleranceProfile = field(default=DEFAULT_TOL)

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f'basis shape {basis.shape} does not match ambient dimension '
                f'{self.ambient_dim}')
        if self.ambient_dim < 1:
            raise ValueError('ambient dimension must be >= 1')
        basis.setflags(write=False)
        object.__setattr__(self, 'basis', basis)

    @property
    def dim(self):
        return self.basis.shape[1]

    def projector(self):
        return projector(self)

    def complement(self):
        return complement(self)

    def equals(self, other):
        return equals(self, other)

    def contains(self, other):
        return contains(self, other)

    def __contains__(self, v):
        return member(v, self)

    def __repr__(self):
        return f'Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})'


def _check_same(A, B):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(
            f'ambient dimensions differ: {A.ambient_dim} vs {B.ambient_dim}')


def span(vectors, tol=DEFAULT_TOL, ambient_dim=None):
    """Orthonormalized span of a list of vectors (or the columns of a matrix)."""
    A = _as_matrix(vectors, ambient_dim)
    return Subspace(A.shape[0], orth(A, tol), tol)


def from_basis(B, tol=DEFAULT_TOL, scale=None):
    """Subspace spanned by the columns of ``B`` (re-orthonormalized, see :func:`orth`)."""
    B = np.asarray(B, dtype=complex)
    if B.ndim == 1:
        B = B[:, None]
    return Subspace(B.shape[0], orth(B, tol, scale), tol)


def zero(d, tol=DEFAULT_TOL):
    return Subspace(d, np.zeros((d, 0), dtype=complex), tol)


def full(d, tol=DEFAULT_TOL):
    return Subspace(d, np.eye(d, dtype=complex), tol)


def projector(S):
    """Orthogonal projector onto ``S`` as a ``d x d`` matrix."""
    return S.basis @ S.basis.conj().T


def complement(S):
    """Orthogonal complement ``S^perp``."""
    d, r = S.ambient_dim, S.dim
    if r == 0:
        return full(d, S.tol)
    U, _, _ = scipy.linalg.svd(S.basis, full_matrices=True, lapack_driver='gesvd')
    return Subspace(d, U[:, r:], S.tol)


def sum(A, B):  # noqa: A001 -- the subspace sum, named as in the algebra
    """Subspace sum ``A + B``."""
    _check_same(A, B)
    return Subspace(A.ambient_dim, orth(np.hstack([A.basis, B.basis]), A.tol), A.tol)


def intersect(A, B):
    """Intersection computed as ``(A^perp + B^perp)^perp``."""
    _check_same(A, B)
    return complement(sum(complement(A), complement(B)))


def distance(A, B):
    """Spectral-norm distance of the orthogonal projectors onto ``A`` and ``B``."""
    _check_same(A, B)
    if A.dim == 0 and B.dim == 0:
        return 0.0
    return float(np.linalg.norm(projector(A) - projector(B), 2))


def equals(A, B):
    _check_same(A, B)
    if A.dim != B.dim:
        return False
    return distance(A, B) <= A.tol.eq_tol


def member(v, S):
    """``||(I - P_S) v|| <= eq_tol * ||v||``."""
    v = np.asarray(v, dtype=complex).ravel()
    if v.shape[0] != S.ambient_dim:
        raise DimensionMismatch(
            f'vector of length {v.shape[0]} in ambient dimension {S.ambient_dim}')
    nv = np.linalg.norm(v)
    if nv == 0:
        return True
    res = v - S.basis @ (S.basis.conj().T @ v)
    return bool(np.linalg.norm(res) <= S.tol.eq_tol * nv)


def contains(S, A):
    """``A`` is a subspace of ``S`` (to ``eq_tol``)."""
    _check_same(S, A)
    if A.dim == 0:
        return True
    res = A.basis - S.basis @ (S.basis.conj().T @ A.basis)
    return bool(np.linalg.norm(res, 2) <= S.tol.eq_tol)


def is_orthogonal(A, B):
    _check_same(A, B)
    if A.dim == 0 or B.dim == 0:
        return True
    return bool(np.linalg.norm(A.basis.conj().T @ B.basis, 2) <= A.tol.eq_tol)


def direct_sum_dims(A, B):
    """``(dim(A + B), dim(A & B))`` -- handy for Grassmann-formula checks."""
    return sum(A, B).dim, intersect(A, B).dim
