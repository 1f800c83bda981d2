"""Point spectrum and resolvent-set membership of relations via the pencil ``G - zF``.

For a relation with orthonormal basis blocks ``[F; G]`` the pair ``(F c, G c)``
is an eigenpair for ``z`` exactly when ``(G - zF) c = 0`` with ``F c != 0``.
When ``dim T == n`` the pencil is square and its generalized eigenvalues are
the finite eigenvalues; directions with ``F c = 0`` (the multivalued part)
show up as eigenvalues at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import subspace as sub
from .errors import NonSquareRelation, SingularPencil
from .relation import parts, shift

__all__ = ['SpectrumReport', 'in_quasi_regular', 'in_regular', 'eigenvalues',
           'kernel_basis', 'point_spectrum_dims']


@dataclass(frozen=True)
class SpectrumReport:
    """Finite eigenvalues with geometric multiplicities plus the infinite part.

    ``algebraic`` lists the algebraic multiplicity (cluster size in the pencil)
    for each entry of ``finite_eigenvalues``, in the same order.
    """
    finite_eigenvalues: list
    infinite_multiplicity: int
    regular_set_nonempty: bool
    is_square_pencil: bool
    algebraic: list = field(default_factory=list)
    infinite_algebraic: int = 0

    @property
    def values(self):
        return np.array([z for z, _ in self.finite_eigenvalues], dtype=complex)

    def multiset(self):
        """Finite eigenvalues repeated by algebraic multiplicity."""
        out = []
        for (z, _), a in zip(self.finite_eigenvalues, self.algebraic):
            out.extend([z] * a)
        return np.array(out, dtype=complex)


def kernel_basis(T, zeta):
    """Basis of ``ker(T - zeta I)`` in C^n."""
    return parts(shift(T, zeta)).ker


def in_quasi_regular(T, zeta):
    """``(T - zeta I)^{-1}`` is an operator (bounded automatically in finite dimension)."""
    return kernel_basis(T, zeta).dim == 0


def in_regular(T, zeta, ambient=None):
    """Quasi-regular and ``ran(T - zeta I)`` is the whole space.

    ``ambient`` replaces C^n by a subspace (for reduced relations ``T_S``).
    """
    if not in_quasi_regular(T, zeta):
        return False
    ran = parts(shift(T, zeta)).ran
    if ambient is None:
        return ran.dim == T.n
    return sub.contains(ran, ambient)


def point_spectrum_dims(T, zetas):
    """``dim ker(T - z I)`` for each ``z`` in ``zetas``."""
    return [kernel_basis(T, z).dim for z in zetas]


def _cluster(values, radius):
    """Group complex numbers whose chain distance is below ``radius``."""
    groups = []
    for z in sorted(values, key=lambda v: (v.real, v.imag)):
        for g in groups:
            if any(abs(z - y) <= radius * max(1.0, abs(y)) for y in g):
                g.append(z)
                break
        else:
            groups.append([z])
    return groups


def eigenvalues(T, rng=None):
    """Eigenvalues of a relation with a square, regular pencil."""
    n, tol = T.n, T.tol
    if T.dim != n:
        raise NonSquareRelation(f'dim T = {T.dim} but n = {n}')
    F, G = T.F, T.G
    rng = np.random.default_rng(0) if rng is None else rng
    probes = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    for z in probes:
        s = np.linalg.svd(G - z * F, compute_uv=False)
        if s[-1] > tol.rank_rel * max(1.0, s[0]):
            break
    else:
        raise SingularPencil('det(G - zF) vanishes identically: every z is an eigenvalue')

    w = scipy.linalg.eigvals(G, F, homogeneous_eigvals=True)
    alpha, beta = w[0], w[1]
    finite_mask = np.abs(beta) > tol.eq_tol * (np.abs(alpha) + np.abs(beta))
    finite = alpha[finite_mask] / beta[finite_mask]
    infinite_alg = int(np.sum(~finite_mask))

    merged, geo, alg = [], [], []
    for group in _cluster(list(finite), 10 * tol.eq_tol):
        z = complex(np.mean(group))
        spread = max(abs(a - b) for a in group for b in group)
        sv = np.linalg.svd(G - z * F, compute_uv=False)
        cutoff = max(tol.rank_rel, 100 * spread) * max(1.0, sv[0])
        merged.append(z)
        alg.append(len(group))
        geo.append(int(min(len(group), max(1, np.sum(sv <= cutoff)))))
    return SpectrumReport(
        finite_eigenvalues=list(zip(merged, geo)),
        infinite_multiplicity=parts(T).mul.dim,
        regular_set_nonempty=True,
        is_square_pencil=True,
        algebraic=alg,
        infinite_algebraic=infinite_alg)
