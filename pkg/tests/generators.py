"""Random instance generators shared by the test modules.

Every generator takes a ``numpy.random.Generator`` and returns relations built
from explicit pair descriptions, so the intended class (dissipative,
symmetric, ...) holds by construction rather than by classification.
"""
import numpy as np

from relcalc.relation import from_blocks, graph
from relcalc.transforms import z_transform


def cvec(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def unitary(rng, n):
    Q, R = np.linalg.qr(cvec(rng, n, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def hermitian(rng, n, scale=1.0):
    A = cvec(rng, n, n)
    return scale * (A + A.conj().T) / 2


def psd(rng, n, rank=None, floor=0.0):
    rank = n if rank is None else rank
    B = cvec(rng, n, rank)
    return B @ B.conj().T / max(rank, 1) + floor * np.eye(n)


def split_basis(rng, n, k, m):
    """Orthonormal ``X`` (``n x k``) and ``Y`` (``n x m``) with ``Y`` orthogonal to ``X``."""
    Q = unitary(rng, n)
    return Q[:, :k], Q[:, k:k + m]


def structured(rng, n, k, m, A):
    """``{(x, A x + y) : x in ran X, y in ran Y}`` with ``Y`` orthogonal to ``X``."""
    X, Y = split_basis(rng, n, k, m)
    F = np.hstack([X, np.zeros((n, m))])
    G = np.hstack([A @ X, Y])
    return from_blocks(F, G)


def random_relation(rng, n=None, with_mul=None):
    """A relation with random dimensions; ``with_mul`` forces ``mul T`` on or off."""
    n = int(rng.integers(2, 9)) if n is None else n
    if with_mul is None:
        with_mul = bool(rng.integers(0, 2))
    if with_mul:
        m = int(rng.integers(1, n + 1))
        k = int(rng.integers(0, n + 1))
        X = cvec(rng, n, k)
        F = np.hstack([X, np.zeros((n, m))])
        G = np.hstack([cvec(rng, n, n) @ X, cvec(rng, n, m)])
        return from_blocks(F, G)
    k = int(rng.integers(1, n + 1))
    X = cvec(rng, n, k)
    return from_blocks(X, cvec(rng, n, n) @ X)


def random_dissipative(rng, n=None, maximal=None):
    """``{(x, (H + iP) x + y)}`` with ``P`` positive semidefinite and ``y`` orthogonal to ``x``."""
    n = int(rng.integers(2, 9)) if n is None else n
    if maximal is None:
        maximal = bool(rng.integers(0, 2))
    k = int(rng.integers(1, n + 1))
    m = n - k if maximal else int(rng.integers(0, n - k + 1))
    A = hermitian(rng, n) + 1j * psd(rng, n, rank=int(rng.integers(0, n + 1)))
    return structured(rng, n, k, m, A)


def random_nondissipative(rng, n=None, margin=0.5):
    """Like :func:`random_dissipative` but with ``Im <x, A x>`` at most ``-margin`` on some ``x``."""
    n = int(rng.integers(2, 9)) if n is None else n
    k = int(rng.integers(1, n + 1))
    m = int(rng.integers(0, n - k + 1))
    X, Y = split_basis(rng, n, k, m)
    P = psd(rng, n)
    x = X[:, 0]
    P = P - (margin + np.real(x.conj() @ P @ x)) * np.outer(x, x.conj())
    A = hermitian(rng, n) + 1j * P
    F = np.hstack([X, np.zeros((n, m))])
    G = np.hstack([A @ X, Y])
    return from_blocks(F, G)


def random_symmetric(rng, n=None, kind=None):
    """Closed symmetric relation with a possibly nondense domain and nontrivial ``mul``.

    ``kind='structured'`` gives ``{(x, H x + y)}``; ``kind='isometric'`` gives
    the Z transform at ``i`` of a random partial isometry.
    """
    n = int(rng.integers(2, 9)) if n is None else n
    kind = kind or ('structured', 'isometric')[int(rng.integers(0, 2))]
    if kind == 'structured':
        k = int(rng.integers(0, n))
        m = int(rng.integers(0, n - k))
        if k + m == 0:
            k = 1
        return structured(rng, n, k, m, hermitian(rng, n))
    r = int(rng.integers(1, n))
    U, W = unitary(rng, n), unitary(rng, n)
    V = from_blocks(U[:, :r], W[:, :r])
    return z_transform(V, 1j)


def random_selfadjoint(rng, n=None):
    n = int(rng.integers(2, 9)) if n is None else n
    k = int(rng.integers(1, n + 1))
    return structured(rng, n, k, n - k, hermitian(rng, n))


def random_contraction(rng, n=None, k=None, norm=None):
    """``{(x, C x) : x in ran X}`` with ``||C|| <= norm``."""
    n = int(rng.integers(2, 9)) if n is None else n
    k = int(rng.integers(1, n + 1)) if k is None else k
    norm = rng.uniform(0.1, 1.0) if norm is None else norm
    C = cvec(rng, n, n)
    C *= norm / np.linalg.norm(C, 2)
    X = unitary(rng, n)[:, :k]
    return from_blocks(X, C @ X)


def random_operator_graph(rng, n):
    return graph(cvec(rng, n, n))


def lower_half_points(rng, count):
    return rng.standard_normal(count) * 3 - 1j * rng.exponential(1.0, count) - 1e-3j


def random_roots(rng, n):
    return rng.uniform(-2, 2, n) - 1j * rng.uniform(0.3, 2.0, n)


def disk_samples(rng, count):
    """Points of the closed unit disk: mostly interior, a few on the circle, plus 0."""
    r = np.sqrt(rng.uniform(0, 1, count))
    t = rng.uniform(0, 2 * np.pi, count)
    z = r * np.exp(1j * t)
    z[: max(1, count // 5)] = np.exp(1j * t[: max(1, count // 5)])
    z[-1] = 0
    return z
