"""Finite-dimensional de Branges spaces generated by polynomial Hermite-Biehler functions.

For ``e`` of degree ``n`` with all zeros in the open lower half-plane, the
space ``B(e)`` consists of the polynomials of degree ``< n`` and has the
reproducing kernel

    k(z, w) = (e#(z) e(conj w) - e(z) e#(conj w)) / (2 pi i (z - conj w)).

The kernel is stored as a coefficient matrix ``K`` with
``k(z, w) = sum_ab z^a conj(w)^b K[a, b]``; the Gram matrix of the monomial
basis is ``M = K^{-1}``.  Writing ``K = L L^*`` (Cholesky) and ``R = L^{-1}``,
the map ``c -> R c`` sends monomial coefficients to coordinates in which the
space inner product is the standard one, so relations can be built with the
generic tools.

Polynomials are coefficient arrays in ascending order throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.polynomial.polynomial as P
import scipy.linalg

from . import subspace as sub
from .errors import (DegenerateKernel, KernelNotPositive, LambdaNotARoot, NumericalFailure,
                     RootInUpperHalfPlaneOrReal, TauOutsideDisk, WNotInUpperHalfPlane)
from .relation import direct_sum, from_blocks
from .spectra import _cluster

__all__ = ['HermiteBiehlerPoly', 'DeBrangesModel', 'build_model', 'kernel', 'kernel_coeffs',
           'inner', 'norm', 'sharp', 'to_orthonormal', 'from_orthonormal', 'mult_relation',
           'kernel_extension', 's_tau', 'phi_tau', 'spectrum_via_phi', 'eigenfunction',
           'normalized_hb', 'polyroots_refined', 'MAX_DEGREE']

MAX_DEGREE = 12
# condition number of K beyond which the Gram matrix is not trusted
_COND_LIMIT = 1e12


def _powers(z, n):
    return complex(z) ** np.arange(n)


def sharp(c):
    """Coefficients of ``f#(z) = conj(f(conj z))``."""
    return np.conj(np.asarray(c, dtype=complex))


@dataclass(frozen=True, eq=False)
class HermiteBiehlerPoly:
    """``e(z) = lead * prod_j (z - w_j)`` with every ``w_j`` in the open lower half-plane.

    ``lead`` defaults to 1 (monic); normalized functions built from a kernel
    carry a general complex leading coefficient.
    """
    roots: tuple
    lead: complex = 1.0
    coeffs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        roots = tuple(complex(r) for r in np.asarray(self.roots, dtype=complex).ravel())
        if not roots:
            raise ValueError('a Hermite-Biehler polynomial needs at least one root')
        bad = [r for r in roots if not (np.isfinite(r) and r.imag < 0)]
        if bad:
            raise RootInUpperHalfPlaneOrReal(f'roots must satisfy Im w < 0, got {bad}')
        lead = complex(self.lead)
        if lead == 0 or not np.isfinite(lead):
            raise ValueError('leading coefficient must be finite and nonzero')
        c = lead * P.polyfromroots(roots).astype(complex)
        c.setflags(write=False)
        object.__setattr__(self, 'roots', roots)
        object.__setattr__(self, 'lead', lead)
        object.__setattr__(self, 'coeffs', c)
        self._check_hb()

    @property
    def degree(self):
        return len(self.roots)

    @property
    def sharp_coeffs(self):
        return sharp(self.coeffs)

    def __call__(self, z):
        return P.polyval(z, self.coeffs)

    def sharp(self, z):
        return P.polyval(z, self.sharp_coeffs)

    def _check_hb(self, samples=50):
        rng = np.random.default_rng(12345)
        scale = max(1.0, max(abs(r) for r in self.roots))
        z = scale * (rng.standard_normal(samples) + 1j * rng.exponential(1.0, samples))
        if not np.all(np.abs(self(z)) > np.abs(self.sharp(z))):
            raise RootInUpperHalfPlaneOrReal('|e(z)| > |e#(z)| fails on the upper half-plane')


@dataclass(frozen=True, eq=False)
class DeBrangesModel:
    """Kernel, Gram matrix and orthonormal-coordinate factors of ``B(e)``.

    Attributes
    ----------
    e : HermiteBiehlerPoly
    K : ndarray
        Kernel coefficients, Hermitian positive definite.
    M : ndarray
        Gram matrix of the monomials ``1, z, ..., z^{n-1}``; ``M = K^{-1}``.
    R : ndarray
        ``L^{-1}`` for the Cholesky factor ``K = L L^*``; ``M = R^* R``.
    L : ndarray
        Inverse of ``R``.
    """
    e: HermiteBiehlerPoly
    K: np.ndarray
    M: np.ndarray
    R: np.ndarray
    L: np.ndarray
    tol: sub.ToleranceProfile = sub.DEFAULT_TOL

    @property
    def n(self):
        return self.K.shape[0]


def _kernel_matrix(e):
    """Divide ``e#(z) e(s) - e(z) e#(s)`` by ``z - s`` and return the quotient coefficients."""
    a = e.coeffs
    a_sh = e.sharp_coeffs
    n = e.degree
    # numerator as a polynomial in z whose coefficients are polynomials in s
    N = np.outer(a_sh, a) - np.outer(a, a_sh)
    # Horner division in z by (z - s): Q_{n-1} = N_n, Q_{j-1} = N_j + s Q_j
    Q = np.zeros((n, n + 1), dtype=complex)
    Q[n - 1] = N[n]
    for j in range(n - 1, 0, -1):
        Q[j - 1] = N[j] + np.concatenate([[0], Q[j][:-1]])
    rem = N[0] + np.concatenate([[0], Q[0][:-1]])
    scale = max(1.0, np.abs(N).max())
    if np.abs(rem).max() > 1e-9 * scale or np.abs(Q[:, n]).max() > 1e-9 * scale:
        raise NumericalFailure('kernel numerator is not divisible by (z - conj w)')
    return Q[:, :n] / (2j * np.pi)


def build_model(roots, lead=1.0, tol=sub.DEFAULT_TOL, max_degree=MAX_DEGREE):
    """Model of ``B(e)`` for ``e = lead * prod (z - w_j)``.

    ``roots`` may also be a :class:`HermiteBiehlerPoly`.
    """
    e = roots if isinstance(roots, HermiteBiehlerPoly) else HermiteBiehlerPoly(roots, lead)
    if e.degree > max_degree:
        raise ValueError(f'degree {e.degree} exceeds the cap {max_degree}')
    K = _kernel_matrix(e)
    K = (K + K.conj().T) / 2
    try:
        Lc = np.linalg.cholesky(K)
    except np.linalg.LinAlgError:
        raise KernelNotPositive('kernel matrix is not positive definite') from None
    cond = np.linalg.cond(K)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise KernelNotPositive(f'kernel matrix condition number {cond:.3g} is too large')
    R = scipy.linalg.solve_triangular(Lc, np.eye(e.degree), lower=True)
    M = R.conj().T @ R
    return DeBrangesModel(e, K, M, R, Lc, tol)


def kernel_coeffs(model, w):
    """Coefficients of ``k(., w)``."""
    return model.K @ np.conj(_powers(w, model.n))


def kernel(model, z, w):
    return complex(_powers(z, model.n) @ kernel_coeffs(model, w))


def inner(model, cf, cg):
    """``<f, g>`` (conjugate-linear in ``f``)."""
    return complex(np.conj(cf) @ model.M @ np.asarray(cg, dtype=complex))


def norm(model, c):
    return float(np.sqrt(max(inner(model, c, c).real, 0.0)))


def to_orthonormal(model, c):
    return model.R @ np.asarray(c, dtype=complex)


def from_orthonormal(model, y):
    return model.L @ np.asarray(y, dtype=complex)


def mult_relation(model):
    """Multiplication by ``z`` on polynomials of degree ``<= n - 2``, in orthonormal coordinates."""
    n = model.n
    R = model.R
    if n == 1:
        return from_blocks(np.zeros((1, 0)), np.zeros((1, 0)), model.tol)
    return from_blocks(R[:, :n - 1], R[:, 1:], model.tol)


def _check_w(w):
    w = complex(w)
    if not w.imag > 0:
        raise WNotInUpperHalfPlane(f'w = {w} must lie in the open upper half-plane')
    return w


def kernel_extension(model, t, w):
    """``S (+) span{(t k_w - k_{conj w}, t conj(w) k_w - w k_{conj w})}``.

    This is the literal formula with the kernel of the model's own ``e``;
    see :func:`s_tau` for the normalized parameterization.
    """
    w = _check_w(w)
    t = complex(t)
    kw, kwb = kernel_coeffs(model, w), kernel_coeffs(model, w.conjugate())
    f = t * kw - kwb
    g = t * w.conjugate() * kw - w * kwb
    extra = from_blocks(to_orthonormal(model, f)[:, None], to_orthonormal(model, g)[:, None],
                        model.tol)
    return direct_sum(mult_relation(model), extra)


def _tau_to_t(model, tau, w):
    """Parameter of :func:`kernel_extension` at ``w`` giving the spectrum of ``tau e - e#``."""
    ew, esw = model.e(w), model.e.sharp(w)
    return (tau * ew - esw) / (tau * np.conj(esw) - np.conj(ew))


def _check_tau(model, tau):
    tau = complex(tau)
    if abs(tau) > 1 + model.tol.psd_abs:
        raise TauOutsideDisk(f'|tau| = {abs(tau):.6g} > 1')
    return tau


def s_tau(model, tau, w=1j):
    """Extension of the multiplication operator whose spectrum is the zero set of ``phi_tau``.

    The one-dimensional summand is the kernel pair at ``w``, with its
    parameter transported from ``tau`` so that the result does not depend on
    ``w``.  Closed and maximal dissipative for ``|tau| <= 1``; selfadjoint for
    ``|tau| = 1``.
    """
    tau = _check_tau(model, tau)
    w = _check_w(w)
    return kernel_extension(model, _tau_to_t(model, tau, w), w)


def phi_tau(model, tau):
    """Coefficients of ``tau e - e#`` (length ``n + 1``)."""
    tau = complex(tau)
    return tau * model.e.coeffs - model.e.sharp_coeffs


def _trim(c, rel):
    c = np.asarray(c, dtype=complex)
    scale = np.abs(c).max()
    k = len(c)
    while k > 1 and abs(c[k - 1]) <= rel * scale:
        k -= 1
    return c[:k]


def polyroots_refined(c, tol=sub.DEFAULT_TOL, newton_steps=3):
    """Roots of an ascending coefficient vector via the companion matrix plus Newton steps.

    Leading coefficients below ``eq_tol`` relative to the largest one are
    dropped; roots within ``10 eq_tol`` of each other are merged to their mean
    (keeping multiplicity).
    """
    c = _trim(c, tol.eq_tol)
    if len(c) < 2:
        return np.zeros(0, dtype=complex)
    roots = P.polyroots(c).astype(complex)
    dc = P.polyder(c)
    for i, r in enumerate(roots):
        for _ in range(newton_steps):
            d = P.polyval(r, dc)
            if abs(d) <= 1e-300:
                break
            step = P.polyval(r, c) / d
            if not np.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(r)):
                break
            r = r - step
        roots[i] = r
    out = []
    for group in _cluster(list(roots), 10 * tol.eq_tol):
        out.extend([complex(np.mean(group))] * len(group))
    return np.array(out, dtype=complex)


def spectrum_via_phi(model, tau):
    """Zeros of ``phi_tau`` with ``Im >= -psd_abs``, sorted by real then imaginary part."""
    tau = _check_tau(model, tau)
    r = polyroots_refined(phi_tau(model, tau), model.tol)
    r = r[r.imag >= -model.tol.psd_abs]
    return sorted(r.tolist(), key=lambda z: (z.real, z.imag))


def eigenfunction(model, tau, lam, check=True):
    """``phi_tau(z) / (z - lam)`` in monomial coefficients (length ``n``).

    With ``check``, the pair ``(h, lam h)`` is confirmed to lie in ``s_tau``.
    """
    tau = _check_tau(model, tau)
    lam = complex(lam)
    c = phi_tau(model, tau)
    value = P.polyval(lam, c)
    scale = np.abs(c) @ (abs(lam) ** np.arange(len(c)))
    if abs(value) > model.tol.eq_tol * max(scale, 1e-300):
        raise LambdaNotARoot(f'phi_tau({lam}) = {value} is not zero')
    # synthetic division by (z - lam), dropping the remainder
    n = len(c) - 1
    h = np.zeros(n, dtype=complex)
    h[n - 1] = c[n]
    for j in range(n - 1, 0, -1):
        h[j - 1] = c[j] + lam * h[j]
    if check:
        S = s_tau(model, tau)
        y = to_orthonormal(model, h)
        if not S.has_pair(y, lam * y):
            raise NumericalFailure(f'(h, {lam} h) is not in S_tau')
    return h


def normalized_hb(model, w0):
    """``pi (z - conj w0) k(z, w0) / (Im w0 k(w0, w0))`` as a Hermite-Biehler polynomial."""
    w0 = _check_w(w0)
    kap = kernel_coeffs(model, w0)
    if abs(kap[-1]) <= model.tol.eq_tol * np.abs(kap).max():
        raise DegenerateKernel(f'k(., {w0}) has degree below {model.n - 1}')
    kww = kernel(model, w0, w0).real
    c = np.pi / (w0.imag * kww)
    coeffs = c * P.polymul([-w0.conjugate(), 1], kap)
    roots = polyroots_refined(coeffs, model.tol)
    return HermiteBiehlerPoly(roots, coeffs[-1])
