"""Cayley and Z transforms of relations.

Both are linear changes of pair coordinates, so nothing is ever divided:

    cayley(T, z)    = {(g - conj(z) f, g - z f)}
    z_transform(T, z) = conj(z) * cayley(T, z) = {(g - conj(z) f, conj(z) g - |z|^2 f)}

For nonreal ``z`` the coordinate change is invertible and ``z_transform`` is an
involution.  For ``|z| = 1`` in the upper half-plane it maps dissipative
relations onto contractions and symmetric ones onto isometries.
"""
from __future__ import annotations

from .relation import _map_blocks, scale

__all__ = ['cayley', 'z_transform', 'z_transform_scaled']


def cayley(T, zeta):
    zc = complex(zeta).conjugate()
    return _map_blocks(T, -zc, 1, -zeta, 1)


def z_transform(T, zeta):
    zeta = complex(zeta)
    zc = zeta.conjugate()
    return _map_blocks(T, -zc, 1, -zc * zeta, zc)


def z_transform_scaled(T, zeta):
    """``Z_{zeta/|zeta|}(|zeta|^{-1} T)``, the normalization used to reduce
    extension problems at a general nonreal point to the unit circle."""
    r = abs(zeta)
    return z_transform(scale(1 / r, T), zeta / r)
