import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relcalc import subspace as sub
from relcalc.errors import DegenerateMobius, PreconditionError, ZetaIsEigenvalue
from relcalc.jacobi import (INFINITY, JacobiModel, adjoint_of_B, beta_tau,
                            cross_validate_extension, delta, extension_parameter_for,
                            jacobi_matrix, j_infinity, j_tau, m_finite, poly_first_kind,
                            poly_second_kind, psi_vector, restricted_B)
from relcalc.relation import adjoint, classify, eta_minus, eta_plus, parts
from relcalc.spectra import eigenvalues

FREE3 = JacobiModel([1, 1], [0, 0, 0], 3)
FREE4 = JacobiModel([1, 1, 1], [0, 0, 0, 0], 4)


def _random_model(rng, N):
    return JacobiModel(rng.uniform(0.3, 2.0, N), rng.uniform(-1, 1, N + 1), N)


def _m_spectral(m, zeta):
    """Weyl function from the eigen-decomposition of J_N."""
    lam, V = np.linalg.eigh(jacobi_matrix(m))
    return np.sum(np.abs(V[0]) ** 2 / (lam - zeta))


def test_model_validation():
    with pytest.raises(ValueError):
        JacobiModel([1, 0], [0, 0, 0], 3)
    with pytest.raises(ValueError):
        JacobiModel([1], [0, 0, 0], 3)
    with pytest.raises(ValueError):
        JacobiModel([], [0], 0)
    with pytest.raises(ValueError):
        restricted_B(JacobiModel([], [0], 1))


def test_free_polynomials():
    z = 0.37 - 1.2j
    assert [poly_first_kind(FREE3, z, k) for k in (1, 2, 3)] == pytest.approx([1, z, z * z - 1])
    assert [poly_second_kind(FREE3, z, k) for k in (1, 2, 3)] == pytest.approx([0, 1, z])


def test_second_kind_is_shifted_first_kind(rng):
    for _ in range(10):
        m = _random_model(rng, 6)
        sh = m.shifted()
        z = complex(*rng.standard_normal(2))
        for k in range(1, 6):
            assert poly_second_kind(m, z, k + 1) == pytest.approx(
                poly_first_kind(sh, z, k) / m.b[0], rel=1e-10)


def test_first_kind_vanishes_at_eigenvalues(rng):
    m = _random_model(rng, 5)
    big = JacobiModel(m.b, m.q, 5)
    lam = np.linalg.eigvalsh(jacobi_matrix(JacobiModel(m.b, m.q, 4)))
    for x in lam:
        assert abs(poly_first_kind(big, x, 5)) < 1e-9


def test_single_site_weyl_function():
    m = JacobiModel([], [0.4], 1)
    z = 0.2 + 0.5j
    assert m_finite(m, z) == pytest.approx(1 / (0.4 - z))


def test_psi_vector_solves_resolvent(rng):
    for _ in range(20):
        m = _random_model(rng, int(rng.integers(2, 8)))
        z = complex(rng.standard_normal(), rng.uniform(0.1, 2))
        psi = psi_vector(m, z)
        res = (jacobi_matrix(m) - z * np.eye(m.N)) @ psi - delta(m.N)
        assert np.linalg.norm(res) <= 1e-10
        assert m_finite(m, z) == pytest.approx(_m_spectral(m, z), rel=1e-10)


def test_herglotz_property(rng):
    for _ in range(100):
        m = _random_model(rng, int(rng.integers(1, 7)))
        z = complex(rng.standard_normal(), rng.uniform(0.01, 3))
        assert m_finite(m, z).imag > 0
        assert m_finite(m, z.conjugate()) == pytest.approx(np.conj(m_finite(m, z)))


def test_psi_vector_at_eigenvalue():
    with pytest.raises(ZetaIsEigenvalue):
        psi_vector(FREE3, np.sqrt(2))


def test_beta_examples():
    assert beta_tau(0, 0.3 + 1j, 0.3 - 1j) == 1
    assert beta_tau(INFINITY, 2j, -2j) == pytest.approx(-1)
    with pytest.raises(DegenerateMobius):
        beta_tau(-1, 0.5, 1.0)
    with pytest.raises(DegenerateMobius):
        beta_tau(INFINITY, 1.0, 0)


@settings(max_examples=60, deadline=None)
@given(st.floats(-5, 5), st.floats(0, 5), st.floats(-3, 3), st.floats(0.01, 3))
def test_beta_in_closed_disk(ts, tt, ms, mt):
    m = complex(ms, mt)
    beta = beta_tau(complex(ts, tt), m, m.conjugate())
    assert abs(beta) <= 1 + 1e-12
    if tt == 0:
        assert abs(beta) == pytest.approx(1)


def test_restricted_relation_indices(rng):
    for N in range(2, 7):
        m = _random_model(rng, N)
        B = restricted_B(m)
        assert (eta_minus(B), eta_plus(B)) == (1, 1)
        assert parts(B).dom.dim == N - 1
        assert classify(B).is_symmetric
        assert adjoint(B).equals(adjoint_of_B(m))


def test_selfadjoint_exactly_for_real_tau(rng):
    m = _random_model(rng, 4)
    for tau in (0, 1.5, -2.0):
        assert classify(j_tau(m, tau)).is_selfadjoint
    for tau in (0.5j, 1 + 2j):
        c = classify(j_tau(m, tau))
        assert c.is_maximal_dissipative and not c.is_symmetric


def test_infinite_endpoint():
    L = j_infinity(FREE4)
    assert classify(L).is_selfadjoint
    p = parts(L)
    assert p.mul.equals(sub.span([delta(4)]))
    assert p.dom.equals(sub.span([delta(4)]).complement())
    rep = eigenvalues(L)
    assert rep.infinite_multiplicity == 1 and len(rep.values) == 3


def test_trace_conservation(rng):
    for _ in range(20):
        m = _random_model(rng, int(rng.integers(2, 7)))
        tau = complex(rng.standard_normal(), rng.uniform(0, 2))
        vals = eigenvalues(j_tau(m, tau)).values
        assert np.sum(vals.imag) == pytest.approx(tau.imag, abs=1e-9)
        assert np.all(vals.imag >= -1e-10)


def test_cross_validation_free_model():
    for tau in (0, 1, -0.5, 1j, 0.3 + 0.7j, INFINITY):
        assert cross_validate_extension(FREE4, tau)
        assert cross_validate_extension(FREE4, tau, zeta=0.4 + 1.5j)


def test_cross_validation_random_models(rng):
    for _ in range(10):
        m = _random_model(rng, int(rng.integers(2, 7)))
        tau = complex(rng.standard_normal(), rng.uniform(0, 2))
        assert cross_validate_extension(m, tau)


def test_parameter_norm_matches_beta():
    P = extension_parameter_for(FREE4, 1j)
    assert abs(P.K[0, 0]) < 1
    P = extension_parameter_for(FREE4, 2.0)
    assert abs(P.K[0, 0]) == pytest.approx(1)


def test_cross_validation_preconditions():
    with pytest.raises(PreconditionError):
        cross_validate_extension(FREE4, -1j)
    with pytest.raises(PreconditionError):
        extension_parameter_for(FREE4, 1j, zeta=-1j)
