import numpy as np
import pytest

import relcalc.debranges as dbr
from relcalc import subspace as sub
from relcalc.errors import (AlphaNotQuasiRegular, DomainNotInDeficiencySpace, JoinNotContractive,
                            NotAContraction, NotAnExtension, NotDissipative, NotOrthogonal,
                            NotSymmetric)
from relcalc.extensions import (ExtensionParameter, contractive_join, defect_kernel, eta_e,
                                extend_by_contraction, extension_parameter, index_budget,
                                maximal_dissipative_extension, selfadjoint_extension_at,
                                von_neumann_decompose)
from relcalc.jacobi import JacobiModel, j_tau, restricted_B
from relcalc.relation import (adjoint, classify, deficiency_index, deficiency_space, from_blocks,
                              graph, parts, zero_relation)
from relcalc.spectra import eigenvalues, kernel_basis

from generators import (cvec, hermitian, random_contraction, random_nondissipative,
                        random_symmetric, unitary)

FREE4 = JacobiModel([1, 1, 1], [0, 0, 0, 0], 4)


def _params(rng, A, zeta, kind='contraction', q=None):
    Dk, Ek = defect_kernel(A, zeta), defect_kernel(A, np.conj(zeta))
    q = Dk.dim if q is None else q
    D = Dk.basis @ unitary(rng, Dk.dim)[:, :q]
    if kind == 'contraction':
        K = cvec(rng, Ek.dim, q)
        K *= rng.uniform(0.1, 0.99) / np.linalg.norm(K, 2)
    elif kind == 'zero':
        K = np.zeros((Ek.dim, q))
    else:
        K = unitary(rng, Ek.dim)[:, :q]
    return ExtensionParameter(zeta, K, D, Ek.basis)


def test_decompose_selfadjoint_graph(rng):
    A = graph(hermitian(rng, 4))
    dec = von_neumann_decompose(A)
    assert dec.N_minus.dim == dec.N_plus.dim == 0
    assert dec.total().equals(adjoint(A))


def test_decompose_restricted_jacobi():
    B = restricted_B(FREE4)
    dec = von_neumann_decompose(B, 1j)
    assert dec.N_minus.dim == dec.N_plus.dim == 1
    assert adjoint(B).dim == B.dim + 2 and dec.is_orthogonal


def test_decompose_multiplication_relation():
    model = dbr.build_model([-1j, -2j + 0.5, -0.7j - 1])
    S = dbr.mult_relation(model)
    w = 0.3 + 1.1j
    dec = von_neumann_decompose(S, w)
    k = dbr.to_orthonormal(model, dbr.kernel_coeffs(model, w))
    expected = from_blocks(k[:, None], np.conj(w) * k[:, None])
    assert dec.N_minus.equals(expected)


def test_decompose_general_point_not_orthogonal(rng):
    A = restricted_B(FREE4)
    dec = von_neumann_decompose(A, 0.5 + 2j)
    assert dec.total().equals(adjoint(A))
    assert not dec.is_orthogonal


def test_decompose_rejects_nonsymmetric(rng):
    with pytest.raises(NotSymmetric):
        von_neumann_decompose(random_nondissipative(rng))


def test_zero_contraction_gives_maximal_extension(rng):
    A = random_symmetric(rng, n=5)
    P = _params(rng, A, 1j, 'zero')
    A_hat = extend_by_contraction(A, P)
    assert A_hat.equals(maximal_dissipative_extension(A, 1j))
    assert classify(A_hat).is_maximal_dissipative


def test_restricted_jacobi_recovers_perturbation():
    B = restricted_B(FREE4)
    tau = 0.5 + 0.8j
    P = extension_parameter(B, j_tau(FREE4, tau), 1j)
    assert P.K.shape == (1, 1) and abs(P.K[0, 0]) < 1
    assert extend_by_contraction(B, P).equals(j_tau(FREE4, tau))


def test_unitary_parameter_gives_selfadjoint(rng):
    for _ in range(10):
        A = random_symmetric(rng)
        A_hat = extend_by_contraction(A, _params(rng, A, 1j, 'unitary'))
        assert A_hat.equals(adjoint(A_hat))


def test_isometric_parameter_keeps_index_identity(rng):
    for _ in range(10):
        A = random_symmetric(rng, n=6)
        q = max(1, defect_kernel(A, 1j).dim - 1)
        A_hat = extend_by_contraction(A, _params(rng, A, 1j, 'isometric', q=q))
        assert classify(A_hat).is_symmetric
        k = A_hat.dim - A.dim
        assert deficiency_index(A, 1j) == deficiency_index(A_hat, 1j) + k
        assert deficiency_index(A, -1j) == deficiency_index(A_hat, -1j) + k


def test_extension_lies_between_A_and_adjoint(rng):
    for _ in range(10):
        A = random_symmetric(rng)
        zeta = complex(rng.standard_normal(), rng.uniform(0.2, 2))
        A_hat = extend_by_contraction(A, _params(rng, A, zeta))
        assert A_hat.contains(A) and adjoint(A).contains(A_hat)
        assert classify(A_hat).is_dissipative


def test_added_summand_orthogonal_at_i(rng):
    for _ in range(10):
        A = random_symmetric(rng, n=6)
        P = _params(rng, A, 1j)
        c = cvec(rng, P.D_basis.shape[1], 3)
        v, w = P.D_basis @ c, P.operator() @ P.D_basis @ c
        added = np.vstack([1j * w - v, w - 1j * v])
        assert np.abs(A.space.basis.conj().T @ added).max() < 1e-10
        assert extend_by_contraction(A, P).has_pair(added[:6, 0], added[6:, 0])


def test_distinct_parameters_give_distinct_extensions(rng):
    for _ in range(10):
        A = random_symmetric(rng, n=5)
        P1, P2 = _params(rng, A, 1j), _params(rng, A, 1j)
        P2 = ExtensionParameter(1j, P2.K, P1.D_basis, P1.target_basis)
        d = sub.distance(extend_by_contraction(A, P1).space, extend_by_contraction(A, P2).space)
        assert d > 1e-8


def test_trivial_extension_recovers_empty_parameter(rng):
    A = random_symmetric(rng)
    P = extension_parameter(A, A)
    assert P.D_basis.shape[1] == 0 and P.K.shape[1] == 0
    assert extend_by_contraction(A, P).equals(A)


def test_selfadjoint_extension_parameter_is_unimodular():
    B = restricted_B(FREE4)
    L = j_tau(FREE4, 0.7)
    assert abs(extension_parameter(B, L).K[0, 0]) == pytest.approx(1)


def test_round_trip_general_zeta(rng):
    for _ in range(20):
        A = random_symmetric(rng)
        zeta = complex(rng.standard_normal(), rng.uniform(0.2, 3))
        A_hat = extend_by_contraction(A, _params(rng, A, zeta))
        rec = extension_parameter(A, A_hat, zeta)
        assert extend_by_contraction(A, rec).equals(A_hat)


def test_builder_errors(rng):
    A = random_symmetric(rng, n=5)
    P = _params(rng, A, 1j)
    with pytest.raises(NotAContraction):
        extend_by_contraction(A, ExtensionParameter(1j, 2 * P.K / np.linalg.norm(P.K, 2),
                                                    P.D_basis, P.target_basis))
    bad = defect_kernel(A, -1j).basis[:, :1]
    if not sub.member(bad[:, 0], defect_kernel(A, 1j)):
        with pytest.raises(DomainNotInDeficiencySpace):
            extend_by_contraction(A, ExtensionParameter(1j, P.K[:, :1], bad, P.target_basis))
    with pytest.raises(NotSymmetric):
        extend_by_contraction(random_nondissipative(rng, n=5), P)


def test_recover_errors(rng):
    A = random_symmetric(rng, n=5)
    with pytest.raises(NotAnExtension):
        extension_parameter(A, zero_relation(5))
    nd = from_blocks(np.hstack([A.F, -1j * np.eye(5)[:, :1]]), np.hstack([A.G, np.eye(5)[:, :1]]))
    if nd.contains(A) and not classify(nd).is_dissipative:
        with pytest.raises(NotDissipative):
            extension_parameter(A, nd)


def test_maximal_extension_examples(rng):
    H = graph(hermitian(rng, 4))
    assert maximal_dissipative_extension(H).equals(H)
    model = dbr.build_model([-1j, -0.5 - 2j, 1 - 1j])
    S = dbr.mult_relation(model)
    zeta = 0.4 + 0.9j
    L = maximal_dissipative_extension(S, zeta)
    assert kernel_basis(L, zeta).dim == 1
    assert deficiency_space(L, zeta).dim == deficiency_index(S, -1j)


def test_selfadjoint_extension_at_real_point():
    B = restricted_B(FREE4)
    L = selfadjoint_extension_at(B, 0.3)
    assert classify(L).is_selfadjoint
    assert kernel_basis(L, 0.3).dim == 1
    assert any(abs(z - 0.3) < 1e-9 for z in eigenvalues(L).values)


def test_selfadjoint_extension_rejects_eigenvalue():
    e1 = np.array([1.0, 0, 0])
    A = from_blocks(e1[:, None], 2 * e1[:, None])
    with pytest.raises(AlphaNotQuasiRegular):
        selfadjoint_extension_at(A, 2.0)


def test_contractive_join_examples(rng):
    n = 4
    U = unitary(rng, n)
    V = from_blocks(np.eye(n)[:, :2], U[:, :2])
    W = from_blocks(np.eye(n)[:, 2:], np.zeros((n, 2)))
    J = contractive_join(V, W)
    assert classify(J).is_contraction and J.dim == 4
    W2 = from_blocks(np.eye(n)[:, 2:], U[:, 2:])
    assert classify(contractive_join(V, W2)).is_unitary


def test_contractive_join_errors():
    e = np.eye(3)
    V = from_blocks(e[:, :1], e[:, :1])
    W = from_blocks(e[:, :1] + e[:, 1:2], 0.1 * e[:, 2:3])
    with pytest.raises(NotOrthogonal):
        contractive_join(V, W)
    with pytest.raises(NotAContraction):
        contractive_join(V, from_blocks(e[:, 1:2], 2 * e[:, 2:3]))
    # orthogonal in C^6 and each a contraction, but (-e2, 2 e1) lies in the join
    W = from_blocks(e[:, :1] + e[:, 1:2], -e[:, :1])
    with pytest.raises(JoinNotContractive) as info:
        contractive_join(V, W)
    f, g = info.value.witness
    assert np.linalg.norm(g) > np.linalg.norm(f)


def test_join_of_orthogonal_operators():
    e = np.eye(3)
    V = from_blocks(e[:, :1], e[:, 1:2])
    W = from_blocks(e[:, 1:2], -0.9 * e[:, :1])
    assert classify(contractive_join(V, W)).is_contraction


def test_eta_e(rng):
    U = unitary(rng, 4)
    assert eta_e(graph(U)) == 0
    for _ in range(10):
        V = random_contraction(rng)
        assert eta_e(V) == V.n - parts(V).dom.dim
    with pytest.raises(NotAContraction):
        eta_e(graph(2 * np.eye(2)))


def test_index_budget_examples():
    B = restricted_B(FREE4)
    assert tuple(index_budget(B, j_tau(FREE4, 1j))) == (1, 0, 1)
    assert tuple(index_budget(B, B)) == (1, 1, 0)
    with pytest.raises(NotAnExtension):
        index_budget(j_tau(FREE4, 1j), B)
