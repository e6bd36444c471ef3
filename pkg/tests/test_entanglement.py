import math

import numpy as np
import pytest

from uniparam import (
    DimensionMismatchError,
    DimensionTooLargeError,
    LengthMismatchError,
    NormalizationError,
    OptimizerConfig,
    bopt_objective,
    bound_b,
    bound_x,
    build_unitary,
    distill_objective,
    enumerate_bipartitions,
    kron,
    linear_entropy,
    make_bopt_objective,
    max_concurrence,
    max_distill_x_sq,
    multipartite_bound_b,
    n_copy_state,
    offdiag_positions,
    offdiag_to_matrix,
    optimized_bound_b,
    ppt_min_eigenvalue,
    pure_m_concurrence_sq,
    sigma,
    ucs_block_positions,
)
from helpers import (
    bell_state,
    ghz_state,
    haar_state,
    haar_unitary,
    psi1_qutrit,
    pure_sigma_sum,
    rand_density,
    werner_state,
    wootters_concurrence,
)


def test_linear_entropy_examples():
    psi = haar_state(np.random.default_rng(41), 4)
    assert linear_entropy(np.outer(psi, psi.conj())) < 1e-14
    assert abs(linear_entropy(np.eye(5) / 5) - 1.0) < 1e-14
    assert abs(linear_entropy(np.diag([0.75, 0.25])) - 0.75) < 1e-14


def test_pure_concurrence_examples():
    product = np.zeros(4, dtype=complex)
    product[0] = 1.0
    assert pure_m_concurrence_sq(product, 2, 2) < 1e-14
    assert abs(pure_m_concurrence_sq(psi1_qutrit(), 3, 3) - 4.0 / 3.0) < 1e-14
    assert abs(pure_m_concurrence_sq(bell_state(), 2, 2) - 1.0) < 1e-14


def test_pure_concurrence_errors():
    with pytest.raises(NormalizationError):
        pure_m_concurrence_sq(np.ones(4), 2, 2)
    with pytest.raises(DimensionMismatchError):
        pure_m_concurrence_sq(np.ones(6) / math.sqrt(6), 2, 3)


def test_bound_x_product_state_zero():
    rng = np.random.default_rng(42)
    a, b = haar_state(rng, 3), haar_state(rng, 3)
    rho = np.outer(kron(a[:, None], b[:, None]).ravel(),
                   kron(a[:, None], b[:, None]).ravel().conj())
    for ka, la, kb, lb in ((1, 2, 1, 2), (1, 3, 2, 3), (2, 3, 1, 3)):
        assert bound_x(rho, ka, la, kb, lb) < 1e-12


def test_bound_x_bell_and_mixed():
    psi = bell_state()
    assert abs(bound_x(np.outer(psi, psi.conj()), 1, 2, 1, 2) - 1.0) < 1e-12
    assert bound_x(np.eye(9) / 9, 1, 2, 1, 2) == 0.0
    assert bound_x(np.eye(9) / 9, 2, 3, 1, 3) == 0.0


def test_bound_x_matches_wootters_oracle():
    rng = np.random.default_rng(43)
    eye = np.eye(2, dtype=complex)
    for _ in range(50):
        rho = rand_density(rng, 4)
        assert abs(bound_x(rho, 1, 2, 1, 2, eye, eye) - wootters_concurrence(rho)) < 1e-10


def test_bound_b_pure_states():
    rng = np.random.default_rng(44)
    a, b = haar_state(rng, 2), haar_state(rng, 2)
    product = np.outer(np.kron(a, b), np.kron(a, b).conj())
    assert bound_b(product, 2, 2).b < 1e-9

    psi = psi1_qutrit()
    rep = bound_b(np.outer(psi, psi.conj()), 3, 3)
    assert abs(rep.b_squared - 4.0 / 3.0) < 1e-9
    assert abs(rep.b_squared - sum(x * x for x in rep.terms.values())) < 1e-12
    assert len(rep.terms) == 9


def test_pure_state_collapse_property():
    rng = np.random.default_rng(45)
    for d in (2, 3):
        for _ in range(25):
            psi = haar_state(rng, d * d)
            rho = np.outer(psi, psi.conj())
            b_sq = bound_b(rho, d, d).b_squared
            assert abs(b_sq - pure_m_concurrence_sq(psi, d, d)) < 1e-9
            assert abs(b_sq - pure_sigma_sum(psi, d)) < 1e-9


def test_conjugation_identity():
    rng = np.random.default_rng(46)
    for _ in range(10):
        rho = rand_density(rng, 9)
        u_a, u_b = haar_unitary(rng, 3), haar_unitary(rng, 3)
        big = kron(u_a, u_b)
        rotated = big @ rho @ big.conj().T
        for ka, la, kb, lb in ((1, 2, 1, 2), (2, 3, 1, 3)):
            lhs = bound_x(rotated, ka, la, kb, lb, dims=(3, 3))
            rhs = bound_x(rho, ka, la, kb, lb, u_a, u_b)
            assert abs(lhs - rhs) < 1e-10


def test_bopt_gauge_invariance():
    rng = np.random.default_rng(47)
    for _ in range(5):
        rho = rand_density(rng, 9)
        pa, pb = rng.uniform(0, 2 * math.pi, 6), rng.uniform(0, 2 * math.pi, 6)
        value = bopt_objective(rho, 3, 3, pa, pb)

        lam_a, lam_b = offdiag_to_matrix(pa, 3), offdiag_to_matrix(pb, 3)
        np.fill_diagonal(lam_a, rng.uniform(0, 2 * math.pi, 3))
        np.fill_diagonal(lam_b, rng.uniform(0, 2 * math.pi, 3))
        # built composite products act as the adjoints of the local rotations
        u_a = build_unitary(lam_a).conj().T
        u_b = build_unitary(lam_b).conj().T
        big = kron(u_a, u_b)
        unreduced = -bound_b(big @ rho @ big.conj().T, 3, 3).b_squared
        assert abs(value - unreduced) < 1e-12


def test_bopt_phase_periodicity():
    rng = np.random.default_rng(48)
    rho = rand_density(rng, 9)
    pa, pb = rng.uniform(0, 2 * math.pi, 6), rng.uniform(0, 2 * math.pi, 6)
    base = bopt_objective(rho, 3, 3, pa, pb)
    positions = offdiag_positions(3)
    for idx, (i, j) in enumerate(positions):
        if i > j:  # lower-left phase group
            shifted = pa.copy()
            shifted[idx] += 2 * math.pi
            assert abs(bopt_objective(rho, 3, 3, shifted, pb) - base) < 1e-10


def test_bopt_zero_params_is_identity_bound():
    rng = np.random.default_rng(49)
    rho = rand_density(rng, 9)
    value = bopt_objective(rho, 3, 3, np.zeros(6), np.zeros(6))
    assert abs(value + bound_b(rho, 3, 3).b_squared) < 1e-12


def test_objective_length_validation():
    rho = np.eye(9) / 9
    f = make_bopt_objective(rho, 3, 3)
    with pytest.raises(LengthMismatchError):
        f(np.zeros(5))
    with pytest.raises(LengthMismatchError):
        distill_objective(rho, 3, 3, np.zeros(3), np.zeros(4))


def test_distill_objective_psi1():
    psi = psi1_qutrit()
    rho = np.outer(psi, psi.conj())
    value = distill_objective(rho, 3, 3, np.zeros(4), np.zeros(4))
    oracle = abs(np.vdot(psi, kron(sigma(1, 2, 3), sigma(1, 2, 3)) @ psi.conj())) ** 2
    assert value < 0.0
    assert abs(value + oracle) < 1e-12
    assert abs(oracle - 4.0 / 9.0) < 1e-14


def test_distill_objective_separable_nonnegative():
    rng = np.random.default_rng(50)
    a, b = rand_density(rng, 3), rand_density(rng, 3)
    rho = kron(a, b)
    for _ in range(15):
        v = rng.uniform(0, 2 * math.pi, 8)
        assert distill_objective(rho, 3, 3, v[:4], v[4:]) >= -1e-12


def test_distill_objective_werner():
    for w in (0.5, 0.9):
        rho = werner_state(w)
        value = distill_objective(rho, 2, 2, np.zeros(0), np.zeros(0))
        expected = ((3 * w - 1) / 2) ** 2
        assert abs(value + expected) < 1e-12
    assert distill_objective(werner_state(0.2), 2, 2, np.zeros(0), np.zeros(0)) == 0.0


def test_bopt_interior_noise_state_negative():
    # interior NPT point of the two-state/noise mixing plane: already the
    # identity-rotation bound is positive, so the objective is negative
    from uniparam.cli import fig1_state

    rho = fig1_state(0.4, 0.4)
    assert ppt_min_eigenvalue(rho, (3, 3)) < -1e-10
    assert bopt_objective(rho, 3, 3, np.zeros(6), np.zeros(6)) < -1e-3


def test_ppt_min_eigenvalue():
    rng = np.random.default_rng(51)
    product = kron(rand_density(rng, 2), rand_density(rng, 2))
    assert ppt_min_eigenvalue(product, (2, 2)) > -1e-12

    psi = bell_state()
    assert abs(ppt_min_eigenvalue(np.outer(psi, psi.conj()), (2, 2)) + 0.5) < 1e-13

    psi = psi1_qutrit()
    assert ppt_min_eigenvalue(np.outer(psi, psi.conj()), (3, 3)) < -1e-3


def test_two_qubit_ppt_matches_witness():
    # PPT is necessary and sufficient for separability in 2x2, so the
    # exact term at identity flags exactly the NPT states
    rng = np.random.default_rng(56)
    for _ in range(40):
        rho = rand_density(rng, 4, rank=rng.integers(1, 5))
        npt = ppt_min_eigenvalue(rho, (2, 2)) < -1e-10
        witness = -distill_objective(rho, 2, 2, np.zeros(0), np.zeros(0)) > 1e-8
        assert witness == npt


def test_enumerate_bipartitions():
    assert len(enumerate_bipartitions(2, (2, 3))) == 1
    parts = enumerate_bipartitions(3, (2, 2, 2))
    assert len(parts) == 3
    splits = {(bp.alpha, bp.beta) for bp in parts}
    assert splits == {((0,), (1, 2)), ((0, 1), (2,)), ((0, 2), (1,))}
    assert len(enumerate_bipartitions(4, (2, 2, 2, 2))) == 7


def test_bipartition_invariants():
    dims = (2, 3, 2, 2)
    for bp in enumerate_bipartitions(4, dims):
        assert bp.alpha and bp.beta
        assert not set(bp.alpha) & set(bp.beta)
        assert sorted(bp.alpha + bp.beta) == list(range(4))
        assert bp.d_alpha * bp.d_beta == int(np.prod(dims))
        assert 0 in bp.alpha


def test_multipartite_reduces_to_bipartite():
    rng = np.random.default_rng(52)
    rho = rand_density(rng, 9)
    multi = multipartite_bound_b(rho, (3, 3))
    direct = bound_b(rho, 3, 3)
    assert abs(multi.b - direct.b) < 1e-14
    assert len(multi.parts) == 1


def test_multipartite_ghz_and_product():
    psi = ghz_state()
    report = multipartite_bound_b(np.outer(psi, psi.conj()), (2, 2, 2))
    assert report.b > 0.5
    values = [rep.b_squared for _, rep in report.parts]
    assert max(values) - min(values) < 1e-10

    rng = np.random.default_rng(53)
    product = kron(kron(rand_density(rng, 2), rand_density(rng, 2)), rand_density(rng, 2))
    assert multipartite_bound_b(product, (2, 2, 2)).b < 1e-9


def test_n_copy_state():
    rng = np.random.default_rng(54)
    rho = rand_density(rng, 4)
    assert np.array_equal(n_copy_state(rho, (2, 2), 1), rho)

    a, b = rand_density(rng, 2), rand_density(rng, 2)
    product = kron(a, b)
    two = n_copy_state(product, (2, 2), 2)
    assert np.max(np.abs(two - kron(kron(a, a), kron(b, b)))) < 1e-14

    two = n_copy_state(rho, (2, 2), 2)
    assert abs(np.trace(two) - 1.0) < 1e-12
    w1 = np.sort(np.linalg.eigvalsh(rho))
    w2 = np.sort(np.linalg.eigvalsh(two))
    assert np.max(np.abs(w2 - np.sort(np.outer(w1, w1).ravel()))) < 1e-12

    with pytest.raises(DimensionTooLargeError):
        n_copy_state(rho, (2, 2), 5)


def test_optimized_bound_never_below_plain():
    rng = np.random.default_rng(55)
    rho = rand_density(rng, 4)
    cfg = OptimizerConfig(max_iterations=400, restarts=3, seed=1)
    b_opt, result = optimized_bound_b(rho, 2, 2, cfg)
    assert b_opt >= bound_b(rho, 2, 2).b - 1e-9
    assert result.restarts == 3


def test_max_distill_werner():
    x_sq, result = max_distill_x_sq(werner_state(0.9), 2, 2)
    assert abs(x_sq - ((3 * 0.9 - 1) / 2) ** 2) < 1e-12
    assert result.iterations == 0

    x_sq, _ = max_distill_x_sq(werner_state(0.2), 2, 2)
    assert x_sq == 0.0


def test_packing_counts():
    assert len(offdiag_positions(3)) == 6
    assert len(ucs_block_positions(5, 2)) == 4 * 5 - 8
    assert ucs_block_positions(4, 2) == [(0, 2), (0, 3), (1, 2), (1, 3),
                                         (2, 0), (2, 1), (3, 0), (3, 1)]


def test_normalization_constant():
    assert abs(max_concurrence(3) - 2.0 / math.sqrt(3.0)) < 1e-15
    assert abs(max_concurrence(2) - 1.0) < 1e-15
