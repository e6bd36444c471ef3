"""Shared state constructors and independent oracles for the tests."""

import numpy as np

SQ2 = np.sqrt(2.0)


def haar_state(rng, n):
    """Random pure state: normalized complex normal vector."""
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return psi / np.linalg.norm(psi)


def haar_unitary(rng, d):
    """Random unitary via QR of a complex normal matrix, phases fixed."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rand_density(rng, d, rank=None):
    """Random density matrix of the given (numerical) rank."""
    rank = d if rank is None else rank
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def rand_hermitian(rng, d):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = a + a.conj().T
    return h / np.max(np.abs(h))


def bell_state():
    """(|00> + |11>)/sqrt(2)."""
    psi = np.zeros(4, dtype=complex)
    psi[[0, 3]] = 1.0 / SQ2
    return psi


def ghz_state():
    """Three-qubit (|000> + |111>)/sqrt(2)."""
    psi = np.zeros(8, dtype=complex)
    psi[[0, 7]] = 1.0 / SQ2
    return psi


def psi1_qutrit():
    """(|11> + |22> + |33>)/sqrt(3) in 1-based ket labels."""
    psi = np.zeros(9, dtype=complex)
    psi[[0, 4, 8]] = 1.0 / np.sqrt(3.0)
    return psi


def werner_state(w):
    """w |Phi+><Phi+| + (1 - w) I/4."""
    psi = bell_state()
    return w * np.outer(psi, psi.conj()) + (1.0 - w) * np.eye(4) / 4.0


def wootters_concurrence(rho):
    """Independent two-qubit concurrence oracle.

    Uses the spin-flip construction rho (sy x sy) rho^* (sy x sy) with a
    general (non-Hermitian) eigensolver, deliberately not sharing any code
    with the library path.
    """
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    syy = np.kron(sy, sy)
    r = rho @ syy @ rho.conj() @ syy
    x = np.sort(np.sqrt(np.abs(np.real(np.linalg.eigvals(r)))))[::-1]
    return max(0.0, x[0] - x[1] - x[2] - x[3])


def expi_hermitian(h, angle):
    """exp(i * h * angle) through an explicit eigendecomposition."""
    from uniparam import herm_eig

    w, v = herm_eig(h)
    return (v * np.exp(1j * w * angle)) @ v.conj().T


def ptrace_loops(rho, d_a, d_b, keep_a=True):
    """Partial trace by explicit index contraction (oracle path)."""
    t = rho.reshape(d_a, d_b, d_a, d_b)
    if keep_a:
        out = np.zeros((d_a, d_a), dtype=complex)
        for i in range(d_a):
            for j in range(d_a):
                for k in range(d_b):
                    out[i, j] += t[i, k, j, k]
    else:
        out = np.zeros((d_b, d_b), dtype=complex)
        for i in range(d_b):
            for j in range(d_b):
                for k in range(d_a):
                    out[i, j] += t[k, i, k, j]
    return out


def pure_sigma_sum(psi, d):
    """Direct generator-pair sum for a pure d x d state (oracle path)."""
    from uniparam import kron, sigma

    total = 0.0
    for ka in range(1, d):
        for la in range(ka + 1, d + 1):
            for kb in range(1, d):
                for lb in range(kb + 1, d + 1):
                    m = kron(sigma(ka, la, d), sigma(kb, lb, d))
                    total += abs(np.vdot(psi, m @ psi.conj())) ** 2
    return total
