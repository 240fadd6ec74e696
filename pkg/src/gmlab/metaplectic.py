"""SL(2, Z_N) for odd prime N: generator factorizations and unitary models.

Determinant-one 2x2 matrices over Z_N act on phase-space points
z = (k, l).  Each factors into at most four generators

    J            (standard rotation [[0, 1], [-1, 0]])
    Chirp(C)     (lower triangular [[1, 0], [C, 1]])
    Dilate(a)    (diagonal [[a^-1, 0], [0, a]], a invertible)

whose unitary counterparts on C^N are the normalized DFT, a quadratic
chirp multiplier, and an index permutation.  Composing the counterparts in
word order yields a unitary that conjugates every shift pi(z) to a
unimodular multiple of pi(chi z); all identities here are projective
(defined up to a global phase).
"""

from __future__ import annotations

import numpy as np

from .phase_space import GaborSystem, tf_shift_matrix
from .weyl import half_inverse

Token = tuple

J_MAT = np.array([[0, 1], [-1, 0]], dtype=int)


def _as_sympmat(chi) -> np.ndarray:
    chi = np.asarray(chi, dtype=int)
    if chi.shape != (2, 2):
        raise ValueError("symplectic matrix must be 2x2")
    return chi


def require_odd_prime(N: int) -> None:
    if N < 3 or N % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {N}")
    for p in range(3, int(N**0.5) + 1, 2):
        if N % p == 0:
            raise ValueError(f"modulus must be an odd prime, got {N}")


def require_symplectic(chi, N: int) -> np.ndarray:
    """Validate det chi = 1 mod N and return the reduced matrix."""
    chi = _as_sympmat(chi) % N
    det = (chi[0, 0] * chi[1, 1] - chi[0, 1] * chi[1, 0]) % N
    if det != 1:
        raise ValueError(f"determinant {det} != 1 mod {N}: not symplectic")
    return chi


def symp_apply(chi, z, N: int) -> tuple[int, int]:
    """chi . z mod N for a phase-space point z = (k, l)."""
    chi = _as_sympmat(chi)
    k, l = int(z[0]), int(z[1])
    return ((chi[0, 0] * k + chi[0, 1] * l) % N, (chi[1, 0] * k + chi[1, 1] * l) % N)


def symp_inverse(chi, N: int) -> np.ndarray:
    """Inverse of a determinant-one matrix: [[d, -b], [-c, a]] mod N."""
    chi = require_symplectic(chi, N)
    a, b, c, d = chi[0, 0], chi[0, 1], chi[1, 0], chi[1, 1]
    return np.array([[d, -b], [-c, a]], dtype=int) % N


def chirp_mat(C: int) -> np.ndarray:
    return np.array([[1, 0], [C, 1]], dtype=int)


def dilate_mat(a: int, N: int) -> np.ndarray:
    a = a % N
    if a == 0:
        raise ValueError("Dilate(0) is singular")
    return np.array([[pow(a, -1, N), 0], [0, a]], dtype=int) % N


def token_matrix(token: Token, N: int) -> np.ndarray:
    kind = token[0]
    if kind == "J":
        return J_MAT % N
    if kind == "chirp":
        return chirp_mat(int(token[1])) % N
    if kind == "dilate":
        return dilate_mat(int(token[1]), N)
    raise ValueError(f"unknown generator token {token!r}")


def word_matrix(word, N: int) -> np.ndarray:
    """Product of the generator matrices in word order, reduced mod N."""
    out = np.eye(2, dtype=int)
    for token in word:
        out = (out @ token_matrix(token, N)) % N
    return out % N


def factor_generators(chi, N: int) -> list[Token]:
    """Factor a determinant-one matrix into at most four generator tokens.

    If the upper-right entry b is zero the matrix is lower triangular and
    equals Chirp(c d) Dilate(d); otherwise b is invertible (N prime) and

        chi = Chirp(d b^-1) . J . Chirp(a b) . Dilate(b).

    Identity tokens are dropped, so the identity matrix yields the empty
    word.  The product of the returned word equals chi exactly mod N.
    """
    require_odd_prime(N)
    chi = require_symplectic(chi, N)
    a, b, c, d = int(chi[0, 0]), int(chi[0, 1]), int(chi[1, 0]), int(chi[1, 1])
    word: list[Token] = []
    if b % N == 0:
        C = (c * d) % N
        if C:
            word.append(("chirp", C))
        if d % N != 1:
            word.append(("dilate", d % N))
    else:
        binv = pow(b, -1, N)
        C1 = (d * binv) % N
        C2 = (a * b) % N
        if C1:
            word.append(("chirp", C1))
        word.append(("J",))
        if C2:
            word.append(("chirp", C2))
        if b % N != 1:
            word.append(("dilate", b % N))
    return word


def dft_matrix(N: int) -> np.ndarray:
    """Unitary DFT (1/sqrt(N)) exp(-2 pi i x y / N): the operator of J."""
    x = np.arange(N)
    return np.exp(-2j * np.pi * np.outer(x, x) / N) / np.sqrt(N)


def chirp_operator(C: int, N: int) -> np.ndarray:
    """Diagonal chirp exp(2 pi i h C t^2 / N) with h = (N+1)/2."""
    h = half_inverse(N)
    t = np.arange(N)
    return np.diag(np.exp(2j * np.pi * h * C * t * t / N))


def dilate_operator(a: int, N: int) -> np.ndarray:
    """Permutation f(t) -> f(a t mod N); a must be invertible mod N."""
    a = a % N
    if a == 0:
        raise ValueError("Dilate(0) is singular")
    if np.gcd(a, N) != 1:
        raise ValueError(f"dilation factor {a} is not invertible mod {N}")
    t = np.arange(N)
    U = np.zeros((N, N), dtype=complex)
    U[t, (a * t) % N] = 1.0
    return U


def build_metaplectic(word, N: int) -> np.ndarray:
    """Unitary operator of a generator word, composed in word order."""
    require_odd_prime(N)
    U = np.eye(N, dtype=complex)
    for token in word:
        kind = token[0]
        if kind == "J":
            U = U @ dft_matrix(N)
        elif kind == "chirp":
            U = U @ chirp_operator(int(token[1]), N)
        elif kind == "dilate":
            U = U @ dilate_operator(int(token[1]), N)
        else:
            raise ValueError(f"unknown generator token {token!r}")
    return U


def metaplectic_operator(chi, N: int) -> np.ndarray:
    """Unitary of chi via its generator factorization (fixed up to phase)."""
    return build_metaplectic(factor_generators(chi, N), N)


def phase_align(U: np.ndarray, V: np.ndarray) -> complex:
    """Unimodular c maximizing agreement of U with c V (Frobenius sense)."""
    inner = complex(np.trace(V.conj().T @ U))
    if inner == 0:
        return 1.0 + 0j
    return inner / abs(inner)


def intertwine_defect(chi, U: np.ndarray, sys: GaborSystem) -> float:
    """Worst-case deviation of U pi(z) U^-1 from a phase times pi(chi z).

    Sweeps every z in the N x N lattice; for each, the unimodular phase is
    chosen optimally before taking the operator-norm deviation.  U must be
    unitary.
    """
    N = sys.N
    chi = require_symplectic(chi, N)
    U = np.asarray(U, dtype=complex)
    if U.shape != (N, N):
        raise ValueError("operator and Gabor system moduli differ")
    if np.linalg.norm(U.conj().T @ U - np.eye(N), 2) > 1e-8:
        raise ValueError("operator is not unitary")
    Uh = U.conj().T
    worst = 0.0
    for k in range(N):
        for l in range(N):
            conj = U @ tf_shift_matrix((k, l), N) @ Uh
            target = tf_shift_matrix(symp_apply(chi, (k, l), N), N)
            c = phase_align(conj, target)
            worst = max(worst, float(np.linalg.norm(conj - c * target, 2)))
    return worst
