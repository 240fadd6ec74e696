"""Discrete Wigner distribution, Weyl quantization, and Gabor matrices on Z_N.

Conventions (N odd, h = (N+1)/2 the inverse of 2 mod N):

    W(f, g)(x, xi) = sum_t f(x + h t) conj(g(x - h t)) exp(-2 pi i xi t / N)

    Op(sigma) has kernel K(x, y) = (1/N) sum_xi sigma(h (x+y), xi)
                                   exp(2 pi i xi (x - y) / N)

These two are dual:  <Op(sigma) f, g> = (1/N) sum sigma . conj(W(g, f))
holds exactly, and quantization is a linear bijection between N x N
symbols and N x N operator matrices, inverted by `weyl_dequantize`.
"""

from __future__ import annotations

import numpy as np

from ._lattice import lattice_qnorm
from .phase_space import GaborSystem, gaussian_window, shift_bank
from .seq_algebra import QParams


def half_inverse(N: int) -> int:
    """(N+1)/2, the multiplicative inverse of 2 mod N; N must be odd."""
    if N % 2 == 0:
        raise ValueError("modulus must be odd so that 2 is invertible")
    return (N + 1) // 2


def wigner(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Cross-Wigner distribution W(f, g) as an (N, N) field indexed (x, xi)."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if f.shape != g.shape:
        raise ValueError("signal moduli differ")
    N = f.shape[0]
    h = half_inverse(N)
    x = np.arange(N)[:, None]
    t = np.arange(N)[None, :]
    rows = f[(x + h * t) % N] * np.conj(g[(x - h * t) % N])
    return np.fft.fft(rows, axis=1)


def weyl_quantize(sigma: np.ndarray) -> np.ndarray:
    """Operator matrix of the symbol sigma (N x N field indexed (x, xi))."""
    sigma = np.asarray(sigma, dtype=complex)
    N = sigma.shape[0]
    if sigma.shape != (N, N):
        raise ValueError("symbol must be a square field")
    h = half_inverse(N)
    # C[a, d] = (1/N) sum_xi sigma[a, xi] e^{2 pi i xi d / N}
    C = np.fft.ifft(sigma, axis=1)
    x = np.arange(N)[:, None]
    y = np.arange(N)[None, :]
    return C[(h * (x + y)) % N, (x - y) % N]


def weyl_dequantize(T: np.ndarray) -> np.ndarray:
    """Exact inverse of `weyl_quantize`; recovers the symbol of a matrix."""
    T = np.asarray(T, dtype=complex)
    N = T.shape[0]
    if T.shape != (N, N):
        raise ValueError("operator matrix must be square")
    h = half_inverse(N)
    a = np.arange(N)[:, None]
    d = np.arange(N)[None, :]
    G = T[(a + h * d) % N, (a - h * d) % N]
    return np.fft.fft(G, axis=1)


def duality_pairing(sigma: np.ndarray, f: np.ndarray, g: np.ndarray) -> complex:
    """(1/N) sum sigma . conj(W(g, f)); equals <Op(sigma) f, g> exactly."""
    N = sigma.shape[0]
    return complex(np.sum(sigma * np.conj(wigner(g, f))) / N)


def gabor_matrix(T: np.ndarray, sys: GaborSystem) -> np.ndarray:
    """Matrix of T in the Gabor coordinates of the Parseval window.

    Entry (mu, lambda) = <T pi(lambda) gamma, pi(mu) gamma> with row/column
    index (k, l) flattened as k*N + l.  For a Parseval system this matrix
    intertwines T with the lattice STFT: V(T f) = M V(f).
    """
    T = np.asarray(T, dtype=complex)
    N = sys.N
    if T.shape != (N, N):
        raise ValueError("operator matrix and Gabor system moduli differ")
    P = shift_bank(sys.parseval_window)
    return P.conj().T @ (T @ P)


def modulation_norm(sigma: np.ndarray, p: QParams, window: np.ndarray | None = None) -> float:
    """Finite-model mixed modulation quasi-norm of a symbol.

    Computes || zeta -> sup_z |V_Phi sigma(z, zeta)| ||_{l^q_{v_s}} where
    V_Phi sigma is the STFT of sigma over the group Z_N x Z_N and the weight
    (1 + |zeta|)^s is evaluated on centered representatives of zeta.  The
    default Phi is the tensor square of the periodized Gaussian window.
    """
    sigma = np.asarray(sigma, dtype=complex)
    N = sigma.shape[0]
    if sigma.shape != (N, N):
        raise ValueError("symbol must be a square field")
    if window is None:
        g = gaussian_window(N)
        window = np.outer(g, g)
    window = np.asarray(window, dtype=complex)
    if window.shape != (N, N):
        raise ValueError("window must match the symbol shape")
    if not np.any(window):
        raise ValueError("window must be nonzero")

    sup_field = np.zeros((N, N))
    for z1 in range(N):
        rolled1 = np.roll(window, z1, axis=0)
        for z2 in range(N):
            shifted = np.roll(rolled1, z2, axis=1)
            V = np.fft.fft2(sigma * np.conj(shifted))
            np.maximum(sup_field, np.abs(V), out=sup_field)
    return lattice_qnorm(sup_field, p.q, p.s)
