"""Discrete Weyl calculus: Wigner distributions, quantization, Gabor matrices.

Quantization is an exact linear bijection between N x N symbols and N x N
operators, dual to the cross-Wigner distribution, and the Gabor matrix of
an operator intertwines it with the lattice STFT.
"""

import numpy as np

import gmlab as g
from gmlab import QParams
from gmlab.presets import gaussian_bump_symbol

N = 7
rng = np.random.default_rng(1)

# The constant symbol quantizes to the identity
print("Op(1) == I:", np.allclose(g.weyl_quantize(np.ones((N, N))), np.eye(N)))

# Duality: <Op(sigma) f, w> equals the pairing of sigma with W(w, f)
sigma = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
w = rng.standard_normal(N) + 1j * rng.standard_normal(N)
lhs = np.vdot(w, g.weyl_quantize(sigma) @ f)
rhs = g.duality_pairing(sigma, f, w)
print(f"duality defect: {abs(lhs - rhs):.3e}")

# Quantize and dequantize invert each other exactly
sym_back = g.weyl_dequantize(g.weyl_quantize(sigma))
print(f"dequantize(quantize(sigma)) error: {np.max(np.abs(sym_back - sigma)):.3e}")

# Rank-one operators dequantize to Wigner distributions
T = np.outer(w, np.conj(w))
print(f"dequantize(|w><w|) vs W(w, w): "
      f"{np.max(np.abs(g.weyl_dequantize(T) - g.wigner(w, w))):.3e}")

# The Gabor matrix makes the diagram commute: V(T f) = M V(f)
sys = g.gabor_system(g.gaussian_window(N))
gamma = sys.parseval_window
T = g.weyl_quantize(sigma)
M = g.gabor_matrix(T, sys)
defect = np.linalg.norm(g.stft(T @ f, gamma).ravel() - M @ g.stft(f, gamma).ravel())
print(f"commutation defect: {defect:.3e}")

# Smooth symbols give Gabor matrices with fast off-diagonal decay
p = QParams(0.8, 1.0)
smooth = gaussian_bump_symbol(N)
rough = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
for name, s in [("smooth bump", smooth), ("white noise", rough)]:
    env = g.diagonal_envelope(g.gabor_matrix(g.weyl_quantize(s), sys))
    print(f"{name:12s} decay-class norm {g.cb_norm(g.gabor_matrix(g.weyl_quantize(s), sys), p):9.4f}, "
          f"modulation norm {g.modulation_norm(s, p):9.4f}, "
          f"envelope peak/edge {env[0, 0] / env[N // 2, N // 2]:9.1f}")
