import numpy as np
import pytest
from numpy.testing import assert_allclose

from gmlab import (
    frame_bounds,
    gabor_system,
    gaussian_window,
    stft,
    synthesize,
    tf_shift,
    tf_shift_matrix,
)


def brute_stft(f, g):
    N = len(f)
    out = np.zeros((N, N), complex)
    for k in range(N):
        for l in range(N):
            out[k, l] = np.vdot(tf_shift((k, l), g), f)
    return out


def test_shift_identity():
    f = np.arange(5, dtype=complex)
    assert_allclose(tf_shift((0, 0), f), f)


def test_pure_translation():
    f = np.zeros(5, complex)
    f[0] = 1.0
    out = tf_shift((1, 0), f)
    expected = np.zeros(5, complex)
    expected[1] = 1.0
    assert_allclose(out, expected)


def test_pure_modulation():
    N = 5
    f = np.ones(N, complex)
    out = tf_shift((0, 1), f)
    t = np.arange(N)
    assert_allclose(out, np.exp(2j * np.pi * t / N))


@pytest.mark.parametrize("N", [5, 7])
def test_shift_unitarity(N, rng):
    f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    for k in range(N):
        for l in range(N):
            assert abs(np.linalg.norm(tf_shift((k, l), f)) - np.linalg.norm(f)) < 1e-14


def test_shift_commutation_up_to_phase():
    N = 5
    for k1 in range(N):
        for l1 in range(N):
            A = tf_shift_matrix((k1, l1), N)
            for k2 in range(N):
                for l2 in range(N):
                    B = tf_shift_matrix((k2, l2), N)
                    composite = A @ B
                    phase = np.exp(-2j * np.pi * l2 * k1 / N)
                    target = phase * tf_shift_matrix(((k1 + k2) % N, (l1 + l2) % N), N)
                    assert np.max(np.abs(composite - target)) < 1e-13


def test_stft_delta_window_values():
    N = 5
    d = np.zeros(N, complex)
    d[0] = 1.0
    V = stft(d, d)
    assert V[0, 0] == pytest.approx(1.0)
    assert abs(V[1, 0]) < 1e-15


def test_stft_matches_brute_force():
    N = 11
    g = gaussian_window(N)
    rng = np.random.default_rng(2)
    f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    assert np.max(np.abs(stft(f, g) - brute_stft(f, g))) < 1e-12


def test_stft_rejects_zero_window():
    with pytest.raises(ValueError):
        stft(np.ones(5), np.zeros(5))


def test_parseval_identity(rng):
    N = 7
    g = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    V = stft(f, g)
    lhs = np.sum(np.abs(V) ** 2)
    rhs = np.linalg.norm(f) ** 2 * (N * np.linalg.norm(g) ** 2)
    assert_allclose(lhs, rhs, rtol=1e-12)


def test_frame_bounds_delta_window():
    N = 5
    d = np.zeros(N, complex)
    d[0] = 1.0
    A, B = frame_bounds(gabor_system(d))
    assert A == pytest.approx(5.0, abs=1e-10)
    assert B == pytest.approx(5.0, abs=1e-10)


def test_frame_bounds_parseval_window():
    N = 7
    g = gaussian_window(N)  # already N ||g||^2 = 1
    A, B = frame_bounds(gabor_system(g))
    assert A == pytest.approx(1.0, abs=1e-10)
    assert B == pytest.approx(1.0, abs=1e-10)


def test_zero_window_rejected():
    with pytest.raises(ValueError):
        gabor_system(np.zeros(5))


def test_synthesize_roundtrip(rng):
    N = 11
    sys = gabor_system(gaussian_window(N))
    f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    rec = synthesize(stft(f, sys.parseval_window), sys)
    assert np.linalg.norm(rec - f) < 1e-10


def test_synthesize_delta_coefficients():
    N = 7
    sys = gabor_system(gaussian_window(N))
    coeffs = np.zeros((N, N), complex)
    coeffs[0, 0] = 1.0
    assert_allclose(synthesize(coeffs, sys), sys.parseval_window, atol=1e-14)


def test_gaussian_window_normalization():
    for N in (5, 7, 11, 31):
        g = gaussian_window(N)
        assert N * np.sum(np.abs(g) ** 2) == pytest.approx(1.0, rel=1e-12)
