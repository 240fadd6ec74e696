import numpy as np
import pytest

from gmlab import (
    QParams,
    SampledField,
    amalgam_norm,
    bump_field,
    chirped_gaussian_field,
    conv_embedding_check,
    gaussian_field,
    gl_invariance_check,
    refinement_gap,
    sample_field,
)

P1 = QParams(1.0, 0.0)


def test_unit_cell_bump_has_norm_one():
    for s in (0.0, 1.0, 2.0):
        F = sample_field(bump_field, R=8, M=32)
        assert amalgam_norm(F, QParams(1.0, s)) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_norm_against_fine_grid_oracle():
    coarse = sample_field(gaussian_field, R=8, M=32)
    fine = sample_field(gaussian_field, R=8, M=256)
    n_coarse = amalgam_norm(coarse, P1)
    n_fine = amalgam_norm(fine, P1)
    assert abs(n_coarse - n_fine) / n_fine < 0.01


def test_zero_field_norm():
    F = SampledField(R=4, M=8, values=np.zeros((64, 64)))
    assert amalgam_norm(F, P1) == 0.0


def test_norm_monotone_in_refinement():
    mid = sample_field(gaussian_field, R=4, M=16)
    fine = sample_field(gaussian_field, R=4, M=32)
    assert amalgam_norm(fine, P1) >= amalgam_norm(mid, P1)


def test_refinement_gap_brackets_next_increment():
    mid = sample_field(gaussian_field, R=4, M=16)
    fine = sample_field(gaussian_field, R=4, M=32)
    next_step = amalgam_norm(fine, P1) - amalgam_norm(mid, P1)
    assert 0.0 <= next_step <= refinement_gap(mid, P1)


def test_inclusion_between_exponents():
    F = sample_field(gaussian_field, R=4, M=16)
    for s in (0.0, 1.0):
        n_half = amalgam_norm(F, QParams(0.5, s))
        n_one = amalgam_norm(F, QParams(1.0, s))
        assert n_one <= n_half + 1e-12


def test_solidity():
    F = sample_field(gaussian_field, R=4, M=16)
    G = SampledField(R=4, M=16, values=0.3 * F.values)
    assert amalgam_norm(G, P1) <= amalgam_norm(F, P1)


# ---------------------------------------------------------------- convolution embedding


def test_conv_embedding_finite_and_stable():
    for q, s in [(1.0, 0.0), (0.8, 1.0)]:
        p = QParams(q, s)
        r32 = conv_embedding_check(
            sample_field(gaussian_field, R=8, M=32),
            sample_field(bump_field, R=8, M=32),
            p,
        )
        r64 = conv_embedding_check(
            sample_field(gaussian_field, R=8, M=64),
            sample_field(bump_field, R=8, M=64),
            p,
        )
        assert np.isfinite(r32) and r32 > 0
        assert abs(r64 - r32) / r32 < 0.05


def test_conv_embedding_within_frozen_constant(calibration):
    threshold = calibration["conv_embedding"]["ratio_threshold"]
    p = QParams(0.8, 1.0)
    bump = sample_field(bump_field, R=8, M=32)
    gauss = sample_field(gaussian_field, R=8, M=32)
    assert conv_embedding_check(bump, bump, p) <= threshold
    assert conv_embedding_check(gauss, bump, p) <= threshold


def test_conv_embedding_zero_field():
    zero = SampledField(R=4, M=8, values=np.zeros((64, 64)))
    F = sample_field(gaussian_field, R=4, M=8)
    assert conv_embedding_check(zero, F, P1) == 0.0


def test_conv_embedding_near_delta():
    # a narrow normalized bump acts as an approximate identity
    def narrow(x, y):
        return 40.0 * bump_field(8 * x + 0.5 - 4.0, 8 * y + 0.5 - 4.0)

    F = sample_field(gaussian_field, R=4, M=32)
    G = sample_field(narrow, R=4, M=32)
    ratio = conv_embedding_check(F, G, P1)
    mass = np.sum(G.values.real) / 32**2
    # F * G ~ mass * F, so ratio ~ mass / ||G||
    expected = mass / amalgam_norm(G, P1)
    print(f"near-delta ratio {ratio:.4f}, predicted {expected:.4f}")
    assert 0.5 * expected < ratio < 2.0 * expected


def test_conv_embedding_grid_mismatch():
    F = sample_field(gaussian_field, R=4, M=8)
    G = sample_field(gaussian_field, R=4, M=16)
    with pytest.raises(ValueError):
        conv_embedding_check(F, G, P1)


# ---------------------------------------------------------------- GL invariance


def test_gl_identity():
    F = sample_field(gaussian_field, R=4, M=16)
    res = gl_invariance_check(F, np.eye(2), P1)
    assert res.ratio == pytest.approx(1.0, abs=1e-12)


def test_gl_rotation_of_radial_field():
    F = sample_field(gaussian_field, R=8, M=32)
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    res = gl_invariance_check(F, rot, P1)
    assert res.ratio == pytest.approx(1.0, abs=1e-9)


def test_gl_anisotropic_scaling():
    F = sample_field(gaussian_field, R=8, M=32)
    res = gl_invariance_check(F, np.diag([2.0, 0.5]), QParams(0.8, 1.0))
    assert np.isfinite(res.ratio)
    assert res.ratio ** 0.8 <= res.bound


def test_gl_rejects_singular():
    F = sample_field(gaussian_field, R=4, M=8)
    with pytest.raises(ValueError):
        gl_invariance_check(F, np.array([[1.0, 2.0], [2.0, 4.0]]), P1)


def test_field_validation():
    with pytest.raises(ValueError):
        SampledField(R=2, M=2, values=np.zeros((8, 8)))  # M too small
    with pytest.raises(ValueError):
        SampledField(R=2, M=8, values=np.zeros((8, 8)))  # wrong shape
    with pytest.raises(ValueError):
        SampledField(R=1, M=4, values=np.full((8, 8), np.nan))


def test_chirped_gaussian_is_complex():
    F = sample_field(chirped_gaussian_field, R=4, M=8)
    assert np.iscomplexobj(F.values)
    assert amalgam_norm(F, P1) > 0
