"""Sampled amalgam norms on the plane: cell maxima in a weighted lq sum.

The norm is stable under grid refinement, submultiplicative under
convolution, and changes by a bounded factor under a linear change of
coordinates, with the bound controlled by a measured covering number.
"""

import numpy as np

import gmlab as g
from gmlab import QParams

p = QParams(0.8, 1.0)

F = g.sample_field(g.gaussian_field, R=8, M=32)
G = g.sample_field(g.bump_field, R=8, M=32)

print(f"gaussian amalgam norm: {g.amalgam_norm(F, p):.6f} "
      f"(refinement gap {g.refinement_gap(F, p):.2e})")
print(f"unit-cell bump norm:   {g.amalgam_norm(G, QParams(1.0, 2.0)):.6f} "
      f"(exactly 1: single cell, unit peak)")

ratio = g.conv_embedding_check(F, G, p)
print(f"\nconvolution embedding ratio ||F*G|| / (||F|| ||G||) = {ratio:.4f}")

for mat, name in [
    (np.array([[0.0, -1.0], [1.0, 0.0]]), "rotation pi/2"),
    (np.diag([2.0, 0.5]), "diag(2, 1/2)"),
    (np.array([[1.0, 1.0], [0.0, 1.0]]), "shear"),
]:
    res = g.gl_invariance_check(F, mat, p)
    print(f"{name:14s} ratio {res.ratio:8.4f}  covering beta {res.beta}  "
          f"bound 4*beta = {res.bound:.0f}  (ratio^q = {res.ratio ** p.q:.4f})")
