"""Interpolation norms on the disc: feasibility matrices and bisection.

Given points lambda_i inside the unit disc and targets z_i, the smallest
sup-norm of a bounded analytic interpolant is the least level t at which
the matrix (1 - t^{-2} z_i conj(z_j)) / (1 - lambda_i conj(lambda_j))
becomes positive semidefinite.  The library brackets that level by
bisection and returns a certified interval.
"""

import numpy as np

from picknorm import build_pick_matrix, is_feasible, np_norm_hardy

## A single site: the norm is just the target modulus
r = np_norm_hardy([0.3], [0.7], 1e-9)
print(f"one site:        [{r.lower:.12f}, {r.upper:.12f}]  (constant attains)")

## The contraction example: f(0) = 0 forces |f(1/2)| <= ||f|| / 2
m = build_pick_matrix([0.0, 0.5], [0.0, 0.25], 1.0)
print("feasibility matrix at level 1:\n", np.round(m.entries.real, 4))
r = np_norm_hardy([0, 0.5], [0, 0.25], 1e-9)
print(f"norm bracket:    [{r.lower:.12f}, {r.upper:.12f}]  (expect 1/2)")

## Cross-check the bisection against a brute feasibility scan
ts = np.linspace(0.3, 0.7, 2000)
flags = [is_feasible([0, 0.5], [0, 0.25], float(t)).feasible for t in ts]
print(f"scan transition: {ts[flags.index(True)]:.6f}")

## Feasibility is monotone in the level: the matrix gains a positive part
for t in (0.4, 0.5, 0.6, 1.0):
    v = is_feasible([0, 0.5], [0, 0.25], t)
    print(f"  t = {t:.1f}: min eigenvalue {v.min_eigenvalue:+.6f} "
          f"-> {'feasible' if v.feasible else 'infeasible'}")

## Sign targets need more room than the sup floor suggests
r = np_norm_hardy([0, 0.5], [1, -1], 1e-9)
print(f"targets (1,-1):  [{r.lower:.9f}, {r.upper:.9f}]  "
      f"(2 + sqrt(3) = {2 + np.sqrt(3):.9f})")
