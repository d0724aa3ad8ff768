"""Smoothing kernels: flat passbands, masses, and the measure-to-function chain.

The trapezoid kernel of order l keeps every Fourier coefficient with
|k| <= l exactly while truncating at 2l, so convolving a measure with it
produces an integrable function interpolating the same pinned coefficients.
Its own mass does not tend to 1, which is precisely why the chain reports
slacks instead of assuming them away.
"""

import numpy as np

from picknorm.kernels import (
    TorusMeasure,
    convolve,
    kernel_coeffs,
    kernel_l1_norm,
    smoothing_chain,
    unit_point_mass,
)

## Coefficient profiles
V = kernel_coeffs("dlvp", 4)
print("trapezoid order 4:", {k: round(V.coeff(k), 2) for k in range(0, 9)})
F = kernel_coeffs("fejer", 4)
print("triangular order 4:", {k: round(F.coeff(k), 2) for k in range(0, 6)})

## Masses: the positive kernel has mass one; the trapezoid does not shrink
print("\norder    trapezoid mass   triangular mass")
for l in (1, 4, 16, 64):
    print(f"{l:5d}    {kernel_l1_norm(l):14.8f}   {kernel_l1_norm(l, kind='fejer'):14.8f}")

## Low-degree polynomials pass through untouched
m = 512
th = (2 * np.pi / m) * np.arange(m)
p = 1.0 + 0.5 * np.exp(1j * 2 * th) - 0.25 * np.exp(-1j * 3 * th)
out, _ = convolve(TorusMeasure(density=p), kernel_coeffs("dlvp", 8), m)
print(f"\ndegree-3 polynomial through order-8 kernel: "
      f"max error {np.max(np.abs(out - p)):.2e}")

## The smoothing chain at a point mass: coefficients pinned exactly, mass
## stuck at the kernel mass — the bracket shows the slack honestly
rep = smoothing_chain(unit_point_mass(), [0, 1], orders=[4, 8, 16, 32])
print(f"\npoint mass, coefficients (0, 1): norm bracket "
      f"[{rep['np_lower']:.6f}, {rep['np_upper']:.6f}]")
for row in rep["rows"]:
    print(f"  order {row['order']:3d}: smoothed mass {row['l1_norm']:.8f}, "
          f"coefficient error {row['coefficient_error']:.1e}")

## For an integrable density the smoothed masses do converge
base, _ = convolve(unit_point_mass(), kernel_coeffs("fejer", 8), 1024)
rep = smoothing_chain(TorusMeasure(density=np.real(base)), [0, 1],
                      orders=[16, 32, 64], grid=1024)
print("\nsmooth density: masses",
      ", ".join(f"{row['l1_norm']:.8f}" for row in rep["rows"]),
      f"(measure mass {rep['measure_norm']:.8f})")
