"""Bounded-analytic-function backend on the open unit disc.

The classical interpolation theorem says there is an analytic f on the disc
with sup-norm <= t and f(lambda_i) = z_i exactly when the matrix

    M(t)[i, j] = (1 - t^{-2} z_i conj(z_j)) / (1 - lambda_i conj(lambda_j))

is positive semidefinite.  The interpolation norm is therefore the infimum
of the feasible levels t, which this module brackets by bisection.  M(t)
decomposes as S - t^{-2} D_z S D_z^* with S the positive reproducing-kernel
matrix, so feasibility is monotone in t and bisection is sound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BracketFailure,
    DomainViolation,
    DuplicateSite,
    EigensolveFailure,
    NonpositiveLevel,
    NormResult,
    make_result,
)


@dataclass(frozen=True)
class PickMatrix:
    """Hermitian feasibility matrix at level t for data (lambdas, zs)."""

    entries: np.ndarray
    level: float
    lambdas: np.ndarray
    zs: np.ndarray


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    min_eigenvalue: float
    psd_slack: float


def _as_disc_points(lambdas) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=complex).ravel()
    if np.any(np.abs(lam) >= 1.0):
        bad = int(np.argmax(np.abs(lam) >= 1.0))
        raise DomainViolation(
            f"site {bad}: |lambda| = {abs(lam[bad])!r} not inside the open disc")
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            if lam[i] == lam[j]:
                raise DuplicateSite(f"sites {i} and {j} coincide ({lam[i]!r})")
    return lam


def build_pick_matrix(lambdas, zs, t: float) -> PickMatrix:
    """Assemble M(t); Hermitian exactly, by mirroring one triangle."""
    if not (t > 0):
        raise NonpositiveLevel(f"level must be positive, got {t!r}")
    lam = _as_disc_points(lambdas)
    z = np.asarray(zs, dtype=complex).ravel()
    if len(z) != len(lam):
        raise DomainViolation("lambdas and zs must have equal length")

    num = 1.0 - np.outer(z, z.conj()) / (t * t)
    den = 1.0 - np.outer(lam, lam.conj())
    full = num / den
    upper = np.triu(full, 1)
    entries = np.diag(full.real.diagonal().astype(complex)) + upper + upper.conj().T
    return PickMatrix(entries=entries, level=float(t), lambdas=lam, zs=z)


def is_feasible(lambdas, zs, t: float, psd_slack: float | None = None) -> FeasibilityVerdict:
    """Positive semidefiniteness of M(t) up to a relative slack.

    Default slack 1e-12 * max(1, ||M||_F): the single-site case at t = |z|
    sits exactly at eigenvalue 0 and must not be reported infeasible due to
    rounding.
    """
    pick = build_pick_matrix(lambdas, zs, t)
    fro = float(np.linalg.norm(pick.entries))
    if psd_slack is None:
        psd_slack = 1e-12 * max(1.0, fro)
    try:
        eigs = np.linalg.eigvalsh(pick.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigensolveFailure(str(exc)) from exc
    min_eig = float(eigs[0])
    return FeasibilityVerdict(feasible=min_eig >= -psd_slack,
                              min_eigenvalue=min_eig,
                              psd_slack=float(psd_slack))


def np_norm_hardy(lambdas, zs, tolerance: float = 1e-9) -> NormResult:
    """Bracket inf{t > 0 : M(t) is PSD} to within ``tolerance``.

    The lower end of the starting bracket is max|z_i| (any smaller t makes a
    diagonal entry of M(t) negative); the upper end is found by doubling.
    On return the upper end is feasible and the lower end is the floor or a
    tested-infeasible level.
    """
    if not (tolerance > 0):
        raise DomainViolation(f"tolerance must be positive, got {tolerance!r}")
    lam = _as_disc_points(lambdas)
    z = np.asarray(zs, dtype=complex).ravel()
    if len(z) != len(lam):
        raise DomainViolation("lambdas and zs must have equal length")

    zmax = float(np.max(np.abs(z))) if len(z) else 0.0
    if zmax == 0.0:
        return make_result(0.0, 0.0, 0.0,
                           {"method": "pick_bisection", "note": "zero targets"})

    lo = zmax
    hi = max(zmax, tolerance)
    iterations = 0

    verdict = is_feasible(lam, z, hi)
    cap = hi * float(2 ** 60)
    while not verdict.feasible:
        lo = hi
        hi *= 2.0
        iterations += 1
        if hi > cap:
            raise BracketFailure(
                "no feasible level found while doubling; input invalid?")
        verdict = is_feasible(lam, z, hi)

    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if is_feasible(lam, z, mid).feasible:
            hi = mid
        else:
            lo = mid

    cert = {
        "method": "pick_bisection",
        "feasible_level": hi,
        "min_eigenvalue_at_upper": is_feasible(lam, z, hi).min_eigenvalue,
    }
    return make_result(lo, hi, zmax, cert, iterations)
