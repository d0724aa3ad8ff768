"""Finite model algebras on C^n: closed-form interpolation norms, a generic
convex cross-check, a tester for the "every interpolation norm is the sup
norm" property, and the annihilating-functional contradiction probe.

The model algebra is C^n under pointwise product with one of three norms:
weighted sup (max w_i|x_i|, w_i >= 1), weighted l1 (sum w_i|x_i|, w_i >= 1),
or plain lp (p >= 1).  Coordinate functionals are the characters.  An
optional basis restricts to a subalgebra, checked for multiplicative
closure; interpolation then happens inside the span, which can fail
(InfeasibleCoset) when the functionals are dependent on it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _lp
from .core import (
    DomainViolation,
    InfeasibleCoset,
    NormResult,
    SolverError,
    UnsupportedForSubalgebra,
    make_result,
    sup_lower_bound,
)

NORM_KINDS = ("weighted_sup", "weighted_l1", "lp")


class FiniteAlgebra:
    """C^n (or a multiplicatively closed subspace of it) with a chosen norm.

    weighted_sup and weighted_l1 require all weights >= 1 so the norm is
    submultiplicative under the pointwise product; lp requires p >= 1 and
    unit weights.  A basis, when given, must be closed under pointwise
    products within 1e-12 (least-squares residual) — an unclosed "basis"
    would silently test nothing.  Subalgebras of C^n are automatically
    semisimple (no nilpotents under pointwise product).
    """

    def __init__(self, dimension: int, norm_kind: str, weights=None,
                 p: float | None = None, basis=None, closure_check: bool = True):
        if norm_kind not in NORM_KINDS:
            raise DomainViolation(f"unknown norm kind {norm_kind!r}")
        self.dimension = int(dimension)
        if self.dimension < 1:
            raise DomainViolation("dimension must be >= 1")
        self.norm_kind = norm_kind

        if weights is None:
            w = np.ones(self.dimension)
        else:
            w = np.asarray(weights, dtype=float).ravel()
            if len(w) != self.dimension:
                raise DomainViolation("weights length must equal dimension")
        if norm_kind in ("weighted_sup", "weighted_l1"):
            if np.any(w < 1.0):
                raise DomainViolation(
                    f"{norm_kind} needs weights >= 1 (submultiplicativity)")
            self.p = None
        else:
            if p is None or p < 1.0:
                raise DomainViolation("lp norm needs exponent p >= 1")
            if np.any(w != 1.0):
                raise DomainViolation("lp norm uses unit weights")
            self.p = float(p)
        self.weights = w

        if basis is None:
            self.basis = None
        else:
            B = np.asarray(basis, dtype=complex)
            if B.ndim != 2 or B.shape[1] != self.dimension:
                raise DomainViolation(
                    "basis must be a list of vectors of length = dimension")
            if closure_check:
                self._check_closure(B)
            self.basis = B

    @staticmethod
    def _check_closure(B: np.ndarray, tol: float = 1e-12) -> None:
        scale = max(1.0, float(np.max(np.abs(B)) ** 2))
        for i in range(len(B)):
            for j in range(i, len(B)):
                prod = B[i] * B[j]
                coef, res, *_ = np.linalg.lstsq(B.T, prod, rcond=None)
                resid = float(np.linalg.norm(B.T @ coef - prod))
                if resid > tol * scale:
                    raise DomainViolation(
                        f"basis is not multiplicatively closed: product of "
                        f"vectors {i} and {j} leaves the span "
                        f"(residual {resid:.3e})")

    @classmethod
    def subspace(cls, basis, dimension=None, norm_kind: str = "weighted_sup",
                 weights=None, p: float | None = None) -> "FiniteAlgebra":
        """A plain subspace (closure check skipped) for annihilator probes."""
        B = np.asarray(basis, dtype=complex)
        dim = B.shape[1] if dimension is None else dimension
        return cls(dim, norm_kind, weights=weights, p=p, basis=B,
                   closure_check=False)

    def norm(self, x) -> float:
        x = np.asarray(x, dtype=complex).ravel()
        if self.norm_kind == "weighted_sup":
            return float(np.max(self.weights * np.abs(x)))
        if self.norm_kind == "weighted_l1":
            return float(np.sum(self.weights * np.abs(x)))
        return float(np.sum(np.abs(x) ** self.p) ** (1.0 / self.p))

    def __repr__(self):
        extra = f", p={self.p}" if self.norm_kind == "lp" else ""
        sub = ", subalgebra" if self.basis is not None else ""
        return f"FiniteAlgebra(n={self.dimension}, {self.norm_kind}{extra}{sub})"


@dataclass(frozen=True)
class NPInftyVerdict:
    """Outcome of the sup-norm-property search.

    ``exact`` is True when the closed forms decide the property outright
    (full C^n); otherwise the verdict is sampling-limited.
    """

    is_np_infty: bool
    witness: dict | None
    exact: bool
    checked: int


def _subset_indices(subset) -> list[int]:
    idx = [int(i) for i in subset]
    if len(set(idx)) != len(idx):
        raise DomainViolation("subset indices must be distinct")
    if any(i < 1 for i in idx):
        raise DomainViolation("subset indices are 1-based")
    return idx


def np_norm_closed_form(alg: FiniteAlgebra, subset, targets) -> NormResult:
    """Exact interpolation norm on full C^n: free coordinates set to zero.

    weighted_sup -> max w_i|a_i|; weighted_l1 -> sum w_i|a_i|;
    lp -> (sum |a_i|^p)^{1/p}.  Zero-width bracket.
    """
    if alg.basis is not None:
        raise UnsupportedForSubalgebra(
            "closed forms hold on full C^n only; use np_norm_generic")
    idx = _subset_indices(subset)
    if any(i > alg.dimension for i in idx):
        raise DomainViolation("subset index outside 1..n")
    a = np.asarray(targets, dtype=complex).ravel()
    if len(a) != len(idx):
        raise DomainViolation("subset and targets must have equal length")
    w = alg.weights[np.asarray(idx) - 1]
    if alg.norm_kind == "weighted_sup":
        value = float(np.max(w * np.abs(a))) if len(a) else 0.0
    elif alg.norm_kind == "weighted_l1":
        value = float(np.sum(w * np.abs(a)))
    else:
        value = float(np.sum(np.abs(a) ** alg.p) ** (1.0 / alg.p))
    floor = sup_lower_bound(a)
    return make_result(value, value, floor,
                       {"method": "closed_form", "free_coordinates": "zero"})


def _coset_parametrization(alg: FiniteAlgebra, idx: list[int], a: np.ndarray):
    """x = x0 + N u over the span, with x_i = a_i enforced; raises
    InfeasibleCoset when the span cannot interpolate."""
    n = alg.dimension
    B = np.eye(n, dtype=complex) if alg.basis is None else alg.basis
    sel = np.asarray(idx) - 1
    E = B.T[sel, :]  # (s, m): coefficients -> constrained coordinates
    coef0, *_ = np.linalg.lstsq(E, a, rcond=None)
    resid = float(np.linalg.norm(E @ coef0 - a))
    if resid > 1e-9 * max(1.0, float(np.max(np.abs(a))) if len(a) else 1.0):
        raise InfeasibleCoset(
            f"subalgebra cannot interpolate the targets (residual {resid:.3e})")
    # null space of E
    if E.shape[0] >= E.shape[1]:
        null = np.zeros((E.shape[1], 0), dtype=complex)
    else:
        _, s, vh = np.linalg.svd(E)
        rank = int(np.sum(s > 1e-13 * max(1.0, s[0] if len(s) else 1.0)))
        null = vh[rank:].conj().T
    x0 = B.T @ coef0
    directions = B.T @ null  # (n, d)
    return x0, directions


def np_norm_generic(alg: FiniteAlgebra, subset, targets,
                    tolerance: float = 1e-8) -> NormResult:
    """Minimize the algebra norm over the interpolation coset.

    Polyhedral LP with adaptive modulus cuts for the sup/l1 kinds (the LP
    relaxation value is a certified lower bound, the evaluated norm of the
    solution a certified upper bound); smooth convex descent plus a Hoelder
    dual certificate for lp with p > 1.  Agrees with np_norm_closed_form on
    full C^n.
    """
    idx = _subset_indices(subset)
    if any(i > alg.dimension for i in idx):
        raise DomainViolation("subset index outside 1..n")
    a = np.asarray(targets, dtype=complex).ravel()
    if len(a) != len(idx):
        raise DomainViolation("subset and targets must have equal length")
    floor = sup_lower_bound(a)
    x0, N = _coset_parametrization(alg, idx, a)
    if not np.any(np.abs(a) > 0) and alg.basis is None:
        return make_result(0.0, 0.0, 0.0, {"method": "generic", "note": "zero targets"})

    if alg.norm_kind in ("weighted_sup", "weighted_l1") or alg.p == 1.0:
        lower, upper, x = _generic_lp(alg, x0, N, tolerance)
        method = "generic_lp"
    else:
        lower, upper, x = _generic_lp_smooth(alg, x0, N, tolerance)
        method = "generic_descent"
    cert = {"method": method, "minimizer": [[float(v.real), float(v.imag)]
                                            for v in x]}
    return make_result(max(lower, 0.0), upper, floor, cert)


def _generic_lp(alg: FiniteAlgebra, x0: np.ndarray, N: np.ndarray,
                tolerance: float):
    """Cut LP for min ||x0 + N u|| in the weighted sup / l1 kinds."""
    n = alg.dimension
    d = N.shape[1]
    w = alg.weights
    is_sup = alg.norm_kind == "weighted_sup"
    # real variables: [Re u (d), Im u (d), t (n)] and, for sup, s appended
    nv = 2 * d + n + (1 if is_sup else 0)
    phases = [np.array(_lp._PHASES1) for _ in range(n)]

    def coord_row(i, phi):
        # Re(e^{-i phi} x_i(u)) = Re(e^{-i phi} x0_i) + linear in (Re u, Im u)
        row = np.zeros(nv)
        e = np.exp(-1j * phi)
        row[:d] = np.real(e * N[i, :])
        row[d:2 * d] = -np.imag(e * N[i, :])
        rhs = -np.real(e * x0[i])
        return row, rhs

    lower = 0.0
    upper = math.inf
    best_x = x0
    for _ in range(40):
        rows = []
        rhs = []
        for i in range(n):
            for phi in phases[i]:
                row, r0 = coord_row(i, phi)
                row[2 * d + i] = -1.0
                rows.append(row)
                rhs.append(r0)
        if is_sup:
            # w_i t_i <= s
            for i in range(n):
                row = np.zeros(nv)
                row[2 * d + i] = w[i]
                row[-1] = -1.0
                rows.append(row)
                rhs.append(0.0)
            cost = np.zeros(nv)
            cost[-1] = 1.0
        else:
            cost = np.zeros(nv)
            cost[2 * d:2 * d + n] = w
        A_ub = np.asarray(rows)
        b_ub = np.asarray(rhs)
        bounds = [(None, None)] * (2 * d) + [(0, None)] * (nv - 2 * d)
        res = _lp.solve_lp(cost, A_ub, b_ub, None, None, bounds)
        u = res.x[:d] + 1j * res.x[d:2 * d]
        x = x0 + N @ u
        lower = float(res.fun)
        val = alg.norm(x)
        if val < upper:
            upper = val
            best_x = x
        if upper - lower <= max(tolerance, 1e-11) * max(1.0, upper):
            break
        t = res.x[2 * d:2 * d + n]
        improved = False
        for i in range(n):
            if abs(x[i]) > t[i] + 1e-13 and abs(x[i]) > 1e-15:
                phi = float(np.angle(x[i]))
                if _lp._phase_distinct(phases[i], phi):
                    phases[i] = np.append(phases[i], phi)
                    improved = True
        if not improved:
            break
    return lower, upper, best_x


def _generic_lp_smooth(alg: FiniteAlgebra, x0: np.ndarray, N: np.ndarray,
                       tolerance: float):
    """Smooth convex descent for the lp kinds (p > 1), with a Hoelder dual
    certificate on full C^n."""
    from scipy.optimize import minimize

    p = alg.p
    n = alg.dimension
    d = N.shape[1]

    def unpack(v):
        u = v[:d] + 1j * v[d:]
        return x0 + N @ u

    def fun_grad(v):
        x = unpack(v)
        ax = np.abs(x)
        F = float(np.sum(ax ** p))
        if F == 0.0:
            return 0.0, np.zeros(2 * d)
        val = F ** (1.0 / p)
        g_x = np.zeros_like(x)
        mask = ax > 0
        g_x[mask] = (val ** (1.0 - p)) * (ax[mask] ** (p - 2.0)) * x[mask]
        gu = N.conj().T @ g_x
        return val, np.concatenate([gu.real, gu.imag])

    if d == 0:
        val = alg.norm(x0)
        return val - 1e-12 * max(1.0, val), val, x0

    v0 = np.zeros(2 * d)
    res = minimize(fun_grad, v0, jac=True, method="L-BFGS-B",
                   options={"maxiter": 500, "ftol": 1e-15, "gtol": 1e-12})
    x = unpack(res.x)
    upper = alg.norm(x)

    lower = 0.0
    if alg.basis is None:
        # Hoelder certificate: g supported on the constrained coordinates is
        # constant on the coset, so Re<g, .>/||g||_q bounds every feasible norm
        q = math.inf if p == 1.0 else p / (p - 1.0)
        free = np.zeros(n, dtype=bool)
        if d:
            free = np.any(np.abs(N) > 1e-13, axis=1)
        g = np.where(free, 0.0, np.abs(x) ** (p - 1.0) * np.exp(1j * np.angle(x)))
        if q == math.inf:
            gq = float(np.max(np.abs(g)))
        else:
            gq = float(np.sum(np.abs(g) ** q) ** (1.0 / q))
        if gq > 0:
            lower = float(np.real(np.sum(np.conj(g) * x))) / gq
    else:
        lower = max(0.0, upper - max(tolerance, 1e-9) * max(1.0, upper))
    return lower, upper, x


def np_infty_test(alg: FiniteAlgebra, sample_budget: int = 200,
                  tolerance: float = 1e-9, seed: int = 0) -> NPInftyVerdict:
    """Search for a tuple whose interpolation norm exceeds its sup norm.

    Site subsets up to size min(n, 4) are enumerated with deterministic
    extreme target patterns (unimodular sign patterns, coordinate
    indicators) before ``sample_budget`` seeded random targets; the first
    gap > tolerance is returned as a reproducible witness.  On full C^n the
    closed forms make the verdict exact; otherwise it is sampling-limited.
    """
    n = alg.dimension
    exact = alg.basis is None
    rng = np.random.default_rng(seed)
    checked = 0

    def np_value(idx, a):
        if alg.basis is None:
            return np_norm_closed_form(alg, idx, a).upper
        try:
            return np_norm_generic(alg, idx, a, tolerance=1e-10).upper
        except InfeasibleCoset:
            return None

    def try_targets(idx, a):
        nonlocal checked
        a = np.asarray(a, dtype=complex)
        if not np.any(np.abs(a) > 0):
            return None
        checked += 1
        v = np_value(idx, a)
        if v is None:
            return None
        sup = float(np.max(np.abs(a)))
        if v > sup + tolerance:
            return {"subset": list(idx), "targets": [complex(z) for z in a],
                    "np_value": float(v), "sup_value": sup}
        return None

    subsets = []
    for size in range(1, min(n, 4) + 1):
        subsets.extend(itertools.combinations(range(1, n + 1), size))

    for idx in subsets:
        size = len(idx)
        for signs in itertools.product((1.0, -1.0), repeat=size):
            w = try_targets(idx, np.asarray(signs, dtype=complex))
            if w:
                return NPInftyVerdict(False, w, exact, checked)
        for j in range(size):
            e = np.zeros(size, dtype=complex)
            e[j] = 1.0
            w = try_targets(idx, e)
            if w:
                return NPInftyVerdict(False, w, exact, checked)

    for _ in range(sample_budget):
        idx = subsets[int(rng.integers(len(subsets)))]
        a = rng.standard_normal(len(idx)) + 1j * rng.standard_normal(len(idx))
        w = try_targets(idx, a)
        if w:
            return NPInftyVerdict(False, w, exact, checked)

    return NPInftyVerdict(True, None, exact, checked)


def annihilating_functional(basis) -> np.ndarray | None:
    """A unit-mass vector mu with sum_i mu_i x_i = 0 for every basis vector x
    (bilinear pairing), or None when the span is all of C^n.

    Normalized to sum|mu_i| = 1 with the largest entry rotated positive
    real, so results are deterministic.
    """
    B = np.asarray(basis, dtype=complex)
    if B.ndim != 2:
        raise DomainViolation("basis must be a 2-d array of row vectors")
    n = B.shape[1]
    _, s, vh = np.linalg.svd(B)
    tol = 1e-12 * max(1.0, float(s[0]) if len(s) else 1.0)
    rank = int(np.sum(s > tol))
    if rank >= n:
        return None
    mu = vh[rank].conj()  # B @ mu = 0 exactly in the bilinear pairing
    mu = mu / np.sum(np.abs(mu))
    j = int(np.argmax(np.abs(mu)))
    mu = mu / (mu[j] / abs(mu[j]))
    return mu


def scattered_contradiction_check(basis_or_alg, tolerance: float = 1e-9,
                                  norm_bound: float = 2.0) -> dict:
    """Probe the annihilator dichotomy on a proper subspace of C^n.

    Any nonzero mu annihilating the span is purely atomic here; order its
    entries by modulus, take the smallest head with mass > 2/3, and ask the
    span for an interpolant of the conjugate sign pattern with algebra norm
    <= 2.  Were one to exist, its pairing with mu would be at least
    head - 2*tail > 0, contradicting annihilation — so the probe must land
    in one of the failure branches, and the report states which.
    """
    if isinstance(basis_or_alg, FiniteAlgebra):
        alg = basis_or_alg
        if alg.basis is None:
            return {"branch": "dense", "mu": None,
                    "detail": "full C^n has no annihilating functional"}
    else:
        alg = FiniteAlgebra.subspace(np.asarray(basis_or_alg, dtype=complex))

    mu = annihilating_functional(alg.basis)
    if mu is None:
        return {"branch": "dense", "mu": None,
                "detail": "span is all of C^n; nothing to annihilate it"}

    order = sorted(range(len(mu)), key=lambda i: (-abs(mu[i]), i))
    total = float(np.sum(np.abs(mu)))
    head = 0.0
    n0 = 0
    # strict head rule with a guard so rounding ties (head exactly 2/3)
    # cannot produce a vacuous pairing bound
    limit = (2.0 / 3.0) * total * (1.0 + 1e-9)
    for i in order:
        head += abs(mu[i])
        n0 += 1
        if head > limit:
            break
    head_idx = order[:n0]
    tail_mass = total - head
    bound_value = head - norm_bound * tail_mass

    subset = [i + 1 for i in head_idx]
    targets = np.array([np.conj(mu[i]) / abs(mu[i]) for i in head_idx])

    report = {
        "mu": [complex(z) for z in mu],
        "n0": n0,
        "head_mass": head,
        "tail_mass": tail_mass,
        "pairing_lower_bound": bound_value,
        "subset": subset,
    }
    try:
        result = np_norm_generic(alg, subset, targets, tolerance=1e-9)
    except InfeasibleCoset:
        report["branch"] = "interpolation_impossible"
        report["detail"] = ("the proper subspace cannot interpolate the sign "
                            "pattern at all")
        return report

    if result.upper > norm_bound + tolerance:
        report["branch"] = "no_bounded_interpolant"
        report["np_value"] = result.upper
        report["detail"] = (f"minimal interpolant norm {result.upper:.6f} "
                            f"exceeds {norm_bound}; the sup-norm property "
                            "fails on this subspace")
        return report

    # a norm <= 2 interpolant exists: its pairing with mu must vanish by
    # annihilation yet be >= head - 2*tail > 0 by construction — impossible,
    # so reaching this branch means an internal inconsistency
    x = np.array([complex(v[0], v[1]) for v in result.certificate["minimizer"]])
    pairing = complex(np.sum(mu * x))
    report["branch"] = "annihilation_contradiction"
    report["np_value"] = result.upper
    report["pairing"] = pairing
    report["detail"] = ("found a bounded interpolant whose pairing "
                        f"{abs(pairing):.3e} should exceed "
                        f"{bound_value:.3e} but annihilation forces 0")
    return report
