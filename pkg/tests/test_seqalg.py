import numpy as np
import pytest

from picknorm import (
    CertificateRejected,
    DualCertificate,
    SolverStall,
    TailBoundFailure,
    analytic_wiener_certificate,
    dual_certificate_check,
    l1_torus_certificate,
    np_norm_analytic_wiener,
    np_norm_l1_torus,
    np_norm_wiener,
    wiener_certificate,
)
from picknorm.seqalg import common_period, plan_for_analytic

SQRT2 = np.sqrt(2.0)


# ----------------------------------------------------------------------
# one-sided coefficient algebra
# ----------------------------------------------------------------------

def test_analytic_two_site_contraction():
    r = np_norm_analytic_wiener([0, 0.5], [0, 0.25], 1e-6)
    assert r.lower <= 0.5 <= r.upper
    assert r.upper - r.lower <= 1e-6


def test_analytic_single_site_constant():
    # sum c_k 2^{-k} = 1 forces sum |c_k| >= 1, attained by c_0 = 1
    r = np_norm_analytic_wiener([0.5], [1.0], 1e-6)
    assert r.lower == pytest.approx(1.0, abs=1e-6)
    assert r.upper == pytest.approx(1.0, abs=1e-9)


def test_analytic_zero_targets():
    r = np_norm_analytic_wiener([0, 0.5], [0, 0], 1e-9)
    assert r.lower == r.upper == 0.0


def test_analytic_ratio_identity_grid():
    # sites (0, r), targets (0, s): the single monomial s/r z is optimal
    for r_ in (0.2, 0.5, 0.8):
        for s_ in (0.1, 0.45, 0.9):
            res = np_norm_analytic_wiener([0, r_], [0, s_], 1e-7)
            assert res.lower <= s_ / r_ + 1e-7
            assert res.upper >= s_ / r_ - 1e-7
            assert res.upper - res.lower <= 1e-7


def test_analytic_boundary_tail_failure():
    # targets needing norm above the floor cannot be dual-certified when a
    # site sits on the unit circle
    with pytest.raises(TailBoundFailure):
        np_norm_analytic_wiener([1.0, -1.0], [1.0, 1.0j], 1e-6)


def test_analytic_boundary_floor_attained():
    r = np_norm_analytic_wiener([1.0, -1.0], [1.0, -1.0], 1e-6)
    assert r.lower == pytest.approx(1.0, abs=1e-9)
    assert r.upper - r.lower <= 1e-6


def test_truncation_plan_tail_bound():
    plan = plan_for_analytic([0.3, 0.9], 1e-10)
    r = 0.9
    assert r ** (plan.degree + 1) / (1 - r) <= 1e-10
    assert plan.grid_size >= 16 * plan.degree


def test_analytic_certificate_weak_duality():
    rng = np.random.default_rng(8)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        lam = rng.uniform(0, 0.8, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        while len(set(lam.tolist())) < n:
            lam = rng.uniform(0, 0.8, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        res = np_norm_analytic_wiener(lam, a, 1e-5)
        assert res.lower <= res.upper + 1e-12
        assert res.lower >= float(np.max(np.abs(a))) - 1e-7


def test_analytic_upper_history_monotone():
    res = np_norm_analytic_wiener([0.1, 0.5, -0.3j], [1, -1, 1j], 1e-8)
    hist = res.certificate["upper_history"]
    for prev, cur in zip(hist, hist[1:]):
        assert cur <= prev + 1e-8


# ----------------------------------------------------------------------
# two-sided coefficient algebra
# ----------------------------------------------------------------------

def test_wiener_antipodal_signs():
    r = np_norm_wiener([0, np.pi], [1, -1], 1e-6)
    assert r.lower == pytest.approx(1.0, abs=1e-6)
    assert r.upper == pytest.approx(1.0, abs=1e-6)


def test_wiener_single_site():
    r = np_norm_wiener([0.0], [2.0], 1e-6)
    assert r.lower == pytest.approx(2.0, abs=1e-9)
    assert r.upper == pytest.approx(2.0, abs=1e-9)


def test_wiener_third_roots_value():
    # residues mod 3 reduce the problem to three coefficients; the dual
    # vector (1, -1)/sqrt(3) certifies 2/sqrt(3)
    r = np_norm_wiener([0, 2 * np.pi / 3], [1, -1], 1e-6)
    want = 2 / np.sqrt(3)
    assert r.lower <= want + 1e-9
    assert r.upper >= want - 1e-9
    assert r.upper - r.lower <= 1e-6


def test_wiener_period_detection():
    assert common_period([0.0, np.pi]) == 2
    assert common_period([0.0, 2 * np.pi / 3]) == 3
    assert common_period([0.0, 1.0]) is None


def test_wiener_incommensurate_bracket():
    # e^{i 22} is nearly -1, so degree 32 already brings the mass near the
    # floor; the certificate stays window-limited
    r = np_norm_wiener([0.0, 1.0], [1.0, -1.0], 1e-4)
    assert r.lower == pytest.approx(1.0, abs=1e-12)
    assert r.upper <= 1.0 + 1e-4
    assert r.certificate["window_limited_dual"]["meta"]["window_limited"]


def test_wiener_incommensurate_stall_carries_bracket():
    with pytest.raises(SolverStall) as info:
        np_norm_wiener([0.0, 1.0], [1.0, -1.0], 1e-9)
    partial = info.value.partial
    assert partial is not None
    assert partial.lower == pytest.approx(1.0, abs=1e-12)
    assert partial.upper >= partial.lower


# ----------------------------------------------------------------------
# integrable functions with pinned coefficients
# ----------------------------------------------------------------------

def test_torus_single_coefficient():
    r = np_norm_l1_torus([0], [1.0], 1e-6)
    assert r.lower == pytest.approx(1.0, abs=1e-9)
    assert r.upper == pytest.approx(1.0, abs=1e-9)


def test_torus_adjacent_ones():
    # dual polynomial b = (1, 0) is constant of modulus one, so the value
    # is the floor; the unit point mass at angle 0 attains it
    r = np_norm_l1_torus([0, 1], [1, 1], 1e-5)
    assert r.lower == pytest.approx(1.0, abs=1e-12)
    assert r.upper <= 1.0 + 1e-5


def test_torus_three_coefficient_value():
    # the optimal dual polynomial is -i e^{i t}(i + sin t)/sqrt(2): modulus
    # sqrt((1 + sin^2 t)/2) <= 1 with objective sqrt(2); the matching
    # measure puts weights (1 +- i)/2 at +-pi/2, so the norm is sqrt(2)
    r = np_norm_l1_torus([0, 1, 2], [1, 1, -1], 1e-5)
    assert r.lower <= SQRT2 <= r.upper + 1e-12
    assert r.upper - r.lower <= 1e-5
    assert r.upper == pytest.approx(SQRT2, abs=1e-5)


def test_torus_uniform_grid_cross_check():
    # independent oracle: atoms on a uniform grid (containing +-pi/2) with
    # magnitude phases taken from the hand-derived optimal dual polynomial
    # q(t) = -i e^{it}(i + sin t)/sqrt(2); the restricted minimum is sqrt(2)
    from picknorm import _lp

    ks = np.array([0, 1, 2])
    a = np.array([1.0, 1.0, -1.0], dtype=complex)
    m = 512
    cands = (2 * np.pi / m) * np.arange(m)
    A = np.exp(-1j * np.outer(ks, cands))
    qstar = -1j * np.exp(1j * cands) * (1j + np.sin(cands)) / SQRT2
    _, _, upper, _ = _lp.min_weighted_l1(A, a, gap_tol=1e-10, max_rounds=40,
                                         phase_hints=np.angle(qstar))
    assert upper == pytest.approx(SQRT2, abs=1e-9)
    assert upper >= SQRT2 - 1e-12


def test_torus_zero_targets():
    r = np_norm_l1_torus([0, 1], [0, 0], 1e-9)
    assert r.lower == r.upper == 0.0


def test_torus_floor():
    rng = np.random.default_rng(9)
    for _ in range(15):
        n = int(rng.integers(1, 4))
        ks = rng.choice(np.arange(-4, 5), size=n, replace=False)
        a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        try:
            r = np_norm_l1_torus(ks, a, 1e-2)
        except SolverStall as exc:
            r = exc.partial
        assert r.lower >= float(np.max(np.abs(a))) - 1e-7
        assert r.lower <= r.upper + 1e-12


# ----------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------

def test_constant_dual_polynomial_accepted():
    cert = l1_torus_certificate([0, 1], [1, 1], [1.0, 0.0])
    assert cert.certified_sup == 1.0
    assert cert.bound == pytest.approx(1.0, abs=0)
    assert dual_certificate_check(cert) >= 1.0 - 1e-12


def test_hand_certificate_three_coefficients():
    b = np.array([1, 1, -1]) / np.sqrt(5)
    cert = l1_torus_certificate([0, 1, 2], [1, 1, -1], b, tolerance=1e-6)
    want = 3 / np.sqrt(5)
    assert cert.bound >= want - 1e-6
    assert dual_certificate_check(cert) >= want - 1e-6


def test_scaled_certificate_rejected():
    b = np.array([1, 1, -1]) / np.sqrt(5)
    cert = l1_torus_certificate([0, 1, 2], [1, 1, -1], b, tolerance=1e-4)
    lie = DualCertificate(tuple(10 * b), cert.certified_sup,
                          10 * cert.bound, cert.meta)
    with pytest.raises(CertificateRejected):
        dual_certificate_check(lie)


def test_analytic_certificate_recheck():
    lam = np.array([0.0, 0.5])
    a = np.array([0.0, 0.25])
    cert = analytic_wiener_certificate(lam, a, [-2.0, 2.0], window=64)
    assert cert.bound == pytest.approx(0.5, abs=1e-12)
    assert dual_certificate_check(cert) >= cert.bound - 1e-12


def test_wiener_certificate_periodic_exact():
    th = [0.0, 2 * np.pi / 3]
    b = np.array([1.0, -1.0]) / np.sqrt(3)
    cert = wiener_certificate(th, [1, -1], b, period=3)
    assert cert.certified_sup == pytest.approx(1.0, abs=1e-12)
    assert cert.bound == pytest.approx(2 / np.sqrt(3), abs=1e-12)
    assert dual_certificate_check(cert) == pytest.approx(cert.bound, abs=1e-12)


def test_floor_certificates_single_coordinate():
    # the j-th coordinate dual vector certifies |a_j| on all three backends
    cert = analytic_wiener_certificate([0.3, 0.8], [2.0, 1.0], [1.0, 0.0])
    assert cert.bound == pytest.approx(2.0, abs=1e-12)
    cert = wiener_certificate([0.0, np.pi / 2], [1.5, 1.0], [1.0, 0.0], period=4)
    assert cert.bound == pytest.approx(1.5, abs=1e-12)
    cert = l1_torus_certificate([2, 7], [0.5, 2.5], [0.0, 1.0])
    assert cert.bound == pytest.approx(2.5, abs=1e-12)
