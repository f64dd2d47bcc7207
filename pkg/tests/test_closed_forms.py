import math

import numpy as np
import pytest

from riccati_flow import closed_forms as cf
from riccati_flow.errors import BoundaryEscape, DomainError, PreconditionError, SingularityError
from riccati_flow.riccati_core import VorticitySample, integrate, riccati_rhs, rk4


@pytest.mark.parametrize("w, b, expected", [
    ((0, 1, 0), 0, (0.5, 0, 0.5)),
    ((1, 1, 0), 0, (1, 0, 0)),
    ((0, 1, 1), 1, (0.5, 0, 1)),
])
def test_riccati_coefficients(w, b, expected):
    c = cf.riccati_coefficients(VorticitySample(*w), b, 0.0)
    assert (c.A, c.B, c.D) == pytest.approx(expected, abs=1e-15)


def test_riccati_coefficients_reproduce_a_equation():
    rng = np.random.default_rng(3)
    for _ in range(50):
        w = rng.uniform(0.2, 2, 3) * rng.choice([-1, 1], 3)
        a, b = rng.uniform(-2, 2, 2)
        da, db = riccati_rhs((a, b), w)
        c = cf.riccati_coefficients(VorticitySample(*w), b, db)
        assert c.rhs(a) == pytest.approx(da, rel=1e-12, abs=1e-12)


def test_riccati_coefficients_need_wy():
    with pytest.raises(DomainError):
        cf.riccati_coefficients(VorticitySample(1, 0, 0), 0, 0)


def test_bernoulli_examples():
    assert cf.bernoulli_case_solve(1, 0, 0, 0, 1, 1.0, 0.5) == pytest.approx(2.0, rel=1e-15)
    assert cf.bernoulli_case_solve(1, -3, 2, 1, 1, 1.5, 0.0) == 1.5
    for t in (0.3, 1.0, 2.5):
        assert cf.bernoulli_case_solve(1, -3, 2, 1, 1, 1.5, t) == pytest.approx(1 + 1 / (1 + math.exp(t)), abs=1e-14)
    assert cf.bernoulli_case_solve(1, -3, 2, 1, 1, 1.5, 60.0) == pytest.approx(1.0, abs=1e-12)


def test_bernoulli_preconditions():
    with pytest.raises(PreconditionError):
        cf.bernoulli_case_solve(1, 0, 1, 1, 1, 0.0, 1.0)
    with pytest.raises(PreconditionError):
        cf.bernoulli_case_solve(1, 0, 0, 0, 0, 0.0, 1.0)
    with pytest.raises(SingularityError):
        cf.bernoulli_case_solve(1, 0, 0, 0, 1, 1.0, 1.5)


def test_algebraic_examples():
    one, two, four = (lambda t: 1.0), (lambda t: 2.0), (lambda t: 4.0)
    assert cf.algebraic_case_solution(one, two, 0.0) == -1.0
    assert cf.algebraic_case_solution(two, four, 3.0) == -1.0
    assert cf.check_condition_44(one, two, one, 0.0)
    B = lambda t: 2 * math.exp(t)
    D = lambda t: math.exp(2 * t) - math.exp(t)
    assert cf.algebraic_case_solution(one, B, 0.7) == pytest.approx(-math.exp(0.7), rel=1e-15)
    assert cf.check_condition_44(one, B, D, 0.7)
    assert cf.check_condition_44(one, B, D, 0.7, d_ratio=lambda t: 2 * math.exp(t))
    assert not cf.check_condition_44(one, B, lambda t: 0.0, 0.7)
    with pytest.raises(DomainError):
        cf.algebraic_case_solution(lambda t: 0.0, two, 0.0)


def test_algebraic_time_varying_solves_ode():
    B = lambda t: 2 * math.exp(t)
    D = lambda t: math.exp(2 * t) - math.exp(t)
    a = lambda t: cf.algebraic_case_solution(lambda s: 1.0, B, t)
    h = 1e-5
    for t in (0.1, 0.5, 0.9):
        lhs = (a(t + h) - a(t - h)) / (2 * h)
        assert lhs == pytest.approx(a(t) ** 2 + B(t) * a(t) + D(t), abs=1e-6)


@pytest.mark.parametrize("A, B, D, delta, eps, a0", [
    (1, -3, 2, 1, 1, 1.5),
    (1, 0, 0, 0, 1, 0.5),
    (-0.5, 0.2, 0.3, 1, 1, 0.0),
])
def test_bernoulli_matches_rk4(A, B, D, delta, eps, a0):
    traj = rk4(lambda t, a: A * a * a + B * a + D, a0, (0.0, 1.0), 1e-3)
    closed = np.array([cf.bernoulli_case_solve(A, B, D, delta, eps, a0, t) for t in traj.times])
    assert np.max(np.abs(closed - traj.states)) <= 1e-8


@pytest.mark.parametrize("wz, t, a, b", [
    (1.0, math.pi / 2, 1.0, 0.0),
    (0.0, 1.3, 0.0, 1.0),
    (1.0, math.pi / 6, 0.5, math.sqrt(3) / 2),
])
def test_circle_examples(wz, t, a, b):
    s = cf.circle_solution(lambda s: wz * s, t)
    assert (s.a, s.b) == pytest.approx((a, b), abs=1e-15)
    assert s.a ** 2 + s.b ** 2 == pytest.approx(1.0, abs=4.5e-16)


def test_circle_matches_rk4():
    lam = 0.7
    closed = lambda t: cf.circle_solution(lambda s: s + 0.25 * s * s, t)
    w = lambda t: (lam * closed(t).a, lam * closed(t).b, 1 + 0.5 * t)
    traj = integrate(closed(0.0), w, (0.0, 1.2), 1e-3)
    ref = np.array([[closed(t).a, closed(t).b] for t in traj.times])
    assert np.max(np.abs(ref - traj.states)) <= 1e-6


def test_tangent_examples():
    assert cf.tangent_solution(1.0, 0.0) == 0.0
    assert cf.tangent_solution(1.0, 1.0) == pytest.approx(math.tan(1 / math.sqrt(2)) / math.sqrt(2), rel=1e-15)
    assert cf.tangent_solution(1.0, 1.0) == pytest.approx(0.6042301210686, abs=1e-12)
    h = 1e-6
    slope = (cf.tangent_solution(1.0, h) - cf.tangent_solution(1.0, -h)) / (2 * h)
    assert slope == pytest.approx(0.5, abs=1e-9)


def test_tangent_printed_form_differs():
    assert cf.tangent_solution(1.0, 1.0, convention="printed") == pytest.approx(math.tan(1.0) / 2, rel=1e-15)


def test_tangent_singularity():
    with pytest.raises(SingularityError):
        cf.tangent_solution(1.0, math.pi / math.sqrt(2))
    with pytest.raises(ValueError):
        cf.tangent_solution(1.0, 0.1, convention="other")


@pytest.mark.parametrize("alpha", [0.5, 1.0, -2.0])
def test_tangent_closed_form_solves_reduced_ode(alpha):
    h = 1e-5
    for t in (0.1, 0.4, 0.7):
        a = cf.tangent_solution(alpha, t)
        da = (cf.tangent_solution(alpha, t + h) - cf.tangent_solution(alpha, t - h)) / (2 * h)
        assert da == pytest.approx(cf.tangent_rhs(alpha, 1.0, a), abs=1e-6)


def test_elliptic_examples():
    assert cf.elliptic_case_solve(2.0, lambda a, s: 0.0, lambda t: -1.0, 1.0, 0.0) == 1.0
    # sqrt(4 - a^2) = 2 - 1.5 t
    a = cf.elliptic_case_solve(2.0, lambda a, s: 0.0, lambda t: -1.0, 0.0, 2 / 3)
    assert a == pytest.approx(math.sqrt(3), abs=1e-10)
    assert cf.elliptic_case_solve(1.0, lambda a, s: 0.0, lambda s: 2.0, 0.4, 3.0) == 0.4


def test_elliptic_matches_rk4():
    C = 2.0
    R = lambda a, s: 0.3 * a * s * s
    wx = lambda t: -1.0 - 0.2 * t
    traj = rk4(cf.elliptic_system_rhs(C, R, wx), np.array([1.0, math.sqrt(3)]), (0.0, 0.5), 1e-4)
    for t, (a, b) in list(zip(traj.times, traj.states))[::1000]:
        assert cf.elliptic_case_solve(C, R, wx, 1.0, t) == pytest.approx(a, abs=1e-6)
        assert a * a + b * b == pytest.approx(C * C, abs=1e-8)


def test_elliptic_escape():
    with pytest.raises(BoundaryEscape):
        cf.elliptic_case_solve(2.0, lambda a, s: 0.0, lambda s: -1.0, 1.0, 5.0)
    with pytest.raises(DomainError):
        cf.elliptic_case_solve(2.0, lambda a, s: 0.0, lambda s: -1.0, 2.5, 1.0)


def test_decaying_tangent_limit():
    lim = cf.tangent_decaying_limit(1.0, 1.0, 1.0)
    assert lim.a == pytest.approx(cf.tangent_solution(1.0, 1.0), rel=1e-15)
    late = cf.tangent_decaying_state(1.0, 1.0, 1.0, 40.0)
    assert late.a == pytest.approx(lim.a, abs=1e-15)
    with pytest.raises(DomainError):
        cf.tangent_decaying_limit(1.0, 1.0, 0.0)
