"""Chebyshev machinery against the recurrences and matrix oracles."""

import random

import pytest

from markoff_padic.chebyshev import (
    Mat2,
    chebyshev_T,
    chebyshev_T_at,
    chebyshev_U,
    chebyshev_U_at,
    companion,
    companion_derivative,
    companion_derivative_border,
    companion_derivative_formula,
    companion_power,
    fixed_point_Tp,
    rotation_order,
    verify_companion_estimates,
    verify_power_sum_identity,
)
from markoff_padic.padic import PadicInt


def test_initials_and_small_values():
    p, k = 7, 3
    assert chebyshev_T(0, p, k).coeffs == (2,)
    assert chebyshev_T(1, p, k).coeffs == (0, 1)
    assert chebyshev_U(0, p, k).coeffs == (1,)
    assert chebyshev_U(-1, p, k).coeffs == ()
    assert chebyshev_U(-2, p, k).coeffs == ((-1) % 343,)


def test_T5_unrolled_by_hand():
    # T2 = x^2-2, T3 = x^3-3x, T4 = x^4-4x^2+2, T5 = x^5-5x^3+5x
    got = chebyshev_T(5, 7, 3)
    assert got.coeffs == (0, 5, 0, (-5) % 343, 0, 1)


def test_U4_at_3():
    # recurrence oracle: 1, 3, 8, 21, 55
    seq = [1, 3]
    for _ in range(3):
        seq.append(3 * seq[-1] - seq[-2])
    assert seq[-1] == 55
    assert chebyshev_U_at(PadicInt(11, 2, 3), 4).residue == 55


def test_recurrences_coefficient_level():
    for p, k in ((5, 3), (13, 2)):
        ts = [chebyshev_T(n, p, k) for n in range(-1, 201)]
        us = [chebyshev_U(n, p, k) for n in range(-1, 201)]
        for n in range(2, 201):
            assert ts[n + 1] == ts[n].shift_x() - ts[n - 1]
            assert us[n + 1] == us[n].shift_x() - us[n - 1]


def test_symmetries():
    p, k = 7, 2
    for n in range(201):
        assert chebyshev_T(-n, p, k) == chebyshev_T(n, p, k)
        assert chebyshev_U(-n - 2, p, k) == chebyshev_U(n, p, k) * (-1)


def test_degree_cap():
    with pytest.raises(ValueError, match="cap"):
        chebyshev_T(10_001, 5, 1)


def test_companion_power_examples():
    p, k = 11, 2
    x = PadicInt(p, k, 3)
    assert companion_power(x, 0).congruent_to(Mat2.identity(p, k))
    c1 = companion_power(x, 1)
    assert [e.residue for e in c1.entries()] == [3, (-1) % 121, 1, 0]
    # oracle: four explicit multiplications
    m = Mat2.identity(p, k)
    for _ in range(4):
        m = m @ companion(x)
    c4 = companion_power(x, 4)
    assert c4.congruent_to(m)
    assert [e.residue for e in c4.entries()] == [55, (-21) % 121, 21, (-8) % 121]


def test_companion_entries_match_U_formula():
    # oracle: the scalar recurrence u_n = x u_{n-1} - u_{n-2}
    rng = random.Random(5)
    p, k = 13, 2
    for _ in range(50):
        x = PadicInt(p, k, rng.randrange(p**k))
        m = Mat2.identity(p, k)
        c = companion(x)
        u = [PadicInt(p, k, -1), PadicInt(p, k, 0), PadicInt(p, k, 1)]  # U_{-2..0}
        for n in range(201):
            want = (u[n + 2], -u[n + 1], u[n + 1], -u[n])
            assert m.entries() == want
            assert m.det().residue == 1
            m = m @ c
            u.append(x * u[-1] - u[-2])
        for n in (0, 1, 57, 200):
            assert companion_power(x, n).entries() == (
                u[n + 2],
                -u[n + 1],
                u[n + 1],
                -u[n],
            )


def test_trace_is_T():
    p, k = 7, 3
    for r in range(7):
        x = PadicInt(p, k, r)
        assert chebyshev_T_at(x, 9) == chebyshev_T(9, p, k)(x)


def test_derivative_finite_difference_vs_border_formula():
    p, k = 7, 5
    d = companion_derivative(PadicInt(p, k, 2), 3, step=2)
    want = companion_derivative_border(1, 3, p, 2)
    assert d.congruent_to(want, 2)
    assert [e.residue for e in d.entries()] == [10, (-4) % 49, 4, (-1) % 49]
    dm = companion_derivative(PadicInt(p, k, p**k - 2), 3, step=2)
    wm = companion_derivative_border(-1, 3, p, 2)
    assert dm.congruent_to(wm, 2)


def test_derivative_finite_difference_vs_closed_formula():
    p = 7
    x = PadicInt(p, 5, 1)
    d = companion_derivative(x, 6, step=2)
    want = companion_derivative_formula(x.truncate(2), 6)
    assert d.congruent_to(want, 2)


def test_derivative_of_constant_is_zero():
    d = companion_derivative(PadicInt(5, 5, 3), 0, step=2)
    assert all(e.residue == 0 for e in d.entries())


def test_derivative_precision_guard():
    with pytest.raises(ValueError, match="insufficient"):
        companion_derivative(PadicInt(5, 2, 3), 4, step=1)


def test_fixed_point_examples():
    assert fixed_point_Tp(PadicInt(7, 4, 2)).residue == 2
    assert fixed_point_Tp(PadicInt(7, 4, 0)).residue == 0
    # oracle: evaluate T_7(1) by the recurrence: lambda of order 6 divides 7-1
    t = [2, 1]
    for _ in range(6):
        t.append(1 * t[-1] - t[-2])
    assert t[7] % 7**4 == 1
    assert fixed_point_Tp(PadicInt(7, 4, 1)).residue == 1


def test_fixed_point_idempotent():
    rng = random.Random(17)
    for _ in range(30):
        p = rng.choice((5, 7, 13))
        x = PadicInt(p, 4, rng.randrange(p**4))
        f = fixed_point_Tp(x)
        assert fixed_point_Tp(f) == f
        assert f.residue % p == x.residue % p
        assert chebyshev_T_at(f, p) == f


def test_rotation_order_examples():
    # oracle: direct multiplication, no smaller divisor works
    c = companion(PadicInt(7, 2, 1))
    m = Mat2.identity(7, 2)
    orders = []
    for n in range(1, 7):
        m = m @ c
        if m.congruent_to(Mat2.identity(7, 2)):
            orders.append(n)
    assert orders == [6]
    assert rotation_order(fixed_point_Tp(PadicInt(7, 2, 1))) == 6
    assert rotation_order(fixed_point_Tp(PadicInt(5, 2, 0))) == 4
    with pytest.raises(ValueError, match="unipotent"):
        rotation_order(PadicInt(5, 2, 23))


def test_rotation_order_branch_independent():
    # the eigenvalue lambda solving l^2 - x1*l + 1 = 0 has the same
    # multiplicative order on either square-root branch of x1^2 - 4
    from markoff_padic.padic import legendre, sqrt

    def divisors(n):
        out = [d for d in range(1, n + 1) if n % d == 0]
        return out

    p, k = 13, 3
    pk = p**k
    half = (p * p - 1) // 2
    for r in range(p):
        if r in (2, p - 2):
            continue
        x1 = fixed_point_Tp(PadicInt(p, k, r))
        disc = x1 * x1 - 4
        if legendre(disc) != 1:
            continue
        s = sqrt(disc)
        inv2 = PadicInt(p, k, 2).invert()
        branches = [(x1 + s) * inv2, (x1 - s) * inv2]
        orders = [
            next(d for d in divisors(half) if pow(lam.residue, d, pk) == 1)
            for lam in branches
        ]
        assert orders[0] == orders[1] == rotation_order(x1)


def test_power_sum_identity():
    for p in (3, 5, 7, 11, 13):
        rep = verify_power_sum_identity(p, 3)
        assert rep["passed"], rep
    assert verify_power_sum_identity(7, 1)["frobenius_mod_p"]


def test_companion_estimates_paper_example():
    # C(2)^10 = I + 5[[2,-2],[2,-2]] mod 25, independent of u
    p, k = 5, 3
    for u in (0, 3):
        arg = PadicInt(p, k, 2 + p * u)
        got = companion_power(arg, 10)
        want = Mat2.identity(p, k) + Mat2(
            PadicInt(p, k, 2),
            PadicInt(p, k, -2),
            PadicInt(p, k, 2),
            PadicInt(p, k, -2),
        ).scale(p)
        assert got.congruent_to(want, 2)


def test_companion_estimates_vanishing_correction():
    # x0 = 1 is already the fixed point at p = 7, so C(1)^24 = I mod 49
    got = companion_power(PadicInt(7, 3, 1), 24)
    assert got.congruent_to(Mat2.identity(7, 3), 2)


def test_companion_estimates_sampled():
    rng = random.Random(23)
    for p in (5, 7):
        k = 3
        us = list(range(p)) + [rng.randrange(p * p) for _ in range(20)]
        for x0 in range(p):
            rep = verify_companion_estimates(PadicInt(p, k, x0), us)
            assert rep["passed"], rep


def test_companion_estimates_precision_guard():
    with pytest.raises(ValueError, match="precision"):
        verify_companion_estimates(PadicInt(5, 2, 1), [0])
