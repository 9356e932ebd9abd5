import random

import pytest

from ellipticdt.dtseries import (
    F1F2,
    PointConfig,
    SurfaceData,
    behrend_transform,
    connected,
    dt_fib,
    dt_hat,
    f_d,
    f_d_compare,
    f_d_series,
    g_of,
    h_of,
    identity_a,
    identity_b,
    identity_c,
    symprod_check,
)
from ellipticdt.series import (
    HalfLaurent,
    PQSeries,
    compare,
    invert,
    linear_factor,
    macmahon,
    power,
    ring_op,
    substitute_neg_p,
)


def test_surface_data_validation():
    SurfaceData(2, 24)
    SurfaceData(-2, 12)
    with pytest.raises(ValueError):
        SurfaceData(1, 12)


def test_point_config_validation():
    pc = PointConfig((2, 1), (1,))
    assert pc.degree() == 4
    with pytest.raises(ValueError):
        PointConfig((0,), ())


def test_f2_is_plane_partition_series():
    _, f2 = F1F2(6)
    assert [f2.coeffs[0][2 * n] for n in range(4)] == [1, 1, 3, 6]


def test_f1_leading_term_and_ratio():
    f1, _ = F1F2(6)
    assert f1.coeffs[0].min_exp() == 1
    assert f1.coeffs[0][1] == 1
    # oracle: divide the one-box-leg counts 1,2,5 by 1,1,3 and multiply back
    num = PQSeries.constant(HalfLaurent({0: 1, 2: 2, 4: 5}), 0)
    den = PQSeries.constant(HalfLaurent({0: 1, 2: 1, 4: 3}), 0, window=(0, 4))
    ratio = ring_op("mul", num.with_p_hi(4), invert(den))
    back = ring_op("mul", ratio, den)
    assert [back.coeffs[0][2 * k] for k in range(3)] == [1, 2, 5]
    expected = [ratio.coeffs[0][2 * k] for k in range(3)]
    assert expected == [1, 1, 1]
    shifted = f1.shift_p(-1)
    assert [shifted.coeffs[0][2 * k] for k in range(3)] == expected


def q_coefficient_of_product(d, order):
    """Oracle for h(d): coefficient of q^d in prod M(p,q^k)/((1-p q^k)(1-p^(-1) q^k))."""
    pw = (-(2 * order + 2), 2 * order + 2)
    out = PQSeries.one(d)
    for k in range(1, d + 1):
        out = out * macmahon(d, pw, shift=k)
        out = out * linear_factor(1, k, -1, d, pw)
        out = out * linear_factor(-1, k, -1, d, pw)
    return out.coeffs[d]


def g_q_coefficient_of_product(d, order):
    """Oracle for g(d): coefficient of q^d in prod (1-q^k)/((1-p q^k)(1-p^(-1) q^k))."""
    pw = (-(2 * order + 2), 2 * order + 2)
    out = PQSeries.one(d)
    for k in range(1, d + 1):
        out = out * linear_factor(0, k, 1, d, pw)
        out = out * linear_factor(1, k, -1, d, pw)
        out = out * linear_factor(-1, k, -1, d, pw)
    return out.coeffs[d]


def test_g_values():
    assert g_of(0, 6).items() == [(0, 1)]
    assert g_of(1, 8).items() == [(-2, 1), (0, -1), (2, 1)]
    # cross-check against the product-side oracle on the guaranteed range
    for a in (1, 2, 3):
        got = g_of(a, 8)
        want = g_q_coefficient_of_product(a, 8)
        for e in range(-2 * a, 2 * (8 - a) + 1):
            assert got[e] == want[e]


def test_h_values():
    assert h_of(0, 6).items() == [(0, 1)]
    got = h_of(1, 8)
    # frozen from the product oracle: p^(-1) + 2p + 2p^2 + 3p^3 + ...
    assert got[-2] == 1 and got[0] == 0 and got[2] == 2 and got[4] == 2 and got[6] == 3
    for b in (1, 2):
        got = h_of(b, 8)
        want = q_coefficient_of_product(b, 8)
        for e in range(-2 * b, 2 * (8 - b) + 1):
            assert got[e] == want[e]


def test_f_d_degree_zero():
    surf = SurfaceData(2, 12)
    f1, f2 = F1F2(8)
    want = power(f1, 2) * power(f2, 12)
    got = f_d_series(PointConfig((), ()), surf, 8)
    assert compare(got, want).equal


def test_f_d_single_smooth_point():
    surf = SurfaceData(2, 12)
    f1, f2 = F1F2(8)
    g1 = PQSeries.constant(g_of(1, 8), 0, window=(-2, 2 * 7))
    want = power(f1, 2) * power(f2, 12) * g1
    got = f_d_series(PointConfig((1,), ()), surf, 8)
    assert compare(got, want).equal


def test_f_d_cross_mode_and_symmetry():
    surf = SurfaceData(2, 12)
    rep = f_d_compare(PointConfig((1, 1), (1,)), surf, 8)
    assert rep.equal
    a = f_d(PointConfig((2, 1), (1,)), surf, 8)
    b = f_d(PointConfig((1, 2), (1,)), surf, 8)
    assert a == b
    a = f_d(PointConfig((1,), (2, 1, 1)), surf, 8, "strata")
    b = f_d(PointConfig((1,), (1, 2, 1)), surf, 8, "strata")
    assert a == b


def test_dt_hat_zero_surface():
    surf = SurfaceData(0, 0)
    for side in ("sum", "product"):
        ser = dt_hat(surf, 3, 6, side)
        assert ser.coeffs[0].items() == [(0, 1)]
        assert all(ser.coeffs[d].is_zero() for d in range(1, 4))


def test_dt_hat_k3_q0_lowest_term():
    ser = dt_hat(SurfaceData(2, 24), 2, 8, "product")
    q0 = ser.coeffs[0]
    assert q0.min_exp() == 2
    assert q0[2] == 1
    assert q0[4] == 26  # 24 from the box-count factor, 2 from (1-p)^(-2)


def test_dt_hat_cross_side():
    surf = SurfaceData(2, 12)
    rep = compare(dt_hat(surf, 3, 8, "sum"), dt_hat(surf, 3, 8, "product"))
    assert rep.equal


def test_dt_fib_rational_surface_fiber_series():
    surf = SurfaceData(2, 0)
    pw = (-10, 10)
    want = PQSeries.one(4)
    for d in range(1, 5):
        want = want * power(linear_factor(0, d, -1, 4, pw), 2)
    for side in ("sum", "product"):
        ser = dt_fib(surf, 4, 6, side)
        assert compare(ser, want).equal


def test_dt_fib_cross_side():
    surf = SurfaceData(2, 12)
    rep = compare(dt_fib(surf, 3, 8, "sum"), dt_fib(surf, 3, 8, "product"))
    assert rep.equal


def test_connected_cross_mode_and_trivial():
    surf = SurfaceData(2, 12)
    rep = compare(connected(surf, 3, 8, "ratio"), connected(surf, 3, 8, "jacobi"))
    assert rep.equal
    surf0 = SurfaceData(0, 0)
    ser = connected(surf0, 3, 6, "jacobi")
    assert ser.coeffs[0].items() == [(0, 1)]


def test_connected_k3_q0():
    ser = connected(SurfaceData(2, 24), 2, 8, "jacobi")
    q0 = ser.coeffs[0]
    for k in range(1, 7):
        assert q0[2 * k] == k
    assert q0[0] == 0 and q0[-2] == 0


def test_behrend_transform_examples():
    a = PQSeries.constant(HalfLaurent({2: 1, 4: 2}), 0, window=(0, 8))
    out = behrend_transform(a, 1)
    assert out.coeffs[0].items() == [(2, 1), (4, -2)]  # y - 2y^2 read in y
    out = behrend_transform(a, 0)
    assert compare(out, substitute_neg_p(a)).equal


def test_behrend_transform_k3():
    ser = dt_hat(SurfaceData(2, 24), 2, 8, "product")
    out = behrend_transform(ser, 2)
    q0 = out.coeffs[0]
    assert q0.min_exp() == 2 and q0[2] == -1


def test_behrend_involution_randomized():
    rng = random.Random(11)
    for _ in range(50):
        q_order = rng.randint(0, 3)
        rows = []
        for _ in range(q_order + 1):
            rows.append(HalfLaurent({2 * rng.randint(-4, 5): rng.randint(-9, 9) for _ in range(4)}))
        windows = [
            ((hl.min_exp(), hl.max_exp() + 2) if not hl.is_zero() else (None, None))
            for hl in rows
        ]
        a = PQSeries(q_order, rows, windows)
        chi = rng.randint(0, 3)
        assert compare(behrend_transform(behrend_transform(a, chi), chi), a).equal


def test_symprod_constant_table_matches_binomial_series():
    for e in range(-3, 4):
        table = {a: HalfLaurent({0: 1}) for a in range(1, 7)}
        rep = symprod_check(table, e, 6)
        assert rep.equal
        # and the right side is the binomial series (1-q)^(-e)
        want = power(linear_factor(0, 1, 1, 6, (0, 2)), -e)
        assert compare(rep.side_b, want).equal


def test_symprod_exponent_one():
    table = {1: HalfLaurent({-2: 3, 0: 1}), 2: HalfLaurent({2: -4})}
    rep = symprod_check(table, 1, 4)
    assert rep.equal
    assert rep.side_a.coeffs[1] == table[1]
    assert rep.side_a.coeffs[2] == table[2]
    assert rep.side_a.coeffs[3].is_zero()


def test_symprod_exponent_minus_one_single_weight():
    c = 5
    table = {1: HalfLaurent({0: c})}
    rep = symprod_check(table, -1, 5)
    assert rep.equal
    for d in range(6):
        assert rep.side_a.coeffs[d][0] == (-c) ** d


def test_symprod_randomized():
    rng = random.Random(12)
    for _ in range(20):
        table = {}
        for a in range(1, 5):
            table[a] = HalfLaurent(
                {2 * rng.randint(-2, 3): rng.randint(-5, 5) for _ in range(3)}
            )
        for e in range(-3, 4):
            assert symprod_check(table, e, 4).equal


def test_dt_hat_third_route_via_multinomial_sums():
    # assemble the symmetric-product integrals the long way (multinomial sums
    # over point-multiplicity tuples, the symprod LHS) from the real weight
    # tables; the comparison regions clip to the sum side's honest windows,
    # which coincide with the true knowledge of this route
    from ellipticdt.dtseries import _embed

    n_order, q_order = 10, 3
    for eb, es in ((2, 12), (2, 24)):
        surf = SurfaceData(eb, es)
        g_table = {a: g_of(a, n_order) for a in range(1, q_order + 1)}
        h_table = {b: h_of(b, n_order) for b in range(1, q_order + 1)}
        g_pow = symprod_check(g_table, eb - es, q_order).side_a
        h_pow = symprod_check(h_table, es, q_order).side_a
        f1, f2 = F1F2(n_order)
        third = power(_embed(f1, q_order), eb) * power(_embed(f2, q_order), es)
        third = third * g_pow * h_pow
        assert compare(third, dt_hat(surf, q_order, n_order, "sum")).equal


def test_identity_a_small():
    lhs, rhs = identity_a(3, 8)
    rep = compare(lhs, rhs)
    assert rep.equal
    # the small-order region really reaches negative and positive exponents
    assert rep.regions[3][0] <= -6 and rep.regions[3][1] >= 6


def test_identity_b_small():
    lhs, rhs = identity_b(3, 8)
    assert compare(lhs, rhs).equal


def test_identity_c_small():
    lhs, rhs = identity_c(3, 8)
    assert compare(lhs, rhs).equal
    # q^1 row is the two-box-leg ratio: 1 + p + 2p^2 + 3p^3 + ...
    assert [lhs.coeffs[1][2 * k] for k in range(4)] == [1, 1, 2, 3]
