"""Curve-counting partition functions of a local elliptic surface.

The sum side assembles everything from enumerated vertex values: the two
universal factors F1, F2, the per-point weights g (smooth fibers) and h (nodal
fibers), and the full generating functions over the symmetric products of the
base.  The product side expands the closed infinite-product forms.  The two
sides share nothing but the raw vertex enumeration, so their agreement is a
real check of the trace identities and of the assembly itself; the identity_a,
identity_b and identity_c checks isolate the three trace identities the
product forms rest on.

All p-exponents are in half-units (see series module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .partitions import BOX, EMPTY, enumerate_partitions
from .series import (
    HalfLaurent,
    PQSeries,
    compare,
    euler_product,
    invert,
    linear_factor,
    macmahon,
    macmahon_p,
    power,
    substitute_neg_p,
    theta,
)
from .vertex import LegConfig, tilde_vertex


@dataclass(frozen=True)
class SurfaceData:
    """Topological Euler characteristics of the base curve and the surface."""

    eB: int
    eS: int

    def __post_init__(self):
        if self.eB % 2:
            raise ValueError("eB must be even, got %d" % self.eB)


@dataclass(frozen=True)
class PointConfig:
    """Multiplicities at smooth-fiber points (a) and nodal-fiber points (b)."""

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if any(x < 1 for x in self.a) or any(x < 1 for x in self.b):
            raise ValueError("point multiplicities must be positive")

    def degree(self):
        return sum(self.a) + sum(self.b)


class _Tilde:
    """Normalized-vertex values as q-free series with window [0, 2*order]."""

    def __init__(self, order, cache=None):
        self.order = order
        self.cache = cache

    def __call__(self, lam, mu, nu):
        rec = tilde_vertex(LegConfig(lam, mu, nu), self.order, self.cache)
        return PQSeries.constant(rec.tilde_laurent(), 0, window=(0, 2 * self.order))


def _stack_q(parts):
    """Assemble q-free series (one per degree) into a single q-series."""
    coeffs = [p.coeffs[0] for p in parts]
    windows = [p.windows[0] for p in parts]
    return PQSeries(len(parts) - 1, coeffs, windows)


def _embed(series, q_order):
    """Pad a q-free series to the requested q-order with known-zero degrees."""
    return PQSeries.constant(series.coeffs[0], q_order, window=series.windows[0])


def F1F2(order, cache=None):
    """The two universal vertex factors.

    F1 = p^(1/2) V~(box)/V~(empty) lies in p^(1/2) Z[[p]]; F2 = V~(empty).
    """
    t = _Tilde(order, cache)
    f2 = t(EMPTY, EMPTY, EMPTY)
    f1 = (t(BOX, EMPTY, EMPTY) * invert(f2)).shift_p(1)
    return f1, f2


def _smooth_weight(a, t):
    """g(a) as a q-free series: the smooth-fiber weight summed over partitions of a."""
    if a == 0:
        return PQSeries.one(0)
    box_ratio = t(EMPTY, EMPTY, EMPTY) * invert(t(BOX, EMPTY, EMPTY))
    out = None
    for lam in enumerate_partitions(a):
        term = box_ratio * t(lam, BOX, EMPTY) * invert(t(lam, EMPTY, EMPTY))
        term = term.shift_p(-2 * lam.first_part())
        out = term if out is None else out + term
    return out


def _nodal_weight(b, t):
    """h(b) as a q-free series: the nodal-fiber weight summed over partitions of b."""
    if b == 0:
        return PQSeries.one(0)
    inv_box = invert(t(BOX, EMPTY, EMPTY))
    out = None
    for mu in enumerate_partitions(b):
        term = (
            t(mu, mu.conjugate(), EMPTY)
            * t(mu, BOX, EMPTY)
            * inv_box
            * invert(t(mu, EMPTY, EMPTY))
        )
        term = term.shift_p(-2 * mu.first_part())
        out = term if out is None else out + term
    return out


def g_of(a, order, cache=None):
    """The smooth-fiber weight g(a); exact on [-a, order-a] in whole p-units."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    return _smooth_weight(a, _Tilde(order, cache)).coeffs[0]


def h_of(b, order, cache=None):
    """The nodal-fiber weight h(b); exact on [-b, order-b] in whole p-units."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    return _nodal_weight(b, _Tilde(order, cache)).coeffs[0]


# ---------------------------------------------------------------------------
# The pushforward value at a fixed point configuration


def f_d_series(config, surf, order, mode="factored", cache=None):
    """Pushforward weight at a point configuration, as a windowed q-free series.

    factored: F1^eB * F2^eS * prod g(a_i) * prod h(b_j).
    strata:   the same value assembled stratum by stratum: p^(eB/2) times
              V~(empty)^(eS-eB+n) * V~(box)^(eB-n-m) times, per point, the sum
              over partitions of the local vertex weights (each punctured
              fiber contributing exponent -1).
    """
    t = _Tilde(order, cache)
    if mode == "factored":
        f1, f2 = F1F2(order, cache)
        out = power(f1, surf.eB) * power(f2, surf.eS)
        for a in config.a:
            out = out * _smooth_weight(a, t)
        for b in config.b:
            out = out * _nodal_weight(b, t)
        return out
    if mode != "strata":
        raise ValueError("mode must be 'factored' or 'strata'")
    n, m = len(config.a), len(config.b)
    out = power(t(EMPTY, EMPTY, EMPTY), surf.eS - surf.eB + n)
    out = out * power(t(BOX, EMPTY, EMPTY), surf.eB - n - m)
    out = out.shift_p(surf.eB)  # p^(chi of the base) with chi = eB/2
    for a in config.a:
        acc = None
        for lam in enumerate_partitions(a):
            term = t(lam, BOX, EMPTY) * invert(t(lam, EMPTY, EMPTY))
            term = term.shift_p(-2 * lam.first_part())
            acc = term if acc is None else acc + term
        out = out * acc
    for b in config.b:
        acc = None
        for mu in enumerate_partitions(b):
            term = (
                t(mu, BOX, EMPTY)
                * t(mu, mu.conjugate(), EMPTY)
                * invert(t(mu, EMPTY, EMPTY))
            )
            term = term.shift_p(-2 * mu.first_part())
            acc = term if acc is None else acc + term
        out = out * acc
    return out


def f_d(config, surf, order, mode="factored", cache=None):
    """The pushforward weight as a Laurent polynomial in p (see f_d_series)."""
    return f_d_series(config, surf, order, mode, cache).coeffs[0]


def f_d_compare(config, surf, order, cache=None):
    """Cross-mode comparison of the two f_d assemblies."""
    return compare(
        f_d_series(config, surf, order, "factored", cache),
        f_d_series(config, surf, order, "strata", cache),
    )


# ---------------------------------------------------------------------------
# Full partition functions


def _default_window(order):
    return (-(2 * order + 2), 2 * order + 2)


def _smooth_series(q_order, order, cache):
    t = _Tilde(order, cache)
    return _stack_q([_smooth_weight(a, t) for a in range(q_order + 1)])


def _nodal_series(q_order, order, cache):
    t = _Tilde(order, cache)
    return _stack_q([_nodal_weight(b, t) for b in range(q_order + 1)])


def dt_hat(surf, q_order, order, side="product", p_window=None, cache=None):
    """The box-weighted partition function for section-plus-fibers classes.

    sum:     F1^eB * F2^eS * G^(eB-eS) * H^eS with G, H the generating series
             of the g and h weights (the symmetric-product assembly).
    product: {M(p) prod_d M(p,q^d)/(1-q^d)}^eS *
             {(p^(1/2)-p^(-1/2))^(-1) prod_d (1-q^d)/((1-p q^d)(1-p^(-1) q^d))}^eB.
    """
    if side == "sum":
        f1, f2 = F1F2(order, cache)
        g_ser = _smooth_series(q_order, order, cache)
        h_ser = _nodal_series(q_order, order, cache)
        out = power(_embed(f1, q_order), surf.eB) * power(_embed(f2, q_order), surf.eS)
        out = out * power(g_ser, surf.eB - surf.eS)
        out = out * power(h_ser, surf.eS)
        return out
    if side != "product":
        raise ValueError("side must be 'sum' or 'product'")
    pw = p_window if p_window is not None else _default_window(order)
    s1 = macmahon_p(q_order, pw)
    for d in range(1, q_order + 1):
        s1 = s1 * macmahon(q_order, pw, shift=d)
        s1 = s1 * linear_factor(0, d, -1, q_order, pw)
    s2 = PQSeries.from_terms([(1, 1), (-1, -1)], q_order).with_p_hi(pw[1])
    s2 = invert(s2)
    for d in range(1, q_order + 1):
        s2 = s2 * linear_factor(0, d, 1, q_order, pw)
        s2 = s2 * linear_factor(1, d, -1, q_order, pw)
        s2 = s2 * linear_factor(-1, d, -1, q_order, pw)
    return power(s1, surf.eS) * power(s2, surf.eB)


def dt_fib(surf, q_order, order, side="product", p_window=None, cache=None):
    """The box-weighted partition function for pure fiber classes.

    sum:     V~(empty)^eS * (sum_lam q^(|lam|))^(eB-eS) *
             (sum_mu V~(mu,mu',empty)/V~(empty) q^(|mu|))^eS.
    product: {M(p) prod_d M(p,q^d)}^eS * {prod_d (1-q^d)^(-1)}^eB.
    """
    if side == "sum":
        t = _Tilde(order, cache)
        inv_empty = invert(t(EMPTY, EMPTY, EMPTY))
        rows = []
        for b in range(q_order + 1):
            acc = None
            for mu in enumerate_partitions(b):
                term = t(mu, mu.conjugate(), EMPTY) * inv_empty
                acc = term if acc is None else acc + term
            rows.append(acc)
        h_fib = _stack_q(rows)
        counts = PQSeries(
            q_order,
            [HalfLaurent({0: len(enumerate_partitions(d))}) for d in range(q_order + 1)],
            [(0, None)] * (q_order + 1),
        )
        out = power(_embed(t(EMPTY, EMPTY, EMPTY), q_order), surf.eS)
        out = out * power(counts, surf.eB - surf.eS)
        out = out * power(h_fib, surf.eS)
        return out
    if side != "product":
        raise ValueError("side must be 'sum' or 'product'")
    pw = p_window if p_window is not None else _default_window(order)
    s1 = macmahon_p(q_order, pw)
    for d in range(1, q_order + 1):
        s1 = s1 * macmahon(q_order, pw, shift=d)
    s2 = PQSeries.one(q_order)
    for d in range(1, q_order + 1):
        s2 = s2 * linear_factor(0, d, -1, q_order, pw)
    return power(s1, surf.eS) * power(s2, surf.eB)


def connected(surf, q_order, order, side="ratio", p_window=None, cache=None):
    """Generating series of the connected section-class invariants.

    ratio:  dt_hat / dt_fib on their product sides.
    jacobi: (prod_k (1-q^k))^(-eS) * Theta^(-eB); the q^(1/24) prefactor of the
            eta function cancels against the normalization by construction.
    """
    pw = p_window if p_window is not None else _default_window(order)
    if side == "ratio":
        num = dt_hat(surf, q_order, order, "product", pw, cache)
        den = dt_fib(surf, q_order, order, "product", pw, cache)
        return num * invert(den)
    if side != "jacobi":
        raise ValueError("side must be 'ratio' or 'jacobi'")
    ep = euler_product(q_order, pw)
    th = theta(q_order, pw).with_p_hi(pw[1])
    return power(ep, -surf.eS) * power(th, -surf.eB)


def behrend_transform(a, chi_os):
    """Weighted-to-signed change of variables: (-1)^chi_os times a at p -> -p.

    Reading the result in y gives the sign-weighted series; applying the same
    transform twice restores the input.
    """
    out = substitute_neg_p(a)
    return out.scale(-1) if chi_os % 2 else out


# ---------------------------------------------------------------------------
# Symmetric-product expansion check


def _generalized_multinomial(e, mults):
    """Integer coefficient e(e-1)...(e-M+1)/(m_1! m_2! ...) for M = sum(mults)."""
    total = sum(mults)
    ff = 1
    for i in range(total):
        ff *= e - i
    out = ff // math.factorial(total)
    rem = math.factorial(total)
    for m in mults:
        rem //= math.factorial(m)
    return out * rem


def symprod_check(g_table, e, q_order):
    """Check the symmetric-product expansion for a weight table g with g(0)=1.

    LHS expands sum_d q^d sum over multiplicity tuples (m_1, m_2, ...) with
    sum j*m_j = d of prod g(j)^(m_j) times the generalized multinomial
    coefficient of e; RHS is (sum_a g(a) q^a)^e.  Returns the comparison.
    """
    table = {int(a): hl for a, hl in g_table.items()}
    lhs_rows = [HalfLaurent({0: 1})]
    for d in range(1, q_order + 1):
        acc = HalfLaurent()
        for lam in enumerate_partitions(d):
            mults = {}
            for part in lam.parts:
                mults[part] = mults.get(part, 0) + 1
            prod = HalfLaurent({0: 1})
            ok = True
            for j, m in mults.items():
                gj = table.get(j)
                if gj is None or gj.is_zero():
                    ok = False
                    break
                prod = prod * gj.power(m)
            if not ok:
                continue
            coeff = _generalized_multinomial(e, list(mults.values()))
            acc = acc + prod.scale(coeff)
        lhs_rows.append(acc)
    lhs = PQSeries(
        q_order,
        lhs_rows,
        [
            ((row.min_exp(), None) if not row.is_zero() else (None, None))
            for row in lhs_rows
        ],
    )
    rhs_rows = [HalfLaurent({0: 1})] + [
        table.get(a, HalfLaurent()) for a in range(1, q_order + 1)
    ]
    base = PQSeries(
        q_order,
        rhs_rows,
        [
            ((row.min_exp(), None) if not row.is_zero() else (None, None))
            for row in rhs_rows
        ],
    )
    rhs = power(base, e)
    return compare(lhs, rhs)


# ---------------------------------------------------------------------------
# The three trace identities behind the product forms


def identity_a(q_order, order, cache=None, p_window=None):
    """Smooth-point trace identity: the g-weight series against its product form."""
    t = _Tilde(order, cache)
    rows = []
    for d in range(q_order + 1):
        acc = None
        for lam in enumerate_partitions(d):
            term = t(lam, BOX, EMPTY) * invert(t(lam, EMPTY, EMPTY))
            term = term.shift_p(-2 * lam.first_part())
            acc = term if acc is None else acc + term
        rows.append(acc)
    one_minus_p = PQSeries.from_terms([(0, 1), (2, -1)], q_order)
    lhs = _stack_q(rows) * one_minus_p
    pw = p_window if p_window is not None else _default_window(order)
    rhs = PQSeries.one(q_order)
    for d in range(1, q_order + 1):
        rhs = rhs * linear_factor(0, d, 1, q_order, pw)
        rhs = rhs * linear_factor(1, d, -1, q_order, pw)
        rhs = rhs * linear_factor(-1, d, -1, q_order, pw)
    return lhs, rhs


def identity_b(q_order, order, cache=None, p_window=None):
    """Nodal-point trace identity: the h-weight series against its product form."""
    t = _Tilde(order, cache)
    rows = []
    for d in range(q_order + 1):
        acc = None
        for mu in enumerate_partitions(d):
            term = (
                t(mu, mu.conjugate(), EMPTY)
                * t(mu, BOX, EMPTY)
                * invert(t(mu, EMPTY, EMPTY))
            )
            term = term.shift_p(-2 * mu.first_part())
            acc = term if acc is None else acc + term
        rows.append(acc)
    one_minus_p = PQSeries.from_terms([(0, 1), (2, -1)], q_order)
    lhs = _stack_q(rows) * one_minus_p
    pw = p_window if p_window is not None else _default_window(order)
    rhs = macmahon_p(q_order, pw)
    for d in range(1, q_order + 1):
        rhs = rhs * macmahon(q_order, pw, shift=d)
        rhs = rhs * linear_factor(1, d, -1, q_order, pw)
        rhs = rhs * linear_factor(-1, d, -1, q_order, pw)
    return lhs, rhs


def identity_c(q_order, order, cache=None, p_window=None):
    """Fiber-class trace identity: conjugate-leg vertex ratios against their product form."""
    t = _Tilde(order, cache)
    inv_empty = invert(t(EMPTY, EMPTY, EMPTY))
    rows = []
    for d in range(q_order + 1):
        acc = None
        for mu in enumerate_partitions(d):
            term = t(mu, mu.conjugate(), EMPTY) * inv_empty
            acc = term if acc is None else acc + term
        rows.append(acc)
    lhs = _stack_q(rows)
    pw = p_window if p_window is not None else _default_window(order)
    rhs = PQSeries.one(q_order)
    for d in range(1, q_order + 1):
        rhs = rhs * linear_factor(0, d, -1, q_order, pw)
        rhs = rhs * macmahon(q_order, pw, shift=d)
    return lhs, rhs
