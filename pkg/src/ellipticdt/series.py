"""Exact truncated series in two variables: Laurent in x = p^(1/2), power series in q.

All exponents of p are counted in half-units (the integer exponent of x), so
p^(3/2) is exponent 3 and p^(-1) is exponent -2.  Coefficients are unbounded
Python integers; nothing here is ever floating point.

Knowledge windows.  Each q-degree d of a PQSeries carries a window (lo, hi):

  * the true coefficient of q^d has no p-support below lo, and
  * its value is exactly known (stored) for every exponent <= hi.

``hi = None`` means the coefficient is known at every exponent (it then has
finite support), and ``lo = None`` means the coefficient is identically zero
(then hi is None as well).  Because coefficients below lo are known to vanish,
the knowledge region at degree d is the full ray (-inf, hi].  Windows are
tracked per q-degree: the series built from vertex sums have p-valuation
falling linearly with the q-degree, and a single rectangular window would
collapse to nothing under the large powers the surface formulas take.

Every ring operation computes the widest window on which the convolution of
exactly-known data is itself exact; an equality reported by ``compare`` is a
statement about exactly-known coefficients only.
"""

from __future__ import annotations

import math
from fractions import Fraction


class SeriesError(Exception):
    pass


class WindowExhausted(SeriesError):
    """Raised when a computation or comparison needs coefficients outside the known window."""


class NotInvertible(SeriesError):
    """Raised when a series has no integer-exact inverse on its window."""


# ---------------------------------------------------------------------------
# Laurent coefficients


class HalfLaurent:
    """A finite Laurent polynomial in x = p^(1/2) with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        c = {}
        for e, v in items:
            e, v = int(e), int(v)
            if v:
                w = c.get(e, 0) + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        self.c = c

    @classmethod
    def _raw(cls, c):
        out = object.__new__(cls)
        out.c = c
        return out

    def is_zero(self):
        return not self.c

    def min_exp(self):
        return min(self.c) if self.c else None

    def max_exp(self):
        return max(self.c) if self.c else None

    def items(self):
        return sorted(self.c.items())

    def __getitem__(self, e):
        return self.c.get(e, 0)

    def __add__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return HalfLaurent._raw(c)

    def __sub__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) - v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return HalfLaurent._raw(c)

    def __neg__(self):
        return HalfLaurent._raw({e: -v for e, v in self.c.items()})

    def __mul__(self, other):
        if not self.c or not other.c:
            return HalfLaurent._raw({})
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    del c[e]
        return HalfLaurent._raw(c)

    def scale(self, n):
        n = int(n)
        if not n:
            return HalfLaurent._raw({})
        return HalfLaurent._raw({e: n * v for e, v in self.c.items()})

    def shift(self, k):
        return HalfLaurent._raw({e + k: v for e, v in self.c.items()})

    def clip(self, hi):
        """Drop exponents above hi (hi None keeps everything)."""
        if hi is None:
            return self
        return HalfLaurent._raw({e: v for e, v in self.c.items() if e <= hi})

    def power(self, k):
        if k < 0:
            raise ValueError("HalfLaurent.power needs k >= 0")
        out = HalfLaurent({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, HalfLaurent) and self.c == other.c

    def pretty(self, var="p"):
        if not self.c:
            return "0"
        bits = []
        for e, v in self.items():
            if e == 0:
                term = str(abs(v))
            else:
                exp = Fraction(e, 2)
                pw = var if exp == 1 else "%s^%s" % (var, exp)
                term = pw if abs(v) == 1 else "%d*%s" % (abs(v), pw)
            bits.append(("- " if v < 0 else "+ ") + term)
        head = bits[0][2:] if bits[0].startswith("+ ") else "-" + bits[0][2:]
        return " ".join([head] + bits[1:])

    def __repr__(self):
        return "HalfLaurent(%r)" % (dict(self.items()),)


ONE = HalfLaurent({0: 1})


# ---------------------------------------------------------------------------
# Window arithmetic: (lo, hi) pairs with the None conventions described above.


def _min_hi(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_window(wa, wb):
    la, _ = wa
    lb, _ = wb
    if la is None:
        return wb
    if lb is None:
        return wa
    return (min(la, lb), _min_hi(wa[1], wb[1]))


def _mul_pair_window(wa, wb):
    (la, ha), (lb, hb) = wa, wb
    if la is None or lb is None:
        return (None, None)
    cons = []
    if hb is not None:
        cons.append(la + hb)
    if ha is not None:
        cons.append(lb + ha)
    return (la + lb, min(cons) if cons else None)


def _check_window(w):
    lo, hi = w
    if lo is None:
        if hi is not None:
            raise ValueError("window (None, hi) is not meaningful")
        return
    if hi is not None and hi < lo:
        raise WindowExhausted("empty knowledge window [%s, %s]" % (lo, hi))


# ---------------------------------------------------------------------------
# PQSeries


class PQSeries:
    """Truncated element of Z((p^(1/2)))[[q]] with per-degree knowledge windows."""

    __slots__ = ("q_order", "coeffs", "windows")

    def __init__(self, q_order, coeffs, windows):
        if q_order < 0:
            raise ValueError("q_order must be nonnegative")
        coeffs = tuple(coeffs)
        windows = tuple((lo, hi) for lo, hi in windows)
        if len(coeffs) != q_order + 1 or len(windows) != q_order + 1:
            raise ValueError("need q_order + 1 coefficients and windows")
        for hl, (lo, hi) in zip(coeffs, windows):
            _check_window((lo, hi))
            if lo is None:
                if not hl.is_zero():
                    raise ValueError("known-zero degree carries nonzero data")
            elif not hl.is_zero():
                if hl.min_exp() < lo:
                    raise ValueError("stored support below window lo")
                if hi is not None and hl.max_exp() > hi:
                    raise ValueError("stored support above window hi")
        self.q_order = q_order
        self.coeffs = coeffs
        self.windows = windows

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms, q_order, q_degree=0):
        """Exactly-known monomial data: terms is an iterable of (exp_half, coeff)."""
        if q_degree > q_order:
            raise ValueError("q_degree exceeds q_order")
        hl = HalfLaurent(terms)
        coeffs = [HalfLaurent() for _ in range(q_order + 1)]
        windows = [(None, None)] * (q_order + 1)
        coeffs[q_degree] = hl
        if not hl.is_zero():
            windows[q_degree] = (hl.min_exp(), None)
        return cls(q_order, coeffs, windows)

    @classmethod
    def one(cls, q_order):
        return cls.from_terms([(0, 1)], q_order)

    @classmethod
    def constant(cls, hl, q_order, window=None):
        """A q-free series whose q^0 coefficient is hl with the given window."""
        coeffs = [hl] + [HalfLaurent() for _ in range(q_order)]
        if window is None:
            window = (hl.min_exp(), None) if not hl.is_zero() else (None, None)
        windows = [window] + [(None, None)] * q_order
        return cls(q_order, coeffs, windows)

    # -- views and reshaping --------------------------------------------------

    def coefficient(self, d):
        return self.coeffs[d]

    def p_window(self):
        """Aggregate (lo, hi): the support floor and the weakest knowledge ceiling."""
        los = [lo for lo, _ in self.windows if lo is not None]
        his = [hi for lo, hi in self.windows if lo is not None]
        lo = min(los) if los else 0
        fin = [h for h in his if h is not None]
        if fin:
            hi = min(fin)
        else:
            exps = [hl.max_exp() for hl in self.coeffs if not hl.is_zero()]
            hi = max(exps) if exps else lo
        return (lo, hi)

    def with_q_order(self, q_order):
        if q_order > self.q_order:
            raise WindowExhausted("q-order %d exceeds known order %d" % (q_order, self.q_order))
        return PQSeries(q_order, self.coeffs[: q_order + 1], self.windows[: q_order + 1])

    def with_p_hi(self, hi):
        """Forget knowledge above the exponent hi (half-units) at every degree."""
        coeffs, windows = [], []
        for hl, (lo, h) in zip(self.coeffs, self.windows):
            if lo is None:
                coeffs.append(hl)
                windows.append((None, None))
            else:
                h2 = _min_hi(h, hi)
                if h2 < lo:
                    raise WindowExhausted("truncation to %s empties a window" % hi)
                coeffs.append(hl.clip(h2))
                windows.append((lo, h2))
        return PQSeries(self.q_order, coeffs, windows)

    def shift_p(self, k):
        """Multiply by the exact monomial x^k (k in half-units)."""
        coeffs, windows = [], []
        for hl, (lo, hi) in zip(self.coeffs, self.windows):
            coeffs.append(hl.shift(k))
            if lo is None:
                windows.append((None, None))
            else:
                windows.append((lo + k, None if hi is None else hi + k))
        return PQSeries(self.q_order, coeffs, windows)

    def scale(self, n):
        if not n:
            return PQSeries(
                self.q_order,
                [HalfLaurent() for _ in range(self.q_order + 1)],
                [(None, None)] * (self.q_order + 1),
            )
        return PQSeries(self.q_order, [hl.scale(n) for hl in self.coeffs], self.windows)

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        return _binary_add(self, other, +1)

    def __sub__(self, other):
        return _binary_add(self, other, -1)

    def __mul__(self, other):
        return _binary_mul(self, other)

    def __eq__(self, other):
        """Structural equality (same windows, same stored data)."""
        return (
            isinstance(other, PQSeries)
            and self.q_order == other.q_order
            and self.windows == other.windows
            and self.coeffs == other.coeffs
        )

    def pretty(self):
        bits = []
        for d, hl in enumerate(self.coeffs):
            if hl.is_zero():
                continue
            body = hl.pretty()
            if d == 0:
                bits.append(body)
            else:
                qp = "q" if d == 1 else "q^%d" % d
                bits.append("(%s)*%s" % (body, qp))
        return " + ".join(bits) if bits else "0"

    def __repr__(self):
        return "PQSeries(q_order=%d, %s)" % (self.q_order, self.pretty())

    # -- serialization --------------------------------------------------------

    def to_json_dict(self):
        lo, hi = self.p_window()
        return {
            "q_order": self.q_order,
            "p_window": [lo, hi],
            "p_windows": [[d, w[0], w[1]] for d, w in enumerate(self.windows)],
            "coeffs": [
                [d, [[e, str(v)] for e, v in hl.items()]]
                for d, hl in enumerate(self.coeffs)
            ],
        }

    @classmethod
    def from_json_dict(cls, data):
        q_order = data["q_order"]
        coeffs = [HalfLaurent() for _ in range(q_order + 1)]
        for d, terms in data["coeffs"]:
            coeffs[d] = HalfLaurent((e, int(v)) for e, v in terms)
        if "p_windows" in data:
            windows = [(None, None)] * (q_order + 1)
            for d, lo, hi in data["p_windows"]:
                windows[d] = (lo, hi)
        else:
            lo, hi = data["p_window"]
            windows = [(lo, hi)] * (q_order + 1)
        return cls(q_order, coeffs, windows)


# ---------------------------------------------------------------------------
# Ring operations


def _binary_add(a, b, sign):
    q_order = min(a.q_order, b.q_order)
    coeffs, windows = [], []
    for d in range(q_order + 1):
        w = _add_window(a.windows[d], b.windows[d])
        hl = a.coeffs[d] + b.coeffs[d] if sign > 0 else a.coeffs[d] - b.coeffs[d]
        coeffs.append(hl.clip(w[1]) if w[0] is not None else hl)
        windows.append(w)
    return PQSeries(q_order, coeffs, windows)


def _binary_mul(a, b):
    q_order = min(a.q_order, b.q_order)
    coeffs, windows = [], []
    for d in range(q_order + 1):
        lo = hi = None
        have = False
        acc = HalfLaurent()
        for i in range(d + 1):
            w = _mul_pair_window(a.windows[i], b.windows[d - i])
            if w[0] is None:
                continue
            if not have:
                lo, hi, have = w[0], w[1], True
            else:
                lo = min(lo, w[0])
                hi = _min_hi(hi, w[1])
            acc = acc + a.coeffs[i] * b.coeffs[d - i]
        if not have:
            coeffs.append(HalfLaurent())
            windows.append((None, None))
        else:
            coeffs.append(acc.clip(hi))
            windows.append((lo, hi))
    return PQSeries(q_order, coeffs, windows)


def ring_op(kind, a, b):
    """Exact add/sub/mul with the window calculus from the module docstring."""
    if kind == "add":
        return _binary_add(a, b, +1)
    if kind == "sub":
        return _binary_add(a, b, -1)
    if kind == "mul":
        return _binary_mul(a, b)
    raise ValueError("unknown ring_op kind %r" % (kind,))


def _invert_laurent(a0, lo0, hi0):
    """Invert the q^0 Laurent coefficient; returns (data, window)."""
    if lo0 is None or a0.is_zero():
        raise NotInvertible("q^0 coefficient is zero or not visible in its window")
    e0 = a0.min_exp()
    c = a0[e0]
    if c not in (1, -1):
        raise NotInvertible("leading coefficient %d is not a unit over the integers" % c)
    if hi0 is None:
        if len(a0.c) == 1:
            return HalfLaurent({-e0: c}), (-e0, None)
        raise WindowExhausted(
            "cannot invert an untruncated multi-term series; apply with_p_hi first"
        )
    hi_b = hi0 - 2 * e0
    b = {-e0: c}
    for k in range(1, hi_b + e0 + 1):
        s = 0
        for j in range(1, k + 1):
            aj = a0[e0 + j]
            if aj:
                bv = b.get(-e0 + k - j, 0)
                if bv:
                    s += aj * bv
        if s:
            b[-e0 + k] = -c * s
    return HalfLaurent(b), (-e0, hi_b)


def invert(a):
    """Multiplicative inverse; a * invert(a) is 1 on the resulting windows."""
    b0, w0 = _invert_laurent(a.coeffs[0], *a.windows[0])
    coeffs = [b0]
    windows = [w0]
    for d in range(1, a.q_order + 1):
        s = HalfLaurent()
        ws = (None, None)
        for k in range(1, d + 1):
            w = _mul_pair_window(a.windows[k], windows[d - k])
            if w[0] is None:
                continue
            ws = _add_window(ws, w)
            s = s + a.coeffs[k] * coeffs[d - k]
        if ws[0] is None:
            coeffs.append(HalfLaurent())
            windows.append((None, None))
        else:
            w = _mul_pair_window(w0, ws)
            coeffs.append((-(b0 * s)).clip(w[1]))
            windows.append(w)
    return PQSeries(a.q_order, coeffs, windows)


def power(a, k):
    """a**k by binary exponentiation; negative k routes through invert."""
    k = int(k)
    if k == 0:
        return PQSeries.one(a.q_order)
    if k < 0:
        return power(invert(a), -k)
    out = None
    base = a
    while k:
        if k & 1:
            out = base if out is None else _binary_mul(out, base)
        k >>= 1
        if k:
            base = _binary_mul(base, base)
    return out


def substitute_neg_p(a):
    """Substitute p -> -p: flip the sign of odd integer p-powers.

    Requires every exponent to be an integer power of p (even in half-units).
    """
    coeffs = []
    for hl in a.coeffs:
        c = {}
        for e, v in hl.c.items():
            if e % 2:
                raise ValueError("substitute_neg_p needs integer p-exponents, got %s/2" % e)
            c[e] = -v if (e // 2) % 2 else v
        coeffs.append(HalfLaurent._raw(c))
    return PQSeries(a.q_order, coeffs, a.windows)


# ---------------------------------------------------------------------------
# Comparison


class SeriesComparison:
    """Coefficientwise comparison of two series on their common known region."""

    __slots__ = ("equal", "q_order", "regions", "first_discrepancy", "side_a", "side_b")

    def __init__(self, equal, q_order, regions, first_discrepancy, side_a, side_b):
        self.equal = equal
        self.q_order = q_order
        self.regions = regions
        self.first_discrepancy = first_discrepancy
        self.side_a = side_a
        self.side_b = side_b

    def window(self):
        los = [lo for lo, hi in self.regions if lo is not None]
        his = [hi for lo, hi in self.regions if hi is not None]
        return (min(los) if los else 0, min(his) if his else 0)

    def to_json_dict(self):
        lo, hi = self.window()
        out = {
            "side_a": self.side_a.to_json_dict(),
            "side_b": self.side_b.to_json_dict(),
            "window": [lo, hi],
            "windows": [[d, r[0], r[1]] for d, r in enumerate(self.regions)],
            "q_order": self.q_order,
            "equal": self.equal,
        }
        if self.first_discrepancy is not None:
            d, e, lhs, rhs = self.first_discrepancy
            out["first_discrepancy"] = {"d": d, "exp_half": e, "lhs": str(lhs), "rhs": str(rhs)}
        else:
            out["first_discrepancy"] = None
        return out


def compare(a, b, q_order=None, p_lo=None, p_hi=None):
    """Compare a and b coefficientwise wherever both are exactly known.

    By default the region at degree d runs from the lower support floor up to
    the weaker knowledge ceiling; passing p_lo/p_hi (half-units) requests a
    fixed region instead, and it is an error if that region is not fully
    known.  Coefficients below a side's support floor count as known zeros.
    """
    if q_order is None:
        q_order = min(a.q_order, b.q_order)
    if q_order > min(a.q_order, b.q_order):
        raise WindowExhausted("comparison to q^%d exceeds the known q-order" % q_order)
    regions = []
    for d in range(q_order + 1):
        (la, ha), (lb, hb) = a.windows[d], b.windows[d]
        if la is None and lb is None:
            regions.append((None, None) if p_lo is None else (p_lo, p_hi))
            continue
        hi = _min_hi(ha, hb)
        lo = min(x for x in (la, lb) if x is not None)
        if p_lo is not None:
            lo = p_lo
        if p_hi is not None:
            if hi is not None and p_hi > hi:
                raise WindowExhausted(
                    "requested exactness to p-exponent %s/2 at q^%d, known only to %s/2"
                    % (p_hi, d, hi)
                )
            hi = p_hi
        if hi is not None and hi < lo:
            raise WindowExhausted("empty comparison window at q^%d" % d)
        regions.append((lo, hi))
    equal = True
    first = None
    for d in range(q_order + 1):
        lo, hi = regions[d]
        if lo is None and hi is None and a.windows[d][0] is None and b.windows[d][0] is None:
            continue
        ca, cb = a.coeffs[d], b.coeffs[d]
        for e in sorted(set(ca.c) | set(cb.c)):
            if (lo is not None and e < lo) or (hi is not None and e > hi):
                continue
            if ca[e] != cb[e]:
                equal = False
                if first is None:
                    first = (d, e, ca[e], cb[e])
                break
        if first is not None:
            break
    return SeriesComparison(equal, q_order, regions, first, a, b)


# ---------------------------------------------------------------------------
# Standard series constructors


def _validate_window(p_window):
    lo, hi = p_window
    if lo > hi:
        raise WindowExhausted("p_window [%d, %d] is empty" % (lo, hi))
    return lo, hi


def _check_holds(series, p_lo):
    for lo, _ in series.windows:
        if lo is not None and lo < p_lo:
            raise WindowExhausted(
                "p_window starts at %s but the series has support down to %s (half-units)"
                % (p_lo, lo)
            )
    return series


def linear_factor(a, b, sign, q_order, p_window):
    """(1 - p^a q^b)^(+-1) with a an integer power of p and b >= 0.

    The expanded form is exact; only (1 - p^a)^(-1) with b = 0 needs the
    window's upper end as a truncation bound.
    """
    lo, hi = _validate_window(p_window)
    e = 2 * a
    if sign == 1:
        if b > q_order:
            return PQSeries.one(q_order)
        out = PQSeries.from_terms([(0, 1)], q_order) - PQSeries.from_terms(
            [(e, 1)], q_order, q_degree=b
        )
        return _check_holds(out, lo)
    if sign != -1:
        raise ValueError("sign must be +1 or -1")
    if b == 0:
        base = PQSeries.constant(HalfLaurent({0: 1, e: -1}), q_order, window=(min(0, e), hi))
        return _check_holds(invert(base), lo)
    coeffs = [HalfLaurent() for _ in range(q_order + 1)]
    windows = [(None, None)] * (q_order + 1)
    k = 0
    while k * b <= q_order:
        coeffs[k * b] = HalfLaurent({k * e: 1})
        windows[k * b] = (k * e, None)
        k += 1
    return _check_holds(PQSeries(q_order, coeffs, windows), lo)


def macmahon(q_order, p_window, shift=1):
    """The box-counting double product in powers of q^shift.

    Expands prod_m (1 - p^m q^shift)^(-m) exactly up to the q-order and the
    window's upper end in p.
    """
    lo, hi = _validate_window(p_window)
    if shift < 1:
        raise ValueError("shift must be >= 1")
    out = PQSeries.one(q_order)
    if shift <= q_order:
        for m in range(1, hi // 2 + 1):
            out = _binary_mul(out, power(linear_factor(m, shift, -1, q_order, p_window), m))
    # dropped factors only touch p-exponents above hi, so the truncation is exact
    return _check_holds(out.with_p_hi(hi), lo)


def macmahon_p(q_order, p_window):
    """The q-free specialization of the box-counting product, truncated at the window top."""
    lo, hi = _validate_window(p_window)
    data = {0: 1}
    for m in range(1, hi // 2 + 1):
        geom = {0: 1}
        k = 1
        while 2 * m * k <= hi:
            geom[2 * m * k] = math.comb(m + k - 1, k)
            k += 1
        new = {}
        for e1, v1 in data.items():
            for e2, v2 in geom.items():
                if e1 + e2 <= hi:
                    new[e1 + e2] = new.get(e1 + e2, 0) + v1 * v2
        data = new
    out = PQSeries.constant(HalfLaurent(data), q_order, window=(0, hi))
    return _check_holds(out, lo)


def euler_product(q_order, p_window=None):
    """prod_k (1 - q^k) up to the q-order; p-free and exactly known."""
    out = PQSeries.one(q_order)
    for k in range(1, q_order + 1):
        out = _binary_mul(out, linear_factor(0, k, 1, q_order, (0, 0)))
    if p_window is not None:
        _validate_window(p_window)
        _check_holds(out, p_window[0])
    return out


def theta(q_order, p_window):
    """(p^(1/2) - p^(-1/2)) prod_k (1 - p q^k)(1 - p^(-1) q^k)(1 - q^k)^(-2)."""
    lo, _hi = _validate_window(p_window)
    out = PQSeries.from_terms([(1, 1), (-1, -1)], q_order)
    for k in range(1, q_order + 1):
        out = _binary_mul(out, linear_factor(1, k, 1, q_order, p_window))
        out = _binary_mul(out, linear_factor(-1, k, 1, q_order, p_window))
        out = _binary_mul(out, power(linear_factor(0, k, -1, q_order, p_window), 2))
    return _check_holds(out, lo)


def eta_with_prefactor(q_order, p_window=None):
    """The eta product split as (prefactor exponent, series).

    eta = q^(1/24) * prod_k (1 - q^k); the fractional q-power is returned as a
    Fraction and never enters the series itself.
    """
    return Fraction(1, 24), euler_product(q_order, p_window)


def standard_series(kind, params, q_order, p_window):
    """Dispatching constructor for the named series used across the formulas.

    kind is one of macmahon, macmahon_p, euler_product, theta, linear_factor;
    params is a dict (macmahon: {"shift": d}; linear_factor: {"a","b","sign"}).
    """
    params = dict(params or {})
    if kind == "macmahon":
        return macmahon(q_order, p_window, shift=params.get("shift", 1))
    if kind == "macmahon_p":
        return macmahon_p(q_order, p_window)
    if kind == "euler_product":
        return euler_product(q_order, p_window)
    if kind == "theta":
        return theta(q_order, p_window)
    if kind == "linear_factor":
        return linear_factor(params["a"], params["b"], params.get("sign", 1), q_order, p_window)
    raise ValueError("unknown standard series kind %r" % (kind,))
