"""Exact field arithmetic for the rational structure constants.

Two layers:

* plain rationals (see rational.py) carry every generic computation;
* EpsScalar extends them to univariate rational functions of one formal
  infinitesimal ``eps``, used to evaluate vectors at coincident spectral
  parameters as exact one-sided limits.

EpsScalar results demote themselves back to plain rationals as soon as the
eps-dependence cancels, so the hot paths never pay for polynomial arithmetic.
Polynomials are little-endian coefficient tuples over the rational backend,
reduced (content-normalized gcd) with a monic denominator, which makes
equality structural and lets eps_limit detect removable singularities.

Also hosts the pairwise set-products of g/f/h in the shorthand semantics and
the domain-wall partition function (Izergin determinant), evaluated by
fraction-free Bareiss elimination.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CardinalityMismatch, DivisionByZero, PoleAtZero
from .rational import ONE, ZERO, is_rational, rat

# ---------------------------------------------------------------------------
# polynomial helpers: little-endian tuples, () is the zero polynomial
# ---------------------------------------------------------------------------


def _trim(t):
    n = len(t)
    while n and not t[n - 1]:
        n -= 1
    return tuple(t[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pdivmod(a, b):
    # exact division over the rational field; b != ()
    rem = list(a)
    quo = [ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = ONE / b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1] * inv_lead
        if coef:
            quo[shift] = coef
            for i, y in enumerate(b):
                rem[shift + i] = rem[shift + i] - coef * y
    return _trim(quo), _trim(rem)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    inv = ONE / a[-1]
    return tuple(x * inv for x in a)  # monic


def _pmonic(num, den):
    inv = ONE / den[-1]
    if den[-1] != ONE:
        num = tuple(x * inv for x in num)
        den = tuple(x * inv for x in den)
    return num, den


class EpsScalar:
    """Reduced fraction of polynomials in the formal infinitesimal eps."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(ONE,)):
        num = _trim(tuple(rat(x) for x in num))
        den = _trim(tuple(rat(x) for x in den))
        if not den:
            raise DivisionByZero("denominator polynomial is identically zero")
        g = _pgcd(num, den)
        if len(g) > 1 or (g and g[0] != ONE):
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        num, den = _pmonic(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # -- construction ------------------------------------------------------

    @staticmethod
    def _make(num, den):
        val = EpsScalar(num, den)
        if len(val.den) == 1 and len(val.num) <= 1:
            return val.num[0] if val.num else ZERO  # demote to plain rational
        return val

    def __setattr__(self, *a):
        raise AttributeError("EpsScalar is immutable")

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, EpsScalar):
            return self.num == other.num and self.den == other.den
        if is_rational(other):
            return len(self.den) == 1 and self.num == _trim((rat(other),))
        return NotImplemented

    def __hash__(self):
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0] if self.num else ZERO)
        return hash((self.num, self.den))

    def __repr__(self):
        def fmt(p):
            return " + ".join(f"({c})*eps^{i}" if i else f"({c})" for i, c in enumerate(p) if c) or "0"

        return f"({fmt(self.num)}) / ({fmt(self.den)})"

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _pair(x):
        if isinstance(x, EpsScalar):
            return x.num, x.den
        if is_rational(x):
            return _trim((rat(x),)), (ONE,)
        raise TypeError(f"cannot coerce {type(x).__name__} to EpsScalar")

    def __add__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        return self._make(_padd(_pmul(self.num, d2), _pmul(n2, self.den)), _pmul(self.den, d2))

    __radd__ = __add__

    def __neg__(self):
        return self._make(_pneg(self.num), self.den)

    def __sub__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        return self._make(_padd(_pmul(self.num, d2), _pneg(_pmul(n2, self.den))), _pmul(self.den, d2))

    def __rsub__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        return self._make(_padd(_pmul(n2, self.den), _pneg(_pmul(self.num, d2))), _pmul(self.den, d2))

    def __mul__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        return self._make(_pmul(self.num, n2), _pmul(self.den, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        if not n2:
            raise DivisionByZero("division by identically zero scalar")
        return self._make(_pmul(self.num, d2), _pmul(self.den, n2))

    def __rtruediv__(self, other):
        try:
            n2, d2 = self._pair(other)
        except TypeError:
            return NotImplemented
        if not self.num:
            raise DivisionByZero("division by identically zero scalar")
        return self._make(_pmul(n2, self.den), _pmul(d2, self.num))


EPS = EpsScalar((ZERO, ONE))


def is_zero(x) -> bool:
    return not x


def eps_limit(x):
    """Value at eps = 0 after cancellation of common factors."""
    if is_rational(x):
        return rat(x)
    num, den = EpsScalar._pair(x)
    d0 = den[0] if den else ZERO
    if not d0:
        raise PoleAtZero(f"pole at eps=0 in {x!r}")
    n0 = num[0] if num else ZERO
    return n0 / d0


# ---------------------------------------------------------------------------
# the rational structure functions and their set products
# ---------------------------------------------------------------------------


def g(u, v, c):
    d = u - v
    if is_zero(d):
        raise DivisionByZero("g(u,v) at coincident arguments")
    return (ONE * c) / d


def f(u, v, c):
    return 1 + g(u, v, c)


def h(u, v, c):
    # equals f/g wherever g is defined, but is regular at u == v (value 1)
    return (u - v + ONE * c) / (ONE * c)


_PAIR_FN = {"g": g, "f": f, "h": h}


def prod_pairs(fn, left, right, c):
    """prod over l in left, r in right of fn(l, r, c); empty product is 1."""
    acc = ONE
    for l in left:
        for r in right:
            acc = acc * fn(l, r, c)
    return acc


def prod_unary(fn, xs):
    acc = ONE
    for x in xs:
        acc = acc * fn(x)
    return acc


def set_product(kind, left, right, c, unary_funcs=None):
    """Shorthand set-product. kind in {g,f,h} takes two sets; r1/r3-style
    kinds resolve through unary_funcs and take the left set only."""
    if kind in _PAIR_FN:
        return prod_pairs(_PAIR_FN[kind], left, right, c)
    if unary_funcs and kind in unary_funcs:
        if right:
            raise ValueError(f"{kind} is a one-set product")
        return prod_unary(unary_funcs[kind], left)
    raise KeyError(f"unknown product kind {kind!r}")


def bareiss_det(rows):
    """Fraction-free determinant over the exact field; rows is consumed."""
    n = len(rows)
    if n == 0:
        return ONE
    sign = ONE
    prev = ONE
    for k in range(n - 1):
        if not rows[k][k]:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / prev
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


def izergin(vs, us, c):
    """Domain-wall partition function K_n(vs | us); K_0 = 1.

    Determinant representation: prod_{i<j} g(v_i,v_j) g(u_j,u_i) times
    f(vs,us)/g(vs,us) times det[ g^2(v_k,u_l) / f(v_k,u_l) ].
    """
    n = len(vs)
    if n != len(us):
        raise CardinalityMismatch(f"|vs|={n} vs |us|={len(us)}")
    if n == 0:
        return ONE
    pref = ONE
    for i, j in combinations(range(n), 2):
        pref = pref * g(vs[i], vs[j], c) * g(us[j], us[i], c)
    for v in vs:
        for u in us:
            pref = pref * h(v, u, c)  # f/g pairwise
    rows = []
    for v in vs:
        row = []
        for u in us:
            gv = g(v, u, c)
            row.append(gv * gv / f(v, u, c))
        rows.append(row)
    return pref * bareiss_det(rows)


def three_term_witness(u, v, z, c):
    """g(v,z)g(v,u) + g(v,z)g(u,z) + g(z,u)g(v,u); identically zero."""
    return g(v, z, c) * g(v, u, c) + g(v, z, c) * g(u, z, c) + g(z, u, c) * g(v, u, c)
