"""Exact arithmetic in the field Q(i)(v) of rational functions in v = q^(1/2).

A Scalar is a reduced fraction of Laurent polynomials in v whose
coefficients are Gaussian rationals a + b*i.  Integer powers of q are even
powers of v, so half-integer q-exponents stay exact.  The bar involution
v -> v^(-1) acts coefficient-fixing; bar-symmetric quantum integers,
Gaussian binomials and q-shifted factorials are provided on top.

Canonical form: the denominator is monic with lowest exponent 0 and shares
no factor with the numerator, so equality of Scalars is a plain structural
check.
"""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """a + b*i with exact rational components; immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if self.im == 0 and other.im == 0:
            return GaussianRational(self.re * other.re, 0)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        if other.im == 0:
            if other.re == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GaussianRational(self.re / other.re, self.im / other.re)
        n = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


GQ_ZERO = GaussianRational(0)
GQ_ONE = GaussianRational(1)
GQ_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Laurent polynomials as {exponent: GaussianRational} dicts, no zero entries.
# ---------------------------------------------------------------------------

def _padd(p, q):
    r = dict(p)
    for e, c in q.items():
        s = r.get(e)
        if s is None:
            r[e] = c
        else:
            s = s + c
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pmul(p, q):
    if not p or not q:
        return {}
    if len(q) == 1:
        (eq, cq), = q.items()
        if cq == GQ_ONE:
            return {e + eq: c for e, c in p.items()}
        return {e + eq: c * cq for e, c in p.items()}
    if len(p) == 1:
        return _pmul(q, p)
    r = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            c = c1 * c2
            s = r.get(e)
            if s is None:
                r[e] = c
            else:
                s = s + c
                if s:
                    r[e] = s
                else:
                    del r[e]
    return r


def _pscale(p, c):
    if not c:
        return {}
    if c == GQ_ONE:
        return dict(p)
    return {e: x * c for e, x in p.items()}


def _pshift(p, k):
    if k == 0:
        return dict(p)
    return {e + k: c for e, c in p.items()}


def _to_dense(p):
    """Dense coefficient list [c_0, ..., c_d] for a polynomial with min exp 0."""
    d = max(p)
    out = [GQ_ZERO] * (d + 1)
    for e, c in p.items():
        out[e] = c
    return out


def _dense_divmod(a, b):
    """Polynomial division over Q(i); a, b dense lists, b nonzero."""
    a = list(a)
    db = len(b) - 1
    lead = b[db]
    q = [GQ_ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db]
        if not c:
            continue
        f = c / lead
        q[k] = f
        for j in range(db + 1):
            if b[j]:
                a[k + j] = a[k + j] - f * b[j]
    while a and not a[-1]:
        a.pop()
    return q, a


def _dense_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _poly_gcd(p, q):
    """Monic gcd of two polynomials given as dicts with min exponent 0."""
    a = _dense_trim(_to_dense(p))
    b = _dense_trim(_to_dense(q))
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    if lead != GQ_ONE:
        a = [c / lead for c in a]
    return {e: c for e, c in enumerate(a) if c}


def _poly_exact_div(p, g):
    """p / g for dicts with min exp 0; remainder is required to vanish."""
    if len(g) == 1 and 0 in g:
        c = g[0]
        if c == GQ_ONE:
            return dict(p)
        return {e: x / c for e, x in p.items()}
    q, r = _dense_divmod(_dense_trim(_to_dense(p)), _dense_trim(_to_dense(g)))
    if r:
        raise ArithmeticError("non-exact polynomial division")
    return {e: c for e, c in enumerate(q) if c}


class Scalar:
    """Element of Q(i)(v), stored as a canonical reduced Laurent fraction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = {0: GQ_ONE}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            object.__setattr__(self, "num", {})
            object.__setattr__(self, "den", {0: GQ_ONE})
            return
        sn = min(num)
        sd = min(den)
        a = _pshift(num, -sn) if sn else dict(num)
        b = _pshift(den, -sd) if sd else dict(den)
        shift = sn - sd
        if len(b) == 1:
            c = b[0]
            if c != GQ_ONE:
                a = {e: x / c for e, x in a.items()}
            object.__setattr__(self, "num", _pshift(a, shift))
            object.__setattr__(self, "den", {0: GQ_ONE})
            return
        if not _reduced:
            g = _poly_gcd(a, b)
            if len(g) > 1 or 0 not in g:
                a = _poly_exact_div(a, g)
                b = _poly_exact_div(b, g)
                if len(b) == 1:
                    c = b[0]
                    if c != GQ_ONE:
                        a = {e: x / c for e, x in a.items()}
                    object.__setattr__(self, "num", _pshift(a, shift))
                    object.__setattr__(self, "den", {0: GQ_ONE})
                    return
        lead = b[max(b)]
        if lead != GQ_ONE:
            a = {e: x / lead for e, x in a.items()}
            b = {e: x / lead for e, x in b.items()}
        object.__setattr__(self, "num", _pshift(a, shift))
        object.__setattr__(self, "den", b)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(n):
        if n == 0:
            return ZERO
        return Scalar({0: GaussianRational(n)})

    @staticmethod
    def from_fraction(f):
        f = Fraction(f)
        if f == 0:
            return ZERO
        return Scalar({0: GaussianRational(f)})

    @staticmethod
    def gaussian(re, im=0):
        c = GaussianRational(re, im)
        return Scalar({0: c}) if c else ZERO

    @staticmethod
    def i_unit():
        return I_UNIT

    @staticmethod
    def v_pow(k):
        return Scalar({k: GQ_ONE})

    @staticmethod
    def q_pow(n):
        """q^n as a Scalar; n may be a Fraction with denominator 1 or 2."""
        if isinstance(n, Fraction):
            k = n * 2
            if k.denominator != 1:
                raise ValueError("q-exponent must be a half integer")
            return Scalar({int(k): GQ_ONE})
        return Scalar({2 * n: GQ_ONE})

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == {0: GQ_ONE} and self.den == {0: GQ_ONE}

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self == Scalar.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), dict(self.den))
        return Scalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if not self.num:
            return self
        s = Scalar.__new__(Scalar)
        object.__setattr__(s, "num", _pneg(self.num))
        object.__setattr__(s, "den", self.den)
        return s

    def __mul__(self, other):
        if not self.num or not other.num:
            return ZERO
        trivial_self = self.den == {0: GQ_ONE}
        trivial_other = other.den == {0: GQ_ONE}
        if trivial_self and trivial_other:
            s = Scalar.__new__(Scalar)
            object.__setattr__(s, "num", _pmul(self.num, other.num))
            object.__setattr__(s, "den", {0: GQ_ONE})
            return s
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(dict(self.den), dict(self.num), _reduced=True)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n == 0:
            return ONE
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    # -- bar involution ------------------------------------------------------

    def bar(self):
        """Field automorphism v -> v^(-1), fixing all Gaussian rationals."""
        if not self.num:
            return self
        return Scalar(
            {-e: c for e, c in self.num.items()},
            {-e: c for e, c in self.den.items()},
            _reduced=True,
        )

    def __repr__(self):
        from .grammar import scalar_to_text
        return f"Scalar({scalar_to_text(self)!r})"


ZERO = Scalar({})
ONE = Scalar({0: GQ_ONE})
I_UNIT = Scalar({0: GQ_I})


def bar_scalar(a: Scalar) -> Scalar:
    return a.bar()


def is_bar_fixed(a: Scalar) -> bool:
    return a.bar() == a


def fourth_root_power(n) -> Scalar:
    """i^n for an integer n (fourth roots of unity in Q(i))."""
    return (I_UNIT, Scalar.from_int(-1), -I_UNIT, ONE)[(n - 1) % 4]


# ---------------------------------------------------------------------------
# q-combinatorics (balanced convention: [n] = (q^n - q^-n)/(q - q^-1)).
# ---------------------------------------------------------------------------

def qint(n: int, eps: int = 1) -> Scalar:
    """Balanced quantum integer [n] in base q^eps; [n] = -[-n]."""
    if n < 0:
        return -qint(-n, eps)
    if n == 0:
        return ZERO
    return Scalar({2 * eps * (n - 1 - 2 * j): GQ_ONE for j in range(n)})


def qfact(n: int, eps: int = 1) -> Scalar:
    out = ONE
    for k in range(2, n + 1):
        out = out * qint(k, eps)
    return out


def qbinom_eps(m: int, k: int, eps: int = 1) -> Scalar:
    """Gaussian binomial [m choose k] in base q^eps; 0 outside 0 <= k <= m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k < 0 or k > m:
        return ZERO
    k = min(k, m - k)
    out = ONE
    for t in range(1, k + 1):
        out = out * qint(m - k + t, eps) / qint(t, eps)
    return out


def _extract_q_base(base: Scalar) -> int:
    if base.den != {0: GQ_ONE} or len(base.num) != 1:
        raise ValueError("base must be a positive power of q")
    (e, c), = base.num.items()
    if c != GQ_ONE or e <= 0 or e % 2:
        raise ValueError("base must be a positive power of q")
    return e // 2


def qbinom(m: int, k: int, base: Scalar) -> Scalar:
    """Gaussian binomial [m choose k] for base = q^eps given as a Scalar."""
    return qbinom_eps(m, k, _extract_q_base(base))


def qshifted_factorial(x: Scalar, n: int) -> Scalar:
    """(x; x)_n = prod_{k=1..n} (1 - x^k); empty product for n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    p = ONE
    for _ in range(n):
        p = p * x
        out = out * (ONE - p)
    return out
