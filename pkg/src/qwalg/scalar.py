"""Exact scalar arithmetic.

Everything downstream works over the field Q(B) where B**2 = q, so that
half-integer powers of q are integer powers of B.  This module provides:

  * ``Rat``       -- arbitrary-precision rationals (stdlib ``Fraction``),
  * ``BPoly``     -- dense polynomials in B over Rat (internal),
  * ``QRat``      -- reduced fractions of BPoly, denominator monic,
  * ``HSeries``   -- truncated power series in h with q = e**h,
  * ``XSeries``   -- truncated power series in x over QRat,

plus the q-integer, Pochhammer and f(x) constructors.  All values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidBase, PoleAtH0

Rat = Fraction

_R0 = Rat(0)
_R1 = Rat(1)


# ---------------------------------------------------------------------------
# polynomials in B over Rat
# ---------------------------------------------------------------------------

class BPoly:
    """Dense polynomial in the base variable B with Rat coefficients.

    ``c[i]`` is the coefficient of B**i; the list carries no trailing zeros
    and the zero polynomial is the empty list.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        self.c = coeffs

    # -- constructors ------------------------------------------------------
    @staticmethod
    def const(a: Rat) -> "BPoly":
        return BPoly([a]) if a else B_ZERO

    @staticmethod
    def monomial(a: Rat, k: int) -> "BPoly":
        if not a:
            return B_ZERO
        return BPoly([_R0] * k + [a], normalize=False)

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        return len(self.c) - 1  # -1 for zero

    def valuation(self) -> int:
        for i, a in enumerate(self.c):
            if a:
                return i
        return -1

    def is_monomial(self) -> bool:
        c = self.c
        return bool(c) and all(not a for a in c[:-1])

    def lead(self) -> Rat:
        return self.c[-1] if self.c else _R0

    def __eq__(self, other):
        return isinstance(other, BPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "BPoly") -> "BPoly":
        a, b = self.c, other.c
        if not a:
            return other
        if not b:
            return self
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return BPoly(out)

    def __neg__(self) -> "BPoly":
        return BPoly([-x for x in self.c], normalize=False)

    def __sub__(self, other: "BPoly") -> "BPoly":
        return self + (-other)

    def __mul__(self, other: "BPoly") -> "BPoly":
        a, b = self.c, other.c
        if not a or not b:
            return B_ZERO
        out = [_R0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
        return BPoly(out)

    def scale(self, a: Rat) -> "BPoly":
        if not a:
            return B_ZERO
        return BPoly([a * x for x in self.c], normalize=False)

    def shift(self, k: int) -> "BPoly":
        """Multiply by B**k (k >= 0)."""
        if not self.c:
            return B_ZERO
        return BPoly([_R0] * k + self.c, normalize=False)

    def divmod(self, other: "BPoly"):
        if other.is_zero():
            raise ZeroDivisionError("BPoly division by zero")
        rem = list(self.c)
        dn = other.c
        dd = len(dn) - 1
        lead = dn[-1]
        if len(rem) - 1 < dd:
            return B_ZERO, self
        quot = [_R0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            r = rem[i]
            if not r:
                continue
            f = r / lead
            quot[i - dd] = f
            for j, y in enumerate(dn):
                rem[i - dd + j] -= f * y
        return BPoly(quot), BPoly(rem)

    def gcd(self, other: "BPoly") -> "BPoly":
        """Monic gcd.  Fast path when either operand is a monomial."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        if a.is_monomial() or b.is_monomial():
            k = min(a.valuation(), b.valuation())
            return BPoly.monomial(_R1, k)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def monic(self) -> "BPoly":
        if not self.c or self.c[-1] == 1:
            return self
        inv = 1 / self.c[-1]
        return BPoly([x * inv for x in self.c], normalize=False)

    def eval_h_series(self, order: int) -> list:
        """Coefficients of the h-expansion at B = e**(h/2), length ``order``."""
        out = [_R0] * order
        # exp(k h / 2) = sum_j (k/2)^j / j! h^j
        for k, a in enumerate(self.c):
            if not a:
                continue
            term = a
            half_k = Rat(k, 2)
            for j in range(order):
                out[j] += term
                term = term * half_k / (j + 1)
        return out

    def __repr__(self):
        return f"BPoly({self.c!r})"


B_ZERO = BPoly([], normalize=False)
B_ONE = BPoly([_R1], normalize=False)


# ---------------------------------------------------------------------------
# rational functions in B
# ---------------------------------------------------------------------------

class QRat:
    """Element of Q(B) stored as a reduced fraction with monic denominator.

    Powers of q are even powers of B; q-integers are Laurent polynomials in
    q and therefore plain QRats.  Zero is uniquely (0, 1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BPoly, den: BPoly = B_ONE, reduce: bool = True):
        if reduce:
            num, den = _qr_reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------
    @staticmethod
    def from_rat(a) -> "QRat":
        a = Rat(a)
        if not a:
            return QR_ZERO
        return QRat(BPoly.const(a), B_ONE, reduce=False)

    @staticmethod
    def q_power(two_c: int) -> "QRat":
        """B**two_c, i.e. q**(two_c / 2)."""
        if two_c >= 0:
            return QRat(BPoly.monomial(_R1, two_c), B_ONE, reduce=False)
        return QRat(B_ONE, BPoly.monomial(_R1, -two_c), reduce=False)

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == B_ONE and self.den == B_ONE

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, QRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == QRat.from_rat(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other: "QRat") -> "QRat":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __neg__(self) -> "QRat":
        return QRat(-self.num, self.den, reduce=False)

    def __sub__(self, other: "QRat") -> "QRat":
        return self + (-other)

    def __mul__(self, other: "QRat") -> "QRat":
        if self.num.is_zero() or other.num.is_zero():
            return QR_ZERO
        return QRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "QRat") -> "QRat":
        return self * other.inv()

    def inv(self) -> "QRat":
        if self.num.is_zero():
            raise ZeroDivisionError("QRat inverse of zero")
        return QRat(self.den, self.num)

    def __pow__(self, e: int) -> "QRat":
        if e < 0:
            return self.inv() ** (-e)
        out = QR_ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, a: Rat) -> "QRat":
        if not a:
            return QR_ZERO
        return QRat(self.num.scale(a), self.den, reduce=False)

    def subs_q_inverse(self) -> "QRat":
        """Substitute B -> 1/B (q -> 1/q)."""
        n, d = self.num, self.den
        k = max(n.degree(), d.degree())
        rn = BPoly(list(reversed(n.c)) + [_R0] * (k - n.degree()))
        rd = BPoly(list(reversed(d.c)) + [_R0] * (k - d.degree()))
        return QRat(rn, rd)

    def __repr__(self):
        return f"QRat({qrat_str(self)})"


def _qr_reduce(num: BPoly, den: BPoly):
    if den.is_zero():
        raise ZeroDivisionError("QRat with zero denominator")
    if num.is_zero():
        return B_ZERO, B_ONE
    if den == B_ONE:
        return num, den
    g = num.gcd(den)
    if g.degree() > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    lead = den.lead()
    if lead != 1:
        inv = 1 / lead
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


QR_ZERO = QRat(B_ZERO, B_ONE, reduce=False)
QR_ONE = QRat(B_ONE, B_ONE, reduce=False)


def qint(n: int) -> QRat:
    """The q-integer [n]_q = (q^n - q^-n)/(q - q^-1) as a Laurent polynomial.

    [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n); odd in n.
    """
    if n == 0:
        return QR_ZERO
    s = 1 if n > 0 else -1
    m = abs(n)
    # B exponents 2(m-1), 2(m-3), ... relative to B^-(2m-2)
    num = [_R0] * (4 * m - 3)
    for j in range(m):
        num[4 * j] = _R1
    poly = BPoly(num, normalize=False)
    out = QRat(poly, BPoly.monomial(_R1, 2 * m - 2), reduce=False)
    return out if s > 0 else -out


def q_minus_qinv() -> QRat:
    """q - q^-1 = B^2 - B^-2."""
    return QRat.q_power(2) - QRat.q_power(-2)


# ---------------------------------------------------------------------------
# truncated h-series
# ---------------------------------------------------------------------------

class HSeries:
    """Truncated power series in h over Rat.

    Coefficients of h^0 .. h^(order-1) are exact; terms of degree >= order
    are unknown.  Arithmetic propagates the weakest order of the operands.
    """

    __slots__ = ("c", "order")

    def __init__(self, coeffs, order: int):
        coeffs = list(coeffs)[:order]
        coeffs += [_R0] * (order - len(coeffs))
        self.c = coeffs
        self.order = order

    @staticmethod
    def const(a, order: int) -> "HSeries":
        return HSeries([Rat(a)], order)

    def valuation(self) -> int:
        for i, a in enumerate(self.c):
            if a:
                return i
        return self.order

    def is_zero(self) -> bool:
        return all(not a for a in self.c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.c[:n] == other.c[:n]

    def __add__(self, other: "HSeries") -> "HSeries":
        n = min(self.order, other.order)
        return HSeries([self.c[i] + other.c[i] for i in range(n)], n)

    def __neg__(self) -> "HSeries":
        return HSeries([-a for a in self.c], self.order)

    def __sub__(self, other: "HSeries") -> "HSeries":
        return self + (-other)

    def __mul__(self, other: "HSeries") -> "HSeries":
        # product is exact to min(o1 + v2, o2 + v1), capped for sanity
        v1, v2 = self.valuation(), other.valuation()
        n = min(self.order + v2, other.order + v1, self.order + other.order)
        out = [_R0] * n
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if i + j >= n:
                    break
                if b:
                    out[i + j] += a * b
        return HSeries(out, n)

    def scale(self, a: Rat) -> "HSeries":
        return HSeries([a * x for x in self.c], self.order)

    def coeff(self, k: int) -> Rat:
        if k >= self.order:
            raise ValueError(f"h^{k} beyond truncation order {self.order}")
        return self.c[k]

    def divide_h(self, k: int = 1) -> "HSeries":
        """Exact division by h**k; the low coefficients must vanish."""
        if any(self.c[i] for i in range(min(k, self.order))):
            raise PoleAtH0(f"division by h^{k} of a series with nonzero low terms")
        return HSeries(self.c[k:], self.order - k)

    def mul_h(self, k: int = 1) -> "HSeries":
        return HSeries([_R0] * k + self.c, self.order + k)

    def __repr__(self):
        parts = [f"{a}*h^{i}" for i, a in enumerate(self.c) if a]
        body = " + ".join(parts) if parts else "0"
        return f"HSeries({body} + O(h^{self.order}))"


def hseries_of(v: QRat, order: int) -> HSeries:
    """Expand a QRat at q = e**h to the given order, exactly.

    Raises PoleAtH0 when the value has a genuine pole at h = 0 (denominator
    series vanishing to higher order than the numerator's).
    """
    if v.is_zero():
        return HSeries([], order)
    # the denominator series can vanish to at most deg(den) order
    slack = v.den.degree() + 1
    num = v.num.eval_h_series(order + slack)
    den = v.den.eval_h_series(order + slack)
    vd = next((i for i, a in enumerate(den) if a), order + slack)
    vn = next((i for i, a in enumerate(num) if a), order + slack)
    if vn < vd:
        raise PoleAtH0("QRat has a pole at q = 1")
    num = num[vd:]
    den = den[vd:]
    # series division to `order`
    out = [_R0] * order
    lead = den[0]
    for i in range(order):
        acc = num[i] if i < len(num) else _R0
        for j in range(1, i + 1):
            if j < len(den) and den[j]:
                acc -= den[j] * out[i - j]
        out[i] = acc / lead
    return HSeries(out, order)


# ---------------------------------------------------------------------------
# truncated x-series over QRat
# ---------------------------------------------------------------------------

class XSeries:
    """Truncated power series in x with QRat coefficients."""

    __slots__ = ("c", "order")

    def __init__(self, coeffs, order: int):
        coeffs = list(coeffs)[: order + 1]
        coeffs += [QR_ZERO] * (order + 1 - len(coeffs))
        self.c = coeffs
        self.order = order

    @staticmethod
    def const(v: QRat, order: int) -> "XSeries":
        return XSeries([v], order)

    @staticmethod
    def one(order: int) -> "XSeries":
        return XSeries([QR_ONE], order)

    def coeff(self, k: int) -> QRat:
        if k > self.order:
            raise ValueError(f"x^{k} beyond truncation order {self.order}")
        return self.c[k]

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.c[: n + 1] == other.c[: n + 1]

    def __add__(self, other: "XSeries") -> "XSeries":
        n = min(self.order, other.order)
        return XSeries([self.c[i] + other.c[i] for i in range(n + 1)], n)

    def __neg__(self) -> "XSeries":
        return XSeries([-a for a in self.c], self.order)

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + (-other)

    def __mul__(self, other: "XSeries") -> "XSeries":
        n = min(self.order, other.order)
        out = [QR_ZERO] * (n + 1)
        for i, a in enumerate(self.c[: n + 1]):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.c[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XSeries(out, n)

    def scale(self, v: QRat) -> "XSeries":
        return XSeries([v * a for a in self.c], self.order)

    def inv(self) -> "XSeries":
        c0 = self.c[0]
        if c0.is_zero():
            raise ZeroDivisionError("XSeries inverse needs nonzero constant term")
        i0 = c0.inv()
        out = [i0]
        for k in range(1, self.order + 1):
            acc = QR_ZERO
            for j in range(1, k + 1):
                if not self.c[j].is_zero():
                    acc = acc + self.c[j] * out[k - j]
            out.append(-i0 * acc)
        return XSeries(out, self.order)

    def subs_x_qpower(self, two_t: int) -> "XSeries":
        """Substitute x -> x * q^(two_t/2): scales x^k by B^(two_t * k)."""
        return XSeries(
            [a * QRat.q_power(two_t * k) for k, a in enumerate(self.c)],
            self.order,
        )

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def __repr__(self):
        return f"XSeries(order={self.order}, c={[qrat_str(a) for a in self.c]})"


def pochhammer(a_pow, b_pow, order: int) -> XSeries:
    """(x q^a; q^b) = prod_{n>=0} (1 - x q^(a + n b)) to the given x-order.

    a and b may be half-integers; b must be positive so that each coefficient
    is the closed form of a convergent geometric aggregate:

        c_0 = 1,   c_k = -q^(a + b(k-1)) c_{k-1} / (1 - q^(b k)).
    """
    a2, b2 = int(2 * Fraction(a_pow)), int(2 * Fraction(b_pow))
    if Fraction(a_pow) * 2 != a2 or Fraction(b_pow) * 2 != b2:
        raise ValueError("powers must lie on the half-integer lattice")
    if b2 <= 0:
        raise InvalidBase("pochhammer base exponent must be positive")
    coeffs = [QR_ONE]
    for k in range(1, order + 1):
        denom = QR_ONE - QRat.q_power(b2 * k)
        coeffs.append(-QRat.q_power(a2 + b2 * (k - 1)) * coeffs[-1] / denom)
    return XSeries(coeffs, order)


def f_series(order: int) -> XSeries:
    """f(x) = (x; q^4)(x q^4; q^4) / (x q^2; q^4)^2 to the given x-order."""
    top = pochhammer(0, 4, order) * pochhammer(4, 4, order)
    bot = pochhammer(2, 4, order)
    return top * bot.inv() * bot.inv()


# ---------------------------------------------------------------------------
# display helpers
# ---------------------------------------------------------------------------

def _bpoly_str(p: BPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, a in enumerate(p.c):
        if not a:
            continue
        if i == 0:
            parts.append(str(a))
        elif i % 2 == 0:
            head = "" if a == 1 else ("-" if a == -1 else f"{a}*")
            parts.append(f"{head}q^{i // 2}" if i != 2 else f"{head}q")
        else:
            head = "" if a == 1 else ("-" if a == -1 else f"{a}*")
            parts.append(f"{head}q^({i}/2)")
    return " + ".join(parts).replace("+ -", "- ")


def qrat_str(v: QRat) -> str:
    if v.is_zero():
        return "0"
    n = _bpoly_str(v.num)
    if v.den == B_ONE:
        return n
    return f"({n})/({_bpoly_str(v.den)})"
