"""Bilateral-distribution kernels.

A Kernel is a reduced rational function rho(u) over Q(B) standing for the
formal series sum_m rho(q^(m/2)) x^m with x = w/z.  The constant kernel 1
is the delta function delta(x) = sum_m x^m; the Laurent monomial u^(-2c)
is delta(x / q^c), the delta supported on w = z q^c.

``delta_extract`` splits a kernel into its Laurent-monomial part (the delta
terms: polynomial part at u = infinity plus the principal part at u = 0)
and a remainder that vanishes at infinity and is regular at the origin.
The constant term lands on the delta side whenever the value at infinity is
nonzero; identity checks compare total kernels, so nothing depends on this
convention beyond display.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import KernelPole
from .scalar import QR_ONE, QR_ZERO, QRat, q_minus_qinv, qint

_Q0 = QR_ZERO
_Q1 = QR_ONE


# ---------------------------------------------------------------------------
# dense polynomials in u over QRat
# ---------------------------------------------------------------------------

class UPoly:
    """Dense polynomial in the kernel variable u with QRat coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs, normalize=True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
        self.c = coeffs

    @staticmethod
    def const(v: QRat) -> "UPoly":
        return UPoly([v]) if not v.is_zero() else U_ZERO

    @staticmethod
    def monomial(v: QRat, k: int) -> "UPoly":
        if v.is_zero():
            return U_ZERO
        return UPoly([_Q0] * k + [v], normalize=False)

    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        return len(self.c) - 1

    def valuation(self) -> int:
        for i, a in enumerate(self.c):
            if not a.is_zero():
                return i
        return -1

    def lead(self) -> QRat:
        return self.c[-1] if self.c else _Q0

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __add__(self, other: "UPoly") -> "UPoly":
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
        return UPoly(out)

    def __neg__(self) -> "UPoly":
        return UPoly([-x for x in self.c], normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        a, b = self.c, other.c
        if not a or not b:
            return U_ZERO
        out = [_Q0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return UPoly(out)

    def scale(self, v: QRat) -> "UPoly":
        if v.is_zero():
            return U_ZERO
        return UPoly([v * x for x in self.c], normalize=False)

    def shift(self, k: int) -> "UPoly":
        if not self.c:
            return U_ZERO
        return UPoly([_Q0] * k + self.c, normalize=False)

    def reverse(self) -> "UPoly":
        """u^deg * p(1/u)."""
        return UPoly(list(reversed(self.c)))

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("UPoly division by zero")
        rem = list(self.c)
        dn = other.c
        dd = len(dn) - 1
        lead_inv = dn[-1].inv()
        if len(rem) - 1 < dd:
            return U_ZERO, self
        quot = [_Q0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            r = rem[i]
            if r.is_zero():
                continue
            f = r * lead_inv
            quot[i - dd] = f
            for j, y in enumerate(dn):
                if not y.is_zero():
                    rem[i - dd + j] = rem[i - dd + j] - f * y
        return UPoly(quot), UPoly(rem)

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division was not exact")
        return q

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        av, bv = a.valuation(), b.valuation()
        if a.degree() == av or b.degree() == bv:  # monomial fast path
            return UPoly.monomial(_Q1, min(av, bv))
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def monic(self) -> "UPoly":
        if not self.c or self.c[-1].is_one():
            return self
        inv = self.c[-1].inv()
        return UPoly([x * inv for x in self.c], normalize=False)

    def eval_qpow(self, m: int) -> QRat:
        """Evaluate at u = B^m."""
        if not self.c:
            return _Q0
        point = QRat.q_power(m)
        acc = self.c[-1]
        for a in reversed(self.c[:-1]):
            acc = acc * point + a
        return acc

    def deriv_like_truncate(self, n: int) -> "UPoly":
        return UPoly(self.c[:n])

    def __repr__(self):
        return f"UPoly(deg={self.degree()})"


U_ZERO = UPoly([], normalize=False)
U_ONE = UPoly([_Q1], normalize=False)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

class Kernel:
    """Reduced rational function in u over Q(B); denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly = U_ONE, reduce: bool = True):
        if reduce:
            num, den = _k_reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero() -> "Kernel":
        return K_ZERO

    @staticmethod
    def one() -> "Kernel":
        return K_ONE

    @staticmethod
    def const(v: QRat) -> "Kernel":
        return Kernel(UPoly.const(v), U_ONE, reduce=False)

    @staticmethod
    def u_power(k: int) -> "Kernel":
        """The Laurent monomial u^k (a pure delta: support w = z q^(-k/2))."""
        if k >= 0:
            return Kernel(UPoly.monomial(_Q1, k), U_ONE, reduce=False)
        return Kernel(U_ONE, UPoly.monomial(_Q1, -k), reduce=False)

    # -- queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        return (isinstance(other, Kernel)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((tuple(self.num.c), tuple(self.den.c)))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Kernel") -> "Kernel":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Kernel(self.num + other.num, self.den)
        return Kernel(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self) -> "Kernel":
        return Kernel(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Kernel") -> "Kernel":
        if self.is_zero() or other.is_zero():
            return K_ZERO
        return Kernel(self.num * other.num, self.den * other.den)

    def scale(self, v: QRat) -> "Kernel":
        if v.is_zero():
            return K_ZERO
        return Kernel(self.num.scale(v), self.den, reduce=False)

    def inv(self) -> "Kernel":
        if self.is_zero():
            raise ZeroDivisionError("Kernel inverse of zero")
        return Kernel(self.den, self.num)

    def mul_u_power(self, k: int) -> "Kernel":
        """Multiply by u^k (twist by q^(k/2) per mode)."""
        if self.is_zero() or k == 0:
            return self
        if k > 0:
            return Kernel(self.num.shift(k), self.den)
        return Kernel(self.num, self.den.shift(-k))

    def subs_u_inverse(self) -> "Kernel":
        """Substitute u -> 1/u."""
        if self.is_zero():
            return self
        n, d = self.num, self.den
        k = max(n.degree(), d.degree())
        rn = n.reverse().shift(k - n.degree())
        rd = d.reverse().shift(k - d.degree())
        return Kernel(rn, rd)

    def __repr__(self):
        return f"Kernel({kernel_str(self)})"


def _k_reduce(num: UPoly, den: UPoly):
    if den.is_zero():
        raise ZeroDivisionError("Kernel with zero denominator")
    if num.is_zero():
        return U_ZERO, U_ONE
    g = num.gcd(den)
    if g.degree() > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    lead = den.lead()
    if not lead.is_one():
        inv = lead.inv()
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


K_ZERO = Kernel(U_ZERO, U_ONE, reduce=False)
K_ONE = Kernel(U_ONE, U_ONE, reduce=False)


def qint_kernel(k) -> Kernel:
    """Kernel of [k*m]_q: (u^(2k) - u^(-2k)) / (q - q^-1).

    The multiplier k may be an integer or half-integer Fraction; either way
    the u-exponents 2k are integers.
    """
    k2 = 2 * Fraction(k)
    if k2.denominator != 1:
        raise ValueError("q-integer multiplier must be a half-integer")
    k2 = int(k2)
    if k2 == 0:
        return K_ZERO
    s = q_minus_qinv().inv()
    if k2 > 0:
        num = UPoly.monomial(s, 2 * k2) - UPoly.const(s)
        return Kernel(num, UPoly.monomial(_Q1, k2))
    return -qint_kernel(Fraction(-k2, 2))


def kernel_from_qratio(num_ints=(), den_ints=(), q_power=0,
                       scale: QRat = QR_ONE) -> Kernel:
    """Kernel of scale * q^(c m) * prod_i [k_i m]_q / prod_j [l_j m]_q.

    Multipliers k and the twist exponent c may be integers or half-integer
    Fractions; the coefficient at mode m of q^(c m) is u^(2c).
    """
    two_c = Fraction(q_power) * 2
    if two_c.denominator != 1:
        raise ValueError("q_power must lie on the half-integer lattice")
    out = Kernel.const(scale).mul_u_power(int(two_c))
    for k in num_ints:
        out = out * qint_kernel(k)
    for k in den_ints:
        out = out * qint_kernel(k).inv()
    return out


def kernel_sum(kernels) -> Kernel:
    """Sum many kernels with a single reduction.

    Numerators are first accumulated per distinct denominator, then combined
    over the product of the distinct denominators; only the final fraction
    is reduced.  Much cheaper than chained pairwise additions.
    """
    groups = {}
    for k in kernels:
        if k.is_zero():
            continue
        key = tuple(k.den.c)
        if key in groups:
            groups[key] = (groups[key][0] + k.num, k.den)
        else:
            groups[key] = (k.num, k.den)
    if not groups:
        return K_ZERO
    parts = list(groups.values())
    if len(parts) == 1:
        return Kernel(parts[0][0], parts[0][1])
    total_den = U_ONE
    for (_, d) in parts:
        total_den = total_den * d
    total_num = U_ZERO
    for (n, d) in parts:
        total_num = total_num + n * total_den.exact_div(d)
    # cheap pre-reduction: divide out whole known denominator factors before
    # the general gcd sees the (much smaller) remainder
    for (_, d) in parts:
        if d.degree() < 1:
            continue
        while total_den.degree() >= d.degree():
            q1, r1 = total_num.divmod(d)
            if not r1.is_zero():
                break
            q2, r2 = total_den.divmod(d)
            if not r2.is_zero():
                break
            total_num, total_den = q1, q2
    return Kernel(total_num, total_den)


def kernel_eval(K: Kernel, m: int) -> QRat:
    """Coefficient of x^m: rho(q^(m/2)).  Raises KernelPole on a lattice pole."""
    den = K.den.eval_qpow(m)
    if den.is_zero():
        raise KernelPole(f"kernel denominator vanishes at u = q^({m}/2)")
    num = K.num.eval_qpow(m)
    if num.is_zero():
        return _Q0
    return num / den


def delta_extract(K: Kernel):
    """Split K into (laurent, remainder).

    ``laurent`` is a list of (two_shift, coefficient) pairs: the Laurent
    monomial coeff * u^k becomes the delta with two_shift = -k (support
    w = z q^(-k/2)).  ``remainder`` vanishes as u -> infinity and has no
    pole at u = 0; laurent + remainder re-sums to K exactly.
    """
    if K.is_zero():
        return [], K_ZERO
    num, den = K.num, K.den
    # polynomial part at infinity
    q, r = num.divmod(den)
    # principal part at u = 0: den = u^v * d0 with d0(0) != 0
    v = den.valuation()
    terms = {}
    for k, a in enumerate(q.c):
        if not a.is_zero():
            terms[k] = a
    if v > 0:
        d0 = UPoly(den.c[v:], normalize=False)
        # P = r * d0^{-1} mod u^v  (power series inversion of d0)
        inv0 = d0.c[0].inv()
        p = []
        for i in range(v):
            acc = r.c[i] if i < len(r.c) else _Q0
            for j in range(1, i + 1):
                if j < len(d0.c) and not d0.c[j].is_zero():
                    acc = acc - d0.c[j] * p[i - j]
            p.append(acc * inv0)
        ppoly = UPoly(p)
        for k, a in enumerate(ppoly.c):
            if not a.is_zero():
                terms[k - v] = terms.get(k - v, _Q0) + a
        r0 = (r - ppoly * d0).exact_div(UPoly.monomial(_Q1, v))
        remainder = Kernel(r0, d0)
    else:
        remainder = Kernel(r, den)
    laurent = [(-k, a) for k, a in sorted(terms.items()) if not a.is_zero()]
    return laurent, remainder


def kernel_equal(K1: Kernel, K2: Kernel) -> bool:
    """Equality of reduced forms; equivalent to equality of all bilateral
    coefficients since the points q^(m/2) are distinct for generic q."""
    return K1 == K2


def c11_sl2_kernel() -> Kernel:
    """[m]^2/[2m] as a kernel: (u^4 - 1) / ((q - q^-1)(u^4 + 1)) reduced."""
    return kernel_from_qratio(num_ints=(1, 1), den_ints=(2,))


def kernel_str(K: Kernel) -> str:
    if K.is_zero():
        return "0"
    from .scalar import qrat_str

    def upoly_str(p: UPoly) -> str:
        parts = []
        for i, a in enumerate(p.c):
            if a.is_zero():
                continue
            s = qrat_str(a)
            if i == 0:
                parts.append(s)
            elif s == "1":
                parts.append(f"u^{i}")
            elif s == "-1":
                parts.append(f"-u^{i}")
            else:
                parts.append(f"({s})*u^{i}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    n = upoly_str(K.num)
    if K.den == U_ONE:
        return n
    return f"[{n}] / [{upoly_str(K.den)}]"
