"""Products of shifted exponential series and their Poisson brackets.

A generating series Y_i(z) = p_i exp(-sum_m g_i[m] z^-m) is represented by
its family index alone; a ShiftedFactor is Y_i(z q^c)^e with the shift c on
the half-integer lattice (stored doubled, as an integer).  Monomials are
canonically sorted multisets of factors times a scalar, expressions are
merged sums of monomials, all in one variable.

Brackets of exponentials are multiplicative with a shift-twisted kernel:

    {F1(z), F2(w)}_norm = e1 e2 rho_ij(u) u^(2(c2 - c1)) F1(z) F2(w),

with rho_ij the basis bracket kernel (sign fixed against the printed sl2
Lambda-Lambda bracket and guarded by the mode oracle).  poisson_bracket
applies this pairwise, extracts the delta part of every total kernel, and
restricts each delta's monomial to its support, giving a canonical
BracketResult.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BasisMismatch
from .genalg import GeneratorBasis
from .kernel import K_ZERO, Kernel, delta_extract, kernel_equal
from .scalar import QR_ONE, QR_ZERO, QRat

# a factor is the tuple (var, family, two_shift, exponent); var is "z" or "w";
# family is any hashable (int for basis generators, tuples for formal symbols)


@dataclass(frozen=True)
class ShiftedFactor:
    family: object
    two_shift: int
    exponent: int
    var: str = "z"

    @property
    def shift(self) -> Fraction:
        return Fraction(self.two_shift, 2)

    def key(self):
        return (self.var, _fam_key(self.family), self.two_shift, self.exponent)


def _fam_key(f):
    # sortable family key: ints before tuples
    return (0, f, "") if isinstance(f, int) else (1, f[0], f[1])


class Monomial:
    """scalar * product of factors, factors canonically sorted and merged."""

    __slots__ = ("scalar", "factors")

    def __init__(self, scalar: QRat, factors):
        self.scalar = scalar
        self.factors = factors  # tuple of (var, family, two_shift, exponent)

    @staticmethod
    def make(scalar: QRat, raw_factors) -> "Monomial":
        merged = {}
        for (var, fam, ts, e) in raw_factors:
            k = (var, fam, ts)
            merged[k] = merged.get(k, 0) + e
        factors = tuple(
            sorted(((v, f, t, e) for (v, f, t), e in merged.items() if e != 0),
                   key=lambda x: (x[0], _fam_key(x[1]), x[2])))
        return Monomial(scalar, factors)

    @staticmethod
    def one() -> "Monomial":
        return Monomial(QR_ONE, ())

    def key(self):
        return self.factors

    def is_constant(self) -> bool:
        return not self.factors

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.make(self.scalar * other.scalar,
                             self.factors + other.factors)

    def scale(self, v: QRat) -> "Monomial":
        return Monomial(self.scalar * v, self.factors)

    def inv(self) -> "Monomial":
        return Monomial(self.scalar.inv(),
                        tuple((v, f, t, -e) for (v, f, t, e) in self.factors))

    def shifted(self, two_c: int) -> "Monomial":
        """Monomial with every argument shifted z -> z q^(two_c/2)."""
        return Monomial(self.scalar,
                        tuple((v, f, t + two_c, e) for (v, f, t, e) in self.factors))

    def as_w(self) -> "Monomial":
        return Monomial(self.scalar,
                        tuple(sorted((("w", f, t, e) for (v, f, t, e) in self.factors),
                                     key=lambda x: (x[0], _fam_key(x[1]), x[2]))))

    def __eq__(self, other):
        return (isinstance(other, Monomial) and self.scalar == other.scalar
                and self.factors == other.factors)

    def __repr__(self):
        return f"Monomial({monomial_str(self)})"


class Expression:
    """Merged sum of monomials in one variable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def from_monomials(monos) -> "Expression":
        terms = {}
        for m in monos:
            k = m.key()
            s = terms[k].scalar + m.scalar if k in terms else m.scalar
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = Monomial(s, k)
        return Expression(terms)

    @staticmethod
    def zero() -> "Expression":
        return Expression({})

    @staticmethod
    def one() -> "Expression":
        m = Monomial.one()
        return Expression({m.key(): m})

    def monomials(self):
        return [self.terms[k] for k in sorted(self.terms)]

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "Expression") -> "Expression":
        return Expression.from_monomials(
            list(self.terms.values()) + list(other.terms.values()))

    def __neg__(self) -> "Expression":
        return Expression({k: m.scale(-QR_ONE) for k, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, v: QRat) -> "Expression":
        if v.is_zero():
            return Expression.zero()
        return Expression({k: m.scale(v) for k, m in self.terms.items()})

    def shifted(self, two_c: int) -> "Expression":
        return Expression.from_monomials(
            [m.shifted(two_c) for m in self.terms.values()])

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(
            self.terms[k].scalar == other.terms[k].scalar for k in self.terms)

    def __repr__(self):
        return f"Expression({expression_str(self)})"


def multiply(e1: Expression, e2: Expression) -> Expression:
    """Distributive product with factor and monomial merging."""
    out = []
    for m1 in e1.terms.values():
        for m2 in e2.terms.values():
            out.append(m1 * m2)
    return Expression.from_monomials(out)


def exponential_pair_kernel(f1, f2, basis: GeneratorBasis) -> Kernel:
    """Kernel K with {F1(z), F2(w)}_norm = K(w/z) F1(z) F2(w) for single
    shifted exponential factors (tuples (var, family, two_shift, exp))."""
    (_, fam1, ts1, e1) = f1
    (_, fam2, ts2, e2) = f2
    if not (isinstance(fam1, int) and isinstance(fam2, int)):
        raise BasisMismatch("formal symbols have no bracket")
    if fam1 >= basis.size or fam2 >= basis.size:
        raise BasisMismatch("factor family outside the generator basis")
    rho = basis.bracket_kernels[fam1][fam2]
    if rho.is_zero():
        return K_ZERO
    k = rho.mul_u_power(ts2 - ts1)  # u^(2(c2 - c1)) with two_shift = 2c
    e = e1 * e2
    if e == 1:
        return k
    return k.scale(QRat.from_rat(e))


class BracketResult:
    """Canonical form of {E1(z), E2(w)}_norm.

    smooth: dict mapping a bivariate monomial key to (Monomial, Kernel); the
    kernels carry the scalar weight, monomial scalars are 1.
    deltas:  dict mapping (two_shift, restricted monomial key) to
    (coefficient, Monomial); the delta with two_shift = 2c is supported on
    w = z q^c.
    """

    __slots__ = ("smooth", "deltas")

    def __init__(self, smooth=None, deltas=None):
        self.smooth = smooth if smooth is not None else {}
        self.deltas = deltas if deltas is not None else {}

    def is_zero(self) -> bool:
        return not self.smooth and not self.deltas

    def add_smooth(self, mono: Monomial, k: Kernel):
        if k.is_zero():
            return
        k = k.scale(mono.scalar)
        mono = Monomial(QR_ONE, mono.factors)
        key = mono.key()
        if key in self.smooth:
            total = self.smooth[key][1] + k
            if total.is_zero():
                del self.smooth[key]
            else:
                self.smooth[key] = (mono, total)
        else:
            self.smooth[key] = (mono, k)

    def add_delta(self, two_shift: int, coeff: QRat, mono: Monomial):
        coeff = coeff * mono.scalar
        mono = Monomial(QR_ONE, mono.factors)
        if coeff.is_zero():
            return
        key = (two_shift, mono.key())
        if key in self.deltas:
            total = self.deltas[key][0] + coeff
            if total.is_zero():
                del self.deltas[key]
            else:
                self.deltas[key] = (total, mono)
        else:
            self.deltas[key] = (coeff, mono)

    def smooth_items(self):
        return [self.smooth[k] for k in sorted(self.smooth)]

    def delta_items(self):
        return [(k[0], *self.deltas[k]) for k in sorted(self.deltas)]

    def __eq__(self, other):
        if not isinstance(other, BracketResult):
            return NotImplemented
        if self.smooth.keys() != other.smooth.keys():
            return False
        if self.deltas.keys() != other.deltas.keys():
            return False
        for k in self.smooth:
            if not kernel_equal(self.smooth[k][1], other.smooth[k][1]):
                return False
        for k in self.deltas:
            if self.deltas[k][0] != other.deltas[k][0]:
                return False
        return True

    def diff(self, other: "BracketResult") -> str:
        lines = []
        for k in sorted(set(self.smooth) | set(other.smooth)):
            a = self.smooth.get(k)
            b = other.smooth.get(k)
            if a is None or b is None or not kernel_equal(a[1], b[1]):
                lines.append(f"smooth term differs at {k}")
        for k in sorted(set(self.deltas) | set(other.deltas)):
            a = self.deltas.get(k)
            b = other.deltas.get(k)
            if a is None or b is None or a[0] != b[0]:
                lines.append(f"delta term differs at {k}")
        return "\n".join(lines)

    def __repr__(self):
        return f"BracketResult({bracket_str(self)})"


def restrict_to_support(m: Monomial, two_shift: int) -> Monomial:
    """On the support of the delta with two_shift = 2c, w = z q^c: w-factors
    become z-factors with shifts offset by +c, then the product is
    re-canonicalized (inverse pairs cancel)."""
    raw = []
    for (var, fam, ts, e) in m.factors:
        if var == "w":
            raw.append(("z", fam, ts + two_shift, e))
        else:
            raw.append((var, fam, ts, e))
    return Monomial.make(m.scalar, raw)


def poisson_bracket(e1: Expression, e2: Expression,
                    basis: GeneratorBasis) -> BracketResult:
    """Bilinear Leibniz extension over monomial pairs; deltas are extracted
    from each total pair kernel and eagerly restricted to their support."""
    from .kernel import kernel_sum
    out = BracketResult()
    pair_cache = {}
    split_cache = {}

    def pair_kernel(f1, f2):
        key = (f1[1], f2[1], f2[2] - f1[2], f1[3] * f2[3])
        k = pair_cache.get(key)
        if k is None:
            k = pair_cache[key] = exponential_pair_kernel(f1, f2, basis)
        return k

    for m1 in e1.terms.values():
        for m2 in e2.terms.values():
            m2w = m2.as_w()
            keys = tuple(sorted(
                (f1[1], f2[1], f2[2] - f1[2], f1[3] * f2[3])
                for f1 in m1.factors for f2 in m2w.factors))
            split = split_cache.get(keys)
            if split is None:
                total = kernel_sum(pair_kernel(f1, f2)
                                   for f1 in m1.factors for f2 in m2w.factors)
                split = split_cache[keys] = (
                    None if total.is_zero() else delta_extract(total))
            if split is None:
                continue
            laurent, remainder = split
            scal = m1.scalar * m2.scalar
            pair = Monomial(scal, (m1 * m2w).factors)
            if not remainder.is_zero():
                out.add_smooth(pair, remainder)
            for (two_shift, coeff) in laurent:
                restricted = restrict_to_support(pair, two_shift)
                out.add_delta(two_shift, coeff, restricted)
    return out


def bracket_swap_negate(br: BracketResult) -> BracketResult:
    """The canonical form of -(z <-> w swap) of a BracketResult.

    Swapping sends smooth kernels K(u) to K(1/u) on the variable-swapped
    monomial and the delta at shift c to the delta at -c with its restricted
    monomial shifted by -c.  The u -> 1/u substitution moves content between
    the smooth and delta sides of the canonical split, so the swapped smooth
    kernels are re-extracted.
    """
    out = BracketResult()
    for (mono, k) in br.smooth_items():
        swapped = _swap_vars(mono)
        kk = -k.subs_u_inverse()
        laurent, rem = delta_extract(kk)
        if not rem.is_zero():
            out.add_smooth(swapped, rem)
        for (two_shift, coeff) in laurent:
            out.add_delta(two_shift, coeff,
                          restrict_to_support(swapped, two_shift))
    for (two_shift, coeff, mono) in br.delta_items():
        out.add_delta(-two_shift, -coeff, mono.shifted(-two_shift))
    return out


def bracket_antisymmetric_pair(br12: BracketResult,
                               br21: BracketResult) -> bool:
    """Check {E1(z),E2(w)} = -(z <-> w swap of {E2(z),E1(w)})."""
    return br12 == bracket_swap_negate(br21)


def _swap_vars(m: Monomial) -> Monomial:
    return Monomial.make(
        m.scalar,
        tuple(("w" if v == "z" else "z", f, t, e) for (v, f, t, e) in m.factors))


# ---------------------------------------------------------------------------
# display
# ---------------------------------------------------------------------------

def _factor_str(f, names=None) -> str:
    (var, fam, ts, e) = f
    name = names[fam] if names and isinstance(fam, int) else (
        f"Y{fam + 1}" if isinstance(fam, int) else f"{fam[0]}{fam[1]}")
    arg = var if ts == 0 else (
        f"{var}q^{ts // 2}" if ts % 2 == 0 else f"{var}q^({ts}/2)")
    head = f"{name}({arg})"
    return head if e == 1 else f"{head}^{e}"


def monomial_str(m: Monomial, names=None) -> str:
    from .scalar import qrat_str
    body = "*".join(_factor_str(f, names) for f in m.factors) or "1"
    if m.scalar.is_one():
        return body
    return f"({qrat_str(m.scalar)})*{body}"


def expression_str(e: Expression, names=None) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(monomial_str(m, names) for m in e.monomials())


def bracket_str(br: BracketResult, names=None) -> str:
    from .kernel import kernel_str
    parts = []
    for (mono, k) in br.smooth_items():
        parts.append(f"[{kernel_str(k)}] . {monomial_str(mono, names)}")
    for (two_shift, coeff, mono) in br.delta_items():
        from .scalar import qrat_str
        arg = "w/z" if two_shift == 0 else (
            f"w/(zq^{two_shift // 2})" if two_shift % 2 == 0
            else f"w/(zq^({two_shift}/2))")
        mstr = monomial_str(mono, names)
        body = f"delta({arg})" + ("" if mstr == "1" else f" {mstr}")
        parts.append(f"({qrat_str(coeff)}) {body}")
    return "\n+ ".join(parts) if parts else "0"
