"""Mode-space oracle: Poisson polynomials in individual generator modes.

This module expands generating series coefficient-wise and recomputes
brackets from nothing but the Leibniz rule and per-mode structure
constants, giving an independent check on the kernel engine.  It also
hosts every classical-limit (h -> 0) verification, working over truncated
h-series scalars with the rescaling lambda_n = h chi_n.

Window discipline: a requested output is never silently truncated.  For a
window (M, D, N_out) the oracle expands inputs to degree D + 1 with modes
in [-M, M] and compares output terms of degree <= D whose modes all lie in
[-(M - N_out), M - N_out].  Weight conservation makes every contribution
to a compared term come from in-window inputs: the contraction mode c
satisfies c = n - sum(side-1 spectators) = sum(side-2 spectators) - m, and
one of the two sides has at most one spectator, so |c| <= N_out + (M -
N_out) = M.  Windows that cannot certify this raise WindowExceeded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import WindowExceeded
from .genalg import GeneratorBasis
from .kernel import Kernel, kernel_eval
from .scalar import HSeries, QRat, Rat, hseries_of, q_minus_qinv
from .series import BracketResult, Expression


@dataclass(frozen=True)
class Window:
    max_mode: int = 6
    max_degree: int = 3
    n_out: int = 2

    def compare_mode(self) -> int:
        m = self.max_mode - self.n_out
        if m < 0:
            raise WindowExceeded(
                f"window M={self.max_mode} cannot certify outputs for "
                f"N_out={self.n_out}")
        return m


class ModePoly:
    """Polynomial in generator modes; keys are sorted tuples of
    (family, mode) with repetition, values are scalars (QRat or HSeries)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero() -> "ModePoly":
        return ModePoly({})

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, key, scalar):
        if key in self.terms:
            s = self.terms[key] + scalar
            if _scalar_zero(s):
                del self.terms[key]
            else:
                self.terms[key] = s
        elif not _scalar_zero(scalar):
            self.terms[key] = scalar

    def __add__(self, other: "ModePoly") -> "ModePoly":
        out = ModePoly(dict(self.terms))
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __neg__(self) -> "ModePoly":
        return ModePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ModePoly") -> "ModePoly":
        out = ModePoly()
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out.add_term(tuple(sorted(k1 + k2)), v1 * v2)
        return out

    def scale(self, v) -> "ModePoly":
        return ModePoly({k: s * v for k, s in self.terms.items()})

    def truncate(self, max_degree=None, max_mode=None) -> "ModePoly":
        out = {}
        for k, v in self.terms.items():
            if max_degree is not None and len(k) > max_degree:
                continue
            if max_mode is not None and any(abs(m) > max_mode for (_, m) in k):
                continue
            out[k] = v
        return ModePoly(out)

    def __eq__(self, other):
        if not isinstance(other, ModePoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __repr__(self):
        return f"ModePoly({len(self.terms)} terms)"


def _scalar_zero(s) -> bool:
    if isinstance(s, QRat):
        return s.is_zero()
    if isinstance(s, HSeries):
        return s.is_zero()
    return not s


# ---------------------------------------------------------------------------
# scalar rings
# ---------------------------------------------------------------------------

class QRing:
    """Exact Q(B) scalars."""

    tag = "q"

    def one(self):
        from .scalar import QR_ONE
        return QR_ONE

    def of_qrat(self, v: QRat):
        return v

    def of_rat(self, a):
        return QRat.from_rat(a)

    def struct_constant(self, kern: Kernel, mode: int):
        """Normalized-unit structure constant at the contraction mode."""
        return kernel_eval(kern, mode)

    def generator_weight(self):
        return self.one()


class HRing:
    """Truncated h-series scalars with q = e^h and lambda_n = h chi_n.

    Structure constants are the full-unit brackets {chi_n, chi_m} =
    (2/h) * (normalized kernel at n), an even series with constant term 2n.
    """

    tag = "h"

    def __init__(self, order: int):
        self.order = order
        self._h = HSeries([Rat(0), Rat(1)], order + 2)

    def one(self):
        return HSeries([Rat(1)], self.order)

    def of_qrat(self, v: QRat):
        return hseries_of(v, self.order)

    def of_rat(self, a):
        return HSeries([Rat(a)], self.order)

    def struct_constant(self, kern: Kernel, mode: int):
        val = hseries_of(kernel_eval(kern, mode), self.order + 1)
        return val.scale(Rat(2)).divide_h(1)

    def generator_weight(self):
        """Scalar carried by each generator occurrence (the h of
        lambda = h chi)."""
        return self._h


# ---------------------------------------------------------------------------
# expansion of generating series
# ---------------------------------------------------------------------------

def series_coefficient(expr: Expression, n: int, window: Window,
                       basis: GeneratorBasis, prefactors,
                       ring=None, max_degree=None, max_mode=None) -> ModePoly:
    """The z^-n coefficient of the expression, expanded in generator modes.

    Each factor Y_i(z q^c)^e contributes p_i^e exp(-e sum_m g_i[m] q^-cm
    z^-m); the expansion keeps terms of total degree <= max_degree (default
    window.max_degree) with every mode in [-max_mode, max_mode] (default
    window.max_mode).  Mode 0 is included (it is Poisson-central, so it
    never contracts but does appear in monomials).  Raises WindowExceeded
    when no term of the requested coefficient fits inside the window.
    """
    oracle = Oracle(basis, prefactors, ring)
    return oracle.coefficient(expr, n, window, max_degree, max_mode)


class Oracle:
    """Caching engine for the mode expansions over one basis/prefactor set
    and scalar ring.

    Factor expansions are graded by (weight, degree) and multiplied with a
    hard weight-reachability prune: a partial product of degree d whose
    weight w cannot reach the target n within the remaining degree budget
    ((D - d) * M) is dropped.
    """

    def __init__(self, basis: GeneratorBasis, prefactors, ring=None):
        self.basis = basis
        self.prefactors = tuple(prefactors)
        self.ring = ring or QRing()
        self._coeff_cache = {}
        self._factor_cache = {}

    def _factor(self, fam, two_shift, e, D, M):
        """Graded expansion of Y_fam(z q^c)^e: dict (weight, degree) ->
        ModePoly, from

            p^e exp(-e sum_m g[m] q^(-cm) z^-m)
              = p^e sum over mode multisets prod (-e q^(-cm) [h])^mult/mult!
        """
        key = (fam, two_shift, e, D, M)
        hit = self._factor_cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        pref = ring.of_qrat(self.prefactors[fam] ** e)
        gen_w = ring.generator_weight()
        blocks = {m: ring.of_qrat(
            QRat.q_power(-two_shift * m).scale(Rat(-e))) * gen_w
            for m in range(-M, M + 1)}
        # grow nondecreasing mode multisets; appending a repeated mode
        # divides by the new multiplicity, building the 1/mult!
        slices = {(0, 0): {(): pref}}
        frontier = {(0, 0): {(): pref}}
        for _ in range(D):
            nxt = {}
            for (w, d), terms in frontier.items():
                for mkey, scal in terms.items():
                    last = mkey[-1][1] if mkey else -M
                    for m in range(last, M + 1):
                        nk = mkey + ((fam, m),)
                        mult = sum(1 for t in nk if t[1] == m)
                        ns = (scal * blocks[m]).scale(Rat(1, mult))
                        tgt = nxt.setdefault((w + m, d + 1), {})
                        tgt[nk] = tgt[nk] + ns if nk in tgt else ns
            for sl, terms in nxt.items():
                slices[sl] = terms
            frontier = nxt
        out = {}
        for sl, terms in slices.items():
            p = ModePoly({k: v for k, v in terms.items()
                          if not _scalar_zero(v)})
            if not p.is_zero():
                out[sl] = p
        self._factor_cache[key] = out
        return out

    def coefficient(self, expr: Expression, n: int, window: Window,
                    max_degree=None, max_mode=None) -> ModePoly:
        D = window.max_degree if max_degree is None else max_degree
        M = window.max_mode if max_mode is None else max_mode
        if abs(n) > D * M:
            raise WindowExceeded(
                f"coefficient index {n} has no terms inside degree {D}, "
                f"mode window {M}")
        ckey = (_expr_key(expr), n, D, M)
        hit = self._coeff_cache.get(ckey)
        if hit is not None:
            return hit
        out = ModePoly()
        for mono in expr.terms.values():
            acc = {(0, 0): ModePoly({(): self.ring.of_qrat(mono.scalar)})}
            for (var, fam, two_shift, e) in mono.factors:
                fac = self._factor(fam, two_shift, e, D, M)
                nxt = {}
                for (w1, d1), p1 in acc.items():
                    for (w2, d2), p2 in fac.items():
                        w, d = w1 + w2, d1 + d2
                        if d > D or abs(n - w) > (D - d) * M:
                            continue
                        prod = p1 * p2
                        if prod.is_zero():
                            continue
                        if (w, d) in nxt:
                            nxt[(w, d)] = nxt[(w, d)] + prod
                        else:
                            nxt[(w, d)] = prod
                acc = nxt
            for (w, d), p in acc.items():
                if w == n:
                    out = out + p
        self._coeff_cache[ckey] = out
        return out

    def bracket_coefficient_direct(self, e1: Expression, e2: Expression,
                                   n: int, m: int, window: Window) -> ModePoly:
        """Mode-space {coeff_n(E1), coeff_m(E2)} truncated to the certified
        comparison set (degree <= D, modes <= M - N_out)."""
        D, M = window.max_degree, window.max_mode
        p1 = self.coefficient(e1, n, window, max_degree=D + 1, max_mode=M)
        p2 = self.coefficient(e2, m, window, max_degree=D + 1, max_mode=M)
        br = mode_bracket(p1, p2, self.basis, self.ring, max_out_degree=D)
        return br.truncate(max_degree=D, max_mode=window.compare_mode())

    def bracket_coefficient_kernel(self, br: BracketResult, n: int, m: int,
                                   window: Window) -> ModePoly:
        """The z^-n w^-m coefficient of a kernel-engine BracketResult,
        truncated to the same comparison set.

        Smooth parts contribute sum_k K(k) [z-part]_{n-k} [w-part]_{m+k};
        a delta at two_shift = 2c with restricted monomial R contributes
        q^(cm) [R]_{n+m}.  Only k with both weights reachable by compared
        terms (at most D modes of size <= M - N_out each) can contribute to
        the comparison set, so the k-range is finite."""
        D, M = window.max_degree, window.max_mode
        reach = D * window.compare_mode()
        out = ModePoly()
        for (mono, kern) in br.smooth_items():
            zpart, wpart = _split_vars(mono)
            for k in range(n - reach, n + reach + 1):
                if abs(m + k) > reach:
                    continue
                val = kernel_eval(kern, k)
                if val.is_zero():
                    continue
                pz = self.coefficient(zpart, n - k, window,
                                      max_degree=D + 1, max_mode=M)
                if pz.is_zero():
                    continue
                pw = self.coefficient(wpart, m + k, window,
                                      max_degree=D + 1, max_mode=M)
                if pw.is_zero():
                    continue
                out = out + (pz * pw).scale(self.ring.of_qrat(val))
        for (two_shift, coeff, mono) in br.delta_items():
            expr = Expression({mono.key(): mono})
            if abs(n + m) > reach:
                continue
            p = self.coefficient(expr, n + m, window,
                                 max_degree=D + 1, max_mode=M)
            if p.is_zero():
                continue
            twist = QRat.q_power(two_shift * m)
            out = out + p.scale(self.ring.of_qrat(coeff * twist))
        return out.truncate(max_degree=D, max_mode=window.compare_mode())


def _expr_key(expr: Expression):
    return tuple(sorted((k, expr.terms[k].scalar) for k in expr.terms))


def _split_vars(mono):
    zf, wf = [], []
    for (var, fam, ts, e) in mono.factors:
        if var == "w":
            wf.append(("z", fam, ts, e))
        else:
            zf.append((var, fam, ts, e))
    from .series import Monomial
    mz = Monomial.make(mono.scalar, zf)
    mw = Monomial.make(QRat.from_rat(1), wf)
    return Expression({mz.key(): mz}), Expression({mw.key(): mw})


def oracle_check_bracket(e1: Expression, e2: Expression, br: BracketResult,
                         window: Window, basis: GeneratorBasis,
                         prefactors, label: str = "oracle"):
    """Compare the kernel-engine bracket against the mode-space bracket on
    every certified (n, m) coefficient; returns a walg.Report."""
    from .walg import Report
    oracle = Oracle(basis, prefactors)
    for n in range(-window.n_out, window.n_out + 1):
        for m in range(-window.n_out, window.n_out + 1):
            direct = oracle.bracket_coefficient_direct(e1, e2, n, m, window)
            via_kernel = oracle.bracket_coefficient_kernel(br, n, m, window)
            if direct != via_kernel:
                d = direct - via_kernel
                first = next(iter(sorted(d.terms)), None)
                return Report(label, False,
                              details=f"(n,m)=({n},{m}) first diff at {first}")
    return Report(label, True)


def mode_bracket(p1: ModePoly, p2: ModePoly, basis: GeneratorBasis,
                 ring=None, max_out_degree=None) -> ModePoly:
    """Exact Leibniz bracket with delta_{n,-m} contractions; the structure
    constant of {g_i[n], g_j[m]} is the basis kernel at the first mode n."""
    ring = ring or QRing()
    out = ModePoly()
    struct_cache = {}

    def struct(fi, fj, mode):
        key = (fi, fj, mode)
        v = struct_cache.get(key)
        if v is None:
            v = struct_cache[key] = ring.struct_constant(
                basis.bracket_kernels[fi][fj], mode)
        return v

    for k1, v1 in p1.terms.items():
        for k2, v2 in p2.terms.items():
            if max_out_degree is not None and \
                    len(k1) + len(k2) - 2 > max_out_degree:
                continue
            # contraction of occurrence (fi, m) in k1 with (fj, -m) in k2
            seen1 = set()
            for a, (fi, m) in enumerate(k1):
                if (fi, m) in seen1:
                    continue
                seen1.add((fi, m))
                mult1 = sum(1 for t in k1 if t == (fi, m))
                rest1 = list(k1)
                rest1.remove((fi, m))
                seen2 = set()
                for b, (fj, mm) in enumerate(k2):
                    if mm != -m or (fj, mm) in seen2:
                        continue
                    seen2.add((fj, mm))
                    sc = struct(fi, fj, m)
                    if _scalar_zero(sc):
                        continue
                    mult2 = sum(1 for t in k2 if t == (fj, mm))
                    rest2 = list(k2)
                    rest2.remove((fj, mm))
                    key = tuple(sorted(rest1 + rest2))
                    val = v1 * v2 * sc
                    if mult1 != 1 or mult2 != 1:
                        val = val.scale(Rat(mult1 * mult2)) \
                            if hasattr(val, "scale") else val * mult1 * mult2
                    out.add_term(key, val)
    return out
