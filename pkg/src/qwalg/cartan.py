"""Finite-type Cartan data for the classical series A/B/C/D.

Symmetrized Cartan matrices B_ij = (alpha_i, alpha_j), the q-deformed
matrices B^(m)_ij = [B_ij m]_q as kernels, their inverses scaled by [m]^2
(the C-matrix of smooth bracket kernels), and the pairings (rho, omega_i)
that fix the prefactors of the generating series Y_i(z).

The squared-length normalization for the non-simply-laced types is not
canonical; two standard choices are provided:

  * ``short2`` (default): short roots have (alpha, alpha) = 2, so
    d = (2,...,2,1) for B_n and d = (1,...,1,2) for C_n;
  * ``long2``: long roots have (alpha, alpha) = 2, i.e. the ``short2``
    values divided by d_max (C_n gets d = (1/2,...,1/2,1)).

The sigma-bracket acceptance tests record which switch matches the
half-integer shift lattice of the C-type series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import RankTooSmall, SingularMatrix, UnsupportedType
from .kernel import K_ZERO, Kernel, kernel_from_qratio, qint_kernel
from .scalar import Rat

_TYPES = ("A", "B", "C", "D")
_NORMS = ("short2", "long2")


@dataclass(frozen=True)
class CartanData:
    type: str
    rank: int
    B_matrix: tuple          # rank x rank of Rat, B_ij = (alpha_i, alpha_j)
    d: tuple                 # d_i = (alpha_i, alpha_i)/2
    rho_pairings: tuple      # (rho, omega_i)
    normalization: str = "short2"

    def __post_init__(self):
        for i in range(self.rank):
            assert self.B_matrix[i][i] == 2 * self.d[i]
            for j in range(self.rank):
                assert self.B_matrix[i][j] == self.B_matrix[j][i]


def cartan_data(type: str, rank: int, normalization: str = "short2") -> CartanData:
    """Build exact Cartan data.  Exceptional types are unsupported."""
    if type not in _TYPES:
        raise UnsupportedType(f"type {type!r} not in A/B/C/D")
    if normalization not in _NORMS:
        raise ValueError(f"normalization must be one of {_NORMS}")
    if rank < 1 or (type == "D" and rank < 2):
        raise RankTooSmall(f"rank {rank} too small for type {type}")

    n = rank
    if type == "B":
        d = [Rat(2)] * (n - 1) + [Rat(1)]   # node n short
    elif type == "C":
        d = [Rat(1)] * (n - 1) + [Rat(2)]   # node n long
    else:
        d = [Rat(1)] * n
    if normalization == "long2":
        dmax = max(d)
        d = [x / dmax for x in d]

    if type == "D":
        edges = [(i, i + 1) for i in range(n - 2)]
        if n >= 3:
            edges.append((n - 3, n - 1))
    else:
        edges = [(i, i + 1) for i in range(n - 1)]

    # symmetrized matrix: diagonal 2 d_i, adjacent entries -max(d_i, d_j)
    b = [[Rat(0)] * n for _ in range(n)]
    for i in range(n):
        b[i][i] = 2 * d[i]
    for i, j in edges:
        b[i][j] = b[j][i] = -max(d[i], d[j])
    bm = tuple(tuple(row) for row in b)

    # (rho, omega_i) = d_i * sum_j d_j (B^-1)_{ij}
    binv = _rat_matrix_inverse(bm)
    rho = tuple(
        d[i] * sum(d[j] * binv[i][j] for j in range(n)) for i in range(n)
    )
    return CartanData(type, rank, bm, tuple(d), rho, normalization)


def _rat_matrix_inverse(m):
    n = len(m)
    aug = [[Rat(m[i][j]) for j in range(n)] + [Rat(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise SingularMatrix("Cartan matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def q_cartan_kernel_matrix(cd: CartanData):
    """B^(m)_ij = [B_ij m]_q as kernels."""
    n = cd.rank
    return [[qint_kernel(Fraction(cd.B_matrix[i][j]))
             for j in range(n)] for i in range(n)]


def c_matrix(cd: CartanData):
    """C^(m) = [m]^2 (B^(m))^-1 as a symmetric matrix of reduced kernels.

    Inversion is done fraction-free: the common scalar and u-power of the
    entries are cleared so elimination runs over the polynomial ring in u
    (Bareiss determinants via adjugate), then each entry is reduced.
    """
    n = cd.rank
    bq = q_cartan_kernel_matrix(cd)
    det = _kernel_det(bq)
    if det.is_zero():
        raise SingularMatrix("q-Cartan kernel matrix is singular")
    m2 = kernel_from_qratio(num_ints=(1, 1))  # [m]_q^2
    out = [[K_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = _kernel_det(_minor(bq, j, i))
            if (i + j) % 2:
                cof = -cof
            out[i][j] = m2 * cof * det.inv()
    return out


def _minor(m, i, j):
    return [[m[r][c] for c in range(len(m)) if c != j]
            for r in range(len(m)) if r != i]


def _kernel_det(m) -> Kernel:
    """Determinant of a matrix of kernels.

    Entries share the scalar prefactor structure (q - q^-1)^-1 u^(-k); we
    clear denominators entrywise and run fraction-free Bareiss elimination
    over UPoly, then restore the cleared factor.
    """
    n = len(m)
    if n == 0:
        return Kernel.one()
    if n == 1:
        return m[0][0]
    # common clearing: each entry num/den -> multiply row by lcm-ish product;
    # simplest exact route: track the product of cleared denominators.
    from .kernel import U_ONE, UPoly

    cleared = []
    denom = Kernel.one()
    for row in m:
        row_den = U_ONE
        for e in row:
            row_den = row_den * e.den
        cleared.append([e.num * row_den.exact_div(e.den) for e in row])
        denom = denom * Kernel(row_den, U_ONE, reduce=False)
    det_p = _bareiss_det(cleared)
    return Kernel(det_p, U_ONE, reduce=False) * denom.inv()


def _bareiss_det(mat):
    """Fraction-free Bareiss determinant over UPoly."""
    from .kernel import U_ONE, U_ZERO, UPoly

    n = len(mat)
    a = [row[:] for row in mat]
    prev = U_ONE
    sign = 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if piv is None:
                return U_ZERO
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = U_ZERO
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def c_closed_form_A(N: int, i: int, j: int) -> Kernel:
    """Type-A closed form: C_ij = [(N - max) m][min m] / [N m] (1-based i, j)."""
    mx, mn = max(i, j), min(i, j)
    return kernel_from_qratio(num_ints=(N - mx, mn), den_ints=(N,))
