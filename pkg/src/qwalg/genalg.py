"""Generator bases of the Heisenberg-Poisson algebra and their brackets.

A GeneratorBasis holds, for each pair of generator families, the kernel
rho_ij(u) of the normalized bracket

    {g_i[n], g_j[-n]}_norm = rho_ij evaluated at u = q^(n/2),

where "normalized" means the bracket divided by the conventional unit 2h.
The structure constant is indexed by the FIRST mode argument; this is the
reading of the printed bracket formulas consistent across the a-, y- and
lambda-generator families.

Supported bases:
  * a-basis:      {a_i[n], a_j[-n]}_norm = [B_ij n]_q / (q - q^-1)
  * y-basis:      {y_i[n], y_j[-n]}_norm = (q - q^-1) C_ij^(n)
  * lambda-basis: type A only, via the explicit inverse change of variables.

BasisMaps are matrices of kernels T with target_i[n] = sum_j T_ij(q^(n/2))
source_j[n]; transform_brackets implements the induced congruence
G'(u) = T(u) G(u) T(1/u)^T at kernel level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanData, c_matrix, q_cartan_kernel_matrix
from .errors import DimensionMismatch
from .kernel import (K_ZERO, Kernel, kernel_equal, kernel_from_qratio,
                     qint_kernel)
from .scalar import QRat, q_minus_qinv


@dataclass(frozen=True)
class GeneratorBasis:
    tag: str                 # "a", "y" or "lambda"
    size: int
    bracket_kernels: tuple   # size x size of Kernel

    def kernel(self, i: int, j: int) -> Kernel:
        return self.bracket_kernels[i][j]

    def check_invariants(self) -> bool:
        """Antisymmetry rho_ij(u) = -rho_ji(1/u) and vanishing at u = 1."""
        from .kernel import kernel_eval
        n = self.size
        for i in range(n):
            for j in range(n):
                k_ij = self.bracket_kernels[i][j]
                k_ji = self.bracket_kernels[j][i]
                if not kernel_equal(k_ij, -k_ji.subs_u_inverse()):
                    return False
                if not kernel_eval(k_ij, 0).is_zero():
                    return False
        return True


@dataclass(frozen=True)
class BasisMap:
    """target_i[n] = sum_j T_ij(q^(n/2)) source_j[n]."""
    matrix: tuple            # n_target x n_source of Kernel

    @property
    def n_target(self):
        return len(self.matrix)

    @property
    def n_source(self):
        return len(self.matrix[0]) if self.matrix else 0


def a_basis(cd: CartanData) -> GeneratorBasis:
    """Brackets (pba): {a_i[n], a_j[m]} = (2h/(q-q^-1)) [B_ij n]_q delta."""
    n = cd.rank
    s = q_minus_qinv().inv()
    from fractions import Fraction
    kernels = tuple(
        tuple(qint_kernel(Fraction(cd.B_matrix[i][j])).scale(s)
              for j in range(n))
        for i in range(n)
    )
    return GeneratorBasis("a", n, kernels)


def y_basis(cd: CartanData) -> GeneratorBasis:
    """Brackets (ypb): {y_i[n], y_j[m]} = 2h (q-q^-1) C_ij^(n) delta."""
    n = cd.rank
    s = q_minus_qinv()
    cm = c_matrix(cd)
    kernels = tuple(tuple(cm[i][j].scale(s) for j in range(n)) for i in range(n))
    return GeneratorBasis("y", n, kernels)


def y_from_a(cd: CartanData) -> BasisMap:
    """The unique map with the duality {y_i[n], a_j[m]} = 2h [n]_q delta delta_ij:
    T = (q - q^-1) C^(n) / [n]_q applied to the a-basis."""
    n = cd.rank
    s = q_minus_qinv()
    inv_n = qint_kernel(1).inv()
    cm = c_matrix(cd)
    rows = tuple(tuple(cm[i][j].scale(s) * inv_n for j in range(n))
                 for i in range(n))
    return BasisMap(rows)


def lambda_from_a(N: int) -> BasisMap:
    """Type-A inverse change of variables: the N x (N-1) map taking a_j[n]
    to lambda_i[n], rows

        lambda_i[n] = -q^(Nn) (q-q^-1) sum_{j<i} ([jn]/[Nn]) a_j[n]
                      + (q-q^-1) sum_{j>=i} ([(N-j)n]/[Nn]) a_j[n].
    """
    if N < 2:
        raise DimensionMismatch("lambda basis needs N >= 2")
    s = q_minus_qinv()
    inv_N = qint_kernel(N).inv()
    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N):
            if j >= i:
                row.append(qint_kernel(N - j).scale(s) * inv_N)
            else:
                row.append(-(qint_kernel(j).scale(s) * inv_N).mul_u_power(2 * N))
        rows.append(tuple(row))
    return BasisMap(tuple(rows))


def lambda_basis(N: int) -> GeneratorBasis:
    """Type-A lambda-brackets (pbl1)/(pbl2):

        {l_i[n], l_i[m]} = 2h (q-q^-1) [(N-1)n][n]/[Nn] delta,
        {l_i[n], l_j[m]} = -2h (q-q^-1) [n]^2/[Nn] q^(-Nn) delta  (i < j),

    with the i > j entries fixed by antisymmetry.
    """
    s = q_minus_qinv()
    diag = kernel_from_qratio(num_ints=(N - 1, 1), den_ints=(N,)).scale(s)
    upper = -kernel_from_qratio(num_ints=(1, 1), den_ints=(N,)).scale(s) \
        .mul_u_power(-2 * N)
    lower = -upper.subs_u_inverse()
    kernels = tuple(
        tuple(diag if i == j else (upper if i < j else lower)
              for j in range(N))
        for i in range(N)
    )
    return GeneratorBasis("lambda", N, kernels)


def transform_brackets(src: GeneratorBasis, map: BasisMap) -> GeneratorBasis:
    """Push brackets through a BasisMap: G'(u) = T(u) G(u) T(1/u)^T."""
    if map.n_source != src.size:
        raise DimensionMismatch(
            f"map expects {map.n_source} source families, basis has {src.size}")
    n_t, n_s = map.n_target, map.n_source
    t_inv = [[map.matrix[i][j].subs_u_inverse() for j in range(n_s)]
             for i in range(n_t)]
    out = []
    for i in range(n_t):
        row = []
        for j in range(n_t):
            acc = K_ZERO
            for k in range(n_s):
                if map.matrix[i][k].is_zero():
                    continue
                for l in range(n_s):
                    g = src.bracket_kernels[k][l]
                    if g.is_zero() or t_inv[j][l].is_zero():
                        continue
                    acc = acc + map.matrix[i][k] * g * t_inv[j][l]
            row.append(acc)
        out.append(tuple(row))
    return GeneratorBasis(src.tag + "'", n_t, tuple(out))


def duality_kernels(cd: CartanData, map: BasisMap) -> list:
    """{target_i[n], a_j[-n]}_norm as kernels: T(u) B^(u) / (q - q^-1)."""
    n = cd.rank
    ab = a_basis(cd)
    out = []
    for i in range(map.n_target):
        row = []
        for j in range(n):
            acc = K_ZERO
            for k in range(n):
                acc = acc + map.matrix[i][k] * ab.bracket_kernels[k][j]
            row.append(acc)
        out.append(row)
    return out


def invert_basis_map(map: BasisMap) -> BasisMap:
    """Inverse of a square BasisMap over the kernel fraction field."""
    n = map.n_target
    if n != map.n_source:
        raise DimensionMismatch("only square maps are invertible")
    aug = [[map.matrix[i][j] for j in range(n)] +
           [Kernel.one() if i == j else K_ZERO for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise DimensionMismatch("basis map is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return BasisMap(tuple(tuple(row[n:]) for row in aug))
