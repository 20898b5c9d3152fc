"""Exception types shared across the package."""


class QwalgError(Exception):
    """Base class for all package errors."""


class PoleAtH0(QwalgError):
    """A q-rational has a genuine pole at q = 1 (h = 0)."""


class InvalidBase(QwalgError):
    """Pochhammer base q^b with b <= 0."""


class KernelPole(QwalgError):
    """A kernel denominator vanishes on the evaluation lattice u = q^(m/2)."""


class SingularMatrix(QwalgError):
    """Matrix inversion over kernels failed (zero determinant)."""


class UnsupportedType(QwalgError):
    """Cartan type outside A/B/C/D."""


class RankTooSmall(QwalgError):
    """Rank below the minimum for the requested construction."""


class DimensionMismatch(QwalgError):
    """Incompatible matrix/basis dimensions."""


class BasisMismatch(QwalgError):
    """Operands built over different generator bases."""


class WindowExceeded(QwalgError):
    """A requested coefficient cannot be computed exactly inside the window."""


class FactorizationMismatch(QwalgError):
    """No factor ordering/shift normalization reproduces the sigma coefficients."""


class UnknownIdentity(QwalgError):
    """Identity id not present in the verification registry."""
