"""Archimedean local coefficients in closed form.

The real case is a ratio of complex Gamma values with a quarter-turn
prefactor; the complex case is the classical rank-1 Tate ratio.  Both carry a
second, L-function-shaped form whose agreement with the first is a numeric
restatement of the Legendre duplication formula, so the pair of routes is a
self-test exactly like the p-adic closed/integral pair.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import gamma as _cgamma

from .field import DomainError


def complex_gamma(z: complex) -> complex:
    return complex(_cgamma(complex(z)))


@dataclass(frozen=True)
class RealCharacter:
    """A character of R^* up to ||.||^s twists: trivial or sign."""

    parity: int          # chi(-1)

    def __post_init__(self):
        if self.parity not in (1, -1):
            raise DomainError("parity must be +-1")

    @property
    def n(self) -> int:
        return 0 if self.parity == 1 else 1


@dataclass(frozen=True)
class ComplexCharacter:
    """chi(r e^{i theta}) = e^{i n theta}."""

    winding: int


def gamma_psi_real(a: float, y: float):
    """The Weil factor at the real place for psi_a(x) = e^{iax}: 1 or -sign(a)i."""
    from .weil import FourthRoot, ONE

    if y == 0:
        raise DomainError("gamma_psi of zero")
    if a == 0:
        raise DomainError("trivial additive character")
    if y > 0:
        return ONE
    return FourthRoot(3) if a > 0 else FourthRoot(1)


def sl2_localcoef_real(parity: int, a: float, b: float, s: complex) -> complex:
    """The real-place local coefficient with Whittaker twist b and Weil twist a.

    e^{-i pi chi(-1) sign(a)/4} G((1-s)/2 + sign(ab) chi(-1)/4)
    G((1+s)/2 - sign(ab) chi(-1)/4) / (2 pi G(s)).
    """
    if a == 0 or b == 0:
        raise DomainError("twists must be nonzero")
    chi_m1 = RealCharacter(parity).parity
    sign_a = 1 if a > 0 else -1
    sign_ab = 1 if a * b > 0 else -1
    quarter = sign_ab * chi_m1 / 4
    pref = cmath.exp(-1j * math.pi * chi_m1 * sign_a / 4)
    num = complex_gamma((1 - s) / 2 + quarter) * complex_gamma((1 + s) / 2 - quarter)
    den = 2 * math.pi * complex_gamma(s)
    if abs(den) == 0 or not _finite(num / den):
        raise DomainError("pole of the Gamma quotient")
    return pref * num / den


def _l_real(n: int, z: complex) -> complex:
    """L_R(sign^n, z) = pi^{-(z+n)/2} Gamma((z+n)/2)."""
    return math.pi ** (-(z + n) / 2) * complex_gamma((z + n) / 2)


def sl2_localcoef_real_L(parity: int, a: float, s: complex, b: float | None = None) -> complex:
    """The L-function form of the real local coefficient.

    e^{-i pi chi(-1) sign(a)/4} 2^{s-1/2} pi^{-s}
    L(chi', s+1/2)/L(chi', 1/2-s) * L(1, 1-2s)/L(1, 2s),
    where chi' has parity sign(ab) chi(-1); b defaults to a.
    """
    if a == 0:
        raise DomainError("twist must be nonzero")
    if b is None:
        b = a
    chi_m1 = RealCharacter(parity).parity
    sign_a = 1 if a > 0 else -1
    eps = chi_m1 * (1 if a * b > 0 else -1)
    n_eff = 0 if eps == 1 else 1
    pref = cmath.exp(-1j * math.pi * chi_m1 * sign_a / 4)
    pref *= 2 ** (s - 0.5) * math.pi ** (-s)
    val = (_l_real(n_eff, s + 0.5) / _l_real(n_eff, 0.5 - s)
           * _l_real(0, 1 - 2 * s) / _l_real(0, 2 * s))
    if not _finite(val):
        raise DomainError("pole of the L-quotient")
    return pref * val


def _l_complex(n: int, z: complex) -> complex:
    """L_C(chi_n, z) = (2 pi)^{-(z + |n|/2)} Gamma(z + |n|/2)."""
    w = z + abs(n) / 2
    return cmath.exp(-w * math.log(2 * math.pi)) * complex_gamma(w)


def sl2_localcoef_complex(n: int, s: complex) -> tuple[complex, complex]:
    """Both shapes of the complex-place local coefficient.

    Returns (tate_ratio, metaplectic_shape): L(chi^{-1}, 1-s)/L(chi, s) and
    the gamma(chi^2, 2s)/gamma(chi, s+1/2)-shaped combination.  They agree up
    to an exponential factor in s (the duplication formula).
    """
    tate = _l_complex(-n, 1 - s) / _l_complex(n, s)

    def gamma_c(m: int, z: complex) -> complex:
        return _l_complex(-m, 1 - z) / _l_complex(m, z)

    shape = gamma_c(2 * n, 2 * s) / gamma_c(n, s + 0.5)
    if not (_finite(tate) and _finite(shape)):
        raise DomainError("pole of the Gamma quotient")
    return tate, shape


def complex_duplication_identity(n: int, s: complex) -> tuple[complex, complex]:
    """The two sides of the duplication identity behind the complex case.

    2^{2-4s} G(1 + |n|/2 - s)/G(|n|/2 + s) equals
    2 G(1 + |n| - 2s) G(1/2 + |n|/2 + s) / (G(|n| + 2s) G(1/2 + |n|/2 - s))
    for every winding n; the n-independent exponential 2^{2-4s} is the
    factor the two local-coefficient shapes are allowed to differ by.
    """
    m = abs(n)
    lhs = (2 ** (2 - 4 * s) * complex_gamma(1 + m / 2 - s)
           / complex_gamma(m / 2 + s))
    rhs = (2 * complex_gamma(1 + m - 2 * s) * complex_gamma(0.5 + m / 2 + s)
           / (complex_gamma(m + 2 * s) * complex_gamma(0.5 + m / 2 - s)))
    return lhs, rhs


def _finite(z: complex) -> bool:
    return not (cmath.isnan(z) or cmath.isinf(z))
