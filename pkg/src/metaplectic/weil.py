"""The normalized Weil factor gamma_psi on square classes, two ways.

The closed form covers every completion of Q: trivial at C, the sign rule at
R, residue-field Gauss sums at odd p, and the mod-8 tables at Q_2.  The brute
force route evaluates the defining principal-value sums with
:func:`metaplectic.field.unit_sum` and exists so the two can be checked
against each other on every square class.

gamma_psi is multiplicative up to the Hilbert symbol,

    gamma_psi(ab) = gamma_psi(a) gamma_psi(b) (a, b),

factors through square classes, and takes fourth-root-of-unity values, so it
is stored exactly as i^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import (
    AdditiveCharacter,
    DomainError,
    MultiplicativeCharacter,
    Place,
    Rational,
    context,
    hilbert_symbol,
    legendre,
    psi_std,
    square_class,
    unit_part,
    unit_residue,
    unit_sum,
    valuation,
)

TOL = 1e-9


@dataclass(frozen=True)
class FourthRoot:
    """i^k for k mod 4; the value group of gamma_psi."""

    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: "FourthRoot") -> "FourthRoot":
        return FourthRoot(self.k + other.k)

    def inverse(self) -> "FourthRoot":
        return FourthRoot(-self.k)

    def times_sign(self, sign: int) -> "FourthRoot":
        return self if sign == 1 else FourthRoot(self.k + 2)

    def value(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.k]

    @staticmethod
    def from_complex(z: complex, tol: float = 1e-6) -> "FourthRoot":
        for k in range(4):
            if abs(z - FourthRoot(k).value()) < tol:
                return FourthRoot(k)
        raise DomainError(f"{z} is not close to a fourth root of unity")

    def __str__(self) -> str:
        return ("1", "i", "-1", "-i")[self.k]


ONE = FourthRoot(0)


def _gamma_std_unit_odd(u: Fraction, p: int) -> FourthRoot:
    return ONE  # conductor 0 at odd p: units have trivial factor


def _gamma_std_pi_odd(p: int) -> FourthRoot:
    # q^{-1/2} * (residue-field quadratic Gauss sum): 1 for p = 1 mod 4, i else
    return ONE if p % 4 == 1 else FourthRoot(1)


def _gamma_std_q2(a: Fraction) -> FourthRoot:
    """Value at Q_2 for the standard character; the even-conductor table."""
    v = valuation(a, Place("finite", 2)) % 2
    u = unit_part(a, Place("finite", 2))
    if v == 0:
        # units: by a mod 4; psi_std(-1/4) = -i
        return ONE if unit_residue(u, 4) == 1 else FourthRoot(3)
    # 2 * units: gamma(2) = 1, then by a mod 8
    r = unit_residue(u, 8)
    return {1: ONE, 7: FourthRoot(3), 5: FourthRoot(2), 3: FourthRoot(1)}[r]


def gamma_psi(a: Rational, psi: AdditiveCharacter, place: Place) -> FourthRoot:
    """Closed-form gamma_psi(a); exact fourth root of unity.

    Any twist is reduced to the standard character through
    gamma_{psi_b}(a) = gamma_psi(a) (a, b), which follows from the
    multiplicativity rule.
    """
    a = Fraction(a)
    if a == 0:
        raise DomainError("gamma_psi of zero")
    if place.is_complex:
        return ONE
    if place.is_real:
        # psi_b(x) = e^{ibx}: 1 for a > 0, -sign(b) i for a < 0
        if a > 0:
            return ONE
        return FourthRoot(3) if psi.twist > 0 else FourthRoot(1)
    b = psi.twist
    base = _gamma_std_q2(a) if place.p == 2 else _gamma_std_odd(a, place)
    twist_sign = hilbert_symbol(a, b, place) if b != 1 else 1
    return base.times_sign(twist_sign)


def _gamma_std_odd(a: Fraction, place: Place) -> FourthRoot:
    p = place.p
    v = valuation(a, place)
    u = unit_part(a, place)
    if v % 2 == 0:
        return ONE
    sign = legendre(unit_residue(u, p), p)
    return _gamma_std_pi_odd(p).times_sign(sign)


def c_psi(a: Rational, psi: AdditiveCharacter, place: Place) -> complex:
    """The self-dual-measure constant c_psi(a) as a finite sum.

    Empty correction at odd p; a single unit integral at Q_2. Requires a
    normalized psi and a p-adic unit or uniformizer-times-unit argument.
    """
    if not psi.is_normalized:
        raise DomainError("c_psi needs a normalized character")
    a = Fraction(a)
    ctx = context(place)
    v = valuation(a, place)
    if v not in (0, 1):
        raise DomainError("c_psi argument must have valuation 0 or 1")
    p, e = ctx.q, ctx.e
    total = 1 + 0j
    upper = e if v == 0 else e + 1
    for n in range(1, upper + 1):
        shift = Fraction(p) ** (v - 2 * n)
        u0 = a / Fraction(p) ** v
        level = max(2 * e + 1, 2 * n - e, 1)
        total += p**n * unit_sum(lambda x: psi(shift * x * x * u0), level, place)
    return total


def gamma_psi_bruteforce(a: Rational, psi: AdditiveCharacter, place: Place) -> complex:
    """gamma_psi(a) evaluated from the stabilized principal-value sums.

    ||a||^{1/2} c_psi(a) / c_psi(1), with c_psi truncated exactly where the
    tail provably vanishes.  Complex output, to be compared against the
    closed form before snapping.
    """
    if not place.is_finite:
        raise DomainError("brute force route is p-adic only")
    if not psi.is_normalized:
        raise DomainError("reduce to a normalized character first")
    a = Fraction(a)
    if a == 0:
        raise DomainError("gamma_psi of zero")
    v = valuation(a, place) % 2
    rep = unit_part(a, place) * Fraction(place.p) ** v
    norm_half = float(place.p) ** (-v / 2)
    return norm_half * c_psi(rep, psi, place) / c_psi(Fraction(1), psi, place)


def xi(alpha: int, chi_units: MultiplicativeCharacter, x: Rational, place: Place) -> int:
    """The +-1 valued functions with xi(ab) = xi(a) xi(b) (a, b) at odd p.

    Parameterized by alpha = xi(pi) and a quadratic character of the units;
    defined case-by-case on even and odd valuations.
    """
    if not place.is_finite or place.p == 2:
        raise DomainError("xi functions require an odd finite place")
    if alpha not in (1, -1):
        raise DomainError("alpha must be +-1")
    x = Fraction(x)
    if x == 0:
        raise DomainError("xi of zero")
    p = place.p
    v = valuation(x, place)
    eps = unit_part(x, place)
    chi_eps = chi_units(eps)
    if abs(chi_eps.imag) > TOL or abs(abs(chi_eps.real) - 1) > TOL:
        raise DomainError("chi must be quadratic on the units")
    chi_eps = 1 if chi_eps.real > 0 else -1
    n, rem = divmod(v, 2)
    pi_pi = hilbert_symbol(p, p, place)
    val = chi_eps * pi_pi**n
    if rem:
        val *= alpha * hilbert_symbol(eps, p, place)
    return val


def gamma_equals_xi_parameters(place: Place) -> tuple[int, MultiplicativeCharacter]:
    """At p = 1 mod 4, gamma_psi_std coincides with one xi_{alpha,chi}; which one."""
    p = place.p
    if p % 4 != 1:
        raise DomainError("gamma_psi is a xi function only when -1 is a square")
    alpha_root = gamma_psi(Fraction(p), psi_std(place), place)
    alpha = 1 if alpha_root.k == 0 else -1
    return alpha, MultiplicativeCharacter.trivial(place)


def weil_table(place: Place, psi: AdditiveCharacter | None = None) -> dict[str, str]:
    """gamma_psi on every square class; the eight-entry table at Q_2."""
    from .field import square_classes

    psi = psi or psi_std(place)
    return {
        str(cls): str(gamma_psi(cls.representative, psi, place))
        for cls in square_classes(place)
    }
