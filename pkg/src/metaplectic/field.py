"""Arithmetic of the completions of Q.

Places are Q_p (p prime), R and C.  Everything valuation-theoretic is exact
(Fractions and integers); character values that are roots of unity are kept
exact through :class:`RationalAngle`, and only turn into complex floats at
the last moment.

Conventions fixed here and used by every other module:

* the normalized absolute value has ||p|| = 1/q with q = p;
* the standard additive character psi_std has conductor 0 and value
  exp(2*pi*i*{x}_p) where {x}_p is the p-adic fractional part;
* Haar measures: mu(O) = 1 additively, mu(O^*) = 1 - 1/q for d^*x = dx/||x||.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .linalg import Matrix, identity, mat, mat_inv, mat_mul, transpose

Rational = Union[Fraction, int]

TOL_SNAP = 1e-6


class DomainError(ValueError):
    """A precondition of an operation was violated (zero input, wrong place...)."""


# ---------------------------------------------------------------------------
# Places
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A place of Q: finite (odd or even prime), real or complex."""

    kind: str            # "finite" | "real" | "complex"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.p is None or self.p < 2 or not _is_prime(self.p):
                raise DomainError(f"not a prime: {self.p}")
        elif self.kind in ("real", "complex"):
            if self.p is not None:
                raise DomainError("archimedean place takes no prime")
        else:
            raise DomainError(f"unknown place kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def is_complex(self) -> bool:
        return self.kind == "complex"

    def __str__(self) -> str:
        return f"q{self.p}" if self.is_finite else self.kind

    @staticmethod
    def parse(spec: str) -> "Place":
        s = spec.strip().lower()
        if s in ("r", "real", "inf"):
            return Place("real")
        if s in ("c", "complex"):
            return Place("complex")
        if s.startswith("q"):
            return Place("finite", int(s[1:]))
        if s.isdigit():
            return Place("finite", int(s))
        raise DomainError(f"cannot parse place {spec!r}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class LocalFieldContext:
    """Derived constants of a finite place: q, e = v(2), uniformizer, omega."""

    place: Place
    q: int
    e: int
    uniformizer: Fraction
    omega: Fraction          # 2 * pi^{-e}, a unit

    @staticmethod
    def of(place: Place) -> "LocalFieldContext":
        if not place.is_finite:
            raise DomainError("context only defined for finite places")
        p = place.p
        e = 1 if p == 2 else 0
        return LocalFieldContext(place, p, e, Fraction(p), Fraction(2, p**e))


def context(place: Place) -> LocalFieldContext:
    return LocalFieldContext.of(place)


# ---------------------------------------------------------------------------
# Valuations and square classes
# ---------------------------------------------------------------------------

def valuation(x: Rational, place: Place) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("valuation of zero")
    if not place.is_finite:
        raise DomainError("valuation needs a finite place")
    p = place.p
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rational, place: Place) -> Fraction:
    """x / p^{v(x)}; a p-adic unit."""
    x = Fraction(x)
    v = valuation(x, place)
    return x / Fraction(place.p) ** v


def unit_residue(u: Fraction, modulus: int) -> int:
    """Residue of a p-adic unit (given as a rational) modulo p^k."""
    num = u.numerator % modulus
    den = u.denominator % modulus
    return (num * pow(den, -1, modulus)) % modulus


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DomainError("legendre of multiple of p")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class SquareClass:
    """A coset of squares in the completion, named by a small representative."""

    representative: Fraction
    place: Place

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.place != other.place:
            raise DomainError("square classes at different places")
        return square_class(self.representative * other.representative, self.place)

    def inverse(self) -> "SquareClass":
        return square_class(1 / self.representative, self.place)

    @property
    def is_trivial(self) -> bool:
        return self.representative == 1

    def __str__(self) -> str:
        return str(self.representative)


_Q2_UNIT_REPS = {1: Fraction(1), 3: Fraction(-5), 5: Fraction(5), 7: Fraction(-1)}


def square_class(x: Rational, place: Place) -> SquareClass:
    """Canonical representative of x modulo squares.

    Representatives: {1, r, p, rp} at odd p (r the smallest non-residue),
    {+-1, +-5, +-2, +-10} at p = 2, {1, -1} at R, {1} at C.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("square class of zero")
    if place.is_complex:
        return SquareClass(Fraction(1), place)
    if place.is_real:
        return SquareClass(Fraction(1 if x > 0 else -1), place)
    p = place.p
    v = valuation(x, place) % 2
    u = unit_part(x, place)
    if p == 2:
        rep = _Q2_UNIT_REPS[unit_residue(u, 8)]
    else:
        rep = Fraction(1) if legendre(unit_residue(u, p), p) == 1 else Fraction(_nonresidue(p))
    return SquareClass(rep * p**v, place)


@lru_cache(maxsize=None)
def _nonresidue(p: int) -> int:
    return next(r for r in range(2, p) if legendre(r, p) == -1)


def square_classes(place: Place) -> list[SquareClass]:
    """All square classes of the completion."""
    if place.is_complex:
        return [SquareClass(Fraction(1), place)]
    if place.is_real:
        return [SquareClass(Fraction(s), place) for s in (1, -1)]
    p = place.p
    if p == 2:
        units = [Fraction(c) for c in (1, -1, 5, -5)]
    else:
        units = [Fraction(1), Fraction(_nonresidue(p))]
    return [SquareClass(u * t, place) for t in (1, p) for u in units]


# ---------------------------------------------------------------------------
# Hilbert symbols
# ---------------------------------------------------------------------------

def hilbert_symbol(a: Rational, b: Rational, place: Place) -> int:
    """The quadratic Hilbert symbol (a, b) in {+-1} of the completion."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("hilbert symbol of zero")
    if place.is_complex:
        return 1
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, beta = valuation(a, place), valuation(b, place)
    u, w = unit_part(a, place), unit_part(b, place)
    if p != 2:
        sign = 1
        if (alpha * beta) % 2 == 1 and p % 4 == 3:
            sign = -sign
        if beta % 2 == 1 and legendre(unit_residue(u, p), p) == -1:
            sign = -sign
        if alpha % 2 == 1 and legendre(unit_residue(w, p), p) == -1:
            sign = -sign
        return sign
    uu, ww = unit_residue(u, 8), unit_residue(w, 8)
    eps_u, eps_w = (uu - 1) // 2 % 2, (ww - 1) // 2 % 2
    om_u, om_w = (uu * uu - 1) // 8 % 2, (ww * ww - 1) // 8 % 2
    exp = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if exp % 2 else 1


def hilbert_class(a: SquareClass, b: SquareClass) -> int:
    return hilbert_symbol(a.representative, b.representative, a.place)


def hilbert_all_places(a: int, b: int) -> dict[str, int]:
    """The symbol at the real place and at every prime dividing 2ab."""
    out = {"real": hilbert_symbol(a, b, Place("real"))}
    primes = {2}
    for n in (abs(a), abs(b)):
        d, m = 2, n
        while d * d <= m:
            while m % d == 0:
                primes.add(d)
                m //= d
            d += 1
        if m > 1:
            primes.add(m)
    for p in sorted(primes):
        out[f"q{p}"] = hilbert_symbol(a, b, Place("finite", p))
    return out


# ---------------------------------------------------------------------------
# Quadratic forms: diagonalization, Hasse invariant, discriminant
# ---------------------------------------------------------------------------

def diagonalize_symmetric(m: Matrix) -> tuple[list[Fraction], int, Matrix]:
    """Diagonalize a symmetric rational matrix by congruence.

    Returns (nonzero diagonal entries, rank, C) with C * M * C^T diagonal.
    Degenerate forms are allowed; zero diagonal entries are dropped from the
    returned list but kept in C's shape.
    """
    n = len(m)
    a = [list(row) for row in m]
    for i, row in enumerate(a):
        for j in range(n):
            if row[j] != a[j][i]:
                raise DomainError("matrix is not symmetric")
    c = [list(row) for row in identity(n)]

    def row_op(dst, src, f):
        # dst += f * src, applied symmetrically and recorded in c
        for k in range(n):
            a[dst][k] += f * a[src][k]
        for k in range(n):
            a[k][dst] += f * a[k][src]
        for k in range(n):
            c[dst][k] += f * c[src][k]

    for i in range(n):
        if a[i][i] == 0:
            # look below/right for a pivot to move in
            piv = next((r for r in range(i + 1, n) if a[r][r] != 0), None)
            if piv is not None:
                a[i], a[piv] = a[piv], a[i]
                for row in a:
                    row[i], row[piv] = row[piv], row[i]
                c[i], c[piv] = c[piv], c[i]
            else:
                # all remaining diagonal entries vanish; create one
                off = next(
                    ((r, s) for r in range(i, n) for s in range(r + 1, n) if a[r][s] != 0),
                    None,
                )
                if off is None:
                    break  # remaining block is zero
                r, s = off
                if r != i:
                    a[i], a[r] = a[r], a[i]
                    for row in a:
                        row[i], row[r] = row[r], row[i]
                    c[i], c[r] = c[r], c[i]
                    s = i if s == i else s
                row_op(i, s, Fraction(1))
        if a[i][i] == 0:
            continue
        inv = Fraction(1) / a[i][i]
        for r in range(i + 1, n):
            if a[r][i] != 0:
                row_op(r, i, -a[r][i] * inv)
    diag = [a[i][i] for i in range(n)]
    nonzero = [d for d in diag if d != 0]
    return nonzero, len(nonzero), tuple(tuple(row) for row in c)


def hasse_invariant(diag: list[Rational], place: Place) -> int:
    """prod_{i<j} (a_i, a_j) of a diagonal form; the strict-pairs convention."""
    entries = [Fraction(d) for d in diag]
    if any(d == 0 for d in entries):
        raise DomainError("hasse invariant needs nonzero entries")
    h = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            h *= hilbert_symbol(entries[i], entries[j], place)
    return h


def hasse_invariant_weak(diag: list[Rational], place: Place) -> int:
    """prod_{i<=j} (a_i, a_j): the variant including self-pairings.

    Differs from :func:`hasse_invariant` by (d, -1) where d is the
    determinant of the form.
    """
    entries = [Fraction(d) for d in diag]
    h = hasse_invariant(entries, place)
    for d in entries:
        h *= hilbert_symbol(d, d, place)
    return h


def discriminant_class(diag: list[Rational], place: Place) -> SquareClass:
    prod = Fraction(1)
    for d in diag:
        d = Fraction(d)
        if d == 0:
            raise DomainError("discriminant needs nonzero entries")
        prod *= d
    return square_class(prod, place)


# ---------------------------------------------------------------------------
# Additive characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalAngle:
    """The unit complex number exp(2*pi*i*t) with t an exact rational in [0,1)."""

    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t) % 1)

    def __mul__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.t + other.t)

    def conj(self) -> "RationalAngle":
        return RationalAngle(-self.t)

    def value(self) -> complex:
        table = {
            Fraction(0): 1 + 0j,
            Fraction(1, 4): 1j,
            Fraction(1, 2): -1 + 0j,
            Fraction(3, 4): -1j,
        }
        if self.t in table:
            return table[self.t]
        return cmath.exp(2j * cmath.pi * float(self.t))


def padic_fractional_part(x: Rational, place: Place) -> Fraction:
    """The principal part {x}_p in [0, 1): x - {x}_p is p-integral."""
    x = Fraction(x)
    if not place.is_finite:
        raise DomainError("p-adic fractional part needs a finite place")
    if x == 0:
        return Fraction(0)
    p = place.p
    v = valuation(x, place)
    if v >= 0:
        return Fraction(0)
    pk = p ** (-v)
    d_rest = x.denominator // pk
    inv = pow(d_rest, -1, pk)
    return Fraction((x.numerator * inv) % pk, pk)


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi_a(x) = psi_std(a x); psi_std has conductor 0.

    At the real place the convention is psi_a(x) = exp(i a x).
    """

    twist: Fraction
    place: Place

    def __post_init__(self):
        object.__setattr__(self, "twist", Fraction(self.twist))
        if self.twist == 0:
            raise DomainError("additive character needs a nonzero twist")

    @property
    def conductor(self) -> int:
        return -valuation(self.twist, self.place)

    @property
    def is_normalized(self) -> bool:
        return self.conductor == 0

    def angle(self, x: Rational) -> RationalAngle:
        """Exact value as a rational angle (finite places only)."""
        return RationalAngle(padic_fractional_part(self.twist * Fraction(x), self.place))

    def __call__(self, x: Rational) -> complex:
        if self.place.is_real:
            return cmath.exp(1j * float(self.twist) * float(x))
        return self.angle(x).value()

    def normalized(self) -> "AdditiveCharacter":
        """psi_0(x) = psi(x pi^n), n the conductor; a normalized character."""
        n = self.conductor
        return AdditiveCharacter(self.twist * Fraction(self.place.p) ** n, self.place)

    def inverse(self) -> "AdditiveCharacter":
        return AdditiveCharacter(-self.twist, self.place)


def psi_std(place: Place) -> AdditiveCharacter:
    return AdditiveCharacter(Fraction(1), place)


def psi_value(psi: AdditiveCharacter, x: Rational, place: Place) -> RationalAngle:
    if psi.place != place:
        raise DomainError("character/place mismatch")
    return psi.angle(x)


# ---------------------------------------------------------------------------
# Multiplicative characters
# ---------------------------------------------------------------------------

def _generator_mod_pm(p: int, m: int) -> int:
    """Smallest primitive root mod p, lifted so it generates (Z/p^m)^*."""
    g = next(
        g for g in range(2, p)
        if all(pow(g, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1))
    )
    if m >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class MultiplicativeCharacter:
    """A character of Q_p^* with finite conductor.

    Stored as (conductor m, value at the uniformizer, explicit table of values
    on (Z/p^m)^*).  The constructor minimizes the conductor.
    """

    def __init__(self, place: Place, conductor: int, value_at_pi: complex,
                 table: dict[int, complex] | None = None):
        if not place.is_finite:
            raise DomainError("multiplicative characters live at finite places")
        self.place = place
        self.value_at_pi = complex(value_at_pi)
        if conductor == 0 or table is None:
            self.conductor = 0
            self.table = None
            return
        self.conductor = conductor
        self.table = dict(table)
        self._minimize()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def unramified(place: Place, value_at_pi: complex) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(place, 0, value_at_pi)

    @staticmethod
    def trivial(place: Place) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter.unramified(place, 1.0)

    @staticmethod
    def from_generator(place: Place, conductor: int, generator_value: complex,
                       value_at_pi: complex = 1.0) -> "MultiplicativeCharacter":
        """Character on (Z/p^m)^* from its value on the fixed generator (odd p)."""
        p = place.p
        if p == 2:
            raise DomainError("p = 2 characters are given by explicit tables")
        m = conductor
        g = _generator_mod_pm(p, m)
        modulus = p**m
        order = (p - 1) * p ** (m - 1)
        table = {}
        acc, val = 1, 1 + 0j
        for _ in range(order):
            table[acc] = val
            acc = (acc * g) % modulus
            val = val * complex(generator_value)
        return MultiplicativeCharacter(place, m, value_at_pi, table)

    @staticmethod
    def q2_table(place: Place, conductor: int, table: dict[int, complex],
                 value_at_pi: complex = 1.0) -> "MultiplicativeCharacter":
        if place.p != 2:
            raise DomainError("q2_table is for the even place")
        return MultiplicativeCharacter(place, conductor, value_at_pi, table)

    @staticmethod
    def legendre_char(place: Place, value_at_pi: complex = 1.0) -> "MultiplicativeCharacter":
        """The quadratic ramified character mod p (odd p)."""
        return MultiplicativeCharacter.from_generator(place, 1, -1.0, value_at_pi)

    @staticmethod
    def hilbert_twist(a: Rational, place: Place) -> "MultiplicativeCharacter":
        """The quadratic character x -> (a, x) of the completion."""
        a = Fraction(a)
        p = place.p
        value_at_pi = hilbert_symbol(a, p, place)
        m = 1 if p != 2 else 3
        modulus = p**m
        table = {
            u: complex(hilbert_symbol(a, u, place))
            for u in range(1, modulus) if u % p != 0
        }
        return MultiplicativeCharacter(place, m, value_at_pi, table)

    # -- structure ---------------------------------------------------------

    def _minimize(self):
        p = self.place.p
        while self.conductor >= 1:
            m = self.conductor
            modulus = p**m
            if m == 1:
                if all(abs(v - 1) < TOL_SNAP for v in self.table.values()):
                    self.conductor, self.table = 0, None
                return
            lower = p ** (m - 1)
            # trivial on 1 + P^{m-1} iff the table factors through (Z/p^{m-1})^*
            factors = all(
                abs(self.table[u] - self.table[(u + lower) % modulus]) < TOL_SNAP
                for u in self.table if (u + lower) % modulus in self.table
            )
            if not factors:
                return
            self.table = {
                u: self.table[_lift_unit(u, lower, modulus, p)]
                for u in range(1, lower) if u % p != 0
            }
            self.conductor = m - 1

    @property
    def is_unramified(self) -> bool:
        return self.conductor == 0

    def unit_value(self, u: Fraction) -> complex:
        if self.conductor == 0:
            return 1 + 0j
        r = unit_residue(Fraction(u), self.place.p ** self.conductor)
        return self.table[r]

    def __call__(self, x: Rational) -> complex:
        x = Fraction(x)
        if x == 0:
            raise DomainError("character of zero")
        v = valuation(x, self.place)
        return self.value_at_pi**v * self.unit_value(unit_part(x, self.place))

    def value_with_s(self, x: Rational, s: complex) -> complex:
        """chi_(s)(x) = chi(x) ||x||^s."""
        x = Fraction(x)
        v = valuation(x, self.place)
        q = self.place.p
        return self(x) * complex(q) ** (-v * s)

    def mul(self, other: "MultiplicativeCharacter") -> "MultiplicativeCharacter":
        if self.place != other.place:
            raise DomainError("characters at different places")
        p = self.place.p
        m = max(self.conductor, other.conductor)
        if m == 0:
            return MultiplicativeCharacter.unramified(
                self.place, self.value_at_pi * other.value_at_pi)
        modulus = p**m
        table = {
            u: self.unit_value(Fraction(u)) * other.unit_value(Fraction(u))
            for u in range(1, modulus) if u % p != 0
        }
        return MultiplicativeCharacter(
            self.place, m, self.value_at_pi * other.value_at_pi, table)

    def inverse(self) -> "MultiplicativeCharacter":
        if self.conductor == 0:
            return MultiplicativeCharacter.unramified(self.place, 1 / self.value_at_pi)
        table = {u: 1 / v for u, v in self.table.items()}
        return MultiplicativeCharacter(self.place, self.conductor, 1 / self.value_at_pi, table)

    def square(self) -> "MultiplicativeCharacter":
        return self.mul(self)

    def __repr__(self):
        return (f"MultiplicativeCharacter({self.place}, m={self.conductor}, "
                f"pi->{self.value_at_pi:.4g})")


def _lift_unit(u: int, lower: int, modulus: int, p: int) -> int:
    """A representative of u (mod lower) that is a unit mod modulus."""
    cand = u % modulus
    while cand % p == 0:
        cand += lower
    return cand % modulus


# ---------------------------------------------------------------------------
# Unit-group sums and Gauss sums
# ---------------------------------------------------------------------------

def unit_sum(f: Callable[[Fraction], complex], level: int, place: Place) -> complex:
    """(1 - 1/q) x (average of f over O^*/(1 + P^N)).

    This evaluates int_{O^*} f(u) du exactly whenever f is constant on cosets
    of 1 + P^N -- which is the caller's responsibility; pass
    N = max(m(chi), 2e + 1, depth of any psi argument).
    """
    if level < 1:
        raise DomainError("unit_sum level must be >= 1")
    if not place.is_finite:
        raise DomainError("unit_sum needs a finite place")
    p = place.p
    modulus = p**level
    weight = Fraction(1, modulus)
    total = 0 + 0j
    for u in range(1, modulus):
        if u % p:
            total += f(Fraction(u))
    return total * float(weight)


def gauss_sum(chi: MultiplicativeCharacter, psi: AdditiveCharacter) -> complex:
    """G(chi, psi): normalized unit-group character sum at conductor depth.

    Unramified chi gives 1 by convention; ramified chi gives a value of
    modulus q^{-m(chi)/2}.
    """
    if chi.is_unramified:
        return 1 + 0j
    place = chi.place
    psi0 = psi.normalized()
    m = chi.conductor
    pi_pow = Fraction(place.p) ** (-m)
    return unit_sum(lambda u: psi0(pi_pow * u) * chi.unit_value(u), m, place)
