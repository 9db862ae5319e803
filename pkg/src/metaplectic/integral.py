"""Numeric p-adic evaluation of the principal-value integrals.

Every integral here is a finite sum over unit-group cosets, weighted by the
measures mu(O) = 1 and d^*u = du/||u||; shells with large ||u|| vanish by the
stabilization lemmas, and the inner radius contributes a geometric tail that
is summed in closed form.  The local-coefficient reciprocal, the Tate gamma
factor, its metaplectic cousin, and the gamma-twisted Fourier transform all
live here, as checks against the closed forms in :mod:`metaplectic.lfunc`.
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
    unit_sum,
    valuation,
)
from .weil import gamma_psi

STABILITY_TOL = 1e-12


def _e(place: Place) -> int:
    return context(place).e


def _pi(place: Place) -> Fraction:
    return Fraction(place.p)


# ---------------------------------------------------------------------------
# The local-coefficient decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalCoefDecomposition:
    """Shell data of the reciprocal local coefficient.

    C^{-1}(s) = (I0 + chi(pi) q^{-s} I1) / (1 - chi(pi)^2 q^{-2s})
                + sum_n (chi(pi)^{-1} q^s)^n J_n
    """

    place: Place
    chi_at_pi: complex
    I0: complex
    I1: complex
    J: tuple[complex, ...]

    def to_dict(self) -> dict:
        return {
            "place": str(self.place),
            "chi_at_pi": [self.chi_at_pi.real, self.chi_at_pi.imag],
            "I0": [self.I0.real, self.I0.imag],
            "I1": [self.I1.real, self.I1.imag],
            "J": [[j.real, j.imag] for j in self.J],
        }


def localcoef_decompose(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                        place: Place) -> LocalCoefDecomposition:
    """Unit integrals of the reciprocal local coefficient, psi normalized.

    I0, I1 are the gamma-weighted unit integrals on ||u|| = 1 and ||u|| = 1/q;
    J_n covers the shells ||u|| = q^n up to the provable truncation depth
    max(2e + 1, m(chi)).
    """
    if not psi.is_normalized:
        raise DomainError("decomposition requires a normalized psi; "
                          "reduce by the conductor-shift relation first")
    e = _e(place)
    m = chi.conductor
    pi = _pi(place)
    base_level = max(2 * e + 1, m)

    def gamma_inv(x: Fraction) -> complex:
        return gamma_psi(x, psi, place).inverse().value()

    I0 = unit_sum(lambda u: gamma_inv(u) * chi.unit_value(u), base_level, place)
    I1 = unit_sum(lambda u: gamma_inv(pi * u) * chi.unit_value(u), base_level, place)
    J = []
    for n in range(1, base_level + 1):
        shift = pi ** (-n)
        level = max(n, base_level)
        J.append(unit_sum(
            lambda u: gamma_inv(shift * u) * psi(shift * u) * chi.unit_value(u),
            level, place))
    return LocalCoefDecomposition(place, chi.value_at_pi, I0, I1, tuple(J))


def localcoef_eval(dec: LocalCoefDecomposition, s: complex) -> complex:
    """C^{-1}(s) from the decomposition; poles of the geometric part excluded."""
    q = float(dec.place.p)
    x = dec.chi_at_pi * q ** (-s)
    denom = 1 - dec.chi_at_pi**2 * q ** (-2 * s)
    if abs(denom) < 1e-3:
        raise DomainError("s too close to a pole of the unit-shell series")
    total = (dec.I0 + x * dec.I1) / denom
    y = 1 / x
    acc = 1 + 0j
    for jn in dec.J:
        acc *= y
        total += acc * jn
    return total


def localcoef_integral(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                       s: complex, place: Place,
                       psi_gamma: AdditiveCharacter | None = None) -> complex:
    """C_{psi}(chi (x) gamma_{psi_gamma}^{-1}, s)^{-1} as a direct shell sum.

    psi drives the oscillating factor (the Whittaker character); psi_gamma
    drives the Weil-factor twist of the inducing data and defaults to psi.
    An independent code path from the decomposition, with the tail beyond the
    stabilization depth summed geometrically.
    """
    q = float(place.p)
    e = _e(place)
    m = chi.conductor
    n_psi = psi.conductor
    pi = _pi(place)
    depth = max(2 * e + 1, m) + abs(n_psi) + 1
    psi_gamma = psi_gamma or psi

    def gamma_inv(x: Fraction) -> complex:
        return gamma_psi(x, psi_gamma, place).inverse().value()

    x = chi.value_at_pi * q ** (-s)
    total = 0 + 0j
    level = max(2 * e + 1, m, 1)
    # shells ||u|| = q^{n}, i.e. u = pi^{-n} t: contributions for -infty < n <= depth
    for n in range(-depth, depth + 1):
        shift = pi ** (-n)
        shell = unit_sum(
            lambda t: gamma_inv(shift * t) * psi(shift * t) * chi.unit_value(t),
            max(level, n + n_psi), place)
        total += x ** (-n) * shell
    # geometric tail over n <= -depth - 1 (psi trivial there, gamma by parity)
    par = depth + 1
    t_even = unit_sum(lambda t: gamma_inv(t) * chi.unit_value(t), level, place)
    t_odd = unit_sum(lambda t: gamma_inv(pi * t) * chi.unit_value(t), level, place)
    r = x * x
    if abs(r) >= 1:
        raise DomainError("Re(s) too small for the shell series")
    for parity_val, start in ((t_even, par if par % 2 == 0 else par + 1),
                              (t_odd, par if par % 2 == 1 else par + 1)):
        total += parity_val * x**start / (1 - r)
    return total


def localcoef_eval_shifted(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                           s: complex, place: Place) -> complex:
    """C^{-1} for a shifted psi through the conductor-shift relation.

    C_psi(s) = gamma_{psi_0}^{-1}(pi^n) chi(pi^{-n}) q^{ns} C_{psi_0}(s),
    applied to the reciprocal computed from the normalized decomposition.
    """
    n = psi.conductor
    psi0 = psi.normalized()
    dec = localcoef_decompose(chi, psi0, place)
    base = localcoef_eval(dec, s)
    if n == 0:
        return base
    q = float(place.p)
    pi = _pi(place)
    factor = gamma_psi(pi**n, psi0, place).inverse().value()
    factor *= chi.value_at_pi ** (-n) * q ** (n * s)
    return base / factor


# ---------------------------------------------------------------------------
# Tate gamma and the metaplectic gamma-tilde as shell sums
# ---------------------------------------------------------------------------

def tate_gamma_integral(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                        s: complex, m: int | None = None,
                        check_stability: bool = True) -> complex:
    """gamma(chi^{-1}, psi^{-1}, 1-s) = int_{0 < ||u|| <= q^m} chi_(s)(u) psi(u) d^*u.

    Stabilizes for m >= max(m(chi), 1); the tail of small shells is geometric.
    """
    place = chi.place
    if m is None:
        m = max(chi.conductor, 1)
    if m < max(chi.conductor, 1):
        raise DomainError("truncation below the conductor")

    def value(m_used: int) -> complex:
        q = float(place.p)
        pi = _pi(place)
        x = chi.value_at_pi * q ** (-s)
        if abs(x) >= 1:
            raise DomainError("Re(s) must be positive for the shell series")
        level = max(chi.conductor, m_used, 1)
        total = 0 + 0j
        # u = pi^{-n} t with n <= m_used; psi nontrivial only for n >= 1
        for n in range(0, m_used + 1):
            shift = pi ** (-n)
            shell = unit_sum(lambda t: psi(shift * t) * chi.unit_value(t),
                             max(level, n), place)
            total += x ** (-n) * shell
        # n <= -1: psi = 1; unit integral of chi is 0 unless unramified
        if chi.is_unramified:
            total += (1 - 1 / q) * x / (1 - x)
        return total

    out = value(m)
    if check_stability:
        again = value(m + 1)
        if abs(out - again) > STABILITY_TOL * max(1.0, abs(out)):
            raise DomainError("Tate shell sum failed to stabilize")
    return out


def gamma_tilde_integral(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                         s: complex) -> complex:
    """gamma~(chi^{-1}, psi^{-1}, 1-s): the gamma_psi-weighted Tate shell sum.

    Numerically equal to the reciprocal local coefficient; kept as a separate
    code path so the equality is a real test.
    """
    place = chi.place
    if not psi.is_normalized:
        raise DomainError("normalized psi expected")
    e = _e(place)
    m = max(chi.conductor, 2 * e + 1)
    q = float(place.p)
    pi = _pi(place)
    x = chi.value_at_pi * q ** (-s)
    if abs(x) >= 1:
        raise DomainError("Re(s) must be positive for the shell series")
    level = max(chi.conductor, 2 * e + 1)

    def gamma_inv(v: Fraction) -> complex:
        return gamma_psi(v, psi, place).inverse().value()

    total = 0 + 0j
    for n in range(0, m + 1):
        shift = pi ** (-n)
        shell = unit_sum(
            lambda t: gamma_inv(shift * t) * psi(shift * t) * chi.unit_value(t),
            max(level, n), place)
        total += x ** (-n) * shell
    # small shells: psi trivial, gamma_psi^{-1} by parity of the valuation
    t_even = unit_sum(lambda t: gamma_inv(t) * chi.unit_value(t), level, place)
    t_odd = unit_sum(lambda t: gamma_inv(pi * t) * chi.unit_value(t), level, place)
    r = x * x
    total += t_even * r / (1 - r)          # n = -2, -4, ...
    total += t_odd * x / (1 - r)           # n = -1, -3, ...
    return total


# ---------------------------------------------------------------------------
# The gamma-twisted transform and Mellin sums
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndicatorFunction:
    """1 on a ball P^n or on a coset a + P^n, 0 elsewhere."""

    kind: str                 # "ball" | "coset"
    n: int
    a: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("ball", "coset"):
            raise DomainError("indicator kind must be ball or coset")
        if self.kind == "coset" and self.a == 0:
            raise DomainError("coset indicator needs a nonzero center")

    def contains(self, x: Fraction, place: Place) -> bool:
        diff = x - (self.a if self.kind == "coset" else 0)
        return diff == 0 or valuation(diff, place) >= self.n


def phi_tilde(phi: IndicatorFunction, y: Rational, psi: AdditiveCharacter,
              place: Place) -> complex:
    """The gamma-twisted Fourier transform of an indicator, closed form.

    Coset indicators require ||a|| >= q^{2e+1-n}; ball indicators are handled
    through the parity constant and the stabilized shell constant c_m.
    """
    if not psi.is_normalized:
        raise DomainError("normalized psi expected")
    y = Fraction(y)
    if y == 0:
        raise DomainError("transform evaluated away from 0 only")
    e = _e(place)
    q = float(place.p)
    vy = valuation(y, place)
    norm_y_exp = -vy                       # ||y|| = q^{norm_y_exp}
    if phi.kind == "coset":
        va = valuation(phi.a, place)
        if -va < 2 * e + 1 - phi.n:
            raise DomainError("coset violates the norm precondition")
        if norm_y_exp > phi.n:
            return 0 + 0j
        ay = phi.a * y
        return (psi(ay) * gamma_psi(ay, psi, place).inverse().value()
                * q ** (-phi.n))
    # ball indicator
    m, n = norm_y_exp, phi.n
    if m <= n:
        cpsi_m1 = _c_psi_minus_one(psi, place)
        base = 1 / (cpsi_m1 * (1 + 1 / q) * q**n)
        return base * (1 if (n - m) % 2 == 0 else 1 / q)
    c_m = _phi_tilde_shell_constant(psi, place, m - n)
    return c_m * q ** (-m)


def _c_psi_minus_one(psi: AdditiveCharacter, place: Place) -> complex:
    from .weil import c_psi
    return c_psi(Fraction(-1), psi, place)


def _phi_tilde_shell_constant(psi: AdditiveCharacter, place: Place, depth: int) -> complex:
    """c_m = int_{||x|| <= q^{depth}} psi(x) gamma_psi^{-1}(x) dx; stabilizes."""
    e = _e(place)
    depth = min(depth, 2 * e + 2)          # stabilized beyond 2e + 1
    q = float(place.p)
    pi = _pi(place)
    total = 0 + 0j

    def gamma_inv(v: Fraction) -> complex:
        return gamma_psi(v, psi, place).inverse().value()

    # additive measure: shell ||x|| = q^{k} has measure q^{k}(1 - 1/q)
    for k in range(1, depth + 1):
        shift = pi ** (-k)
        shell = unit_sum(lambda t: psi(shift * t) * gamma_inv(shift * t),
                         max(2 * e + 1, k), place)
        total += q**k * shell
    # ||x|| <= 1: psi = 1 there and gamma parity alternates
    lvl = 2 * e + 1
    t_even = unit_sum(lambda t: gamma_inv(t), lvl, place)
    t_odd = unit_sum(lambda t: gamma_inv(pi * t), lvl, place)
    total += t_even * 1 / (1 - 1 / q**2)
    total += t_odd * (1 / q) / (1 - 1 / q**2)
    return total


def phi_tilde_direct(phi: IndicatorFunction, y: Rational, psi: AdditiveCharacter,
                     place: Place, depth: int | None = None) -> complex:
    """The transform as an honest finite Riemann sum over residue cosets."""
    y = Fraction(y)
    if y == 0:
        raise DomainError("transform evaluated away from 0 only")
    e = _e(place)
    p = place.p
    pi = _pi(place)
    vy = valuation(y, place)
    n = phi.n
    if phi.kind == "coset":
        va = valuation(phi.a, place)
        inner = max(-vy + 2 * e + 1, n + 1, va + 2 * e + 1)
    else:
        inner = max(-vy + 2 * e + 1, n + 1)
    if depth is not None:
        inner = max(inner, depth)
    if phi.kind == "coset":
        # every x in the coset has valuation v(a) < n, so one grid depth works
        total = 0 + 0j
        count = p ** (inner - n)
        measure = float(Fraction(1, p**inner))
        for t in range(count):
            arg = (phi.a + Fraction(t) * pi**n) * y
            total += (psi(arg) * gamma_psi(arg, psi, place).inverse().value()
                      * measure)
        return total
    # ball P^n: exact unit sums shell by shell, then the analytic parity tail
    # of the ball P^K around 0 where psi is trivial and gamma oscillates
    q = float(p)
    total = 0 + 0j
    K = inner + 2 * e + 1
    for k in range(n, K):
        shift = pi**k
        lvl = max(2 * e + 1, -(k + vy), 1)
        total += q ** (-k) * unit_sum(
            lambda t: psi(shift * t * y)
            * gamma_psi(shift * t * y, psi, place).inverse().value(),
            lvl, place)
    lvl = 2 * e + 1
    u_even = unit_sum(
        lambda t: gamma_psi(pi**K * y * t, psi, place).inverse().value(), lvl, place)
    u_odd = unit_sum(
        lambda t: gamma_psi(pi ** (K + 1) * y * t, psi, place).inverse().value(),
        lvl, place)
    geo = 1 / (1 - q ** -2.0)
    total += u_even * q ** (-K) * geo
    total += u_odd * q ** (-(K + 1)) * geo
    return total


def zeta_mellin(phi: IndicatorFunction, chi: MultiplicativeCharacter, s: complex,
                place: Place) -> complex:
    """zeta(phi, chi, s) = int phi(x) chi_(s)(x) d^*x for indicator phi."""
    p = place.p
    q = float(p)
    pi = _pi(place)
    x = chi.value_at_pi * q ** (-s)
    if phi.kind == "coset":
        va = valuation(phi.a, place)
        if va >= phi.n:
            raise DomainError("coset through 0: decompose into shells instead")
        # the coset misses 0: v is constant = va on it; enumerate sub-cosets
        inner = max(phi.n, va + chi.conductor) + 1
        cnt = p ** (inner - phi.n)
        measure = float(Fraction(1, p**inner))
        total = 0 + 0j
        for t in range(cnt):
            xx = phi.a + Fraction(t) * pi**phi.n
            total += chi(xx) * q ** (-va * s) * measure * q**va
        return total
    # ball P^n: shells n, n+1, ...; the unit integral of ramified chi vanishes
    if not chi.is_unramified:
        return 0 + 0j
    if abs(x) >= 1:
        raise DomainError("Re(s) must be positive")
    return (1 - 1 / q) * x ** phi.n / (1 - x)


def zeta_mellin_of_tilde(phi: IndicatorFunction, chi: MultiplicativeCharacter,
                         s: complex, psi: AdditiveCharacter, place: Place) -> complex:
    """zeta(phi~, chi, s): Mellin transform of the twisted transform.

    Evaluated shell by shell from the closed forms of phi~, with geometric
    tails; valid for 0 < Re(s) < 1.
    """
    q = float(place.p)
    pi = _pi(place)
    e = _e(place)
    x = chi.value_at_pi * q ** (-s)
    if abs(x) >= 1:
        raise DomainError("Re(s) must be positive")
    n = phi.n
    if phi.kind == "coset":
        # phi~(y) = psi(ay) gamma^{-1}(ay) q^{-n} on ||y|| <= q^{n}
        va = valuation(phi.a, place)
        total = 0 + 0j
        kmin = va - 1                      # below va, psi(ay) = 1 and the
        shells = {}                        # shell value has period 2 in k
        for k in range(kmin - 1, n + 1):
            shift = pi ** (-k)
            level = max(chi.conductor, 2 * e + 1, k - va, 1)
            shells[k] = unit_sum(
                lambda t: psi(phi.a * shift * t)
                * gamma_psi(phi.a * shift * t, psi, place).inverse().value()
                * chi.unit_value(t),
                level, place)
            total += x ** (-k) * shells[k]
        # tail k <= kmin - 2, grouped by parity; x^{-k} grows like x^{|k|}
        r = x * x
        total += shells[kmin] * x ** (-kmin) * r / (1 - r)
        total += shells[kmin - 1] * x ** (-(kmin - 1)) * r / (1 - r)
        return total * q ** (-n)
    # ball: values from (8.68)/(8.69)
    cpsi_m1 = _c_psi_minus_one(psi, place)
    base = 1 / (cpsi_m1 * (1 + 1 / q) * q**n)
    if not chi.is_unramified:
        return 0 + 0j
    mu_unit = 1 - 1 / q
    total = 0 + 0j
    # ||y|| = q^{m}, m <= n: phi~(y) = base * (1 or 1/q by parity of n - m)
    r = x * x
    # even n - m (m = n, n-2, ...): sum base * x^{m}... shells in x^{-m} weights
    # Mellin: int phi~(y) chi_(s)(y) d^*y = sum_m x^{-(-m)}: careful: shell
    # ||y|| = q^{m} means v(y) = -m, weight x^{-m} per earlier convention.
    for parity, factor in ((0, 1.0), (1, 1 / q)):
        # m = n - parity, n - parity - 2, ... -> -infty
        first = x ** (-(n - parity))
        total += base * factor * mu_unit * first / (1 - r)
    # ||y|| = q^{m}, m > n: phi~(y) = c_m q^{-m}
    for m in range(n + 1, n + 2 * e + 2):
        c_m = _phi_tilde_shell_constant(psi, place, m - n)
        total += c_m * q ** (-m) * mu_unit * x ** (-m)
    c_stab = _phi_tilde_shell_constant(psi, place, 2 * e + 2)
    w = x ** (-1) / q
    if abs(w) >= 1:
        raise DomainError("Re(s) must be below 1 for the outer tail")
    mstart = n + 2 * e + 2
    total += c_stab * mu_unit * (x ** (-1) / q) ** mstart / (1 - w)
    return total


# ---------------------------------------------------------------------------
# Measures of the square-congruence sets
# ---------------------------------------------------------------------------

def measure_H(n: int, place: Place) -> Fraction:
    """mu{x in O^*: ||1 - x^2|| <= q^{-n}}, exact."""
    return _measure_by_count(n, place, lambda v: v >= n)


def measure_D(n: int, place: Place) -> Fraction:
    """mu{x in O^*: ||1 - x^2|| = q^{1-n}}, exact."""
    return _measure_by_count(n, place, lambda v: v == n - 1)


def _measure_by_count(n: int, place: Place, pred) -> Fraction:
    if n < 1:
        raise DomainError("depth must be >= 1")
    p = place.p
    e = _e(place)
    depth = max(n, 2 * e + 1) + e + 1      # x^2 determined mod P^{depth+e}
    modulus = p**depth
    count = 0
    for x in range(modulus):
        if x % p == 0:
            continue
        val = 1 - x * x
        if val % modulus == 0:
            v = depth  # at least depth; deep enough for the predicates used
        else:
            v = 0
            w = val
            while w % p == 0:
                w //= p
                v += 1
        if pred(min(v, depth)):
            count += 1
    return Fraction(count, modulus)
