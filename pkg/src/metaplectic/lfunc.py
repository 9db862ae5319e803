"""Factored rational functions in Y = q^{-s}: the home of every L- and gamma-factor.

A GammaRat is scalar * Y^degree * prod(1 - a Y) / prod(1 - b Y).  Shifts in s
multiply the parameters by powers of q, arguments at 2s split into factor
pairs (1 - cY)(1 + cY), and the reflection s -> 1 - s is the substitution
Y -> q^{-1} Y^{-1}, so the whole identity zoo of local coefficients stays
inside one algebra with exact degree bookkeeping.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .field import (
    AdditiveCharacter,
    DomainError,
    MultiplicativeCharacter,
    Place,
    gauss_sum,
)
from .weil import gamma_psi, c_psi

TOL_MATCH = 1e-9


@dataclass
class GammaRat:
    q: float                      # residue cardinality behind Y = q^{-s}
    scalar: complex
    degree: int = 0
    zeros: list[complex] = field(default_factory=list)
    poles: list[complex] = field(default_factory=list)
    flagged: bool = False         # scalar only known up to an undetermined unit

    def __post_init__(self):
        if any(abs(a) == 0 for a in self.zeros + self.poles):
            raise DomainError("zero parameters are not allowed in factored form")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def one(q: float) -> "GammaRat":
        return GammaRat(q, 1.0 + 0j)

    @staticmethod
    def constant(q: float, c: complex) -> "GammaRat":
        return GammaRat(q, c)

    @staticmethod
    def monomial(q: float, c: complex, degree: int, flagged: bool = False) -> "GammaRat":
        return GammaRat(q, c, degree, flagged=flagged)

    # -- algebra ------------------------------------------------------------

    def mul(self, other: "GammaRat") -> "GammaRat":
        self._check(other)
        return GammaRat(
            self.q,
            self.scalar * other.scalar,
            self.degree + other.degree,
            self.zeros + other.zeros,
            self.poles + other.poles,
            self.flagged or other.flagged,
        ).reduce()

    def div(self, other: "GammaRat") -> "GammaRat":
        self._check(other)
        return GammaRat(
            self.q,
            self.scalar / other.scalar,
            self.degree - other.degree,
            self.zeros + other.poles,
            self.poles + other.zeros,
            self.flagged or other.flagged,
        ).reduce()

    def inverse(self) -> "GammaRat":
        return GammaRat(self.q, 1 / self.scalar, -self.degree,
                        list(self.poles), list(self.zeros), self.flagged)

    def reduce(self) -> "GammaRat":
        """Cancel matching zero/pole pairs (parameter equality to tolerance)."""
        zs, ps = list(self.zeros), list(self.poles)
        out_z = []
        for z in zs:
            hit = next((i for i, p in enumerate(ps) if abs(p - z) < TOL_MATCH), None)
            if hit is None:
                out_z.append(z)
            else:
                ps.pop(hit)
        return GammaRat(self.q, self.scalar, self.degree, out_z, ps, self.flagged)

    def subst_inverse(self, c: complex = 1.0) -> "GammaRat":
        """The factored form of G(c / Y).

        Used for the backward local coefficient (c = 1: s -> -s) and for the
        functional-equation reflection (c = 1/q: s -> 1 - s).
        """
        scalar = self.scalar * complex(c) ** self.degree
        degree = -self.degree
        zeros, poles = [], []
        for a in self.zeros:
            # 1 - a c / Y = (-a c / Y)(1 - Y/(a c))
            scalar *= -a * c
            degree -= 1
            zeros.append(1 / (a * c))
        for b in self.poles:
            scalar /= -b * c
            degree += 1
            poles.append(1 / (b * c))
        return GammaRat(self.q, scalar, degree, zeros, poles, self.flagged).reduce()

    # -- evaluation ----------------------------------------------------------

    def eval_y(self, y: complex) -> complex:
        num = self.scalar * complex(y) ** self.degree
        for a in self.zeros:
            num *= 1 - a * y
        den = 1 + 0j
        for b in self.poles:
            den *= 1 - b * y
        if abs(den) == 0:
            raise DomainError("evaluation at a pole")
        return num / den

    def eval_s(self, s: complex) -> complex:
        return self.eval_y(complex(self.q) ** (-s))

    def order_at_s0(self) -> int:
        """Order of vanishing at s = 0 (zeros minus poles with parameter 1)."""
        z = sum(1 for a in self.zeros if abs(a - 1) < TOL_MATCH)
        p = sum(1 for b in self.poles if abs(b - 1) < TOL_MATCH)
        return z - p

    def equals(self, other: "GammaRat", tol: float = TOL_MATCH) -> bool:
        ok, _ = self.match(other, tol)
        return ok

    def match(self, other: "GammaRat", tol: float = TOL_MATCH) -> tuple[bool, str]:
        """Greedy multiset comparison of factored forms; reports mismatches."""
        a, b = self.reduce(), other.reduce()
        if a.degree != b.degree:
            return False, f"degree {a.degree} != {b.degree}"
        for name, xs, ys in (("zeros", a.zeros, b.zeros), ("poles", a.poles, b.poles)):
            xs, ys = list(xs), list(ys)
            if len(xs) != len(ys):
                return False, f"{name} count {len(xs)} != {len(ys)}"
            for x in sorted(xs, key=lambda t: (abs(t), cmath.phase(t))):
                hit = next((i for i, y in enumerate(ys) if abs(y - x) < tol), None)
                if hit is None:
                    return False, f"unmatched {name} parameter {x}"
                ys.pop(hit)
        if not (a.flagged or b.flagged):
            denom = max(abs(a.scalar), abs(b.scalar), 1.0)
            if abs(a.scalar - b.scalar) > tol * denom:
                return False, f"scalar {a.scalar} != {b.scalar}"
        return True, ""

    def is_constant(self, tol: float = TOL_MATCH) -> bool:
        r = self.reduce()
        return r.degree == 0 and not r.zeros and not r.poles

    def _check(self, other: "GammaRat"):
        if abs(self.q - other.q) > 0:
            raise DomainError("mixing factored forms over different q")

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "scalar": [self.scalar.real, self.scalar.imag],
            "degree": self.degree,
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "poles": [[p.real, p.imag] for p in self.poles],
            "flagged": self.flagged,
        }


# ---------------------------------------------------------------------------
# Satake parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SatakeParams:
    values: tuple[complex, ...]
    unitary: bool = False

    def __post_init__(self):
        if any(v == 0 for v in self.values):
            raise DomainError("Satake parameters must be nonzero")
        if self.unitary and any(abs(abs(v) - 1) > 1e-9 for v in self.values):
            raise DomainError("unitary flag requires unit-modulus parameters")

    def __len__(self):
        return len(self.values)

    def dual(self) -> "SatakeParams":
        return SatakeParams(tuple(1 / v for v in self.values), self.unitary)


# ---------------------------------------------------------------------------
# L- and gamma-factors
# ---------------------------------------------------------------------------

def l_factor(q: float, alpha: complex | None, shift: Fraction | float = 0) -> GammaRat:
    """L(chi, s + shift) = 1/(1 - alpha q^{-shift} Y); alpha None means ramified."""
    if alpha is None:
        return GammaRat.one(q)
    return GammaRat(q, 1.0 + 0j, 0, [], [alpha * q ** (-float(shift))])


def tate_gamma_sym(q: float, alpha: complex, shift: Fraction | float = 0,
                   doubled: bool = False) -> GammaRat:
    """gamma(chi, s + shift) (or at 2s + shift) for unramified chi, normalized psi.

    gamma(chi, u) = epsilon L(chi^{-1}, 1-u)/L(chi, u) with epsilon = 1 in this
    regime; in Y_u the factored form is -alpha q Y_u (1 - alpha Y_u)/(1 - alpha q Y_u).
    The doubled flag encodes u = 2s by splitting each factor into a +- pair.
    """
    a = alpha * q ** (-float(shift))
    if not doubled:
        return GammaRat(q, -a * q, 1, [a], [a * q])
    root_z = cmath.sqrt(a)
    root_p = cmath.sqrt(a * q)
    return GammaRat(q, -a * q, 2, [root_z, -root_z], [root_p, -root_p])


def tate_gamma_ramified(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
                        shift: Fraction | float = 0) -> GammaRat:
    """gamma(chi, s + shift) for ramified chi: a Gauss-sum monomial.

    From the shell computation of the Tate integral: for normalized psi,
    gamma(chi, s) = chi(pi)^m q^m G(chi^{-1}, psi^{-1}) Y^m with m = m(chi).
    """
    if chi.is_unramified:
        raise DomainError("use tate_gamma_sym for unramified characters")
    if not psi.is_normalized:
        raise DomainError("normalized psi expected")
    q = float(chi.place.p)
    m = chi.conductor
    g = gauss_sum(chi.inverse(), psi.inverse())
    scalar = chi.value_at_pi**m * q**m * g * q ** (-m * float(shift))
    return GammaRat.monomial(q, scalar, m)


def tate_gamma(chi: MultiplicativeCharacter, psi: AdditiveCharacter,
               shift: Fraction | float = 0, doubled: bool = False) -> GammaRat:
    if chi.is_unramified:
        return tate_gamma_sym(float(chi.place.p), chi.value_at_pi, shift, doubled)
    if doubled:
        raise DomainError("doubled arguments are used with unramified data only")
    return tate_gamma_ramified(chi, psi, shift)


def sym2_gamma(params: SatakeParams, q: float) -> GammaRat:
    """gamma(tau, sym^2, 2s) = prod_{i <= j} gamma(alpha_i alpha_j, 2s)."""
    out = GammaRat.one(q)
    vals = params.values
    for i in range(len(vals)):
        for j in range(i, len(vals)):
            out = out.mul(tate_gamma_sym(q, vals[i] * vals[j], 0, doubled=True))
    return out


def rankin_gamma(params_a: SatakeParams, params_b: SatakeParams, q: float,
                 shift: Fraction | float = 0, doubled: bool = False) -> GammaRat:
    """prod_{i,j} gamma(a_i b_j, s + shift) (or at 2s)."""
    out = GammaRat.one(q)
    for a in params_a.values:
        for b in params_b.values:
            out = out.mul(tate_gamma_sym(q, a * b, shift, doubled))
    return out


# ---------------------------------------------------------------------------
# Metaplectic rank-1 x GL gamma factor and its L-ratio form
# ---------------------------------------------------------------------------

def metaplectic_gamma_ps(eta: SatakeParams, alpha: SatakeParams, q: float) -> GammaRat:
    """The double product over gamma(alpha_j eta_i^{-1}, s) gamma(eta_i alpha_j, s)."""
    out = GammaRat.one(q)
    for e in eta.values:
        for a in alpha.values:
            out = out.mul(tate_gamma_sym(q, a / e))
            out = out.mul(tate_gamma_sym(q, e * a))
    return out


def L_psi_sym(eta: SatakeParams, alpha: SatakeParams, q: float,
              shift: Fraction | float = 0) -> GammaRat:
    """L(sigma x tau, s + shift) = prod L(eta_i alpha_j) L(eta_i^{-1} alpha_j)."""
    out = GammaRat.one(q)
    for e in eta.values:
        for a in alpha.values:
            out = out.mul(l_factor(q, e * a, shift))
            out = out.mul(l_factor(q, a / e, shift))
    return out


def metaplectic_gamma_ratio(eta: SatakeParams, alpha: SatakeParams, q: float) -> GammaRat:
    """The L-ratio form L(sigma x tau-dual, 1 - s)/L(sigma x tau, s)."""
    num = L_psi_sym(eta, alpha.dual(), q).subst_inverse(1 / q)
    return num.div(L_psi_sym(eta, alpha, q))


# ---------------------------------------------------------------------------
# Local coefficients: the rank-1 metaplectic closed form
# ---------------------------------------------------------------------------

def sl2_localcoef_closed(chi: MultiplicativeCharacter, psi: AdditiveCharacter) -> GammaRat:
    """The closed form k q^{ds} L(chi, s+1/2) L(chi^{-2}, 1-2s)
    / (L(chi^{-1}, 1/2-s) L(chi^2, 2s)) of the rank-1 genuine local coefficient.

    For chi^2 ramified the scalar is not pinned down; the returned monomial is
    flagged and only its shape is meaningful.
    """
    place = chi.place
    q = float(place.p)
    e = 1 if place.p == 2 else 0
    n_psi = psi.conductor
    m = chi.conductor
    chi2 = chi.square()

    if not chi2.is_unramified:
        return GammaRat.monomial(q, 1.0 + 0j, 0, flagged=True)

    psi0 = psi.normalized()
    gam0 = gamma_psi(Fraction(place.p) ** n_psi, psi0, place) if n_psi else None
    k = 1 + 0j
    if n_psi:
        k *= gam0.inverse().value()
    k *= c_psi(Fraction(-1), psi0, place)
    arg = Fraction(-1) * Fraction(place.p) ** (2 * e - m - n_psi)
    k *= chi(arg)
    k /= gauss_sum(chi, psi)
    k *= q ** (-m / 2)
    d = m - 2 * e + n_psi

    # assemble in Y: q^{ds} = Y^{-d}
    out = GammaRat.monomial(q, k, -d)
    alpha = chi.value_at_pi if chi.is_unramified else None
    alpha2 = chi2.value_at_pi
    out = out.mul(l_factor(q, alpha, Fraction(1, 2)))                    # L(chi, s+1/2)
    out = out.div(l_factor(q, 1 / alpha if alpha else None,
                           Fraction(1, 2)).subst_inverse(1.0))           # / L(chi^{-1}, 1/2-s)
    out = out.mul(_l_double_reflected(q, alpha2))                        # L(chi^{-2}, 1-2s)
    out = out.div(_l_double(q, alpha2))                                  # / L(chi^2, 2s)
    return out


def _l_double(q: float, alpha2: complex) -> GammaRat:
    """L(chi^2, 2s) = 1/(1 - alpha2 Y^2) as a +- factor pair."""
    r = cmath.sqrt(alpha2)
    return GammaRat(q, 1.0 + 0j, 0, [], [r, -r])


def _l_double_reflected(q: float, alpha2: complex) -> GammaRat:
    """L(chi^{-2}, 1 - 2s) = 1/(1 - alpha2^{-1} q^{-1} Y^{-2}).

    In the doubled variable the reflection 2s -> 1 - 2s is Y -> q^{-1/2}/Y.
    """
    return _l_double(q, 1 / alpha2).subst_inverse(q ** -0.5)


def sl2_localcoef_gamma_form(chi: MultiplicativeCharacter, psi: AdditiveCharacter) -> GammaRat:
    """The gamma-ratio shape gamma(chi^2, 2s)/gamma(chi, s + 1/2).

    Matches sl2_localcoef_closed exactly in the odd/unramified/normalized
    regime; elsewhere agreement holds up to an exponential factor.
    """
    q = float(chi.place.p)
    chi2 = chi.square()
    num = (tate_gamma_sym(q, chi2.value_at_pi, 0, doubled=True)
           if chi2.is_unramified else tate_gamma_ramified(chi2, psi.normalized()))
    den = tate_gamma(chi, psi.normalized(), Fraction(1, 2))
    return num.div(den)


# ---------------------------------------------------------------------------
# GL_2 local coefficient (10.1) and the Sp_2m product/closed forms
# ---------------------------------------------------------------------------

def gl_localcoef_sym(beta: MultiplicativeCharacter, psi: AdditiveCharacter) -> GammaRat:
    """The GL_2 local coefficient in the variable u = s_1 - s_2.

    beta = beta_1 beta_2^{-1}; for normalized psi this is
    beta(pi^{m}) / G(beta, psi^{-1}) * L(beta^{-1}, 1-u)/L(beta, u).
    """
    if not psi.is_normalized:
        raise DomainError("normalized psi expected")
    q = float(beta.place.p)
    m = beta.conductor
    scalar = beta.value_at_pi**m / gauss_sum(beta, psi.inverse())
    out = GammaRat.constant(q, scalar)
    alpha = beta.value_at_pi if beta.is_unramified else None
    out = out.mul(l_factor(q, 1 / alpha if alpha else None).subst_inverse(1 / q))
    out = out.div(l_factor(q, alpha))
    return out


def gl_localcoef_unramified(q: float, beta_value: complex) -> GammaRat:
    """(10.1) for unramified beta, normalized psi: L(beta^{-1},1-u)/L(beta,u)."""
    return (l_factor(q, 1 / beta_value).subst_inverse(1 / q)
            .div(l_factor(q, beta_value)))


def sp_localcoef_product(mu: SatakeParams, q: float,
                         psi: AdditiveCharacter | None = None,
                         chis: list[MultiplicativeCharacter] | None = None) -> GammaRat:
    """Rank-by-rank product route: SL_2-cover factors times GL gamma factors.

    mu lists the torus parameters alpha_1..alpha_m; the GL factors contribute
    gamma(alpha_i alpha_j, 2s) over i < j.
    """
    out = GammaRat.one(q)
    vals = mu.values
    for i, a in enumerate(vals):
        if chis is not None:
            out = out.mul(sl2_localcoef_closed(chis[i], psi))
        else:
            out = out.mul(_sl2_unramified_closed(q, a))
        for j in range(i + 1, len(vals)):
            out = out.mul(tate_gamma_sym(q, a * vals[j], 0, doubled=True))
    return out


def _sl2_unramified_closed(q: float, alpha: complex) -> GammaRat:
    """Theorem-8.1 closed form for unramified data, odd q, normalized psi."""
    out = GammaRat.one(q)
    out = out.mul(l_factor(q, alpha, Fraction(1, 2)))
    out = out.div(l_factor(q, 1 / alpha, Fraction(1, 2)).subst_inverse(1.0))
    out = out.mul(_l_double_reflected(q, alpha * alpha))
    out = out.div(_l_double(q, alpha * alpha))
    return out


def sp_localcoef_closed(mu: SatakeParams, q: float) -> GammaRat:
    """gamma(tau, sym^2, 2s)/gamma(tau, s + 1/2): the closed route."""
    num = sym2_gamma(mu, q)
    den = GammaRat.one(q)
    for a in mu.values:
        den = den.mul(tate_gamma_sym(q, a, Fraction(1, 2)))
    return num.div(den)


# ---------------------------------------------------------------------------
# Reducibility of unitary principal series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalSeriesEntry:
    """One inducing character: unramified unitary value, or quadratic ramified."""

    value: complex | None = None          # alpha(pi) for unramified entries
    quadratic_ramified: bool = False      # Legendre-type entry (chi^2 trivial)

    def __post_init__(self):
        if self.quadratic_ramified:
            if self.value is not None and abs(abs(self.value) - 1) > 1e-9:
                raise DomainError("quadratic entries carry a unit value at pi")
        elif self.value is None:
            raise DomainError("an entry needs a value or a ramified marker")
        elif abs(abs(self.value) - 1) > 1e-9:
            raise DomainError("reducibility criterion expects unitary entries")

    @property
    def is_quadratic(self) -> bool:
        if self.quadratic_ramified:
            return True
        return abs(self.value - 1) < TOL_MATCH or abs(self.value + 1) < TOL_MATCH


def beta_product(forward: GammaRat, backward: GammaRat) -> GammaRat:
    """The product of opposite local coefficients C(s) C'(-s)."""
    return forward.mul(backward.subst_inverse(1.0))


@dataclass
class ReflectionReport:
    kind: str                # "gl_pair" | "gl_inverse_pair" | "quadratic"
    indices: tuple[int, ...]
    vanishing_order: int


def reducibility_ps(entries: list[PrincipalSeriesEntry], q: float) -> dict:
    """Knapp-Stein style verdict for unitary principal series.

    Enumerates the stabilizing reflections (equal pairs, inverse pairs,
    quadratic entries), forms each beta-product of opposite local
    coefficients, and reports its order of vanishing at s = 0.  Irreducible
    iff every reflection's product vanishes.
    """
    if not entries:
        raise DomainError("empty principal series data")
    reports: list[ReflectionReport] = []
    n = len(entries)

    def gl_beta(beta_value: complex) -> GammaRat:
        c_fwd = gl_localcoef_unramified(q, beta_value)
        c_bwd = gl_localcoef_unramified(q, 1 / beta_value)
        return beta_product(c_fwd, c_bwd)

    for i in range(n):
        for j in range(i + 1, n):
            a, b = entries[i], entries[j]
            if a.quadratic_ramified or b.quadratic_ramified:
                same = a.quadratic_ramified and b.quadratic_ramified
                if same:
                    # beta = alpha_i alpha_j^{-1} is unramified for equal markers
                    val = (a.value or 1) / (b.value or 1)
                    bp = gl_beta(val)
                    reports.append(ReflectionReport(
                        "gl_pair", (i + 1, j + 1), bp.order_at_s0()))
                    bp2 = gl_beta((a.value or 1) * (b.value or 1))
                    reports.append(ReflectionReport(
                        "gl_inverse_pair", (i + 1, j + 1), bp2.order_at_s0()))
                continue
            if abs(a.value - b.value) < TOL_MATCH:
                bp = gl_beta(a.value / b.value)
                reports.append(ReflectionReport(
                    "gl_pair", (i + 1, j + 1), bp.order_at_s0()))
            if abs(a.value * b.value - 1) < TOL_MATCH:
                bp = gl_beta(a.value * b.value)
                reports.append(ReflectionReport(
                    "gl_inverse_pair", (i + 1, j + 1), bp.order_at_s0()))

    for r, entry in enumerate(entries):
        if not entry.is_quadratic:
            continue
        if entry.quadratic_ramified:
            # C = k q^{ds} L(chi^{-2},1-2s)/L(chi^2,2s) with chi^2 trivial
            fwd = GammaRat.monomial(q, 1.0 + 0j, 0, flagged=True)
            fwd = fwd.mul(_l_double_reflected(q, 1.0 + 0j)).div(_l_double(q, 1.0 + 0j))
            bwd = fwd
        else:
            fwd = _sl2_unramified_closed(q, entry.value)
            bwd = _sl2_unramified_closed(q, 1 / entry.value)
        bp = beta_product(fwd, bwd)
        reports.append(ReflectionReport("quadratic", (r + 1,), bp.order_at_s0()))

    irreducible = all(rep.vanishing_order > 0 for rep in reports)
    return {
        "reflections": [
            {"kind": rep.kind, "indices": list(rep.indices),
             "vanishing_order": rep.vanishing_order}
            for rep in reports
        ],
        "verdict": "irreducible" if irreducible else "reducible",
    }
