import cmath
from fractions import Fraction

import pytest

from metaplectic.field import (
    AdditiveCharacter,
    DomainError,
    MultiplicativeCharacter,
    Place,
    gauss_sum,
    psi_std,
)
from metaplectic.integral import (
    IndicatorFunction,
    gamma_tilde_integral,
    localcoef_decompose,
    localcoef_eval,
    localcoef_eval_shifted,
    localcoef_integral,
    measure_D,
    measure_H,
    phi_tilde,
    phi_tilde_direct,
    tate_gamma_integral,
    zeta_mellin,
    zeta_mellin_of_tilde,
)
from metaplectic.lfunc import sl2_localcoef_closed, tate_gamma
from metaplectic.weil import c_psi, gamma_psi


def test_decomposition_unramified_odd(q3, q5):
    for pl in (q3, q5):
        p = pl.p
        chi = MultiplicativeCharacter.unramified(pl, cmath.exp(0.9j))
        dec = localcoef_decompose(chi, psi_std(pl), pl)
        assert dec.I0 == pytest.approx(1 - 1 / p)
        assert dec.I1 == pytest.approx(0)
        assert dec.J[0] == pytest.approx(p**-0.5)
        assert len(dec.J) == 1


def test_decomposition_quadratic_odd(q3, q5):
    # the odd-p m = 2e+1 branch: I0 = 0 and I1 carries the Gauss sum
    for pl in (q3, q5):
        p = pl.p
        psi = psi_std(pl)
        chi = MultiplicativeCharacter.legendre_char(pl, 1.0)
        dec = localcoef_decompose(chi, psi, pl)
        g = gauss_sum(chi, psi)
        c1 = c_psi(Fraction(-1), psi, pl)
        assert dec.I0 == pytest.approx(0)
        assert dec.I1 == pytest.approx(chi(-1) * (1 - 1 / p) * p**0.5 * g / c1)
        assert dec.J[0] == pytest.approx(-(p**-0.5) * g * chi(-1) / c1)


def test_decomposition_q2_trivial(q2):
    psi = psi_std(q2)
    dec = localcoef_decompose(MultiplicativeCharacter.trivial(q2), psi, q2)
    c1 = c_psi(Fraction(-1), psi, q2)
    assert len(dec.J) == 3
    assert dec.J[0] == pytest.approx(0)
    assert dec.J[1] == pytest.approx((1 - 0.5) / c1)
    assert dec.J[2] == pytest.approx(2**-0.5 / c1)


def test_decomposition_requires_normalized(q3):
    with pytest.raises(DomainError):
        localcoef_decompose(MultiplicativeCharacter.trivial(q3),
                            AdditiveCharacter(Fraction(1, 3), q3), q3)


def test_flagship_samples(q2, q3, q5):
    cases = [
        (q3, MultiplicativeCharacter.unramified(q3, cmath.exp(0.31j))),
        (q5, MultiplicativeCharacter.unramified(q5, cmath.exp(-1.07j))),
        (q3, MultiplicativeCharacter.legendre_char(q3, 1.0)),
        (q5, MultiplicativeCharacter.legendre_char(q5, 1.0)),
        (q2, MultiplicativeCharacter.trivial(q2)),
    ]
    for pl, chi in cases:
        psi = psi_std(pl)
        dec = localcoef_decompose(chi, psi, pl)
        closed = sl2_localcoef_closed(chi, psi)
        for s in (0.4 + 0.3j, 0.9 - 0.6j, 1.4 + 1.1j):
            inv = localcoef_eval(dec, s)
            assert abs(inv * closed.eval_s(s) - 1) < 1e-8


def test_localcoef_eval_pole_guard(q3):
    chi = MultiplicativeCharacter.trivial(q3)
    dec = localcoef_decompose(chi, psi_std(q3), q3)
    with pytest.raises(DomainError):
        localcoef_eval(dec, 0.0 + 0.0j)  # chi^2(pi) q^{-2s} = 1


def test_conductor_shift(q3):
    psi1 = AdditiveCharacter(Fraction(1, 3), q3)
    chi = MultiplicativeCharacter.unramified(q3, cmath.exp(0.77j))
    for s in (0.4 + 0.3j, 0.9 - 0.2j):
        assert localcoef_eval_shifted(chi, psi1, s, q3) == pytest.approx(
            localcoef_integral(chi, psi1, s, q3))


def test_whittaker_twist_relation(q3):
    psi = psi_std(q3)
    a = Fraction(3)
    psia = AdditiveCharacter(a, q3)
    chi = MultiplicativeCharacter.unramified(q3, cmath.exp(0.4j))
    chitw = chi.mul(MultiplicativeCharacter.hilbert_twist(a, q3))
    for s in (0.5 + 0.2j, 0.8 - 0.4j):
        lhs = localcoef_integral(chi, psia, s, q3, psi_gamma=psi)
        rhs = (gamma_psi(a, psi, q3).inverse().value() / chi.value_with_s(a, s)
               * localcoef_eval(localcoef_decompose(chitw, psi, q3), s))
        assert lhs == pytest.approx(rhs)


def test_gamma_tilde_equals_reciprocal(q3, q2):
    for pl in (q3, q2):
        psi = psi_std(pl)
        chi = (MultiplicativeCharacter.unramified(pl, cmath.exp(0.6j)))
        dec = localcoef_decompose(chi, psi, pl)
        for s in (0.4 + 0.2j, 0.8 - 0.5j):
            assert gamma_tilde_integral(chi, psi, s) == pytest.approx(
                localcoef_eval(dec, s))


def test_tate_integral(q3):
    psi = psi_std(q3)
    chi = MultiplicativeCharacter.unramified(q3, cmath.exp(1.3j))
    G = tate_gamma(chi.inverse(), psi.inverse())
    for s in (0.3 + 0.3j, 0.8 - 0.1j):
        assert tate_gamma_integral(chi, psi, s) == pytest.approx(G.eval_s(1 - s))
    # stability in the truncation depth
    a = tate_gamma_integral(chi, psi, 0.5 + 0.1j, m=2)
    b = tate_gamma_integral(chi, psi, 0.5 + 0.1j, m=4)
    assert a == pytest.approx(b, abs=1e-12)
    with pytest.raises(DomainError):
        tate_gamma_integral(chi, psi, -0.5 + 0j)  # series diverges


def test_phi_tilde_closed_forms(q3, q2):
    for pl in (q3, q2):
        psi = psi_std(pl)
        p = pl.p
        e = 1 if p == 2 else 0
        # coset vanishing beyond the support radius
        phi = IndicatorFunction("coset", 0, Fraction(1, p ** (2 * e + 1)))
        assert phi_tilde(phi, Fraction(1, p), psi, pl) == 0
        # ball at a lattice point: matches the direct sum
        ball = IndicatorFunction("ball", 1)
        for y in (Fraction(1), Fraction(p), Fraction(1, p)):
            assert phi_tilde(ball, y, psi, pl) == pytest.approx(
                phi_tilde_direct(ball, y, psi, pl))
    with pytest.raises(DomainError):
        # coset violating the norm precondition
        phi_tilde(IndicatorFunction("coset", 0, Fraction(1)), Fraction(1),
                  psi_std(q2), q2)


def test_zeta_values(q3):
    chi = MultiplicativeCharacter.unramified(q3, cmath.exp(0.3j))
    # zeta(1_{1+P^k}, chi^{-1}, 1-s) = q^{-k}
    for k in (1, 2, 3):
        z = zeta_mellin(IndicatorFunction("coset", k, Fraction(1)),
                        chi.inverse(), 1 - (0.4 + 0.2j), q3)
        assert z == pytest.approx(3.0**-k)
    # ball Mellin for unramified data: geometric series value
    s = 0.7 + 0.1j
    x = chi.value_at_pi * 3.0**-s
    z = zeta_mellin(IndicatorFunction("ball", 0), chi, s, q3)
    assert z == pytest.approx((1 - 1 / 3.0) * 1 / (1 - x))
    # ramified characters integrate to zero on balls
    leg = MultiplicativeCharacter.legendre_char(q3, 1.0)
    assert zeta_mellin(IndicatorFunction("ball", 0), leg, s, q3) == 0


def test_functional_equation(q3, q2):
    for pl in (q3, q2):
        psi = psi_std(pl)
        e = 1 if pl.p == 2 else 0
        chi = MultiplicativeCharacter.unramified(pl, cmath.exp(0.9j))
        k = max(chi.conductor, 2 * e + 1)
        for s in (0.3 + 0.2j, 0.66 - 0.6j):
            gt = gamma_tilde_integral(chi.inverse(), psi, 1 - s)
            for phi in (IndicatorFunction("coset", k, Fraction(1)),
                        IndicatorFunction("ball", 0)):
                z = zeta_mellin(phi, chi, s, pl)
                zt = zeta_mellin_of_tilde(phi, chi.inverse(), 1 - s, psi, pl)
                assert abs(gt * z - zt) < 1e-8 * max(1, abs(zt))


def test_measures(q2, q3, q5):
    for pl in (q3, q5):
        p = pl.p
        assert measure_H(1, pl) == Fraction(2, p)
        assert measure_D(1, pl) == 1 - Fraction(3, p)
        assert measure_H(2, pl) == Fraction(2, p * p)
        assert measure_D(2, pl) == Fraction(2 * (p - 1), p * p)
    assert measure_H(1, q2) == Fraction(1, 2)
    assert measure_D(2, q2) == 0
    assert measure_H(2, q2) == Fraction(1, 2)
    assert measure_D(3, q2) == 0
    assert measure_H(3, q2) == Fraction(1, 2)
    with pytest.raises(DomainError):
        measure_H(0, q2)
