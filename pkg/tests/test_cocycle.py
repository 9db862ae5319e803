import itertools
from fractions import Fraction

import pytest

from metaplectic.cocycle import (
    MetaplecticElement,
    c_g_ginv_closed,
    cocycle_trace,
    gsp_cocycle,
    iota2,
    kubota_cocycle,
    leray_form,
    mp_identity,
    mp_inv,
    mp_mul,
    rao_cocycle,
    so2_cocycle,
    so2_theta,
    tau_bar,
    v_lambda,
)
from metaplectic.field import DomainError, Place, hilbert_symbol
from metaplectic.linalg import mat, mat_mul
from metaplectic.symplectic import (
    GSpMatrix,
    SymplecticMatrix,
    a_S,
    conj_lambda,
    hat,
    i_lambda,
    n_k,
    random_element,
    sp_identity,
    tau_S,
)

PLACES = [Place.parse(s) for s in ("q2", "q3", "q5", "real")]


def test_leray_form_examples():
    # coincident Lagrangians: trivial form
    lf = leray_form(sp_identity(2), sp_identity(2))
    assert lf.rank == 0 and lf.l == 0
    # the tau/shear configuration: rho congruent to k, l = 0
    n = 2
    k = mat([[2, 1], [1, -1]])
    t = tau_S([1, 2], n)
    lf = leray_form(t, n_k(k) * t)
    assert lf.rank == 2 and lf.l == 0
    q3 = Place.parse("q3")
    from metaplectic.field import diagonalize_symmetric, hasse_invariant, discriminant_class

    diag, _, _ = diagonalize_symmetric(k)
    assert lf.discriminant(q3) == discriminant_class(diag, q3)
    assert lf.hasse(q3) == hasse_invariant(diag, q3)
    # the scaled configuration: rho congruent to lambda k
    lam = Fraction(3)
    lf2 = leray_form(conj_lambda(t, lam), conj_lambda(n_k(k) * t, lam))
    diag2, _, _ = diagonalize_symmetric(
        tuple(tuple(lam * x for x in row) for row in k))
    assert lf2.discriminant(q3) == discriminant_class(diag2, q3)
    assert lf2.hasse(q3) == hasse_invariant(diag2, q3)


def test_kubota_oracle_values():
    # direct-substitution oracle: g = (1,0;1,1): x1 = x2 = 1, x(g^2) = 2
    g = SymplecticMatrix(1, mat([[1, 0], [1, 1]]))
    for pl in PLACES:
        assert kubota_cocycle(g, g, pl) == hilbert_symbol(-1, 2, pl)
        assert rao_cocycle(g, g, pl) == hilbert_symbol(-1, 2, pl)
    # tau-inverse against -I: x-values (-1, -1, 1), giving (-1,-1)_F
    t_inv = SymplecticMatrix(1, mat([[0, 1], [-1, 0]]))
    minus = SymplecticMatrix(1, mat([[-1, 0], [0, -1]]))
    for pl in PLACES:
        want = hilbert_symbol(-1, -1, pl)
        assert kubota_cocycle(t_inv, minus, pl) == want
        assert rao_cocycle(t_inv, minus, pl) == want


def test_rao_equals_kubota_fuzz():
    for pl in PLACES:
        for seed in range(60):
            g1 = random_element(1, 4, seed * 2 + 1)
            g2 = random_element(1, 4, seed * 2 + 2)
            assert rao_cocycle(g1, g2, pl) == kubota_cocycle(g1, g2, pl)


def test_special_cases_2_10_to_2_13():
    n = 2
    for pl in PLACES:
        for seed in range(15):
            g = random_element(n, 4, seed)
            assert rao_cocycle(g, g.inverse(), pl) == c_g_ginv_closed(g, pl)
        full = [1, 2]
        subsets = ([], [1], [2], [1, 2])
        for s1, s2 in itertools.product(subsets, repeat=2):
            j = len(set(s1) & set(s2))
            want = hilbert_symbol(-1, -1, pl) if (j * (j + 1) // 2) % 2 else 1
            assert rao_cocycle(tau_S(s1, n), tau_S(s2, n), pl) == want


def test_group_law():
    pl = Place.parse("q3")
    n = 2
    e = mp_identity(n)
    for seed in range(10):
        x = MetaplecticElement(random_element(n, 4, seed), -1 if seed % 2 else 1)
        assert mp_mul(e, x, pl) == x
        assert mp_mul(x, mp_inv(x, pl), pl) == e
        assert mp_mul(mp_inv(x, pl), x, pl) == e
    with pytest.raises(DomainError):
        mp_mul(MetaplecticElement(sp_identity(1), 1),
               MetaplecticElement(sp_identity(2), 1), pl)
    with pytest.raises(DomainError):
        MetaplecticElement(sp_identity(1), 0)


def test_commuting_lift():
    # commuting elements lift to commuting pairs
    pl = Place.parse("q2")
    n = 2
    g = MetaplecticElement(tau_S([1], n), 1)
    h = MetaplecticElement(tau_S([2], n), 1)  # disjoint supports commute
    assert mp_mul(g, h, pl) == mp_mul(h, g, pl)
    d1 = MetaplecticElement(a_S([1, 2], n), 1)
    assert mp_mul(g, d1, pl) == mp_mul(d1, g, pl)


def test_iota2(q3, q5):
    for pl in (q3, q5):
        p = pl.p
        assert iota2(SymplecticMatrix(1, mat([[1, 0], [p, 1]])), pl) == 1
        assert iota2(SymplecticMatrix(1, mat([[0, 1], [-1, 0]])), pl) == 1
        k = SymplecticMatrix(1, mat([[1 + p, 1], [p, 1]]))
        want = hilbert_symbol(p, 1, pl)
        assert iota2(k, pl) == want
        with pytest.raises(DomainError):
            iota2(SymplecticMatrix(1, mat([[Fraction(1, p), 0], [0, p]])), pl)
    with pytest.raises(DomainError):
        iota2(SymplecticMatrix(1, mat([[1, 0], [2, 1]])), Place.parse("q2"))


def test_v_lambda_values():
    n = 3
    for pl in PLACES:
        p = hat(mat([[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
        for lam in (2, -1, Fraction(1, 2)):
            assert v_lambda(p, lam, pl) == hilbert_symbol(2, lam, pl)
            t = tau_S([1, 2, 3], n)
            want = hilbert_symbol(lam, lam, pl) if (3 * 2 // 2) % 2 else 1
            assert v_lambda(t, lam, pl) == want
    with pytest.raises(DomainError):
        v_lambda(sp_identity(1), 0, PLACES[0])


def test_gsp_cocycle_restriction_and_twist():
    pl = Place.parse("q5")
    n = 2
    s1, s2 = random_element(n, 4, 3), random_element(n, 4, 4)
    assert gsp_cocycle(GSpMatrix.from_sp(s1), GSpMatrix.from_sp(s2), pl) == \
        rao_cocycle(s1, s2, pl)
    # g = i(lambda), h in Sp: pure v_lambda twist
    g = i_lambda(3, n)
    h = GSpMatrix.from_sp(s2)
    assert gsp_cocycle(h, g, pl) == v_lambda(s2, 3, pl)
    assert gsp_cocycle(g, h, pl) == 1  # p(i(lambda)) = I and v_1 is trivial


def test_tau_bar():
    pl = Place.parse("q2")
    n = 2
    e = mp_identity(n)
    assert tau_bar(e) == e
    for seed in range(10):
        x = MetaplecticElement(random_element(n, 4, seed), 1)
        y = MetaplecticElement(random_element(n, 4, seed + 50), -1)
        assert tau_bar(tau_bar(x)) == x
        assert tau_bar(mp_mul(x, y, pl)) == mp_mul(tau_bar(y), tau_bar(x), pl)
    # upper-unipotent elements keep their sign
    z = MetaplecticElement(n_k(mat([[1, 0], [0, 2]])), 1)
    assert tau_bar(z).eps == 1
    from metaplectic.symplectic import is_siegel

    assert is_siegel(tau_bar(z).g)


def test_so2():
    assert so2_theta(0) == 1
    assert so2_theta(Fraction(1, 2)) == 1
    assert so2_theta(Fraction(3, 2)) == -1
    assert so2_theta(Fraction(7, 2)) == 1
    # c(k(pi), k(pi)^{-1}): the inverse is k(pi) itself mod 2pi
    assert so2_cocycle(Fraction(1), Fraction(1)) == -1
    assert so2_cocycle(Fraction(1, 2), Fraction(-1, 2)) == 1
    # numeric fallback agrees with the exact route on a safe grid
    for k1 in range(1, 12):
        for k2 in range(1, 12):
            r1, r2 = Fraction(k1, 12), Fraction(k2, 12)
            if (r1 + r2) % 1 == 0 or r1 % 1 == 0 or r2 % 1 == 0:
                continue
            assert so2_cocycle(r1, r2) == so2_cocycle(float(r1) + 1e-9, float(r2))
    # theta functional equation spot checks
    for k1, k2 in ((3, 8), (13, 22), (7, 7)):
        r1, r2 = Fraction(k1, 12), Fraction(k2, 12)
        assert so2_theta((r1 + r2) % 4) == so2_theta(r1) * so2_theta(r2) * so2_cocycle(r1, r2)


def test_cocycle_trace(q3):
    g = tau_S([1], 2)
    h = n_k(mat([[1, 0], [0, 2]])) * tau_S([1, 2], 2)
    trace = cocycle_trace(g, h, q3)
    assert set(trace) >= {"value", "j1", "j2", "j12", "x1", "leray_diag", "l", "hasse"}
    assert trace["value"] in (1, -1)
    assert trace["j1"] == 1 and trace["j2"] == 2
