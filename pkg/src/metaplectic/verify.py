"""Named verification suites: each acceptance criterion as a runnable check.

Every suite is deterministic in its seed and returns a report with one entry
per named check.  `run_suite` dispatches by name; the cocycle fuzz can shard
its trials over worker processes (METAPLECTIC_WORKERS), with shard seeds
derived from the master seed so the aggregate is worker-count independent.
"""

from __future__ import annotations

import cmath
import itertools
import math
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .field import (
    AdditiveCharacter,
    MultiplicativeCharacter,
    Place,
    hilbert_all_places,
    hilbert_class,
    hilbert_symbol,
    psi_std,
    square_classes,
    valuation,
)
from . import cocycle as C
from . import integral as I
from . import lfunc as L
from . import realarch as R
from . import symplectic as S
from .weil import FourthRoot, gamma_psi, gamma_psi_bruteforce, weil_table, xi


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, ok, detail))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


STANDARD_PLACES = ("q2", "q3", "q5", "real")


def _places(names=STANDARD_PLACES) -> list[Place]:
    return [Place.parse(n) for n in names]


# ---------------------------------------------------------------------------
# 1. Hilbert symbols
# ---------------------------------------------------------------------------

def suite_hilbert(seed: int = 0, trials: int = 200, **_) -> SuiteReport:
    rep = SuiteReport("hilbert")
    t0 = time.time()
    places = [Place.parse(f"q{p}") for p in (2, 3, 5, 7, 13)] + [Place("real")]

    bad = []
    for pl in places:
        classes = square_classes(pl)
        for ca, cb, cc in itertools.product(classes, repeat=3):
            a, b, c = ca.representative, cb.representative, cc.representative
            if hilbert_symbol(a * b, c, pl) != hilbert_symbol(a, c, pl) * hilbert_symbol(b, c, pl):
                bad.append((str(pl), a, b, c))
    rep.add("bilinearity exhaustive on square classes", not bad, str(bad[:3]))

    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        pl = rng.choice(places)
        a = Fraction(rng.randrange(1, 60) * rng.choice((1, -1)), rng.randrange(1, 30))
        b = Fraction(rng.randrange(1, 60) * rng.choice((1, -1)), rng.randrange(1, 30))
        c = Fraction(rng.randrange(1, 60) * rng.choice((1, -1)))
        if hilbert_symbol(a * b, c, pl) != hilbert_symbol(a, c, pl) * hilbert_symbol(b, c, pl):
            bad.append((str(pl), a, b, c))
        if hilbert_symbol(a, -a, pl) != 1:
            bad.append(("(a,-a)", str(pl), a))
        if hilbert_symbol(a, b, pl) != hilbert_symbol(a, -a * b, pl):
            bad.append(("(a,b)=(a,-ab)", str(pl), a, b))
    rep.add("bilinearity and unit identities on random rationals", not bad, str(bad[:3]))

    bad = []
    for pl in places:
        if pl.is_real:
            continue
        for ca in square_classes(pl):
            if ca.is_trivial:
                continue
            if not any(hilbert_class(ca, cb) == -1 for cb in square_classes(pl)):
                bad.append((str(pl), str(ca)))
    rep.add("non-degeneracy on non-trivial classes", not bad, str(bad[:3]))

    q2 = Place.parse("q2")
    table_ok = all(
        hilbert_symbol(2, a, q2) == (1 if a % 8 in (1, 7) else -1)
        for a in range(1, 50, 2)
    )
    rep.add("the (2, .) table at Q_2", table_ok)

    bad = []
    for a in range(1, 51):
        for b in range(1, 51):
            for sa, sb in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                prod = 1
                for v in hilbert_all_places(sa * a, sb * b).values():
                    prod *= v
                if prod != 1:
                    bad.append((sa * a, sb * b))
    rep.add("reciprocity for |a|, |b| <= 50", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 2. Weil factors
# ---------------------------------------------------------------------------

def suite_weil(seed: int = 0, trials: int = 100, **_) -> SuiteReport:
    rep = SuiteReport("weil")
    t0 = time.time()
    primes = (2, 3, 5, 7, 13)

    bad = []
    for p in primes:
        pl = Place.parse(f"q{p}")
        psi = psi_std(pl)
        for cls in square_classes(pl):
            a = cls.representative
            bf = gamma_psi_bruteforce(a, psi, pl)
            cf = gamma_psi(a, psi, pl)
            if abs(bf - cf.value()) > 1e-9:
                bad.append((p, str(a), bf, str(cf)))
            if FourthRoot.from_complex(bf) != cf:
                bad.append((p, str(a), "snap"))
    rep.add("closed form vs brute-force sums on all square classes", not bad, str(bad[:3]))

    bad = []
    for pname in [f"q{p}" for p in primes] + ["real"]:
        pl = Place.parse(pname)
        psi = psi_std(pl)
        for ca, cb in itertools.product(square_classes(pl), repeat=2):
            a, b = ca.representative, cb.representative
            lhs = gamma_psi(a * b, psi, pl)
            rhs = (gamma_psi(a, psi, pl) * gamma_psi(b, psi, pl)).times_sign(
                hilbert_symbol(a, b, pl))
            if lhs != rhs:
                bad.append((pname, a, b))
    rep.add("multiplicativity exhaustive on square-class pairs", not bad, str(bad[:3]))

    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        pl = Place.parse(rng.choice([f"q{p}" for p in primes] + ["real"]))
        psi = psi_std(pl)
        a = Fraction(rng.randrange(1, 40) * rng.choice((1, -1)), rng.randrange(1, 20))
        b = Fraction(rng.randrange(1, 40) * rng.choice((1, -1)), rng.randrange(1, 20))
        lhs = gamma_psi(a * b, psi, pl)
        rhs = (gamma_psi(a, psi, pl) * gamma_psi(b, psi, pl)).times_sign(
            hilbert_symbol(a, b, pl))
        if lhs != rhs:
            bad.append((str(pl), a, b))
        if gamma_psi(a * a, psi, pl) != FourthRoot(0):
            bad.append(("square", str(pl), a))
    rep.add("multiplicativity fuzz on random rationals", not bad, str(bad[:3]))

    bad = []
    for p in primes:
        pl = Place.parse(f"q{p}")
        psi = psi_std(pl)
        img = {gamma_psi(c.representative, psi, pl).k for c in square_classes(pl)}
        want = 4 if p == 2 else (2 if p % 4 == 1 else 3)
        if len(img) != want:
            bad.append((p, len(img), want))
    rep.add("image cardinalities per place", not bad, str(bad))

    bad = []
    for p in (2, 3, 5):
        pl = Place.parse(f"q{p}")
        for tw in (Fraction(1, p), Fraction(1), Fraction(p)):
            psi = AdditiveCharacter(tw, pl)
            for cls in square_classes(pl):
                a = cls.representative
                got = gamma_psi(a, psi, pl)
                want = gamma_psi(a, psi_std(pl), pl).times_sign(
                    hilbert_symbol(a, tw, pl))
                if got != want:
                    bad.append((p, str(tw), str(a)))
    rep.add("conductor shifts -1, 0, 1 via the twist identity", not bad, str(bad[:3]))

    bad = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        trivial = MultiplicativeCharacter.trivial(pl)
        legc = MultiplicativeCharacter.legendre_char(pl)
        for alpha, chi in itertools.product((1, -1), (trivial, legc)):
            for ca, cb in itertools.product(square_classes(pl), repeat=2):
                for va, vb in itertools.product(range(-2, 3), repeat=2):
                    a = ca.representative * Fraction(p) ** va
                    b = cb.representative * Fraction(p) ** vb
                    if xi(alpha, chi, a * b, pl) != (
                            xi(alpha, chi, a, pl) * xi(alpha, chi, b, pl)
                            * hilbert_symbol(a, b, pl)):
                        bad.append((p, alpha, a, b))
    rep.add("xi multiplicativity, four parameter choices", not bad, str(bad[:3]))

    from .weil import gamma_equals_xi_parameters
    bad = []
    for p in (5, 13):
        pl = Place.parse(f"q{p}")
        alpha, chi = gamma_equals_xi_parameters(pl)
        psi = psi_std(pl)
        for cls in square_classes(pl):
            for v in range(-2, 3):
                a = cls.representative * Fraction(p) ** v
                g = gamma_psi(a, psi, pl)
                sign = 1 if g.k == 0 else -1 if g.k == 2 else None
                if sign is None or sign != xi(alpha, chi, a, pl):
                    bad.append((p, str(a)))
    rep.add("gamma_psi equals a xi function when -1 is a square", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 3. Cocycle identity fuzz
# ---------------------------------------------------------------------------

def _cocycle_shard(args) -> list:
    place_name, n, seeds = args
    pl = Place.parse(place_name)
    bad = []
    for sd in seeds:
        g1 = S.random_element(n, 4, sd * 3 + 11)
        g2 = S.random_element(n, 4, sd * 3 + 12)
        g3 = S.random_element(n, 4, sd * 3 + 13)
        lhs = C.rao_cocycle(g1, g2, pl) * C.rao_cocycle(g1 * g2, g3, pl)
        rhs = C.rao_cocycle(g2, g3, pl) * C.rao_cocycle(g1, g2 * g3, pl)
        if lhs != rhs:
            bad.append((place_name, n, sd))
    return bad


def _kubota_shard(args) -> list:
    place_name, seeds = args
    pl = Place.parse(place_name)
    bad = []
    for sd in seeds:
        g1 = S.random_element(1, 5, sd * 2 + 1)
        g2 = S.random_element(1, 5, sd * 2 + 2)
        if C.rao_cocycle(g1, g2, pl) != C.kubota_cocycle(g1, g2, pl):
            bad.append((place_name, sd))
    return bad


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("METAPLECTIC_WORKERS", "1")))
    except ValueError:
        return 1


def _run_shards(fn, jobs: list) -> list:
    w = _workers()
    if w <= 1 or len(jobs) <= 1:
        results = [fn(j) for j in jobs]
    else:
        import multiprocessing as mp

        with mp.Pool(w) as pool:
            results = pool.map(fn, jobs)
    return [item for sub in results for item in sub]


def suite_cocycle(seed: int = 0, trials: int = 500, ranks=(1, 2, 3),
                  places=STANDARD_PLACES, **_) -> SuiteReport:
    rep = SuiteReport("cocycle")
    t0 = time.time()
    rng = random.Random(seed)
    base = rng.randrange(1 << 30)
    shard_size = 50

    jobs = []
    for pname in places:
        for n in ranks:
            seeds = [base + i for i in range(trials)]
            for lo in range(0, trials, shard_size):
                jobs.append((pname, n, seeds[lo:lo + shard_size]))
    bad = _run_shards(_cocycle_shard, jobs)
    rep.add(f"2-cocycle identity, {trials} triples x n in {tuple(ranks)} x {len(places)} places",
            not bad, str(bad[:3]))

    jobs = []
    for pname in places:
        seeds = [base + 7_000_000 + i for i in range(trials)]
        for lo in range(0, trials, shard_size * 4):
            jobs.append((pname, seeds[lo:lo + shard_size * 4]))
    bad = _run_shards(_kubota_shard, jobs)
    rep.add(f"Rao(n=1) equals Kubota on {trials} pairs per place", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 4. Calibration identities
# ---------------------------------------------------------------------------

def _rand_parabolic(n: int, sd: int) -> S.SymplecticMatrix:
    rng = random.Random(sd)
    from .linalg import det, identity

    m = [list(r) for r in identity(n)]
    for _ in range(2):
        i, j = rng.randrange(n), rng.randrange(n)
        m[i][j] = Fraction(rng.choice((1, -1, 2))) if i != j else Fraction(rng.choice((1, -1, 2)))
    g = tuple(tuple(r) for r in m)
    if det(g) == 0:
        g = identity(n)
    k = [[Fraction(0)] * n for _ in range(n)]
    i, j = rng.randrange(n), rng.randrange(n)
    v = Fraction(rng.choice((0, 1, -1, 2)))
    k[i][j] = v
    k[j][i] = v
    return S.hat(g) * S.n_k(tuple(tuple(r) for r in k))


def suite_calibration(seed: int = 0, instances: int = 100, **_) -> SuiteReport:
    rep = SuiteReport("calibration")
    t0 = time.time()
    places = _places()
    per_place = max(1, instances // len(places))
    from .field import diagonalize_symmetric, hasse_invariant
    from .linalg import det as _det, mat

    # (2.10) inverse pairs and (2.41)
    bad = []
    for pl in places:
        for sd in range(per_place):
            n = 1 + sd % 2
            g = S.random_element(n, 5, seed * 31 + sd * 7 + n)
            if C.rao_cocycle(g, g.inverse(), pl) != C.c_g_ginv_closed(g, pl):
                bad.append(("2.10", str(pl), sd))
            if C.v_lambda(g, -1, pl) != C.rao_cocycle(g, g.inverse(), pl):
                bad.append(("2.41", str(pl), sd))
            if C.v_lambda(g.inverse(), -1, pl) != C.v_lambda(g, -1, pl):
                bad.append(("2.41 inv", str(pl), sd))
    rep.add("inverse-pair cocycle and v_{-1} identities", not bad, str(bad[:3]))

    # (2.11)/(2.12) parabolic sandwiches
    bad = []
    for pl in places:
        for sd in range(per_place):
            n = 2
            p = _rand_parabolic(n, seed + sd)
            p2 = _rand_parabolic(n, seed + sd + 5000)
            g = S.random_element(n, 4, seed * 17 + sd)
            g2 = S.random_element(n, 4, seed * 17 + sd + 999)
            xs = lambda h: C._x_and_cell(h)[0]
            want = (C.rao_cocycle(g, g2, pl)
                    * hilbert_symbol(S.det_a(p), xs(g), pl)
                    * hilbert_symbol(S.det_a(p2), xs(g2), pl)
                    * hilbert_symbol(S.det_a(p), S.det_a(p2), pl)
                    * hilbert_symbol(S.det_a(p) * S.det_a(p2), xs(g * g2), pl))
            if C.rao_cocycle(p * g, g2 * p2, pl) != want:
                bad.append(("2.11", str(pl), sd))
            if C.rao_cocycle(p, g, pl) != hilbert_symbol(S.det_a(p), xs(g), pl):
                bad.append(("2.12", str(pl), sd))
            if C.rao_cocycle(g, p, pl) != hilbert_symbol(S.det_a(p), xs(g), pl):
                bad.append(("2.12r", str(pl), sd))
    rep.add("parabolic sandwich formulas", not bad, str(bad[:3]))

    # (2.13)/(2.14) tau_S pairs, exhaustive at n = 3 plus disjoint sandwiches
    bad = []
    n = 3
    full = list(range(1, n + 1))
    subsets = list(itertools.chain.from_iterable(
        itertools.combinations(full, k) for k in range(n + 1)))
    for pl in places:
        for S1 in subsets:
            for S2 in subsets:
                j = len(set(S1) & set(S2))
                want = hilbert_symbol(-1, -1, pl) if (j * (j + 1) // 2) % 2 else 1
                if C.rao_cocycle(S.tau_S(S1, n), S.tau_S(S2, n), pl) != want:
                    bad.append(("2.13", str(pl), S1, S2))
        for sd in range(per_place // 4 + 1):
            p = _rand_parabolic(n, seed + sd + 111)
            p2 = _rand_parabolic(n, seed + sd + 222)
            lhs = C.rao_cocycle(p * S.tau_S([1], n), S.tau_S([2, 3], n) * p2, pl)
            if lhs != hilbert_symbol(S.det_a(p), S.det_a(p2), pl):
                bad.append(("2.14", str(pl), sd))
    rep.add("tau_S pair formulas", not bad, str(bad[:3]))

    # (2.18) block multiplicativity
    bad = []
    for pl in places:
        for sd in range(per_place):
            blocks = [S.random_element(1, 4, seed * 13 + sd * 4 + t) for t in range(4)]
            a1, a2, b1, b2 = blocks

            def diag2(u, v):
                rows = [[Fraction(0)] * 4 for _ in range(4)]
                for blk, src in ((u, 0), (v, 1)):
                    A = blk.rows
                    rows[src][src] = A[0][0]
                    rows[src][2 + src] = A[0][1]
                    rows[2 + src][src] = A[1][0]
                    rows[2 + src][2 + src] = A[1][1]
                return S.SymplecticMatrix(2, tuple(tuple(r) for r in rows))

            xs = lambda h: C._x_and_cell(h)[0]
            lhs = C.rao_cocycle(diag2(a1, b1), diag2(a2, b2), pl)
            rhs = (C.rao_cocycle(a1, a2, pl) * C.rao_cocycle(b1, b2, pl)
                   * hilbert_symbol(xs(a1), xs(b1), pl)
                   * hilbert_symbol(xs(a2), xs(b2), pl)
                   * hilbert_symbol(xs(a1 * a2), xs(b1 * b2), pl))
            if lhs != rhs:
                bad.append((str(pl), sd))
    rep.add("block-diagonal multiplicativity", not bad, str(bad[:3]))

    # (2.36)/(2.37) the shear calibration pair
    bad = []
    shears = {
        1: ([[1]], [[2]], [[-3]]),
        2: ([[1, 0], [0, 1]], [[2, 1], [1, -1]], [[0, 1], [1, 0]]),
        3: ([[1, 0, 0], [0, 2, 0], [0, 0, -1]], [[0, 1, 0], [1, 0, 0], [0, 0, 3]]),
    }
    for pl in places:
        for n, kks in shears.items():
            t = S.tau_S(list(range(1, n + 1)), n)
            for kk in kks:
                k = mat(kk)
                if _det(k) == 0:
                    continue
                diag, _, _ = diagonalize_symmetric(k)
                want = hilbert_symbol(-1, _det(k), pl) * hasse_invariant(diag, pl)
                if C.rao_cocycle(t, S.n_k(k) * t, pl) != want:
                    bad.append(("2.36", str(pl), n, kk))
                for lam in (2, -1, Fraction(1, 2), 3):
                    lk = tuple(tuple(Fraction(lam) * x for x in row) for row in k)
                    dlam, _, _ = diagonalize_symmetric(lk)
                    want2 = hilbert_symbol(-1, _det(k), pl) * hasse_invariant(dlam, pl)
                    got = C.rao_cocycle(S.conj_lambda(t, lam),
                                        S.conj_lambda(S.n_k(k) * t, lam), pl)
                    if got != want2:
                        bad.append(("2.37", str(pl), n, kk, lam))
    rep.add("tau/shear calibration pair", not bad, str(bad[:3]))

    # (2.25) and v-compatibility
    bad = []
    for pl in places:
        for sd in range(per_place):
            n = 1 + sd % 2
            g = S.random_element(n, 4, seed * 77 + sd)
            h = S.random_element(n, 4, seed * 77 + sd + 31)
            for lam, eta in ((2, 3), (-1, 2), (Fraction(1, 2), -3)):
                if (C.v_lambda(g, lam, pl) * C.v_lambda(S.conj_lambda(g, lam), eta, pl)
                        != C.v_lambda(g, Fraction(lam) * eta, pl)):
                    bad.append(("v-compat", str(pl), sd, lam))
                lhs = (C.v_lambda(g, lam, pl) * C.v_lambda(h, lam, pl)
                       * C.v_lambda(g * h, lam, pl))
                rhs = (C.rao_cocycle(S.conj_lambda(g, lam), S.conj_lambda(h, lam), pl)
                       * C.rao_cocycle(g, h, pl))
                if lhs != rhs:
                    bad.append(("2.25", str(pl), sd, lam))
    rep.add("conjugation-twist identities", not bad, str(bad[:3]))

    # GSp cocycle: 2-cocycle identity and restriction
    bad = []
    for pl in places:
        for sd in range(per_place):
            n = 2

            def rand_gsp(s2):
                rng = random.Random(s2)
                lam = Fraction(rng.choice((1, 2, -1, 3)))
                from .linalg import mat_mul
                return S.GSpMatrix.of(mat_mul(S.i_lambda(lam, n).rows,
                                              S.random_element(n, 3, s2).rows))

            g1, g2, g3 = (rand_gsp(seed * 3 + sd * 3 + t) for t in range(3))
            lhs = C.gsp_cocycle(g1, g2, pl) * C.gsp_cocycle(g1 * g2, g3, pl)
            rhs = C.gsp_cocycle(g2, g3, pl) * C.gsp_cocycle(g1, g2 * g3, pl)
            if lhs != rhs:
                bad.append(("gsp 2-cocycle", str(pl), sd))
            s1 = S.random_element(n, 4, seed + sd)
            s2 = S.random_element(n, 4, seed + sd + 77)
            if (C.gsp_cocycle(S.GSpMatrix.from_sp(s1), S.GSpMatrix.from_sp(s2), pl)
                    != C.rao_cocycle(s1, s2, pl)):
                bad.append(("gsp restriction", str(pl), sd))
    rep.add("similitude extension", not bad, str(bad[:3]))

    # the discriminant-convention sentinel: singular shear at n = 3
    bad = []
    n = 3
    ksing = mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    t = S.tau_S([1, 2, 3], n)
    s2 = S.n_k(ksing) * t
    for pl in places:
        for sd in range(10):
            g3 = S.random_element(n, 4, seed + sd)
            lhs = C.rao_cocycle(t, s2, pl) * C.rao_cocycle(t * s2, g3, pl)
            rhs = C.rao_cocycle(s2, g3, pl) * C.rao_cocycle(t, s2 * g3, pl)
            if lhs != rhs:
                bad.append((str(pl), sd))
    rep.add("singular-shear cocycle sentinel", not bad, str(bad[:3]))

    # tau_bar anti-involution
    bad = []
    for pl in places:
        for sd in range(per_place):
            n = 2
            x = C.MetaplecticElement(S.random_element(n, 4, seed + sd), 1 if sd % 2 else -1)
            y = C.MetaplecticElement(S.random_element(n, 4, seed + sd + 31), 1)
            if C.tau_bar(C.tau_bar(x)) != x:
                bad.append(("involution", str(pl), sd))
            lhs = C.tau_bar(C.mp_mul(x, y, pl))
            rhs = C.mp_mul(C.tau_bar(y), C.tau_bar(x), pl)
            if lhs != rhs:
                bad.append(("anti-homomorphism", str(pl), sd))
    rep.add("transpose involution", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 5. Splittings
# ---------------------------------------------------------------------------

def suite_splitting(seed: int = 0, trials: int = 200, **_) -> SuiteReport:
    rep = SuiteReport("splitting")
    t0 = time.time()
    from .linalg import mat

    def sl2_integral(pl: Place, sd: int) -> S.SymplecticMatrix:
        rng = random.Random(sd)
        p = pl.p
        g = S.sp_identity(1)
        for _ in range(4):
            b = rng.choice((0, 1, -1, 2, p, -p))
            if rng.random() < 0.5:
                g = g * S.SymplecticMatrix(1, mat([[1, b], [0, 1]]))
            else:
                g = g * S.SymplecticMatrix(1, mat([[1, 0], [b, 1]]))
        return g

    bad = []
    for pname in ("q3", "q5"):
        pl = Place.parse(pname)
        for sd in range(trials):
            k1 = sl2_integral(pl, seed * 5 + sd * 2 + 1)
            k2 = sl2_integral(pl, seed * 5 + sd * 2 + 2)
            if (C.iota2(k1, pl) * C.iota2(k2, pl) * C.rao_cocycle(k1, k2, pl)
                    != C.iota2(k1 * k2, pl)):
                bad.append((pname, sd))
    rep.add("SL_2(O) splitting is a homomorphism", not bad, str(bad[:3]))

    def k_depth_elt(pl: Place, depth: int, sd: int) -> S.SymplecticMatrix:
        rng = random.Random(sd)
        p = pl.p
        g = S.sp_identity(1)
        for _ in range(3):
            t = Fraction(rng.choice((0, 1, -1, 2))) * Fraction(p) ** depth
            kind = rng.choice(("u", "l", "d"))
            if kind == "u":
                g = g * S.SymplecticMatrix(1, mat([[1, t], [0, 1]]))
            elif kind == "l":
                g = g * S.SymplecticMatrix(1, mat([[1, 0], [t, 1]]))
            else:
                a = 1 + t
                g = g * S.SymplecticMatrix(1, mat([[a, 0], [0, Fraction(1) / a]]))
        return g

    bad = []
    for pname, depth in (("q3", 1), ("q5", 1), ("q2", 3)):
        pl = Place.parse(pname)
        for sd in range(trials // 4):
            g1 = k_depth_elt(pl, depth, seed + sd * 2)
            g2 = k_depth_elt(pl, depth, seed + sd * 2 + 1)
            if C.rao_cocycle(g1, g2, pl) != 1:
                bad.append((pname, sd))
    rep.add("cocycle trivial on deep congruence pairs (incl. Q_2 depth 3)",
            not bad, str(bad[:3]))

    bad = []
    n = 2
    wprime = []
    for S2 in ([], [1], [2], [1, 2]):
        for S1 in ([], [1], [2], [1, 2]):
            for pi in ([1, 2], [2, 1]):
                wprime.append(S.w_perm(pi) * S.a_S(S2, n) * S.tau_S(S1, n))
    for pname in ("q3", "q5"):
        pl = Place.parse(pname)
        for g1, g2 in itertools.product(wprime, wprime):
            if C.rao_cocycle(g1, g2, pl) != 1:
                bad.append((pname,))
                break
    rep.add("cocycle trivial on Weyl-group words at n = 2", not bad, str(bad[:3]))

    bad = []
    for pname in ("q2", "q3", "q5"):
        pl = Place.parse(pname)
        psi = psi_std(pl)
        for sd in range(trials):
            p1 = _rand_parabolic(2, seed * 3 + sd * 5)
            p2 = _rand_parabolic(2, seed * 3 + sd * 5 + 3)
            lhs = (gamma_psi(S.det_a(p1), psi, pl).inverse()
                   * gamma_psi(S.det_a(p2), psi, pl).inverse()).times_sign(
                C.rao_cocycle(p1, p2, pl))
            rhs = gamma_psi(S.det_a(p1 * p2), psi, pl).inverse()
            if lhs != rhs:
                bad.append((pname, sd))
    rep.add("Weil-factor determinant identity on Siegel pairs", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 6. SO_2(R) cover
# ---------------------------------------------------------------------------

def suite_so2(**_) -> SuiteReport:
    rep = SuiteReport("so2")
    t0 = time.time()
    bad = []
    for k1 in range(24):
        for k2 in range(24):
            r1, r2 = Fraction(k1, 12), Fraction(k2, 12)
            lhs = C.so2_theta((r1 + r2) % 4)
            rhs = C.so2_theta(r1) * C.so2_theta(r2) * C.so2_cocycle(r1, r2)
            if lhs != rhs:
                bad.append((k1, k2))
    rep.add("theta functional equation on the 24x24 grid", not bad, str(bad[:3]))
    rep.add("theta(0) = 1 and c(k(pi), k(pi)) = -1",
            C.so2_theta(0) == 1 and C.so2_cocycle(Fraction(1), Fraction(1)) == -1)
    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 7. Local-coefficient cross-validation (flagship)
# ---------------------------------------------------------------------------

def _s_grid(count: int, seed: int) -> list[complex]:
    rng = random.Random(seed)
    return [complex(rng.uniform(0.2, 2.0), rng.uniform(-2, 2)) for _ in range(count)]


def suite_local_coef(seed: int = 0, spoints: int = 20, tol: float = 1e-8, **_) -> SuiteReport:
    rep = SuiteReport("local-coef")
    t0 = time.time()
    rng = random.Random(seed)

    cases = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        for _ in range(3):
            cases.append((pl, MultiplicativeCharacter.unramified(
                pl, cmath.exp(2j * cmath.pi * rng.random())), 0))
        cases.append((pl, MultiplicativeCharacter.legendre_char(pl, 1.0), 0))
        for _ in range(1):
            cases.append((pl, MultiplicativeCharacter.unramified(
                pl, cmath.exp(2j * cmath.pi * rng.random())), 1))
        cases.append((pl, MultiplicativeCharacter.legendre_char(pl, 1.0), 1))
    q2 = Place.parse("q2")
    cases.append((q2, MultiplicativeCharacter.trivial(q2), 0))

    bad = []
    worst = 0.0
    for pl, chi, cond in cases:
        psi = (psi_std(pl) if cond == 0
               else AdditiveCharacter(Fraction(1, pl.p ** cond), pl))
        closed = L.sl2_localcoef_closed(chi, psi)
        for s in _s_grid(spoints, seed + 101):
            try:
                if cond == 0:
                    inv = I.localcoef_eval(I.localcoef_decompose(chi, psi, pl), s)
                else:
                    inv = I.localcoef_integral(chi, psi, s, pl)
                rel = abs(inv * closed.eval_s(s) - 1)
            except Exception:
                continue
            worst = max(worst, rel)
            if rel > tol:
                bad.append((str(pl), chi.conductor, cond, s, rel))
    rep.add("integral route x closed route = 1 over the case matrix",
            not bad, f"worst rel err {worst:.2e}" if not bad else str(bad[:3]))

    bad = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        psi1 = AdditiveCharacter(Fraction(1, p), pl)
        chi = MultiplicativeCharacter.unramified(pl, cmath.exp(0.77j))
        for s in _s_grid(5, seed + 33):
            via = I.localcoef_eval_shifted(chi, psi1, s, pl)
            direct = I.localcoef_integral(chi, psi1, s, pl)
            if abs(via - direct) > 1e-8 * max(1, abs(direct)):
                bad.append((p, s))
    rep.add("conductor-shift relation at 5 s-points", not bad, str(bad[:3]))

    bad = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        psi = psi_std(pl)
        for a in (Fraction(p), Fraction(2), Fraction(-1)):
            psia = AdditiveCharacter(a, pl)
            chi = MultiplicativeCharacter.unramified(pl, cmath.exp(0.4j))
            chitw = chi.mul(MultiplicativeCharacter.hilbert_twist(a, pl))
            for s in _s_grid(5, seed + 44):
                lhs = I.localcoef_integral(chi, psia, s, pl, psi_gamma=psi)
                rhs = (gamma_psi(a, psi, pl).inverse().value()
                       / chi.value_with_s(a, s)
                       * I.localcoef_eval(I.localcoef_decompose(chitw, psi, pl), s))
                if abs(lhs - rhs) > 1e-8 * max(1, abs(rhs)):
                    bad.append((p, str(a), s))
    rep.add("Whittaker-twist relation at 5 s-points", not bad, str(bad[:3]))

    q5 = Place.parse("q5")
    chi4 = MultiplicativeCharacter.from_generator(q5, 1, 1j)
    dec4 = I.localcoef_decompose(chi4, psi_std(q5), q5)
    bad = []
    for s1, s2 in ((0.5 + 0.1j, 0.9 - 0.3j), (0.3 + 0.4j, 1.5 + 0.2j),
                   (0.7 - 0.6j, 0.4 + 0.9j)):
        r = I.localcoef_eval(dec4, s1) / I.localcoef_eval(dec4, s2)
        d = cmath.log(r) / (cmath.log(5) * (s1 - s2))
        if abs(d - round(d.real)) > 1e-8:
            bad.append((s1, s2, d))
    rep.add("order-4 character mod 5 gives a monomial", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 8. Mellin suite
# ---------------------------------------------------------------------------

def suite_mellin(seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("mellin")
    t0 = time.time()
    q2 = Place.parse("q2")

    bad = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        psi = psi_std(pl)
        chi = MultiplicativeCharacter.unramified(pl, cmath.exp(1.3j))
        G = L.tate_gamma(chi.inverse(), psi.inverse())
        for s in (0.3 + 0.3j, 0.8 - 0.1j, 0.55 + 0.9j):
            got = I.tate_gamma_integral(chi, psi, s)
            want = G.eval_s(1 - s)
            if abs(got - want) > 1e-8 * max(1, abs(want)):
                bad.append((p, s))
        leg = MultiplicativeCharacter.legendre_char(pl, 1.0)
        Gram = L.tate_gamma(leg.inverse(), psi.inverse())
        for s in (0.4 + 0.2j, 0.7 - 0.3j, 0.5 + 0j):
            got = I.tate_gamma_integral(leg, psi, s)
            want = Gram.eval_s(1 - s)
            if abs(got - want) > 1e-8 * max(1, abs(want)):
                bad.append((p, "ram", s))
    rep.add("Tate shell sum equals the factored form", not bad, str(bad[:3]))

    bad = []
    for pname in ("q3", "q5", "q2"):
        pl = Place.parse(pname)
        psi = psi_std(pl)
        chis = [MultiplicativeCharacter.unramified(pl, cmath.exp(0.9j)),
                MultiplicativeCharacter.trivial(pl)]
        if pl.p != 2:
            chis.append(MultiplicativeCharacter.legendre_char(pl, 1.0))
        for chi in chis:
            dec = I.localcoef_decompose(chi, psi, pl)
            for s in (0.4 + 0.2j, 0.8 - 0.5j):
                if abs(I.gamma_tilde_integral(chi, psi, s)
                       - I.localcoef_eval(dec, s)) > 1e-10:
                    bad.append((pname, chi.conductor, s))
    rep.add("twisted Tate sum equals the reciprocal local coefficient",
            not bad, str(bad[:3]))

    bad = []
    for pname in ("q3", "q5", "q2"):
        pl = Place.parse(pname)
        psi = psi_std(pl)
        e = 1 if pl.p == 2 else 0
        chis = [MultiplicativeCharacter.unramified(pl, cmath.exp(0.9j)),
                MultiplicativeCharacter.trivial(pl)]
        if pl.p != 2:
            chis.append(MultiplicativeCharacter.legendre_char(pl, 1.0))
        for chi in chis:
            k = max(chi.conductor, 2 * e + 1)
            for s in (0.3 + 0.2j, 0.52 - 0.33j, 0.71 + 0.48j, 0.44 + 0.9j, 0.66 - 0.6j):
                gt = I.gamma_tilde_integral(chi.inverse(), psi, 1 - s)
                for phi in (I.IndicatorFunction("coset", k, Fraction(1)),
                            I.IndicatorFunction("ball", 0)):
                    z = I.zeta_mellin(phi, chi, s, pl)
                    zt = I.zeta_mellin_of_tilde(phi, chi.inverse(), 1 - s, psi, pl)
                    if abs(gt * z - zt) > 1e-8 * max(1, abs(zt)):
                        bad.append((pname, chi.conductor, s, phi.kind))
    rep.add("functional equation on coset and ball test functions",
            not bad, str(bad[:3]))

    bad = []
    for pl in (Place.parse("q3"), q2):
        psi = psi_std(pl)
        p = pl.p
        e = 1 if p == 2 else 0
        for n in range(0, 3):
            for a in (Fraction(1), Fraction(2 if p != 2 else 3),
                      Fraction(1, p ** max(0, 2 * e + 1 - n))):
                if -valuation(a, pl) < 2 * e + 1 - n:
                    continue
                phi = I.IndicatorFunction("coset", n, a)
                for y in (Fraction(1), Fraction(p), Fraction(1, p), Fraction(p * p)):
                    if abs(I.phi_tilde(phi, y, psi, pl)
                           - I.phi_tilde_direct(phi, y, psi, pl)) > 1e-9:
                        bad.append((str(pl), "coset", n, str(a), str(y)))
            phi = I.IndicatorFunction("ball", n)
            for y in (Fraction(1), Fraction(p), Fraction(1, p), Fraction(1, p * p),
                      Fraction(p * p)):
                if abs(I.phi_tilde(phi, y, psi, pl)
                       - I.phi_tilde_direct(phi, y, psi, pl)) > 1e-9:
                    bad.append((str(pl), "ball", n, str(y)))
    rep.add("transform closed forms equal the direct finite sums", not bad, str(bad[:3]))

    bad = []
    for p in (3, 5):
        pl = Place.parse(f"q{p}")
        if I.measure_H(1, pl) != Fraction(2, p):
            bad.append((p, "H1"))
        if I.measure_D(1, pl) != 1 - Fraction(3, p):
            bad.append((p, "D1"))
        for n in (2, 3):
            if I.measure_H(n, pl) != Fraction(2, p**n):
                bad.append((p, f"H{n}"))
            if I.measure_D(n, pl) != Fraction(2 * (p - 1), p**n):
                bad.append((p, f"D{n}"))
    if I.measure_D(2, q2) != 0 or I.measure_H(2, q2) != Fraction(1, 2):
        bad.append((2, "depth 2"))
    if I.measure_D(3, q2) != 0 or I.measure_H(3, q2) != Fraction(1, 2):
        bad.append((2, "depth 3"))
    if I.measure_H(1, q2) != Fraction(1, 2):
        bad.append((2, "H1"))
    rep.add("square-congruence measures exact", not bad, str(bad[:3]))

    bad = []
    for p in (3, 2):
        pl = Place.parse(f"q{p}")
        psi = psi_std(pl)
        chi = MultiplicativeCharacter.unramified(pl, cmath.exp(0.4j))
        for s in (0.4 + 0.2j, 0.66 - 0.3j):
            a = I.tate_gamma_integral(chi, psi, s, m=2)
            b = I.tate_gamma_integral(chi, psi, s, m=3)
            if abs(a - b) > 1e-12 * max(1, abs(a)):
                bad.append((p, s))
    rep.add("shell sums stable under deeper truncation", not bad, str(bad[:3]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 9. Symbolic identities
# ---------------------------------------------------------------------------

def suite_symbolic(seed: int = 0, draws: int = 50, q: float = 3.0, **_) -> SuiteReport:
    rep = SuiteReport("symbolic")
    t0 = time.time()
    rng = random.Random(seed)

    bad = []
    for m in (2, 3, 4):
        for _ in range(draws):
            mu = L.SatakeParams(tuple(
                cmath.exp(2j * cmath.pi * rng.random()) for _ in range(m)), unitary=True)
            ok, msg = L.sp_localcoef_product(mu, q).match(L.sp_localcoef_closed(mu, q))
            if not ok:
                bad.append((m, msg))
    rep.add("rank-product route equals symmetric-square route, m in {2,3,4}",
            not bad, str(bad[:2]))

    bad = []
    for _ in range(2 * draws):
        k = rng.randrange(0, 4)
        m = rng.randrange(1, 4)
        eta = L.SatakeParams(tuple(
            cmath.exp(2j * cmath.pi * rng.random()) for _ in range(k)), unitary=True)
        alpha = L.SatakeParams(tuple(
            cmath.exp(2j * cmath.pi * rng.random()) for _ in range(m)), unitary=True)
        ok, msg = L.metaplectic_gamma_ps(eta, alpha, q).match(
            L.metaplectic_gamma_ratio(eta, alpha, q))
        if not ok:
            bad.append((k, m, msg))
    rep.add("double-product gamma equals the L-ratio, k, m <= 3", not bad, str(bad[:2]))

    bad = []
    for _ in range(draws):
        a = cmath.exp(2j * cmath.pi * rng.random())
        prod = L.tate_gamma_sym(q, a).mul(
            L.tate_gamma_sym(q, 1 / a).subst_inverse(1 / q))
        if not prod.is_constant() or abs(abs(prod.scalar) - 1) > 1e-9:
            bad.append((a, prod.to_dict()))
    rep.add("Tate functional symmetry: the reflected product is a unit constant",
            not bad, str(bad[:2]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 10. Reducibility criterion
# ---------------------------------------------------------------------------

def suite_reducibility(seed: int = 0, trials: int = 200, q: float = 3.0, **_) -> SuiteReport:
    rep = SuiteReport("reducibility")
    t0 = time.time()
    rng = random.Random(seed)

    bad = []
    for trial in range(trials):
        n = rng.randrange(1, 5)
        entries = []
        for _ in range(n):
            style = rng.random()
            if style < 0.2:
                entries.append(L.PrincipalSeriesEntry(quadratic_ramified=True, value=1.0))
            elif style < 0.4:
                entries.append(L.PrincipalSeriesEntry(value=rng.choice([1.0 + 0j, -1.0 + 0j])))
            else:
                entries.append(L.PrincipalSeriesEntry(
                    value=cmath.exp(2j * cmath.pi * rng.random())))
        if n >= 2 and rng.random() < 0.5:
            entries[1] = entries[0]
        if n >= 3 and rng.random() < 0.5 and entries[0].value is not None:
            entries[2] = L.PrincipalSeriesEntry(value=1 / entries[0].value)
        res = L.reducibility_ps(entries, q)
        if res["verdict"] != "irreducible":
            bad.append((trial, res))
        if any(r["vanishing_order"] < 1 for r in res["reflections"]):
            bad.append((trial, "non-vanishing reflection"))
    rep.add(f"{trials} unitary tuples all irreducible with vanishing reflections",
            not bad, str(bad[:2]))

    v = cmath.exp(0.93j)
    res = L.reducibility_ps([L.PrincipalSeriesEntry(value=v),
                             L.PrincipalSeriesEntry(value=v)], q)
    gl_hit = any(r["kind"] == "gl_pair" and r["vanishing_order"] >= 1
                 for r in res["reflections"])
    rep.add("dedicated equal-pair case vanishes through the GL factor", gl_hit)

    res = L.reducibility_ps([L.PrincipalSeriesEntry(value=v),
                             L.PrincipalSeriesEntry(value=1 / v)], q)
    inv_hit = any(r["kind"] == "gl_inverse_pair" and r["vanishing_order"] >= 1
                  for r in res["reflections"])
    rep.add("dedicated inverse-pair case vanishes", inv_hit)

    res = L.reducibility_ps([L.PrincipalSeriesEntry(value=-1.0 + 0j)], q)
    quad_hit = any(r["kind"] == "quadratic" and r["vanishing_order"] >= 1
                   for r in res["reflections"])
    res2 = L.reducibility_ps([L.PrincipalSeriesEntry(quadratic_ramified=True, value=1.0)], q)
    quad_hit2 = any(r["kind"] == "quadratic" and r["vanishing_order"] >= 1
                    for r in res2["reflections"])
    rep.add("dedicated quadratic cases vanish through the double L-structure",
            quad_hit and quad_hit2)

    res = L.reducibility_ps([L.PrincipalSeriesEntry(value=cmath.exp(0.3j)),
                             L.PrincipalSeriesEntry(value=cmath.exp(0.9j))], q)
    rep.add("regular tuple has an empty reflection set",
            res["reflections"] == [] and res["verdict"] == "irreducible")

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# 11. Archimedean
# ---------------------------------------------------------------------------

def suite_archimedean(seed: int = 0, spoints: int = 50, **_) -> SuiteReport:
    rep = SuiteReport("archimedean")
    t0 = time.time()
    rng = random.Random(seed)

    bad = []
    worst = 0.0
    checked = 0
    while checked < spoints:
        s = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(s) < 1e-2:
            continue
        near_pole = False
        for shift in (0.25, -0.25):
            for expr in ((1 - s) / 2 + shift, (1 + s) / 2 - shift):
                if abs(expr - round(expr.real)) < 1e-2 and expr.real < 0.6:
                    near_pole = True
        if near_pole:
            continue
        for parity in (1, -1):
            for a in (1.0, -1.0):
                for b in (1.0, -1.0):
                    try:
                        lhs = R.sl2_localcoef_real(parity, a, b, s)
                        rhs = R.sl2_localcoef_real_L(parity, a, s, b=b)
                    except Exception:
                        continue
                    rel = abs(lhs - rhs) / max(abs(lhs), 1e-30)
                    worst = max(worst, rel)
                    if rel > 1e-10:
                        bad.append((parity, a, b, s, rel))
        checked += 1
    rep.add("Gamma form equals L form at 50 points x 4 sign pairs x both b signs",
            not bad, f"worst rel {worst:.2e}" if not bad else str(bad[:2]))

    bad = []
    checked = 0
    while checked < 20:
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(s) < 0.05:
            continue
        for n in range(-4, 5):
            lhs, rhs = R.complex_duplication_identity(n, s)
            if not (cmath.isfinite(lhs) and cmath.isfinite(rhs)):
                continue
            if abs(lhs - rhs) / max(abs(lhs), 1e-30) > 1e-10:
                bad.append((n, s))
        checked += 1
    rep.add("complex duplication identity for |n| <= 4", not bad, str(bad[:2]))

    bad = []
    for pairs in (((1.0, 2.0), (0,)), ((1.0, -1.0), (3,)), ((-1.0, -1.0), (1,))):
        (a, y), (k,) = pairs
        if R.gamma_psi_real(a, y) != FourthRoot(k):
            bad.append((a, y, k))
    for sa in (1, -1):
        for sy1 in (1, -1):
            for sy2 in (1, -1):
                lhs = R.gamma_psi_real(sa, sy1 * sy2)
                rhs = (R.gamma_psi_real(sa, sy1) * R.gamma_psi_real(sa, sy2)).times_sign(
                    hilbert_symbol(sy1, sy2, Place("real")))
                if lhs != rhs:
                    bad.append((sa, sy1, sy2))
    rep.add("real Weil factor table and multiplicativity", not bad, str(bad[:2]))

    rep.elapsed = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

SUITES = {
    "hilbert": suite_hilbert,
    "weil": suite_weil,
    "cocycle": suite_cocycle,
    "calibration": suite_calibration,
    "splitting": suite_splitting,
    "so2": suite_so2,
    "local-coef": suite_local_coef,
    "mellin": suite_mellin,
    "symbolic": suite_symbolic,
    "reducibility": suite_reducibility,
    "archimedean": suite_archimedean,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**params)


def run_all(seed: int = 0, **params) -> list[SuiteReport]:
    return [run_suite(name, seed=seed, **params) for name in SUITES]
