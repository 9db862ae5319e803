"""Exact matrix models of Sp_2n(Q) and GSp_2n(Q).

Vectors are rows and the group acts from the right; the basis is ordered
e_1..e_n, e_1*..e_n* and the form is given by J = [[0, I], [-I, 0]].  All
entries are Fractions and the defining identity g J g^T = J is checked at
construction time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import DomainError, Place, SquareClass, square_class
from .linalg import (
    Matrix,
    block,
    det,
    identity,
    mat,
    mat_inv,
    mat_mul,
    mat_neg,
    rank,
    scalar_mul,
    submatrix,
    transpose,
    zeros,
)


def J_matrix(n: int) -> Matrix:
    return block(zeros(n, n), identity(n), mat_neg(identity(n)), zeros(n, n))


def _is_symplectic(rows: Matrix, n: int) -> bool:
    j = J_matrix(n)
    return mat_mul(mat_mul(rows, j), transpose(rows)) == j


class SymplecticMatrix:
    """Immutable 2n x 2n rational matrix satisfying g J g^T = J.

    The identity is checked on construction; products and inverses of checked
    matrices are exactly symplectic in rational arithmetic, so the internal
    operations skip the re-check.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Matrix, check: bool = True):
        self.n = n
        self.rows = rows
        if check:
            if len(rows) != 2 * n or any(len(r) != 2 * n for r in rows):
                raise DomainError("wrong shape for Sp_2n")
            if not _is_symplectic(rows, n):
                raise DomainError("matrix is not symplectic")

    def __mul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.n != other.n:
            raise DomainError("rank mismatch")
        return SymplecticMatrix(self.n, mat_mul(self.rows, other.rows), check=False)

    def inverse(self) -> "SymplecticMatrix":
        return SymplecticMatrix(self.n, mat_inv(self.rows), check=False)

    def block_of(self, which: str) -> Matrix:
        n = self.n
        r = {"a": (0, 0), "b": (0, n), "c": (n, 0), "d": (n, n)}[which]
        return submatrix(self.rows, range(r[0], r[0] + n), range(r[1], r[1] + n))

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymplecticMatrix(n={self.n})"


# ---------------------------------------------------------------------------
# Named generators
# ---------------------------------------------------------------------------

def sp_identity(n: int) -> SymplecticMatrix:
    return SymplecticMatrix(n, identity(2 * n))


def tau_S(S: Sequence[int], n: int) -> SymplecticMatrix:
    """e_i -> -e_i*, e_i* -> e_i for i in S (1-based), identity elsewhere."""
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    sset = set(S)
    if not sset <= set(range(1, n + 1)):
        raise DomainError("S must be a subset of 1..n")
    for i in range(1, n + 1):
        if i in sset:
            rows[i - 1][n + i - 1] = Fraction(-1)
            rows[n + i - 1][i - 1] = Fraction(1)
        else:
            rows[i - 1][i - 1] = Fraction(1)
            rows[n + i - 1][n + i - 1] = Fraction(1)
    return SymplecticMatrix(n, tuple(tuple(r) for r in rows))


def a_S_lambda(S: Sequence[int], lam, n: int) -> SymplecticMatrix:
    """e_i -> lambda e_i, e_i* -> lambda^{-1} e_i* on S; a_S = a_S(-1).

    The scaling direction is pinned by requiring, simultaneously,
    tau_S-conjugation to satisfy tau_S^lam = a_S(lam) tau_S and the Siegel
    block rule (a, b; 0, ~a)^lam = (a, lam b; 0, ~a); the calibration suite
    guards both.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    sset = set(S)
    for i in range(1, n + 1):
        rows[i - 1][i - 1] = lam if i in sset else Fraction(1)
        rows[n + i - 1][n + i - 1] = 1 / lam if i in sset else Fraction(1)
    return SymplecticMatrix(n, tuple(tuple(r) for r in rows))


def a_S(S: Sequence[int], n: int) -> SymplecticMatrix:
    return a_S_lambda(S, -1, n)


def hat(g: Matrix) -> SymplecticMatrix:
    """diag(g, transpose-inverse of g): the Levi embedding of GL_n."""
    n = len(g)
    try:
        g_tilde = transpose(mat_inv(g))
    except ValueError as exc:
        raise DomainError("singular GL parameter") from exc
    return SymplecticMatrix(n, block(g, zeros(n, n), zeros(n, n), g_tilde))


def n_k(k: Matrix) -> SymplecticMatrix:
    """Upper unipotent shear [[I, k], [0, I]] for symmetric k."""
    n = len(k)
    if k != transpose(k):
        raise DomainError("shear parameter must be symmetric")
    return SymplecticMatrix(n, block(identity(n), k, zeros(n, n), identity(n)))


def p_k(k: Matrix) -> SymplecticMatrix:
    """[[k, -I], [0, k^{-1}]] for symmetric invertible k."""
    n = len(k)
    if k != transpose(k):
        raise DomainError("parameter must be symmetric")
    try:
        k_inv = mat_inv(k)
    except ValueError as exc:
        raise DomainError("singular shear parameter") from exc
    return SymplecticMatrix(
        n, block(k, mat_neg(identity(n)), zeros(n, n), k_inv))


def w_perm(pi: Sequence[int]) -> SymplecticMatrix:
    """hat of the permutation matrix w_{i,j} = delta_{pi(i), j} (pi 1-based)."""
    n = len(pi)
    g = tuple(
        tuple(Fraction(int(pi[i] == j + 1)) for j in range(n)) for i in range(n)
    )
    if det(g) == 0:
        raise DomainError("not a permutation")
    return hat(g)


def omega_n(n: int) -> Matrix:
    """Anti-diagonal ones in GL_n."""
    return tuple(
        tuple(Fraction(int(i + j == n - 1)) for j in range(n)) for i in range(n)
    )


def epsilon_n(n: int) -> Matrix:
    return tuple(
        tuple(Fraction((-1) ** i if i == j else 0) for j in range(n)) for i in range(n)
    )


def sigma_0(n: int) -> Matrix:
    """[[0, eps_n], [eps_n, 0]]; a similitude of factor -1 used by the involution."""
    eps = epsilon_n(n)
    return block(zeros(n, n), eps, eps, zeros(n, n))


def embed_i(g: SymplecticMatrix, n: int) -> SymplecticMatrix:
    """Sp_2r -> Sp_2n acting on the last r basis pairs."""
    r = g.n
    if r > n:
        raise DomainError("cannot embed into smaller rank")
    rows = [list(row) for row in identity(2 * n)]
    for bi, bj, oi, oj in (
        ("a", 0, 0, 0), ("b", 0, 0, n), ("c", 0, n, 0), ("d", 0, n, n)
    ):
        blk = g.block_of(bi)
        for x in range(r):
            for y in range(r):
                rows[oi + (n - r) + x][oj + (n - r) + y] = blk[x][y]
    return SymplecticMatrix(n, tuple(tuple(r_) for r_ in rows))


def embed_j(g: SymplecticMatrix, n: int) -> SymplecticMatrix:
    """Sp_2r -> Sp_2n acting on the first r basis pairs."""
    r = g.n
    if r > n:
        raise DomainError("cannot embed into smaller rank")
    rows = [list(row) for row in identity(2 * n)]
    for bi, oi, oj in (("a", 0, 0), ("b", 0, n), ("c", n, 0), ("d", n, n)):
        blk = g.block_of(bi)
        for x in range(r):
            for y in range(r):
                rows[oi + x][oj + y] = blk[x][y]
    return SymplecticMatrix(n, tuple(tuple(r_) for r_ in rows))


# ---------------------------------------------------------------------------
# Bruhat cells
# ---------------------------------------------------------------------------

def cell_index(g: SymplecticMatrix) -> int:
    """j with g in Omega_j: the rank of the lower-left block."""
    return rank(g.block_of("c"))


def is_siegel(g: SymplecticMatrix) -> bool:
    return all(x == 0 for row in g.block_of("c") for x in row)


def det_a(g: SymplecticMatrix) -> Fraction:
    """det of the GL_n part of a Siegel-parabolic element."""
    if not is_siegel(g):
        raise DomainError("not in the Siegel parabolic")
    return det(g.block_of("a"))


@dataclass(frozen=True)
class BruhatData:
    p1: SymplecticMatrix
    S: frozenset[int]
    p2: SymplecticMatrix

    def reassemble(self, n: int) -> SymplecticMatrix:
        return self.p1 * tau_S(sorted(self.S), n) * self.p2

    @property
    def x_rational(self) -> Fraction:
        return det_a(self.p1) * det_a(self.p2)


def _gl_row_col_reduce(c: Matrix) -> tuple[Matrix, Matrix, int]:
    """u, v in GL_n with transpose(u^{-1}) . c . v = diag(1,..,1,0,..); rank."""
    n = len(c)
    m = [list(row) for row in c]
    left = [list(row) for row in identity(n)]   # accumulates row ops
    right = [list(row) for row in identity(n)]  # accumulates col ops
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, n):
            for j in range(r, n):
                if m[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != r:
            m[r], m[i] = m[i], m[r]
            left[r], left[i] = left[i], left[r]
        if j != r:
            for row in m:
                row[r], row[j] = row[j], row[r]
            for row in right:
                row[r], row[j] = row[j], row[r]
        inv = Fraction(1) / m[r][r]
        m[r] = [x * inv for x in m[r]]
        left[r] = [x * inv for x in left[r]]
        for i2 in range(n):
            if i2 != r and m[i2][r] != 0:
                f = m[i2][r]
                m[i2] = [x - f * y for x, y in zip(m[i2], m[r])]
                left[i2] = [x - f * y for x, y in zip(left[i2], left[r])]
        for j2 in range(n):
            if j2 != r and m[r][j2] != 0:
                f = m[r][j2]
                for row in m:
                    row[j2] -= f * row[r]
                for row in right:
                    row[j2] -= f * row[r]
        r += 1
    lu = tuple(tuple(row) for row in left)
    rv = tuple(tuple(row) for row in right)
    u = transpose(mat_inv(lu))
    return u, rv, r


def bruhat_factor(g: SymplecticMatrix) -> BruhatData:
    """Factor g = p1 . tau_S . p2 with p1, p2 Siegel-parabolic, |S| = cell index.

    Symplectic Gaussian elimination: GL row/column operations through hat()
    bring the lower-left block to a partial identity, symmetric shears clear
    the remaining blocks, and the residue is checked to be parabolic.  The
    reassembly identity is asserted before returning.
    """
    n = g.n
    if is_siegel(g):
        return BruhatData(g, frozenset(), sp_identity(n))
    c = g.block_of("c")
    left_acc = sp_identity(n)    # g_original = left_acc * current * right_acc
    right_acc = sp_identity(n)
    cur = g

    # already a partial-identity block?
    diag_pattern = all(
        c[i][j] == 0 for i in range(n) for j in range(n)
        if i != j) and all(c[i][i] in (0, 1) for i in range(n))
    if diag_pattern:
        S = frozenset(i + 1 for i in range(n) if c[i][i] == 1)
    else:
        u, v, r = _gl_row_col_reduce(c)
        hu, hv = hat(u), hat(v)
        cur = hu * cur * hv
        left_acc = left_acc * hu.inverse()
        right_acc = hv.inverse() * right_acc
        S = frozenset(range(1, r + 1))

    sl = sorted(S)
    e_idx = [i - 1 for i in sl]                      # 0-based S positions

    # clear delta on S-rows with a right shear: delta <- delta + E k;
    # delta is symmetric on SxS so the symmetric completion is consistent
    d = cur.block_of("d")
    ksym = [[Fraction(0)] * n for _ in range(n)]
    for i in e_idx:
        for j in range(n):
            ksym[i][j] = -d[i][j]
            if j not in e_idx:
                ksym[j][i] = -d[i][j]
    kmat = tuple(tuple(row) for row in ksym)
    if kmat != transpose(kmat):
        raise DomainError("internal: shear parameter not symmetric")
    shear_r = n_k(kmat)
    cur = cur * shear_r
    right_acc = shear_r.inverse() * right_acc

    # clear alpha on S-columns with a left shear: alpha <- alpha + k E
    a = cur.block_of("a")
    ksym2 = [[Fraction(0)] * n for _ in range(n)]
    for j in e_idx:
        for i in range(n):
            ksym2[i][j] = -a[i][j]
            ksym2[j][i] = -a[i][j]
    kmat2 = tuple(tuple(row) for row in ksym2)
    if kmat2 != transpose(kmat2):
        raise DomainError("internal: shear parameter not symmetric")
    shear_l = n_k(kmat2)
    cur = shear_l * cur
    left_acc = left_acc * shear_l.inverse()

    residue = tau_S(sl, n).inverse() * cur
    if not is_siegel(residue):
        raise DomainError("internal: Bruhat elimination failed")
    p1 = left_acc
    p2 = residue * right_acc
    if not (is_siegel(p1) and is_siegel(p2)):
        raise DomainError("internal: factors not parabolic")
    data = BruhatData(p1, S, p2)
    if data.reassemble(n) != g:
        raise DomainError("internal: Bruhat reassembly mismatch")
    return data


def x_invariant(g: SymplecticMatrix, place: Place) -> SquareClass:
    """x(g) = det(p1 p2 restricted to the Lagrangian) modulo squares."""
    return square_class(bruhat_factor(g).x_rational, place)


def x_rational(g: SymplecticMatrix) -> Fraction:
    """A rational representative of x(g); well-defined modulo squares."""
    return bruhat_factor(g).x_rational


# ---------------------------------------------------------------------------
# Similitude group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GSpMatrix:
    n: int
    rows: Matrix
    lam: Fraction

    @staticmethod
    def of(rows: Matrix) -> "GSpMatrix":
        n2 = len(rows)
        if n2 % 2:
            raise DomainError("odd size")
        n = n2 // 2
        j = J_matrix(n)
        gjgt = mat_mul(mat_mul(rows, j), transpose(rows))
        lam = None
        for i in range(n2):
            for jj in range(n2):
                if j[i][jj] != 0:
                    cand = gjgt[i][jj] / j[i][jj]
                    if lam is None:
                        lam = cand
                    elif lam != cand:
                        raise DomainError("not a similitude")
                elif gjgt[i][jj] != 0:
                    raise DomainError("not a similitude")
        if lam is None or lam == 0:
            raise DomainError("degenerate similitude")
        return GSpMatrix(n, rows, lam)

    @staticmethod
    def from_sp(g: SymplecticMatrix) -> "GSpMatrix":
        return GSpMatrix(g.n, g.rows, Fraction(1))

    def __mul__(self, other: "GSpMatrix") -> "GSpMatrix":
        if self.n != other.n:
            raise DomainError("rank mismatch")
        return GSpMatrix.of(mat_mul(self.rows, other.rows))

    def inverse(self) -> "GSpMatrix":
        return GSpMatrix.of(mat_inv(self.rows))


def i_lambda(lam, n: int) -> GSpMatrix:
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    rows = block(identity(n), zeros(n, n), zeros(n, n), scalar_mul(lam, identity(n)))
    return GSpMatrix.of(rows)


def similitude(g: GSpMatrix) -> Fraction:
    return g.lam


def p_of(g: GSpMatrix) -> SymplecticMatrix:
    """The Sp part of g = i(lambda) p(g): scale the bottom blocks by 1/lambda."""
    n = g.n
    inv = 1 / g.lam
    rows = tuple(
        tuple(x * (inv if i >= n else 1) for x in row) for i, row in enumerate(g.rows)
    )
    return SymplecticMatrix(n, rows, check=False)


def conj_lambda(g: SymplecticMatrix, lam) -> SymplecticMatrix:
    """g^lambda = i(lambda)^{-1} g i(lambda); stays symplectic."""
    lam = Fraction(lam)
    il = i_lambda(lam, g.n)
    rows = mat_mul(mat_mul(mat_inv(il.rows), g.rows), il.rows)
    return SymplecticMatrix(g.n, rows, check=False)


# ---------------------------------------------------------------------------
# Fuzz generator
# ---------------------------------------------------------------------------

_PARAMS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
           Fraction(1, 2), Fraction(-1, 2))
_NZ_PARAMS = tuple(p for p in _PARAMS if p != 0)


def random_element(n: int, word_length: int, seed: int,
                   extra_params: Sequence[Fraction] = ()) -> SymplecticMatrix:
    """Product of word_length random generators with small parameters.

    Deterministic in the seed; the symplectic identity holds by construction
    and is still checked.  word_length is capped to control entry growth.
    """
    if word_length > 8:
        raise DomainError("word_length capped at 8")
    rng = random.Random(seed)
    nz = list(_NZ_PARAMS) + [Fraction(x) for x in extra_params]
    g = sp_identity(n)
    for _ in range(word_length):
        kind = rng.choice(("tau", "a_lam", "hat", "shear", "perm"))
        if kind == "tau":
            S = [i for i in range(1, n + 1) if rng.random() < 0.5]
            g = g * tau_S(S, n)
        elif kind == "a_lam":
            S = [i for i in range(1, n + 1) if rng.random() < 0.5]
            g = g * a_S_lambda(S, rng.choice(nz), n)
        elif kind == "hat":
            # random elementary GL matrix: transvection or diagonal
            m = [list(row) for row in identity(n)]
            if n > 1 and rng.random() < 0.7:
                i, j = rng.sample(range(n), 2)
                m[i][j] = rng.choice(nz)
            else:
                i = rng.randrange(n)
                m[i][i] = rng.choice(nz)
            g = g * hat(tuple(tuple(r) for r in m))
        elif kind == "shear":
            k = [[Fraction(0)] * n for _ in range(n)]
            i, j = rng.randrange(n), rng.randrange(n)
            val = rng.choice(nz)
            k[i][j] = val
            k[j][i] = val
            g = g * n_k(tuple(tuple(r) for r in k))
        else:
            pi = list(range(1, n + 1))
            rng.shuffle(pi)
            g = g * w_perm(pi)
    return g
