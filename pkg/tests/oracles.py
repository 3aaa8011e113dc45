"""Independent reference computations used by the tests.

None of these go through the relation ladders or the block elimination used
by the library; they recompute the same quantities by other routes.
"""

from __future__ import annotations

from itertools import combinations

from gmpy2 import mpq

from kronweyr.matrix import Matrix, kernel_basis, rank
from kronweyr.poly import Poly, PolyMatrix, multiplicity, rational_roots, smith_normal_form
from kronweyr.relation import LinearRelation
from kronweyr.subspace import span


def toeplitz_kernel_dim(E: Matrix, F: Matrix, k: int) -> int:
    """Dimension of ``{x(s) of degree <= k : (sE - F) x(s) = 0}``."""
    n, m = E.shape
    rows = n * (k + 2)
    cols = m * (k + 1)
    data = [[mpq(0)] * cols for _ in range(rows)]
    # coefficient of s^j is E x_{j-1} - F x_j
    for j in range(k + 1):
        for i in range(n):
            for c in range(m):
                data[j * n + i][j * m + c] -= F[i, c]
                data[(j + 1) * n + i][j * m + c] += E[i, c]
    return cols - rank(Matrix.from_rows(data, cols))


def column_minimal_indices(E: Matrix, F: Matrix) -> list[int]:
    """``eps_i`` from the growth of the polynomial kernel: ``d_k - d_{k-1} = #{eps_i <= k}``."""
    n, m = E.shape
    out = []
    prev = 0
    count_prev = 0
    total = m - _normal_rank(E, F)
    k = 0
    while len(out) < total:
        d = toeplitz_kernel_dim(E, F, k)
        count = d - prev
        out += [k] * (count - count_prev)
        prev, count_prev = d, count
        k += 1
    return sorted(out, reverse=True)


def _normal_rank(E: Matrix, F: Matrix) -> int:
    # rank at enough distinct points is the rank over the rational functions
    n, m = E.shape
    return max(rank(E.scale(t) - F) for t in range(min(n, m) + 2))


def finite_segre(E: Matrix, F: Matrix) -> dict:
    """Partial multiplicities at each rational eigenvalue, from the Smith form."""
    _, factors = smith_normal_form(PolyMatrix.from_pencil(E, F))
    out = {}
    for f in factors:
        if f.degree >= 1:
            for lam, k in rational_roots(f)[0].items():
                out.setdefault(lam, []).append(k)
    return {lam: tuple(sorted(v, reverse=True)) for lam, v in out.items()}


def infinite_segre(E: Matrix, F: Matrix) -> tuple:
    _, factors = smith_normal_form(PolyMatrix.from_pencil(F, E))
    degs = [multiplicity(f, mpq(0))[0] for f in factors if f.degree >= 1]
    return tuple(sorted((d for d in degs if d), reverse=True))


def kronecker_oracle(E: Matrix, F: Matrix) -> dict:
    """``{finite, alpha, beta, gamma}`` with ``beta = eps + 1`` and ``gamma = eta + 1``."""
    return {
        "finite": finite_segre(E, F),
        "alpha": infinite_segre(E, F),
        "beta": tuple(e + 1 for e in column_minimal_indices(E, F)),
        "gamma": tuple(e + 1 for e in column_minimal_indices(E.T, F.T)),
    }


def det(M: list[list[Poly]]) -> Poly:
    """Laplace expansion along the first row."""
    n = len(M)
    if n == 0:
        return Poly((1,))
    if n == 1:
        return M[0][0]
    acc = Poly()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def determinantal_divisors(P: PolyMatrix) -> list[Poly]:
    """``D_k`` = monic gcd of all ``k x k`` minors, while nonzero."""
    out = []
    for k in range(1, min(P.rows, P.cols) + 1):
        g = Poly()
        for rows in combinations(range(P.rows), k):
            for cols in combinations(range(P.cols), k):
                d = det([[P.data[i][j] for j in cols] for i in rows])
                g = d if g.is_zero() else g.gcd(d)
        if g.is_zero():
            break
        out.append(g.monic())
    return out


def compose_by_linking(S1: LinearRelation, S2: LinearRelation) -> LinearRelation:
    """``S1 S2`` by solving ``Y2 a = X1 b`` on the spanning matrices."""
    m = S1.m
    p, q = S2.dim, S1.dim
    X2 = [r[:m] for r in S2.rows]
    Y2 = [r[m:] for r in S2.rows]
    X1 = [r[:m] for r in S1.rows]
    Y1 = [r[m:] for r in S1.rows]
    system = Matrix.from_rows(
        [[Y2[a][i] for a in range(p)] + [-X1[b][i] for b in range(q)] for i in range(m)], p + q)
    K = kernel_basis(system) if m else Matrix.identity(p + q)
    vecs = []
    for col in K.columns():
        a, b = col[:p], col[p:]
        x = [sum((a[t] * X2[t][i] for t in range(p)), mpq(0)) for i in range(m)]
        z = [sum((b[t] * Y1[t][i] for t in range(q)), mpq(0)) for i in range(m)]
        vecs.append(x + z)
    return LinearRelation(m, span(2 * m, vecs))


def matrix_weyr(A: Matrix, lam) -> tuple:
    """``rank (A-λ)^{k-1} - rank (A-λ)^k`` for a square matrix."""
    n = A.rows
    B = A - Matrix.identity(n).scale(lam)
    ranks = [n]
    P = Matrix.identity(n)
    while True:
        P = P @ B
        ranks.append(rank(P))
        if ranks[-1] == ranks[-2]:
            break
    return tuple(d for d in (ranks[k - 1] - ranks[k] for k in range(1, len(ranks))) if d)
