"""Univariate polynomials in ``s``, polynomial matrices, Smith form, roots."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import InternalInvariantError, ZeroPolynomial
from .matrix import Matrix, rank
from .scalars import Gaussian, format_scalar, scalar

__all__ = [
    "Poly",
    "PolyMatrix",
    "smith_normal_form",
    "invariant_factors",
    "rational_roots",
    "divide_out_root",
    "coprime_base",
    "multiplicity",
]


class Poly:
    """Polynomial with exact coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [scalar(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list) -> "Poly":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, a, b) -> "Poly":
        """``a*s + b``."""
        return cls((b, a))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-scalar(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly._raw(out)

    def __neg__(self) -> "Poly":
        return Poly._raw([-x for x in self.coeffs])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = scalar(other)
            if not c:
                return Poly()
            return Poly._raw([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(), self
        inv = 1 / other.coeffs[-1]
        q = [mpq(0)] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c:
                c = c * inv
                q[k] = c
                for j in range(db + 1):
                    if b[j]:
                        r[k + j] = r[k + j] - c * b[j]
        return Poly._raw(q), Poly._raw(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly._raw([x * inv for x in self.coeffs])

    def __call__(self, x):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def is_real(self) -> bool:
        return not any(type(c) is Gaussian for c in self.coeffs)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b.coeffs:
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "Poly":
        if self.degree <= 0:
            return Poly((1,)) if self.coeffs else Poly()
        return (self // self.gcd(self.derivative())).monic()

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "s") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if type(c) is Gaussian:
            body = f"({format_scalar(c)})" + (f"*{mono}" if mono else "")
            sign = "+"
        else:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = format_scalar(mag) + (f"*{mono}" if mono else "")
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, (list, tuple)):
        return Poly(p)
    return Poly.const(p)


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    data: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        data = tuple(tuple(_as_poly(p) for p in r) for r in rows)
        return cls(len(data), len(data[0]) if data else 0, data)

    @classmethod
    def from_pencil(cls, E: Matrix, F: Matrix) -> "PolyMatrix":
        """The matrix ``s*E - F``."""
        data = tuple(tuple(Poly._raw([-f, e]) for e, f in zip(re, rf))
                     for re, rf in zip(E.data, F.data))
        return cls(E.rows, E.cols, data)

    @property
    def entries(self) -> tuple:
        return tuple(p for r in self.data for p in r)

    def evaluate(self, x) -> Matrix:
        x = scalar(x)
        return Matrix(self.rows, self.cols, tuple(tuple(p(x) for p in r) for r in self.data))

    def max_degree(self) -> int:
        return max((p.degree for p in self.entries), default=-1)


def _min_degree_entry(A, t, rows, cols):
    best, where = None, None
    for i in range(rows):
        row = A[i]
        for j in range(cols):
            p = row[j]
            if p.coeffs and (best is None or p.degree < best):
                best, where = p.degree, (i, j)
                if best == 0:
                    return where
    return where


def _diagonalize(A: list[list[Poly]], n: int, m: int) -> list[Poly]:
    diag = []
    for t in range(min(n, m)):
        where = None
        for i in range(t, n):
            for j in range(t, m):
                p = A[i][j]
                if p.coeffs and (where is None or p.degree < A[where[0]][where[1]].degree):
                    where = (i, j)
                    if p.degree == 0:
                        break
            if where is not None and A[where[0]][where[1]].degree == 0:
                break
        if where is None:
            break
        i, j = where
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            clean = True
            prow = A[t]
            for i in range(t + 1, n):
                e = A[i][t]
                if e.coeffs:
                    q, r = divmod(e, piv)
                    row = A[i]
                    for k in range(t, m):
                        if prow[k].coeffs:
                            row[k] = row[k] - q * prow[k]
                    if r.coeffs:
                        clean = False
            for j in range(t + 1, m):
                e = prow[j]
                if e.coeffs:
                    q, r = divmod(e, piv)
                    for i in range(t, n):
                        if A[i][t].coeffs:
                            A[i][j] = A[i][j] - q * A[i][t]
                    if r.coeffs:
                        clean = False
            if clean and not any(A[i][t].coeffs for i in range(t + 1, n)):
                break
            # move a lowest-degree nonzero from row t / column t into the pivot
            best = (t, t)
            for i in range(t + 1, n):
                if A[i][t].coeffs and A[i][t].degree < A[best[0]][best[1]].degree:
                    best = (i, t)
            for j in range(t + 1, m):
                if A[t][j].coeffs and A[t][j].degree < A[best[0]][best[1]].degree:
                    best = (t, j)
            i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(A[t][t].monic())
    return diag


def _divisibility_chain(diag: list[Poly]) -> list[Poly]:
    d = list(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if not d[i].divides(d[j]):
                g = d[i].gcd(d[j])
                d[j] = ((d[i] * d[j]) // g).monic()
                d[i] = g
    return d


def smith_normal_form(P: PolyMatrix, verify: bool = True) -> tuple[PolyMatrix, tuple[Poly, ...]]:
    """Smith normal form ``D`` of ``P`` and its invariant factors.

    Unimodular elimination with Euclidean pivoting, followed by a gcd/lcm
    sweep over the diagonal.  With ``verify`` the divisibility chain and the
    rank over the rational function field (rank of ``P`` at a point that is
    not a root of the last factor) are checked.
    """
    A = [list(r) for r in P.data]
    factors = _divisibility_chain(_diagonalize(A, P.rows, P.cols))
    if verify:
        _verify_smith(P, factors)
    zero = Poly()
    data = tuple(
        tuple(factors[i] if i == j and i < len(factors) else zero for j in range(P.cols))
        for i in range(P.rows)
    )
    return PolyMatrix(P.rows, P.cols, data), tuple(factors)


def _verify_smith(P: PolyMatrix, factors: Sequence[Poly]) -> None:
    for a, b in zip(factors, factors[1:]):
        if not a.divides(b):
            raise InternalInvariantError(f"invariant factor {a} does not divide {b}")
    for f in factors:
        if f.lc != 1:
            raise InternalInvariantError("invariant factors must be monic")
    last = factors[-1] if factors else Poly((1,))
    t = 0
    while last(mpq(t)) == 0:
        t += 1
    if rank(P.evaluate(t)) != len(factors):
        raise InternalInvariantError("Smith form rank disagrees with the evaluation rank")


def invariant_factors(P: PolyMatrix) -> tuple[Poly, ...]:
    return smith_normal_form(P)[1]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n > 10 ** 12:
        from sympy import divisors

        return [int(d) for d in divisors(n)]
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _integer_coeffs(p: Poly) -> list[int]:
    den = lcm(*(int(mpq(c).denominator) for c in p.coeffs))
    ints = [int(mpq(c) * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def multiplicity(p: Poly, root) -> tuple[int, Poly]:
    """Multiplicity of ``root`` in ``p`` and the cofactor."""
    lin = Poly((-scalar(root), 1))
    k = 0
    while p.degree >= 1 and p(root) == 0:
        p = p // lin
        k += 1
    return k, p


divide_out_root = multiplicity


def rational_roots(p: Poly) -> tuple[dict, Poly]:
    """Rational roots of ``p`` with multiplicities, and the residual factor.

    ``p == residual * prod((s - r)**k)`` holds exactly, and the residual has
    no rational root.  Polynomials that are not a scalar multiple of a real
    polynomial are returned unchanged as residual.
    """
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has every scalar as a root")
    roots: dict = {}
    if p.degree <= 0:
        return roots, p
    q = p.monic()
    if not q.is_real():
        return roots, p
    k, q = multiplicity(q, mpq(0))
    if k:
        roots[mpq(0)] = k
    if q.degree >= 1:
        ints = _integer_coeffs(q)
        lead, trail = ints[-1], ints[0]
        cands = set()
        for a in _divisors(trail):
            for b in _divisors(lead):
                cands.add(mpq(a, b))
                cands.add(mpq(-a, b))
        for c in sorted(cands):
            if q.degree < 1:
                break
            k, q = multiplicity(q, c)
            if k:
                roots[c] = k
    residual = q * p.lc
    return dict(sorted(roots.items())), residual


def coprime_base(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime monic squarefree polynomials generating ``polys``.

    Every input factors as a product of powers of base elements.
    """
    base = []
    for p in polys:
        if p.degree >= 1:
            base.extend(_squarefree_parts(p))
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = base[i].gcd(base[j])
                if g.degree >= 1:
                    a, b = base[i] // g, base[j] // g
                    rest = [x for k, x in enumerate(base) if k not in (i, j)]
                    base = rest + [x.monic() for x in (g, a, b) if x.degree >= 1]
                    changed = True
                    break
            if changed:
                break
    uniq = []
    for b in base:
        if b not in uniq:
            uniq.append(b)
    return sorted(uniq, key=lambda x: (x.degree, [str(c) for c in x.coeffs]))


def _squarefree_parts(p: Poly) -> list[Poly]:
    """Yun's decomposition: squarefree pairwise coprime ``a_i`` with ``p ~ prod a_i^i``."""
    p = p.monic()
    out = []
    a = p.gcd(p.derivative())
    b = p // a
    c = p.derivative() // a
    d = c - b.derivative()
    while b.degree >= 1:
        g = b.gcd(d)
        if g.degree >= 1:
            out.append(g)
        b = b // g
        c = d // g
        d = c - b.derivative()
    return out
