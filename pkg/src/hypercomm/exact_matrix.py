"""Dense exact matrices over a :class:`~hypercomm.field.Field`.

Entries are raw field values (see :mod:`hypercomm.field`). Indexing with
``M[i, j]`` is 0-based; helpers that mirror the usual ``E_{i,j}`` notation
(:func:`elementary`, :class:`HessenbergProfile`) are 1-based and say so.
Vectors are tuples of raw values and are treated as columns.

All rank and kernel work goes through :func:`rref`, which pivots on the first
nonzero entry of each column, so results are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .field import Field, FieldMismatchError, Scalar

Vector = tuple


class ShapeError(ValueError):
    """Dimension or field mismatch between operands."""


class SingularMatrixError(ValueError):
    pass


# -- row reduction ---------------------------------------------------------------


def rref(field: Field, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of ``rows`` restricted to the first ``ncols`` columns.

    Columns beyond ``ncols`` (e.g. a right-hand side) are carried along but
    never pivoted on. Returns the nonzero reduced rows and the pivot columns.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    inv, neg, one = field.inv, field.neg, field.one
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if lead != one:
            work[r] = field.scale_vec(inv(lead), work[r])
        prow = work[r]
        for i in range(nrows):
            if i != r:
                f = work[i][c]
                if f != 0:
                    work[i] = field.axpy(work[i], neg(f), prow)
        pivots.append(c)
        r += 1
    return work[:r], pivots


def _kernel_from_rref(field: Field, reduced, pivots, ncols: int) -> list[Vector]:
    zero, one = field.zero, field.one
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, c in zip(reduced, pivots):
            if row[f] != 0:
                v[c] = field.neg(row[f])
        basis.append(tuple(v))
    return basis


def _solve_rows(field: Field, rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """Solve ``rows @ x = rhs``; free variables are set to zero. ``None`` if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(field, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for row, c in zip(reduced, pivots):
        x[c] = row[ncols]
    return x


def vectors_rank(field: Field, vectors: Iterable[Sequence]) -> int:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    return len(rref(field, vecs, len(vecs[0]))[1])


def in_span(field: Field, vectors: Sequence[Sequence], v: Sequence) -> bool:
    return vectors_rank(field, list(vectors) + [v]) == vectors_rank(field, vectors)


# -- polynomials -------------------------------------------------------------------


class Poly:
    """Univariate polynomial over a field, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable):
        c = [v if field.is_canonical(v) else field.coerce(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff=None) -> "Poly":
        return cls(field, [field.zero] * degree + [field.one if coeff is None else coeff])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable) -> "Poly":
        out = cls(field, [field.one])
        for r in roots:
            out = out * cls(field, [field.neg(r), field.one])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead_inv = self.field.inv(self.coeffs[-1])
        return Poly(self.field, self.field.scale_vec(lead_inv, self.coeffs))

    def _check(self, other: "Poly") -> None:
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = list(self.coeffs), list(other.coeffs)
        m = max(len(a), len(b))
        a += [F.zero] * (m - len(a))
        b += [F.zero] * (m - len(b))
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a != 0:
                out[i:i + len(other.coeffs)] = F.axpy(out[i:i + len(other.coeffs)], a, other.coeffs)
        return Poly(F, out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quot = [F.zero] * max(len(r) - d, 0)
        while len(r) - 1 >= d and r:
            shift = len(r) - 1 - d
            f = F.mul(r[-1], lead_inv)
            quot[shift] = f
            r[shift:] = F.axpy(r[shift:], F.neg(f), other.coeffs)
            while r and r[-1] == 0:
                r.pop()
        return Poly(F, quot), Poly(F, r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def at_matrix(self, M: "Mat") -> "Mat":
        out = Mat.zeros(M.field, M.n)
        for c in reversed(self.coeffs):
            out = out @ M + Mat.identity(M.field, M.n).scale(c)
        return out

    def roots(self) -> list:
        """Roots lying in the base field, without multiplicity, in ascending order."""
        F = self.field
        if self.degree < 1:
            return []
        if F.is_finite:
            return [x for x in F.elements() if self(x) == 0]
        return _rational_roots(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(c) if not F.is_finite else F.format_element(c)
            if "," in cs or "/" in cs:
                cs = f"({cs})"
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(cs)
            elif c == F.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}{mono}")
        return " + ".join(terms)


def _divisors(m: int) -> list[int]:
    m = abs(m)
    out = set()
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.update((d, m // d))
        d += 1
    return sorted(out)


def _rational_roots(poly: Poly) -> list[Fraction]:
    coeffs = list(poly.coeffs)
    roots = set()
    while coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs.pop(0)
    if len(coeffs) < 2:
        return sorted(roots)
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if Poly(poly.field, coeffs)(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- matrices ------------------------------------------------------------------------


class Mat:
    """Immutable square matrix with entries in a single field."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        rows = [tuple(v if field.is_canonical(v) else field.coerce(v) for v in r) for r in rows]
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ShapeError("matrix must be square with n >= 1")
        self.field = field
        self.n = n
        self.rows = tuple(rows)

    @classmethod
    def _raw(cls, field: Field, rows) -> "Mat":
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.n = len(m.rows)
        return m

    # constructors
    @classmethod
    def zeros(cls, field: Field, n: int) -> "Mat":
        z = field.zero
        return cls._raw(field, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls.diag(field, [field.one] * n)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Mat":
        n = len(values)
        vals = [v if field.is_canonical(v) else field.coerce(v) for v in values]
        return cls._raw(field, [[vals[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> "Mat":
        n = len(columns)
        return cls._raw(field, [[columns[j][i] for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, field: Field, n: int, flat: Sequence) -> "Mat":
        return cls._raw(field, [flat[i * n:(i + 1) * n] for i in range(n)])

    @classmethod
    def random(cls, field: Field, n: int, rng) -> "Mat":
        return cls._raw(field, [[field.random_element(rng) for _ in range(n)] for _ in range(n)])

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self) -> tuple:
        return tuple(v for r in self.rows for v in r)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.n)]

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self.rows[i][j])

    # arithmetic
    def _check(self, other: "Mat") -> None:
        if not isinstance(other, Mat):
            raise ShapeError(f"expected a matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ShapeError("matrices over different fields")
        if other.n != self.n:
            raise ShapeError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        add = self.field.add
        return Mat._raw(self.field, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        sub = self.field.sub
        return Mat._raw(self.field, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat._raw(self.field, [[neg(a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        F = self.field
        cols = other.columns()
        return Mat._raw(F, [[F.dot(r, c) for c in cols] for r in self.rows])

    def scale(self, c) -> "Mat":
        if isinstance(c, Scalar):
            c = self.field.coerce(c)
        elif not self.field.is_canonical(c):
            c = self.field.coerce(c)
        return Mat._raw(self.field, [self.field.scale_vec(c, r) for r in self.rows])

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            raise TypeError("use @ for the matrix product")
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return inverse(self) ** (-e)
        out = Mat.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def apply(self, x: Sequence) -> Vector:
        return tuple(self.field.dot(r, x) for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat._raw(self.field, list(zip(*self.rows)))

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def trace(self):
        return self.field.sum(self.rows[i][i] for i in range(self.n))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(self.rows[i][j] == (d if i == j else 0) for i in range(self.n) for j in range(self.n))

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.n) for j in range(i))

    def rank(self) -> int:
        return len(rref(self.field, self.rows, self.n)[1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def __repr__(self) -> str:
        fmt = self.field.format_element
        body = "; ".join(" ".join(fmt(v) for v in r) for r in self.rows)
        return f"Mat[{self.field.descriptor()}]({body})"


def elementary(field: Field, n: int, i: int, j: int) -> Mat:
    """``E_{i,j}``: a single 1 at row ``i``, column ``j`` (1-based)."""
    rows = [[field.zero] * n for _ in range(n)]
    rows[i - 1][j - 1] = field.one
    return Mat._raw(field, rows)


def jordan(field: Field, n: int) -> Mat:
    """Nilpotent Jordan block ``J_n`` (ones on the superdiagonal)."""
    rows = [[field.one if j == i + 1 else field.zero for j in range(n)] for i in range(n)]
    return Mat._raw(field, rows)


def companion(poly: Poly) -> Mat:
    """Companion matrix of a monic polynomial (subdiagonal ones, last column ``-c``)."""
    F = poly.field
    if not poly.is_monic() or poly.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = poly.degree
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = F.one
    for i in range(n):
        rows[i][n - 1] = F.neg(poly.coeffs[i])
    return Mat._raw(F, rows)


def unit_vector(field: Field, n: int, i: int) -> Vector:
    """``e_i`` (1-based)."""
    return tuple(field.one if k == i - 1 else field.zero for k in range(n))


def _same(M: Mat, N: Mat) -> None:
    M._check(N)


def mat_op(kind: str, M: Mat, other=None) -> Mat:
    if kind == "add":
        return M + other
    if kind == "sub":
        return M - other
    if kind == "mul":
        return M @ other
    if kind == "scale":
        return M.scale(other)
    if kind == "neg":
        return -M
    raise ValueError(f"unknown matrix operation {kind!r}")


def commutator(M: Mat, N: Mat) -> Mat:
    """``[M, N] = MN - NM``."""
    _same(M, N)
    return M @ N - N @ M


def trace_pairing(M: Mat, N: Mat):
    """``tr(MN)`` as a raw field value."""
    _same(M, N)
    F = M.field
    n = M.n
    return F.sum(F.dot(M.rows[i], [N.rows[k][i] for k in range(n)]) for i in range(n))


def trace_form(M: Mat, N: Mat) -> Scalar:
    """``tr(MN)``: symmetric and nondegenerate."""
    return Scalar(M.field, trace_pairing(M, N))


def kernel(M: Mat) -> list[Vector]:
    reduced, pivots = rref(M.field, M.rows, M.n)
    return _kernel_from_rref(M.field, reduced, pivots, M.n)


def solve_linear(columns: Sequence[Mat], target: Mat):
    """Coefficients ``c`` with ``sum c_i columns[i] == target``, or ``None``."""
    F = target.field
    for c in columns:
        _same(c, target)
    flats = [c.flat() for c in columns]
    rhs = target.flat()
    if not flats:
        return [] if target.is_zero() else None
    rows = [[f[r] for f in flats] for r in range(len(rhs))]
    return _solve_rows(F, rows, rhs, len(flats))


def inverse(P: Mat) -> Mat:
    F, n = P.field, P.n
    aug = [list(r) + list(unit_vector(F, n, i + 1)) for i, r in enumerate(P.rows)]
    reduced, pivots = rref(F, aug, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is not invertible")
    return Mat._raw(F, [row[n:] for row in reduced])


def conjugate(P: Mat, M: Mat) -> Mat:
    """``P^{-1} M P``."""
    _same(P, M)
    return inverse(P) @ M @ P


def is_invertible(P: Mat) -> bool:
    return P.rank() == P.n


# -- polynomials attached to a matrix ------------------------------------------------


def char_poly(M: Mat) -> Poly:
    """``det(tI - M)`` by Laplace expansion over subsets of columns.

    The expansion runs in ``O(n^2 2^n)`` polynomial products, which is exact
    and cheap for the small dimensions handled here.
    """
    F, n = M.field, M.n

    def entry(i, j):
        c = F.neg(M.rows[i][j])
        return Poly(F, [c, F.one] if i == j else [c])

    dets = {0: Poly(F, [F.one])}
    for size in range(1, n + 1):
        row = size - 1
        for cols in itertools.combinations(range(n), size):
            mask = sum(1 << c for c in cols)
            acc = Poly(F, [])
            for pos, c in enumerate(cols):
                minor = dets[mask & ~(1 << c)]
                term = entry(row, c) * minor
                acc = acc - term if (row + pos) % 2 else acc + term
            dets[mask] = acc
        for m in [m for m in dets if bin(m).count("1") == size - 1]:
            del dets[m]
    return dets[(1 << n) - 1]


def _first_dependency(field: Field, vectors_gen, limit: int) -> Poly:
    """Monic poly from the first linear dependency in a Krylov-type sequence."""
    seq = []
    for k in range(limit + 1):
        v = next(vectors_gen)
        if seq:
            rows = [[s[r] for s in seq] for r in range(len(v))]
            coeffs = _solve_rows(field, rows, v, len(seq))
            if coeffs is not None:
                return Poly(field, [field.neg(c) for c in coeffs] + [field.one])
        seq.append(v)
    raise AssertionError("no dependency found")  # pragma: no cover


def min_poly(M: Mat) -> Poly:
    """Monic generator of ``{p : p(M) = 0}``."""
    def powers():
        P = Mat.identity(M.field, M.n)
        while True:
            yield P.flat()
            P = P @ M
    return _first_dependency(M.field, powers(), M.n)


def local_min_poly(M: Mat, x: Sequence) -> Poly:
    """Monic ``p_x`` of least degree with ``p_x(M) x = 0``."""
    if all(v == 0 for v in x):
        raise ValueError("local minimal polynomial of the zero vector")
    x = tuple(x)

    def krylov():
        v = x
        while True:
            yield v
            v = M.apply(v)
    return _first_dependency(M.field, krylov(), M.n)


def is_cyclic(M: Mat) -> bool:
    return min_poly(M).degree == M.n


def order(M: Mat, x: Sequence) -> int:
    """Rank of the Krylov sequence ``x, Mx, M^2x, ...`` (0 for ``x = 0``)."""
    if all(v == 0 for v in x):
        return 0
    return local_min_poly(M, x).degree


# -- ad_M, centralizers and commutator equations --------------------------------------


def ad_rows(M: Mat) -> list[list]:
    """Matrix of ``X -> MX - XM`` on row-major ``vec(X)``."""
    F, n = M.field, M.n
    N2 = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [F.zero] * N2
            for k in range(n):
                a = M.rows[i][k]
                if a != 0:
                    row[k * n + j] = F.add(row[k * n + j], a)
                b = M.rows[k][j]
                if b != 0:
                    row[i * n + k] = F.sub(row[i * n + k], b)
            rows.append(row)
    return rows


def ad_system(M: Mat, A: Mat) -> tuple[Mat | None, list[Mat]]:
    """Solve ``[M, X] = A`` and compute ``C(M)`` from one elimination.

    Returns ``(X, basis)`` where ``X`` is the solution with free variables set
    to zero (``None`` when ``A`` is not in the image of ``ad_M``) and ``basis``
    spans the centralizer of ``M``.
    """
    _same(M, A)
    F, n = M.field, M.n
    N2 = n * n
    aug = [r + [a] for r, a in zip(ad_rows(M), A.flat())]
    reduced, pivots = rref(F, aug, N2 + 1)
    inconsistent = bool(pivots) and pivots[-1] == N2
    if inconsistent:
        reduced, pivots = reduced[:-1], pivots[:-1]
        X = None
    else:
        x = [F.zero] * N2
        for row, c in zip(reduced, pivots):
            x[c] = row[N2]
        X = Mat.from_flat(F, n, x)
    basis = [Mat.from_flat(F, n, v) for v in _kernel_from_rref(F, reduced, pivots, N2)]
    return X, basis


def centralizer_basis(M: Mat) -> list[Mat]:
    F, n = M.field, M.n
    reduced, pivots = rref(F, ad_rows(M), n * n)
    return [Mat.from_flat(F, n, v) for v in _kernel_from_rref(F, reduced, pivots, n * n)]


def solve_commutator_equation(M: Mat, A: Mat) -> Mat | None:
    """Some ``X`` with ``[M, X] = A`` (free unknowns zero, row-major), else ``None``."""
    return ad_system(M, A)[0]


def in_image_ad(M: Mat, N: Mat) -> bool:
    """``N`` lies in the range of ``ad_M``, i.e. is orthogonal to ``C(M)``."""
    _same(M, N)
    return all(trace_pairing(C, N) == 0 for C in centralizer_basis(M))


def power_trace_criterion(M: Mat, N: Mat) -> bool:
    """``tr(M^k N) = 0`` for ``k = 0..n-1``.

    Characterises the range of ``ad_M`` when ``M`` is cyclic; for any ``M`` it
    is a necessary condition.
    """
    _same(M, N)
    P = Mat.identity(M.field, M.n)
    for _ in range(M.n):
        if trace_pairing(P, N) != 0:
            return False
        P = P @ M
    return True


# -- Hessenberg structure --------------------------------------------------------------


@dataclass(frozen=True)
class HessenbergProfile:
    """Hessenberg flag and the 1-based subdiagonal support ``{j : a_{j+1,j} != 0}``."""

    is_hessenberg: bool
    support: frozenset


def hessenberg_profile(M: Mat) -> HessenbergProfile:
    n = M.n
    flag = all(M.rows[i][j] == 0 for i in range(n) for j in range(n) if i > j + 1)
    support = frozenset(j + 1 for j in range(n - 1) if M.rows[j + 1][j] != 0)
    return HessenbergProfile(flag, support)


def hessenberg_in_image_Jn(A: Mat) -> bool:
    """For Hessenberg ``A``: ``A`` is in the range of ``ad_{J_n}`` iff its trace
    and its subdiagonal sum both vanish."""
    if not hessenberg_profile(A).is_hessenberg:
        raise ValueError("matrix is not Hessenberg")
    F = A.field
    sub = F.sum(A.rows[k + 1][k] for k in range(A.n - 1))
    return A.trace() == 0 and sub == 0


def hessenberg_basis_from(A: Mat, seeds: Sequence[Sequence]) -> Mat:
    """Extend ``seeds`` to a basis: next vector is ``A`` times the previous one
    while that stays independent, otherwise the first ``e_i`` outside the span.

    For a Krylov chain ``x, Ax, A^2x, ...`` as seeds, ``P^{-1} A P`` is
    Hessenberg and its subdiagonal is nonzero along the chain.
    """
    F, n = A.field, A.n
    cols = [tuple(s) for s in seeds]
    if vectors_rank(F, cols) != len(cols):
        raise ValueError("seed vectors are linearly dependent")
    if not cols:
        cols = [unit_vector(F, n, 1)]
    while len(cols) < n:
        nxt = A.apply(cols[-1])
        if vectors_rank(F, cols + [nxt]) > len(cols):
            cols.append(nxt)
            continue
        for i in range(1, n + 1):
            e = unit_vector(F, n, i)
            if vectors_rank(F, cols + [e]) > len(cols):
                cols.append(e)
                break
    return Mat.from_columns(F, cols)


def _is_eigenvector(M: Mat, x: Sequence) -> bool:
    return vectors_rank(M.field, [x, M.apply(x)]) < 2


def two_noneigenvectors(M: Mat):
    """Two independent vectors ``x`` with ``(x, Mx)`` independent, or ``None``
    when ``M`` is scalar. Needs at least three field elements."""
    F, n = M.field, M.n
    if F.is_finite and F.q < 3:
        raise ValueError("need a field with at least 3 elements")
    if M.is_scalar():
        return None
    cands = [unit_vector(F, n, i) for i in range(1, n + 1)]
    for i in range(n):
        for j in range(i + 1, n):
            cands.append(tuple(F.add(a, b) for a, b in zip(cands[i], cands[j])))
    found = []
    for x in cands:
        if not _is_eigenvector(M, x) and vectors_rank(F, found + [x]) == len(found) + 1:
            found.append(x)
            if len(found) == 2:
                return tuple(found)
    # only one so far: scan lines of span(x, Mx)
    x = found[0]
    Mx = M.apply(x)
    for c in F.sample_values() if not F.is_finite else F.elements():
        y = tuple(F.add(a, F.mul(c, b)) for a, b in zip(x, Mx))
        if not _is_eigenvector(M, y) and vectors_rank(F, [x, y]) == 2:
            return x, y
    if not _is_eigenvector(M, Mx):
        return x, Mx
    raise AssertionError("no second non-eigenvector found")  # pragma: no cover


def random_invertible(field: Field, n: int, rng) -> Mat:
    while True:
        P = Mat.random(field, n, rng)
        if is_invertible(P):
            return P
