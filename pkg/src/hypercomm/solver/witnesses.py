"""Cyclic witnesses: matrices ``M`` in ``H`` with ``A`` in the range of ``ad_M``.

Once such an ``M`` is found and some element of its centralizer lies outside
``H``, any solution ``X`` of ``[M, X] = A`` can be slid along that element
into ``H`` without changing the commutator.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from ..exact_matrix import (
    Mat,
    Poly,
    ad_system,
    char_poly,
    hessenberg_profile,
    inverse,
    rref,
    vectors_rank,
    _kernel_from_rref,
)
from ..hyperplane import Hyperplane, land_on
from .types import CYCLIC_SEARCH, Decomposition

# exhaustive sweep of (K*)^m when it has at most this many points
X_SWEEP_LIMIT = 4096


class Budget:
    """Shared counter of candidate witnesses tried."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1) -> bool:
        if self.used + k > self.limit:
            return False
        self.used += k
        return True

    @property
    def left(self) -> int:
        return self.limit - self.used


def witness_attempt(A: Mat, H: Hyperplane, M: Mat):
    """Core of :func:`try_cyclic_witness`.

    Returns ``(pair, reason, X)``: ``pair`` is ``(M, A2)`` on success; on
    failure ``reason`` is ``"not_in_image"`` or ``"centralizer_in_H"`` and
    ``X`` is the canonical solution when one exists.
    """
    X, centralizer = ad_system(M, A)
    if X is None:
        return None, "not_in_image", None
    for C in centralizer:
        if not H.contains(C):
            return (M, land_on(H, X, C)), None, X
    return None, "centralizer_in_H", X


def try_cyclic_witness(A: Mat, H: Hyperplane, M: Mat, obstructions: list | None = None,
                       strategy: str = CYCLIC_SEARCH):
    """Decomposition ``(M, A2)`` from a witness ``M`` in ``H``, or ``None``.

    ``None`` when ``A`` is outside the range of ``ad_M`` or when the whole
    centralizer of ``M`` lies in ``H``; in the latter case ``M`` is appended
    to ``obstructions`` if a list is given.
    """
    if not H.contains(M):
        raise ValueError("witness must lie in the hyperplane")
    pair, reason, _ = witness_attempt(A, H, M)
    if pair is None:
        if reason == "centralizer_in_H" and obstructions is not None:
            obstructions.append(M)
        return None
    return Decomposition(pair[0], pair[1], strategy, A, H)


def power_traces_vanish(M: Mat, A: Mat) -> bool:
    """Cheap necessary test: ``tr(M^k A) = 0`` for ``k = 1..n-1``."""
    F, n = A.field, A.n
    At = [list(c) for c in A.columns()]  # columns of A as rows of A^T
    P = M
    for k in range(1, n):
        if F.sum(F.dot(P.rows[i], At[i]) for i in range(n)) != 0:
            return False
        if k < n - 1:
            P = P @ M
    return True


# -- the two explicit constructions -----------------------------------------------


def extreme_entry(B: Mat) -> tuple[int, int] | None:
    """1-based ``(l, l')`` with ``b_{l,l'} != 0`` and ``l - l'`` maximal.

    Ties go to the smallest ``l'``, then the smallest ``l``. ``None`` for
    ``B = 0``.
    """
    best = None
    n = B.n
    for lp in range(n):
        for l in range(n):
            if B.rows[l][lp] != 0:
                key = (l - lp, -lp, -l)
                if best is None or key > best[0]:
                    best = (key, (l + 1, lp + 1))
    return None if best is None else best[1]


def construct_strict_upper_witness(A: Mat, H: Hyperplane, x: Sequence) -> Mat:
    """``M = sum x_k E_{k,k+1} - beta E_{l',l}`` for upper-triangular ``A``.

    ``beta = (sum b_{k+1,k} x_k) / b_{l,l'}`` puts ``M`` in ``H``; ``M`` is
    nilpotent of rank ``n-1`` and ``tr(A M^k) = 0`` for ``k >= 1``.
    """
    F, n = A.field, A.n
    B = H.normal
    if not A.is_upper_triangular():
        raise ValueError("A must be upper-triangular")
    if A.trace() != 0:
        raise ValueError("A must have trace zero")
    if len(x) != n - 1 or any(v == 0 for v in x):
        raise ValueError(f"need {n - 1} nonzero scalars")
    ll = extreme_entry(B)
    if ll is None or ll[0] - ll[1] <= 1:
        raise ValueError("B is Hessenberg: no entry below the subdiagonal")
    l, lp = ll
    num = F.sum(F.mul(B.rows[k + 1][k], x[k]) for k in range(n - 1))
    beta = F.div(num, B.rows[l - 1][lp - 1])
    rows = [[F.zero] * n for _ in range(n)]
    for k in range(n - 1):
        rows[k][k + 1] = x[k]
    rows[lp - 1][l - 1] = F.sub(rows[lp - 1][l - 1], beta)
    return Mat._raw(F, rows)


def construct_hessenberg_witness(A: Mat, H: Hyperplane, j: int | None, x: Sequence):
    """``M = -alpha E_{1,2} + sum x_k E_{k+1,k+2} + beta E_{l',l}`` for Hessenberg ``A``.

    Requires ``a_{2,1} = 1``. ``alpha = sum a_{k+2,k+1} x_k``; returns ``None``
    when ``alpha = 0``. Otherwise ``tr(MA) = tr(MB) = 0`` and ``M`` is
    nilpotent of rank ``n-1``. ``j`` (1-based row with ``b_{j,1} != 0``) is
    only validated when given.
    """
    F, n = A.field, A.n
    B = H.normal
    if not hessenberg_profile(A).is_hessenberg:
        raise ValueError("A must be Hessenberg")
    if A.rows[1][0] != F.one:
        raise ValueError("normalize A so that a_{2,1} = 1")
    if len(x) != n - 2 or any(v == 0 for v in x):
        raise ValueError(f"need {n - 2} nonzero scalars")
    if j is not None and (j < 3 or B.rows[j - 1][0] == 0):
        raise ValueError("need b_{j,1} != 0 with j >= 3")
    ll = extreme_entry(B)
    if ll is None or ll[0] - ll[1] <= 1:
        raise ValueError("no entry of B below the subdiagonal")
    l, lp = ll
    alpha = F.sum(F.mul(A.rows[k + 2][k + 1], x[k]) for k in range(n - 2))
    if alpha == 0:
        return None
    s = F.sum(F.mul(x[k], B.rows[k + 2][k + 1]) for k in range(n - 2))
    beta = F.div(F.sub(F.mul(alpha, B.rows[1][0]), s), B.rows[l - 1][lp - 1])
    rows = [[F.zero] * n for _ in range(n)]
    rows[0][1] = F.neg(alpha)
    for k in range(n - 2):
        rows[k + 1][k + 2] = x[k]
    rows[lp - 1][l - 1] = F.add(rows[lp - 1][l - 1], beta)
    return Mat._raw(F, rows)


def x_vectors(field, m: int, rng: random.Random, limit: int = X_SWEEP_LIMIT) -> Iterator[tuple]:
    """Nonzero parameter vectors: full sweep of ``(K*)^m`` when small, else samples."""
    if m == 0:
        yield ()
        return
    if field.is_finite and (field.q - 1) ** m <= limit:
        yield from itertools.product(field.nonzero_elements(), repeat=m)
        return
    for _ in range(limit):
        yield tuple(field.random_element(rng, nonzero=True) for _ in range(m))


# -- bases ---------------------------------------------------------------------------


def split_roots(A: Mat) -> list | None:
    """Distinct eigenvalues of ``A`` in the field if its characteristic
    polynomial splits there, else ``None``."""
    p = char_poly(A)
    roots = p.roots()
    deg = 0
    for r in roots:
        lin = Poly(A.field, [A.field.neg(r), A.field.one])
        while p.degree >= 1:
            q, rem = divmod(p, lin)
            if not rem.is_zero():
                break
            p = q
            deg += 1
    return roots if deg == A.n else None


def random_combination(field, basis: Sequence[Sequence], rng) -> tuple:
    n = len(basis[0])
    v = [field.zero] * n
    for b in basis:
        v = field.axpy(v, field.random_element(rng), b)
    return tuple(v)


def random_triangularizing_basis(A: Mat, roots: Sequence, rng) -> Mat:
    """Random ``P`` with ``P^{-1} A P`` upper-triangular (the roots must split ``A``)."""
    F, n = A.field, A.n
    cols: list[tuple] = []
    I = Mat.identity(F, n)
    while len(cols) < n:
        order = list(roots)
        rng.shuffle(order)
        for c in order:
            N = A - I.scale(c)
            # {v : N v in span(cols)} as the v-part of ker [N | -cols]
            rows = [list(N.rows[i]) + [F.neg(col[i]) for col in cols] for i in range(n)]
            reduced, pivots = rref(F, rows, n + len(cols))
            ker = [v[:n] for v in _kernel_from_rref(F, reduced, pivots, n + len(cols))]
            ker = [v for v in ker if any(e != 0 for e in v)]
            if not ker or vectors_rank(F, cols + ker) == len(cols):
                continue
            while True:
                v = random_combination(F, ker, rng)
                if vectors_rank(F, cols + [v]) > len(cols):
                    cols.append(v)
                    break
            break
        else:  # pragma: no cover - impossible when the roots split A
            raise ValueError("characteristic polynomial does not split")
    return Mat.from_columns(F, cols)


def projective_points(field, n: int, rng, limit: int = 100_000) -> Iterator[tuple]:
    """Representatives of the lines of ``K^n`` (first nonzero coordinate 1),
    in a seeded random order; sampled vectors when there are too many."""
    if field.is_finite and field.q ** n <= limit:
        pts = []
        for lead in range(n):
            for tail in itertools.product(field.elements(), repeat=n - lead - 1):
                pts.append((field.zero,) * lead + (field.one,) + tail)
        rng.shuffle(pts)
        yield from pts
        return
    while True:
        v = tuple(field.random_element(rng) for _ in range(n))
        if any(e != 0 for e in v):
            yield v


def conjugated(P: Mat, A: Mat, H: Hyperplane) -> tuple[Mat, Hyperplane, Mat]:
    """``(P^{-1} A P, hyperplane with normal P^{-1} B P, P^{-1})``."""
    Pinv = inverse(P)
    return Pinv @ A @ P, Hyperplane(Pinv @ H.normal @ P), Pinv


def pull_back(P: Mat, Pinv: Mat, pair) -> tuple[Mat, Mat]:
    return P @ pair[0] @ Pinv, P @ pair[1] @ Pinv
