"""Local linear dependence of the triple ``(I, A, B)``."""

from __future__ import annotations

import itertools

from ..exact_matrix import Mat, char_poly, vectors_rank
from ..field import Scalar
from .types import LLDReport

LINEARLY_DEPENDENT = "linearly_dependent_triple"
RANK_ONE = "rank_one_structure"
NONE = "none"

# exhaustive all-x check when q^n is at most this
EXHAUSTIVE_LIMIT = 10 ** 6


def is_lld_exhaustive(A: Mat, B: Mat) -> bool:
    """``rank(x, Ax, Bx) <= 2`` for every ``x`` (finite fields only).

    One representative per line suffices since the rank is scale invariant.
    """
    F, n = A.field, A.n
    elems = F.elements()
    for lead in range(n):
        for tail in itertools.product(elems, repeat=n - lead - 1):
            x = (F.zero,) * lead + (F.one,) + tail
            if vectors_rank(F, [x, A.apply(x), B.apply(x)]) == 3:
                return False
    return True


def _rank_one_shifts(M: Mat) -> list:
    """Scalars ``c`` in the field with ``rank(M - cI) = 1``."""
    I = Mat.identity(M.field, M.n)
    return [c for c in char_poly(M).roots() if (M - I.scale(c)).rank() == 1]


def _range_vector(M: Mat) -> tuple:
    """Spanning vector of the range of a rank-one matrix, first nonzero entry 1."""
    F = M.field
    col = next(c for c in M.columns() if any(v != 0 for v in c))
    lead = next(v for v in col if v != 0)
    return tuple(F.scale_vec(F.inv(lead), col))


def rank_one_structure(A: Mat, B: Mat):
    """``(lam, mu, d)`` with ``im(A - lam I) = im(B - mu I) = span(d)``, or ``None``."""
    I = Mat.identity(A.field, A.n)
    for lam in _rank_one_shifts(A):
        da = _range_vector(A - I.scale(lam))
        for mu in _rank_one_shifts(B):
            if _range_vector(B - I.scale(mu)) == da:
                return lam, mu, da
    return None


def triple_dependent(A: Mat, B: Mat) -> bool:
    I = Mat.identity(A.field, A.n)
    return vectors_rank(A.field, [I.flat(), A.flat(), B.flat()]) < 3


def detect_lld(A: Mat, B: Mat) -> LLDReport:
    """Decide whether ``x, Ax, Bx`` are dependent for every vector ``x``.

    Finite fields with ``q^n <= 10^6`` are checked exhaustively. Otherwise the
    verdict uses the structure result for fields with more than two elements:
    the triple is LLD exactly when ``I, A, B`` are dependent or ``A`` and ``B``
    are rank-one scalar shifts with a common range.
    """
    F, n = A.field, A.n
    if n < 3:
        raise ValueError("LLD detection needs n >= 3")
    A._check(B)
    exhaustive = F.is_finite and F.q ** n <= EXHAUSTIVE_LIMIT
    if triple_dependent(A, B):
        return LLDReport(True, LINEARLY_DEPENDENT, exhaustive=exhaustive)
    structure = rank_one_structure(A, B)
    verdict = is_lld_exhaustive(A, B) if exhaustive else structure is not None
    if structure is None:
        return LLDReport(verdict, NONE, exhaustive=exhaustive)
    lam, mu, d = structure
    return LLDReport(verdict, RANK_ONE, Scalar(F, lam), Scalar(F, mu), d, exhaustive)
