"""Search-based strategies: unconstrained commutators, randomized witness
search inside ``H``, and exhaustive enumeration of ``H``."""

from __future__ import annotations

import itertools
import math
import random

from ..exact_matrix import (
    Mat,
    Poly,
    ad_rows,
    ad_system,
    companion,
    hessenberg_basis_from,
    hessenberg_profile,
    inverse,
    jordan,
    random_invertible,
    rref,
    vectors_rank,
)
from ..hyperplane import Hyperplane
from .types import CYCLIC_SEARCH, EXHAUSTIVE, Decomposition
from .witnesses import (
    Budget,
    construct_hessenberg_witness,
    construct_strict_upper_witness,
    extreme_entry,
    power_traces_vanish,
    random_triangularizing_basis,
    split_roots,
    witness_attempt,
)

# exhaustive fallback only when |H| = q^(n^2 - 1) is at most this
EXHAUSTIVE_LIMIT = 10 ** 6


class SearchExhausted(RuntimeError):
    """The candidate budget ran out before a pair was found."""


def _random_vector(field, n, rng):
    while True:
        v = tuple(field.random_element(rng) for _ in range(n))
        if any(e != 0 for e in v):
            return v


def _zero_subdiagonal_scaling(Ah: Mat, rng) -> Mat | None:
    """Diagonal ``D`` such that ``D^{-1} Ah D`` has subdiagonal sum zero.

    Needs at least two nonzero subdiagonal entries; ``None`` otherwise.
    """
    F, n = Ah.field, Ah.n
    support = sorted(hessenberg_profile(Ah).support)
    if len(support) < 2:
        return None
    for _ in range(64):
        r = {k: F.random_element(rng, nonzero=True) for k in range(1, n)}
        *head, last = support
        s = F.sum(F.mul(Ah.rows[k][k - 1], r[k]) for k in head)
        if s == 0:
            continue
        r[last] = F.neg(F.div(s, Ah.rows[last][last - 1]))
        d = [F.one] * n
        for k in range(n - 1, 0, -1):
            d[k - 1] = F.mul(r[k], d[k])
        return Mat.diag(F, d)
    return None


def commutator_pair(A: Mat, budget: Budget, rng: random.Random):
    """Some ``(X, Y)`` with ``[X, Y] = A`` for trace-zero ``A`` (no hyperplane).

    Uses ``J_n`` as witness after bringing ``A`` to triangular form, or to a
    Hessenberg form with vanishing subdiagonal sum; falls back to random
    witnesses. ``None`` if the budget runs out.
    """
    F, n = A.field, A.n
    if A.is_zero():
        Z = Mat.zeros(F, n)
        return Z, Z
    J = jordan(F, n)
    roots = split_roots(A)
    if roots is not None:
        if not budget.spend():
            return None
        P = random_triangularizing_basis(A, roots, rng)
        Pinv = inverse(P)
        X, _ = ad_system(J, Pinv @ A @ P)
        if X is not None:
            return P @ J @ Pinv, P @ X @ Pinv
    for _ in range(32):
        x = _random_vector(F, n, rng)
        P = hessenberg_basis_from(A, [x])
        Pinv = inverse(P)
        Ah = Pinv @ A @ P
        D = _zero_subdiagonal_scaling(Ah, rng)
        if D is None:
            continue
        if not budget.spend():
            return None
        P = P @ D
        Pinv = inverse(P)
        X, _ = ad_system(J, Pinv @ A @ P)
        if X is not None:
            return P @ J @ Pinv, P @ X @ Pinv
    while budget.spend():
        M = Mat.random(F, n, rng)
        if not power_traces_vanish(M, A):
            continue
        X, _ = ad_system(M, A)
        if X is not None:
            return M, X
    return None


# -- randomized witness search inside H ------------------------------------------


def _candidate(kind: int, A: Mat, H: Hyperplane, rng, roots) -> Mat | None:
    F, n = A.field, A.n
    if kind == 0:
        P = random_invertible(F, n, rng)
        return H.project(P @ jordan(F, n) @ inverse(P))
    if kind == 1:
        coeffs = [F.random_element(rng) for _ in range(n)] + [F.one]
        P = random_invertible(F, n, rng)
        return H.project(P @ companion(Poly(F, coeffs)) @ inverse(P))
    if kind == 2:
        return H.random_element(rng)
    # explicit strictly-upper or Hessenberg witness in a random adapted basis
    if roots is not None and rng.random() < 0.5:
        P = random_triangularizing_basis(A, roots, rng)
        Pinv = inverse(P)
        Bp = Pinv @ H.normal @ P
        ll = extreme_entry(Bp)
        if ll is not None and ll[0] - ll[1] > 1:
            x = [F.random_element(rng, nonzero=True) for _ in range(n - 1)]
            M = construct_strict_upper_witness(Pinv @ A @ P, Hyperplane(Bp), x)
            return P @ M @ Pinv
        return None
    P = hessenberg_basis_from(A, [_random_vector(F, n, rng)])
    Ah = inverse(P) @ A @ P
    if Ah.rows[1][0] == 0:
        return None
    P = P @ Mat.diag(F, [F.one, Ah.rows[1][0]] + [F.one] * (n - 2))
    Pinv = inverse(P)
    Ah, Bp = Pinv @ A @ P, Pinv @ H.normal @ P
    ll = extreme_entry(Bp)
    if ll is None or ll[0] - ll[1] <= 1:
        return None
    x = [F.random_element(rng, nonzero=True) for _ in range(n - 2)]
    M = construct_hessenberg_witness(Ah, Hyperplane(Bp), None, x)
    return None if M is None else P @ M @ Pinv


def cyclic_search(A: Mat, H: Hyperplane, budget: Budget | int, seed=0, rng=None):
    """Randomized witness search; first verified pair within the budget, else ``None``.

    Candidates cycle through conjugates of ``J_n``, conjugated companion
    matrices, uniform elements of ``H`` and the explicit witness constructions
    in random adapted bases, each projected into ``H``. A candidate whose
    centralizer lies inside ``H`` still succeeds if its canonical solution
    already does.
    """
    if isinstance(budget, int):
        budget = Budget(budget)
    rng = rng or random.Random(seed)
    roots = split_roots(A) if A.field.is_finite else None
    for kind in itertools.cycle(range(4)):
        if budget.left <= 0:
            return None
        M = _candidate(kind, A, H, rng, roots)
        if M is None:
            continue
        if not budget.spend():
            return None
        if not power_traces_vanish(M, A):
            continue
        pair, reason, X = witness_attempt(A, H, M)
        if pair is not None:
            return Decomposition(pair[0], pair[1], CYCLIC_SEARCH, A, H)
        if reason == "centralizer_in_H" and H.contains(X):
            return Decomposition(M, X, CYCLIC_SEARCH, A, H)
    return None  # pragma: no cover


# -- exhaustive enumeration of H -----------------------------------------------------


def joint_solve(M: Mat, A: Mat, H: Hyperplane) -> Mat | None:
    """``X`` in ``H`` with ``[M, X] = A`` (one linear system), or ``None``."""
    F, n = A.field, A.n
    N2 = n * n
    B = H.normal
    rows = [r + [a] for r, a in zip(ad_rows(M), A.flat())]
    rows.append([B.rows[j][i] for i in range(n) for j in range(n)] + [F.zero])
    reduced, pivots = rref(F, rows, N2 + 1)
    if pivots and pivots[-1] == N2:
        return None
    x = [F.zero] * N2
    for row, c in zip(reduced, pivots):
        x[c] = row[N2]
    return Mat.from_flat(F, n, x)


def hyperplane_size(H: Hyperplane) -> int | None:
    F = H.field
    return F.q ** (H.n ** 2 - 1) if F.is_finite else None


def coordinate_order(size: int, rng: random.Random):
    """A seeded bijection ``range(size) -> range(size)`` (affine map mod size)."""
    if size <= 1:
        return range(size)
    while True:
        a = rng.randrange(1, size)
        if math.gcd(a, size) == 1:
            break
    b = rng.randrange(size)
    return ((a * i + b) % size for i in range(size))


def exhaustive_search(A: Mat, H: Hyperplane, budget: Budget, rng: random.Random):
    """Try every element of ``H`` as first member.

    Returns ``(decomposition, complete)``: ``complete`` is true when the whole
    hyperplane was scanned, in which case ``None`` proves there is no pair.
    """
    size = hyperplane_size(H)
    if size is None or size > EXHAUSTIVE_LIMIT:
        return None, False
    F = H.field
    basis = [b.flat() for b in H.basis()]
    q = F.q
    elems = F.elements()
    for idx in coordinate_order(size, rng):
        if not budget.spend():
            return None, False
        flat = [F.zero] * (H.n ** 2)
        for b in basis:
            idx, digit = divmod(idx, q)
            if digit:
                flat = F.axpy(flat, elems[digit], b)
        M = Mat.from_flat(F, H.n, flat)
        if not power_traces_vanish(M, A):
            continue
        X = joint_solve(M, A, H)
        if X is not None:
            return Decomposition(M, X, EXHAUSTIVE, A, H), True
    return None, True


def span_independent(field, mats) -> bool:
    return vectors_rank(field, [m.flat() for m in mats]) == len(mats)
