"""The 3x3 targets similar to ``lam*I + E_{2,3}``.

Here the strictly-upper witnesses can all fail, so the search uses
companion-type witnesses instead, in coordinates where the target is in
normal form. Conjugating by invertible elements of the centralizer of the
normal form keeps the target fixed while moving the hyperplane, and
replacing ``B`` by ``B - c*A`` leaves the set of solutions unchanged.
"""

from __future__ import annotations

import random

from ..exact_matrix import (
    Mat,
    centralizer_basis,
    char_poly,
    elementary,
    inverse,
    is_invertible,
    kernel,
    Poly,
    unit_vector,
    vectors_rank,
)
from ..hyperplane import Hyperplane
from .types import SPECIAL3, Decomposition
from .witnesses import Budget, power_traces_vanish, random_combination, witness_attempt

RANDOM_FRAMES = 48


def special3_eigenvalue(A: Mat):
    """``lam`` (raw) when ``A`` is 3x3 and similar to ``lam*I + E_{2,3}``, else ``None``.

    Detected by ``char_poly = (t - lam)^3``, ``rank(A - lam I) = 1`` and
    ``(A - lam I)^2 = 0``.
    """
    if A.n != 3:
        return None
    F = A.field
    cp = char_poly(A)
    roots = cp.roots()
    if len(roots) != 1 or cp != Poly.from_roots(F, [roots[0]] * 3):
        return None
    lam = roots[0]
    N = A - Mat.identity(F, 3).scale(lam)
    if N.rank() != 1 or not (N @ N).is_zero():
        return None
    return lam


def normal_form_basis(A: Mat, lam) -> Mat:
    """``P`` with ``P^{-1} A P = lam*I + E_{2,3}``."""
    F = A.field
    N = A - Mat.identity(F, 3).scale(lam)
    v3 = next(unit_vector(F, 3, i) for i in (1, 2, 3) if any(N.apply(unit_vector(F, 3, i))))
    v2 = N.apply(v3)
    v1 = None
    for i in (1, 2, 3):
        e = unit_vector(F, 3, i)
        if not any(N.apply(e)) and vectors_rank(F, [v2, e]) == 2:
            v1 = e
            break
    if v1 is None:
        v1 = next(k for k in kernel(N) if vectors_rank(F, [v2, k]) == 2)
    return Mat.from_columns(F, [v1, v2, v3])


def companion_witnesses(field):
    """Candidate witnesses for the normal form ``I + E_{2,3}`` (and for
    ``I + E_{3,1}``, its form in the basis ``(e3, e1, e2)``)."""
    F = field
    one, zero = F.one, F.zero
    for alpha in F.sample_values():
        for beta in F.sample_values():
            yield Mat._raw(F, [[zero, one, zero], [alpha, zero, one], [beta, zero, zero]])
    yield Mat._raw(F, [[one, zero, one], [one, one, zero], [zero, one, zero]])
    yield Mat._raw(F, [[zero, zero, zero], [one, zero, zero], [zero, one, F.neg(one)]])


def nilpotent_witnesses(field):
    """Candidate witnesses for ``E_{1,3}`` (the ``lam = 0`` case)."""
    E = lambda i, j: elementary(field, 3, i, j)  # noqa: E731
    yield E(1, 2)
    yield E(2, 3)
    yield E(1, 2) + E(2, 3)
    yield E(1, 2) + E(3, 2)
    yield E(2, 1) + E(2, 3)


def _frames(field, rng):
    """Invertible elements of the centralizer of ``E_{2,3}``: identity first."""
    yield Mat.identity(field, 3)
    basis = centralizer_basis(elementary(field, 3, 2, 3))
    for _ in range(RANDOM_FRAMES):
        while True:
            G = Mat.from_flat(field, 3, random_combination(field, [b.flat() for b in basis], rng))
            if is_invertible(G):
                break
        yield G


def special3_decompose(A: Mat, H: Hyperplane, budget: Budget | None = None,
                       rng: random.Random | None = None, thompson=None):
    """Decompose a target similar to ``lam*I3 + E_{2,3}``; ``None`` if every candidate fails.

    ``thompson`` (optional callable ``A -> pair of trace-zero matrices``)
    handles ``B`` in ``span(I, A)``.
    """
    lam = special3_eigenvalue(A)
    if lam is None:
        raise ValueError("target is not similar to lam*I3 + E_{2,3}")
    if A.trace() != 0:
        raise ValueError("target must have trace zero")
    F = A.field
    budget = budget or Budget(10 ** 6)
    rng = rng or random.Random(0)
    I = Mat.identity(F, 3)
    B = H.normal

    if thompson is not None and vectors_rank(F, [I.flat(), A.flat(), B.flat()]) < 3:
        pair = thompson(A)
        if pair is not None:
            return Decomposition(pair[0], pair[1], SPECIAL3, A, H)

    scale = F.one if lam == 0 else lam
    As = A.scale(F.inv(scale))  # similar to E_{2,3} or I + E_{2,3}
    P0 = normal_form_basis(As, F.one if lam != 0 else F.zero)
    A0 = inverse(P0) @ As @ P0
    swap = Mat.from_columns(F, [unit_vector(F, 3, 2), unit_vector(F, 3, 1), unit_vector(F, 3, 3)])
    cycle = Mat.from_columns(F, [unit_vector(F, 3, 3), unit_vector(F, 3, 1), unit_vector(F, 3, 2)])
    finals = [swap] if lam == 0 else [I, cycle]
    candidates = list(nilpotent_witnesses(F) if lam == 0 else companion_witnesses(F))

    for G in _frames(F, rng):
        for Q in finals:
            P = P0 @ G @ Q
            Pinv = inverse(P)
            Ap = Pinv @ As @ P
            Bp = Pinv @ B @ P
            shifts = [F.zero]
            if lam != 0 and Bp.rows[2][2] != 0:
                # cancel b_{3,3}-type entry as in the normal form (a_{3,3} = 1)
                shifts.append(Bp.rows[2][2])
            for c in shifts:
                Bs = Bp - Ap.scale(c)
                if Bs.is_zero():
                    continue
                Hs = Hyperplane(Bs)
                for M in candidates:
                    if not Hs.contains(M) or not power_traces_vanish(M, Ap):
                        continue
                    if not budget.spend():
                        return None
                    pair, _, _ = witness_attempt(Ap, Hs, M)
                    if pair is None:
                        continue
                    A1 = (P @ pair[0] @ Pinv).scale(scale)
                    A2 = P @ pair[1] @ Pinv
                    return Decomposition(A1, A2, SPECIAL3, A, H)
    return None
