"""The decomposition pipeline: route an instance ``(A, H)`` through the
structured strategies, then randomized and exhaustive search."""

from __future__ import annotations

import random

from ..exact_matrix import (
    Mat,
    commutator,
    hessenberg_basis_from,
    hessenberg_profile,
    order,
    solve_linear,
    vectors_rank,
)
from ..hyperplane import Hyperplane, scalar_adjust_pair
from .lld import triple_dependent
from .search import commutator_pair, cyclic_search, exhaustive_search
from .special3 import special3_decompose, special3_eigenvalue
from .types import (
    DECOMPOSED,
    EASY_SHIFT,
    EXHAUSTED,
    HESSENBERG,
    LLD_SPAN,
    N2_BRACKET_LINE,
    NOT_REPRESENTABLE,
    TRIANGULAR,
    ZERO,
    Decomposition,
    N2Report,
    SolveOutcome,
)
from .witnesses import (
    Budget,
    construct_hessenberg_witness,
    construct_strict_upper_witness,
    conjugated,
    extreme_entry,
    projective_points,
    pull_back,
    random_triangularizing_basis,
    split_roots,
    witness_attempt,
    x_vectors,
)

DEFAULT_BUDGET = 100_000
# flags / starting vectors tried by the structured strategies
TRIANGULAR_BASES = 8
HESSENBERG_POINTS = 48
# parameter vectors swept per adapted basis
X_PER_BASIS = 256


class ExhaustedError(RuntimeError):
    """No pair was found within the budget."""


def _check_instance(A: Mat, H: Hyperplane) -> None:
    A._check(H.normal)
    if A.trace() != 0:
        raise ValueError("target must have trace zero")


def _finish(dec: Decomposition, budget: Budget, seed) -> Decomposition:
    return Decomposition(dec.A1, dec.A2, dec.strategy, dec.target, dec.hyperplane,
                         attempts=budget.used, seed=seed)


# -- n = 2 -----------------------------------------------------------------------------


def analyze_n2(H: Hyperplane) -> N2Report:
    """Structure of ``[H, H]`` for 2x2 matrices.

    With the identity outside ``H`` every trace-zero matrix is a commutator of
    two elements of ``H`` (case ``"b"``). Otherwise, for a basis ``(I, M, N)``
    of ``H`` all brackets are multiples of ``[M, N]`` (case ``"a"``).
    """
    if H.n != 2:
        raise ValueError("analyze_n2 needs 2x2 matrices")
    if not H.contains_identity:
        return N2Report("b", False)
    F = H.field
    I = Mat.identity(F, 2)
    basis = [I]
    for E in H.basis():
        if vectors_rank(F, [b.flat() for b in basis + [E]]) == len(basis) + 1:
            basis.append(E)
        if len(basis) == 3:
            break
    generator = commutator(basis[1], basis[2])
    return N2Report("a", True, generator, tuple(basis))


def _decompose_n2(A: Mat, H: Hyperplane, budget: Budget, rng, seed, log) -> SolveOutcome:
    report = analyze_n2(H)
    if report.case == "b":
        pair = commutator_pair(A, budget, rng)
        if pair is None:
            return SolveOutcome(EXHAUSTED, attempts=budget.used, seed=seed, log=log)
        A1, A2 = scalar_adjust_pair(H, *pair)
        dec = Decomposition(A1, A2, EASY_SHIFT, A, H)
        return SolveOutcome(DECOMPOSED, _finish(dec, budget, seed), attempts=budget.used,
                            seed=seed, log=log)
    coeffs = solve_linear([report.generator], A)
    if coeffs is None:
        log.append("target is off the bracket line of H")
        return SolveOutcome(NOT_REPRESENTABLE, obstruction=report.generator,
                            attempts=budget.used, seed=seed, log=log)
    M, N = report.basis[1], report.basis[2]
    dec = Decomposition(M.scale(coeffs[0]), N, N2_BRACKET_LINE, A, H)
    return SolveOutcome(DECOMPOSED, _finish(dec, budget, seed), attempts=budget.used,
                        seed=seed, log=log)


# -- structured witnesses --------------------------------------------------------------


def _sweep_x(Ap: Mat, Hp: Hyperplane, build, m: int, budget: Budget, rng):
    """Feed parameter vectors to ``build`` until a witness lands; pair or ``None``."""
    for x in x_vectors(Ap.field, m, rng, X_PER_BASIS):
        M = build(x)
        if M is None:
            continue
        if not budget.spend():
            return None
        pair, _, _ = witness_attempt(Ap, Hp, M)
        if pair is not None:
            return pair
    return None


def triangular_witness(A: Mat, H: Hyperplane, budget: Budget, rng) -> Decomposition | None:
    """Strictly-upper witnesses in random triangularizing bases of ``A``."""
    roots = split_roots(A)
    if roots is None:
        return None
    n = A.n
    for _ in range(TRIANGULAR_BASES):
        if budget.left <= 0:
            return None
        P = random_triangularizing_basis(A, roots, rng)
        Ap, Hp, Pinv = conjugated(P, A, H)
        ll = extreme_entry(Hp.normal)
        if ll[0] - ll[1] <= 1:
            continue
        pair = _sweep_x(Ap, Hp, lambda x: construct_strict_upper_witness(Ap, Hp, x),
                        n - 1, budget, rng)
        if pair is not None:
            A1, A2 = pull_back(P, Pinv, pair)
            return Decomposition(A1, A2, TRIANGULAR, A, H)
    return None


def hessenberg_witness(A: Mat, H: Hyperplane, budget: Budget, rng) -> Decomposition | None:
    """Hessenberg witnesses in bases ``x, Ax, A^2x, ...`` for order-3 vectors
    ``x`` with ``Bx`` outside ``span(x, Ax)``."""
    F, n = A.field, A.n
    B = H.normal
    tried = 0
    for x in projective_points(F, n, rng):
        if tried >= HESSENBERG_POINTS or budget.left <= 0:
            return None
        if order(A, x) < 3:
            continue
        if vectors_rank(F, [x, A.apply(x), B.apply(x)]) < 3:
            continue
        tried += 1
        P = hessenberg_basis_from(A, [x])
        Ap, Hp, Pinv = conjugated(P, A, H)
        a21 = Ap.rows[1][0]
        if a21 != F.one:
            P = P @ Mat.diag(F, [F.one, a21] + [F.one] * (n - 2))
            Ap, Hp, Pinv = conjugated(P, A, H)
        if not hessenberg_profile(Ap).is_hessenberg:
            continue
        ll = extreme_entry(Hp.normal)
        if ll[0] - ll[1] <= 1:
            continue
        pair = _sweep_x(Ap, Hp, lambda v: construct_hessenberg_witness(Ap, Hp, None, v),
                        n - 2, budget, rng)
        if pair is not None:
            A1, A2 = pull_back(P, Pinv, pair)
            return Decomposition(A1, A2, HESSENBERG, A, H)
    return None


# -- the pipeline ----------------------------------------------------------------------


def _trace_zero_thompson(budget: Budget, rng):
    """Callable ``A -> trace-zero pair with commutator A`` (or ``None``)."""

    def solve(A: Mat):
        H0 = Hyperplane(Mat.identity(A.field, A.n))
        dec = _run(A, H0, budget, rng, None, [], allow_span=False).decomposition
        return None if dec is None else dec.pair

    return solve


def _run(A: Mat, H: Hyperplane, budget: Budget, rng, seed, log, allow_span=True) -> SolveOutcome:
    F, n = A.field, A.n

    def done(dec):
        return SolveOutcome(DECOMPOSED, _finish(dec, budget, seed), attempts=budget.used,
                            seed=seed, log=log)

    if A.is_zero():
        Z = Mat.zeros(F, n)
        return done(Decomposition(Z, Z, ZERO, A, H))
    if n == 2:
        return _decompose_n2(A, H, budget, rng, seed, log)
    if n == 1:  # pragma: no cover - trace zero forces A = 0
        raise ValueError("1x1 targets of trace zero vanish")

    if not H.contains_identity:
        pair = commutator_pair(A, budget, rng)
        if pair is not None:
            A1, A2 = scalar_adjust_pair(H, *pair)
            return done(Decomposition(A1, A2, EASY_SHIFT, A, H))
        log.append("easy_shift: budget exhausted")
        return SolveOutcome(EXHAUSTED, attempts=budget.used, seed=seed, log=log)

    small = F.is_finite and F.q <= 3
    if not small:
        if special3_eigenvalue(A) is not None:
            thompson = _trace_zero_thompson(budget, rng) if allow_span else None
            dec = special3_decompose(A, H, budget, rng, thompson)
            if dec is not None:
                return done(dec)
            log.append("special3: no candidate landed")
        if allow_span and triple_dependent(A, H.normal):
            pair = _trace_zero_thompson(budget, rng)(A)
            if pair is not None:
                return done(Decomposition(pair[0], pair[1], LLD_SPAN, A, H))
            log.append("lld_span: no trace-zero pair found")
        for strategy in (triangular_witness, hessenberg_witness):
            dec = strategy(A, H, budget, rng)
            if dec is not None:
                return done(dec)
            log.append(f"{strategy.__name__}: no witness landed")
    else:
        log.append(f"field of size {F.q} with identity in H: structured witnesses skipped")

    share = budget.left if not F.is_finite else max(budget.left // 4, min(budget.left, 2000))
    dec = cyclic_search(A, H, Budget(share), rng=rng)
    budget.spend(min(share, budget.left))
    if dec is not None:
        return done(dec)
    log.append("cyclic_search: budget spent")

    dec, complete = exhaustive_search(A, H, budget, rng)
    if dec is not None:
        return done(dec)
    if complete:
        log.append("exhaustive: no element of H works")
        return SolveOutcome(NOT_REPRESENTABLE, attempts=budget.used, seed=seed, log=log)
    log.append("exhaustive: unavailable or budget spent")
    return SolveOutcome(EXHAUSTED, attempts=budget.used, seed=seed, log=log)


def decompose(A: Mat, H: Hyperplane, budget: int = DEFAULT_BUDGET, seed: int = 0) -> SolveOutcome:
    """Find ``(A1, A2)`` in ``H^2`` with ``[A1, A2] = A``.

    Deterministic in ``(A, H, budget, seed)``. ``budget`` bounds the number of
    candidate witnesses tried across all strategies.
    """
    _check_instance(A, H)
    return _run(A, H, Budget(budget), random.Random(seed), seed, [])


def thompson_decompose(A: Mat, budget: int = DEFAULT_BUDGET, seed: int = 0) -> Decomposition:
    """Trace-zero ``(A1, A2)`` with ``[A1, A2] = A``."""
    H = Hyperplane(Mat.identity(A.field, A.n))
    _check_instance(A, H)
    out = _run(A, H, Budget(budget), random.Random(seed), seed, [], allow_span=False)
    if not out.ok:
        raise ExhaustedError("; ".join(out.log) or out.status)
    return out.decomposition
