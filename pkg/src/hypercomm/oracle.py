"""Brute-force ground truth, kept independent of the solver's linear algebra.

Everything here works on raw row lists with its own elimination routine, so
agreement with the solver is a meaningful cross-check.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

from .exact_matrix import Mat
from .field import Field, make_field
from .hyperplane import Hyperplane
from .solver import DEFAULT_BUDGET, Decomposition, decompose
from .textio import format_matrix

EXHAUSTIVE_LIMIT = 10 ** 6
BRACKET_LIMIT = 10 ** 7
SAMPLED_BUDGET = 20_000

ORACLE_EXHAUSTIVE = "oracle_exhaustive"
ORACLE_SAMPLED = "oracle_sampled"


# -- raw helpers ---------------------------------------------------------------------


def _mul(F: Field, X, Y):
    n = len(X)
    return [[F.sum(F.mul(X[i][k], Y[k][j]) for k in range(n)) for j in range(n)] for i in range(n)]


def _bracket(F: Field, X, Y):
    XY, YX = _mul(F, X, Y), _mul(F, Y, X)
    return [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(XY, YX)]


def _pair(F: Field, B, X):
    """``tr(BX)``."""
    n = len(B)
    return F.sum(F.mul(B[i][j], X[j][i]) for i in range(n) for j in range(n))


def _eliminate(F: Field, rows, width):
    """Reduced echelon form of ``rows`` (in place on copies); returns ``(rows, pivots)``."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rank(F: Field, vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    return len(_eliminate(F, vectors, len(vectors[0]))[1])


def _solve_second(F: Field, M, A, B):
    """Some ``X`` with ``MX - XM = A`` and ``tr(BX) = 0``, else ``None``."""
    n = len(M)
    N2 = n * n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [F.zero] * (N2 + 1)
            for k in range(n):
                row[k * n + j] = F.add(row[k * n + j], M[i][k])
                row[i * n + k] = F.sub(row[i * n + k], M[k][j])
            row[N2] = A[i][j]
            rows.append(row)
    rows.append([B[j][i] for i in range(n) for j in range(n)] + [F.zero])
    reduced, pivots = _eliminate(F, rows, N2 + 1)
    if pivots and pivots[-1] == N2:
        return None
    x = [F.zero] * N2
    for row, c in zip(reduced, pivots):
        x[c] = row[N2]
    return [x[i * n:(i + 1) * n] for i in range(n)]


def hyperplane_basis(F: Field, B) -> list:
    """Flat basis of ``{X : tr(BX) = 0}`` built around the first nonzero entry of ``B``."""
    n = len(B)
    N2 = n * n
    # coordinate of X paired with b_{j,i} is x_{i,j}
    weights = [B[k % n][k // n] for k in range(N2)]
    piv = next(k for k, w in enumerate(weights) if w != 0)
    basis = []
    for k in range(N2):
        if k == piv:
            continue
        v = [F.zero] * N2
        v[k] = F.one
        v[piv] = F.neg(F.div(weights[k], weights[piv]))
        basis.append(v)
    return basis


def _affine_order(size: int, rng: random.Random):
    if size <= 1:
        return range(size)
    a = rng.randrange(1, size)
    while math.gcd(a, size) != 1:
        a = rng.randrange(1, size)
    b = rng.randrange(size)
    return ((a * i + b) % size for i in range(size))


# -- verification ----------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_decomposition(A: Mat, H: Hyperplane, pair) -> Verdict:
    """Check ``[A1, A2] = A``, ``tr(B A1) = 0`` and ``tr(B A2) = 0``.

    Diagnostics list every failing equation, the first one first.
    """
    A1, A2 = pair
    F = A.field
    for M in (A1, A2, H.normal):
        if M.field != F or M.n != A.n:
            return Verdict(False, ("shape or field mismatch",))
    problems = []
    C = _bracket(F, A1.rows, A2.rows)
    if [list(r) for r in C] != [list(r) for r in A.rows]:
        bad = next((i + 1, j + 1) for i in range(A.n) for j in range(A.n)
                   if C[i][j] != A.rows[i][j])
        problems.append(f"commutator mismatch: [A1,A2] != A at entry {bad}")
    B = H.normal.rows
    for name, M in (("A1", A1), ("A2", A2)):
        v = _pair(F, B, M.rows)
        if v != 0:
            problems.append(f"membership failure: tr(B*{name}) = {F.format_element(v)} != 0")
    return Verdict(not problems, tuple(problems))


# -- oracle decomposition ----------------------------------------------------------------


def oracle_decompose(A: Mat, H: Hyperplane, mode: str = "exhaustive",
                     budget: int | None = None, seed: int = 0) -> Decomposition | None:
    """First ``A1`` in ``H`` for which ``[A1, X] = A`` has a solution ``X`` in ``H``.

    ``exhaustive`` walks all of ``H`` (needs ``|H| <= 10^6``) in a seeded order;
    ``sampled`` tries ``budget`` seeded random elements of ``H``.
    """
    F, n = A.field, A.n
    if A.trace() != 0:
        raise ValueError("target must have trace zero")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown oracle mode {mode!r}")
    tag = ORACLE_EXHAUSTIVE if mode == "exhaustive" else ORACLE_SAMPLED
    if A.is_zero():
        Z = Mat.zeros(F, n)
        return Decomposition(Z, Z, tag, A, H, seed=seed)
    B = H.normal.rows
    basis = hyperplane_basis(F, B)
    rng = random.Random(seed)
    N2 = n * n

    def attempt(coords):
        flat = [F.zero] * N2
        for c, v in zip(coords, basis):
            if c != 0:
                flat = [F.add(a, F.mul(c, b)) for a, b in zip(flat, v)]
        M = [flat[i * n:(i + 1) * n] for i in range(n)]
        X = _solve_second(F, M, A.rows, B)
        if X is None:
            return None
        return Decomposition(Mat._raw(F, M), Mat._raw(F, X), tag, A, H, seed=seed)

    if mode == "exhaustive":
        if not F.is_finite or F.q ** len(basis) > EXHAUSTIVE_LIMIT:
            raise ValueError("hyperplane too large for exhaustive enumeration")
        q = F.q
        elems = F.elements()
        for tried, idx in enumerate(_affine_order(q ** len(basis), rng)):
            if budget is not None and tried >= budget:
                return None
            coords = []
            for _ in basis:
                idx, d = divmod(idx, q)
                coords.append(elems[d])
            found = attempt(coords)
            if found is not None:
                return found
        return None
    for _ in range(SAMPLED_BUDGET if budget is None else budget):
        found = attempt([F.random_element(rng) for _ in basis])
        if found is not None:
            return found
    return None


# -- n = 2 bracket sets -------------------------------------------------------------------


@dataclass(frozen=True)
class BracketSet:
    """The exact set ``[H, H]`` for 2x2 matrices and its linear span."""

    dimension: int
    size: int
    is_subspace: bool
    contains_identity: bool
    elements: frozenset = dc_field(repr=False)


def enumerate_bracket_set(H: Hyperplane) -> BracketSet:
    """All ``[M, N]`` with ``M, N`` in ``H`` (``n = 2``, finite field)."""
    F = H.field
    if H.n != 2:
        raise ValueError("bracket enumeration is for 2x2 matrices")
    if not F.is_finite:
        raise ValueError("bracket enumeration needs a finite field")
    basis = hyperplane_basis(F, H.normal.rows)
    size = F.q ** len(basis)
    if size * size > BRACKET_LIMIT:
        raise ValueError("hyperplane too large for bracket enumeration")
    elems = []
    for coords in itertools.product(F.elements(), repeat=len(basis)):
        flat = [F.zero] * 4
        for c, v in zip(coords, basis):
            if c != 0:
                flat = [F.add(a, F.mul(c, b)) for a, b in zip(flat, v)]
        elems.append([flat[0:2], flat[2:4]])
    brackets = {(F.zero,) * 4}
    add, sub, mul, neg = F.add, F.sub, F.mul, F.neg
    flats = [tuple(e[0] + e[1]) for e in elems]
    for i, (a, b, c, d) in enumerate(flats):
        for (e, f, g, h) in flats[i + 1:]:
            # [X, Y] for X = (a b; c d), Y = (e f; g h)
            bg, cf = mul(b, g), mul(c, f)
            top = sub(bg, cf)
            right = sub(add(mul(a, f), mul(b, h)), add(mul(e, b), mul(f, d)))
            left = sub(add(mul(c, e), mul(d, g)), add(mul(g, a), mul(h, c)))
            C = (top, right, left, neg(top))
            brackets.add(C)
            brackets.add(tuple(neg(v) for v in C))
    dim = _rank(F, [list(b) for b in brackets if any(v != 0 for v in b)])
    is_subspace = len(brackets) == F.q ** dim
    return BracketSet(dim, len(brackets), is_subspace,
                      _pair(F, H.normal.rows, [[F.one, F.zero], [F.zero, F.one]]) == 0,
                      frozenset(brackets))


# -- sweeps --------------------------------------------------------------------------------


def random_instance(F: Field, n: int, rng: random.Random, force_identity_in_h: bool = False):
    """``(A, B)`` with ``A`` uniform trace-zero and ``B`` uniform nonzero
    (trace-zero too when ``force_identity_in_h``)."""

    def trace_zero():
        flat = [F.random_element(rng) for _ in range(n * n - 1)]
        flat.append(F.neg(F.sum(flat[k * n + k] for k in range(n - 1))))
        return Mat.from_flat(F, n, flat)

    A = trace_zero()
    while True:
        B = trace_zero() if force_identity_in_h else Mat.random(F, n, rng)
        if not B.is_zero():
            return A, B


@dataclass
class SweepReport:
    field: str
    n: int
    count: int
    successes: int
    strategy_histogram: dict
    failures: list
    seed: int
    elapsed_ms: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _sweep_one(args):
    descriptor, n, seed, i, force, budget, mask = args
    F = make_field(descriptor)
    A, B = random_instance(F, n, random.Random(f"{seed}:{i}"), force)
    H = Hyperplane(B)
    out = decompose(A, H, budget=budget, seed=i)
    if out.ok and verify_decomposition(A, H, out.decomposition.pair):
        strategy = out.decomposition.strategy
        if mask is None or strategy in mask:
            return i, strategy, None
        reason = f"strategy {strategy} not in mask"
    else:
        reason = out.status
    exhaustive = F.is_finite and F.q ** (n * n - 1) <= EXHAUSTIVE_LIMIT
    oracle = oracle_decompose(A, H, "exhaustive" if exhaustive else "sampled", seed=i)
    failure = {
        "index": i,
        "field": descriptor,
        "seed": seed,
        "instance_seed": f"{seed}:{i}",
        "A": format_matrix(A),
        "B": format_matrix(B),
        "status": reason,
        "log": out.log,
        "oracle": ("pair_found" if oracle is not None
                   else "no_pair" if exhaustive else "none_sampled"),
    }
    return i, None, failure


def sweep(field: str | Field, n: int, count: int, seed: int = 0, strategies=None,
          force_identity_in_h: bool = False, budget: int = DEFAULT_BUDGET,
          workers: int = 1) -> SweepReport:
    """Run :func:`decompose` on ``count`` seeded random instances.

    Instance ``i`` is drawn from ``random.Random(f"{seed}:{i}")``. A success
    whose strategy is outside ``strategies`` (when given) counts as a failure.
    Failures are cross-checked against :func:`oracle_decompose`. The report
    is identical for any ``workers``.
    """
    descriptor = field.descriptor() if isinstance(field, Field) else make_field(field).descriptor()
    mask = None if strategies is None else frozenset(strategies)
    jobs = [(descriptor, n, seed, i, force_identity_in_h, budget, mask) for i in range(count)]
    start = time.perf_counter()
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs, chunksize=max(1, count // (4 * workers))))
    else:
        results = [_sweep_one(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    histogram: dict = {}
    failures = []
    for _, strategy, failure in results:
        if failure is not None:
            failures.append(failure)
        else:
            histogram[strategy] = histogram.get(strategy, 0) + 1
    elapsed = int((time.perf_counter() - start) * 1000)
    return SweepReport(descriptor, n, count, count - len(failures), dict(sorted(histogram.items())),
                       failures, seed, elapsed)
