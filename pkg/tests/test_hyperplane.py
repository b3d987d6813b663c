from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from hypercomm.exact_matrix import Mat, commutator, jordan, random_invertible
from hypercomm.field import make_field
from hypercomm.hyperplane import (
    Hyperplane,
    conjugate_hyperplane,
    contains,
    land_on,
    make_hyperplane,
    scalar_adjust_pair,
    shift_normal,
)
from hypercomm.oracle import verify_decomposition
from hypercomm.solver import decompose

from conftest import E, nonzero, trace_zero


def test_make_hyperplane_rejects_zero(gf5):
    with pytest.raises(ValueError):
        make_hyperplane(Mat.zeros(gf5, 3))


def test_identity_membership_flag(gf5, gf9):
    assert not make_hyperplane(Mat.identity(gf5, 3)).contains_identity  # tr I_3 = 3
    assert make_hyperplane(Mat.identity(gf9, 3)).contains_identity  # characteristic 3
    assert make_hyperplane(E(gf5, 3, 1, 2)).contains_identity


def test_contains_examples(gf5):
    H = make_hyperplane(E(gf5, 3, 3, 1))
    assert contains(H, jordan(gf5, 3))
    assert not contains(H, E(gf5, 3, 1, 3))
    assert H.contains(Mat.zeros(gf5, 3))


def test_land_on(gf5):
    H = make_hyperplane(E(gf5, 3, 3, 1))
    X = E(gf5, 3, 1, 3).scale(2) + E(gf5, 3, 2, 2)
    Y = land_on(H, X, E(gf5, 3, 1, 3))
    assert H.contains(Y) and Y == E(gf5, 3, 2, 2)
    assert land_on(H, Y, E(gf5, 3, 1, 3)) == Y
    with pytest.raises(ValueError):
        land_on(H, X, E(gf5, 3, 1, 2))


def test_landing_keeps_commutator(gf5):
    J = jordan(gf5, 3)
    H = make_hyperplane(Mat(gf5, [[1, 0, 0], [2, 3, 0], [1, 1, 1]]))
    X = E(gf5, 3, 2, 3)
    C = J @ J  # commutes with J, lies outside H
    assert not H.contains(C)
    Y = land_on(H, X, C)
    assert H.contains(Y) and commutator(J, Y) == commutator(J, X)


@settings(max_examples=40)
@given(st.integers(0, 2 ** 32))
def test_subspace_closure(seed):
    F = make_field("gf 7")
    rng = random.Random(seed)
    H = make_hyperplane(nonzero(F, 3, rng))
    M, N = H.random_element(rng), H.random_element(rng)
    c = F.random_element(rng)
    assert H.contains(M + N) and H.contains(M.scale(c))
    basis = H.basis()
    assert len(basis) == 8 and all(H.contains(b) for b in basis)
    from hypercomm.exact_matrix import vectors_rank
    assert vectors_rank(F, [b.flat() for b in basis]) == 8


def test_shift_normal_preserves_solutions(gf5):
    rng = random.Random(11)
    for _ in range(20):
        A = trace_zero(gf5, 3, rng)
        if A.is_zero():
            continue
        H = make_hyperplane(nonzero(gf5, 3, rng, trace_free=True))
        lam = gf5.random_element(rng)
        try:
            H2 = shift_normal(H, A, lam)
        except ValueError:
            continue
        for src, dst in ((H, H2), (H2, H)):
            out = decompose(A, src, seed=1)
            assert out.ok
            assert verify_decomposition(A, dst, out.decomposition.pair)


def test_shift_normal_to_zero_rejected(gf5):
    A = E(gf5, 3, 1, 2)
    with pytest.raises(ValueError):
        shift_normal(make_hyperplane(A.scale(2)), A, 2)


def test_conjugate_hyperplane_composition(gf5):
    rng = random.Random(4)
    H = make_hyperplane(nonzero(gf5, 3, rng))
    P, Q = random_invertible(gf5, 3, rng), random_invertible(gf5, 3, rng)
    assert conjugate_hyperplane(conjugate_hyperplane(H, P), Q).same_as(conjugate_hyperplane(H, P @ Q))


def test_same_as_uses_proportionality(gf5):
    B = Mat(gf5, [[1, 2, 0], [0, 0, 3], [4, 0, 1]])
    assert Hyperplane(B).same_as(Hyperplane(B.scale(3)))
    assert not Hyperplane(B).same_as(Hyperplane(B + Mat.identity(gf5, 3)))


def test_scalar_adjust_pair(gf5):
    H = make_hyperplane(Mat.identity(gf5, 3) + E(gf5, 3, 1, 2))
    rng = random.Random(2)
    X, Y = Mat.random(gf5, 3, rng), Mat.random(gf5, 3, rng)
    X2, Y2 = scalar_adjust_pair(H, X, Y)
    assert H.contains(X2) and H.contains(Y2)
    assert commutator(X2, Y2) == commutator(X, Y)
    with pytest.raises(ValueError):
        scalar_adjust_pair(make_hyperplane(E(gf5, 3, 1, 2)), X, Y)
