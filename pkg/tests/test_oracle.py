from __future__ import annotations

import json

import pytest

from hypercomm.exact_matrix import Mat, commutator, jordan
from hypercomm.field import make_field
from hypercomm.hyperplane import Hyperplane
from hypercomm.oracle import (
    enumerate_bracket_set,
    hyperplane_basis,
    oracle_decompose,
    random_instance,
    sweep,
    verify_decomposition,
)
from hypercomm.solver import decompose

from conftest import E, rng_for


def test_oracle_zero_target(gf5):
    dec = oracle_decompose(Mat.zeros(gf5, 3), Hyperplane(E(gf5, 3, 1, 2)))
    assert dec.A1.is_zero() and dec.A2.is_zero()


def test_oracle_gf4_n3_instances(gf4):
    for i in range(10):
        A, B = random_instance(gf4, 3, rng_for("oracle", i), True)
        H = Hyperplane(B)
        dec = oracle_decompose(A, H, "exhaustive", seed=i)
        assert dec is not None
        assert verify_decomposition(A, H, dec.pair)


def test_oracle_gf2_identity_normal():
    # over GF(2), {I}^perp = sl_2 and [sl_2, sl_2] = {0, I}: E12 is out of reach
    F = make_field("gf 2")
    H = Hyperplane(Mat.identity(F, 2))
    assert oracle_decompose(E(F, 2, 1, 2), H, "exhaustive") is None
    bs = enumerate_bracket_set(H)
    assert bs.dimension == 1 and bs.elements == frozenset({(0, 0, 0, 0), (1, 0, 0, 1)})
    assert decompose(E(F, 2, 1, 2), H).status == "not_representable"


def test_oracle_sampled_mode(gf5):
    A, B = random_instance(gf5, 3, rng_for("sampled", 0), True)
    H = Hyperplane(B)
    dec = oracle_decompose(A, H, "sampled", budget=5000, seed=1)
    assert dec is not None and verify_decomposition(A, H, dec.pair)


def test_oracle_refuses_large_exhaustive():
    F = make_field("gf 7")
    A, B = random_instance(F, 3, rng_for("big", 0), True)
    with pytest.raises(ValueError):
        oracle_decompose(A, Hyperplane(B), "exhaustive")


def test_hyperplane_basis_spans_orthogonal(gf5):
    B = Mat(gf5, [[0, 2, 0], [1, 0, 3], [0, 4, 1]])
    basis = hyperplane_basis(gf5, B.rows)
    H = Hyperplane(B)
    assert len(basis) == 8
    assert all(H.contains(Mat.from_flat(gf5, 3, v)) for v in basis)


def test_verify_examples(gf5):
    H = Hyperplane(E(gf5, 3, 3, 1))
    A = E(gf5, 3, 1, 3)
    assert verify_decomposition(A, H, (E(gf5, 3, 1, 2), E(gf5, 3, 2, 3)))
    I = Mat.identity(gf5, 3)
    v = verify_decomposition(A, H, (I, I))
    assert not v and v.diagnostics[0].startswith("commutator mismatch")
    # correct commutator, but the first member leaves H
    H2 = Hyperplane(E(gf5, 3, 2, 1))
    v = verify_decomposition(A, H2, (E(gf5, 3, 1, 2), E(gf5, 3, 2, 3)))
    assert not v and "tr(B*A1)" in v.diagnostics[0]


def test_bracket_set_examples(gf4, gf5):
    bs = enumerate_bracket_set(Hyperplane(Mat(gf5, [[1, 0], [0, 1]])))
    assert bs.dimension == 3 and bs.size == 125 and bs.is_subspace
    bs = enumerate_bracket_set(Hyperplane(E(gf4, 2, 1, 2)))
    assert bs.dimension == 1 and bs.contains_identity
    bs = enumerate_bracket_set(Hyperplane(E(gf5, 2, 1, 2)))
    assert bs.dimension == 1 and bs.size == 5 and bs.is_subspace


def test_bracket_set_rejects_larger_n(gf5):
    with pytest.raises(ValueError):
        enumerate_bracket_set(Hyperplane(E(gf5, 3, 1, 2)))


def test_sweep_empty():
    rep = sweep("gf 5", 3, 0, seed=1)
    assert rep.count == 0 and rep.successes == 0 and rep.failures == []


def test_sweep_report_keys_and_reproducibility():
    a = sweep("gf5", 3, 20, seed=3, force_identity_in_h=True)
    b = sweep("gf 5", 3, 20, seed=3, force_identity_in_h=True, workers=2)
    doc = json.loads(a.to_json())
    assert set(doc) == {"field", "n", "count", "successes", "strategy_histogram", "failures",
                        "seed", "elapsed_ms"}
    assert a.successes == 20
    for key in ("field", "n", "count", "successes", "strategy_histogram", "failures", "seed"):
        assert getattr(a, key) == getattr(b, key)


def test_sweep_strategy_mask_counts_others_as_failures():
    rep = sweep("gf 5", 3, 10, seed=0, strategies={"exhaustive"}, force_identity_in_h=True)
    assert rep.successes + len(rep.failures) == 10
    for f in rep.failures:
        assert f["status"].startswith("strategy") and f["oracle"] == "pair_found"
        assert {"A", "B", "seed", "field", "index"} <= set(f)


def test_sweep_small_field_failures_are_cross_checked():
    rep = sweep("gf 2", 2, 30, seed=0, force_identity_in_h=True)
    assert rep.successes + len(rep.failures) == 30
    assert rep.failures
    for f in rep.failures:
        assert f["status"] == "not_representable" and f["oracle"] == "no_pair"


def test_oracle_and_solver_agree_on_small_fields():
    for desc in ("gf 2", "gf 3"):
        F = make_field(desc)
        for i in range(15):
            A, B = random_instance(F, 3 if desc == "gf 2" else 2, rng_for("agree", desc, i), True)
            H = Hyperplane(B)
            dec = oracle_decompose(A, H, "exhaustive")
            out = decompose(A, H, seed=i)
            if dec is None:
                assert not out.ok
            if out.ok:
                assert verify_decomposition(A, H, out.decomposition.pair)
