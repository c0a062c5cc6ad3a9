import itertools
import random

import pytest

from diagram_qft import diagram as dg
from diagram_qft import irrep_catalog as ic
from diagram_qft import qft_sov as sov
from diagram_qft.algebra_core import Field

from oracles import brute_force_last_factorization, group_qft_column, symmetric_irreps

F_BIG = Field(10**4, "float")
MP = F_BIG.ctx
TOL = MP.mpf(10) ** -20

SMALL = [("partition", 2), ("brauer", 3), ("walled", (2, 1)), ("walled", (1, 2)), ("walled", (1, 1)), ("symmetric", 3)]


def _basis(family, params):
    wall = tuple(params) if family == "walled" else None
    n = sum(params) if family == "walled" else params
    return dg.enumerate_basis(family, n, wall=wall)


@pytest.mark.parametrize("family,params", SMALL + [("brauer", 4), ("partition", 3), ("walled", (2, 2))])
def test_transversal_order_is_strict(family, params):
    ts = sov.transversals(family, params)
    keys = [t.key() for t in ts]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_transversal_counts():
    expected = {("brauer", 4): 81, ("partition", 3): 36, ("walled", (2, 2)): 20, ("partition", 2): 12}
    assert {key: len(sov.transversals(*key)) for key in expected} == expected


def test_identity_uses_trivial_permutations():
    t, Db, k = sov.last_possible_factorization(dg.identity(3, "brauer"))
    assert t.pi1 == t.pi2 == (1, 2, 3)
    assert not t.zero_case and k == 0
    assert Db == dg.identity(2, "brauer")


@pytest.mark.parametrize("family,params", SMALL + [("brauer", 4), ("walled", (2, 2))])
def test_zero_case_tracks_propagating_number(family, params):
    for D in _basis(family, params):
        t, _, _ = sov.last_possible_factorization(D)
        assert t.zero_case == (dg.propagating_number(D) == 0)


def test_contractions_fall_in_no_propagation_block():
    for D in _basis("brauer", 4):
        if dg.propagating_number(D) == 0:
            t, _, _ = sov.last_possible_factorization(D)
            assert ("e", 3) in t.r2


@pytest.mark.parametrize("family,params", SMALL)
def test_round_trip_and_maximality(family, params):
    fz = sov._factorizer(family, params)
    wall = fz.wall
    for D in _basis(family, params):
        t, Db, k = fz.factor(D)
        res = fz.image(t, Db)
        assert res.diagram == D and res.removed_components == k
        best, _ = brute_force_last_factorization(D, fz.transversals, fz.sub_basis, fz.embed, family, wall)
        assert best.key() == t.key()


def test_isometry_completion_is_an_involution():
    a, b = MP.mpf(3) / 5, MP.mpf(4) / 5
    X = sov.Isometry({"s": {"u": a, "v": b}})
    for start in ("s", "u", "v", "w"):
        once = X.apply({start: MP.mpf(1)})
        twice = X.apply(once)
        assert abs(twice.get(start, 0) - 1) < TOL
        assert all(abs(v) < TOL for k, v in twice.items() if k != start)
    assert X.forward({"s": MP.mpf(1)}) == {"u": a, "v": b}


@pytest.mark.parametrize("family,params", [("brauer", 3), ("partition", 2), ("walled", (1, 1))])
def test_level_operators_square_to_one(family, params):
    level = sov.SovLevel(family, params, F_BIG)
    labels = level.labels() + level.sub.labels()
    rng = random.Random(7)
    for name, V in level.isometries.items():
        vec = {lab: MP.mpf(rng.uniform(-1, 1)) for lab in labels}
        back = V.apply(V.apply(vec))
        assert max(abs(back.get(k, 0) - vec.get(k, 0)) for k in set(vec) | set(back)) < TOL, name


def test_postprocess_inverse_round_trip():
    level = sov.SovLevel("brauer", 3, F_BIG)
    rng = random.Random(3)
    vec = {lab: MP.mpf(rng.uniform(-1, 1)) for lab in level.labels()}
    for t in level.transversals:
        back = level.postprocess(level.postprocess(vec, t, inverse=False), t, inverse=True)
        assert max(abs(back.get(k, 0) - vec[k]) for k in vec) < TOL


def test_skipped_iterations_are_exact():
    level = sov.SovLevel("brauer", 3, F_BIG)
    for D in _basis("brauer", 3):
        fast = level.column(D)
        slow = level.column(D, full_loop=True)
        assert fast == slow


def test_symmetric_matches_group_qft():
    res = sov.sov_qft("symmetric", 3, F_BIG)
    chain = ic.chain_for("symmetric", 3)
    irreps = symmetric_irreps(3, lambda lam: ic.paths_to(chain, lam), MP)
    done = (sov.BOT,) * res.level.depth
    for D, col in zip(res.basis, res.columns):
        perm = next(p for p in itertools.permutations(range(1, 4)) if dg.permutation_diagram(p, "symmetric") == D)
        want = {(done, k): v for k, v in group_qft_column(perm, irreps, MP).items()}
        keys = set(col) | set(want)
        assert max(abs(col.get(k, 0) - want.get(k, 0)) for k in keys) < TOL
    assert res.alg_vs_exact() < TOL


@pytest.mark.parametrize("family,params", [("brauer", 3), ("partition", 2), ("walled", (2, 1))])
def test_transform_is_isometric(family, params):
    res = sov.sov_qft(family, params, F_BIG)
    assert res.unitarity() < TOL


def test_step_residuals_shrink_with_d():
    small = sov.step_residuals("brauer", 3, Field(10**4, "float"))
    large = sov.step_residuals("brauer", 3, Field(4 * 10**4, "float"))
    for kind in small:
        assert large[kind] <= small[kind] + TOL
    assert max(large.values()) < MP.mpf(10) ** -3


def test_partition_steps_bounded():
    res = sov.step_residuals("partition", 2, F_BIG)
    assert set(res) <= {"E", "F1", "F2", "F3", "F4", "G1", "G2"}
    assert max(res.values()) < MP.mpf(1) / 10


def test_embedding_defect_decays():
    vals = [sov.embedding_defect("brauer", 3, Field(d, "float")) for d in (10**4, 4 * 10**4)]
    assert vals[1] < vals[0] < MP.mpf(10) ** -3


def test_sov_error_cases():
    with pytest.raises(sov.SovError):
        sov.sov_qft("half", 2, F_BIG)
    with pytest.raises(sov.SovError):
        sov.sov_qft("brauer", 2, Field(16, "exact"))


def test_report_fields():
    rep = sov.sov_report("brauer", 2, [10**4, 4 * 10**4])
    assert rep["params"] == 2 and len(rep["decay_series"]) == 2
    assert len(rep["per_diagram"]) == 3
    assert set(rep["norms"]) == {"alg_vs_tilde", "alg_vs_exact", "unitarity"}
