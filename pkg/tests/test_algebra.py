import numpy as np
import pytest

from quiverhearts import fixtures as fx
from quiverhearts.algebra import (
    AlgebraError,
    decompose,
    decompose_with_maps,
    direct_sum,
    dual_rep,
    end_radical,
    hom_dim,
    hom_space,
    is_indecomposable,
    is_isomorphic,
    path_basis,
    standard_modules,
)


def test_a2_path_basis():
    pb = path_basis(fx.a2_algebra())
    assert len(pb.basis) == 1  # only the arrow itself


def test_a3_path_basis():
    pb = path_basis(fx.a3_algebra())
    assert len(pb.basis) == 3  # a, b, ab


def test_auslander_path_basis_dimension():
    alg = fx.auslander_a3_algebra()
    pb = path_basis(alg)
    # algebra dimension = nontrivial basis paths + one trivial path per vertex
    assert len(pb.basis) + 6 == 15


def test_auslander_relations_hold_on_atlas():
    atlas = fx.auslander_a3_atlas()
    for m in atlas:
        assert m.relation_defect() == []


def test_standard_projectives_match_atlas():
    atlas = fx.auslander_a3_atlas()
    std = standard_modules(fx.auslander_a3_algebra())
    expected = {"1": "1/2/3", "2": "2/34/5", "3": "3/5/6", "4": "4/5", "5": "5/6", "6": "6"}
    for v, name in expected.items():
        iso, wit = is_isomorphic(std["projective"][v], atlas[name])
        assert iso and wit.is_isomorphism()


def test_standard_injectives_match_atlas():
    atlas = fx.auslander_a3_atlas()
    std = standard_modules(fx.auslander_a3_algebra())
    expected = {"1": "1", "2": "1/2", "3": "1/2/3", "4": "2/4", "5": "2/34/5", "6": "3/5/6"}
    for v, name in expected.items():
        iso, _ = is_isomorphic(std["injective"][v], atlas[name])
        assert iso


def test_a2_hom_dims():
    atlas = fx.a2_atlas()
    s1, s2, p1 = atlas["1"], atlas["2"], atlas["1/2"]
    table = {
        ("1", "1"): 1, ("2", "2"): 1, ("1/2", "1/2"): 1,
        ("1/2", "1"): 1, ("1", "1/2"): 0,
        ("2", "1/2"): 1, ("1/2", "2"): 0,
        ("1", "2"): 0, ("2", "1"): 0,
    }
    for (a, b), d in table.items():
        assert hom_dim(atlas[a], atlas[b]) == d, (a, b)


def test_hom_maps_intertwine():
    atlas = fx.auslander_a3_atlas()
    for a in list(atlas)[:6]:
        for b in list(atlas)[:6]:
            for f in hom_space(a, b):
                assert f.intertwines()


def test_atlas_members_indecomposable():
    for m in fx.auslander_a3_atlas():
        assert is_indecomposable(m)


def test_direct_sum_decomposable():
    atlas = fx.auslander_a3_atlas()
    s, _, _ = direct_sum([atlas["3/5"], atlas["2/4"]])
    assert not is_indecomposable(s)


def test_decompose_roundtrip():
    atlas = fx.auslander_a3_atlas()
    picks = [atlas["3/5/6"], atlas["2/34"], atlas["2/34"], atlas["5"]]
    s, _, _ = direct_sum(picks)
    counts = decompose(s, atlas)
    assert counts == {"3/5/6": 1, "2/34": 2, "5": 1}


def test_decompose_with_maps_biproduct():
    atlas = fx.auslander_a3_atlas()
    s, _, _ = direct_sum([atlas["1/2"], atlas["4/5"]])
    parts = decompose_with_maps(s, atlas)
    assert sorted(m.name for m, _, _ in parts) == ["1/2", "4/5"]
    for m, inc, prj in parts:
        assert prj.compose(inc).is_isomorphism()
    # the idempotents sum to the identity
    total = None
    for m, inc, prj in parts:
        e = inc.compose(prj)
        total = e if total is None else total.add(e)
    from quiverhearts.algebra import RepMap

    assert total.sub(RepMap.identity(s)).is_zero()


def test_is_isomorphic_rejects_different():
    atlas = fx.auslander_a3_atlas()
    iso, _ = is_isomorphic(atlas["3/5"], atlas["4/5"])
    assert not iso


def test_end_radical_local_algebra():
    atlas = fx.auslander_a3_atlas()
    endos, rad = end_radical(atlas["2/34/5"])
    assert len(endos) - len(rad) == 1  # local with residue field F_p


def test_dual_rep_roundtrip():
    atlas = fx.auslander_a3_atlas()
    m = atlas["2/34/5"]
    dd = dual_rep(dual_rep(m))
    assert dd.dims == m.dims
    for aid in m.arrow_maps:
        assert np.array_equal(dd.arrow_maps[aid], m.arrow_maps[aid])


def test_rep_validation_catches_bad_relation():
    alg = fx.auslander_a3_algebra()
    from quiverhearts.algebra import Rep

    bad = Rep(alg, "bad", (0, 0, 0, 1, 1, 1), {"e": [[1]], "b": [[1]]})
    with pytest.raises(AlgebraError):
        bad.validate()


def test_atlas_full_validation():
    fx.auslander_a3_atlas(validate=True)
