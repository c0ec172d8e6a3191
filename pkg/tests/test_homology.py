import numpy as np
import pytest

from quiverhearts import fixtures as fx
from quiverhearts import homology as ho
from quiverhearts.algebra import RepMap, direct_sum, hom_space, is_isomorphic


def test_kernel_cokernel_a2():
    atlas = fx.a2_atlas()
    p1, s1 = atlas["1/2"], atlas["1"]
    f = hom_space(p1, s1)[0]  # the projection 1/2 ->> 1
    k, inc = ho.kernel(f)
    iso, _ = is_isomorphic(k, atlas["2"])
    assert iso
    c, prj = ho.cokernel(inc)
    iso, _ = is_isomorphic(c, s1)
    assert iso


def test_image_factorization():
    atlas = fx.a3_atlas()
    f = hom_space(atlas["1/2/3"], atlas["1/2"])[0]
    im, mono, epi = ho.image(f)
    assert mono.compose(epi).sub(f).is_zero()
    assert mono.is_injective() and epi.is_surjective()


def test_conflation_validate():
    atlas = fx.a2_atlas()
    f = hom_space(atlas["2"], atlas["1/2"])[0]
    conf = ho.conflation_from_infl(f)
    iso, _ = is_isomorphic(conf.c, atlas["1"])
    assert iso
    conf.validate()


def test_projective_cover_simple():
    atlas = fx.auslander_a3_atlas()
    p, epi = ho.projective_cover(atlas["2"])
    iso, _ = is_isomorphic(p, atlas["2/34/5"])
    assert iso and epi.is_surjective()


def test_syzygy_of_simple_2():
    atlas = fx.auslander_a3_atlas()
    om, conf = ho.syzygy(atlas["2"])
    # rad P(2) = 34/5
    iso, _ = is_isomorphic(om, atlas["34/5"])
    assert iso


def test_injective_envelope():
    atlas = fx.auslander_a3_atlas()
    i, mono = ho.injective_envelope(atlas["2"])
    iso, _ = is_isomorphic(i, atlas["1/2"])
    assert iso and mono.is_injective()


def test_is_projective_flags():
    atlas = fx.auslander_a3_atlas()
    for name in ("1/2/3", "2/34/5", "3/5/6", "4/5", "5/6", "6"):
        assert ho.is_projective(atlas[name])
    for name in ("1", "2", "3", "3/5", "2/34"):
        assert not ho.is_projective(atlas[name])


def test_ext1_a2():
    atlas = fx.a2_atlas()
    assert ho.ext1_dim(atlas["1"], atlas["2"]) == 1
    assert ho.ext1_dim(atlas["2"], atlas["1"]) == 0
    assert ho.ext1_dim(atlas["1/2"], atlas["2"]) == 0


def test_ext1_a3_nonsplit():
    atlas = fx.a3_atlas()
    assert ho.ext1_dim(atlas["1/2"], atlas["3"]) == 1
    assert ho.ext1_dim(atlas["1"], atlas["2/3"]) == 1
    assert ho.ext1_dim(atlas["1"], atlas["3"]) == 0


def test_ext1_realize_and_coords_roundtrip():
    atlas = fx.a2_atlas()
    ext = ho.Ext1(atlas["1"], atlas["2"])
    assert ext.dim == 1
    conf = ext.realize([1])
    conf.validate()
    iso, _ = is_isomorphic(conf.b, atlas["1/2"])
    assert iso
    coords = ext.coords_of(conf)
    assert list(coords) == [1]
    # the zero class realizes as a split extension
    conf0 = ext.realize([0])
    s, _, _ = direct_sum([atlas["2"], atlas["1"]])
    iso, _ = is_isomorphic(conf0.b, s)
    assert iso
    assert list(ext.coords_of(conf0)) == [0]


def test_ext1_auslander_known_values():
    atlas = fx.auslander_a3_atlas()
    # almost split sequence 0 -> 2 -> 1/2 + 2/34 -> ... sample values:
    assert ho.ext1_dim(atlas["1"], atlas["2"]) == 1
    assert ho.ext1_dim(atlas["2"], atlas["34/5"]) == 1
    # projectives have no extensions
    for name in ("1/2/3", "2/34/5", "3/5/6", "4/5", "5/6", "6"):
        for other in ("1", "2", "3", "4", "5", "3/5"):
            assert ho.ext1_dim(atlas[name], atlas[other]) == 0
    # nothing extends into injectives
    for name in ("1", "1/2", "2/4"):
        for other in ("3/5", "2/34", "2"):
            assert ho.ext1_dim(atlas[other], atlas[name]) == 0


def test_pushout_pullback_conflation():
    atlas = fx.auslander_a3_atlas()
    ext = ho.Ext1(atlas["1"], atlas["2"])
    conf = ext.realize([1])
    # pushing forward along 2 -> 1/2 (the socle inclusion)
    f = hom_space(atlas["2"], atlas["1/2"])[0]
    conf2, bmap = ho.pushout_conflation(conf, f)
    conf2.validate()
    assert conf2.a.name.startswith("1/2") or conf2.a.dims == atlas["1/2"].dims
    # pulling back the cover conflation of 2 along 34/5 -> 0 is trivial-safe
    g = RepMap.zero(atlas["3"], conf.c)
    conf3, pmap = ho.pullback_conflation(conf, g)
    conf3.validate()
    s, _, _ = direct_sum([conf.a, atlas["3"]])
    iso, _ = is_isomorphic(conf3.b, s)
    assert iso


def test_factors_through():
    atlas = fx.auslander_a3_atlas()
    # 2/34/5 ->> 2 ->> ... every map 2/34/5 -> 1/2 hits the socle through 2
    f = hom_space(atlas["2/34/5"], atlas["1/2"])[0]
    assert ho.factors_through(f, [atlas["2"]])
    assert not ho.factors_through(f, [atlas["3"]])
    wit = ho.factor_witness(f, [atlas["2"]])
    assert wit is not None
    t, u, v = wit
    assert v.compose(u).sub(f).is_zero()


def test_minimal_right_approximation_projectives():
    atlas = fx.auslander_a3_atlas()
    projs = [atlas[n] for n in ("1/2/3", "2/34/5", "3/5/6", "4/5", "5/6", "6")]
    approx = ho.minimal_right_approximation(projs, atlas["2"])
    # must be the projective cover P(2) = 2/34/5
    iso, _ = is_isomorphic(approx.total, atlas["2/34/5"])
    assert iso
    assert approx.map.is_surjective()
    assert ho.is_right_minimal(approx.map)


def test_minimal_left_approximation_injectives():
    atlas = fx.auslander_a3_atlas()
    injs = [atlas[n] for n in ("1", "1/2", "1/2/3", "2/4", "2/34/5", "3/5/6")]
    approx = ho.minimal_left_approximation(injs, atlas["2"])
    iso, _ = is_isomorphic(approx.total, atlas["1/2"])
    assert iso
    assert approx.map.is_injective()
    assert ho.is_left_minimal(approx.map)


def test_ext_dim_higher():
    atlas = fx.auslander_a3_atlas()
    # global dimension of an Auslander algebra is at most 2
    for a in ("1", "2", "3", "3/5"):
        for b in ("1", "2", "3", "3/5"):
            assert ho.ext_dim(atlas[a], atlas[b], 3) == 0
