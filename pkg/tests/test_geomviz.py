from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cuspedge.geomviz import (GenericityError, InvalidModuli, Polyline2, Type7Moduli,
                              ab_stratification, branch_counts, contact_order,
                              discriminant_surface, identity_checks, mesh_residuals,
                              polylines_to_csv, profile_curves, region_probe, type7_strata)
from cuspedge.geomviz.abplane import delta_p_b, inflectional_b, lips_beaks_b
from cuspedge.geomviz.contours import ProjectionProfile
from cuspedge.geomviz.identities import ab, discriminant
from cuspedge.geomviz.roots import count_real_roots, real_roots, sturm_sequence
from cuspedge.geomviz.strata import cusp_fold_poly, swallowtail_poly
from cuspedge.geomviz.surfaces import FORMS
from cuspedge.recognize import EdgeCoefficients
from oracles import real_root_count

raises = pytest.raises
SAMPLE = EdgeCoefficients(b20=1, b12=1, a20=1, b30=1, b22=0)


# ---------------------------------------------------------------------------
# discriminant meshes


@pytest.mark.parametrize("form", FORMS)
@pytest.mark.parametrize("sign", [1, -1])
def test_mesh_vertices_are_exact_critical_values(form, sign):
    mesh = discriminant_surface(form, grid=6, sign=sign)
    for res in mesh_residuals(mesh):
        assert all(r == 0 for r in res)


def test_mesh_shapes():
    assert discriminant_surface("FnVk2", grid=4).part_labels == ["D1_plane", "D2_plane"]
    assert discriminant_surface("FnWUV", grid=4).part_labels == ["D1_D2_cuspidal_edge",
                                                                  "D1_cuspidal_edge"]
    obj = discriminant_surface("FnVk4", grid=3).to_obj()
    assert "o D1_D2_swallowtail" in obj
    faces = [line for line in obj.splitlines() if line.startswith("f ")]
    assert len(faces) == 9 and all(len(f.split()) == 5 for f in faces)


def test_cuspidal_edge_parametrization():
    mesh = discriminant_surface("FnVk3", grid=2, extent=1)
    for (x, y), p in zip(mesh.sheets[0].preimages, mesh.sheets[0].vertices):
        assert y == 0 and p == (-3 * x * x, p[1], -2 * x ** 3)


def test_wuv_genericity():
    for a in (0, Fraction(-4, 27)):
        with raises(GenericityError):
            discriminant_surface("FnWUV", a=a)
    with raises(ValueError):
        discriminant_surface("FnXYZ")


# ---------------------------------------------------------------------------
# roots


def test_sturm_examples():
    p = swallowtail_poly(Fraction(1), Fraction(2))
    assert p == [-1, 0, -3, -2]
    assert count_real_roots(p, -10, 10) == 1
    assert count_real_roots(swallowtail_poly(Fraction(-1), Fraction(-1, 2)), -100, 100) == 3
    assert sturm_sequence([1, 0, 1])[-1]


polys = st.lists(st.integers(-5, 5), min_size=2, max_size=6).filter(lambda c: c[-1] != 0)


@settings(max_examples=30)
@given(polys)
def test_root_count_matches_sympy(cs):
    qs = [Fraction(c) for c in cs]
    assert len(real_roots(qs)) == real_root_count(qs)


@settings(max_examples=30)
@given(polys)
def test_roots_are_roots(cs):
    for r in real_roots([Fraction(c) for c in cs]):
        val = sum(c * r ** i for i, c in enumerate(cs))
        scale = sum(abs(c) * abs(r) ** i for i, c in enumerate(cs))
        assert abs(val) <= 1e-8 * max(1.0, scale)


@settings(max_examples=20)
@given(polys)
def test_repeated_roots_are_counted_once(cs):
    p = [Fraction(c) for c in cs]
    sq = [sum(p[i] * p[k - i] for i in range(len(p)) if 0 <= k - i < len(p))
          for k in range(2 * len(p) - 1)]
    assert len(real_roots(sq)) == len(real_roots(p)) == count_real_roots(sq)


# ---------------------------------------------------------------------------
# strata


def test_lips_beaks_coefficient():
    curves = {c.name: c for c in type7_strata(Type7Moduli(1, 1, 0, 0, 0))}
    assert curves["lips_beaks"].c2 == Fraction(-4, 5)
    assert curves["type3"].c2 == 1


def test_swallowtail_branch_counts():
    assert branch_counts(Fraction(1), Fraction(2))["swallowtail"] == 1
    assert branch_counts(Fraction(-1), Fraction(-1, 2))["swallowtail"] == 3
    for a, b in ((1, 2), (-1, Fraction(-1, 2))):
        names = [c.name for c in type7_strata(Type7Moduli(a, b, 0, 0, 0))]
        assert names.count("swallowtail") == branch_counts(Fraction(a), Fraction(b))["swallowtail"]


def test_swallowtail_skipped_when_a_equals_b():
    dropped = []
    names = [c.name for c in type7_strata(Type7Moduli(1, 1, 0, 0, 0), dropped)]
    assert "swallowtail" not in names and "type2_fold" not in names


def test_invalid_moduli():
    for a, b in ((0, 1), (1, 0)):
        with raises(InvalidModuli):
            Type7Moduli(a, b, 0, 0, 0)


def test_swallowtail_and_cusp_fold_share_kernel():
    a, b = Fraction(-1), Fraction(-1, 2)
    st_ = {round(c.root, 9): c.c2 for c in type7_strata(Type7Moduli(a, b, 0, 0, 0))
           if c.name == "swallowtail"}
    assert len(st_) == 3
    assert cusp_fold_poly(a, b)


def test_stratum_json():
    data = type7_strata(Type7Moduli(1, 2, 0, 0, 0))[0].to_json()
    assert {"name", "c2", "c2_float", "branchCount", "validity"} <= set(data)


# ---------------------------------------------------------------------------
# moduli plane


def test_ab_curves():
    assert lips_beaks_b(Fraction(-4, 9)) == Fraction(-4, 27)
    assert lips_beaks_b(0) == 0
    assert delta_p_b(-1, 1) == pytest.approx(0.0) and delta_p_b(-1, -1) == pytest.approx(-2.0)
    assert inflectional_b(0) == 0


def test_ab_stratification_labels():
    lines = ab_stratification(resolution=60)
    labels = {pl.label for pl in lines}
    assert labels == {"lips_beaks", "delta_P", "inflectional_swallowtail", "type3_line",
                      "tacnode_line", "excluded_axes"}
    type3 = [pl for pl in lines if pl.label == "type3_line"]
    for pl in type3:
        for a, b in pl.points:
            assert 3 * b == pytest.approx(2 * a)


def test_region_probe():
    assert region_probe(1, 2)["swallowtail"] == 1
    p = region_probe(-1, -0.5)
    assert p["swallowtail"] == 3 and p["kind"] == "beaks"
    with raises(InvalidModuli):
        region_probe(0, 1)


def test_polylines_csv():
    csv = polylines_to_csv([Polyline2([(0, 0), (0, 0), (1, 2)], "a")])
    assert csv.splitlines() == ["label,x,y", "a,0.0,0.0", "a,1.0,2.0"]


# ---------------------------------------------------------------------------
# identities


def test_identities_match():
    res = {r.name: r for r in identity_checks()}
    assert all(r.status == "match" for r in res.values())
    assert res["disc(Q)"].factor == "1"


def test_identities_degenerate_point():
    res = {r.name: r for r in identity_checks(at=(1, 1))}
    assert res["disc(P)"].status == "skipped"
    at = {r.name: r for r in identity_checks(at=(1, 2))}
    assert at["disc(P)"].status == "match" and at["disc(P)"].factor == "-108"


def test_discriminant_of_quadratic():
    assert discriminant([ab(c) for c in ("1", "3", "2")]) == ab("1")
    assert discriminant([ab(c) for c in ("-1", "0", "1")]) == ab("4")
    assert discriminant([ab(c) for c in ("b", "a", "1")]) == ab("a^2 - 4*b")


# ---------------------------------------------------------------------------
# profiles


def test_profile_type2_contact():
    assert contact_order(SAMPLE, (0, 1, 0)) == pytest.approx(3.0, abs=0.25)


def test_profile_singular_image_is_a_cusp_for_type5():
    j1, j2 = ProjectionProfile(SAMPLE, (1, 0, 0)).singular_image_jets()
    assert (j1[1], j2[1]) == (0, 0)
    assert (j1[2], j1[3], j2[2]) == (Fraction(1, 2), Fraction(1, 6), Fraction(-1, 2))


def test_profile_without_contour_generator():
    lines = profile_curves(SAMPLE, (0, 0, 1), resolution=32)
    assert [pl.label for pl in lines] == ["singular_image"]


def test_profile_emits_proper_profile():
    lines = profile_curves(SAMPLE, (0, 1, 0), resolution=64)
    assert "proper_profile" in {pl.label for pl in lines}
    prof = ProjectionProfile(SAMPLE, (0, 1, 0))
    for pl in lines:
        assert np.isfinite(np.asarray(pl.points)).all()
    assert prof.S


def test_profile_errors():
    with raises(ValueError):
        profile_curves(SAMPLE, (0, 1, 0), resolution=4)
    with raises(ValueError):
        profile_curves(SAMPLE, (0, 0, 0))
    with raises(ValueError):
        profile_curves(SAMPLE, (0, 1, 0), window=(1, 0, 0, 1))
