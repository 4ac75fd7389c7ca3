import json

import pytest

from emssloop import hochschild as H
from emssloop.algebra import (AlgebraMorphism, AlgebraPresentation, GeneratorSpec, ModuleSpec,
                              exterior_algebra, polynomial_algebra, truncated_polynomial)
from emssloop.hochschild import (CertificationError, HHPresentation, UnsupportedAlgebraError,
                                 bar_model, cup_product, dual_name, format_map, hh_free,
                                 hh_induced_map, hh_kunneth, hh_module_coefficients,
                                 hh_polynomial, hh_ring, truncated_case)
from emssloop.scalars import FieldSpec


@pytest.mark.parametrize("d,n,p,case", [
    (2, 1, 0, "i"), (2, 2, 3, "ii"), (2, 1, 2, "iii"), (4, 4, 5, "ii"), (2, 4, 5, "ii"),
    (2, 3, 2, "iii"), (2, 2, 2, "i"), (3, 1, 0, "hkr"), (3, 1, 2, "iii")])
def test_truncated_case(d, n, p, case):
    assert truncated_case(d, n, p) == case


def test_odd_generator_with_large_bound_unsupported():
    with pytest.raises(UnsupportedAlgebraError):
        truncated_case(3, 2, 0)


def test_case_iii_scalar_and_normalization():
    # n = 1: v^2 = t; n = 3: v^2 = 0 because (n+1)/2 = 2
    h1 = hh_ring(truncated_polynomial(FieldSpec(2), 2, 1))
    assert [h1.presentation.format_relation(r) for r in h1.presentation.relations] == ["v^2 - t"]
    assert h1.certificate["normalization"] == {"generator": "t", "factor": 1}
    h3 = hh_ring(truncated_polynomial(FieldSpec(2), 2, 3))
    assert h3.presentation.relations[0].tail == ()
    assert h1.simplified().describe() == "Λ(x)⊗F2[v]"
    assert h3.simplified() is h3


def test_certificate_contents():
    h = hh_ring(truncated_polynomial(FieldSpec(0), 2, 2))
    c = h.certificate
    assert c["kind"] == "closed_form:i"
    assert c["oracles"] == ["periodic", "bar"]
    assert "x^2t = 0" in c["product_checks"]
    assert c["series_cells"] > 0
    json.dumps(h.to_json())


def test_wrong_candidate_fails_certification(monkeypatch):
    real = H.truncated_closed_form

    def wrong(field, d, n, name="x"):
        cand, case = real(field, d, n, name)
        # drop the relation x^n u = 0: the series no longer matches
        P = cand.presentation
        P2 = AlgebraPresentation(P.field, P.generators, P.relations[:1])
        return HHPresentation(P2, {}, cand.roles), case

    monkeypatch.setattr(H, "truncated_closed_form", wrong)
    with pytest.raises(CertificationError):
        hh_ring(truncated_polynomial(FieldSpec(0), 2, 2))


def test_wrong_product_fails_certification(monkeypatch):
    real = H.truncated_closed_form

    def wrong(field, d, n, name="x"):
        cand, case = real(field, d, n, name)
        P = cand.presentation
        # claim v^2 = t x^2 in char 2, n = 3, where the true rule is v^2 = 0
        P2 = AlgebraPresentation.build(P.field, list(P.generators),
                                       [({"v": 2}, [(1, {"t": 1, "x": 2})])])
        return HHPresentation(P2, {}, cand.roles), case

    monkeypatch.setattr(H, "truncated_closed_form", wrong)
    with pytest.raises(CertificationError):
        hh_ring(truncated_polynomial(FieldSpec(2), 2, 3))


def test_hh_ring_rejects_other_algebras():
    with pytest.raises(UnsupportedAlgebraError):
        hh_ring(polynomial_algebra(FieldSpec(0), {"x": 2}))
    with pytest.raises(UnsupportedAlgebraError):
        hh_ring(exterior_algebra(FieldSpec(0), {"a": 3, "b": 5}))


def test_cup_unit():
    A = truncated_polynomial(FieldSpec(3), 2, 2)
    model = bar_model(A, 4)
    one = model.unit()
    for (p, q), d in model.H.nonzero().items():
        if p > 2:
            continue
        for k in range(d):
            f = model.representative(p, q, k)
            assert cup_product(model, one, f) == model.coordinates(f)
            assert cup_product(model, f, one) == model.coordinates(f)


def test_cup_leaves_window():
    model = bar_model(truncated_polynomial(FieldSpec(0), 2, 1), 2)
    t = model.representative(2, -4)
    with pytest.raises(ValueError):
        model.cup(t, t)


def test_hh_polynomial_koszul_certified():
    h = hh_polynomial(polynomial_algebra(FieldSpec(0), {"a": 2, "b": 4}))
    assert h.certificate["oracles"] == ["koszul"]
    assert h.presentation.names == ["a", "b", "u_a", "u_b"]
    assert [g.bound for g in h.presentation.generators] == [None, None, 1, 1]
    degs = {g.name: g.bidegree for g in h.presentation.generators}
    assert degs["u_a"] == (1, -2) and degs["u_b"] == (1, -4)


def test_hh_free_exterior_bar_certified():
    h = hh_free(exterior_algebra(FieldSpec(2), {"x3": 3, "x4": 4}))
    assert h.certificate["oracles"] == ["bar"]
    assert [g.name for g in h.presentation.generators] == ["x3", "x4", "nu3", "nu4"]
    assert h.roles["nu4"] == {"role": "dual", "dual_of": "x4"}


def test_hh_free_rejects_even_exterior_outside_char_2():
    with pytest.raises(UnsupportedAlgebraError):
        hh_free(AlgebraPresentation(FieldSpec(0), (GeneratorSpec("x", 2, 1), GeneratorSpec("y", 3, 1))))


def test_module_coefficients():
    F = FieldSpec(0)
    R = polynomial_algebra(F, {"x": 2})
    C = ModuleSpec(R, truncated_polynomial(F, 2, 2))
    h = hh_module_coefficients(R, C)
    assert h.certificate["kind"] == "module_coefficients"
    assert [(g.name, g.bidegree) for g in h.presentation.generators] == [("x", (0, 2)), ("y", (1, -2))]
    assert sum(h.series(3).values()) == 6


def test_kunneth():
    F = FieldSpec(0)
    h1 = hh_ring(truncated_polynomial(F, 2, 1))
    h2 = hh_free(exterior_algebra(F, {"z": 3}))
    k = hh_kunneth(h1, h2)
    s1, s2 = h1.series(4), h2.series(4)
    want: dict = {}
    for (p1, q1), a in s1.items():
        for (p2, q2), b in s2.items():
            if p1 + p2 <= 4:
                key = (p1 + p2, q1 + q2)
                want[key] = want.get(key, 0) + a * b
    assert k.series(4) == dict(sorted(want.items()))
    with pytest.raises(ValueError):
        hh_kunneth(h1, h1)


def test_dual_names():
    assert dual_name("x3", True) == "nu3"
    assert dual_name("a", False) == "u_a"
    assert dual_name("y12", False) == "u12"


def test_induced_maps_two_generator_model():
    F = FieldSpec(0)
    G = exterior_algebra(F, {"y1": 3, "y2": 5})
    B = exterior_algebra(F, {"y2": 5})
    pi = AlgebraMorphism.by_name(B, G)
    hG, hB = hh_free(G), hh_free(B)
    hBG = hh_free(B, ModuleSpec(B, G, pi))
    assert format_map(hh_induced_map("ring", pi, hG, hBG), hBG) == {
        "y1": "y1", "y2": "y2", "nu1": "0", "nu2": "nu2"}
    assert format_map(hh_induced_map("coefficients", pi, hB, hBG), hBG) == {"y2": "y2", "nu2": "nu2"}
    with pytest.raises(ValueError):
        hh_induced_map("sideways", pi, hG, hBG)


def test_induced_map_ring_direction_with_coefficient():
    # psi(z) = 2*y: the dual of y pulls back to 2 * dual of z
    F = FieldSpec(0)
    R = exterior_algebra(F, {"y": 3})
    Rp = exterior_algebra(F, {"z": 3})
    psi = AlgebraMorphism(Rp, R, {"z": R.scale(2, R.gen("y"))})
    C = ModuleSpec(Rp, R, psi)
    src = hh_free(R)
    tgt = hh_free(Rp, C)
    imgs = format_map(hh_induced_map("ring", psi, src, tgt), tgt)
    assert imgs["nu_y"] == "2*nu_z"


def test_presentation_validation():
    with pytest.raises(ValueError):
        HHPresentation(AlgebraPresentation(FieldSpec(0), (GeneratorSpec("a", 2),)))
    with pytest.raises(ValueError):
        HHPresentation(AlgebraPresentation(FieldSpec(0), (GeneratorSpec("a", 2, None, (1, 0)),)))
    h = hh_ring(truncated_polynomial(FieldSpec(0), 2, 1)).rename({"u": "w"})
    assert "w" in h.roles and h.homological_degrees()["w"] == -1


@pytest.mark.parametrize("p", [0, 2, 3])
def test_generators_sharing_a_bidegree_certify(p):
    h = hh_free(exterior_algebra(FieldSpec(p), {"y": 3, "z": 3}))
    assert h.certificate["oracles"] == ["bar"]
    assert h.presentation.names == ["y", "z", "nu_y", "nu_z"]
