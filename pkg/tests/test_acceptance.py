"""Acceptance criteria, one summary line each (see the terminal summary).

Every comparison is exact.  Grid criteria record each grid point so that a
failure names the point; nothing is skipped or loosened.
"""
import time

import pytest

from conftest import ACCEPTANCE
from emssloop import (AlgebraMorphism, AlgebraPresentation, FieldSpec, GeneratorSpec, ModuleSpec,
                      bar_complex_truncated, check_d_squared, cohomology, exterior_algebra,
                      gorenstein_dimension, hh_free, hh_induced_map, hh_ring, koszul_tor_complex,
                      loop_homology, periodic_hochschild_complex, polynomial_algebra,
                      relative_loop_homology, truncated_polynomial)
from emssloop.complexes import koszul_hochschild_complex
from emssloop.extension import brute_force_candidates
from emssloop.hochschild import bar_model, cup_product, format_map

GRID = [(m, n, p) for m in (1, 2) for n in (1, 2, 3) for p in (0, 2, 3, 5)]
LIMIT = 30.0


def record(key, ok, detail):
    ACCEPTANCE.setdefault(key, []).append((bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'} {key}: {detail}")


def expected_case(n, p):
    if p == 0 or (n + 1) % p:
        return "i"
    return "ii" if p != 2 else "iii"


def leads(P):
    return sorted(P.format_monomial(r.lead) for r in P.all_relations())


# 1 -------------------------------------------------------------------------

def closed_form_point(m, n, p):
    F = FieldSpec(p)
    A = truncated_polynomial(F, 2 * m, n)
    h = hh_ring(A, pmax=4)
    P = h.presentation
    case = expected_case(n, p)
    assert h.certificate["kind"] == f"closed_form:{case}"
    assert h.certificate["oracles"] == ["periodic", "bar"]
    want_leads = {"i": [f"u^2", f"x^{n + 1}", f"x^{n}t" if n > 1 else "xt",
                        f"x^{n}u" if n > 1 else "xu"],
                  "ii": ["v^2", f"x^{n + 1}"], "iii": ["v^2", f"x^{n + 1}"]}[case]
    assert leads(P) == sorted(want_leads)
    # independent cup-product spot check on bar representatives
    model = bar_model(A, 4)
    d = 2 * m
    if case == "i":
        u = model.representative(1, 0)
        assert all(c == 0 for c in cup_product(model, u, u))
    else:
        v = model.representative(1, -d)
        sq = cup_product(model, v, v)
        if case == "ii":
            assert all(c == 0 for c in sq)
        else:
            # v^2 lives where t x^(n-1) does; it is nonzero iff (n+1)/2 is odd
            assert model.H.dim(2, -2 * d) == 1
            assert (sq[0] != 0) == (((n + 1) // 2) % 2 == 1)
            rule = [r for r in P.relations if P.format_monomial(r.lead) == "v^2"][0]
            assert bool(rule.tail) == (((n + 1) // 2) % 2 == 1)
    return case


def test_criterion_1_truncated_closed_forms():
    key = "1 truncated polynomial HH closed forms certified on the grid"
    t0 = time.perf_counter()
    for m, n, p in GRID:
        try:
            case = closed_form_point(m, n, p)
            record(key, True, f"m={m} n={n} char={p} case {case}")
        except Exception as e:  # recorded, then re-raised below
            record(key, False, f"m={m} n={n} char={p}: {e!r}")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])


# 2 -------------------------------------------------------------------------

def test_criterion_2_oracle_equivalence():
    key = "2 periodic dims equal bar dims"
    t0 = time.perf_counter()
    for m, n, p in GRID:
        F = FieldSpec(p)
        per = cohomology(periodic_hochschild_complex(m, n, F, s_max=4)).nonzero()
        bar = cohomology(bar_complex_truncated(truncated_polynomial(F, 2 * m, n), p_max=4)).nonzero()
        per = {k: v for k, v in per.items() if k[0] <= 4}
        bar = {k: v for k, v in bar.items() if k[0] <= 4}
        record(key, per == bar and per, f"m={m} n={n} char={p}: {len(per)} cells")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])


# 3 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("p", [0, 2, 3])
def test_criterion_3_spheres(m, p):
    key = "3 sphere loop homology is Lambda(x) (x) K[v]"
    t0 = time.perf_counter()
    A = AlgebraPresentation(FieldSpec(p), (GeneratorSpec("x", m, 1),))
    res = loop_homology(A, m)
    L = res.presentation
    shape = None
    if L is not None:
        shape = ([(g.degree, g.bound) for g in L.generators], leads(L))
    want = ([(-m, 1), (m - 1, None)], ["x^2"])
    ok = res.complete and not res.unresolved and shape == want
    elapsed = time.perf_counter() - t0
    got = L.describe() if L is not None else "incomplete"
    record(key, ok and elapsed < LIMIT, f"m={m} char={p}: got {got}")
    assert res.complete and not res.unresolved
    assert shape == want, f"m={m} char={p}: {got}"


# 4 -------------------------------------------------------------------------

def test_criterion_4_cpn():
    key = "4 loop homology of CP^n"
    t0 = time.perf_counter()
    for n in (1, 2, 3):
        res = loop_homology(truncated_polynomial(FieldSpec(0), 2, n), 2 * n, "K-Y Thm 2.2")
        L = res.presentation
        degs = [(g.name, g.degree, g.bound) for g in L.generators]
        xn = "x" if n == 1 else f"x^{n}"
        ok = (res.complete and degs == [("x", -2, n), ("u", -1, 1), ("t", 2 * (n + 1) - 2, None)]
              and leads(L) == sorted(["u^2", f"x^{n + 1}", f"{xn}t", f"{xn}u"])
              and res.einf.collapse.kind == "cited_theorem"
              and res.einf.collapse.citation == "K-Y Thm 2.2")
        record(key, ok, f"(a) char 0 n={n}: {L.describe()}")
        reps = res.reports
        checks = len(reps) == 4 and all(r.verdict == "holds" and r.candidates == () for r in reps)
        brute = all(brute_force_candidates(res.einf, r.candidate, 2 * n) == [] for r in reps)
        record(key, checks and brute, f"(a) n={n}: {len(reps)} extension checks hold, brute force empty")
    res = loop_homology(truncated_polynomial(FieldSpec(3), 2, 2), 4)
    L = res.presentation
    ok = (res.complete and [(g.name, g.degree, g.bound) for g in L.generators]
          == [("x", -2, 2), ("v", 1, 1), ("t", 4, None)] and leads(L) == ["v^2", "x^3"])
    record(key, ok, f"(b) char 3 n=2: {L.describe()}")
    res = loop_homology(truncated_polynomial(FieldSpec(2), 2, 1), 2)
    L = res.presentation
    ok = (res.complete and [(g.name, g.degree, g.bound) for g in L.generators]
          == [("x", -2, 1), ("v", 1, None)] and leads(L) == ["x^2"])
    record(key, ok, f"(c) char 2 n=1: {L.describe()}")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])


# 5 -------------------------------------------------------------------------

def test_criterion_5_stiefel():
    key = "5 Stiefel manifold SO(5)/SO(3) over F2"
    t0 = time.perf_counter()
    E = exterior_algebra(FieldSpec(2), {"x3": 3, "x4": 4})
    res = loop_homology(E, 7, "cited mod 2 collapse for SO(n)/SO(m)")
    L = res.presentation
    ok = (res.complete and L.describe() == "Λ(x3,x4)⊗F2[nu3,nu4]"
          and [(g.name, g.degree) for g in L.generators]
          == [("x3", -3), ("x4", -4), ("nu3", 2), ("nu4", 3)]
          and [g.bound for g in L.generators] == [1, 1, None, None]
          and not L.relations and res.lift is not None
          and set(res.lift.labels) == {"x3^2", "x4^2"}
          and res.einf.collapse.kind == "cited_theorem")
    elapsed = time.perf_counter() - t0
    record(key, ok and elapsed < LIMIT, f"{L.describe()}, lift imports {res.lift.labels}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_relative():
    key = "6 relative loop homology of CP^n over BS^1"
    t0 = time.perf_counter()
    for n in (1, 2):
        K = FieldSpec(0)
        M = polynomial_algebra(K, {"x": 2})
        N = truncated_polynomial(K, 2, n)
        res = relative_loop_homology(M, N, None, 2 * n)
        L = res.presentation
        deg = {g.name: g.degree for g in L.generators}
        xy = L.degree_of(L.monomial({"x": 1, "y": 1}))
        ok = (res.complete and res.einf.collapse.kind == "sparsity_forced"
              and [(g.name, g.bound) for g in L.generators] == [("x", n), ("y", 1)]
              and deg == {"x": -2, "y": 1} and xy == -N.generator("x").degree + 1
              and leads(L) == sorted([f"x^{n + 1}", "y^2"]))
        kinds = {r.candidate.kind for r in res.reports}
        holds = all(r.verdict == "holds" for r in res.reports)
        record(key, ok and holds and kinds == {"relation", "commutator"},
               f"n={n}: {L.describe()}, |x|=-2, |y|=1, |xy|={xy}, "
               f"{len(res.reports)} checks hold")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])


# 7 -------------------------------------------------------------------------

def test_criterion_7_homogeneous_space_maps(frozen):
    key = "7 Koszul Tor and induced E2 maps"
    t0 = time.perf_counter()
    K = FieldSpec(0)
    R = polynomial_algebra(K, {"x4": 4})
    tor = cohomology(koszul_tor_complex(R, ModuleSpec.trivial(R), ModuleSpec.trivial(R), (0, 24)))
    dims = sorted([s, q, d] for (s, q), d in tor.nonzero().items())
    record(key, dims == frozen["tor_field_field_x4"],
           f"Tor over K[x4] of (K,K): {dims} (one exterior class in degree 3)")

    G = exterior_algebra(K, {"y1": 3, "y2": 5})
    B = exterior_algebra(K, {"y2": 5})
    pi = AlgebraMorphism.by_name(B, G)
    hG = hh_free(G)  # HH(H*G; H*G)
    hBG = hh_free(B, ModuleSpec(B, G, pi))  # HH(H*(G/SU2); H*G)
    hB = hh_free(B)  # HH(H*(G/SU2); H*(G/SU2))
    rho_prime = format_map(hh_induced_map("ring", pi, hG, hBG), hBG)
    rho = format_map(hh_induced_map("coefficients", pi, hB, hBG), hBG)
    want_prime = {"y1": "y1", "y2": "y2", "nu1": "0", "nu2": "nu2"}
    want_rho = {"y2": "y2", "nu2": "nu2"}
    record(key, rho_prime == want_prime, f"HH(pi*,1): {rho_prime}")
    record(key, rho == want_rho, f"HH(1,pi*): {rho}")
    degs = {g.name: (g.bidegree, -(g.bidegree[0] + g.bidegree[1])) for g in hG.presentation.generators}
    record(key, degs == {"y1": ((0, 3), -3), "y2": ((0, 5), -5), "nu1": ((1, -3), 2),
                         "nu2": ((1, -5), 4)}, f"bidegrees {degs}")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])


# 8 -------------------------------------------------------------------------

def test_criterion_8_property_suites():
    import random

    key = "8 property suites"
    t0 = time.perf_counter()
    rng = random.Random(20261018)
    # d o d = 0 on every kind of complex the package builds
    cxs = []
    for m, n, p in GRID:
        F = FieldSpec(p)
        cxs.append(periodic_hochschild_complex(m, n, F, s_max=3))
        cxs.append(bar_complex_truncated(truncated_polynomial(F, 2 * m, n), p_max=3))
    for p in (0, 2, 3):
        F = FieldSpec(p)
        R = polynomial_algebra(F, {"a": 2, "b": 4})
        cxs.append(koszul_tor_complex(R, ModuleSpec.trivial(R), ModuleSpec.trivial(R), (0, 16)))
        cxs.append(koszul_hochschild_complex(R, q_window=(-12, 12)))
        E = exterior_algebra(F, {"y": 3, "z": 5})
        cxs.append(bar_complex_truncated(E, p_max=3))
    bad = [c.name for c in cxs if not check_d_squared(c)]
    record(key, not bad, f"d∘d = 0 on {len(cxs)} complexes")

    # cup associativity and commutativity on sampled bar classes
    fails = 0
    samples = 0
    for m, n, p in [(1, 2, 0), (1, 1, 2), (2, 2, 3), (1, 3, 5), (1, 3, 2)]:
        model = bar_model(truncated_polynomial(FieldSpec(p), 2 * m, n), 4)
        cells = [(s, q) for (s, q), d in model.H.nonzero().items() if s <= 2]
        for _ in range(12):
            (a, b, c) = [rng.choice(cells) for _ in range(3)]
            if a[0] + b[0] + c[0] > 4:
                continue
            f, g, h = (model.representative(*x, rng.randrange(model.H.dim(*x))) for x in (a, b, c))
            samples += 1
            left = model.coordinates(model.cup(model.cup(f, g), h))
            right = model.coordinates(model.cup(f, model.cup(g, h)))
            fails += left != right
            fg = model.coordinates(model.cup(f, g))
            gf = model.coordinates(model.cup(g, f))
            tot = (a[0] + a[1]) * (b[0] + b[1])
            sign = -1 if tot % 2 else 1
            fails += fg != [model.F.mul(model.F.coerce(sign), x) for x in gf]
    record(key, fails == 0 and samples >= 30, f"cup associativity/commutativity on {samples} samples")

    # graded commutativity of multiply on random monomials
    F = FieldSpec(3)
    P = AlgebraPresentation(F, (GeneratorSpec("a", 1, 1), GeneratorSpec("b", 2, None),
                                GeneratorSpec("c", 3, 1), GeneratorSpec("e", 4, 2)))
    gc_fail = 0
    for _ in range(60):
        x = {P.monomial({"a": rng.randint(0, 1), "b": rng.randint(0, 3)}): F.one}
        y = {P.monomial({"c": rng.randint(0, 1), "e": rng.randint(0, 2), "a": rng.randint(0, 1)}): F.one}
        dx, dy = P.element_degree(x), P.element_degree(y)
        sign = F.coerce(-1 if dx * dy % 2 else 1)
        gc_fail += P.multiply(x, y) != P.scale(sign, P.multiply(y, x))
    record(key, gc_fail == 0, "graded commutativity of multiply on 60 samples")

    # Gorenstein dimension of polynomial algebras: -(sum of (deg - 1))
    K = FieldSpec(0)
    cases = [({"x2": 2}, -1), ({"x4": 4}, -3), ({"a": 2, "b": 4}, -4), ({"a": 2, "b": 2}, -2),
             ({"a": 4, "b": 6, "c": 8}, -15)]
    got = [gorenstein_dimension(polynomial_algebra(K, d)) for d, _ in cases]
    record(key, got == [w for _, w in cases], f"Gorenstein dimensions {got}")

    # brute force agrees with every holds verdict the pipeline produced
    runs = [loop_homology(truncated_polynomial(K, 2, n), 2 * n, "K-Y Thm 2.2") for n in (1, 2, 3)]
    runs.append(loop_homology(truncated_polynomial(FieldSpec(3), 2, 2), 4))
    runs.append(loop_homology(exterior_algebra(FieldSpec(2), {"x3": 3, "x4": 4}), 7, "cited mod 2 collapse for SO(n)/SO(m)"))
    runs += [relative_loop_homology(polynomial_algebra(K, {"x": 2}), truncated_polynomial(K, 2, n),
                                    None, 2 * n) for n in (1, 2)]
    disagree = 0
    verdicts = 0
    for r in runs:
        dim_n = r.einf.page.shift
        for rep in r.reports:
            verdicts += 1
            disagree += list(rep.candidates) != brute_force_candidates(r.einf, rep.candidate, dim_n)
    record(key, disagree == 0, f"brute force agrees on {verdicts} verdicts")
    elapsed = time.perf_counter() - t0
    record(key, elapsed < LIMIT, f"elapsed {elapsed:.1f}s")
    assert all(ok for ok, _ in ACCEPTANCE[key])
