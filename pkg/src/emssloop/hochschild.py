"""Hochschild cohomology rings with certified presentations.

Candidate presentations come from closed forms (truncated polynomial
algebras, free graded-commutative algebras, module coefficients over a
polynomial ring).  Each candidate is checked against an independent
computation: bigraded dimensions from an explicit cochain complex, and where
a finite bar model exists, cup products of bar cocycle representatives.

Conventions.  A generator's bidegree is ``(p, q)``; its ``degree`` in the
presentation is the cohomological total ``p + q`` (which governs Koszul
signs).  Loop homology reports ``-(p + q)``.  The cup product on normalized
bar cochains is

    (f u g)(a_1..a_{p+r}) = (-1)^(q_f p_g + q_g (|a_1|+..+|a_p|)) f(a_1..a_p) g(a_{p+1}..)

which makes HH of a graded-commutative algebra graded-commutative in the
total degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (AlgebraMorphism, AlgebraPresentation, GeneratorSpec, ModuleSpec,
                      Relation, _acc, ground_field, tensor, truncated_polynomial)
from .complexes import (CohomologyResult, FreeComplex, bar_complex_truncated, cohomology,
                        koszul_hochschild_complex, periodic_hochschild_complex)
from .linalg import rank
from .scalars import FieldSpec


class CertificationError(RuntimeError):
    """A candidate presentation disagreed with the computed cohomology."""


class UnsupportedAlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HHPresentation:
    presentation: AlgebraPresentation
    certificate: Mapping = field(default_factory=dict)
    roles: Mapping = field(default_factory=dict)  # name -> {"role": ..., "dual_of": ...}

    def __post_init__(self):
        for g in self.presentation.generators:
            if g.bidegree is None:
                raise ValueError(f"generator {g.name} carries no bidegree")
            if g.bidegree[0] < 0:
                raise ValueError(f"generator {g.name} has negative filtration")
            if g.degree != g.bidegree[0] + g.bidegree[1]:
                raise ValueError(f"degree of {g.name} does not match its bidegree")

    @property
    def field(self) -> FieldSpec:
        return self.presentation.field

    def series(self, pmax: int, qwindow=None) -> dict:
        return self.presentation.bigraded_series(pmax, qwindow)

    def homological_degrees(self) -> dict[str, int]:
        return {g.name: -g.degree for g in self.presentation.generators}

    def describe(self) -> str:
        return self.presentation.describe()

    def simplified(self) -> "HHPresentation":
        """Eliminate a generator ``t`` defined by a rule ``v^2 -> t``."""
        P = self.presentation
        for r in P.relations:
            if len(r.tail) != 1 or r.tail[0][0] != P.field.one:
                continue
            tm = r.tail[0][1]
            if sum(tm) != 1 or sum(r.lead) != 2 or max(r.lead) != 2:
                continue
            ti = tm.index(1)
            vi = r.lead.index(2)
            others = [o for o in P.relations if o is not r]
            if any(o.lead[ti] or any(m[ti] for _, m in o.tail) for o in others):
                continue
            if P.generators[ti].bound is not None:
                continue
            gens = tuple(g for i, g in enumerate(P.generators) if i != ti)
            drop = lambda m: tuple(e for i, e in enumerate(m) if i != ti)
            rels = tuple(Relation(drop(o.lead), tuple((c, drop(m)) for c, m in o.tail))
                         for o in others)
            new = AlgebraPresentation(P.field, gens, rels)
            cert = dict(self.certificate)
            cert["simplified"] = f"{P.generators[ti].name} = {P.generators[vi].name}^2"
            roles = {k: v for k, v in self.roles.items() if k != P.generators[ti].name}
            return HHPresentation(new, cert, roles)
        return self

    def rename(self, mapping: Mapping[str, str]) -> "HHPresentation":
        roles = {}
        for k, v in self.roles.items():
            v = dict(v)
            roles[mapping.get(k, k)] = v
        return HHPresentation(self.presentation.rename(mapping), dict(self.certificate), roles)

    def to_json(self) -> dict:
        d = self.presentation.to_json()
        for g in d["generators"]:
            g["homological_degree"] = -g["degree"]
            g.update({k: v for k, v in self.roles.get(g["name"], {}).items()})
        d["certificate"] = _jsonable(self.certificate)
        d["text"] = self.describe()
        return d


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


# ---------------------------------------------------------------------------
# bar model with cup products

class BarModel:
    """Normalized bar cochains of a finite-dimensional algebra with their cohomology."""

    def __init__(self, alg: AlgebraPresentation, module: ModuleSpec | None = None, pmax: int = 4):
        self.alg = alg
        self.module = module or ModuleSpec.identity(alg)
        self.pmax = pmax
        self.complex: FreeComplex = bar_complex_truncated(alg, self.module, p_max=pmax)
        self.H: CohomologyResult = cohomology(self.complex)
        self._index: dict = {}
        self.C = self.module.coefficients
        self.F = alg.field

    def index(self, s: int, q: int) -> dict:
        key = (s, q)
        if key not in self._index:
            self._index[key] = {lab: i for i, lab in enumerate(self.complex.basis(s, q))}
        return self._index[key]

    def unit(self) -> tuple:
        F = self.F
        b = self.complex.basis(0, 0)
        v = [F.zero] * len(b)
        v[b.index(((), self.C.unit_monomial))] = F.one
        return (0, 0, v)

    def cup(self, f: tuple, g: tuple) -> tuple:
        p1, q1, fv = f
        p2, q2, gv = g
        p, q = p1 + p2, q1 + q2
        if p > self.pmax:
            raise ValueError(f"cup product leaves the window p <= {self.pmax}")
        F, C = self.F, self.C
        fb, gb = self.complex.basis(p1, q1), self.complex.basis(p2, q2)
        idx = self.index(p, q)
        out = [F.zero] * len(self.complex.basis(p, q))
        for i, a in enumerate(fv):
            if a == 0:
                continue
            T, mu = fb[i]
            tdeg = sum(self.alg.degree_of(x) for x in T)
            for j, b in enumerate(gv):
                if b == 0:
                    continue
                T2, mu2 = gb[j]
                sign = (q1 * p2 + q2 * tdeg) % 2
                c = F.mul(a, b)
                if sign:
                    c = F.neg(c)
                for nu, c2 in C.multiply({mu: F.one}, {mu2: F.one}).items():
                    k = idx[(T + T2, nu)]
                    out[k] = F.add(out[k], F.mul(c, c2))
        return (p, q, out)

    def coordinates(self, f: tuple) -> list:
        p, q, v = f
        if not any(c != 0 for c in v) and (p, q) not in self.H.quotients:
            return []
        return self.H.coordinates(p, q, v)

    def scale(self, c, f: tuple) -> tuple:
        return (f[0], f[1], [self.F.mul(c, x) for x in f[2]])

    def representative(self, p: int, q: int, k: int = 0) -> tuple:
        return (p, q, list(self.H.representatives(p, q)[k]))


def cup_product(model: BarModel, f: tuple, g: tuple) -> list:
    """Class of ``f u g`` in cohomology coordinates at the sum bidegree."""
    return model.coordinates(model.cup(f, g))


_BAR_CACHE: dict = {}


def bar_model(alg: AlgebraPresentation, pmax: int, module: ModuleSpec | None = None) -> BarModel:
    if module is not None and not module.is_identity:
        return BarModel(alg, module, pmax)
    key = (alg, pmax)
    if key not in _BAR_CACHE:
        _BAR_CACHE[key] = BarModel(alg, None, pmax)
    return _BAR_CACHE[key]


def _bar_size(alg: AlgebraPresentation, coeff_dim: int, pmax: int) -> int:
    abar = len(alg.full_basis()) - 1
    return abar ** (pmax + 1) * coeff_dim


# ---------------------------------------------------------------------------
# certification helpers

def _check_series(pres: AlgebraPresentation, dims: Mapping, pmax: int, label: str,
                  qwindow=None) -> int:
    got = {k: v for k, v in dims.items() if v and k[0] <= pmax
           and (qwindow is None or qwindow[0] <= k[1] <= qwindow[1])}
    want = pres.bigraded_series(pmax, qwindow)
    if got != want:
        diff = sorted(set(got.items()) ^ set(want.items()))
        raise CertificationError(f"{label}: bigraded series mismatch at {diff[:6]}")
    return len(want)


def _certify_products(pres: AlgebraPresentation, model: BarModel, pmax: int,
                      normalize: str | None = None) -> dict:
    """Check a presentation's ring structure against bar cocycle products.

    Generators with ``p <= pmax`` are matched to the (one-dimensional)
    cohomology at their bidegree.  If ``normalize`` names a generator, that
    generator's representative is rescaled so that the unique non-monomial
    rule holds exactly.
    """
    F = pres.field
    reps: dict[int, tuple] = {}
    shared: dict = {}
    for i, g in enumerate(pres.generators):
        shared.setdefault(g.bidegree, []).append(i)
    in_rules = {i for r in pres.relations for i, e in enumerate(r.lead) if e}
    in_rules |= {i for r in pres.relations for _, m in r.tail for i, e in enumerate(m) if e}
    for (p, q), idx in shared.items():
        if p > pmax:
            continue
        d = model.H.dim(p, q)
        names = ", ".join(pres.generators[i].name for i in idx)
        if d != len(idx):
            raise CertificationError(
                f"generators {names} at {(p, q)}: cohomology has dimension {d}, expected {len(idx)}")
        if len(idx) > 1 and (len({pres.generators[i].bound for i in idx}) > 1 or in_rules & set(idx)):
            raise CertificationError(f"generators {names} share a bidegree but are not interchangeable")
        # interchangeable generators may take any basis: a linear change of generators
        for k, i in enumerate(idx):
            reps[i] = model.representative(p, q, k)

    cache: dict = {}

    def cochain(mono) -> tuple | None:
        key = tuple(mono)
        if key in cache:
            return cache[key]
        if pres.bidegree_of(key)[0] > pmax:
            return None
        last = max((i for i, e in enumerate(key) if e), default=None)
        if last is None:
            out = model.unit()
        else:
            prev = list(key)
            prev[last] -= 1
            out = model.cup(cochain(prev), reps[last])
        cache[key] = out
        return out

    def element_coords(terms, bideg) -> list:
        p, q = bideg
        dim = model.H.dim(p, q)
        acc = [F.zero] * dim
        for c, m in terms:
            co = model.coordinates(cochain(m)) or [F.zero] * dim
            acc = [F.add(a, F.mul(c, x)) for a, x in zip(acc, co)]
        return acc

    checks = []
    scale_note = None
    if normalize is not None:
        ti = pres.index(normalize)
        for r in pres.relations:
            if not r.tail or pres.bidegree_of(r.lead)[0] > pmax:
                continue
            bd = pres.bidegree_of(r.lead)
            lead = element_coords([(F.one, r.lead)], bd)
            tail = element_coords(r.tail, bd)
            if len(lead) != 1:
                raise CertificationError("normalization needs a one-dimensional bidegree")
            if tail[0] == 0 and lead[0] == 0:
                continue
            if tail[0] == 0 or lead[0] == 0:
                raise CertificationError(
                    f"relation {pres.format_relation(r)} cannot be matched by rescaling")
            # tail is linear in t: rescale t so that tail = lead
            lam = F.div(lead[0], tail[0])
            reps[ti] = model.scale(lam, reps[ti])
            cache.clear()
            scale_note = {"generator": normalize, "factor": F.to_json(lam)}
            break

    # standard monomials give a basis in every bidegree of the window
    by_bideg: dict = {}
    for m in pres.enumerate_monomials(*pres._bigradings([(0, pmax), (-float("inf"), float("inf"))])):
        by_bideg.setdefault(pres.bidegree_of(m), []).append(m)
    for bd, monos in sorted(by_bideg.items()):
        rows = [model.coordinates(cochain(m)) for m in monos]
        if rank(F, rows) != len(monos) or len(monos) != model.H.dim(*bd):
            raise CertificationError(f"standard monomials at {bd} are not a basis of HH")
    checks.append(f"standard monomials form a basis in {len(by_bideg)} bidegrees")

    for r in pres.all_relations():
        bd = pres.bidegree_of(r.lead)
        if bd[0] > pmax:
            continue
        lead = element_coords([(F.one, r.lead)], bd)
        tail = element_coords(r.tail, bd)
        text = f"{pres.format_monomial(r.lead)} = {pres.format_element({m: c for c, m in r.tail})}"
        if lead != tail:
            raise CertificationError(f"cup product check failed: {text}")
        checks.append(text)
    out = {"product_checks": checks}
    if scale_note:
        out["normalization"] = scale_note
    return out


# ---------------------------------------------------------------------------
# truncated polynomial algebras

def truncated_case(d: int, n: int, characteristic: int) -> str:
    """Which closed form applies to ``K[x]/(x^(n+1))`` with ``|x| = d``."""
    if d % 2 and characteristic != 2:
        if n != 1:
            raise UnsupportedAlgebraError("an odd generator must square to zero")
        return "hkr"
    if characteristic == 0 or (n + 1) % characteristic:
        return "i"
    if characteristic != 2:
        return "ii"
    return "iii"


def truncated_closed_form(field: FieldSpec, d: int, n: int, name: str = "x") -> tuple[HHPresentation, str]:
    F = field
    case = truncated_case(d, n, F.characteristic)
    x = GeneratorSpec(name, d, n, (0, d))
    u = GeneratorSpec("u", 1, 1, (1, 0))
    v = GeneratorSpec("v", 1 - d, None, (1, -d))
    t = GeneratorSpec("t", 2 - d * (n + 1), None, (2, -d * (n + 1)))
    roles = {name: {"role": "coefficient"}, "u": {"role": "dual", "dual_of": name},
             "v": {"role": "dual", "dual_of": name}, "t": {"role": "periodic"}}
    if case == "hkr":
        P = AlgebraPresentation(F, (x, v))
    elif case == "i":
        P = AlgebraPresentation.build(F, [x, u, t], [
            ({name: n, "t": 1}, []), ({"u": 1, name: n}, [])])
    elif case == "ii":
        P = AlgebraPresentation(F, (x, replace(v, bound=1), t))
    else:
        c = F.coerce(Fraction(n + 1, 2)) if F.characteristic == 0 else ((n + 1) // 2) % 2
        tail = [(c, {"t": 1, name: n - 1})] if c else []
        P = AlgebraPresentation.build(F, [x, v, t], [({"v": 2}, tail)])
    roles = {k: r for k, r in roles.items() if k in P.names}
    return HHPresentation(P, {}, roles), case


def hh_ring(A: AlgebraPresentation, pmax: int = 4, certify: bool = True) -> HHPresentation:
    """``HH*(A; A)`` for ``A = K[x]/(x^(n+1))`` as a certified presentation.

    Certification compares the candidate's bigraded series with the periodic
    resolution and the bar complex for ``p <= pmax``, then checks cup products
    of bar representatives: standard monomials must form a basis and every
    relation must hold (after rescaling ``t`` to fix the scalar in the binomial
    relation).  Raises :class:`CertificationError` on any disagreement.
    """
    gens = A.generators
    if len(gens) != 1 or gens[0].bound is None or A.relations:
        raise UnsupportedAlgebraError("hh_ring expects K[x]/(x^(n+1)) on one generator")
    F = A.field
    x = gens[0]
    d, n = x.degree, x.bound
    cand, case = truncated_closed_form(F, d, n, x.name)
    P = cand.presentation
    cert = {"kind": f"closed_form:{case}", "window": {"pmax": pmax}}
    if certify:
        m = d // 2 if d % 2 == 0 else d
        per = cohomology(periodic_hochschild_complex(m, n, F, s_max=pmax, x_degree=d)).nonzero()
        cells = _check_series(P, per, pmax, "periodic resolution")
        model = bar_model(A, pmax)
        _check_series(P, model.H.nonzero(), pmax, "bar complex")
        prod = _certify_products(P, model, pmax, "t" if case == "iii" else None)
        cert.update({"series_cells": cells, "oracles": ["periodic", "bar"], **prod})
    return HHPresentation(P, cert, cand.roles)


# ---------------------------------------------------------------------------
# free graded-commutative algebras and module coefficients

def _suffix(name: str) -> str:
    i = len(name)
    while i > 0 and name[i - 1].isdigit():
        i -= 1
    return name[i:]


def dual_name(name: str, exterior: bool) -> str:
    base = "nu" if exterior else "u"
    s = _suffix(name)
    return f"{base}{s}" if s else f"{base}_{name}"


def _is_exterior(g: GeneratorSpec) -> bool:
    return g.bound == 1


def hh_free(ring: AlgebraPresentation, coefficients: ModuleSpec | None = None,
            pmax: int = 4, qwindow: tuple[int, int] | None = None,
            dual_names: Mapping[str, str] | None = None, certify: bool = True) -> HHPresentation:
    """HH of a free graded-commutative algebra with coefficients via a ring map.

    ``ring`` is a tensor product of polynomial algebras on even generators and
    exterior algebras on odd ones (any generators in characteristic 2).  The
    result is ``C (x) Lambda(u_x) (x) K[nu_y]``: one dual generator at
    ``(1, -|g|)`` per ring generator, exterior for polynomial ``x`` and
    polynomial for exterior ``y``.
    """
    F = ring.field
    if ring.relations or any(g.bound not in (None, 1) for g in ring.generators):
        raise UnsupportedAlgebraError("hh_free expects a free graded-commutative algebra")
    if F.characteristic != 2:
        for g in ring.generators:
            if g.bound is None and g.degree % 2:
                raise UnsupportedAlgebraError("odd polynomial generator outside characteristic 2")
            if g.bound == 1 and g.degree % 2 == 0:
                raise UnsupportedAlgebraError(
                    f"{g.name}: even exterior generator is a truncated algebra, not free")
    if coefficients is None:
        coefficients = ModuleSpec.identity(ring)
    C = coefficients.coefficients
    names = dict(dual_names or {})
    gens = [replace(g, bidegree=(0, g.degree)) for g in C.generators]
    roles = {g.name: {"role": "coefficient"} for g in C.generators}
    for g in ring.generators:
        ext = _is_exterior(g)
        nm = names.get(g.name) or dual_name(g.name, ext)
        gens.append(GeneratorSpec(nm, 1 - g.degree, None if ext else 1, (1, -g.degree)))
        roles[nm] = {"role": "dual", "dual_of": g.name}
    k = len(C.generators)
    pad = (0,) * len(ring.generators)
    rels = [Relation(r.lead + pad, tuple((c, m + pad) for c, m in r.tail)) for r in C.relations]
    P = AlgebraPresentation(F, tuple(gens), tuple(rels))
    cert: dict = {"kind": "free", "window": {"pmax": pmax}}
    if certify:
        cert.update(_certify_free(ring, coefficients, P, pmax, qwindow))
    return HHPresentation(P, cert, roles)


def _certify_free(ring, coefficients, P, pmax, qwindow) -> dict:
    C = coefficients.coefficients
    exterior = all(_is_exterior(g) for g in ring.generators)
    polynomial = all(g.bound is None for g in ring.generators)
    if not ring.generators:
        return {"provenance": "trivial"}
    if exterior and C.is_finite_dimensional():
        p = pmax
        while p > 1 and _bar_size(ring, len(C.full_basis()), p) > 60000:
            p -= 1
        model = bar_model(ring, p, coefficients)
        cells = _check_series(P, model.H.nonzero(), p, "bar complex")
        out = {"oracles": ["bar"], "series_cells": cells, "window": {"pmax": p}}
        out.update(_certify_products(P, model, p))
        return out
    if polynomial:
        if qwindow is None:
            top = max(abs(g.degree) for g in ring.generators + C.generators)
            qwindow = (-top * (len(ring.generators) + 1), top * 4)
        cx = koszul_hochschild_complex(ring, coefficients, q_window=qwindow)
        dims = cohomology(cx).nonzero()
        cells = _check_series(P, dims, len(ring.generators), "Koszul complex", qwindow)
        return {"oracles": ["koszul"], "series_cells": cells,
                "window": {"pmax": len(ring.generators), "q": list(qwindow)}}
    return {"provenance": "kunneth"}


def hh_polynomial(A: AlgebraPresentation, qwindow: tuple[int, int] | None = None,
                  certify: bool = True) -> HHPresentation:
    """``K[x_1..x_n] (x) Lambda(u_1..u_n)`` with ``u_i`` at ``(1, -|x_i|)``."""
    if A.relations or any(g.bound is not None for g in A.generators):
        raise UnsupportedAlgebraError("hh_polynomial expects a polynomial algebra")
    return hh_free(A, None, qwindow=qwindow, certify=certify)


def hh_module_coefficients(ring: AlgebraPresentation, coeffs: ModuleSpec,
                           qwindow: tuple[int, int] | None = None, dual: str = "y",
                           certify: bool = True) -> HHPresentation:
    """``HH(K[x]; C) = C (x) Lambda(y)`` with ``y`` at ``(1, -|x|)``."""
    if len(ring.generators) != 1 or ring.generators[0].bound is not None or ring.relations:
        raise UnsupportedAlgebraError("module coefficients are supported over K[x] only")
    h = hh_free(ring, coeffs, qwindow=qwindow,
                dual_names={ring.generators[0].name: dual}, certify=certify)
    cert = dict(h.certificate)
    cert["kind"] = "module_coefficients"
    return HHPresentation(h.presentation, cert, h.roles)


def hh_kunneth(h1: HHPresentation, h2: HHPresentation) -> HHPresentation:
    """Tensor product of two HH presentations over the same field."""
    if h1.field != h2.field:
        raise ValueError("Künneth product of presentations over different fields")
    clash = set(h1.presentation.names) & set(h2.presentation.names)
    if clash:
        raise ValueError(f"generator names shared by both factors: {sorted(clash)}")
    P = tensor(h1.presentation, h2.presentation)
    cert = {"kind": "kunneth", "factors": [dict(h1.certificate), dict(h2.certificate)]}
    return HHPresentation(P, cert, {**h1.roles, **h2.roles})


def hh_trivial(field: FieldSpec) -> HHPresentation:
    return HHPresentation(ground_field(field), {"kind": "trivial"}, {})


# ---------------------------------------------------------------------------
# induced maps

def hh_induced_map(direction: str, morphism: AlgebraMorphism, source: HHPresentation,
                   target: HHPresentation) -> dict[str, dict]:
    """Generator images of the map induced on HH.

    ``direction="coefficients"``: ``morphism`` is a map of coefficient
    algebras ``C -> C'``; coefficient generators go to their images and dual
    generators to the dual of the same ring generator.

    ``direction="ring"``: ``morphism`` is a ring map ``psi: R' -> R`` and the
    induced map goes ``HH(R; C) -> HH(R'; C)``.  Coefficient generators are
    fixed; the dual of a generator ``y`` of ``R`` goes to the sum over
    generators ``z`` of ``R'`` of (coefficient of ``y`` in ``psi(z)``) times
    the dual of ``z``.
    """
    S, T = source.presentation, target.presentation
    F = S.field
    out: dict[str, dict] = {}
    tduals = {r["dual_of"]: nm for nm, r in target.roles.items() if r.get("role") == "dual"}
    if direction == "coefficients":
        Cs, Ct = morphism.source, morphism.target
        for g in S.generators:
            role = source.roles.get(g.name, {}).get("role")
            if role == "coefficient":
                img = morphism.apply({Cs.monomial({g.name: 1}): F.one})
                out[g.name] = _transport(img, Ct, T)
            elif role == "dual":
                tn = tduals.get(source.roles[g.name]["dual_of"])
                out[g.name] = T.gen(tn) if tn else {}
            else:
                raise ValueError(f"no induced-map rule for generator {g.name}")
    elif direction == "ring":
        Rp, R = morphism.source, morphism.target
        for g in S.generators:
            role = source.roles.get(g.name, {}).get("role")
            if role == "coefficient":
                out[g.name] = T.gen(g.name)
            elif role == "dual":
                y = source.roles[g.name]["dual_of"]
                yi = R.index(y)
                img: dict = {}
                for z in Rp.generators:
                    lin = [0] * len(R.generators)
                    lin[yi] = 1
                    c = morphism.images[z.name].get(tuple(lin), F.zero)
                    if c != 0:
                        img = T.add(img, T.scale(c, T.gen(tduals[z.name])))
                out[g.name] = img
            else:
                raise ValueError(f"no induced-map rule for generator {g.name}")
    else:
        raise ValueError(f"unknown direction {direction!r}")
    for g in S.generators:
        for m in out[g.name]:
            if T.bidegree_of(m) != g.bidegree:
                raise ValueError(f"image of {g.name} has the wrong bidegree")
    return out


def _transport(elem: Mapping, C: AlgebraPresentation, T: AlgebraPresentation) -> dict:
    """Rewrite an element of ``C`` in the coefficient generators of ``T``."""
    F = T.field
    out: dict = {}
    for m, c in elem.items():
        tm = T.monomial({g.name: e for e, g in zip(m, C.generators) if e})
        out = T.add(out, T.scale(c, T.reduce_monomial(tm)))
    return out


def format_map(images: Mapping[str, Mapping], target: HHPresentation) -> dict[str, str]:
    return {k: target.presentation.format_element(v) for k, v in images.items()}
