"""Finitely presented graded-commutative algebras.

A presentation is an ordered list of generators, each with an internal
degree and an optional exponent bound (``x^(bound+1) = 0``), plus rewrite
rules ``lead -> tail``.  Monomials are exponent tuples aligned with the
generator order; elements are sparse ``{monomial: coefficient}`` dicts with
raw field values (see :mod:`emssloop.scalars`).

Products follow the Koszul sign rule with respect to ``GeneratorSpec.degree``.
Odd-degree generators in characteristic != 2 square to zero, so they always
receive exponent bound 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import DimensionSeries, FieldSpec, RawScalar

Monomial = tuple  # tuple[int, ...]
Element = dict  # dict[Monomial, RawScalar]

KINDS = ("polynomial", "truncated_polynomial", "exterior", "tensor", "general")


class AlgebraError(ValueError):
    pass


class InfiniteBasisError(AlgebraError):
    """Raised when a requested graded piece is not finite-dimensional."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    bound: int | None = None
    bidegree: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise AlgebraError(f"bad generator name {self.name!r}")
        if self.bound is not None and self.bound < 1:
            raise AlgebraError(f"exponent bound of {self.name} must be positive")
        if self.bidegree is not None:
            p, q = self.bidegree
            object.__setattr__(self, "bidegree", (int(p), int(q)))


@dataclass(frozen=True)
class Relation:
    """Rewrite rule ``lead -> sum(c * m for c, m in tail)``."""

    lead: Monomial
    tail: tuple = ()

    @property
    def is_monomial(self) -> bool:
        return not self.tail


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    field: FieldSpec
    generators: tuple = ()
    relations: tuple = ()
    kind: str = ""

    def __post_init__(self):
        p = self.field.characteristic
        gens = []
        for g in self.generators:
            if isinstance(g, Mapping):
                g = GeneratorSpec(g["name"], int(g["degree"]), g.get("bound"), g.get("bidegree"))
            if g.degree % 2 and p != 2 and g.bound != 1:
                g = replace(g, bound=1)
            if self.kind == "exterior" and g.bound is None:
                g = replace(g, bound=1)
            gens.append(g)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        object.__setattr__(self, "generators", tuple(gens))
        k = len(gens)
        rels = []
        for r in self.relations:
            if len(r.lead) != k or any(len(m) != k for _, m in r.tail):
                raise AlgebraError("relation monomials do not match the generator list")
            tail = tuple((self.field.coerce(c), tuple(m)) for c, m in r.tail if self.field.coerce(c) != 0)
            rels.append(Relation(tuple(r.lead), tail))
        object.__setattr__(self, "relations", tuple(rels))
        inferred = self._infer_kind()
        kind = self.kind or inferred
        if kind not in KINDS:
            raise AlgebraError(f"unknown kind {kind!r}")
        if kind == "polynomial" and any(g.bound is not None for g in gens):
            raise AlgebraError("kind 'polynomial' requires unbounded generators")
        object.__setattr__(self, "kind", kind)

    def _infer_kind(self) -> str:
        gens = self.generators
        if self.relations:
            return "general"
        if all(g.bound is None for g in gens):
            return "polynomial"
        if all(g.bound == 1 for g in gens):
            return "exterior"
        if len(gens) == 1:
            return "truncated_polynomial"
        return "tensor"

    # identity ----------------------------------------------------------
    def _key(self):
        return (self.field, self.generators, self.relations)

    def __eq__(self, other):
        return isinstance(other, AlgebraPresentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # construction helpers ---------------------------------------------
    @classmethod
    def build(cls, field: FieldSpec, generators: Sequence, relations: Sequence = (), kind: str = ""):
        """Build from generator specs and name-keyed relations.

        A relation is either ``(lead, tail)`` with ``lead`` a ``{name: exp}``
        dict and ``tail`` a list of ``(coef, {name: exp})``, or a dict with
        keys ``"lead"``/``"tail"``, or a dict ``{"terms": [...]}`` read as
        ``terms == 0`` with the first term taken as the lead.
        """
        gens = [g if isinstance(g, GeneratorSpec) else GeneratorSpec(
            g["name"], int(g["degree"]), g.get("bound"), g.get("bidegree")) for g in generators]
        names = [g.name for g in gens]
        rels = [_parse_relation(field, names, r) for r in relations]
        return cls(field, tuple(gens), tuple(rels), kind)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise AlgebraError(f"no generator named {name!r}")

    def generator(self, name: str) -> GeneratorSpec:
        return self.generators[self.index(name)]

    def monomial(self, exps: Mapping[str, int] | None = None, **kw) -> Monomial:
        exps = dict(exps or {}, **kw)
        m = [0] * len(self.generators)
        for name, e in exps.items():
            m[self.index(name)] += int(e)
        return tuple(m)

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def one(self) -> Element:
        return {self.unit_monomial: self.field.one}

    def gen(self, name: str) -> Element:
        return self.normal_form({self.monomial({name: 1}): self.field.one})

    def element(self, terms: Iterable) -> Element:
        """Element from ``[(coef, {name: exp}), ...]``."""
        out: Element = {}
        for c, exps in terms:
            _acc(self.field, out, self.monomial(exps), self.field.coerce(c))
        return self.normal_form(out)

    # degrees -------------------------------------------------------------
    def degree_of(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def bidegree_of(self, mono: Monomial) -> tuple[int, int]:
        p = q = 0
        for e, g in zip(mono, self.generators):
            if e:
                if g.bidegree is None:
                    raise AlgebraError(f"generator {g.name} has no bidegree")
                p += e * g.bidegree[0]
                q += e * g.bidegree[1]
        return p, q

    def element_degree(self, a: Element) -> int | None:
        degs = {self.degree_of(m) for m in a}
        if len(degs) > 1:
            raise AlgebraError("element is not homogeneous")
        return degs.pop() if degs else None

    # multiplication --------------------------------------------------------
    def multiply_monomials(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        """``a * b = sign * m`` for the exponent-sum monomial ``m`` (unreduced)."""
        sign = 0
        degs = [g.degree for g in self.generators]
        if self.field.characteristic != 2:
            # move each factor of b left past the factors of a with larger index
            odd_a_suffix = 0
            for i in range(len(a) - 1, -1, -1):
                if b[i] and degs[i] % 2:
                    sign += b[i] * odd_a_suffix
                if degs[i] % 2:
                    odd_a_suffix += a[i]
        return (-1 if sign % 2 else 1), tuple(x + y for x, y in zip(a, b))

    @cached_property
    def _nf_cache(self) -> dict:
        return {}

    def is_standard(self, mono: Monomial) -> bool:
        for e, g in zip(mono, self.generators):
            if g.bound is not None and e > g.bound:
                return False
        for r in self.relations:
            if all(x >= y for x, y in zip(mono, r.lead)):
                return False
        return True

    def reduce_monomial(self, mono: Monomial) -> Element:
        cache = self._nf_cache
        if mono in cache:
            return cache[mono]
        F = self.field
        out: Element = {}
        if any(g.bound is not None and e > g.bound for e, g in zip(mono, self.generators)):
            cache[mono] = out
            return out
        for r in self.relations:
            if all(x >= y for x, y in zip(mono, r.lead)):
                rest = tuple(x - y for x, y in zip(mono, r.lead))
                s, _ = self.multiply_monomials(r.lead, rest)
                for c, tm in r.tail:
                    s2, m2 = self.multiply_monomials(tm, rest)
                    coef = c if s * s2 == 1 else F.neg(c)
                    for m3, c3 in self.reduce_monomial(m2).items():
                        _acc(F, out, m3, F.mul(coef, c3))
                cache[mono] = out
                return out
        out = {mono: F.one}
        cache[mono] = out
        return out

    def normal_form(self, a: Mapping) -> Element:
        F = self.field
        out: Element = {}
        for m, c in a.items():
            if c == 0:
                continue
            for m2, c2 in self.reduce_monomial(tuple(m)).items():
                _acc(F, out, m2, F.mul(c, c2))
        return out

    def multiply(self, a: Mapping, b: Mapping) -> Element:
        F = self.field
        out: Element = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                s, m = self.multiply_monomials(ma, mb)
                c = F.mul(ca, cb)
                if s < 0:
                    c = F.neg(c)
                for m2, c2 in self.reduce_monomial(m).items():
                    _acc(F, out, m2, F.mul(c, c2))
        return out

    def add(self, a: Mapping, b: Mapping) -> Element:
        out = dict(a)
        for m, c in b.items():
            _acc(self.field, out, m, c)
        return out

    def scale(self, c: RawScalar, a: Mapping) -> Element:
        F = self.field
        c = F.coerce(c)
        return {m: F.mul(c, v) for m, v in a.items() if F.mul(c, v) != 0}

    def sub(self, a: Mapping, b: Mapping) -> Element:
        return self.add(a, self.scale(-1, b))

    def power(self, a: Mapping, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    def monomial_element(self, mono: Monomial) -> Element:
        """The product of generator powers in list order, reduced."""
        return self.reduce_monomial(tuple(mono))

    def graded_commutator(self, a: Mapping, b: Mapping) -> Element:
        da, db = self.element_degree(a) or 0, self.element_degree(b) or 0
        ba = self.multiply(b, a)
        if (da * db) % 2:
            ba = self.scale(-1, ba)
        return self.sub(self.multiply(a, b), ba)

    # relations --------------------------------------------------------------
    def all_relations(self) -> list[Relation]:
        """Bound relations ``g^(b+1) = 0`` in generator order, then rewrite rules."""
        out = []
        k = len(self.generators)
        for i, g in enumerate(self.generators):
            if g.bound is not None:
                lead = [0] * k
                lead[i] = g.bound + 1
                out.append(Relation(tuple(lead)))
        out.extend(self.relations)
        return out

    # bases ------------------------------------------------------------------
    def enumerate_monomials(self, gradings: Sequence[Sequence[int]],
                            ranges: Sequence[tuple[float, float]]) -> Iterator[Monomial]:
        """Standard monomials whose gradings fall inside the given ranges.

        ``gradings[j][i]`` is the weight of generator ``i`` in grading ``j``.
        Raises :class:`InfiniteBasisError` if some unbounded generator cannot
        be capped by the ranges.
        """
        k = len(self.generators)
        INF = float("inf")
        bounds = [g.bound for g in self.generators]
        # suffix extremes of the gradings over generators i..k-1
        smin = [[0.0] * (k + 1) for _ in gradings]
        smax = [[0.0] * (k + 1) for _ in gradings]
        for j, w in enumerate(gradings):
            for i in range(k - 1, -1, -1):
                wi = w[i]
                if bounds[i] is None:
                    lo_c = -INF if wi < 0 else 0
                    hi_c = INF if wi > 0 else 0
                else:
                    lo_c, hi_c = min(0, wi * bounds[i]), max(0, wi * bounds[i])
                smin[j][i] = smin[j][i + 1] + lo_c
                smax[j][i] = smax[j][i + 1] + hi_c

        def cap(i, cur):
            if bounds[i] is not None:
                return bounds[i]
            best = None
            for j, w in enumerate(gradings):
                wi = w[i]
                lo, hi = ranges[j]
                if wi > 0 and smin[j][i + 1] > -INF and hi < INF:
                    c = int((hi - cur[j] - smin[j][i + 1]) // wi)
                elif wi < 0 and smax[j][i + 1] < INF and lo > -INF:
                    c = int((cur[j] + smax[j][i + 1] - lo) // (-wi))
                else:
                    continue
                best = c if best is None else min(best, c)
            if best is None:
                raise InfiniteBasisError(
                    f"generator {self.generators[i].name} is unbounded in the requested window")
            return best

        mono = [0] * k

        def rec(i, cur):
            for j in range(len(gradings)):
                lo, hi = ranges[j]
                if cur[j] + smin[j][i] > hi or cur[j] + smax[j][i] < lo:
                    return
            if i == k:
                m = tuple(mono)
                if self.is_standard(m):
                    yield m
                return
            top = cap(i, cur)
            for e in range(0, top + 1):
                mono[i] = e
                nxt = [cur[j] + e * gradings[j][i] for j in range(len(gradings))]
                yield from rec(i + 1, nxt)
            mono[i] = 0

        yield from rec(0, [0] * len(gradings))

    def basis_in_degree(self, degree: int) -> list[Monomial]:
        w = [g.degree for g in self.generators]
        return sorted(self.enumerate_monomials([w], [(degree, degree)]))

    def basis_in_bidegree(self, p: int, q: int) -> list[Monomial]:
        return sorted(self.enumerate_monomials(*self._bigradings([(p, p), (q, q)])))

    def _bigradings(self, ranges):
        if any(g.bidegree is None for g in self.generators):
            raise AlgebraError("presentation is not bigraded")
        wp = [g.bidegree[0] for g in self.generators]
        wq = [g.bidegree[1] for g in self.generators]
        return [wp, wq], ranges

    def basis_in_window(self, lo: int, hi: int) -> list[Monomial]:
        w = [g.degree for g in self.generators]
        return sorted(self.enumerate_monomials([w], [(lo, hi)]),
                      key=lambda m: (self.degree_of(m), m))

    def is_finite_dimensional(self) -> bool:
        return all(g.bound is not None for g in self.generators)

    def full_basis(self) -> list[Monomial]:
        if not self.is_finite_dimensional():
            raise InfiniteBasisError("algebra is infinite-dimensional")
        k = len(self.generators)
        out = [m for m in iproduct(*[range(g.bound + 1) for g in self.generators])
               if self.is_standard(m)] if k else [()]
        return sorted(out, key=lambda m: (self.degree_of(m), m))

    def hilbert_series(self, window: tuple[int, int]) -> DimensionSeries:
        lo, hi = window
        dims: dict[int, int] = {}
        for m in self.basis_in_window(lo, hi):
            d = self.degree_of(m)
            dims[d] = dims.get(d, 0) + 1
        return DimensionSeries(dims, (lo, hi))

    def bigraded_series(self, pmax: int, qwindow: tuple[float, float] | None = None,
                        pmin: int = 0) -> dict[tuple[int, int], int]:
        qlo, qhi = qwindow if qwindow is not None else (-float("inf"), float("inf"))
        out: dict[tuple[int, int], int] = {}
        for m in self.enumerate_monomials(*self._bigradings([(pmin, pmax), (qlo, qhi)])):
            b = self.bidegree_of(m)
            out[b] = out.get(b, 0) + 1
        return dict(sorted(out.items()))

    # formatting ---------------------------------------------------------------
    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for e, g in zip(mono, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "".join(_join_names(parts)) or "1"

    def format_element(self, a: Mapping) -> str:
        if not a:
            return "0"
        F = self.field
        terms = []
        for m in sorted(a, key=lambda m: (-self.degree_of(m), m), reverse=False):
            c = a[m]
            cs = F.to_json(c)
            ms = self.format_monomial(m)
            if cs == 1:
                terms.append(ms)
            elif ms == "1":
                terms.append(str(cs))
            else:
                terms.append(f"{cs}*{ms}")
        return " + ".join(terms)

    def format_relation(self, r: Relation) -> str:
        lead = self.format_monomial(r.lead)
        if not r.tail:
            return lead
        tail = self.format_element({m: c for c, m in r.tail})
        return f"{lead} - ({tail})" if " + " in tail else f"{lead} - {tail}"

    def describe(self) -> str:
        K = self.field.symbol
        gens = self.generators
        if not gens:
            return K
        char2 = self.field.characteristic == 2
        if not self.relations and all(
                g.bound is None or (g.bound == 1 and (char2 or g.degree % 2)) for g in gens):
            ext = [g.name for g in gens if g.bound == 1]
            pol = [g.name for g in gens if g.bound is None]
            parts = []
            if ext:
                parts.append(f"Λ({','.join(ext)})")
            if pol:
                parts.append(f"{K}[{','.join(pol)}]")
            return "⊗".join(parts)
        rels = ", ".join(self.format_relation(r) for r in self.all_relations())
        return f"{K}[{','.join(self.names)}]/({rels})"

    def __repr__(self):
        degs = ", ".join(f"|{g.name}|={g.degree}" for g in self.generators)
        return f"<AlgebraPresentation {self.describe()} ({degs})>"

    # structural operations -------------------------------------------------
    def rename(self, mapping: Mapping[str, str]) -> "AlgebraPresentation":
        gens = tuple(replace(g, name=mapping.get(g.name, g.name)) for g in self.generators)
        return AlgebraPresentation(self.field, gens, self.relations, self.kind)

    def with_generators(self, gens: Sequence[GeneratorSpec]) -> "AlgebraPresentation":
        """Same relations, new generator metadata (names/degrees/bidegrees)."""
        return AlgebraPresentation(self.field, tuple(gens), self.relations, "")

    def to_json(self) -> dict:
        F = self.field
        gens = []
        for g in self.generators:
            d = {"name": g.name, "degree": g.degree}
            if g.bound is not None:
                d["bound"] = g.bound
            if g.bidegree is not None:
                d["bidegree"] = list(g.bidegree)
            gens.append(d)
        rels = []
        for r in self.relations:
            rels.append({
                "lead": self._mono_json(r.lead),
                "tail": [[F.to_json(c), self._mono_json(m)] for c, m in r.tail],
            })
        return {"field": {"characteristic": F.characteristic}, "generators": gens,
                "relations": rels, "kind": self.kind}

    def _mono_json(self, m: Monomial) -> dict:
        return {g.name: e for e, g in zip(m, self.generators) if e}

    def element_to_json(self, a: Mapping) -> list:
        F = self.field
        return [[F.to_json(a[m]), self._mono_json(m)] for m in sorted(a)]

    @classmethod
    def from_json(cls, data: Mapping, characteristic: int | None = None) -> "AlgebraPresentation":
        if not isinstance(data, Mapping):
            raise AlgebraError("algebra: expected a JSON object")
        try:
            ch = characteristic if characteristic is not None else int(data["field"]["characteristic"])
        except (KeyError, TypeError, ValueError):
            raise AlgebraError("algebra.field.characteristic: missing or not an integer") from None
        F = FieldSpec(ch)
        gens = data.get("generators", [])
        if not isinstance(gens, list):
            raise AlgebraError("algebra.generators: expected a list")
        for i, g in enumerate(gens):
            if not isinstance(g, Mapping) or "name" not in g or "degree" not in g:
                raise AlgebraError(f"algebra.generators[{i}]: needs 'name' and 'degree'")
        return cls.build(F, gens, data.get("relations", []), data.get("kind", ""))


def _join_names(parts):
    # separate multi-character names so "x3x4" stays readable
    out = []
    for i, s in enumerate(parts):
        if i and (len(parts[i - 1].split("^")[0]) > 1 or len(s.split("^")[0]) > 1):
            out.append("·")
        out.append(s)
    return out


def _acc(F: FieldSpec, out: dict, m, c) -> None:
    v = F.add(out.get(m, F.zero), c)
    if v == 0:
        out.pop(m, None)
    else:
        out[m] = v


def _parse_relation(field: FieldSpec, names: list[str], r) -> Relation:
    def mono(d):
        if not isinstance(d, Mapping):
            raise AlgebraError(f"relation monomial must be an object, got {d!r}")
        m = [0] * len(names)
        for n, e in d.items():
            if n not in names:
                raise AlgebraError(f"relation mentions unknown generator {n!r}")
            m[names.index(n)] += int(e)
        return tuple(m)

    if isinstance(r, Relation):
        return r
    if isinstance(r, Mapping) and "terms" in r:
        terms = [(field.coerce(c), mono(d)) for c, d in r["terms"]]
        if not terms:
            raise AlgebraError("empty relation")
        c0, lead = terms[0]
        if c0 == 0:
            raise AlgebraError("leading coefficient of a relation is zero")
        inv = field.inv(c0)
        tail = tuple((field.neg(field.mul(inv, c)), m) for c, m in terms[1:])
        return Relation(lead, tail)
    if isinstance(r, Mapping):
        lead, tail = r.get("lead"), r.get("tail", [])
    else:
        lead, tail = r
    return Relation(mono(lead), tuple((field.coerce(c), mono(d)) for c, d in tail))


# ---------------------------------------------------------------------------
# standard algebras

def polynomial_algebra(field: FieldSpec, degrees: Mapping[str, int]) -> AlgebraPresentation:
    return AlgebraPresentation(field, tuple(GeneratorSpec(n, d) for n, d in degrees.items()))


def exterior_algebra(field: FieldSpec, degrees: Mapping[str, int]) -> AlgebraPresentation:
    return AlgebraPresentation(field, tuple(GeneratorSpec(n, d, 1) for n, d in degrees.items()))


def truncated_polynomial(field: FieldSpec, degree: int, n: int, name: str = "x") -> AlgebraPresentation:
    """``K[x]/(x^(n+1))`` with ``|x| = degree``."""
    return AlgebraPresentation(field, (GeneratorSpec(name, degree, n),))


def ground_field(field: FieldSpec) -> AlgebraPresentation:
    return AlgebraPresentation(field, ())


def tensor(a1: AlgebraPresentation, a2: AlgebraPresentation) -> AlgebraPresentation:
    """Tensor product; generator lists are concatenated, relations inherited."""
    if a1.field != a2.field:
        raise AlgebraError("tensor of algebras over different fields")
    k1, k2 = len(a1.generators), len(a2.generators)
    rels = [Relation(r.lead + (0,) * k2, tuple((c, m + (0,) * k2) for c, m in r.tail))
            for r in a1.relations]
    rels += [Relation((0,) * k1 + r.lead, tuple((c, (0,) * k1 + m) for c, m in r.tail))
             for r in a2.relations]
    return AlgebraPresentation(a1.field, a1.generators + a2.generators, tuple(rels))


def gorenstein_dimension(alg: AlgebraPresentation) -> int:
    """``-sum(deg x_i - 1)`` for a polynomial algebra on even generators."""
    for g in alg.generators:
        if g.bound is not None or alg.relations:
            raise AlgebraError("Gorenstein dimension formula needs a polynomial algebra")
        if g.degree % 2 and alg.field.characteristic != 2:
            raise AlgebraError(f"generator {g.name} has odd degree")
    return -sum(g.degree - 1 for g in alg.generators)


# ---------------------------------------------------------------------------
# morphisms and modules

@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    source: AlgebraPresentation
    target: AlgebraPresentation
    images: Mapping[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise AlgebraError("morphism between algebras over different fields")
        imgs = {}
        for g in self.source.generators:
            img = self.target.normal_form(self.images.get(g.name, {}))
            for m in img:
                if self.target.degree_of(m) != g.degree:
                    raise AlgebraError(
                        f"image of {g.name} is not of degree {g.degree}")
            imgs[g.name] = img
        extra = set(self.images) - set(imgs)
        if extra:
            raise AlgebraError(f"images given for unknown generators {sorted(extra)}")
        object.__setattr__(self, "images", imgs)
        for r in self.source.all_relations():
            lhs = self.apply_monomial(r.lead)
            rhs: Element = {}
            for c, m in r.tail:
                rhs = self.target.add(rhs, self.target.scale(c, self.apply_monomial(m)))
            if self.target.sub(lhs, rhs):
                raise AlgebraError(
                    f"relation {self.source.format_relation(r)} does not map to zero")

    @classmethod
    def from_terms(cls, source, target, images: Mapping[str, Iterable]) -> "AlgebraMorphism":
        return cls(source, target, {n: target.element(t) for n, t in images.items()})

    @classmethod
    def identity(cls, alg: AlgebraPresentation) -> "AlgebraMorphism":
        return cls(alg, alg, {n: alg.gen(n) for n in alg.names})

    @classmethod
    def by_name(cls, source, target) -> "AlgebraMorphism":
        """Send each source generator to the target generator of the same name, else 0."""
        imgs = {}
        for g in source.generators:
            imgs[g.name] = target.gen(g.name) if g.name in target.names else {}
        return cls(source, target, imgs)

    def apply_monomial(self, mono: Monomial) -> Element:
        out = self.target.one()
        for e, g in zip(mono, self.source.generators):
            for _ in range(e):
                out = self.target.multiply(out, self.images[g.name])
        return out

    def apply(self, a: Mapping) -> Element:
        T = self.target
        out: Element = {}
        for m, c in a.items():
            out = T.add(out, T.scale(c, self.apply_monomial(m)))
        return out

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            self.images[n] == self.target.gen(n) for n in self.source.names)


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    """``coefficients`` viewed as a (symmetric) module over ``algebra`` via ``action``."""

    algebra: AlgebraPresentation
    coefficients: AlgebraPresentation
    action: AlgebraMorphism | None = None

    def __post_init__(self):
        act = self.action
        if act is None:
            act = AlgebraMorphism.by_name(self.algebra, self.coefficients)
            object.__setattr__(self, "action", act)
        if act.source != self.algebra or act.target != self.coefficients:
            raise AlgebraError("module action must be a map algebra -> coefficients")

    @classmethod
    def identity(cls, alg: AlgebraPresentation) -> "ModuleSpec":
        return cls(alg, alg, AlgebraMorphism.identity(alg))

    @classmethod
    def trivial(cls, alg: AlgebraPresentation) -> "ModuleSpec":
        k = ground_field(alg.field)
        return cls(alg, k, AlgebraMorphism(alg, k, {}))

    @property
    def is_identity(self) -> bool:
        return self.action.is_identity()

    def act(self, a: Mapping, m: Mapping) -> Element:
        return self.coefficients.multiply(self.action.apply(a), m)

    def check_associative(self, samples: int = 20) -> bool:
        """Check ``(ab)m = a(bm)`` on low-degree basis triples."""
        A, C = self.algebra, self.coefficients
        a_basis = _low_basis(A, samples)
        m_basis = _low_basis(C, samples)
        for a, b in iproduct(a_basis, a_basis):
            ab = A.multiply({a: A.field.one}, {b: A.field.one})
            for m in m_basis:
                me = {m: C.field.one}
                lhs = self.act(ab, me)
                rhs = self.act({a: A.field.one}, self.act({b: A.field.one}, me))
                if C.sub(lhs, rhs):
                    return False
        return True


def _low_basis(alg: AlgebraPresentation, limit: int) -> list:
    out = []
    d = 0
    top = max([abs(g.degree) for g in alg.generators] + [1]) * 4
    while len(out) < limit and d <= top:
        try:
            out.extend(alg.basis_in_degree(d))
        except InfiniteBasisError:
            break
        d += 1
    return out[:limit]
