"""Extension problems: from the associated graded E-infinity ring to loop homology.

A relation ``lead = tail`` of the E-infinity presentation holds in loop
homology up to terms of strictly higher filtration and the same total
degree.  If no basis monomial of E-infinity has that total degree and a
higher filtration, the relation lifts exactly.  The solver only ever
concludes from such emptiness; a nonempty candidate list is "undecided".
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product as iproduct
from typing import Mapping, Sequence

from .algebra import AlgebraError, AlgebraPresentation, GeneratorSpec, Relation
from .emss import CollapseCertificate, EInfinityPage, Refusal
from .linalg import rank


class EnumerationError(RuntimeError):
    """The candidate set is not finite for the given presentation."""


@dataclass(frozen=True)
class RelationCandidate:
    relation: Relation
    filtration: int
    total_degree: int
    label: str = ""
    kind: str = "relation"  # "relation" | "commutator"

    def to_json(self) -> dict:
        return {"relation": self.label, "filtration": self.filtration,
                "total_degree": self.total_degree, "kind": self.kind}


@dataclass(frozen=True)
class LiftObstructionReport:
    candidate: RelationCandidate
    candidates: tuple
    verdict: str
    trace: tuple = ()
    strategy: str = "degree_enumeration"

    def __post_init__(self):
        want = "holds" if not self.candidates else "undecided"
        if self.verdict != want:
            raise ValueError("verdict must be 'holds' exactly when there are no candidates")

    def to_json(self, P: AlgebraPresentation | None = None) -> dict:
        cands = [P.format_monomial(m) if P else list(m) for m in self.candidates]
        return {**self.candidate.to_json(), "verdict": self.verdict, "candidates": cands,
                "trace": list(self.trace), "strategy": self.strategy}


@dataclass(frozen=True)
class ZeroColumnLift:
    column_algebra: AlgebraPresentation
    imported_relations: tuple
    labels: tuple = ()

    def to_json(self) -> dict:
        return {"column_algebra": self.column_algebra.describe(),
                "imported_relations": list(self.labels)}


@dataclass(frozen=True)
class LoopHomology:
    """Result of assembling loop homology; ``complete`` is False for partial results."""

    presentation: AlgebraPresentation | None
    einf: EInfinityPage | None
    reports: tuple = ()
    lift: ZeroColumnLift | None = None
    unresolved: tuple = ()
    complete: bool = True
    refusal: Refusal | None = None
    sparsity: object = None

    def degrees(self) -> dict[str, int]:
        return {g.name: g.degree for g in self.presentation.generators} if self.presentation else {}

    def describe(self) -> str:
        return self.presentation.describe() if self.presentation else "(incomplete)"


# ---------------------------------------------------------------------------

def _tot(P, m) -> int:
    return P.degree_of(m)


def relation_candidates(P: AlgebraPresentation) -> list[RelationCandidate]:
    out = []
    for r in P.all_relations():
        p, q = P.bidegree_of(r.lead)
        out.append(RelationCandidate(r, p, p + q, P.format_relation(r)))
    return out


def commutator_candidates(P: AlgebraPresentation) -> list[RelationCandidate]:
    """Graded commutators ``ab - (-1)^{|a||b|} ba`` of distinct generators."""
    out = []
    k = len(P.generators)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = P.generators[i], P.generators[j]
            lead = tuple(1 if x in (i, j) else 0 for x in range(k))
            p, q = P.bidegree_of(lead)
            sign = "-" if (a.degree * b.degree) % 2 == 0 else "+"
            out.append(RelationCandidate(Relation(lead), p, p + q,
                                         f"{a.name}{b.name} {sign} {b.name}{a.name}", "commutator"))
    return out


def _check_finite(P: AlgebraPresentation) -> None:
    for g in P.generators:
        if g.bound is None and g.degree == 0:
            raise EnumerationError(
                f"generator {g.name} is unbounded with total degree 0; the degree equation "
                "does not bound its exponent")


def _pbound(total: int, dim_n: int | None) -> float:
    return float("inf") if dim_n is None else dim_n - total


def enumerate_lift_candidates(einf: EInfinityPage, rel: RelationCandidate,
                              dim_n: int | None = None) -> LiftObstructionReport:
    """All E-infinity basis monomials that could correct ``rel``.

    These are the standard monomials of total degree ``rel.total_degree``
    and filtration ``> rel.filtration`` (and ``<= dim_n - total`` when the
    dimension of N is known).
    """
    P = einf.presentation
    _check_finite(P)
    T, f = rel.total_degree, rel.filtration
    top = _pbound(T, dim_n)
    tot_w = [g.degree for g in P.generators]
    p_w = [g.bidegree[0] for g in P.generators]
    try:
        found = sorted(P.enumerate_monomials([tot_w, p_w], [(T, T), (f + 1, top)]))
    except AlgebraError as e:
        raise EnumerationError(str(e)) from None
    return LiftObstructionReport(rel, tuple(found), "holds" if not found else "undecided",
                                 tuple(_trace(P, rel, dim_n, found)))


def _trace(P, rel, dim_n, found) -> list[str]:
    def lin(w):
        return " + ".join(f"({c})*e_{g.name}" for c, g in zip(w, P.generators))

    lines = [f"relation {rel.label}: filtration {rel.filtration}, total degree {rel.total_degree}",
             f"{rel.total_degree} = {lin([g.degree for g in P.generators])}",
             f"{lin([g.bidegree[0] for g in P.generators])} > {rel.filtration}"]
    if dim_n is not None:
        lines.append(f"filtration <= dim N - total = {dim_n} - {rel.total_degree} "
                     f"= {dim_n - rel.total_degree}")
    bounds = [f"e_{g.name} <= {g.bound}" for g in P.generators if g.bound is not None]
    if bounds:
        lines.append("bounds: " + ", ".join(bounds))
    for r in P.relations:
        lines.append(f"non-standard if divisible by {P.format_monomial(r.lead)}")
    if found:
        lines.append("solutions: " + ", ".join(P.format_monomial(m) for m in found))
    else:
        lines.append("no solutions")
    return lines


def brute_force_candidates(einf: EInfinityPage, rel: RelationCandidate,
                           dim_n: int | None = None) -> list:
    """Re-enumeration with plain nested loops over a box bounded by the degree equation.

    Generators are looped in reverse order; no pruning beyond the box.
    """
    P = einf.presentation
    _check_finite(P)
    T, f = rel.total_degree, rel.filtration
    top = _pbound(T, dim_n)
    gens = P.generators
    bounded = sum(abs(g.degree) * g.bound for g in gens if g.bound is not None)
    unb = [g for g in gens if g.bound is None]
    ranges = []
    for g in reversed(gens):
        if g.bound is not None:
            ranges.append(range(g.bound + 1))
            continue
        same_sign = all((h.degree > 0) == (g.degree > 0) for h in unb)
        caps = []
        if same_sign:
            caps.append((abs(T) + bounded) // abs(g.degree))
        if top != float("inf") and g.bidegree[0] > 0:
            caps.append(int(top) // g.bidegree[0])
        if not caps:
            raise EnumerationError(f"cannot bound the exponent of {g.name} for brute force")
        ranges.append(range(min(caps) + 1))
    out = []
    for rev in iproduct(*ranges):
        m = tuple(reversed(rev))
        p = P.bidegree_of(m)[0]
        if _tot(P, m) == T and f < p <= top and P.is_standard(m):
            out.append(m)
    return sorted(out)


def zero_column_lift(einf: EInfinityPage, intersection_ring: AlgebraPresentation) -> ZeroColumnLift:
    """Import the relations of the base's intersection ring onto column 0.

    Generators are matched by name; each must sit in filtration 0 with the
    same total degree.
    """
    P = einf.presentation
    if intersection_ring.field != P.field:
        raise ValueError("intersection ring over a different field")
    col0 = [g for g in P.generators if g.bidegree[0] == 0]
    names = [g.name for g in col0]
    for g in intersection_ring.generators:
        if g.name not in names:
            raise ValueError(f"generator {g.name} does not appear in column 0")
        if P.generator(g.name).degree != g.degree:
            raise ValueError(f"generator {g.name} has a different degree in column 0")
    # column-0 series by total degree versus the ring's series
    k = len(P.generators)
    pw = [g.bidegree[0] if g.bidegree[0] > 0 else 0 for g in P.generators]
    col = {}
    for m in P.enumerate_monomials([pw], [(0, 0)]):
        if any(e and P.generators[i].bidegree[0] for i, e in enumerate(m)):
            continue
        d = P.degree_of(m)
        col[d] = col.get(d, 0) + 1
    ring = {}
    for m in intersection_ring.full_basis() if intersection_ring.is_finite_dimensional() else []:
        d = intersection_ring.degree_of(m)
        ring[d] = ring.get(d, 0) + 1
    if not intersection_ring.is_finite_dimensional() or col != ring:
        raise ValueError(f"column-0 series {col} differs from the intersection ring series {ring}")
    imported = []
    labels = []
    for r in intersection_ring.all_relations():
        emb = lambda m: P.monomial({g.name: e for e, g in zip(m, intersection_ring.generators) if e})
        rr = Relation(emb(r.lead), tuple((c, emb(m)) for c, m in r.tail))
        imported.append(rr)
        labels.append(P.format_relation(rr))
    return ZeroColumnLift(intersection_ring, tuple(imported), tuple(labels))


def epimorphism_transfer(einf: EInfinityPage, source: AlgebraPresentation,
                         images: Mapping[str, Mapping]) -> list[LiftObstructionReport]:
    """Settle target relations that are images of exact relations of ``source``.

    ``source`` is a ring known exactly (not only up to filtration) and
    ``images`` sends each of its generators to an element of the target,
    given as ``{monomial: coefficient}`` over the E-infinity generators.  The
    map must hit every target generator.  A target relation ``lead - tail``
    is settled when some source relation maps onto a nonzero multiple of it
    computed without using any target relation.  Unmatched relations get no
    report and are left to the degree enumeration.
    """
    P = einf.presentation
    F = P.field
    if source.field != F:
        raise ValueError("source ring over a different field")
    free = AlgebraPresentation(F, tuple(replace(g, bound=None) for g in P.generators))
    imgs = {}
    for g in source.generators:
        img = {tuple(m): F.coerce(c) for m, c in images.get(g.name, {}).items()}
        img = {m: c for m, c in img.items() if c != 0}
        if any(P.degree_of(m) != g.degree for m in img):
            raise ValueError(f"image of {g.name} is not of degree {g.degree}")
        imgs[g.name] = img
    extra = set(images) - set(imgs)
    if extra:
        raise ValueError(f"images given for unknown generators {sorted(extra)}")

    def push(ring, alg, m):
        out = ring.one()
        for e, g in zip(m, alg.generators):
            for _ in range(e):
                out = ring.multiply(out, imgs[g.name])
        return out

    for i, g in enumerate(P.generators):
        d = g.degree
        src = source.basis_in_degree(d)
        target = P.basis_in_degree(d)
        rows = [[P.normal_form(push(P, source, m)).get(b, F.zero) for b in target] for m in src]
        gi = tuple(int(j == i) for j in range(len(P.generators)))
        if gi not in target:
            continue  # the generator is decomposable in E-infinity
        unit = [F.one if b == gi else F.zero for b in target]
        if rank(F, rows + [unit]) != rank(F, rows):
            raise ValueError(f"generator {g.name} is not in the image: the map is not onto")

    pushed = []
    for r in source.all_relations():
        el = push(free, source, r.lead)
        for c, m in r.tail:
            el = free.sub(el, free.scale(c, push(free, source, m)))
        if el:
            pushed.append((source.format_relation(r), el))
    out = []
    for rc in relation_candidates(P):
        want = free.sub(free.monomial_element(rc.relation.lead),
                        free.normal_form({m: c for c, m in rc.relation.tail}))
        if rc.relation.lead not in want:
            continue  # forced by graded commutativity alone, nothing to transfer
        lead_c = want[rc.relation.lead]
        for label, el in pushed:
            c = el.get(rc.relation.lead, F.zero)
            if c != 0 and not free.sub(free.scale(F.div(lead_c, c), el), want):
                trace = (f"relation {rc.label}: image of source relation {label}",
                         "source map is onto, so the relation holds exactly")
                out.append(LiftObstructionReport(rc, (), "holds", trace, "epimorphism_transfer"))
                break
    return out


def loop_presentation(P: AlgebraPresentation) -> AlgebraPresentation:
    """The same ring with generators in loop homology degrees ``-(p + q)``."""
    gens = tuple(GeneratorSpec(g.name, -g.degree, g.bound, g.bidegree) for g in P.generators)
    return AlgebraPresentation(P.field, gens, P.relations)


def assemble_loop_homology(einf: EInfinityPage, reports: Sequence[LiftObstructionReport],
                           lift: ZeroColumnLift | None = None) -> LoopHomology:
    """Final presentation when every extension is settled, else a partial result."""
    P = einf.presentation
    by_lead = {}
    for rep in reports:
        if rep.candidate.kind == "relation":
            prev = by_lead.get(rep.candidate.relation.lead)
            if prev is None or prev.verdict != "holds":  # any settling strategy suffices
                by_lead[rep.candidate.relation.lead] = rep
    lifted = {r.lead: r for r in (lift.imported_relations if lift else ())}
    unresolved = []
    for rc in relation_candidates(P):
        lead = rc.relation.lead
        rep = by_lead.get(lead)
        if lead in lifted:
            li = lifted[lead]
            if P.normal_form({li.lead: P.field.one}) != P.normal_form({m: c for c, m in li.tail}):
                raise ValueError(f"imported relation {rc.label} disagrees with E-infinity")
            continue
        if rep is None:
            raise ValueError(f"no report for relation {rc.label}")
        if rep.verdict != "holds":
            unresolved.append(rc.label)
    for rep in reports:
        if rep.candidate.kind == "commutator" and rep.verdict != "holds":
            unresolved.append(rep.candidate.label)
    if unresolved:
        return LoopHomology(None, einf, tuple(reports), lift, tuple(unresolved), False)
    return LoopHomology(loop_presentation(P), einf, tuple(reports), lift, (), True)
