"""E2 and E-infinity pages of the loop-homology spectral sequence.

The E2 page is a Hochschild cohomology presentation; a class at ``(p, q)``
contributes to loop homology in degree ``-(p + q)`` (the shifted grading
``H_{* + dim N}``).  Differentials go ``d_r: (p, q) -> (p + r, q - r + 1)``
for ``r >= 2``.

Collapse is never guessed.  It is either proved by bidegree sparsity (no
pair of basis monomials that a differential could connect) or taken from a
citation supplied by the caller.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product as iproduct
from typing import Mapping

from .algebra import AlgebraError, AlgebraPresentation, ModuleSpec, Relation
from .hochschild import (HHPresentation, UnsupportedAlgebraError, hh_free, hh_module_coefficients,
                         hh_polynomial, hh_ring, hh_trivial)


class WindowTooNarrowError(RuntimeError):
    """Sparsity could not be decided from the finite window that was searched."""


@dataclass(frozen=True, eq=False)
class E2Page:
    hh: HHPresentation
    shift: int
    space_labels: tuple = ("M", "N")
    pmax: int = 4

    def __post_init__(self):
        for g in self.hh.presentation.generators:
            if g.bidegree[0] < 0:
                raise ValueError("E2 page must be right-half-plane")

    @property
    def presentation(self) -> AlgebraPresentation:
        return self.hh.presentation

    def series(self, pmax: int | None = None, qwindow=None) -> dict:
        return self.presentation.bigraded_series(self.pmax if pmax is None else pmax, qwindow)

    def generator_degrees(self) -> dict[str, int]:
        """Loop homology degree ``-(p + q)`` of each generator."""
        return {g.name: -(g.bidegree[0] + g.bidegree[1]) for g in self.presentation.generators}

    def to_json(self, pmax: int | None = None, qwindow=None) -> dict:
        dims = [{"p": p, "q": q, "dim": d} for (p, q), d in self.series(pmax, qwindow).items()]
        return {"presentation": self.hh.to_json(), "shift": self.shift,
                "spaces": list(self.space_labels), "dims": dims}


@dataclass(frozen=True)
class CollapseCertificate:
    kind: str  # "sparsity_forced" | "cited_theorem"
    detail: str
    citation: str = ""
    page_id: int = 0

    def to_json(self) -> dict:
        d = {"kind": self.kind, "detail": self.detail}
        if self.citation:
            d["citation"] = self.citation
        return d


@dataclass(frozen=True)
class Refusal:
    """Sparsity does not force collapse; nothing is claimed about the differentials."""

    reason: str
    witness: tuple = ()

    def to_json(self) -> dict:
        return {"kind": "refusal", "reason": self.reason,
                "witness": [list(w) for w in self.witness],
                "advice": "supply a citation via assume_collapse (--assume-collapse)"}


@dataclass(frozen=True, eq=False)
class EInfinityPage:
    page: E2Page
    collapse: CollapseCertificate
    filtration_model: str = "decreasing, exhaustive on bounded windows"

    @property
    def presentation(self) -> AlgebraPresentation:
        return self.page.presentation

    def series(self, pmax: int | None = None, qwindow=None) -> dict:
        return self.page.series(pmax, qwindow)


# ---------------------------------------------------------------------------

def build_e2(M: AlgebraPresentation, N: ModuleSpec | None = None, dim_n: int = 0,
             pmax: int = 4, labels: tuple = ("M", "N"), certify: bool = True) -> E2Page:
    """E2 = HH(H*(M); H*(N)), dispatched on the shape of ``M``.

    ``N`` defaults to ``H*(M)`` with the identity action (the free loop space).
    """
    if N is None:
        N = ModuleSpec.identity(M)
    if N.algebra != M:
        raise AlgebraError("N must be a module over H*(M)")
    gens = M.generators
    F = M.field
    if not gens:
        if N.coefficients.generators:
            raise UnsupportedAlgebraError("a point as M needs a point as N")
        hh = hh_trivial(F)
    elif N.is_identity and len(gens) == 1 and gens[0].bound is not None and not M.relations:
        hh = hh_ring(M, pmax=pmax, certify=certify).simplified()
    elif M.relations:
        raise UnsupportedAlgebraError("algebras with extra relations are outside the supported catalogue")
    elif all(g.bound is None for g in gens) and len(gens) == 1 and not N.is_identity:
        hh = hh_module_coefficients(M, N, certify=certify)
    elif all(g.bound is None for g in gens) and N.is_identity:
        hh = hh_polynomial(M, certify=certify)
    else:
        try:
            hh = hh_free(M, N, pmax=pmax, certify=certify)
        except UnsupportedAlgebraError as e:
            raise UnsupportedAlgebraError(f"unsupported algebra kind: {e}") from None
    return E2Page(hh, dim_n, tuple(labels), pmax)


def _tot(P: AlgebraPresentation, m) -> int:
    return P.degree_of(m)


def _pcol(P: AlgebraPresentation, m) -> int:
    return P.bidegree_of(m)[0]


def _witness(P, s, t) -> tuple:
    return ((P.format_monomial(s), *P.bidegree_of(s)), (P.format_monomial(t), *P.bidegree_of(t)))


def _effective_cap(P: AlgebraPresentation, B, gi: int) -> float:
    """Smallest ``e`` with ``B * g^e`` non-standard (infinity if none)."""
    cap = float("inf")
    for r in P.relations:
        L = r.lead
        if all(L[i] <= B[i] for i in range(len(B)) if i != gi):
            cap = min(cap, L[gi])
    return cap


def _bounded_shape(P: AlgebraPresentation) -> AlgebraPresentation:
    """Same standard monomials, with rules ``g^e -> ...`` turned into exponent bounds."""
    gens = list(P.generators)
    keep = []
    for r in P.relations:
        support = [i for i, e in enumerate(r.lead) if e]
        if len(support) == 1:
            i = support[0]
            b = r.lead[i] - 1
            if b >= 1 and (gens[i].bound is None or gens[i].bound > b):
                gens[i] = replace(gens[i], bound=b)
                continue
        keep.append(Relation(r.lead))
    return AlgebraPresentation(P.field, tuple(gens), tuple(keep))


def collapse_by_sparsity(page: E2Page, window: tuple[int, tuple[float, float] | None] | None = None):
    """Certify collapse when no differential ``d_r``, ``r >= 2``, can connect two
    nonzero groups.  Returns a :class:`CollapseCertificate` or a :class:`Refusal`.

    With at most one unbounded generator of nonzero total degree the check is
    global (every pair of basis monomials is covered by a finite family
    argument).  Otherwise pairs are searched in ``window = (pmax, qwindow)``;
    a witness gives a refusal, and the absence of one raises
    :class:`WindowTooNarrowError`.
    """
    P = _bounded_shape(page.presentation)
    k = len(P.generators)
    unbounded = [i for i, g in enumerate(P.generators) if g.bound is None]
    if not unbounded:
        basis = list(P.enumerate_monomials([[0] * k], [(0, 0)]))
        for s, t in iproduct(basis, basis):
            if _tot(P, t) == _tot(P, s) + 1 and _pcol(P, t) - _pcol(P, s) >= 2:
                return Refusal("a differential could connect two nonzero groups", _witness(P, s, t))
        return CollapseCertificate(
            "sparsity_forced",
            f"finite page ({len(basis)} basis monomials): no pair (p,q), (p+r,q-r+1) with r >= 2 "
            "has both groups nonzero", page_id=id(page))
    if len(unbounded) == 1 and P.generators[unbounded[0]].degree != 0:
        gi = unbounded[0]
        g = P.generators[gi]
        tau, pg = g.degree, g.bidegree[0]
        weights = [[1 if i == gi else 0 for i in range(k)]]
        base = list(P.enumerate_monomials(weights, [(0, 0)]))
        caps = {B: _effective_cap(P, B, gi) for B in base}
        for Bs, Bt in iproduct(base, base):
            num = 1 - _tot(P, Bt) + _tot(P, Bs)
            if num % tau:
                continue
            delta = num // tau
            if _pcol(P, Bt) - _pcol(P, Bs) + delta * pg < 2:
                continue
            lo = max(0, -delta)
            hi = min(caps[Bs], caps[Bt] - delta) - 1
            if lo <= hi:
                s = tuple(e + (lo if i == gi else 0) for i, e in enumerate(Bs))
                t = tuple(e + (lo + delta if i == gi else 0) for i, e in enumerate(Bt))
                return Refusal("a differential could connect two nonzero groups", _witness(P, s, t))
        return CollapseCertificate(
            "sparsity_forced",
            f"all basis monomials are B*{g.name}^e with {len(base)} choices of B; for every pair "
            f"the degree equation tot(t) = tot(s)+1 forces a filtration jump below 2 "
            f"({g.name} at {g.bidegree}, total {tau})", page_id=id(page))
    # several unbounded generators: finite search only
    pmax, qwin = window if window is not None else (page.pmax, None)
    if qwin is None:
        qwin = (-float("inf"), float("inf"))
    try:
        basis = list(P.enumerate_monomials(*P._bigradings([(0, pmax), qwin])))
    except AlgebraError as e:
        raise WindowTooNarrowError(f"window does not bound the page: {e}") from None
    by_tot: dict = {}
    for m in basis:
        by_tot.setdefault(_tot(P, m), []).append(m)
    for s in basis:
        for t in by_tot.get(_tot(P, s) + 1, []):
            if _pcol(P, t) - _pcol(P, s) >= 2:
                return Refusal("a differential could connect two nonzero groups", _witness(P, s, t))
    raise WindowTooNarrowError(
        f"no obstruction for p <= {pmax}, but the page has several unbounded generators "
        "so the finite search does not prove collapse")


def assume_collapse(page: E2Page, citation: str) -> CollapseCertificate:
    if not citation or not citation.strip():
        raise ValueError("assume_collapse needs a nonempty citation")
    return CollapseCertificate("cited_theorem", f"collapse taken from: {citation.strip()}",
                               citation.strip(), id(page))


def einfinity(page: E2Page, cert: CollapseCertificate) -> EInfinityPage:
    if not isinstance(cert, CollapseCertificate):
        raise TypeError("einfinity needs a collapse certificate")
    if cert.page_id != id(page):
        raise ValueError("collapse certificate belongs to a different page")
    return EInfinityPage(page, cert)


def brute_force_sparsity(page: E2Page, pmax: int, qwindow) -> bool:
    """Independent cell-by-cell check: True when no d_r has both ends nonzero."""
    dims = page.series(pmax, qwindow)
    for (p, q), d in dims.items():
        for r in range(2, pmax - p + 1):
            if dims.get((p + r, q - r + 1)):
                return False
    return True
