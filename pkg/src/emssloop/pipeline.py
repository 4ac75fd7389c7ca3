"""End-to-end loop homology computations."""
from __future__ import annotations

from .algebra import AlgebraMorphism, AlgebraPresentation, ModuleSpec
from .emss import (CollapseCertificate, E2Page, Refusal, WindowTooNarrowError, assume_collapse,
                   build_e2, collapse_by_sparsity, einfinity)
from .extension import (LoopHomology, assemble_loop_homology, brute_force_candidates,
                        commutator_candidates, enumerate_lift_candidates, relation_candidates,
                        zero_column_lift)


class SolverDisagreement(RuntimeError):
    pass


def decide_collapse(page: E2Page, citation: str | None = None):
    """Returns ``(certificate or None, sparsity outcome)``.

    The sparsity outcome is a certificate, a :class:`Refusal`, or the message
    of a :class:`WindowTooNarrowError`; it is reported even when a citation
    is used.
    """
    try:
        sparsity = collapse_by_sparsity(page)
    except WindowTooNarrowError as e:
        sparsity = Refusal(f"window too narrow: {e}")
    if citation:
        return assume_collapse(page, citation), sparsity
    if isinstance(sparsity, CollapseCertificate):
        return sparsity, sparsity
    return None, sparsity


def _solve(page: E2Page, dim_n: int, citation: str | None, intersection_ring,
           commutators: bool) -> LoopHomology:
    cert, sparsity = decide_collapse(page, citation)
    if cert is None:
        return LoopHomology(None, None, (), None, (), False, sparsity, sparsity)
    einf = einfinity(page, cert)
    P = einf.presentation
    cands = relation_candidates(P)
    if commutators:
        cands += commutator_candidates(P)
    reports = []
    for rc in cands:
        rep = enumerate_lift_candidates(einf, rc, dim_n)
        if rep.verdict == "holds" and brute_force_candidates(einf, rc, dim_n):
            raise SolverDisagreement(f"brute force finds candidates for {rc.label}")
        reports.append(rep)
    lift = zero_column_lift(einf, intersection_ring) if intersection_ring is not None else None
    res = assemble_loop_homology(einf, reports, lift)
    return LoopHomology(res.presentation, res.einf, res.reports, res.lift, res.unresolved,
                        res.complete, None, sparsity)


def loop_homology(M: AlgebraPresentation, dim_n: int, citation: str | None = None,
                  pmax: int = 4, intersection_ring: AlgebraPresentation | None = None,
                  lift: bool = True) -> LoopHomology:
    """Loop homology of a Poincaré duality space with cohomology ``M``.

    The intersection ring defaults to ``M`` itself (cap product with the
    fundamental class).  The loop product is graded-commutative, so no
    commutator checks are run.
    """
    page = build_e2(M, None, dim_n, pmax, ("M", "M"))
    ring = (intersection_ring or M) if lift else None
    return _solve(page, dim_n, citation, ring, commutators=False)


def relative_loop_homology(M: AlgebraPresentation, N: AlgebraPresentation,
                           f: AlgebraMorphism | None, dim_n: int, citation: str | None = None,
                           pmax: int = 4) -> LoopHomology:
    """Loop homology of ``L_N M`` for a map ``N -> M`` with ``f* = f``.

    ``f`` defaults to sending each generator of ``M`` to the generator of ``N``
    with the same name (or zero).
    """
    if f is None:
        f = AlgebraMorphism.by_name(M, N)
    module = ModuleSpec(M, N, f)
    page = build_e2(M, module, dim_n, pmax, ("M", "N"))
    return _solve(page, dim_n, citation, N, commutators=True)
