"""Finite graded (co)chain complexes and the resolutions used to compute HH.

Every complex is split by internal degree ``q``; differentials preserve ``q``
and move the homological index ``s`` by one (up for cochain complexes, down
for chain complexes).  A differential is stored as the list of images of the
source basis, each a sparse ``{target_index: coefficient}`` dict.

Builders always construct one stage beyond the last index whose cohomology
is wanted, so that both the incoming and outgoing maps are known there.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations, product as iproduct
from typing import Iterable, Mapping, Sequence

from .algebra import (AlgebraError, AlgebraPresentation, InfiniteBasisError, ModuleSpec,
                      truncated_polynomial, _acc)
from .linalg import Quotient, kernel
from .scalars import FieldSpec

Key = tuple  # (s, q)


class ComplexError(ValueError):
    pass


@dataclass
class FreeComplex:
    field: FieldSpec
    direction: str
    modules: dict = field(default_factory=dict)  # s -> {q: [labels]}
    differentials: dict = field(default_factory=dict)  # (s, q) -> [ {idx: coef} ]
    name: str = ""

    def __post_init__(self):
        if self.direction not in ("chain", "cochain"):
            raise ComplexError(f"bad direction {self.direction!r}")

    @property
    def top(self) -> int:
        return max(self.modules) if self.modules else -1

    def step(self, s: int) -> int:
        return s + 1 if self.direction == "cochain" else s - 1

    def basis(self, s: int, q: int) -> list:
        return self.modules.get(s, {}).get(q, [])

    def degrees(self, s: int) -> list[int]:
        return sorted(self.modules.get(s, {}))

    def images(self, s: int, q: int) -> list:
        n = len(self.basis(s, q))
        imgs = self.differentials.get((s, q))
        if imgs is None:
            return [{} for _ in range(n)]
        return imgs

    def columns(self, s: int, q: int) -> list[list]:
        """Dense matrix of ``d`` on the ``(s, q)`` block, as a list of columns."""
        F = self.field
        t = self.step(s)
        nt = len(self.basis(t, q))
        cols = []
        for img in self.images(s, q):
            col = [F.zero] * nt
            for i, c in img.items():
                col[i] = c
            cols.append(col)
        return cols

    def computable(self, s: int) -> bool:
        """Whether both maps around index ``s`` are known."""
        return 0 <= s and s + 1 in self.modules

    def module_dims(self) -> dict[Key, int]:
        return {(s, q): len(b) for s, qs in sorted(self.modules.items())
                for q, b in sorted(qs.items()) if b}


def check_d_squared(cx: FreeComplex) -> bool:
    """Exact check that consecutive differentials compose to zero."""
    F = cx.field
    for (s, q), imgs in cx.differentials.items():
        t = cx.step(s)
        nxt = cx.differentials.get((t, q))
        if nxt is None:
            continue
        for img in imgs:
            out: dict = {}
            for i, c in img.items():
                for j, c2 in nxt[i].items():
                    _acc(F, out, j, F.mul(c, c2))
            if out:
                return False
    return True


@dataclass
class CohomologyResult:
    complex: FreeComplex
    dims: dict = field(default_factory=dict)  # (s, q) -> dim
    quotients: dict = field(default_factory=dict)  # (s, q) -> Quotient

    def representatives(self, s: int, q: int) -> list:
        qt = self.quotients.get((s, q))
        return qt.representatives if qt else []

    def coordinates(self, s: int, q: int, v: Sequence) -> list:
        qt = self.quotients.get((s, q))
        if qt is None:
            raise ComplexError(f"no cohomology computed at {(s, q)}")
        return qt.coordinates(v)

    def dim(self, s: int, q: int) -> int:
        return self.dims.get((s, q), 0)

    def nonzero(self) -> dict[Key, int]:
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def to_json(self) -> list:
        return [{"p": s, "q": q, "dim": d} for (s, q), d in sorted(self.dims.items()) if d]


def cohomology(cx: FreeComplex, s_range: tuple[int, int] | None = None,
               q_range: tuple[float, float] | None = None, check: bool = True) -> CohomologyResult:
    """Exact (co)homology at each computable ``(s, q)``.

    Raises :class:`ComplexError` when ``d o d != 0`` (a construction bug).
    """
    if check and not check_d_squared(cx):
        raise ComplexError(f"d o d != 0 in complex {cx.name or '?'}")
    F = cx.field
    res = CohomologyResult(cx)
    for s in sorted(cx.modules):
        if not cx.computable(s):
            continue
        if s_range and not (s_range[0] <= s <= s_range[1]):
            continue
        prev = s - 1 if cx.direction == "cochain" else s + 1
        for q in cx.degrees(s):
            if q_range and not (q_range[0] <= q <= q_range[1]):
                continue
            n = len(cx.basis(s, q))
            if not n:
                continue
            out_cols = cx.columns(s, q)
            Z = kernel(F, out_cols, len(cx.basis(cx.step(s), q)))
            B = cx.columns(prev, q) if prev in cx.modules else []
            qt = Quotient(F, Z, B)
            res.dims[(s, q)] = qt.dim
            res.quotients[(s, q)] = qt
    return res


# ---------------------------------------------------------------------------
# helpers

def _finite_basis(alg: AlgebraPresentation) -> list:
    try:
        return alg.full_basis()
    except InfiniteBasisError:
        raise ComplexError("coefficient algebra must be finite-dimensional here") from None


def _in(window, q) -> bool:
    return window is None or window[0] <= q <= window[1]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# 2-periodic resolution of K[x]/(x^(n+1))

def periodic_stage_degree(s: int, n: int, d: int, odd_mode: bool) -> int:
    """Internal degree of the free generator of stage ``s``."""
    if odd_mode:
        return s * d
    k, r = divmod(s, 2)
    return k * d * (n + 1) + (d if r else 0)


def periodic_hochschild_complex(m: int, n: int, field: FieldSpec,
                                coefficients: ModuleSpec | None = None, s_max: int = 4,
                                x_degree: int | None = None,
                                q_window: tuple[float, float] | None = None) -> FreeComplex:
    """Hom over the enveloping algebra from the periodic resolution of
    ``A = K[x]/(x^(n+1))`` into ``coefficients``.

    ``|x| = 2m`` unless ``x_degree`` is given.  For odd ``|x|`` outside
    characteristic 2 (so ``n = 1``) every stage uses ``x(x)1 - 1(x)x``.
    """
    if s_max < 0:
        raise ComplexError("s_max must be non-negative")
    if n < 1:
        raise ComplexError("n must be positive")
    d = 2 * m if x_degree is None else x_degree
    F = field
    odd_mode = d % 2 == 1 and F.characteristic != 2
    if odd_mode and n != 1:
        raise ComplexError("an odd generator squares to zero; n must be 1")
    A = truncated_polynomial(F, d, n)
    if coefficients is None:
        coefficients = ModuleSpec.identity(A)
    ga = coefficients.algebra.generators
    if (len(ga) != 1 or ga[0].degree != d or ga[0].bound != n
            or coefficients.algebra.relations or coefficients.algebra.field != F):
        raise ComplexError("coefficients are not a module over the stated truncated algebra")
    C = coefficients.coefficients
    phi_x = coefficients.action.images[ga[0].name]
    cb = _finite_basis(C)
    powers = [C.one()]
    for _ in range(n):
        powers.append(C.multiply(powers[-1], phi_x))

    cx = FreeComplex(F, "cochain", name=f"periodic(m={m},n={n},{F.symbol})")
    index: dict[int, dict] = {}
    for s in range(s_max + 2):
        e = periodic_stage_degree(s, n, d, odd_mode)
        stage: dict[int, list] = {}
        for mu in cb:
            q = C.degree_of(mu) - e
            if _in(q_window, q):
                stage.setdefault(q, []).append(mu)
        cx.modules[s] = stage
        index[s] = {q: {mu: i for i, mu in enumerate(b)} for q, b in stage.items()}

    def act(i: int, mu_el: dict, j: int, mu_deg: int) -> dict:
        # (x^i (x) x^j) . mu = (-1)^{|x^j||mu|} x^i mu x^j
        left = C.multiply(powers[i], mu_el)
        out = C.multiply(left, powers[j])
        if (j * d * mu_deg) % 2:
            out = C.scale(-1, out)
        return out

    for s in range(s_max + 1):
        t = s + 1
        use_diff = odd_mode or t % 2 == 1
        omega_deg = d if use_diff else n * d
        for q, b in cx.modules[s].items():
            tidx = index[t].get(q, {})
            imgs = []
            for mu in b:
                mu_el = {mu: F.one}
                md = C.degree_of(mu)
                if use_diff:
                    val = C.sub(act(1, mu_el, 0, md), act(0, mu_el, 1, md))
                else:
                    val = {}
                    for i in range(n + 1):
                        val = C.add(val, act(i, mu_el, n - i, md))
                if (omega_deg * q) % 2:
                    val = C.scale(-1, val)
                img = {}
                for mono, c in val.items():
                    if mono not in tidx:
                        raise ComplexError("differential leaves the degree window")
                    img[tidx[mono]] = c
                imgs.append(img)
            cx.differentials[(s, q)] = imgs
    return cx


# ---------------------------------------------------------------------------
# normalized bar complex

def bar_complex_truncated(alg: AlgebraPresentation, coefficients: ModuleSpec | None = None,
                          p_max: int = 4, q_window: tuple[float, float] | None = None) -> FreeComplex:
    """Normalized Hochschild cochains ``Hom(Abar^(x)s, C)`` for ``s <= p_max + 1``.

    Cochain basis labels are ``(T, mu)`` with ``T`` a tuple of non-unit basis
    monomials of ``alg`` and ``mu`` a basis monomial of the coefficients; the
    cochain sends ``T`` to ``mu`` and every other basis tensor to zero.  Its
    internal degree is ``|mu| - sum |T_i|``.
    """
    if not alg.is_finite_dimensional():
        raise ComplexError("bar complex needs a finite-dimensional algebra")
    F = alg.field
    if coefficients is None:
        coefficients = ModuleSpec.identity(alg)
    if coefficients.algebra != alg:
        raise ComplexError("coefficients are a module over a different algebra")
    C = coefficients.coefficients
    unit = alg.unit_monomial
    abar = [mono for mono in alg.full_basis() if mono != unit]
    adeg = {a: alg.degree_of(a) for a in abar}
    cb = _finite_basis(C)
    cdeg = {mu: C.degree_of(mu) for mu in cb}
    phi = {a: coefficients.action.apply({a: F.one}) for a in abar}

    # c -> [(a, b, coefficient of c in a*b)]
    fact: dict = {c: [] for c in abar}
    for a, b in iproduct(abar, abar):
        for c, lam in alg.multiply({a: F.one}, {b: F.one}).items():
            if c in fact:
                fact[c].append((a, b, lam))

    cx = FreeComplex(F, "cochain", name=f"bar({alg.describe()})")
    index: dict[int, dict] = {}
    for s in range(p_max + 2):
        stage: dict[int, list] = {}
        for T in iproduct(abar, repeat=s):
            td = sum(adeg[a] for a in T)
            for mu in cb:
                q = cdeg[mu] - td
                if _in(q_window, q):
                    stage.setdefault(q, []).append((T, mu))
        cx.modules[s] = stage
        index[s] = {q: {lab: i for i, lab in enumerate(b)} for q, b in stage.items()}

    for s in range(p_max + 1):
        for q, b in cx.modules[s].items():
            tidx = index[s + 1].get(q, {})
            imgs = []
            for T, mu in b:
                out: dict = {}
                mu_el = {mu: F.one}

                def put(T2, val, sign):
                    for mu2, c in val.items():
                        j = tidx[(T2, mu2)]
                        _acc(F, out, j, c if sign > 0 else F.neg(c))

                for a in abar:
                    # (-1)^{|a||f|} a f(...)
                    put((a,) + T, C.multiply(phi[a], mu_el), _sign(adeg[a] * q))
                    # (-1)^{s+1} f(...) a
                    put(T + (a,), C.multiply(mu_el, phi[a]), _sign(s + 1))
                for i in range(1, s + 1):
                    # (-1)^i f(.., a_i a_{i+1}, ..)
                    for a, bb, lam in fact[T[i - 1]]:
                        T2 = T[:i - 1] + (a, bb) + T[i:]
                        put(T2, {mu: lam}, _sign(i))
                imgs.append(out)
            cx.differentials[(s, q)] = imgs
    return cx


# ---------------------------------------------------------------------------
# Koszul complexes over polynomial rings

def _require_polynomial(ring: AlgebraPresentation) -> None:
    if ring.relations or any(g.bound is not None for g in ring.generators):
        raise ComplexError("Koszul complexes need a polynomial ring")
    if ring.field.characteristic != 2 and any(g.degree % 2 for g in ring.generators):
        raise ComplexError("Koszul complexes need even-degree generators")


def koszul_tor_complex(ring: AlgebraPresentation, left: ModuleSpec, right: ModuleSpec,
                       window: tuple[int, int]) -> FreeComplex:
    """Koszul chain complex ``L (x) Lambda(sigma x_i) (x) N`` computing ``Tor^ring(L, N)``.

    Basis labels are ``(l, I, n)``; ``sigma x_i`` has homological degree 1 and
    internal degree ``|x_i|``.  Only internal degrees inside ``window`` are
    built; the differential preserves internal degree, so the window is exact.
    """
    _require_polynomial(ring)
    if left.algebra != ring or right.algebra != ring:
        raise ComplexError("modules are not over the given ring")
    F = ring.field
    L, N = left.coefficients, right.coefficients
    k = len(ring.generators)
    xdeg = [g.degree for g in ring.generators]
    lx = [left.action.images[g.name] for g in ring.generators]
    nx = [right.action.images[g.name] for g in ring.generators]
    lo, hi = window
    cx = FreeComplex(F, "chain", name=f"koszul_tor({ring.describe()})")
    index: dict[int, dict] = {}
    kl = len(L.generators)
    wl = [g.degree for g in L.generators] + [g.degree for g in N.generators]
    pair = AlgebraPresentation(F, tuple(replace(g, name="L:" + g.name) for g in L.generators)
                               + tuple(replace(g, name="N:" + g.name) for g in N.generators), ())
    for s in range(k + 2):
        stage: dict[int, list] = {}
        for I in combinations(range(k), s):
            di = sum(xdeg[i] for i in I)
            for mono in pair.enumerate_monomials([wl], [(lo - di, hi - di)]):
                l, n_ = mono[:kl], mono[kl:]
                if not (L.is_standard(l) and N.is_standard(n_)):
                    continue
                D = L.degree_of(l) + N.degree_of(n_) + di
                stage.setdefault(D, []).append((l, I, n_))
        for q in stage:
            stage[q].sort()
        cx.modules[s] = stage
        index[s] = {q: {lab: i for i, lab in enumerate(b)} for q, b in stage.items()}

    for s in range(1, k + 1):
        for q, b in cx.modules[s].items():
            tidx = index[s - 1].get(q, {})
            imgs = []
            for l, I, n_ in b:
                out: dict = {}
                for pos, i in enumerate(I):
                    rest = I[:pos] + I[pos + 1:]
                    sg = _sign(pos)
                    for l2, c in L.multiply({l: F.one}, lx[i]).items():
                        _acc(F, out, tidx[(l2, rest, n_)], c if sg > 0 else F.neg(c))
                    for n2, c in N.multiply(nx[i], {n_: F.one}).items():
                        _acc(F, out, tidx[(l, rest, n2)], F.neg(c) if sg > 0 else c)
                imgs.append(out)
            cx.differentials[(s, q)] = imgs
    return cx


def koszul_hochschild_complex(ring: AlgebraPresentation, coefficients: ModuleSpec | None = None,
                              q_window: tuple[int, int] | None = None) -> FreeComplex:
    """``Hom`` from the Koszul bimodule resolution of a polynomial ring into ``coefficients``.

    Basis labels are ``(mu, I)``: the cochain sending ``sigma x_I`` to ``mu``,
    with ``s = |I|`` and internal degree ``|mu| - sum_{i in I} |x_i|``.
    """
    _require_polynomial(ring)
    F = ring.field
    if coefficients is None:
        coefficients = ModuleSpec.identity(ring)
    if coefficients.algebra != ring:
        raise ComplexError("coefficients are a module over a different ring")
    C = coefficients.coefficients
    k = len(ring.generators)
    xdeg = [g.degree for g in ring.generators]
    phi = [coefficients.action.images[g.name] for g in ring.generators]
    if q_window is None and not C.is_finite_dimensional():
        raise ComplexError("an infinite coefficient module needs a q window")
    cx = FreeComplex(F, "cochain", name=f"koszul_hh({ring.describe()})")
    index: dict[int, dict] = {}
    cw = [g.degree for g in C.generators]
    for s in range(k + 2):
        stage: dict[int, list] = {}
        for I in combinations(range(k), s):
            di = sum(xdeg[i] for i in I)
            if q_window is None:
                mus = C.full_basis()
            else:
                mus = C.enumerate_monomials([cw], [(q_window[0] + di, q_window[1] + di)])
            for mu in mus:
                stage.setdefault(C.degree_of(mu) - di, []).append((mu, I))
        for q in stage:
            stage[q].sort()
        cx.modules[s] = stage
        index[s] = {q: {lab: i for i, lab in enumerate(b)} for q, b in stage.items()}

    for s in range(k + 1):
        for q, b in cx.modules[s].items():
            tidx = index[s + 1].get(q, {})
            imgs = []
            for mu, I in b:
                out: dict = {}
                md = C.degree_of(mu)
                mu_el = {mu: F.one}
                for j in range(k):
                    if j in I:
                        continue
                    J = tuple(sorted(I + (j,)))
                    sg = _sign(J.index(j) + xdeg[j] * q)
                    val = C.multiply(phi[j], mu_el)
                    right = C.multiply(mu_el, phi[j])
                    if (xdeg[j] * md) % 2:
                        right = C.scale(-1, right)
                    val = C.sub(val, right)
                    for mu2, c in val.items():
                        if (mu2, J) not in tidx:
                            raise ComplexError("differential leaves the degree window")
                        _acc(F, out, tidx[(mu2, J)], c if sg > 0 else F.neg(c))
                imgs.append(out)
            cx.differentials[(s, q)] = imgs
    return cx


def euler_characteristic(dims: Mapping[Key, int], q: int) -> int:
    return sum((-1) ** s * d for (s, qq), d in dims.items() if qq == q)
