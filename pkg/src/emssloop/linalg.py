"""Exact linear algebra over Q and F_p on small dense matrices.

Vectors are lists of raw field values (see :class:`FieldSpec`).  Rank over Q
uses fraction-free (Bareiss) elimination on integer rows; everything else
works with ordinary row reduction, which is exact in both settings.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .scalars import FieldSpec, RawScalar

Vector = list


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for c in r:
            den = lcm(den, Fraction(c).denominator)
        out.append([int(Fraction(c) * den) for c in r])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    m = [r[:] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            row_i, row_r = m[i], m[rank]
            m[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(F: FieldSpec, rows: Sequence[Sequence[RawScalar]]) -> int:
    """Rank of the matrix whose rows are ``rows``."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if F.characteristic == 0:
        return _bareiss_rank(_integer_rows(rows))
    return len(rref(F, rows)[1])


_ZERO = Fraction(0)


def _int_or_fraction(F: FieldSpec, c):
    if type(c) is int:
        return c
    if type(c) is Fraction:
        return c.numerator if c.denominator == 1 else c
    return _shrink(F.coerce(c))


def _shrink(c):
    return c.numerator if type(c) is Fraction and c.denominator == 1 else c


def rref(F: FieldSpec, rows: Sequence[Sequence[RawScalar]]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    p = F.characteristic
    if p:
        m = [[F.coerce(c) for c in r] for r in rows]
    else:
        # integral entries stay ints while possible; Fraction arithmetic is slow
        m = [[_int_or_fraction(F, c) for c in r] for r in rows]
    m = [r for r in m if any(r)]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        if p:
            inv = pow(lead, -1, p)
            m[r] = [inv * c % p for c in m[r]]
        elif lead == 1:
            pass
        elif lead == -1:
            m[r] = [-c for c in m[r]]
        else:
            m[r] = [_shrink(Fraction(c) / lead) for c in m[r]]
        nz = [(j, c) for j, c in enumerate(m[r]) if c != 0]
        for i in range(len(m)):
            row = m[i]
            if i != r and row[col] != 0:
                a = row[col]
                if p:
                    for j, c in nz:
                        row[j] = (row[j] - a * c) % p
                else:
                    for j, c in nz:
                        row[j] = _shrink(row[j] - a * c)
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    if not p:
        return [[Fraction(c) if c else _ZERO for c in row] for row in m[:r]], pivots
    return m[:r], pivots


def reduce(F: FieldSpec, basis: Sequence[Vector], pivots: Sequence[int], v: Sequence) -> Vector:
    """Reduce ``v`` modulo the span of an rref basis."""
    v = list(v)
    for row, col in zip(basis, pivots):
        a = v[col]
        if a != 0:
            v = [F.sub(x, F.mul(a, y)) for x, y in zip(v, row)]
    return v


def kernel(F: FieldSpec, columns: Sequence[Sequence[RawScalar]], n_target: int) -> list[Vector]:
    """Kernel of the map sending source basis vector ``j`` to ``columns[j]``.

    Returns an rref basis of the kernel in source coordinates.
    """
    n_src = len(columns)
    if n_src == 0:
        return []
    if n_target == 0:
        return [[F.one if i == j else F.zero for i in range(n_src)] for j in range(n_src)]
    rows = [[columns[j][i] for j in range(n_src)] for i in range(n_target)]
    red, piv = rref(F, rows)
    free = [j for j in range(n_src) if j not in set(piv)]
    out = []
    for f in free:
        v = [F.zero] * n_src
        v[f] = F.one
        for row, p in zip(red, piv):
            v[p] = F.neg(row[f])
        out.append(v)
    return rref(F, out)[0]


class Quotient:
    """Complement of a subspace ``B`` inside a space ``Z``, in rref normal form.

    ``representatives`` spans a complement of ``B`` in ``Z`` and is
    independent modulo ``B``; :meth:`coordinates` expresses any vector of
    ``Z`` in terms of the representatives modulo ``B``.
    """

    def __init__(self, F: FieldSpec, Z: Sequence[Vector], B: Sequence[Vector]):
        self.field = F
        self.B, self.B_piv = rref(F, B)
        residues = [reduce(F, self.B, self.B_piv, z) for z in Z]
        self.representatives, self.rep_piv = rref(F, residues)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, v: Sequence) -> list:
        F = self.field
        r = reduce(F, self.B, self.B_piv, v)
        coords = [r[p] for p in self.rep_piv]
        rest = reduce(F, self.representatives, self.rep_piv, r)
        if any(c != 0 for c in rest):
            raise ValueError("vector is not in the cocycle space")
        return coords


def is_zero(v: Sequence) -> bool:
    return all(c == 0 for c in v)
