"""Exact coefficient fields, graded dimension series and bidegrees.

Field elements are kept as plain Python values for speed inside the linear
algebra: :class:`fractions.Fraction` in characteristic zero and ``int``
residues in ``0..p-1`` otherwise.  :class:`FieldSpec` carries the
arithmetic; :class:`Scalar` is a small value wrapper for callers who want
operator syntax and mixed-field checking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

RawScalar = Union[int, Fraction]


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field Q (``characteristic=0``) or F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or isinstance(c, bool):
            raise FieldError(f"characteristic must be an int, got {c!r}")
        if c != 0 and not _is_prime(c):
            raise FieldError(f"characteristic must be 0 or prime, got {c}")

    @property
    def symbol(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    # raw arithmetic ----------------------------------------------------
    def coerce(self, value) -> RawScalar:
        p = self.characteristic
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError("scalar belongs to a different field")
            return value.value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            value = int(value)
        if p == 0:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise FieldError(f"cannot coerce {value!r} into Q")
        if isinstance(value, Fraction):
            num = value.numerator % p
            den = value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {p}")
            return num * pow(den, -1, p) % p
        if isinstance(value, int):
            return value % p
        raise FieldError(f"cannot coerce {value!r} into F{p}")

    @property
    def zero(self) -> RawScalar:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> RawScalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a: RawScalar, b: RawScalar) -> RawScalar:
        p = self.characteristic
        return a + b if p == 0 else (a + b) % p

    def sub(self, a: RawScalar, b: RawScalar) -> RawScalar:
        p = self.characteristic
        return a - b if p == 0 else (a - b) % p

    def neg(self, a: RawScalar) -> RawScalar:
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def mul(self, a: RawScalar, b: RawScalar) -> RawScalar:
        p = self.characteristic
        return a * b if p == 0 else (a * b) % p

    def inv(self, a: RawScalar) -> RawScalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return 1 / Fraction(a) if p == 0 else pow(a, -1, p)

    def div(self, a: RawScalar, b: RawScalar) -> RawScalar:
        return self.mul(a, self.inv(b))

    def to_json(self, a: RawScalar):
        """Exact JSON form: an int, or the string ``"a/b"``."""
        if self.characteristic == 0:
            a = Fraction(a)
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: RawScalar

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return self.field(other)
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field.symbol} and {other.field.symbol}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __mul__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        o = self._check(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (FieldError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value}[{self.field.symbol}]"


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Apply ``op`` in {"add", "mul", "inv", "neg"}; unary ops ignore ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


class UnboundedSupportError(ValueError):
    """A dimension series was asked for degrees where it is not known."""


@dataclass(frozen=True)
class DimensionSeries:
    """Sparse map degree -> dimension.

    ``known`` is the closed degree interval on which the series is complete;
    ``None`` means the stored entries are the whole series.  Series are
    assumed to vanish below ``known[0]``.
    """

    dims: Mapping[int, int] = field(default_factory=dict)
    known: tuple[int, int] | None = None

    def __post_init__(self):
        clean = {}
        for d, n in dict(self.dims).items():
            if n < 0:
                raise ValueError(f"negative dimension {n} in degree {d}")
            if n:
                clean[int(d)] = int(n)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def items(self):
        return self.dims.items()

    def __eq__(self, other):
        if isinstance(other, DimensionSeries):
            return self.dims == other.dims
        if isinstance(other, Mapping):
            return self.dims == DimensionSeries(other).dims
        return NotImplemented

    def restrict(self, lo: int, hi: int) -> "DimensionSeries":
        return DimensionSeries({d: n for d, n in self.dims.items() if lo <= d <= hi}, (lo, hi))

    def total(self) -> int:
        return sum(self.dims.values())

    def __add__(self, other: "DimensionSeries") -> "DimensionSeries":
        out = dict(self.dims)
        for d, n in other.dims.items():
            out[d] = out.get(d, 0) + n
        known = None
        if self.known or other.known:
            a = self.known or (-10**18, 10**18)
            b = other.known or (-10**18, 10**18)
            known = (max(a[0], b[0]), min(a[1], b[1]))
        return DimensionSeries(out, known)

    def product(self, other: "DimensionSeries", window: tuple[int, int]) -> "DimensionSeries":
        return series_product(self, other, window)

    def __repr__(self):
        return f"DimensionSeries({self.dims})"


def _known_upper(s: DimensionSeries) -> float:
    return float("inf") if s.known is None else s.known[1]


def _support_floor(s: DimensionSeries) -> float:
    if s.known is not None:
        return s.known[0]
    return min(s.dims) if s.dims else float("inf")


def series_product(a: DimensionSeries, b: DimensionSeries, window: tuple[int, int]) -> DimensionSeries:
    """Cauchy product of two dimension series restricted to ``window``.

    Raises :class:`UnboundedSupportError` when a degree inside the window
    could receive contributions from parts of ``a`` or ``b`` that are not
    known.
    """
    lo, hi = window
    if not a.dims or not b.dims:
        return DimensionSeries({}, (lo, hi))
    # degree d needs a_i for i <= d - floor(b) and b_j for j <= d - floor(a)
    fa, fb = _support_floor(a), _support_floor(b)
    if hi - fb > _known_upper(a) or hi - fa > _known_upper(b):
        raise UnboundedSupportError(
            f"window {window} needs degrees beyond the known range of a factor"
        )
    out: dict[int, int] = {}
    for i, m in a.dims.items():
        for j, n in b.dims.items():
            d = i + j
            if lo <= d <= hi:
                out[d] = out.get(d, 0) + m * n
    return DimensionSeries(out, (lo, hi))


@dataclass(frozen=True, order=True)
class Bidegree:
    """Column ``p`` (filtration) and internal degree ``q``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"filtration degree must be >= 0, got {self.p}")

    @property
    def cohomological(self) -> int:
        return self.p + self.q

    @property
    def total(self) -> int:
        """Homological (loop homology) degree of a class in this bidegree."""
        return homological_degree(self.p, self.q)

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p + other.p, self.q + other.q)

    def __iter__(self):
        yield self.p
        yield self.q


def homological_degree(p: int, q: int) -> int:
    return -(p + q)


def as_series(items: Iterable[tuple[int, int]]) -> DimensionSeries:
    out: dict[int, int] = {}
    for d, n in items:
        out[d] = out.get(d, 0) + n
    return DimensionSeries(out)
