"""Exact dense matrices over a prime field or the rationals."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceLimitError
from .partitions import Partition, conjugate

__all__ = [
    "DEFAULT_PRIME",
    "RATIONAL_MAX_N",
    "FieldSpec",
    "RATIONAL",
    "ExactMatrix",
    "jordan_matrix",
    "rank",
    "jordan_type",
    "jordan_power_rank",
    "power_ranks",
]

DEFAULT_PRIME = 1_000_003
RATIONAL_MAX_N = 16


@lru_cache(maxsize=64)
def _is_prime(q: int) -> bool:
    from sympy import isprime

    return bool(isprime(q))


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_q, or the rationals when ``modulus`` is None."""

    modulus: int | None = DEFAULT_PRIME

    def __post_init__(self):
        q = self.modulus
        if q is None:
            return
        if not isinstance(q, int) or q < 2 or not _is_prime(q):
            raise DomainError(f"field modulus must be prime, got {q}")
        if q >= 2**31:
            raise DomainError(f"field modulus must be below 2^31, got {q}")

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    def check_characteristic(self, n: int) -> None:
        """Require char 0 or char > n."""
        if self.modulus is not None and self.modulus <= n:
            raise DomainError(f"characteristic {self.modulus} must exceed n={n}")

    def __str__(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"


RATIONAL = FieldSpec(None)


class ExactMatrix:
    """Immutable dense matrix with canonical entries.

    Over F_q entries live in an int64 array reduced into ``[0, q)``; over the
    rationals they are ``Fraction`` objects in an object array.
    """

    __slots__ = ("_data", "field")

    def __init__(self, data, field: FieldSpec = FieldSpec()):
        if field.is_rational:
            arr = np.array(data, dtype=object)
            if arr.ndim != 2:
                arr = arr.reshape(len(data), -1)
            arr = np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr
        else:
            arr = np.array(data, dtype=object if _has_big(data) else np.int64)
            if arr.ndim != 2:
                arr = arr.reshape(len(data), -1)
            arr = (arr % field.modulus).astype(np.int64)
        arr.setflags(write=False)
        self._data = arr
        self.field = field

    @classmethod
    def _wrap(cls, arr: np.ndarray, field: FieldSpec) -> "ExactMatrix":
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        obj._data = arr
        obj.field = field
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, field: FieldSpec = FieldSpec()) -> "ExactMatrix":
        cols = rows if cols is None else cols
        if field.is_rational:
            arr = np.full((rows, cols), Fraction(0), dtype=object)
        else:
            arr = np.zeros((rows, cols), dtype=np.int64)
        return cls._wrap(arr, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = FieldSpec()) -> "ExactMatrix":
        if field.is_rational:
            arr = np.full((n, n), Fraction(0), dtype=object)
            for i in range(n):
                arr[i, i] = Fraction(1)
        else:
            arr = np.eye(n, dtype=np.int64)
        return cls._wrap(arr, field)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    def _check(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise DomainError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape[1] != other.shape[0]:
            raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field.is_rational:
            return self._wrap(_rational_dot(self._data, other._data), self.field)
        return self._wrap(_kernels.matmul_mod(self._data, other._data, self.field.modulus), self.field)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.field.is_rational:
            return self._wrap(self._data + other._data, self.field)
        return self._wrap((self._data + other._data) % self.field.modulus, self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.field.is_rational:
            return self._wrap(self._data - other._data, self.field)
        return self._wrap((self._data - other._data) % self.field.modulus, self.field)

    def scale(self, c: int | Fraction) -> "ExactMatrix":
        if self.field.is_rational:
            return self._wrap(self._data * Fraction(c), self.field)
        q = self.field.modulus
        return self._wrap(self._data * (int(c) % q) % q, self.field)

    def power(self, k: int) -> "ExactMatrix":
        if self.shape[0] != self.shape[1]:
            raise DomainError("power of a non-square matrix")
        if k < 0:
            raise DomainError("negative matrix power")
        result = ExactMatrix.identity(self.shape[0], self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self._data.flat)

    def commutes_with(self, other: "ExactMatrix") -> bool:
        return (self @ other) == (other @ self)

    def rank(self) -> int:
        return rank(self)

    def to_list(self) -> list[list]:
        if self.field.is_rational:
            return [[str(x) if x.denominator != 1 else int(x) for x in row] for row in self._data]
        return self._data.tolist()

    def to_json(self) -> str:
        return json.dumps({"field": str(self.field), "rows": self.to_list()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self._data == other._data))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self._data.flat)))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_list()!r}, field={self.field})"


def _has_big(data) -> bool:
    try:
        return any(abs(int(x)) >= 2**62 for x in np.asarray(data, dtype=object).flat)
    except (TypeError, ValueError):
        return False


def _as_integers(arr: np.ndarray) -> tuple[np.ndarray, int]:
    den = lcm(*(x.denominator for x in arr.flat)) if arr.size else 1
    ints = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        ints[idx] = x.numerator * (den // x.denominator)
    return ints, den


def _rational_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Fraction arithmetic normalizes on every step; multiply integers instead.
    ia, da = _as_integers(a)
    ib, db = _as_integers(b)
    prod_ = ia.dot(ib)
    den = da * db
    out = np.empty(prod_.shape, dtype=object)
    for idx, x in np.ndenumerate(prod_):
        out[idx] = Fraction(x, den)
    return out


def _rank_rational(arr: np.ndarray) -> int:
    # Fraction-free elimination on rows scaled to integers.
    ints, _ = _as_integers(arr)
    a = [list(row) for row in ints]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f != 0:
                row = [lead * x - f * y for x, y in zip(a[i], a[r])]
                g = gcd(*row)
                a[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == rows:
            break
    return r


def rank(M: ExactMatrix) -> int:
    """Exact rank by Gaussian elimination over the matrix's field."""
    if min(M.shape) == 0:
        return 0
    if M.field.is_rational:
        return _rank_rational(M.data)
    return int(_kernels.rank_mod(M.data, M.field.modulus))


def jordan_matrix(P: Partition, field: FieldSpec = FieldSpec()) -> ExactMatrix:
    """Block diagonal J_P with upper triangular nilpotent Jordan blocks."""
    P = Partition(P)
    n = P.n
    if field.is_rational:
        arr = np.full((n, n), Fraction(0), dtype=object)
        one = Fraction(1)
    else:
        arr = np.zeros((n, n), dtype=np.int64)
        one = 1
    offset = 0
    for p in P:
        for i in range(p - 1):
            arr[offset + i, offset + i + 1] = one
        offset += p
    return ExactMatrix._wrap(arr, field)


def power_ranks(M: ExactMatrix, limit: int | None = None) -> list[int]:
    """rank M^0, rank M^1, ..., stopping at the first zero or after ``limit`` powers."""
    n = M.shape[0]
    limit = n if limit is None else limit
    ranks = [n]
    current = M
    for _ in range(limit):
        r = rank(current)
        ranks.append(r)
        if r == 0:
            break
        current = current @ M
    return ranks


def jordan_type(M: ExactMatrix) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers."""
    n, cols = M.shape
    if n != cols:
        raise DomainError("Jordan type of a non-square matrix")
    if n == 0:
        return Partition()
    if M.field.is_rational and n > RATIONAL_MAX_N:
        raise ResourceLimitError(f"rational arithmetic is limited to n <= {RATIONAL_MAX_N}")
    squared = M
    reached = 1
    while reached < n:
        squared = squared @ squared
        reached *= 2
    if not squared.is_zero():
        ranks = power_ranks(M, limit=n)
        stall = next(i for i in range(1, len(ranks)) if ranks[i] == ranks[i - 1])
        raise DomainError(
            f"matrix is not nilpotent: rank of power {stall} equals rank of power {stall - 1} ({ranks[stall]})"
        )
    ranks = power_ranks(M)
    diffs = [a - b for a, b in zip(ranks, ranks[1:])]
    return conjugate(Partition(diffs))


def jordan_power_rank(n: int, k: int) -> int:
    """rank of J_n^k: n for k = 0, otherwise max(n - k, 0)."""
    if k == 0:
        return n
    return max(n - k, 0)
