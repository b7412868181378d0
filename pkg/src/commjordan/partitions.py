"""Integer partitions: parsing, conjugation, dominance and almost rectangular structure."""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass
from itertools import accumulate, groupby, zip_longest
from typing import Iterable

from .errors import DomainError, PartitionParseError

__all__ = [
    "Partition",
    "Dominance",
    "ARDecomposition",
    "parse_partition",
    "conjugate",
    "dominance_cmp",
    "dominates",
    "almost_rectangular",
    "is_almost_rectangular",
    "ar_decompose",
    "count_parts_of_size",
    "subpartition_R",
    "is_stable",
]

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+)\s*)?$")


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Construction sorts its input, so ``Partition([1, 3, 2]) == (3, 2, 1)``.
    Being a tuple, a partition is immutable, hashable and compares equal to
    the plain tuple of its parts.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if parts and parts[-1] < 1:
            raise DomainError(f"partition parts must be positive, got {parts[-1]}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> list[tuple[int, int]]:
        """Distinct parts with their counts, largest part first."""
        return [(p, len(list(g))) for p, g in groupby(self)]

    def to_text(self) -> str:
        """Compact text form, e.g. ``6,4^2,3^2,2^2,1``."""
        return ",".join(f"{p}^{m}" if m > 1 else str(p) for p, m in self.multiplicities())

    def __repr__(self) -> str:
        return f"Partition({list(self)!r})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


class Dominance(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ARDecomposition:
    """Consecutive almost rectangular segments covering a partition."""

    segments: tuple[Partition, ...]

    @property
    def count(self) -> int:
        return len(self.segments)

    def joined(self) -> Partition:
        return Partition(p for seg in self.segments for p in seg)


def parse_partition(text: str) -> Partition:
    """Parse ``"6,4^2,3^2,2^2,1"`` style text.

    Parts may come in any order; an exponent ``p^k`` repeats ``p`` k times.
    The empty string parses to the empty partition.
    """
    if not text.strip():
        return Partition()
    parts: list[int] = []
    for token in text.split(","):
        match = _TOKEN.match(token)
        if match is None:
            raise PartitionParseError(f"malformed partition token {token.strip()!r}", token)
        part = int(match.group(1))
        mult = int(match.group(2)) if match.group(2) is not None else 1
        if part < 1:
            raise PartitionParseError(f"part must be positive in token {token.strip()!r}", token)
        if mult < 1:
            raise PartitionParseError(f"exponent must be positive in token {token.strip()!r}", token)
        parts.extend([part] * mult)
    return Partition(parts)


def conjugate(P: Partition) -> Partition:
    if not P:
        return Partition()
    return Partition(sum(1 for p in P if p > i) for i in range(P[0]))


def dominance_cmp(P: Partition, Q: Partition) -> Dominance:
    """Compare two partitions of the same integer in dominance order.

    ``GREATER`` means every prefix sum of ``P`` is at least the matching
    prefix sum of ``Q``.
    """
    if sum(P) != sum(Q):
        raise DomainError(f"cannot compare partitions of {sum(P)} and {sum(Q)}")
    ge = le = True
    for a, b in zip_longest(accumulate(P), accumulate(Q), fillvalue=sum(P)):
        if a < b:
            ge = False
        elif a > b:
            le = False
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def dominates(P: Partition, Q: Partition) -> bool:
    """True when ``P >= Q`` in dominance order."""
    return dominance_cmp(P, Q) in (Dominance.GREATER, Dominance.EQUAL)


def almost_rectangular(n: int, k: int) -> Partition:
    """The partition ``[n]^k`` of n into k parts differing by at most one."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    x, r = divmod(n, k)
    return Partition([x + 1] * r + [x] * (k - r))


def is_almost_rectangular(P: Partition) -> bool:
    if not P:
        raise DomainError("almost rectangularity is undefined for the empty partition")
    return P[0] - P[-1] <= 1


def ar_decompose(P: Partition) -> ARDecomposition:
    """Greedy left-to-right split into maximal almost rectangular runs.

    The greedy split is minimal, so ``ar_decompose(P).count`` is r_P.
    """
    segments = []
    start = 0
    for i in range(1, len(P) + 1):
        if i == len(P) or P[start] - P[i] > 1:
            segments.append(Partition(P[start:i]))
            start = i
    return ARDecomposition(tuple(segments))


def count_parts_of_size(P: Partition, p: int) -> int:
    return sum(1 for part in P if part == p)


def subpartition_R(P: Partition, p: int) -> Partition:
    """All parts of size p and p - 1; the almost rectangular block topped by p."""
    counts = Counter(P)
    if counts[p] == 0:
        raise DomainError(f"{P} has no part of size {p}")
    return Partition([p] * counts[p] + [p - 1] * counts[p - 1] if p > 1 else [p] * counts[p])


def is_stable(P: Partition) -> bool:
    """True when consecutive parts differ by at least two."""
    return all(a - b >= 2 for a, b in zip(P, P[1:]))
