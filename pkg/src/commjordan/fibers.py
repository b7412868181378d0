"""Fibers of Q and the box conjecture checks."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Callable, Iterator

from .errors import DomainError, InternalGuardError, ResourceLimitError
from .oblak import q_map
from .partitions import Partition, is_stable

__all__ = [
    "DEFAULT_MAX_N",
    "BoxReport",
    "iter_partitions",
    "enumerate_partitions",
    "q_fibers",
    "box_dims",
    "box_part_counts",
    "check_box",
    "reports_to_json",
]

DEFAULT_MAX_N = 40


def iter_partitions(n: int) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    if n < 0:
        raise DomainError(f"cannot partition {n}")
    if n == 0:
        yield Partition()
        return
    parts = [n]
    while True:
        yield Partition(parts)
        # Strip trailing ones, then decrement the last part >= 2 and refill.
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts.pop() - 1
        rest = ones + 1
        parts.append(k)
        while rest > k:
            parts.append(k)
            rest -= k
        if rest:
            parts.append(rest)


def enumerate_partitions(n: int, max_n: int = DEFAULT_MAX_N) -> list[Partition]:
    if n > max_n:
        raise ResourceLimitError(f"n={n} exceeds the enumeration bound {max_n}")
    return list(iter_partitions(n))


def q_fibers(
    n: int,
    max_n: int = DEFAULT_MAX_N,
    qfunc: Callable[[Partition], Partition] = q_map,
) -> dict[Partition, list[Partition]]:
    """Group the partitions of n by their image under ``qfunc``.

    Keys come out in reverse lexicographic order, members in enumeration order.
    """
    fibers: dict[Partition, list[Partition]] = {}
    for P in enumerate_partitions(n, max_n):
        fibers.setdefault(qfunc(P), []).append(P)
    return dict(sorted(fibers.items(), reverse=True))


def box_dims(Q: Partition) -> list[int]:
    """Side lengths s_i of the predicted box for a stable Q."""
    Q = Partition(Q)
    if not Q or not is_stable(Q):
        raise DomainError(f"{Q} is not a nonempty stable partition")
    return [a - b - 1 for a, b in zip(Q, Q[1:])] + [Q[-1]]


def box_part_counts(dims: list[int]) -> Counter:
    """Multiset of i_1 + ... + i_k over the cells of the box."""
    return Counter(sum(cell) for cell in product(*(range(1, s + 1) for s in dims)))


@dataclass
class BoxReport:
    q: Partition
    dims: list[int]
    fiber: list[Partition]

    @property
    def predicted(self) -> int:
        return prod(self.dims)

    @property
    def cardinality_ok(self) -> bool:
        return len(self.fiber) == self.predicted

    @property
    def part_count_ok(self) -> bool:
        return Counter(len(P) for P in self.fiber) == box_part_counts(self.dims)

    @property
    def two_part_ok(self) -> bool | None:
        """For Q = (u, u - r): |fiber| == (u - r)(r - 1). None otherwise."""
        if len(self.q) != 2:
            return None
        u, r = self.q[0], self.q[0] - self.q[1]
        return len(self.fiber) == (u - r) * (r - 1)

    @property
    def ok(self) -> bool:
        return self.cardinality_ok and self.part_count_ok and self.two_part_ok is not False

    def to_dict(self) -> dict:
        doc = {
            "q": list(self.q),
            "dims": self.dims,
            "predicted": self.predicted,
            "observed": len(self.fiber),
            "cardinality_ok": self.cardinality_ok,
            "part_count_ok": self.part_count_ok,
            "two_part_ok": self.two_part_ok,
        }
        if not self.ok:
            doc["fiber"] = [list(P) for P in self.fiber]
        return doc


def check_box(
    n: int,
    max_n: int = DEFAULT_MAX_N,
    qfunc: Callable[[Partition], Partition] = q_map,
) -> list[BoxReport]:
    """One report per stable partition of n."""
    fibers = q_fibers(n, max_n, qfunc)
    reports = []
    for Q in enumerate_partitions(n, max_n):
        if is_stable(Q):
            reports.append(BoxReport(Q, box_dims(Q), fibers.get(Q, [])))
    stray = [Q for Q in fibers if not is_stable(Q)]
    if stray:
        raise InternalGuardError(f"non-stable images under Q: {stray}")
    return reports


def reports_to_json(n: int, reports: list[BoxReport]) -> str:
    return json.dumps(
        {
            "schema": "commjordan.box/1",
            "n": n,
            "all_ok": all(r.ok for r in reports),
            "reports": [r.to_dict() for r in reports],
        },
        sort_keys=True,
    )
