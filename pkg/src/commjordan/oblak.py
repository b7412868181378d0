"""The Oblak process: peel off maximum U-chains to obtain Q(P)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .errors import DomainError, ResourceLimitError
from .partitions import (
    Partition,
    ar_decompose,
    dominates,
    is_almost_rectangular,
    is_stable,
)
from .poset import max_u_chains, u_cardinality

__all__ = [
    "OblakStep",
    "OblakTrace",
    "oblak_step",
    "oblak_process",
    "q_map",
    "explore_all_tie_choices",
    "check_properties",
]


@dataclass(frozen=True)
class OblakStep:
    chosen_p: int
    chain_size: int
    residual: Partition


@dataclass(frozen=True)
class OblakTrace:
    input: Partition
    steps: tuple[OblakStep, ...]

    @property
    def result(self) -> Partition:
        return Partition(s.chain_size for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "schema": "commjordan.trace/1",
            "input": list(self.input),
            "steps": [
                {"p": s.chosen_p, "size": s.chain_size, "residual": list(s.residual)}
                for s in self.steps
            ],
            "result": list(self.result),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def narrative(self) -> str:
        lines = [f"P = {self.input}"]
        current = self.input
        for i, s in enumerate(self.steps, 1):
            lines.append(
                f"step {i}: remove U_P({s.chosen_p}) from {current}, |U| = {s.chain_size}"
                f" -> P_{i} = {s.residual}"
            )
            current = s.residual
        lines.append(f"Q(P) = {self.result}")
        return "\n".join(lines)


def oblak_step(P: Partition, p: int) -> tuple[int, Partition]:
    """Remove U_P(p): drop parts p and p - 1, shorten longer parts by two."""
    size = u_cardinality(P, p)
    residual = []
    for part in P:
        if part > p:
            if part > 2:
                residual.append(part - 2)
        elif part < p - 1:
            residual.append(part)
    return size, Partition(residual)


def _smallest(choices: Iterable[int]) -> int:
    return min(choices)


def oblak_process(P: Partition, choose: Callable[[Iterable[int]], int] = _smallest) -> OblakTrace:
    """Run the process to exhaustion.

    ``choose`` picks among the part sizes whose U-chains are maximal; the
    default takes the smallest.
    """
    if not P:
        raise DomainError("the Oblak process needs a nonempty partition")
    steps = []
    current = Partition(P)
    while current:
        candidates, _ = max_u_chains(current)
        p = choose(sorted(candidates))
        if p not in candidates:
            raise DomainError(f"chooser returned {p}, not a maximizer in {sorted(candidates)}")
        size, current = oblak_step(current, p)
        steps.append(OblakStep(p, size, current))
    return OblakTrace(Partition(P), tuple(steps))


@lru_cache(maxsize=None)
def _q_cached(P: Partition) -> Partition:
    return oblak_process(P).result


def q_map(P: Partition) -> Partition:
    """Q(P), the generic Jordan type commuting with a nilpotent of type P."""
    return _q_cached(Partition(P))


def explore_all_tie_choices(P: Partition, cap: int = 10_000) -> set[Partition]:
    """Results of the process along every sequence of maximizing choices."""
    if not P:
        raise DomainError("the Oblak process needs a nonempty partition")
    results: set[Partition] = set()
    traces = 0

    def walk(current: Partition, sizes: tuple[int, ...]):
        nonlocal traces
        if not current:
            traces += 1
            if traces > cap:
                raise ResourceLimitError(f"more than {cap} traces for {P}")
            results.add(Partition(sizes))
            return
        candidates, _ = max_u_chains(current)
        for p in sorted(candidates):
            size, residual = oblak_step(current, p)
            walk(residual, sizes + (size,))

    walk(Partition(P), ())
    return results


def check_properties(P: Partition, ties: bool = True) -> list[str]:
    """Check the known theorems about Q on one partition; returns failure messages."""
    P = Partition(P)
    Q = q_map(P)
    failures = []
    if Q.n != P.n:
        failures.append(f"{P}: Q(P)={Q} is not a partition of {P.n}")
    if (Q == P) != is_stable(P):
        failures.append(f"{P}: fixed point {Q == P} but stable {is_stable(P)}")
    if not is_stable(Q):
        failures.append(f"{P}: Q(P)={Q} is not stable")
    if q_map(Q) != Q:
        failures.append(f"{P}: Q(Q(P))={q_map(Q)} differs from Q(P)={Q}")
    if len(Q) != ar_decompose(P).count:
        failures.append(f"{P}: Q(P)={Q} has {len(Q)} parts, r_P={ar_decompose(P).count}")
    if not dominates(Q, P):
        failures.append(f"{P}: Q(P)={Q} does not dominate P")
    if (Q == Partition([P.n])) != is_almost_rectangular(P):
        failures.append(f"{P}: Q(P)=(n) is {Q == (P.n,)} but almost rectangular is {is_almost_rectangular(P)}")
    if Q[0] != max_u_chains(P)[1]:
        failures.append(f"{P}: largest part {Q[0]} differs from max U-chain {max_u_chains(P)[1]}")
    if ties:
        outcomes = explore_all_tie_choices(P)
        if outcomes != {Q}:
            failures.append(f"{P}: tie choices give {sorted(outcomes)}")
    return failures
