"""Brute-force ground truth for Q(P) from the nilpotent commutator of J_P.

We sample random nilpotent matrices commuting with J_P and take the
dominance maximum of their Jordan types. A generic sample attains Q(P);
a non-generic one has a strictly dominated type.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InternalGuardError, ResourceLimitError
from .exactlinalg import (
    RATIONAL_MAX_N,
    ExactMatrix,
    FieldSpec,
    jordan_matrix,
    jordan_type,
    rank,
)
from .oblak import q_map
from .partitions import Dominance, Partition, dominance_cmp, dominates

__all__ = [
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "BasisElement",
    "CentralizerBasis",
    "NilpotentSample",
    "OracleReport",
    "centralizer_basis",
    "centralizer_dim_bruteforce",
    "derive_seeds",
    "sample_nilpotent_commuting",
    "generic_commuting_type",
    "verify_q",
]

DEFAULT_SAMPLES = 8
DEFAULT_SEED = 0x1C01
BRUTEFORCE_MAX_N = 16
# Rational samples draw integer coefficients from [0, RATIONAL_COEFF_RANGE).
RATIONAL_COEFF_RANGE = 2**20


class BasisElement(NamedTuple):
    block_row: int
    block_col: int
    shift: int
    matrix: ExactMatrix


@dataclass(frozen=True)
class CentralizerBasis:
    partition: Partition
    elements: tuple[BasisElement, ...]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class NilpotentSample:
    matrix: ExactMatrix
    seed: int
    field: FieldSpec
    jordan_type: Partition


def _block_offsets(P: Partition) -> list[int]:
    offsets = [0]
    for p in P:
        offsets.append(offsets[-1] + p)
    return offsets


def _block_entries(a: int, b: int, shift: int) -> list[tuple[int, int]]:
    """Positions of the ones in the ``shift``-th commuting basis block of size a x b.

    A block Y with J_a Y = Y J_b is Toeplitz along diagonals c - r = d with
    d >= max(0, b - a); ``shift`` counts those diagonals from the first.
    """
    d = max(0, b - a) + shift
    return [(r, r + d) for r in range(a) if r + d < b]


def centralizer_basis(P: Partition, field: FieldSpec = FieldSpec()) -> CentralizerBasis:
    """Basis of the centralizer of J_P, one element per (block pair, shift)."""
    P = Partition(P)
    n = P.n
    offsets = _block_offsets(P)
    one = Fraction(1) if field.is_rational else 1
    elements = []
    for i, a in enumerate(P):
        for j, b in enumerate(P):
            for s in range(min(a, b)):
                arr = ExactMatrix.zeros(n, n, field).data.copy()
                for r, c in _block_entries(a, b, s):
                    arr[offsets[i] + r, offsets[j] + c] = one
                elements.append(BasisElement(i, j, s, ExactMatrix._wrap(arr, field)))
    return CentralizerBasis(P, tuple(elements))


def centralizer_dim_bruteforce(P: Partition, field: FieldSpec = FieldSpec()) -> int:
    """Nullity of X -> J X - X J on n x n matrices, by exact elimination."""
    P = Partition(P)
    n = P.n
    if n > BRUTEFORCE_MAX_N:
        raise ResourceLimitError(f"brute-force centralizer limited to n <= {BRUTEFORCE_MAX_N}")
    J = jordan_matrix(P, field).data
    eye = np.eye(n, dtype=np.int64)
    if field.is_rational:
        J = J.astype(object)
        eye = eye.astype(object)
    # Row-major vectorization: vec(J X) = (J kron I) vec(X), vec(X J) = (I kron J^T) vec(X).
    system = np.kron(J, eye) - np.kron(eye, J.T)
    return n * n - rank(ExactMatrix(system, field))


def derive_seeds(master_seed: int, count: int) -> list[int]:
    """Per-sample seeds; the first k seeds do not depend on ``count``."""
    state = np.random.SeedSequence(master_seed).generate_state(count, dtype=np.uint64)
    return [int(x) for x in state]


def _leading_coefficient_free(i: int, j: int, a: int, b: int) -> bool:
    # Shift-0 coefficients among equal blocks span a copy of gl(N_P(p));
    # keeping them strictly upper triangular forces nilpotency.
    return a != b or i < j


def sample_nilpotent_commuting(P: Partition, field: FieldSpec = FieldSpec(), seed: int = DEFAULT_SEED) -> NilpotentSample:
    """Random element of the nilpotent commutator of J_P.

    Every centralizer coefficient is uniform random except the shift-0
    coefficients between equal-size blocks, which form a strictly upper
    triangular matrix within each group of equal parts.
    """
    P = Partition(P)
    n = P.n
    field.check_characteristic(n)
    if field.is_rational and n > RATIONAL_MAX_N:
        raise ResourceLimitError(f"rational arithmetic is limited to n <= {RATIONAL_MAX_N}")
    rng = np.random.Generator(np.random.PCG64(seed))
    high = RATIONAL_COEFF_RANGE if field.is_rational else field.modulus
    offsets = _block_offsets(P)
    if field.is_rational:
        arr = np.full((n, n), Fraction(0), dtype=object)
    else:
        arr = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(P):
        for j, b in enumerate(P):
            coeffs = rng.integers(0, high, size=min(a, b))
            if not _leading_coefficient_free(i, j, a, b):
                coeffs[0] = 0
            for s, coeff in enumerate(coeffs):
                if coeff == 0:
                    continue
                value = Fraction(int(coeff)) if field.is_rational else int(coeff)
                for r, c in _block_entries(a, b, s):
                    arr[offsets[i] + r, offsets[j] + c] += value
    B = ExactMatrix._wrap(arr, field)
    J = jordan_matrix(P, field)
    if not B.commutes_with(J):
        raise InternalGuardError(f"sample for {P} (seed {seed}) does not commute with J_P")
    if not B.power(n).is_zero():
        raise InternalGuardError(f"sample for {P} (seed {seed}) is not nilpotent: B^{n} != 0")
    return NilpotentSample(B, seed, field, jordan_type(B))


def _dominance_max(types: list[Partition]) -> tuple[Partition, list[Partition]]:
    """Running dominance maximum, plus the types it fails to dominate."""
    best = types[0]
    for t in types[1:]:
        if dominance_cmp(t, best) is Dominance.GREATER:
            best = t
    return best, [t for t in types if not dominates(best, t)]


def generic_commuting_type(
    P: Partition,
    field: FieldSpec = FieldSpec(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> Partition:
    """Dominance maximum of the Jordan types of ``samples`` random draws."""
    if samples < 1:
        raise DomainError("need at least one sample")
    types = [sample_nilpotent_commuting(P, field, s).jordan_type for s in derive_seeds(seed, samples)]
    best, clashes = _dominance_max(types)
    if clashes:
        raise InternalGuardError(f"sampled types {best} and {clashes[0]} are dominance-incomparable for {P}")
    return best


@dataclass
class OracleReport:
    partition: Partition
    oblak: Partition
    oracle: Partition
    samples: list[tuple[int, Partition]]
    field: FieldSpec
    escalations: list[dict] = dc_field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.oblak == self.oracle

    @property
    def undominated(self) -> list[tuple[int, Partition]]:
        """Samples whose type is not dominated by the Oblak result."""
        return [(s, t) for s, t in self.samples if not dominates(self.oblak, t)]

    @property
    def ok(self) -> bool:
        return self.agree and not self.undominated

    def to_dict(self) -> dict:
        return {
            "schema": "commjordan.oracle/1",
            "partition": list(self.partition),
            "field": str(self.field),
            "oblak": list(self.oblak),
            "oracle": list(self.oracle),
            "agree": self.agree,
            "samples": [{"seed": s, "type": list(t)} for s, t in self.samples],
            "undominated": [{"seed": s, "type": list(t)} for s, t in self.undominated],
            "escalations": self.escalations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


ESCALATION_PRIME = 2_147_483_647


def verify_q(
    P: Partition,
    field: FieldSpec = FieldSpec(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    escalate: bool = False,
) -> OracleReport:
    """Compare the Oblak process against the sampling oracle for one partition.

    With ``escalate``, a disagreement is retried once with four times the
    samples over GF(2^31 - 1) before it is reported. Both attempts are kept
    in ``escalations``.
    """
    P = Partition(P)
    if samples < 1:
        raise DomainError("need at least one sample")
    oblak = q_map(P)
    drawn = [(s, sample_nilpotent_commuting(P, field, s).jordan_type) for s in derive_seeds(seed, samples)]
    oracle, _ = _dominance_max([t for _, t in drawn])
    report = OracleReport(P, oblak, oracle, drawn, field)
    if escalate and not report.agree:
        bigger = FieldSpec(ESCALATION_PRIME)
        retry = verify_q(P, bigger, samples * 4, seed)
        report.escalations.append(
            {"field": str(bigger), "samples": samples * 4, "oracle": list(retry.oracle), "agree": retry.agree}
        )
        if retry.agree:
            report.oracle = retry.oracle
            report.samples = drawn + retry.samples
    return report
