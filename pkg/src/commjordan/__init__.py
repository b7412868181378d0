"""Generic commuting Jordan types of nilpotent matrices.

The Oblak process computes Q(P) combinatorially; the commutator oracle
checks it against random nilpotent matrices commuting with J_P.
"""

from .errors import (
    CommJordanError,
    DomainError,
    InternalGuardError,
    PartitionParseError,
    ResourceLimitError,
)
from .oblak import explore_all_tie_choices, oblak_process, q_map
from .partitions import Dominance, Partition, dominance_cmp, parse_partition

__all__ = [
    "CommJordanError",
    "DomainError",
    "Dominance",
    "InternalGuardError",
    "Partition",
    "PartitionParseError",
    "ResourceLimitError",
    "dominance_cmp",
    "explore_all_tie_choices",
    "oblak_process",
    "parse_partition",
    "q_map",
]

__version__ = "0.1.0"
