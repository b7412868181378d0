import pytest

from commjordan.partitions import Partition


def brute_partitions(n, largest=None):
    """All partitions of n by plain recursion; independent of the library generator."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in brute_partitions(n - first, first))
    return out


def partitions_upto(nmax, nmin=1):
    return [Partition(p) for n in range(nmin, nmax + 1) for p in brute_partitions(n)]


@pytest.fixture(scope="session")
def example_partition():
    return Partition([6, 4, 4, 3, 3, 2, 2, 1])
