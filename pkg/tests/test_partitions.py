from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from commjordan.errors import DomainError, PartitionParseError
from commjordan.partitions import (
    Dominance,
    Partition,
    almost_rectangular,
    ar_decompose,
    conjugate,
    count_parts_of_size,
    dominance_cmp,
    is_almost_rectangular,
    is_stable,
    parse_partition,
    subpartition_R,
)

from conftest import brute_partitions, partitions_upto

partition_st = st.lists(st.integers(1, 12), max_size=10).map(Partition)


def cells_transpose(P):
    cells = {(r, c) for r, p in enumerate(P) for c in range(p)}
    cols = {}
    for r, c in cells:
        cols[c] = cols.get(c, 0) + 1
    return Partition(cols.values())


def min_segments_bruteforce(P):
    # Try every set of cut points between consecutive parts.
    n = len(P)
    best = n
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            if all(P[a] - P[b - 1] <= 1 for a, b in zip(bounds, bounds[1:])):
                best = min(best, k + 1)
        if best <= k + 1:
            break
    return best


class TestParse:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("6,4^2,3^2,2^2,1", (6, 4, 4, 3, 3, 2, 2, 1)),
            ("4", (4,)),
            ("1,3,2", (3, 2, 1)),
            ("3^2,1^3", (3, 3, 1, 1, 1)),
            (" 2 , 2 ^ 1 ", (2, 2)),
            ("", ()),
        ],
    )
    def test_examples(self, text, expected):
        assert parse_partition(text) == expected

    @pytest.mark.parametrize("text, token", [("3,0", "0"), ("3,-1", "-1"), ("a", "a"), ("2^0", "2^0"), ("3,,1", "")])
    def test_errors_name_token(self, text, token):
        with pytest.raises(PartitionParseError) as info:
            parse_partition(text)
        assert info.value.token.strip() == token

    @given(partition_st)
    def test_text_roundtrip(self, P):
        assert parse_partition(P.to_text()) == P


def test_partition_invariants():
    P = Partition([1, 3, 3])
    assert P == (3, 3, 1) and P.n == 7
    assert Partition().n == 0
    with pytest.raises(DomainError):
        Partition([2, 0])


class TestConjugate:
    @pytest.mark.parametrize("P, expected", [((2, 2), (2, 2)), ((4,), (1, 1, 1, 1)), ((3, 1), (2, 1, 1)), ((), ())])
    def test_examples(self, P, expected):
        assert conjugate(Partition(P)) == expected

    def test_matches_cell_transpose(self):
        for P in partitions_upto(12):
            assert conjugate(P) == cells_transpose(P)

    def test_involution_exhaustive(self):
        for P in partitions_upto(20):
            assert conjugate(conjugate(P)) == P


class TestDominance:
    @pytest.mark.parametrize(
        "P, Q, expected",
        [
            ((4,), (2, 2), Dominance.GREATER),
            ((2, 2), (4,), Dominance.LESS),
            ((3, 3), (4, 1, 1), Dominance.INCOMPARABLE),
            ((3, 1), (3, 1), Dominance.EQUAL),
        ],
    )
    def test_examples(self, P, Q, expected):
        assert dominance_cmp(Partition(P), Partition(Q)) is expected

    def test_different_totals(self):
        with pytest.raises(DomainError):
            dominance_cmp(Partition([3]), Partition([2]))

    @pytest.mark.parametrize("n", range(1, 11))
    def test_partial_order(self, n):
        parts = [Partition(p) for p in brute_partitions(n)]
        geq = {(a, b): dominance_cmp(a, b) in (Dominance.GREATER, Dominance.EQUAL) for a in parts for b in parts}
        for a in parts:
            assert dominance_cmp(a, a) is Dominance.EQUAL
            for b in parts:
                if a != b:
                    assert not (geq[a, b] and geq[b, a])
                flipped = {Dominance.GREATER: Dominance.LESS, Dominance.LESS: Dominance.GREATER}
                assert flipped.get(dominance_cmp(a, b), dominance_cmp(a, b)) is dominance_cmp(b, a)
                for c in parts:
                    if geq[a, b] and geq[b, c]:
                        assert geq[a, c]

    @pytest.mark.parametrize("n", range(1, 13))
    def test_extremes(self, n):
        top, bottom = Partition([n]), Partition([1] * n)
        for p in brute_partitions(n):
            P = Partition(p)
            assert dominance_cmp(top, P) in (Dominance.GREATER, Dominance.EQUAL)
            assert dominance_cmp(P, bottom) in (Dominance.GREATER, Dominance.EQUAL)


class TestAlmostRectangular:
    @pytest.mark.parametrize("n, k, expected", [(6, 2, (3, 3)), (6, 4, (2, 2, 1, 1)), (4, 2, (2, 2)), (7, 7, (1,) * 7)])
    def test_examples(self, n, k, expected):
        assert almost_rectangular(n, k) == expected

    @pytest.mark.parametrize("n, k", [(4, 0), (4, 5), (0, 0)])
    def test_domain(self, n, k):
        with pytest.raises(DomainError):
            almost_rectangular(n, k)

    def test_shape_exhaustive(self):
        for n in range(1, 31):
            for k in range(1, n + 1):
                P = almost_rectangular(n, k)
                assert len(P) == k and P.n == n and is_almost_rectangular(P)

    @pytest.mark.parametrize("P, expected", [((2, 2, 1), True), ((3, 1), False), ((5,), True)])
    def test_predicate(self, P, expected):
        assert is_almost_rectangular(Partition(P)) is expected


class TestARDecompose:
    def test_mixed_segments(self):
        d = ar_decompose(Partition([5, 3, 2, 2, 1, 1]))
        assert d.count == 3
        assert d.segments == ((5,), (3, 2, 2), (1, 1))

    def test_example_partition(self, example_partition):
        assert ar_decompose(example_partition).count == min_segments_bruteforce(example_partition) == 3

    def test_single_part(self):
        assert ar_decompose(Partition([9])).count == 1

    def test_empty(self):
        assert ar_decompose(Partition()).count == 0

    def test_minimal_exhaustive(self):
        for P in partitions_upto(14):
            d = ar_decompose(P)
            assert d.joined() == P
            assert all(is_almost_rectangular(s) for s in d.segments)
            assert d.count == min_segments_bruteforce(P), P


class TestSubpartitionR:
    @pytest.mark.parametrize("p, expected", [(3, (3, 3, 2, 2)), (6, (6,)), (1, (1,)), (4, (4, 4, 3, 3)), (2, (2, 2, 1))])
    def test_example_partition(self, example_partition, p, expected):
        assert subpartition_R(example_partition, p) == expected

    def test_counts(self, example_partition):
        assert [count_parts_of_size(example_partition, p) for p in range(1, 8)] == [1, 2, 2, 2, 0, 1, 0]

    def test_missing_part(self, example_partition):
        with pytest.raises(DomainError):
            subpartition_R(example_partition, 5)


@pytest.mark.parametrize("P, expected", [((3, 1), True), ((2, 2), False), ((16, 7, 2), True), ((), True), ((5,), True), ((4, 3), False)])
def test_is_stable(P, expected):
    assert is_stable(Partition(P)) is expected


@given(partition_st)
def test_stable_means_all_pairs_apart(P):
    pairwise = all(abs(a - b) >= 2 for i, a in enumerate(P) for b in P[i + 1 :])
    assert is_stable(P) is pairwise
