import json
import re

import pytest

from commjordan.errors import DomainError, ResourceLimitError
from commjordan.oblak import q_map
from commjordan.partitions import Partition, dominates
from commjordan.poset import (
    EdgeFamily,
    Vertex,
    build_dp,
    chain_union_sizes_bruteforce,
    comparable,
    greene_kleitman_lambda,
    max_u_chains,
    to_dot,
    to_json,
    u_cardinality,
    u_chain,
)

from conftest import partitions_upto

V = Vertex


def closed_form_family_counts(P):
    groups = P.multiplicities()
    down = sum(q for (_, _), (q, _) in zip(groups, groups[1:]))
    within = sum(p * (m - 1) for p, m in groups)
    parts = [p for p, _ in groups]
    isolated = 0
    for i, p in enumerate(parts):
        above = parts[i - 1] if i else float("inf")
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if above - p > 1 and p - below > 1:
            isolated += p - 1
    return {EdgeFamily.DOWN: down, EdgeFamily.UPSHIFT: down, EdgeFamily.WITHIN_GROUP: within, EdgeFamily.ISOLATED: isolated}


class TestBuild:
    def test_three_one_edges(self):
        D = build_dp(Partition([3, 1]))
        assert set(D.vertices) == {V(1, 3, 1), V(2, 3, 1), V(3, 3, 1), V(1, 1, 1)}
        assert {(e.src, e.dst, e.family) for e in D.edges} == {
            (V(1, 3, 1), V(2, 3, 1), EdgeFamily.ISOLATED),
            (V(2, 3, 1), V(3, 3, 1), EdgeFamily.ISOLATED),
            (V(1, 3, 1), V(1, 1, 1), EdgeFamily.DOWN),
            (V(1, 1, 1), V(3, 3, 1), EdgeFamily.UPSHIFT),
        }

    def test_worked_example_edges(self, example_partition):
        D = build_dp(example_partition)
        assert len(D.vertices) == 25 and len(D.edges) == 34
        counts = D.family_counts()
        assert counts == {EdgeFamily.DOWN: 10, EdgeFamily.UPSHIFT: 10, EdgeFamily.WITHIN_GROUP: 9, EdgeFamily.ISOLATED: 5}
        # Isolated edges appear only along the row of 6.
        assert all(e.src.p == 6 for e in D.edges if e.family is EdgeFamily.ISOLATED)
        # Solid arrows point upward inside a group.
        assert all(e.dst.k == e.src.k - 1 for e in D.edges if e.family is EdgeFamily.WITHIN_GROUP)

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_single_part_is_a_line(self, n):
        D = build_dp(Partition([n]))
        assert len(D.vertices) == n
        assert len(D.edges) == n - 1
        assert all(e.family is EdgeFamily.ISOLATED for e in D.edges)
        assert all(comparable(D, a, b) for a in D.vertices for b in D.vertices)

    def test_empty(self):
        with pytest.raises(DomainError):
            build_dp(Partition())

    def test_structure_exhaustive(self):
        for P in partitions_upto(14):
            D = build_dp(P)
            assert len(D.vertices) == len(set(D.vertices)) == P.n
            assert D.is_acyclic, P
            assert D.family_counts() == closed_form_family_counts(P), P
            mult = dict(P.multiplicities())
            assert all(1 <= v.u <= v.p and 1 <= v.k <= mult[v.p] for v in D.vertices)


class TestComparable:
    def test_known_incomparable_pair(self, example_partition):
        D = build_dp(example_partition)
        assert not comparable(D, V(2, 6, 1), V(1, 2, 1))

    def test_reflexive(self, example_partition):
        D = build_dp(example_partition)
        assert all(comparable(D, v, v) for v in D.vertices)

    def test_upshift_pair(self):
        assert comparable(build_dp(Partition([3, 1])), V(1, 1, 1), V(3, 3, 1))

    def test_unknown_vertex(self):
        with pytest.raises(DomainError):
            comparable(build_dp(Partition([3, 1])), V(1, 1, 1), V(4, 3, 1))


class TestUChain:
    @pytest.mark.parametrize("p, size", [(6, 6), (4, 16), (3, 16), (2, 15), (1, 15)])
    def test_cardinality_table(self, example_partition, p, size):
        assert u_cardinality(example_partition, p) == size
        assert u_chain(example_partition, p).cardinality == size

    def test_chain_membership(self, example_partition):
        chain = u_chain(example_partition, 3).vertices
        for v in (V(1, 6, 1), V(6, 6, 1), V(1, 4, 1), V(4, 4, 2), V(2, 3, 2), V(1, 2, 1)):
            assert v in chain
        assert V(2, 6, 1) not in chain and V(1, 1, 1) not in chain

    def test_missing_part(self, example_partition):
        with pytest.raises(DomainError):
            u_chain(example_partition, 5)
        with pytest.raises(DomainError):
            u_cardinality(example_partition, 5)

    def test_cardinality_matches_vertex_set(self):
        for P in partitions_upto(14):
            for p in set(P):
                assert u_chain(P, p).cardinality == u_cardinality(P, p), (P, p)

    def test_u_chains_are_chains(self):
        for P in partitions_upto(10):
            D = build_dp(P)
            for p in set(P):
                chain = sorted(u_chain(P, p).vertices)
                assert all(comparable(D, a, b) for a in chain for b in chain), (P, p)


class TestMaxUChains:
    def test_example_partition(self, example_partition):
        assert max_u_chains(example_partition) == (frozenset({3, 4}), 16)

    def test_single_part(self):
        assert max_u_chains(Partition([7])) == (frozenset({7}), 7)

    def test_second_step_of_worked_example(self):
        # 2(2)+1(1)+2(1) = 7 for p = 2; the U-chain at p = 1 ties with it.
        best, value = max_u_chains(Partition([4, 2, 2, 1]))
        assert value == 7 and 2 in best


class TestLambda:
    @pytest.mark.parametrize("P, expected", [((3, 1), (3, 1)), ((2, 2), (4,)), ((5,), (5,)), ((1, 1, 1), (3,))])
    def test_examples(self, P, expected):
        assert greene_kleitman_lambda(build_dp(Partition(P))) == expected

    def test_bruteforce_chain_unions(self):
        # c_1 = 3, c_2 = 4 for D_(3,1)
        assert chain_union_sizes_bruteforce(build_dp(Partition([3, 1]))) == [3, 4]

    def test_flow_matches_bruteforce(self):
        for P in partitions_upto(8):
            D = build_dp(P)
            sizes = chain_union_sizes_bruteforce(D)
            lam = greene_kleitman_lambda(D)
            assert list(lam) == [b - a for a, b in zip([0] + sizes, sizes)], P

    def test_dominates_q_and_max_u_chain(self):
        for P in partitions_upto(10):
            lam = greene_kleitman_lambda(build_dp(P))
            assert lam.n == P.n
            assert dominates(lam, q_map(P)), P
            assert lam[0] >= max_u_chains(P)[1]

    def test_vertex_bound(self):
        D = build_dp(Partition([5, 5]))
        with pytest.raises(ResourceLimitError):
            greene_kleitman_lambda(D, max_vertices=9)


class TestExport:
    def test_dot_small(self):
        text = to_dot(build_dp(Partition([3, 1])))
        assert text.startswith("digraph")
        assert len(re.findall(r'^\s*"\(\d+,\d+,\d+\)" \[xlabel', text, re.M)) == 4
        assert len(re.findall(r"->.*style=", text)) == 4
        assert "shape=box" not in text

    def test_dot_highlight(self, example_partition):
        D = build_dp(example_partition)
        text = to_dot(D, u_chain(example_partition, 3))
        assert len(re.findall(r"xlabel", text)) == 25
        assert text.count("shape=box") == 16
        styles = re.findall(r"style=(\w+)", text)
        assert {"dashed", "dotted", "solid"} <= set(styles)

    def test_json(self, example_partition):
        doc = json.loads(to_json(build_dp(example_partition), u_chain(example_partition, 4)))
        assert doc["schema"].startswith("commjordan.poset/")
        assert len(doc["vertices"]) == 25 and len(doc["edges"]) == 34
        assert len(doc["highlight"]["vertices"]) == 16
        assert {e["family"] for e in doc["edges"]} == {f.value for f in EdgeFamily}
