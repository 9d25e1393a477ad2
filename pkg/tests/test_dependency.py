"""Dependency graph construction and polymer/cluster enumeration."""

import pytest

from linhyp.combinat import set_partitions
from linhyp.dependency import (
    _connected_set_masks,
    _connected_set_masks_reference,
    build_dependency_graph,
    clusters_disjoint,
    dependency_graph_for,
    polymers_up_to,
)
from linhyp.errors import CapExceededError, ValidationError
from linhyp.hypergraph import ForbiddenCopy, enumerate_forbidden_copies


def path_graph(k):
    """A real dependency graph whose adjacency is a path 0-1-...-k-1.

    Copy i pairs the triples {i,i+1,i+2} and {i+1,i+2,i+3}; consecutive
    copies share a triple, others do not.
    """
    copies = [
        ForbiddenCopy.from_edges((i, i + 1, i + 2), (i + 1, i + 2, i + 3))
        for i in range(1, k + 1)
    ]
    d = build_dependency_graph(copies)
    expect = [
        ((1 << (i - 1)) if i > 0 else 0) | ((1 << (i + 1)) if i + 1 < k else 0)
        for i in range(k)
    ]
    assert d.adj_masks == expect
    return d


def triangle_graph():
    """Three copies pairwise sharing a triple."""
    copies = [
        ForbiddenCopy.from_edges((1, 2, 3), (2, 3, 4)),
        ForbiddenCopy.from_edges((1, 2, 3), (2, 3, 5)),
        ForbiddenCopy.from_edges((2, 3, 4), (2, 3, 5)),
    ]
    d = build_dependency_graph(copies)
    assert d.adj_masks == [0b110, 0b101, 0b011]
    return d


class TestBuild:
    def test_shared_edge_adjacency_matches_bruteforce(self):
        for n in (4, 5, 6):
            copies = enumerate_forbidden_copies(n, 3)
            d = build_dependency_graph(copies)
            for i in range(len(copies)):
                for j in range(i + 1, len(copies)):
                    shared = bool(
                        set(copies[i].edge_pair) & set(copies[j].edge_pair)
                    )
                    assert (j in d.adjacency[i]) == shared
                    assert (i in d.adjacency[j]) == shared

    def test_n4_degrees(self):
        d = dependency_graph_for(4, 3)
        assert [len(a) for a in d.adjacency] == [4] * 6

    def test_single_copy(self):
        d = build_dependency_graph([ForbiddenCopy.from_edges((1, 2, 3), (2, 3, 4))])
        assert len(d) == 1 and d.adjacency == [()]

    def test_disjoint_edge_sets_not_adjacent(self):
        a = ForbiddenCopy.from_edges((1, 2, 3), (2, 3, 4))
        b = ForbiddenCopy.from_edges((1, 5, 6), (5, 6, 7))
        d = build_dependency_graph([a, b])
        assert d.adjacency == [(), ()]

    def test_symmetric_irreflexive(self):
        d = dependency_graph_for(5, 3)
        for i, nbrs in enumerate(d.adjacency):
            assert i not in nbrs
            for j in nbrs:
                assert i in d.adjacency[j]


class TestPolymers:
    def test_path_k2(self):
        d = path_graph(3)
        got = {p.members for p in _as_polymers(d, 2)}
        assert got == {(0,), (1,), (2,), (0, 1), (1, 2)}

    def test_triangle_all(self):
        got = {p.members for p in _as_polymers(triangle_graph(), 3)}
        assert len(got) == 7  # 3 singletons + 3 pairs + 1 triple

    def test_singleton_count_n5(self):
        d = dependency_graph_for(5, 3)
        assert sum(1 for _ in polymers_up_to(d, 1)) == 30

    def test_all_members_connected(self):
        d = dependency_graph_for(4, 3)
        for p in polymers_up_to(d, 4):
            assert d.is_connected(p.members)

    def test_matches_reference_enumerator(self):
        # frontier growth with a visited set, on real and synthetic graphs
        for d in (dependency_graph_for(4, 3), path_graph(6)):
            for k in (1, 2, 3, 4):
                fast = {(m, s) for m, s, _ in _connected_set_masks(d.adj_masks, k)}
                ref = _connected_set_masks_reference(d.adj_masks, k)
                assert fast == ref

    def test_stream_is_duplicate_free(self):
        d = dependency_graph_for(5, 3)
        seen = set()
        for mask, _s, _e in _connected_set_masks(d.adj_masks, 3):
            assert mask not in seen
            seen.add(mask)

    def test_cap(self):
        d = dependency_graph_for(5, 3)
        with pytest.raises(CapExceededError):
            list(polymers_up_to(d, 3, cap=10))

    def test_bad_k(self):
        d = dependency_graph_for(4, 3)
        with pytest.raises(ValidationError):
            list(polymers_up_to(d, 0))


def _as_polymers(d, k):
    return polymers_up_to(d, k)


class TestClusters:
    def test_single_vertex(self):
        d = build_dependency_graph(
            [ForbiddenCopy.from_edges((1, 2, 3), (2, 3, 4))]
        )
        got = list(clusters_disjoint(d, 1))
        assert len(got) == 1
        assert got[0].polymers[0].members == (0,)

    def test_single_edge_k2(self):
        got = list(clusters_disjoint(path_graph(2), 2))
        shapes = sorted(tuple(p.members for p in c.polymers) for c in got)
        assert shapes == [((0,),), ((0,), (1,)), ((0, 1),), ((1,),)]

    def test_triangle_k2(self):
        got = list(clusters_disjoint(triangle_graph(), 2))
        assert len(got) == 9  # 3 singles + 3 singleton pairs + 3 two-polymers

    def test_partition_count_crosscheck(self):
        # cluster count equals, over connected sets, the number of
        # partitions into connected blocks; brute force on small graphs
        for d, k in ((dependency_graph_for(4, 3), 3), (path_graph(5), 4)):
            expect = 0
            nverts = len(d.adj_masks)
            for mask in range(1, 1 << nverts):
                members = tuple(i for i in range(nverts) if mask >> i & 1)
                if len(members) > k or not _is_conn(d, members):
                    continue
                for part in set_partitions(members):
                    if all(_is_conn(d, b) for b in part):
                        expect += 1
            got = sum(1 for _ in clusters_disjoint(d, k))
            assert got == expect

    def test_total_size_and_union(self):
        d = dependency_graph_for(4, 3)
        for c in clusters_disjoint(d, 3):
            union = sorted(i for p in c.polymers for i in p.members)
            assert len(union) == len(set(union)) == c.total_size()
            assert d.is_connected(union)

    def test_closeness_of_disjoint_polymers_is_crossing_edge(self):
        # for disjoint polymers: union connected iff some copy of one is
        # adjacent to some copy of the other
        d = dependency_graph_for(5, 3)
        polymers = [p.members for p in polymers_up_to(d, 2)]
        checked = 0
        for i in range(0, len(polymers), 7):
            for j in range(i + 1, len(polymers), 11):
                a, b = polymers[i], polymers[j]
                if set(a) & set(b):
                    continue
                crossing = any(
                    d.adj_masks[x] >> y & 1 for x in a for y in b
                )
                assert d.is_connected(tuple(set(a) | set(b))) == crossing
                checked += 1
        assert checked > 100


def _is_conn(d, members):
    if not members:
        return False
    reach = {members[0]}
    frontier = [members[0]]
    mset = set(members)
    while frontier:
        v = frontier.pop()
        for u in mset:
            if u not in reach and d.adj_masks[v] >> u & 1:
                reach.add(u)
                frontier.append(u)
    return reach == mset
