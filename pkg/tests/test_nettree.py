import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import corpus, random_instance, true_mrd
from ndpmatch import Alphabet, Metric, Pattern, RankedSequence, build, delete_occurrence, stats
from ndpmatch.matcher import reach_leaf
from ndpmatch.nettree import TreeError
from ndpmatch.oracle import enumerate_all

def check_structure(t, s, p, gamma, prune):
    for j, level in enumerate(t.levels, start=1):
        assert list(level) == sorted(level)
        for pos, nd in level.items():
            assert (nd.level, nd.pos) == (j, pos)
            assert [q.pos for q in nd.parents] == sorted(q.pos for q in nd.parents)
            for par in nd.parents:
                assert nd in par.children
                gap = nd.pos - par.pos - 1
                assert p.gaps[j - 2][0] <= gap <= p.gaps[j - 2][1]
                if prune:
                    assert par.mrd + nd.delta <= gamma
            for ch in nd.children:
                assert nd in ch.parents


# -- the nine-symbol walkthrough ------------------------------------------------

def test_pruned_nodes_absent(ex7):
    s, p = ex7
    t = build(s, p, 1, 1)
    assert t.node(2, 4) is None
    assert t.node(3, 8) is None
    assert t.counters.pruned_nodes >= 2


def test_walkthrough_mrds(ex7):
    s, p = ex7
    t = build(s, p, 1, 1)
    mrd = {(j, i): t.node(j, i).mrd for j, i in [(1, 1), (1, 2), (2, 2), (2, 3), (4, 9)]}
    assert mrd == {(1, 1): 0, (1, 2): 1, (2, 2): 0, (2, 3): 0, (4, 9): 0}


def test_walkthrough_edge_pruned(ex7):
    s, p = ex7
    t = build(s, p, 1, 1)
    n33, n45 = t.node(3, 3), t.node(4, 5)
    assert n33 is not None and n45 is not None
    assert n45 not in n33.children


def test_walkthrough_counts(ex7):
    s, p = ex7
    pruned = stats(build(s, p, 1, 1)).as_dict()
    full = stats(build(s, p, 1, 1, prune=False)).as_dict()
    assert pruned == {"total_nodes": 27, "total_edges": 29, "pruned_nodes": 2, "pruned_edges": 10}
    assert full["total_nodes"] == 29 and full["total_edges"] == 43
    assert full["pruned_nodes"] == full["pruned_edges"] == 0


def test_delete_keeps_neighbours(ex7):
    s, p = ex7
    t = build(s, p, 1, 1)
    delete_occurrence(t, (4, 6, 7, 9))
    assert t.node(3, 7) is None
    assert t.node(4, 8) is not None
    assert all(q.pos != 7 for q in t.node(4, 8).parents)
    with pytest.raises(TreeError):
        delete_occurrence(t, (4, 6, 7, 9))
    with pytest.raises(TreeError):
        delete_occurrence(t, (1, 2))


def test_exhaustion_leaves_no_path(ex7):
    s, p = ex7
    t = build(s, p, 1, 1)
    for occ in [(4, 6, 7, 9), (2, 3, 6, 7), (1, 2, 5, 6)]:
        delete_occurrence(t, occ)
    assert all(reach_leaf(t, r) is None for r in t.roots())


def test_dump_lists_levels(ex7):
    s, p = ex7
    text = build(s, p, 1, 1).dump()
    assert len(text.splitlines()) == 4
    assert "9(0,0)" in text


# -- degenerate inputs ------------------------------------------------------------

def test_empty_sequence():
    a = Alphabet.lower()
    t = build(RankedSequence.from_text("", a), Pattern(("a", "b"), ((0, 1),)), 1, 1)
    assert stats(t).as_dict() == dict.fromkeys(("total_nodes", "total_edges", "pruned_nodes", "pruned_edges"), 0)


def test_far_symbols_give_empty_tree():
    a = Alphabet.lower()
    t = build(RankedSequence.from_text("zzz", a), Pattern(("a", "b"), ((0, 1),)), 1, 1)
    assert list(t.nodes()) == []


def test_single_level_pattern():
    a = Alphabet.lower()
    t = build(RankedSequence.from_text("abcab", a), Pattern(("b",), ()), 1, 0)
    assert [nd.pos for nd in t.roots()] == [2, 5]
    assert t.counters.pruned_nodes == 3


def test_negative_thresholds_rejected(ex7):
    s, p = ex7
    with pytest.raises(ValueError):
        build(s, p, -1, 1)


# -- properties against brute force ----------------------------------------------

@pytest.mark.parametrize("prune", [True, False])
def test_stored_mrd_matches_exhaustive(prune):
    for inst in corpus(300, seed=7, max_n=25):
        t = build(inst.s, inst.p, inst.delta, inst.gamma, prune=prune)
        truth = true_mrd(inst.s, inst.p, inst.delta)
        expect = {k: v for k, v in truth.items() if not prune or v <= inst.gamma}
        got = {(nd.level, nd.pos): nd.mrd for nd in t.nodes()}
        assert got == expect, inst


@pytest.mark.parametrize("prune", [True, False])
def test_structure_invariants(prune):
    for inst in corpus(300, seed=11):
        t = build(inst.s, inst.p, inst.delta, inst.gamma, prune=prune)
        check_structure(t, inst.s, inst.p, inst.gamma, prune)
        c = t.counters
        assert c.total_nodes == sum(1 for _ in t.nodes())
        assert c.total_edges == t.edge_count()


def full_paths(t, gamma):
    out = set()

    def walk(nd, path, acc):
        path = path + [nd.pos]
        acc += nd.delta
        if nd.level == t.m:
            if acc <= gamma:
                out.add(tuple(path))
            return
        for ch in nd.children:
            walk(ch, path, acc)

    for r in t.roots():
        walk(r, [], 0)
    return out


def test_pruning_keeps_every_valid_path():
    for inst in corpus(300, seed=13):
        args = (inst.s, inst.p, inst.delta, inst.gamma)
        want = {o.positions for o in enumerate_all(*args)}
        assert full_paths(build(*args, prune=True), inst.gamma) == want
        assert full_paths(build(*args, prune=False), inst.gamma) == want


def test_pruned_never_larger():
    for inst in corpus(300, seed=17):
        args = (inst.s, inst.p, inst.delta, inst.gamma)
        a, b = stats(build(*args, prune=True)), stats(build(*args, prune=False))
        assert a.total_nodes <= b.total_nodes and a.total_edges <= b.total_edges


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_indicator_tree_mrd(seed):
    inst = random_instance(random.Random(seed), max_n=20)
    t = build(inst.s, inst.p, 1, inst.gamma, Metric.INDICATOR)
    truth = true_mrd(inst.s, inst.p, 1, Metric.INDICATOR)
    assert {(nd.level, nd.pos): nd.mrd for nd in t.nodes()} == \
        {k: v for k, v in truth.items() if v <= inst.gamma}
