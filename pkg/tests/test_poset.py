"""Closure order on labels, Hasse diagram, weak edges, graph exports."""

import pytest

from borbit.atlas import (
    Context,
    dimension,
    enumerate_labels,
    label,
    label_perm,
)
from borbit.perms import bruhat_leq, identity
from borbit.poset import (
    export_dot,
    export_json,
    graph_from_json,
    hasse,
    leq,
    leq_oracle,
    leq_witness,
    maximum,
    minimum,
    weak_edges,
)

CTX42 = Context(4, 2)


def test_leq_is_a_partial_order():
    labels = enumerate_labels(CTX42)
    base = label(CTX42, identity(4), identity(4))
    top = label(CTX42, (3, 4, 1, 2), (2, 1, 3, 4))
    for a in labels:
        assert leq(CTX42, base, a)
        assert leq(CTX42, a, top)
        assert leq(CTX42, a, a)
        for b in labels:
            if leq(CTX42, a, b) and leq(CTX42, b, a):
                assert a == b
            if leq(CTX42, a, b) and a != b:
                assert dimension(CTX42, a) < dimension(CTX42, b)


def test_leq_transitivity():
    labels = enumerate_labels(CTX42)
    rel = {
        (a, b) for a in labels for b in labels if leq(CTX42, a, b)
    }
    for a, b in rel:
        for c in labels:
            if (b, c) in rel:
                assert (a, c) in rel


def test_leq_witness_is_a_coset_member_below_the_target():
    labels = enumerate_labels(CTX42)
    from borbit.atlas import coset_of

    for a in labels:
        for b in labels:
            w = leq_witness(CTX42, a, b)
            if w is None:
                assert not leq(CTX42, a, b)
            else:
                assert w in coset_of(CTX42, label_perm(a)).members
                assert bruhat_leq(w, label_perm(b))


def test_leq_matches_subword_oracle():
    for n, k in [(4, 1), (4, 2)]:
        ctx = Context(n, k)
        labels = enumerate_labels(ctx)
        for a in labels:
            for b in labels:
                assert leq(ctx, a, b) == leq_oracle(ctx, a, b)


def test_hasse_figure_skeleton():
    g = hasse(CTX42)
    assert len(g.labels) == 12
    root = minimum(g)
    top = maximum(g)
    assert g.labels[root] == label(CTX42, identity(4), identity(4))
    assert g.dims[root] == 3
    assert g.labels[top] == label(CTX42, (3, 4, 1, 2), (2, 1, 3, 4))
    assert g.dims[top] == 8
    # all twelve dimensions lie between 3 and 8, every value attained
    assert set(g.dims) == {3, 4, 5, 6, 7, 8}


def test_covers_are_irreducible_relations():
    g = hasse(CTX42)
    labels = g.labels
    for i, j in g.covers:
        assert leq(CTX42, labels[i], labels[j])
        assert labels[i] != labels[j]
        # nothing strictly between
        for m in range(len(labels)):
            if m in (i, j):
                continue
            assert not (
                leq(CTX42, labels[i], labels[m]) and leq(CTX42, labels[m], labels[j])
            )
    # every strict relation is a chain of covers: reachability check
    adjacency = {i: set() for i in range(len(labels))}
    for i, j in g.covers:
        adjacency[i].add(j)
    for i in range(len(labels)):
        reachable = set()
        stack = [i]
        while stack:
            node = stack.pop()
            for nxt in adjacency[node]:
                if nxt not in reachable:
                    reachable.add(nxt)
                    stack.append(nxt)
        expected = {
            j
            for j in range(len(labels))
            if j != i and leq(CTX42, labels[i], labels[j])
        }
        assert reachable == expected


def test_alpha_descent_flags():
    g = hasse(CTX42)
    assert g.alpha_descents <= set(g.covers)
    for i, j in g.covers:
        flagged = (i, j) in g.alpha_descents
        drop = not bruhat_leq(g.labels[i].alpha, g.labels[j].alpha)
        assert flagged == drop
    # some cover of the (4,2) diagram does drop the alpha part
    assert g.alpha_descents


def test_weak_edges_step_by_one_and_refine_covers():
    for n, k in [(4, 2), (5, 2)]:
        ctx = Context(n, k)
        g = hasse(ctx)
        cover_set = set(g.covers)
        assert g.weak == weak_edges_as_indices(ctx)
        for i, j, letter in g.weak:
            assert 1 <= letter <= n - 1
            assert (i, j) in cover_set
            assert g.dims[j] == g.dims[i] + 1


def weak_edges_as_indices(ctx):
    labels = enumerate_labels(ctx)
    index = {lbl: pos for pos, lbl in enumerate(labels)}
    return tuple((index[a], index[b], s) for a, b, s in weak_edges(ctx))


def test_weak_edges_from_the_base_orbit():
    # multiplying the identity by the simple transposition that crosses the
    # first block boundary reaches the coset of that transposition
    g = hasse(CTX42)
    root = minimum(g)
    targets = {(j, letter) for i, j, letter in g.weak if i == root}
    idx = {lbl: pos for pos, lbl in enumerate(g.labels)}
    swap_alpha = idx[label(CTX42, identity(4), (2, 1, 3, 4))]
    middle = idx[label(CTX42, (1, 3, 2, 4), identity(4))]
    assert (swap_alpha, 1) in targets
    assert (middle, 2) in targets
    assert (swap_alpha, 3) in targets


def test_unique_extrema_requires_connected_poset():
    g = hasse(Context(4, 1))
    assert g.dims[minimum(g)] == 1
    assert g.dims[maximum(g)] == 6
    assert len(g.labels) == 12


def test_export_dot():
    g = hasse(CTX42)
    text = export_dot(g, singular={0, 3})
    assert text.startswith("digraph closure_order {")
    assert "rankdir=BT" in text
    assert "rank=same" in text
    assert "color=red" in text
    assert "style=dashed" in text
    assert text.count(" -> ") == len(g.covers)


def test_export_json_round_trip():
    g = hasse(CTX42)
    singular = frozenset({1, 5, 7})
    text = export_json(g, singular)
    g2, singular2 = graph_from_json(text)
    assert g2 == g
    assert singular2 == singular
