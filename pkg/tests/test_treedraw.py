"""Heavy-path decomposition and tree drawing."""
import math

import numpy as np
import pytest

from balloonpack import (
    PathItem,
    RootedTree,
    check_drawing,
    compose_path,
    draw_tree,
    heavy_decomposition,
)
from conftest import complete_tree, path_tree, random_recursive_tree, star_tree

TWO_PI = 2.0 * math.pi


def test_from_parents_and_from_edges_agree():
    parents = [-1, 0, 0, 1, 1, 2]
    t = RootedTree.from_parents(parents)
    u = RootedTree.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    assert t.parent.tolist() == u.parent.tolist()
    assert t.children == u.children
    assert t.root == 0
    assert t.children[0] == (1, 2)
    assert t.children[5] == ()


def test_tree_validation():
    with pytest.raises(ValueError):
        RootedTree.from_parents([0])  # root must point nowhere
    with pytest.raises(ValueError):
        RootedTree.from_parents([-1, -1])  # two roots
    with pytest.raises(ValueError):
        RootedTree.from_parents([-1, 5])  # out of range
    with pytest.raises(ValueError):
        RootedTree.from_parents([-1, 2, 1])  # cycle off the root
    with pytest.raises(ValueError):
        RootedTree.from_edges(3, [(0, 1)])  # disconnected
    with pytest.raises(ValueError):
        RootedTree.from_edges(3, [(0, 1), (0, 2), (1, 2)])  # extra parent


def test_heavy_decomposition_path_is_single_path():
    h = heavy_decomposition(path_tree(5))
    assert h.paths == ((0, 1, 2, 3, 4),)
    assert max(h.depth) == 1
    assert h.light_parent_edge[0] is None


def test_heavy_decomposition_star():
    h = heavy_decomposition(star_tree(6))
    # the root chain takes the smallest-id leaf; others become singleton paths
    assert h.paths[h.path_of[0]] == (0, 1)
    assert sorted(len(p) for p in h.paths) == [1, 1, 1, 1, 2]
    for leaf in (2, 3, 4, 5):
        assert h.light_parent_edge[h.path_of[leaf]] == (0, leaf)


def test_heavy_decomposition_complete_binary():
    t = complete_tree(31, 2)
    h = heavy_decomposition(t)
    assert h.paths[h.path_of[0]] == (0, 1, 3, 7, 15)
    assert len(h.paths) == 16
    assert max(h.depth) == 5
    assert h.subtree_size[0] == 31
    assert h.subtree_size[15] == 1
    # ties go to the smaller child id
    assert h.heavy_child[0] == 1


def test_light_edges_per_root_leaf_chain_logarithmic():
    for n, k in ((31, 2), (121, 3), (255, 2)):
        t = complete_tree(n, k)
        h = heavy_decomposition(t)
        heavy = set()
        for p in h.paths:
            heavy.update(zip(p, p[1:]))
        for leaf in range(n):
            if t.children[leaf]:
                continue
            light = 0
            u = leaf
            while u != 0:
                if (int(t.parent[u]), u) not in heavy:
                    light += 1
                u = int(t.parent[u])
            assert light <= math.log2(n)


def _chain_items(xs):
    items = [PathItem(node=0, x=xs[0], parent_a=None, exit_a=0.0, free_pair=None, balloons=[])]
    for i, x in enumerate(xs[1:], start=1):
        # interior nodes carry an antipodal free pair; the last stays bare
        pair = (math.pi, 0.0) if i < len(xs) - 1 else None
        items.append(
            PathItem(node=i, x=x, parent_a=None, exit_a=None, free_pair=pair, balloons=[])
        )
    return items


def test_compose_path_straight_chain():
    pos, rot, radius = compose_path(_chain_items([1.0, 1.0]))
    assert pos == pytest.approx(np.array([[0.0, 0.0], [2.0, 0.0]]))
    assert radius == pytest.approx(3.0)
    pos, rot, radius = compose_path(_chain_items([1.0] * 5))
    # tangent unit disks along a line
    assert pos[:, 0] == pytest.approx(np.arange(5) * 2.0)
    assert pos[:, 1] == pytest.approx(np.zeros(5), abs=1e-9)
    assert radius == pytest.approx(9.0)


def test_compose_path_single_item():
    pos, rot, radius = compose_path(_chain_items([2.5]))
    assert pos == pytest.approx(np.array([[0.0, 0.0]]))
    assert radius == pytest.approx(2.5)


def test_compose_path_rejects_bad_input():
    with pytest.raises(ValueError):
        compose_path([])
    end = PathItem(node=1, x=1.0, parent_a=None, exit_a=None, free_pair=None, balloons=[])
    # parent and exit spokes of the top node too close together
    top = PathItem(node=0, x=1.0, parent_a=0.0, exit_a=1.0, free_pair=None, balloons=[])
    with pytest.raises(ValueError):
        compose_path([top, end])
    # interior node with a cramped free pair
    top = PathItem(node=0, x=1.0, parent_a=None, exit_a=0.0, free_pair=None, balloons=[])
    mid = PathItem(node=1, x=1.0, parent_a=None, exit_a=None, free_pair=(0.0, 1.0), balloons=[])
    with pytest.raises(ValueError):
        compose_path([top, mid, end])


def test_compose_path_consecutive_disks_touch_or_clear():
    xs = [1.0, 3.0, 1.5, 2.0, 1.0, 1.0]
    pos, rot, radius = compose_path(_chain_items(xs))
    for i in range(len(xs) - 1):
        d = float(np.hypot(*(pos[i + 1] - pos[i])))
        assert d >= xs[i] + xs[i + 1] - 1e-9


def test_draw_single_node():
    d = draw_tree(path_tree(1))
    assert d.positions == pytest.approx(np.zeros((1, 2)))
    assert len(d.edges) == 0
    assert d.stats["covering_radius"] == pytest.approx(1.0)
    assert d.stats["min_edge_length"] is None


def test_draw_path_three():
    d = draw_tree(path_tree(3))
    assert d.root == 0
    assert d.positions[0] == pytest.approx([0.0, 0.0])
    assert d.stats["covering_radius"] == pytest.approx(5.0)
    assert d.stats["min_edge_length"] == pytest.approx(2.0)
    assert check_drawing(d).passed


def test_draw_star_six():
    d = draw_tree(star_tree(6))
    assert d.stats["covering_radius"] == pytest.approx(6.051462224238267, abs=1e-9)
    assert check_drawing(d).passed


def test_draw_complete_trees():
    d = draw_tree(complete_tree(31, 2))
    assert d.stats["covering_radius"] == pytest.approx(152.28716016501338, abs=1e-6)
    assert check_drawing(d).passed
    d = draw_tree(complete_tree(13, 3))
    assert d.stats["covering_radius"] == pytest.approx(19.395240038449668, abs=1e-6)
    assert check_drawing(d).passed


def test_edges_follow_parent_array():
    t = complete_tree(13, 3)
    d = draw_tree(t)
    assert sorted(map(tuple, d.edges.tolist())) == sorted(
        (int(t.parent[v]), v) for v in range(1, 13)
    )


def test_draw_tree_is_deterministic():
    t = random_recursive_tree(np.random.default_rng(3), 40)
    a = draw_tree(t)
    b = draw_tree(t)
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.edges, b.edges)
    assert a.exclusive == b.exclusive


def test_random_trees_pass_checker():
    rng = np.random.default_rng(19)
    for _ in range(30):
        n = int(rng.integers(1, 65))
        d = draw_tree(random_recursive_tree(rng, n))
        rep = check_drawing(d)
        assert rep.passed, rep.violations
        if n >= 2:
            assert d.stats["exponent"] <= 3.0367
