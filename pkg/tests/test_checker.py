"""Independent verification of layouts and drawings, plus the tiny oracle."""
import dataclasses
import math

import numpy as np
import pytest

from balloonpack import (
    KAPPA,
    check_drawing,
    check_layout,
    contact_layer_bound,
    draw_tree,
    greedy_balloon,
    greedy_one_free,
    greedy_two_free,
    tiny_oracle,
    uniform_spokes,
)
from conftest import path_tree, star_tree

TWO_PI = 2.0 * math.pi


def _kinds(rep):
    return {v.kind for v in rep.violations}


@pytest.fixture
def base():
    return greedy_balloon([0.4, 0.3, 0.2, 0.1])


def test_clean_layouts_pass(base):
    rep = check_layout(base, variant=0)
    assert rep.passed and bool(rep)
    assert rep.violations == ()
    assert rep.measured["covering_radius"] == pytest.approx(base.covering_radius)
    assert rep.measured["ratio_to_bound"] <= 1.0 + 1e-12


def test_checker_rejects_overlapping_disks(base):
    bad = dataclasses.replace(base, center=base.center * 0.12)
    rep = check_layout(bad, variant=0)
    assert not rep.passed
    assert "disjointness" in _kinds(rep)


def test_checker_rejects_safe_disk_intrusion(base):
    i = int(np.argmax(base.round_index))
    c = base.center.copy()
    c[i] = base.radii[base.balloon[i]]  # pulled back into earlier rounds
    rep = check_layout(dataclasses.replace(base, center=c), variant=0)
    assert "safety" in _kinds(rep)


def test_checker_rejects_broken_wedge_claim(base):
    w = base.wedge_opening.copy()
    w[0] = 0.1  # claims a confinement the center distance cannot honor
    rep = check_layout(dataclasses.replace(base, wedge_opening=w), variant=0)
    assert "wedge" in _kinds(rep)


def test_checker_rejects_blocked_spoke(base):
    i = int(np.argmin(base.center))
    c = base.center.copy()
    c[i] = 0.5 * base.radii[base.balloon[i]]  # disk now swallows the origin
    rep = check_layout(dataclasses.replace(base, center=c), variant=0)
    assert "spoke-clearance" in _kinds(rep)


def test_checker_rejects_off_grid_spokes(base):
    u = base.spoke_unit.copy()
    u[1] = u[0]
    rep = check_layout(dataclasses.replace(base, spoke_unit=u), variant=0)
    assert "resolution" in _kinds(rep)


def test_checker_rejects_wrong_recorded_radius(base):
    rep = check_layout(dataclasses.replace(base, covering_radius=5.0), variant=0)
    assert "bound" in _kinds(rep)


def test_checker_rejects_oversized_layout(base):
    c = base.center.copy()
    c[0] = 5.0
    rep = check_layout(dataclasses.replace(base, center=c), variant=0)
    assert "bound" in _kinds(rep)


def test_checker_rejects_wrong_free_spoke_count():
    l = greedy_two_free([0.5, 0.5])
    rep = check_layout(l, variant=1)
    assert "resolution" in _kinds(rep)


def test_checker_rejects_narrow_free_pair():
    l = greedy_two_free([0.5, 0.5])
    # free spokes one grid step apart subtend pi/2 < 2*pi/3
    bad = dataclasses.replace(
        l, free_units=np.array([1, 2]), free_labels=np.array([2, 3])
    )
    rep = check_layout(bad, variant=2)
    assert "resolution" in _kinds(rep)


def test_checker_variant_defaults_to_layout_field():
    l = greedy_one_free([0.3, 0.7])
    assert check_layout(l).passed


def test_contact_layer_bound_values():
    assert contact_layer_bound(3) == 1
    assert contact_layer_bound(4) == 1
    assert contact_layer_bound(5) == 2
    assert contact_layer_bound(9) == 3
    assert contact_layer_bound(1024) == 9
    with pytest.raises(ValueError):
        contact_layer_bound(2)


def test_contact_layer_bound_recursion_and_log():
    for l in range(5, 5000):
        half = (l + 1) // 2
        assert contact_layer_bound(l) == 1 + contact_layer_bound(half)
        assert contact_layer_bound(l) <= math.log2(l - 1) + 1e-12


def test_tiny_oracle_frozen_values():
    eps = 1e-3
    got = tiny_oracle([eps, eps, 1.0 - 2.0 * eps], uniform_spokes(5), 2, TWO_PI / 3.0)
    assert got == pytest.approx(2.0473592997897905, abs=1e-9)
    assert got >= KAPPA - 0.01
    assert tiny_oracle([0.5, 0.5], uniform_spokes(2), 0) == pytest.approx(1.0, abs=1e-9)
    assert tiny_oracle([0.4], uniform_spokes(3), 2, TWO_PI / 3.0) == pytest.approx(
        0.8, abs=1e-9
    )


def test_tiny_oracle_lower_bounds_greedy():
    rng = np.random.default_rng(11)
    builders = {0: greedy_balloon, 1: greedy_one_free, 2: greedy_two_free}
    for _ in range(12):
        n = int(rng.integers(1, 4))
        r = rng.uniform(0.05, 1.0, n)
        for free, build in builders.items():
            l = build(r)
            minang = TWO_PI / 3.0 if free == 2 else 0.0
            o = tiny_oracle(r, uniform_spokes(l.n_base), free, minang)
            assert o <= l.covering_radius + 1e-8


def test_tiny_oracle_rejects_bad_input():
    with pytest.raises(ValueError):
        tiny_oracle([0.1] * 4, uniform_spokes(4), 0)
    with pytest.raises(ValueError):
        tiny_oracle([0.5], uniform_spokes(3), 1)  # spoke count mismatch
    with pytest.raises(ValueError):
        tiny_oracle([0.5], uniform_spokes(4), 3)
    with pytest.raises(ValueError):
        tiny_oracle([], uniform_spokes(2), 2)


@pytest.fixture
def path3():
    return draw_tree(path_tree(3))


def test_clean_drawings_pass(path3):
    rep = check_drawing(path3)
    assert rep.passed
    assert rep.measured["covering_radius"] == pytest.approx(5.0)
    assert rep.measured["min_edge_length"] == pytest.approx(2.0)


def test_drawing_checker_rejects_missing_edge(path3):
    rep = check_drawing(dataclasses.replace(path3, edges=path3.edges[:-1]))
    assert "structure" in _kinds(rep)


def test_drawing_checker_rejects_short_edge(path3):
    p = path3.positions.copy()
    p[2] = p[1] + 0.25 * (p[2] - p[1])
    rep = check_drawing(dataclasses.replace(path3, positions=p))
    assert "edge-length" in _kinds(rep)


def test_drawing_checker_rejects_poor_resolution(path3):
    p = path3.positions.copy()
    # fold the far end back so both edges leave the middle node together
    p[2] = p[1] + 0.9 * (p[0] - p[1]) + np.array([0.0, 0.05])
    rep = check_drawing(dataclasses.replace(path3, positions=p))
    assert "resolution" in _kinds(rep)


def test_drawing_checker_rejects_crossing_edges():
    d = draw_tree(path_tree(4))
    p = np.array([[0.0, 0.0], [3.0, 1.0], [1.2, -1.0], [1.2, 2.0]])
    rep = check_drawing(dataclasses.replace(d, positions=p))
    assert "planarity" in _kinds(rep)


def test_drawing_checker_rejects_escaped_subtree():
    d = draw_tree(star_tree(6))
    p = d.positions.copy()
    p[3] *= 20.0
    rep = check_drawing(dataclasses.replace(d, positions=p))
    assert "nesting" in _kinds(rep)


def test_drawing_checker_rejects_overlapping_sibling_disks():
    d = draw_tree(star_tree(6))
    rep = check_drawing(dataclasses.replace(d, positions=d.positions * 0.25))
    assert "nesting" in _kinds(rep)


def test_drawing_checker_rejects_oversized_radius(path3):
    rep = check_drawing(
        dataclasses.replace(path3, exclusive=((path3.root, 1e5),))
    )
    assert "bound" in _kinds(rep)
