"""Shared builders for randomized layout and tree test corpora."""
import numpy as np

from balloonpack import RootedTree
from balloonpack.cli import random_radii, random_tree

DISTS = ("uniform", "powerlaw", "equal")


def random_instance(rng: np.random.Generator, max_exp: float = 10.0):
    """One normalized radii vector with n drawn log-uniformly from [1, 2**max_exp]."""
    n = int(round(2.0 ** rng.uniform(0.0, max_exp)))
    dist = DISTS[int(rng.integers(len(DISTS)))]
    return random_radii(n, dist, rng)


def path_tree(n: int) -> RootedTree:
    return RootedTree.from_parents([-1] + list(range(n - 1)))


def star_tree(n: int) -> RootedTree:
    return RootedTree.from_parents([-1] + [0] * (n - 1))


def complete_tree(n: int, arity: int) -> RootedTree:
    return RootedTree.from_parents([-1] + [(i - 1) // arity for i in range(1, n)])


def random_recursive_tree(rng: np.random.Generator, n: int) -> RootedTree:
    return random_tree(n, rng)
