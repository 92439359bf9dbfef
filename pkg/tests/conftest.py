"""Shared generators and brute-force oracles for the test suite."""

import random

import pytest

from finconv.core import make_space


def random_point_limit_space(rng, size, labels=None):
    """A random point-limit structure on ``size`` points."""
    if labels is None:
        labels = tuple(f"p{i}" for i in range(size))
    else:
        labels = tuple(labels)[:size]
    limits = {}
    for p in labels:
        lim = {p}
        for q in labels:
            if q != p and rng.random() < 0.4:
                lim.add(q)
        limits[p] = lim
    return make_space(labels, limits)


def space_pool(seed, count, max_size, min_size=1):
    rng = random.Random(seed)
    pool = []
    for _ in range(count):
        pool.append(random_point_limit_space(rng, rng.randint(min_size, max_size)))
    return pool


def brute_continuity(f):
    """Continuity by the raw definition: every principal filter."""
    X, Y = f.domain, f.codomain
    for gen in X.nonempty_subsets():
        image = frozenset(f.mapping[p] for p in gen)
        for x in X.limit_of_subset(gen):
            if f.mapping[x] not in Y.limit_of_subset(image):
                return False
    return True


@pytest.fixture
def rng():
    return random.Random(20240817)
