"""Shared fixtures: the expensive objects built once per session."""

from __future__ import annotations

import numpy as np
import pytest

from disclab import measures as M
from disclab import weights as W


@pytest.fixture(scope="session")
def w_singleton():
    """The running example: weight crushed to zero at angle 0."""
    return W.exp_inv_dist(points=(0.0,))


@pytest.fixture(scope="session")
def atom_at_zero():
    return M.point_mass(0.0, 1.0)


@pytest.fixture(scope="session")
def atom_at_pi():
    return M.point_mass(np.pi, 1.0)


@pytest.fixture(scope="session")
def obstacle_suite(atom_at_zero, w_singleton):
    """Obstacle functions for levels 4..14 (shared: ~10 s to build)."""
    from disclab.obstacle import build_obstacle_sequence

    levels = tuple(range(4, 15))
    funcs = [build_obstacle_sequence(atom_at_zero, w_singleton, n) for n in levels]
    return levels, funcs


@pytest.fixture(scope="session")
def t1_11_moments():
    """Moment sequence of the beta=1, c=1 exponential-vanishing weight."""
    from disclab.moments import moments_of_g
    from disclab.radial import preset_t1

    return moments_of_g(preset_t1(1, 1), 500)
