"""Seeded test-curve factories: random polygons and the named extremal examples."""

from __future__ import annotations

import math

import numpy as np

from .curve import PolyCurve, sample_uniform, torus_knot


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_polygon(seed, n: int, dim: int, closed: bool = True) -> PolyCurve:
    """Gaussian vertices."""
    return PolyCurve(_rng(seed).normal(size=(n, dim)), closed)


def random_unit_ball_polygon(seed, n: int, dim: int, closed: bool = True) -> PolyCurve:
    """Gaussian vertices rescaled so the farthest one lies on the unit sphere."""
    V = _rng(seed).normal(size=(n, dim))
    r = np.linalg.norm(V, axis=1).max()
    return PolyCurve(V / r * (1.0 - 1e-15), closed)


def random_direction_chain(seed, n_edges: int, dim: int, spread: float) -> np.ndarray:
    """Unit edge directions, each a Gaussian nudge of size ``spread`` off the last."""
    rng = _rng(seed)
    d = rng.normal(size=dim)
    dirs = [d / np.linalg.norm(d)]
    for _ in range(n_edges - 1):
        d = dirs[-1] + spread * rng.normal(size=dim)
        dirs.append(d / np.linalg.norm(d))
    return np.array(dirs)


def random_low_curvature_arc(seed, n: int, dim: int, max_tc: float = math.pi) -> PolyCurve:
    """Random arc with total curvature below ``max_tc`` (rejection sampling)."""
    from .curvature import total_curvature
    rng = _rng(seed)
    while True:
        spread = rng.uniform(0.05, 1.5) / math.sqrt(n)
        dirs = random_direction_chain(rng, n - 1, dim, spread)
        lens = rng.uniform(0.2, 1.0, size=n - 1)
        V = np.vstack([np.zeros(dim), np.cumsum(lens[:, None] * dirs, axis=0)])
        c = PolyCurve(V, closed=False)
        if total_curvature(c) < max_tc:
            return c


def convex_planar_arc(seed, n: int, total_turn: float) -> PolyCurve:
    """Planar arc turning left by random positive angles summing to ``total_turn``.

    With ``total_turn < pi`` the arc closed by its chord is convex.
    """
    rng = _rng(seed)
    w = rng.uniform(0.2, 1.0, size=n - 2)
    theta = total_turn * w / w.sum()
    lens = rng.uniform(0.3, 1.0, size=n - 1)
    heading = np.concatenate(([0.0], np.cumsum(theta)))
    steps = lens[:, None] * np.column_stack([np.cos(heading), np.sin(heading)])
    return PolyCurve(np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)]), closed=False)


def bowtie(theta: float, d: float = 1.0) -> PolyCurve:
    """Planar bowtie ``a1 a2 p1 p2``: two segments of length ``d`` crossing at angle ``theta``.

    Projected orthogonally to its diameter ``p1 p2`` it has width
    ``D = d sin(theta)`` and length ``2D/sin(theta) + D/cos(theta/2)``.
    """
    a2 = 0.5 * d * np.array([math.sin(theta), math.cos(theta)])
    p1 = np.array([0.0, 0.5 * d])
    return PolyCurve(np.array([-a2, a2, p1, -p1]), closed=True)


def bowtie_ratio(theta: float) -> float:
    """Length over projected diameter for :func:`bowtie`."""
    return 2.0 / math.sin(theta) + 1.0 / math.cos(theta / 2.0)


def symmetric_quadrilateral(h: float = 0.5) -> PolyCurve:
    """Nonplanar quadrilateral with a twofold symmetry about the z axis."""
    return PolyCurve(np.array([[1.0, 0.0, h], [0.0, 1.0, -h], [-1.0, 0.0, h], [0.0, -1.0, -h]]),
                     closed=True)


def symmetric_corner(alpha: float, leg: float = 1.0) -> PolyCurve:
    """Two-edge planar arc with equal legs turning by ``alpha`` at the middle vertex."""
    u = np.array([math.cos(alpha / 2.0), -math.sin(alpha / 2.0)])
    w = np.array([math.cos(alpha / 2.0), math.sin(alpha / 2.0)])
    return PolyCurve(np.array([-leg * u, [0.0, 0.0], leg * w]), closed=False)


def cusp_arc(dim: int = 2) -> PolyCurve:
    """Out-and-back arc with a single turn of ``pi``."""
    V = np.zeros((3, dim))
    V[1, 0] = 1.0
    return PolyCurve(V, closed=False)


def two_gon(dim: int = 2) -> PolyCurve:
    """Degenerate loop ``-e1 -> e1 -> -e1``."""
    V = np.zeros((2, dim))
    V[0, 0], V[1, 0] = -1.0, 1.0
    return PolyCurve(V, closed=True)


def trefoil(n: int = 200) -> PolyCurve:
    """``n`` uniform parameter samples of the (2, 3) torus knot."""
    return sample_uniform(torus_knot(2, 3), n).polygon


def rotation_field(seed, c: PolyCurve) -> np.ndarray:
    """``A v`` for a random antisymmetric ``A``."""
    M = _rng(seed).normal(size=(c.dim, c.dim))
    return c.vertices @ (M - M.T).T
