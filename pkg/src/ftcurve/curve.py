"""Polygonal and parametric curves, length, inscription, Frechet distance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _backend
from .errors import BadParams, DegenerateCurve, DimensionMismatch, OutOfRange

__all__ = [
    "PolyCurve",
    "ParamCurve",
    "MeshedSample",
    "normalize",
    "length",
    "edge_vectors",
    "edge_lengths",
    "cumulative_length",
    "inscribe",
    "sample_uniform",
    "arclength",
    "point_at_arclength",
    "discrete_frechet",
    "diameter",
    "regular_polygon",
    "unit_square",
    "circle",
    "helix",
    "torus_knot",
    "log_spiral",
    "catalog",
    "CATALOG",
]


@dataclass(frozen=True, eq=False)
class PolyCurve:
    """Ordered vertices in E^d, either an open arc or a closed loop.

    ``vertices`` is stored as a read-only ``(n, d)`` float array. A loop does
    not repeat its first vertex at the end; the closing edge is implicit.
    """

    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float, copy=True)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2 or v.shape[1] < 1:
            raise ValueError("vertices must be an (n, d) array with d >= 1")
        if v.shape[0] < 2:
            raise DegenerateCurve("a curve needs at least two vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertex coordinates must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "closed", bool(self.closed))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    @property
    def topology(self) -> str:
        return "loop" if self.closed else "arc"

    @property
    def n_edges(self) -> int:
        return self.n if self.closed else self.n - 1

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"PolyCurve({self.topology}, n={self.n}, dim={self.dim})"

    def with_vertices(self, vertices) -> PolyCurve:
        return PolyCurve(vertices, self.closed)

    def is_normalized(self) -> bool:
        return bool(np.all(edge_lengths(self) > 0.0))


def edge_vectors(c: PolyCurve) -> np.ndarray:
    v = c.vertices
    if c.closed:
        return np.roll(v, -1, axis=0) - v
    return np.diff(v, axis=0)


def edge_lengths(c: PolyCurve) -> np.ndarray:
    return np.linalg.norm(edge_vectors(c), axis=1)


def cumulative_length(c: PolyCurve) -> np.ndarray:
    """Arclength at each vertex, starting from 0 (length n)."""
    el = edge_lengths(c)
    return np.concatenate(([0.0], np.cumsum(el[: c.n - 1])))


def length(c: PolyCurve) -> float:
    return float(np.sum(edge_lengths(c)))


def normalize(c: PolyCurve, eps: float = 0.0) -> PolyCurve:
    """Collapse runs of consecutive equal vertices.

    Two consecutive vertices are equal when their distance is ``<= eps``
    (exact equality by default). For a loop the wrap-around pair is also
    collapsed.

    Raises
    ------
    DegenerateCurve
        If every vertex coincides with its neighbours.
    """
    v = c.vertices
    keep = [0]
    for i in range(1, c.n):
        if np.linalg.norm(v[i] - v[keep[-1]]) > eps:
            keep.append(i)
    if c.closed:
        while len(keep) > 1 and np.linalg.norm(v[keep[-1]] - v[keep[0]]) <= eps:
            keep.pop()
    if len(keep) < 2:
        raise DegenerateCurve("all vertices coincide")
    if len(keep) == c.n:
        return c
    return PolyCurve(v[keep], c.closed)


def require_normalized(c: PolyCurve) -> None:
    el = edge_lengths(c)
    if np.any(el == 0.0):
        i = int(np.argmin(el))
        raise DegenerateCurve(f"zero-length edge at vertex {i}; normalize first")


@dataclass(frozen=True, eq=False)
class ParamCurve:
    """Parametrized curve with a vectorized evaluator.

    ``period`` is the length of the parameter domain: ``[0, period]`` for an
    arc, a circle of circumference ``period`` for a loop.
    """

    dim: int
    period: float
    closed: bool
    evaluator: Callable[[np.ndarray], np.ndarray]
    tag: str = "user"
    params: dict = field(default_factory=dict)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        pts = np.asarray(self.evaluator(t), dtype=float)
        return pts.reshape(len(t), self.dim)


@dataclass(frozen=True, eq=False)
class MeshedSample:
    curve: ParamCurve
    params: np.ndarray
    polygon: PolyCurve
    mesh: float


def inscribe(pc: ParamCurve, params) -> MeshedSample:
    """Polygon with vertices ``pc(t_i)`` for strictly increasing ``t_i``."""
    t = np.asarray(params, dtype=float).ravel()
    if len(t) < 2:
        raise BadParams("need at least two parameters")
    if np.any(np.diff(t) <= 0):
        raise BadParams("parameters must be strictly increasing")
    if t[0] < 0.0 or t[-1] > pc.period or (pc.closed and t[-1] >= pc.period):
        raise BadParams(f"parameters must lie in the domain of length {pc.period}")
    gaps = np.diff(t)
    if pc.closed:
        gaps = np.append(gaps, pc.period - t[-1] + t[0])
    poly = PolyCurve(pc(t), pc.closed)
    t = t.copy()
    t.setflags(write=False)
    return MeshedSample(pc, t, poly, float(gaps.max()))


def sample_uniform(pc: ParamCurve, n: int) -> MeshedSample:
    if pc.closed:
        if n < 3:
            raise BadParams("a loop needs at least 3 samples")
        t = np.arange(n) * (pc.period / n)
    else:
        if n < 2:
            raise BadParams("an arc needs at least 2 samples")
        t = np.linspace(0.0, pc.period, n)
    return inscribe(pc, t)


def arclength(pc: ParamCurve, tol: float = 1e-10, n0: int = 64, n_max: int = 1 << 22) -> float:
    """Length of ``pc`` as the limit of uniformly inscribed polygons.

    Doubles the sample count until successive lengths differ by < ``tol``.
    """
    prev = length(sample_uniform(pc, n0).polygon)
    n = n0
    while n < n_max:
        n *= 2
        cur = length(sample_uniform(pc, n).polygon)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def point_at_arclength(c: PolyCurve, s: float) -> np.ndarray:
    total = length(c)
    if c.closed:
        s = math.fmod(s, total) if total > 0 else 0.0
        if s < 0:
            s += total
    elif s < -1e-12 * max(total, 1.0) or s > total * (1 + 1e-12) + 1e-300:
        raise OutOfRange(f"s={s} outside [0, {total}]")
    cum = cumulative_length(c)
    el = edge_lengths(c)
    i = int(np.searchsorted(cum, s, side="right") - 1)
    i = min(max(i, 0), c.n_edges - 1)
    if el[i] == 0.0:
        return c.vertices[i].copy()
    u = min(max((s - cum[i]) / el[i], 0.0), 1.0)
    a = c.vertices[i]
    b = c.vertices[(i + 1) % c.n]
    return a + u * (b - a)


def _traversal(c: PolyCurve) -> np.ndarray:
    if c.closed:
        return np.vstack([c.vertices, c.vertices[:1]])
    return np.asarray(c.vertices)


def discrete_frechet(a: PolyCurve, b: PolyCurve) -> float:
    """Discrete Frechet distance over monotone couplings of the vertex sequences.

    Loops are traversed from their first vertex back to it.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim}")
    P = np.ascontiguousarray(_traversal(a), dtype=float)
    Q = np.ascontiguousarray(_traversal(b), dtype=float)
    return float(_backend.kernels.frechet_dp(P, Q))


def diameter(c: PolyCurve):
    """Largest vertex-to-vertex distance and an index pair attaining it."""
    v = c.vertices
    best, pair = -1.0, (0, 0)
    for i in range(c.n - 1):
        d = np.linalg.norm(v[i + 1 :] - v[i], axis=1)
        j = int(np.argmax(d))
        if d[j] > best:
            best, pair = float(d[j]), (i, i + 1 + j)
    return best, pair


# ---------------------------------------------------------------------------
# catalog


def regular_polygon(n: int, radius: float = 1.0, dim: int = 2, phase: float = 0.0) -> PolyCurve:
    k = np.arange(n)
    ang = phase + 2.0 * math.pi * k / n
    v = np.zeros((n, dim))
    v[:, 0] = radius * np.cos(ang)
    v[:, 1] = radius * np.sin(ang)
    return PolyCurve(v, closed=True)


def unit_square(dim: int = 2, clockwise: bool = False) -> PolyCurve:
    v = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    if clockwise:
        v = v[::-1]
    if dim > 2:
        v = np.hstack([v, np.zeros((4, dim - 2))])
    return PolyCurve(v, closed=True)


def circle(radius: float = 1.0) -> ParamCurve:
    def ev(t):
        return np.column_stack([radius * np.cos(t), radius * np.sin(t)])

    return ParamCurve(2, 2 * math.pi, True, ev, "circle", {"radius": radius})


def helix(turns: float = 1.0, radius: float = 1.0, pitch: float = 1.0) -> ParamCurve:
    """Open helix; ``pitch`` is the rise per full turn."""
    c = pitch / (2 * math.pi)

    def ev(t):
        return np.column_stack([radius * np.cos(t), radius * np.sin(t), c * t])

    return ParamCurve(3, 2 * math.pi * turns, False, ev, "helix",
                      {"turns": turns, "radius": radius, "pitch": pitch})


def torus_knot(p: int = 2, q: int = 3) -> ParamCurve:
    """``t -> ((2 + cos qt) cos pt, (2 + cos qt) sin pt, sin qt)`` on ``[0, 2pi)``."""

    def ev(t):
        r = 2.0 + np.cos(q * t)
        return np.column_stack([r * np.cos(p * t), r * np.sin(p * t), np.sin(q * t)])

    return ParamCurve(3, 2 * math.pi, True, ev, f"torus-knot-{p}-{q}", {"p": p, "q": q})


def log_spiral(a: float = 0.2, turns: float = 2.0) -> ParamCurve:
    """Planar arc ``r = exp(a t)`` for ``t`` in ``[0, 2 pi turns]``."""

    def ev(t):
        r = np.exp(a * t)
        return np.column_stack([r * np.cos(t), r * np.sin(t)])

    return ParamCurve(2, 2 * math.pi * turns, False, ev, "log-spiral", {"a": a, "turns": turns})


CATALOG = {
    "circle": circle,
    "helix": helix,
    "torus-knot": torus_knot,
    "trefoil": lambda: torus_knot(2, 3),
    "log-spiral": log_spiral,
}


def catalog(name: str, **kwargs) -> ParamCurve:
    """Look up a catalog curve by name; ``torus-knot-P-Q`` encodes its type."""
    if name.startswith("torus-knot-"):
        try:
            p, q = (int(x) for x in name[len("torus-knot-"):].split("-"))
        except ValueError:
            raise KeyError(name) from None
        return torus_knot(p, q)
    if name not in CATALOG:
        raise KeyError(name)
    return CATALOG[name](**kwargs)
