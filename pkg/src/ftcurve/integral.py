"""Random projections and Monte Carlo integral geometry of polygonal curves.

Every estimator draws its samples in fixed-size blocks; block ``b`` uses a
Philox generator keyed by ``(seed, stream, b)``. Results therefore depend only
on ``(inputs, seed, n)``, however the blocks are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .curvature import angle_between, tantrix
from .curve import PolyCurve, edge_vectors, length, normalize
from .errors import BadDims, DegenerateCurve, DegenerateDirection, DimensionMismatch, EdgeTooLong

BLOCK = 4096

_STREAM_PLANS = 0
_STREAM_DIRECTIONS = 1
_STREAM_RESAMPLE = 2

_MASK64 = (1 << 64) - 1


def block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed & _MASK64, stream, block])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    n: int
    seed: int

    @classmethod
    def from_samples(cls, x, seed):
        x = np.asarray(x, dtype=float)
        if len(x) < 2:
            raise ValueError("need at least two samples")
        # shift by the first sample so a constant sample set is reproduced exactly
        r = x - x[0]
        mean = float(x[0] + r.mean())
        return cls(mean, float(r.std(ddof=1) / math.sqrt(len(x))), len(x), int(seed))

    def within(self, target: float, k: float = 3.0, rel: float = 0.0) -> bool:
        return abs(self.mean - target) <= max(k * self.stderr, rel * abs(target))

    def to_dict(self):
        return {"mean": self.mean, "stderr": self.stderr, "n": self.n, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class ProjectionPlan:
    """Orthogonal projection E^d -> E^k given by ``k`` orthonormal rows."""

    d: int
    k: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.shape != (self.k, self.d):
            raise BadDims(f"basis shape {b.shape} != ({self.k}, {self.d})")
        if not np.allclose(b @ b.T, np.eye(self.k), atol=1e-12, rtol=0):
            raise ValueError("basis rows are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)


def _check_dims(d, k):
    if not (1 <= k < d):
        raise BadDims(f"need 1 <= k < d, got d={d}, k={k}")


def _random_bases(rng, d, k, m):
    """``m`` Haar-distributed orthonormal ``k``-frames in E^d, shape ``(m, k, d)``."""
    G = rng.standard_normal((m, d, k))
    if k == 1:
        u = G[:, :, 0]
        return (u / np.linalg.norm(u, axis=1)[:, None])[:, None, :]
    Q, R = np.linalg.qr(G)
    s = np.sign(np.diagonal(R, axis1=1, axis2=2))
    s[s == 0] = 1.0
    return np.transpose(Q * s[:, None, :], (0, 2, 1))


def plan_blocks(d, k, seed, n, stream=_STREAM_PLANS):
    """Yield ``(start, bases)`` blocks covering samples ``0 .. n-1``."""
    for b, start in enumerate(range(0, n, BLOCK)):
        m = min(BLOCK, n - start)
        yield start, _random_bases(block_rng(seed, stream, b), d, k, m)


def sample_grassmannian(d: int, k: int, seed: int, n: int) -> list[ProjectionPlan]:
    _check_dims(d, k)
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for _, bases in plan_blocks(d, k, seed, n):
        out.extend(ProjectionPlan(d, k, B) for B in bases)
    return out


def sample_directions(d: int, seed: int, n: int) -> np.ndarray:
    """``n`` uniform unit vectors in E^d, shape ``(n, d)``."""
    if d < 1:
        raise BadDims("d must be >= 1")
    parts = []
    for b, start in enumerate(range(0, n, BLOCK)):
        m = min(BLOCK, n - start)
        u = block_rng(seed, _STREAM_DIRECTIONS, b).standard_normal((m, d))
        parts.append(u / np.linalg.norm(u, axis=1)[:, None])
    return np.vstack(parts) if parts else np.zeros((0, d))


def project(c: PolyCurve, p: ProjectionPlan) -> PolyCurve:
    """Coordinates of ``c`` in the plan basis, with collapsed duplicates."""
    if c.dim != p.d:
        raise DimensionMismatch(f"curve dim {c.dim} != plan dim {p.d}")
    return normalize(PolyCurve(c.vertices @ p.basis.T, c.closed))


def _height_tol(c):
    return 1e-12 * max(float(np.abs(c.vertices).max()), 1e-300)


def count_local_maxima(c: PolyCurve, direction) -> int:
    """Local maxima of the height ``<v, direction>`` around a loop, plateaus merged."""
    u = np.asarray(direction, dtype=float)
    H = (c.vertices @ u)[None, :]
    cnt = int(_backend.kernels.count_extrema_batch(H, c.closed, _height_tol(c))[0])
    if cnt < 0:
        raise DegenerateDirection("height function is constant")
    return cnt


def tc_line_projection(c: PolyCurve, direction) -> float:
    """Total curvature of the projection of ``c`` to the line along ``direction``.

    A loop gives ``2 pi`` times its number of local maxima; an arc gives
    ``pi`` times its number of interior turning points.
    """
    u = np.asarray(direction, dtype=float)
    if u.shape != (c.dim,):
        raise DimensionMismatch(f"direction has shape {u.shape}, curve dim {c.dim}")
    u = u / np.linalg.norm(u)
    return (2 * math.pi if c.closed else math.pi) * count_local_maxima(c, u)


def _projected_tc(V, closed, bases, tol):
    """TC of the projections of ``V`` onto each frame; NaN marks a degenerate frame."""
    k = bases.shape[1]
    if k == 1:
        H = np.einsum("nd,md->mn", V, bases[:, 0, :])
        cnt = _backend.kernels.count_extrema_batch(H, closed, tol)
        out = cnt * (2 * math.pi if closed else math.pi)
        return np.where(cnt < 0, np.nan, out.astype(float))
    X = np.ascontiguousarray(np.einsum("nd,mkd->mnk", V, bases))
    return _backend.kernels.tc_batch(X, closed)


def tc_projection_average(c: PolyCurve, k: int, seed: int, n: int) -> MonteCarloEstimate:
    """Monte Carlo mean of ``TC(project(c, p))`` over Haar-random ``k``-planes."""
    c = normalize(c)
    _check_dims(c.dim, k)
    if n < 2:
        raise ValueError("n must be >= 2")
    V = np.ascontiguousarray(c.vertices)
    tol = _height_tol(c)
    vals = np.empty(n)
    for start, bases in plan_blocks(c.dim, k, seed, n):
        vals[start:start + len(bases)] = _projected_tc(V, c.closed, bases, tol)
    for i in np.nonzero(np.isnan(vals))[0]:
        rng = block_rng(seed, _STREAM_RESAMPLE, int(i))
        for _ in range(100):
            v = _projected_tc(V, c.closed, _random_bases(rng, c.dim, k, 1), tol)[0]
            if not np.isnan(v):
                vals[i] = v
                break
        else:
            raise DegenerateCurve("every sampled projection is degenerate")
    return MonteCarloEstimate.from_samples(vals, seed)


def crofton_length_estimate(c: PolyCurve, seed: int, n: int) -> MonteCarloEstimate:
    """``pi/2`` times the mean length of the projections of a plane curve to lines."""
    if c.dim != 2:
        raise BadDims("Cauchy/Crofton estimate needs a planar curve")
    E = edge_vectors(c)
    U = sample_directions(2, seed, n)
    proj_len = np.abs(U @ E.T).sum(axis=1)
    return MonteCarloEstimate.from_samples(0.5 * math.pi * proj_len, seed)


def _orthogonal_unit(a):
    """Some unit vector orthogonal to ``a`` (deterministic)."""
    e = np.zeros_like(a)
    e[int(np.argmin(np.abs(a)))] = 1.0
    w = e - np.dot(e, a) * a
    return w / np.linalg.norm(w)


def tantrix_polygon(c: PolyCurve, split_long: bool = True):
    """Tantrix vertices with every antipodal gap split at a geodesic midpoint.

    Returns ``(points, closed)``.
    """
    T = tantrix(c)
    pts = T.points
    m = len(pts)
    last = m if T.closed else m - 1
    out = [pts[0]]
    for i in range(last):
        a, b = pts[i], pts[(i + 1) % m]
        if angle_between(a, b) >= math.pi - 1e-9:
            if not split_long:
                raise EdgeTooLong(f"tantrix gap {i} is antipodal")
            out.append(_orthogonal_unit(a))
        if i + 1 < m:
            out.append(b)
    return np.array(out), T.closed


def spherical_crofton_tc(c: PolyCurve, seed: int, n: int, split_long: bool = True) -> MonteCarloEstimate:
    """``pi`` times the mean number of tantrix crossings with random great hyperspheres."""
    c = normalize(c)
    if c.dim < 2:
        raise BadDims("need d >= 2")
    P, closed = tantrix_polygon(c, split_long)
    U = sample_directions(c.dim, seed, n)
    S = U @ P.T
    if closed:
        a, b = S, np.roll(S, -1, axis=1)
    else:
        a, b = S[:, :-1], S[:, 1:]
    cross = np.count_nonzero(a * b < 0, axis=1)
    return MonteCarloEstimate.from_samples(math.pi * cross, seed)


@dataclass(frozen=True, eq=False)
class BridgeEstimate:
    min_maxima: int
    direction: np.ndarray
    certified: bool
    n_valid: int

    def to_dict(self):
        return {
            "min_maxima": self.min_maxima,
            "direction": self.direction.tolist(),
            "certified_unknot": self.certified,
            "n_valid": self.n_valid,
        }


def bridge_estimate(c: PolyCurve, seed: int, n: int) -> BridgeEstimate:
    """Fewest local maxima of a height function over ``n`` random directions.

    A direction with a single maximum certifies that the loop is unknotted.
    Degenerate (constant-height) directions are skipped.
    """
    if not c.closed:
        raise ValueError("bridge estimate needs a loop")
    if c.dim < 2:
        raise BadDims("need d >= 2")
    U = sample_directions(c.dim, seed, n)
    cnt = _backend.kernels.count_extrema_batch(U @ c.vertices.T, True, _height_tol(c))
    valid = cnt >= 0
    if not np.any(valid):
        raise DegenerateDirection("every sampled direction is degenerate")
    i = int(np.argmin(np.where(valid, cnt, np.iinfo(np.int64).max)))
    return BridgeEstimate(int(cnt[i]), U[i].copy(), bool(cnt[i] == 1), int(valid.sum()))


@dataclass(frozen=True)
class PythagorasReport:
    a: float
    b: float
    L: float
    holds: bool

    def to_dict(self):
        return {"a": self.a, "b": self.b, "L": self.L, "holds": self.holds}


def projection_pythagoras_check(c: PolyCurve, m: int, tol: float = 1e-9) -> PythagorasReport:
    """Lengths of the projections to the first ``m`` and last ``d - m`` coordinates."""
    if not (1 <= m < c.dim):
        raise BadDims(f"need 1 <= m < d, got m={m}, d={c.dim}")
    v = c.vertices
    a = length(PolyCurve(v[:, :m], c.closed))
    b = length(PolyCurve(v[:, m:], c.closed))
    L = length(c)
    return PythagorasReport(a, b, L, a * a + b * b <= L * L + tol)
