"""Comparison theorems: Schur, Chakerian, distortion, slabs and cylinders."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .curvature import CUSP_TOL, angle_between, interior_vertices, total_curvature, total_curvature_star, turning_angles
from .curve import (PolyCurve, cumulative_length, diameter, edge_lengths, length, normalize,
                    point_at_arclength)
from .errors import (BadDims, CuspError, DegenerateCurve, InfiniteDistortion, NotInUnitBall,
                     PreconditionFailed, SearchFailed)
from .integral import block_rng, sample_directions

# ---------------------------------------------------------------------------
# Schur


def schur_flatten(a: PolyCurve) -> PolyCurve:
    """Planar arc with the same edge lengths and turning angles, all turning left."""
    if a.closed:
        raise PreconditionFailed("Schur flattening needs an arc", hypothesis="arc")
    a = normalize(a)
    theta = turning_angles(a)
    if np.any(theta >= math.pi - CUSP_TOL):
        v = int(np.argmax(theta)) + 1
        raise CuspError(f"cusp at vertex {v}", vertex=v)
    el = edge_lengths(a)
    heading = np.concatenate(([0.0], np.cumsum(theta)))
    steps = el[:, None] * np.column_stack([np.cos(heading), np.sin(heading)])
    return PolyCurve(np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)]), closed=False)


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def _on_segment(a, b, p):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])) and (min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed planar segments ``ab`` and ``cd`` share a point."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def is_simple(c: PolyCurve) -> bool:
    """No two non-adjacent edges of a planar polygon meet; adjacent ones don't fold back."""
    v = c.vertices
    n = c.n
    E = c.n_edges
    seg = [(v[i], v[(i + 1) % n]) for i in range(E)]
    for i in range(E):
        for j in range(i + 1, E):
            adjacent = j == i + 1 or (c.closed and i == 0 and j == E - 1)
            if adjacent:
                continue
            if segments_intersect(*seg[i], *seg[j]):
                return False
    # folding back along an adjacent edge (turning angle pi) is a self-overlap
    theta = turning_angles(c)
    return not np.any(theta >= math.pi - 1e-12)


def convexity_check(c: PolyCurve, tol: float = 1e-12) -> bool:
    """True iff the closed polygon (an arc is closed by its chord) is simple and convex.

    Zero turns are allowed. A straight arc closes to a doubled segment, which is
    accepted as the degenerate convex curve.
    """
    if c.dim != 2:
        raise BadDims("convexity check needs a planar curve")
    v = c.vertices
    if not c.closed and np.array_equal(v[0], v[-1]):
        v = v[:-1]
    loop = normalize(PolyCurve(v, closed=True))
    w = loop.vertices
    rel = w - w[0]
    if np.linalg.matrix_rank(rel, tol=1e-12 * max(np.abs(rel).max(), 1e-300)) <= 1:
        # all collinear: convex only as a segment traversed out and back once
        from .integral import count_local_maxima
        direction = rel[np.argmax(np.linalg.norm(rel, axis=1))]
        return count_local_maxima(loop, direction) == 1
    from .curvature import signed_turning_angles
    from .errors import AmbiguousSign
    try:
        phi, _ = signed_turning_angles(loop)
    except (AmbiguousSign, AssertionError):
        return False
    if np.any(phi > tol) and np.any(phi < -tol):
        return False
    return is_simple(loop)


def crankshaft_twist(c: PolyCurve, i: int, angle: float) -> PolyCurve:
    """Rotate the vertices after edge ``i`` about the line of edge ``i`` by ``angle``.

    Preserves all edge lengths and turning angles. Planar input is embedded in
    E^3 first.
    """
    v = np.array(c.vertices)
    if c.dim == 2:
        v = np.hstack([v, np.zeros((c.n, 1))])
    elif c.dim != 3:
        raise BadDims("crankshaft twist is defined in E^3")
    p0, p1 = v[i], v[i + 1]
    k = (p1 - p0) / np.linalg.norm(p1 - p0)
    x = v[i + 2:] - p1
    ca, sa = math.cos(angle), math.sin(angle)
    rot = x * ca + np.cross(k, x) * sa + np.outer(x @ k, k) * (1 - ca)
    v[i + 2:] = p1 + rot
    return PolyCurve(v, c.closed)


def refine_common_partition(a: PolyCurve, b: PolyCurve, merge_tol: float = 1e-9):
    """Insert vertices so both arcs break at the union of their arclength breakpoints.

    The two arcs must have equal length; breakpoints closer than
    ``merge_tol * length`` are merged.
    """
    La, Lb = length(a), length(b)
    L = max(La, Lb)
    sa, sb = cumulative_length(a), cumulative_length(b)
    s = np.unique(np.concatenate([sa / La, sb / Lb]))
    keep = [s[0]]
    for x in s[1:]:
        if x - keep[-1] > merge_tol:
            keep.append(x)
    keep[-1] = 1.0
    s = np.array(keep)

    def resample(c, Lc, sc):
        pts = []
        for x in s:
            j = np.nonzero(np.abs(sc / Lc - x) <= merge_tol)[0]
            pts.append(c.vertices[j[0]] if len(j) else point_at_arclength(c, x * Lc))
        return PolyCurve(np.array(pts), closed=False)

    return resample(a, La, sa), resample(b, Lb, sb)


@dataclass(frozen=True)
class SchurReport:
    chord: float
    chord_bar: float
    holds: bool

    def to_dict(self):
        return {"chord": self.chord, "chord_bar": self.chord_bar, "holds": self.holds}


def schur_check(gamma: PolyCurve, gamma_bar: PolyCurve, tol: float = 1e-9) -> SchurReport:
    """Compare endpoint distances of an arc and a convex planar comparison arc.

    Raises
    ------
    PreconditionFailed
        Naming the violated hypothesis: ``arc``, ``planar``, ``equal-length``,
        ``convex`` or ``curvature-dominance``.
    """
    if gamma.closed or gamma_bar.closed:
        raise PreconditionFailed("both curves must be arcs", hypothesis="arc")
    if gamma_bar.dim != 2:
        raise PreconditionFailed("comparison arc must be planar", hypothesis="planar")
    gamma, gamma_bar = normalize(gamma), normalize(gamma_bar)
    L, Lb = length(gamma), length(gamma_bar)
    if abs(L - Lb) > tol * max(L, Lb):
        raise PreconditionFailed(f"lengths differ: {L} vs {Lb}", hypothesis="equal-length")
    if not convexity_check(gamma_bar):
        raise PreconditionFailed("comparison arc closed by its chord is not convex", hypothesis="convex")
    same = gamma.n == gamma_bar.n and np.allclose(edge_lengths(gamma), edge_lengths(gamma_bar),
                                                   rtol=0, atol=tol * L)
    if not same:
        gamma, gamma_bar = refine_common_partition(gamma, gamma_bar)
    th, thb = turning_angles(gamma), turning_angles(gamma_bar)
    bad = np.nonzero(thb < th - 1e-12)[0]
    if len(bad):
        raise PreconditionFailed(f"comparison arc turns less at vertex {int(bad[0]) + 1}",
                                 hypothesis="curvature-dominance")
    chord = float(np.linalg.norm(gamma.vertices[-1] - gamma.vertices[0]))
    chord_bar = float(np.linalg.norm(gamma_bar.vertices[-1] - gamma_bar.vertices[0]))
    return SchurReport(chord, chord_bar, chord >= chord_bar - tol)


# ---------------------------------------------------------------------------
# Chakerian


@dataclass(frozen=True)
class ChakerianReport:
    len: float
    tc_star: float
    bound: float
    holds: bool

    def to_dict(self):
        return {"len": self.len, "tc_star": self.tc_star, "bound": self.bound, "holds": self.holds}


def chakerian_check(c: PolyCurve, tol: float = 1e-9) -> ChakerianReport:
    """Length against ``TC*`` (loops) or ``2 + TC*`` (arcs) inside the unit ball."""
    r = np.linalg.norm(c.vertices, axis=1)
    if np.any(r > 1.0 + 1e-12):
        v = int(np.argmax(r))
        raise NotInUnitBall(f"vertex {v} has norm {r[v]}", vertex=v)
    c = normalize(c)
    L = length(c)
    ts = total_curvature_star(c)
    bound = ts if c.closed else 2.0 + ts
    return ChakerianReport(L, ts, bound, L <= bound + tol)


# ---------------------------------------------------------------------------
# distortion


@dataclass(frozen=True)
class DistortionResult:
    value: float
    pair: tuple
    kind: str
    vertex: int | None = None

    def to_dict(self):
        return {"value": self.value, "pair": list(self.pair), "kind": self.kind, "vertex": self.vertex}


def _segment_distances(A0, A1, B0, B1):
    """Minimum distance between segments ``A0A1`` and ``B0B1`` (vectorized)."""
    d1 = A1 - A0
    d2 = B1 - B0
    r = A0 - B0
    a = (d1 * d1).sum(-1)
    e = (d2 * d2).sum(-1)
    f = (d2 * r).sum(-1)
    c = (d1 * r).sum(-1)
    b = (d1 * d2).sum(-1)
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-300, np.clip((b * f - c * e) / denom, 0.0, 1.0), 0.0)
        t = (b * s + f) / e
        s = np.where(t < 0, np.clip(-c / a, 0.0, 1.0), np.where(t > 1, np.clip((b - c) / a, 0.0, 1.0), s))
        t = np.clip(t, 0.0, 1.0)
    diff = (A0 + s[..., None] * d1) - (B0 + t[..., None] * d2)
    return np.sqrt((diff * diff).sum(-1))


def _self_touching(c: PolyCurve) -> bool:
    v = c.vertices
    E = c.n_edges
    A0 = v[:E]
    A1 = v[(np.arange(E) + 1) % c.n]
    i, j = np.triu_indices(E, k=2)
    if c.closed:
        keep = ~((i == 0) & (j == E - 1))
        i, j = i[keep], j[keep]
    if len(i) == 0:
        return False
    dist = _segment_distances(A0[i], A1[i], A0[j], A1[j])
    return bool(np.any(dist <= 1e-12 * length(c)))


class _PairRatio:
    """Arclength/chord ratio for points on two edges of a polygon."""

    def __init__(self, c):
        v = c.vertices
        self.closed = c.closed
        self.A = v[: c.n_edges]
        self.D = v[(np.arange(c.n_edges) + 1) % c.n] - self.A
        self.el = edge_lengths(c)
        self.cum = np.concatenate(([0.0], np.cumsum(self.el)))
        self.L = float(self.cum[-1])
        self.tiny = 1e-12 * self.L

    def s(self, i, u):
        return self.cum[i] + u * self.el[i]

    def __call__(self, i, j, u, w):
        p = self.A[i] + u * self.D[i]
        q = self.A[j] + w * self.D[j]
        dist = math.sqrt(float(((p - q) ** 2).sum()))
        ln = abs(self.s(i, u) - self.s(j, w))
        if self.closed:
            ln = min(ln, self.L - ln)
        if dist <= self.tiny:
            return -math.inf
        return ln / dist


_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo, hi, tol):
    a, b = lo, hi
    x1 = b - _GOLD * (b - a)
    x2 = a + _GOLD * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLD * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLD * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    cand = [(f(x), x), (f(lo), lo), (f(hi), hi)]
    return max(cand)[1]


_DIRS = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0))


def _refine_pair(ratio, i, j, u0, w0, h, tol=1e-10, sweeps=60):
    """Golden-section line ascent inside the lattice cell around ``(u0, w0)``.

    Diagonal lines are included since the ratio has a ridge along ``u - w = const``
    where the shorter side of a loop switches.
    """
    ulo, uhi = max(0.0, u0 - h), min(1.0, u0 + h)
    wlo, whi = max(0.0, w0 - h), min(1.0, w0 + h)
    u, w = u0, w0
    best = ratio(i, j, u, w)
    for _ in range(sweeps):
        start = (u, w, best)
        for du, dw in _DIRS:
            # parameter range keeping the point inside the box
            lo, hi = -math.inf, math.inf
            for x, d, a, b in ((u, du, ulo, uhi), (w, dw, wlo, whi)):
                if d > 0:
                    lo, hi = max(lo, (a - x) / d), min(hi, (b - x) / d)
                elif d < 0:
                    lo, hi = max(lo, (b - x) / d), min(hi, (a - x) / d)
            if hi - lo <= tol:
                continue
            t = _golden_max(lambda t: ratio(i, j, u + t * du, w + t * dw), lo, hi, tol)
            val = ratio(i, j, u + t * du, w + t * dw)
            if val > best:
                u, w, best = min(max(u + t * du, ulo), uhi), min(max(w + t * dw, wlo), whi), val
        if best <= start[2] or abs(u - start[0]) + abs(w - start[1]) < tol:
            break
    return best, u, w


def distortion(c: PolyCurve, grid: int = 16, refine: int = 32) -> DistortionResult:
    """Supremum of arclength over chord for all point pairs of a polygon.

    Every pair of distinct edges is scanned on a ``grid x grid`` lattice, the
    ``refine`` best pairs are polished by golden-section search, and the
    corner limits ``sec(theta/2)`` enter as candidates. For loops the shorter
    arclength is used.

    Raises
    ------
    InfiniteDistortion
        If the curve has a cusp or touches itself.
    """
    c = normalize(c)
    L = length(c)
    if L <= 0:
        raise DegenerateCurve("zero length")
    theta = turning_angles(c)
    idx = interior_vertices(c)
    if np.any(theta >= math.pi - CUSP_TOL):
        raise InfiniteDistortion(f"cusp at vertex {int(idx[np.argmax(theta)])}")
    if _self_touching(c):
        raise InfiniteDistortion("carrier touches itself")
    ratio = _PairRatio(c)
    best = DistortionResult(1.0, (0.0, float(ratio.el[0])), "interior-pair")
    if len(theta):
        k = int(np.argmax(theta))
        sec = 1.0 / math.cos(theta[k] / 2.0)
        if sec > best.value:
            s = float(cumulative_length(c)[idx[k]])
            best = DistortionResult(sec, (s, s), "corner-limit", int(idx[k]))
    E = c.n_edges
    if E >= 2:
        V = np.ascontiguousarray(c.vertices)
        vals, bu, bw, coincident = _backend.kernels.distortion_grid(V, c.closed, grid)
        if coincident:
            raise InfiniteDistortion("distinct arclength positions coincide in space")
        order = np.argsort(vals, axis=None)[::-1][:refine]
        h = 1.0 / (grid - 1)
        for flat in order:
            i, j = divmod(int(flat), E)
            if not np.isfinite(vals[i, j]):
                continue
            val, u, w = _refine_pair(ratio, i, j, bu[i, j], bw[i, j], h)
            if val > best.value:
                best = DistortionResult(float(val), (float(ratio.s(i, u)), float(ratio.s(j, w))),
                                        "interior-pair")
    return best


@dataclass(frozen=True)
class ArcDistortionReport:
    alpha: float
    distortion: float
    bound: float
    holds: bool

    def to_dict(self):
        return {"alpha": self.alpha, "distortion": self.distortion, "bound": self.bound,
                "holds": self.holds}


def distortion_arc_bound_check(a: PolyCurve, tol: float = 1e-9) -> ArcDistortionReport:
    """Distortion of an arc with total curvature ``alpha < pi`` against ``sec(alpha/2)``."""
    if a.closed:
        raise PreconditionFailed("needs an arc", hypothesis="arc")
    alpha = total_curvature(a)
    if alpha >= math.pi:
        raise PreconditionFailed(f"total curvature {alpha} >= pi", hypothesis="tc<pi")
    d = distortion(a).value
    bound = 1.0 / math.cos(alpha / 2.0)
    return ArcDistortionReport(alpha, d, bound, d <= bound + tol)


# ---------------------------------------------------------------------------
# direction searches


def _tangent_basis(v):
    """Orthonormal basis of the complement of unit vector ``v``, shape ``(d-1, d)``."""
    d = len(v)
    M = np.eye(d) - np.outer(v, v)
    U, _, _ = np.linalg.svd(M)
    return U[:, : d - 1].T


def _compass_search(f, v0, step=0.05, min_step=1e-9, max_evals=4000):
    """Minimize ``f`` over unit vectors by compass moves in the tangent plane."""
    v = v0 / np.linalg.norm(v0)
    fv = f(v)
    evals = 1
    while step > min_step and evals < max_evals:
        improved = False
        for b in _tangent_basis(v):
            for sgn in (1.0, -1.0):
                w = v + sgn * step * b
                w /= np.linalg.norm(w)
                fw = f(w)
                evals += 1
                if fw < fv:
                    v, fv, improved = w, fw, True
                    break
            if improved:
                break
        if not improved:
            step *= 0.5
    return v, fv


def _interleaved(labels):
    """Cyclic sequence of (is_max, is_min) labels admits max, min, max, min in order."""
    pos = [i for i, (mx, mn) in enumerate(labels) if mx or mn]
    m = len(pos)
    if m < 4:
        return None
    if not any(mx and mn for mx, mn in labels):
        kinds = [labels[i][0] for i in pos]
        runs = [0]
        for k in range(1, m):
            if kinds[k] != kinds[k - 1]:
                runs.append(k)
        if len(runs) > 1 and kinds[0] == kinds[-1]:
            runs = runs[1:]
        if len(runs) < 4:
            return None
        if not kinds[runs[0]]:
            runs = runs[1:] + runs[:1]
        return [pos[runs[0]], pos[runs[1]], pos[runs[2]], pos[runs[3]]]
    want = (0, 1, 0, 1)
    for s in range(m):
        if not labels[pos[s]][0]:
            continue
        picked = [pos[s]]
        stage = 1
        for k in range(1, m):
            p = pos[(s + k) % m]
            if labels[p][want[stage]]:
                picked.append(p)
                stage += 1
                if stage == 4:
                    return picked
    return None


def slab_defect(V: np.ndarray, direction):
    """Smallest ``delta`` admitting interleaved near-maximum and near-minimum vertices.

    Returns ``(defect, thickness, witnesses)`` where ``witnesses`` are vertex
    indices in cyclic order ``a1, a2, b1, b2`` (near max, near min, near max,
    near min).
    """
    h = V @ direction
    hi, lo = float(h.max()), float(h.min())
    thick = hi - lo
    n = len(h)
    if thick <= 1e-15 * max(float(np.abs(V).max()), 1e-300):
        return 0.0, thick, [int(round(k * n / 4)) % n for k in range(4)]
    cands = np.unique(np.concatenate([hi - h, h - lo]))
    cands = cands[cands >= 0]

    def feasible(delta):
        labels = list(zip(h >= hi - delta, h <= lo + delta))
        return _interleaved(labels)

    lo_i, hi_i = 0, len(cands) - 1
    if feasible(cands[hi_i]) is None:
        return math.inf, thick, None
    while lo_i < hi_i:
        mid = (lo_i + hi_i) // 2
        if feasible(cands[mid]) is not None:
            hi_i = mid
        else:
            lo_i = mid + 1
    return float(cands[lo_i]), thick, feasible(cands[lo_i])


@dataclass(frozen=True, eq=False)
class SlabResult:
    direction: np.ndarray
    thickness: float
    defect: float
    witnesses: tuple
    success: bool

    def to_dict(self):
        return {"direction": self.direction.tolist(), "thickness": self.thickness,
                "defect": self.defect, "witnesses": list(self.witnesses), "success": self.success}


def interleaved_slab_search(c: PolyCurve, eps: float = 1e-3, seed: int = 0, n: int = 200,
                            polish: int = 5) -> SlabResult:
    """Search for parallel support planes touching the loop in alternating order.

    Minimizes the interleaving defect over ``n`` random directions, then
    polishes the ``polish`` best by compass search. Succeeds when the defect
    is at most ``eps`` times the diameter.

    Raises
    ------
    SearchFailed
        If no direction reaches the tolerance; ``best`` carries the result.
    """
    if not c.closed:
        raise PreconditionFailed("slab search needs a loop", hypothesis="loop")
    if c.dim < 3:
        raise BadDims("interleaved slabs are searched in d >= 3")
    c = normalize(c)
    V = c.vertices
    diam = diameter(c)[0]
    target = eps * diam
    U = sample_directions(c.dim, seed, n)

    def f(v):
        return slab_defect(V, v)[0]

    scores = np.array([f(u) for u in U])
    order = np.argsort(scores)
    best_v, best_f = U[order[0]], scores[order[0]]
    order = order[:polish]
    for k in order:
        if best_f <= 0.0:
            break
        v, fv = _compass_search(f, U[k])
        if fv < best_f:
            best_v, best_f = v, fv
    defect, thick, wit = slab_defect(V, best_v)
    cum = cumulative_length(c)
    witnesses = tuple(float(cum[i]) for i in wit) if wit is not None else ()
    res = SlabResult(best_v, float(thick), float(defect), witnesses, bool(defect <= target))
    if not res.success:
        raise SearchFailed(f"best interleaving defect {defect} exceeds {target}", best=res)
    return res


def min_enclosing_ball(points, dim: int | None = None, seed: int = 0):
    """Smallest enclosing ball by randomized incremental (move-to-front) construction.

    Returns ``(center, radius)``.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None] if dim == 1 else P[None, :]
    if len(P) == 0:
        raise ValueError("need at least one point")
    if dim is not None and P.shape[1] != dim:
        raise BadDims(f"points have dimension {P.shape[1]}, expected {dim}")
    order = block_rng(seed, 7, 0).permutation(len(P))
    return _backend.kernels.min_ball(np.ascontiguousarray(P), order)


@dataclass(frozen=True, eq=False)
class CylinderResult:
    axis: np.ndarray
    center: np.ndarray
    radius: float
    length: float
    bound_ok: bool

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    @property
    def bound(self) -> float:
        return self.length / math.pi

    def to_dict(self):
        return {"axis": self.axis.tolist(), "center": self.center.tolist(), "radius": self.radius,
                "diameter": self.diameter, "length": self.length, "bound": self.bound,
                "bound_ok": self.bound_ok}


def _cylinder(V, u):
    B = _tangent_basis(u)
    X = V @ B.T
    cen, r = min_enclosing_ball(X)
    return r, cen @ B


def cylinder_search(c: PolyCurve, seed: int = 0, n: int = 1000, polish: int = 5,
                    tol: float = 1e-6) -> CylinderResult:
    """Thinnest enclosing cylinder found over random axes plus compass polishing.

    In the plane the "cylinder" is a slab and its diameter the width.
    """
    if not c.closed:
        raise PreconditionFailed("cylinder theorem is about loops", hypothesis="loop")
    if c.dim < 2:
        raise BadDims("need d >= 2")
    V = np.ascontiguousarray(c.vertices)
    L = length(c)
    U = sample_directions(c.dim, seed, n)

    def f(u):
        return _cylinder(V, u)[0]

    scores = np.array([f(u) for u in U])
    order = np.argsort(scores)
    best_u, best_r = U[order[0]], scores[order[0]]
    order = order[:polish]
    for k in order:
        u, r = _compass_search(f, U[k], min_step=1e-10, max_evals=1500)
        if r < best_r:
            best_u, best_r = u, r
    r, center = _cylinder(V, best_u)
    return CylinderResult(best_u, center, float(r), L, 2 * r <= L / math.pi + tol)


@dataclass(frozen=True, eq=False)
class Wien2Report:
    length: float
    diameter: float
    pair: tuple
    projected_diameter: float
    bound: float
    holds: bool

    @property
    def ratio(self) -> float:
        return self.length / self.projected_diameter

    def to_dict(self):
        return {"length": self.length, "diameter": self.diameter, "pair": list(self.pair),
                "projected_diameter": self.projected_diameter, "bound": self.bound,
                "ratio": self.ratio, "holds": self.holds}


def wien2_check(c: PolyCurve, tol: float = 1e-9) -> Wien2Report:
    """Projected diameter orthogonal to the diameter chord against ``L / (2 sqrt 2)``."""
    if not c.closed:
        raise PreconditionFailed("needs a loop", hypothesis="loop")
    D0, (i, j) = diameter(c)
    w = (c.vertices[i] - c.vertices[j]) / D0
    V = c.vertices - np.outer(c.vertices @ w, w)
    D, _ = diameter(PolyCurve(V, closed=True))
    L = length(c)
    bound = L / (2.0 * math.sqrt(2.0))
    return Wien2Report(L, D0, (i, j), D, bound, D <= bound + tol)
