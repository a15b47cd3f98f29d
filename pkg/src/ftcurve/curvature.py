"""Turning angles, total curvature, tantrix, curvature force and densities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curve import PolyCurve, edge_lengths, edge_vectors, length, normalize, require_normalized
from .errors import AmbiguousSign, BadDims, CuspError, DegenerateCurve, PreconditionFailed

CUSP_TOL = 1e-9
MODELS = ("angle", "chord", "arc")


def unit_tangents(c: PolyCurve) -> np.ndarray:
    """Unit direction of every edge, in order (the tantrix vertices)."""
    require_normalized(c)
    e = edge_vectors(c)
    return e / np.linalg.norm(e, axis=1)[:, None]


def angle_between(a, b):
    """Angle in ``[0, pi]`` between unit vectors, via the half-angle form of atan2.

    ``2 atan2(|a - b|, |a + b|)`` keeps full relative precision near 0 and pi,
    where ``acos(a . b)`` loses half of the digits.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return 2.0 * np.arctan2(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))


def interior_vertices(c: PolyCurve) -> np.ndarray:
    return np.arange(c.n) if c.closed else np.arange(1, c.n - 1)


def _incident(T, closed):
    if closed:
        return np.roll(T, 1, axis=0), T
    return T[:-1], T[1:]


def turning_angles(c: PolyCurve) -> np.ndarray:
    """Turning angle at every interior vertex, in the order of ``interior_vertices``."""
    T = unit_tangents(c)
    tin, tout = _incident(T, c.closed)
    return angle_between(tin, tout)


def signed_turning_angles(c: PolyCurve):
    """Signed turning angles of a planar polygon, and its turning number if closed.

    Returns ``(phi, turning_number)``; ``turning_number`` is ``None`` for arcs.
    """
    if c.dim != 2:
        raise BadDims("signed turning angles need a planar curve")
    T = unit_tangents(c)
    tin, tout = _incident(T, c.closed)
    cross = tin[:, 0] * tout[:, 1] - tin[:, 1] * tout[:, 0]
    theta = angle_between(tin, tout)
    cusp = np.nonzero(theta >= math.pi - CUSP_TOL)[0]
    if len(cusp):
        v = int(interior_vertices(c)[cusp[0]])
        raise AmbiguousSign(f"cusp at vertex {v}: sign of the turning angle is ambiguous")
    phi = np.where(cross < 0, -theta, theta)
    if not c.closed:
        return phi, None
    total = float(np.sum(phi))
    tn = int(round(total / (2 * math.pi)))
    if abs(total - 2 * math.pi * tn) > 1e-9:
        raise AssertionError(f"turning sum {total} is not a multiple of 2 pi")
    return phi, tn


def total_curvature(c: PolyCurve, eps: float = 0.0) -> float:
    """Sum of turning angles after collapsing repeated vertices."""
    return float(np.sum(turning_angles(normalize(c, eps))))


@dataclass(frozen=True, eq=False)
class Tantrix:
    points: np.ndarray
    closed: bool

    def gaps(self) -> np.ndarray:
        a, b = _incident(self.points, self.closed)
        return angle_between(a, b)

    def spherical_length(self) -> float:
        return float(np.sum(self.gaps()))

    def euclidean_length(self) -> float:
        a, b = _incident(self.points, self.closed)
        return float(np.sum(np.linalg.norm(b - a, axis=1)))


def tantrix(c: PolyCurve) -> Tantrix:
    return Tantrix(unit_tangents(c), c.closed)


@dataclass(frozen=True, eq=False)
class CurvatureForce:
    """Atoms ``K_v = T_next - T_prev`` at interior vertices plus boundary terms.

    ``boundary`` holds the inward unit tangents at the start and end of an
    arc (shape ``(2, d)``) and is empty for loops.
    """

    vertices: np.ndarray
    atoms: np.ndarray
    boundary: np.ndarray

    def mass(self) -> np.ndarray:
        return np.linalg.norm(self.atoms, axis=1)


def curvature_force(c: PolyCurve) -> CurvatureForce:
    T = unit_tangents(c)
    tin, tout = _incident(T, c.closed)
    if c.closed:
        boundary = np.zeros((0, c.dim))
    else:
        boundary = np.vstack([T[0], -T[-1]])
    return CurvatureForce(interior_vertices(c), tout - tin, boundary)


def total_curvature_star(c: PolyCurve) -> float:
    """Euclidean total curvature: sum of ``2 sin(theta/2)`` over corners."""
    return float(np.sum(2.0 * np.sin(turning_angles(c) / 2.0)))


def _model_mass(theta, model):
    if model == "angle":
        return theta
    if model == "chord":
        return 2.0 * np.sin(theta / 2.0)
    if model == "arc":
        return 2.0 * np.tan(theta / 2.0)
    raise ValueError(f"unknown density model {model!r}; expected one of {MODELS}")


def vertex_weights(c: PolyCurve) -> np.ndarray:
    """Half the summed length of the two edges at each interior vertex."""
    el = edge_lengths(c)
    if c.closed:
        return 0.5 * (np.roll(el, 1) + el)
    return 0.5 * (el[:-1] + el[1:])


def curvature_density(c: PolyCurve, model: str = "arc"):
    """Per-vertex curvature density and the length it is spread over.

    The corner's curvature (``theta``, ``2 sin(theta/2)`` or ``2 tan(theta/2)``)
    is spread over ``l_v``, half the lengths of the two incident edges; for unit
    edges ``l_v = 1`` and the density is the bare model value.

    Returns
    -------
    kappa, weights : ndarray
        Indexed like ``interior_vertices(c)``.
    """
    theta = turning_angles(c)
    if model == "arc":
        cusp = np.nonzero(theta >= math.pi - CUSP_TOL)[0]
        if len(cusp):
            v = int(interior_vertices(c)[cusp[0]])
            raise CuspError(f"cusp at vertex {v}: 2 tan(theta/2) is unbounded", vertex=v)
    w = vertex_weights(c)
    return _model_mass(theta, model) / w, w


def bending_energy(c: PolyCurve, model: str = "arc") -> float:
    """Discrete ``int kappa^2 ds`` as ``sum kappa_v^2 l_v``."""
    kappa, w = curvature_density(c, model)
    return float(np.sum(kappa * kappa * w))


# ---------------------------------------------------------------------------
# smoothing by inscribed arcs


@dataclass(frozen=True, eq=False)
class Segment:
    start: np.ndarray
    end: np.ndarray

    kind = "segment"

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.end - self.start))

    def tangents(self):
        t = (self.end - self.start) / self.length
        return t, t

    def to_dict(self):
        return {"kind": "segment", "start": self.start.tolist(), "end": self.end.tolist()}


@dataclass(frozen=True, eq=False)
class Arc:
    """Circular arc ``center + r (cos a e1 + sin a e2)`` for ``a`` in ``[0, turn]``."""

    center: np.ndarray
    radius: float
    e1: np.ndarray
    e2: np.ndarray
    turn: float
    vertex: int = -1

    kind = "arc"

    @property
    def length(self) -> float:
        return self.radius * self.turn

    @property
    def density(self) -> float:
        return 1.0 / self.radius

    def point(self, a):
        a = np.asarray(a, dtype=float)[..., None]
        return self.center + self.radius * (np.cos(a) * self.e1 + np.sin(a) * self.e2)

    @property
    def start(self):
        return self.point(0.0)

    @property
    def end(self):
        return self.point(self.turn)

    def tangents(self):
        t0 = self.e2
        t1 = -math.sin(self.turn) * self.e1 + math.cos(self.turn) * self.e2
        return t0, t1

    def to_dict(self):
        return {
            "kind": "arc",
            "vertex": self.vertex,
            "center": self.center.tolist(),
            "radius": self.radius,
            "e1": self.e1.tolist(),
            "e2": self.e2.tolist(),
            "turn": self.turn,
            "start": self.start.tolist(),
            "end": self.end.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SmoothedCurve:
    pieces: list
    closed: bool

    @property
    def length(self) -> float:
        return float(sum(p.length for p in self.pieces))

    @property
    def total_turning(self) -> float:
        return float(sum(p.turn for p in self.pieces if p.kind == "arc"))

    @property
    def arcs(self):
        return [p for p in self.pieces if p.kind == "arc"]

    def joint_mismatch(self) -> float:
        """Largest angle between the outgoing and incoming tangents at a joint."""
        worst = 0.0
        m = len(self.pieces)
        last = m if self.closed else m - 1
        for i in range(last):
            _, t_out = self.pieces[i].tangents()
            t_in, _ = self.pieces[(i + 1) % m].tangents()
            worst = max(worst, float(angle_between(t_out, t_in)))
        return worst

    def gap_mismatch(self) -> float:
        """Largest positional gap between consecutive pieces."""
        m = len(self.pieces)
        last = m if self.closed else m - 1
        gaps = [np.linalg.norm(self.pieces[i].end - self.pieces[(i + 1) % m].start) for i in range(last)]
        return float(max(gaps, default=0.0))

    def to_dict(self):
        return {
            "closed": self.closed,
            "length": self.length,
            "total_turning": self.total_turning,
            "pieces": [p.to_dict() for p in self.pieces],
        }


def smooth_inscribed_arcs(c: PolyCurve) -> SmoothedCurve:
    """Replace each corner by the circular arc tangent to both incident edges.

    The tangency points sit at distance ``h_v`` (half the shorter incident
    edge) from the vertex, so the arc radius is ``h_v / tan(theta_v / 2)``.
    Straight vertices get no arc.
    """
    T = unit_tangents(c)
    el = edge_lengths(c)
    v = c.vertices
    theta = turning_angles(c)
    idx = interior_vertices(c)
    cusp = np.nonzero(theta >= math.pi - CUSP_TOL)[0]
    if len(cusp):
        k = int(idx[cusp[0]])
        raise CuspError(f"cusp at vertex {k}: no tangent arc fits", vertex=k)
    E = c.n_edges
    # per vertex: (tangency point on incoming edge, on outgoing edge, arc or None)
    corners = {}
    for th, k in zip(theta, idx):
        k = int(k)
        if th == 0.0:
            continue
        e_in, e_out = (k - 1) % E, k % E
        t_in, t_out = T[e_in], T[e_out]
        h = 0.5 * min(el[e_in], el[e_out])
        p1 = v[k] - h * t_in
        p2 = v[k] + h * t_out
        r = h / math.tan(th / 2.0)
        nrm = t_out - np.dot(t_out, t_in) * t_in
        nrm /= np.linalg.norm(nrm)
        center = p1 + r * nrm
        arc = Arc(center, r, -nrm, t_in.copy(), float(th), k)
        corners[k] = (p1, p2, arc)
    pieces = []
    tiny = 1e-15 * max(length(c), 1e-300)

    def seg(a, b):
        if np.linalg.norm(b - a) > tiny:
            pieces.append(Segment(np.array(a), np.array(b)))

    if c.closed:
        ks = sorted(corners)
        if not ks:
            raise DegenerateCurve("closed polygon without corners")
        for j, k in enumerate(ks):
            pieces.append(corners[k][2])
            nxt = ks[(j + 1) % len(ks)]
            seg(corners[k][1], corners[nxt][0])
    else:
        pos = v[0]
        for k in sorted(corners):
            p1, p2, arc = corners[k]
            seg(pos, p1)
            pieces.append(arc)
            pos = p2
        seg(pos, v[-1])
    return SmoothedCurve(pieces, c.closed)


# ---------------------------------------------------------------------------
# spindle


@dataclass(frozen=True)
class SpindleReport:
    phi: float
    angles: np.ndarray
    samples: np.ndarray
    violations: list
    contained: bool

    def to_dict(self):
        return {
            "phi": self.phi,
            "contained": self.contained,
            "max_angle": float(np.max(self.angles, initial=0.0)),
            "violations": self.violations,
        }


def spindle_turn(p, x, q):
    """Turning angle of the path ``p -> x -> q`` at ``x`` (0 if ``x`` hits an end)."""
    a = np.asarray(x, float) - p
    b = np.asarray(q, float) - x
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(angle_between(a / na, b / nb))


def spindle_contains(a: PolyCurve, phi: float | None = None, edge_samples: int = 0,
                     tol: float = 1e-12) -> SpindleReport:
    """Check that every vertex lies in the spindle of angle ``2 phi`` on the chord.

    ``phi`` defaults to the arc's total curvature. A point ``x`` is outside
    exactly when the turning angle of ``p x q`` at ``x`` exceeds ``phi``.
    ``edge_samples`` extra points per edge are tested as well.
    """
    if a.closed:
        raise PreconditionFailed("spindle lemma applies to arcs", hypothesis="arc")
    if phi is None:
        phi = total_curvature(a)
    if phi >= math.pi:
        raise PreconditionFailed(f"total curvature {phi} >= pi", hypothesis="tc<pi")
    v = a.vertices
    p, q = v[0], v[-1]
    pts = [v[1:-1]]
    if edge_samples:
        s = np.arange(1, edge_samples + 1) / (edge_samples + 1)
        d = np.diff(v, axis=0)
        pts.append((v[:-1, None, :] + s[None, :, None] * d[:, None, :]).reshape(-1, a.dim))
    X = np.vstack(pts)
    ang = np.array([spindle_turn(p, x, q) for x in X])
    bad = [int(i) for i in np.nonzero(ang > phi + tol)[0]]
    return SpindleReport(float(phi), ang, X, bad, not bad)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True, eq=False)
class CurvatureReport:
    length: float
    tc: float
    tc_star: float
    vertices: np.ndarray
    theta: np.ndarray
    k_mass: np.ndarray
    density_angle: np.ndarray
    density_chord: np.ndarray
    density_arc: np.ndarray
    turning_number: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "length": self.length,
            "tc": self.tc,
            "tc_star": self.tc_star,
            "vertices": [
                {
                    "index": int(i),
                    "theta": float(t),
                    "k_mass": float(k),
                    "density_angle": float(a),
                    "density_chord": float(ch),
                    "density_arc": None if not math.isfinite(ar) else float(ar),
                }
                for i, t, k, a, ch, ar in zip(self.vertices, self.theta, self.k_mass,
                                              self.density_angle, self.density_chord,
                                              self.density_arc)
            ],
        }
        if self.turning_number is not None:
            out["turning_number"] = self.turning_number
        return out


def analyze(c: PolyCurve) -> CurvatureReport:
    c = normalize(c)
    theta = turning_angles(c)
    w = vertex_weights(c)
    with np.errstate(divide="ignore", over="ignore"):
        arc = np.where(theta >= math.pi - CUSP_TOL, np.inf, 2.0 * np.tan(theta / 2.0)) / w
    tn = None
    if c.dim == 2 and c.closed:
        try:
            tn = signed_turning_angles(c)[1]
        except AmbiguousSign:
            tn = None
    return CurvatureReport(
        length=length(c),
        tc=float(theta.sum()),
        tc_star=float(np.sum(2.0 * np.sin(theta / 2.0))),
        vertices=interior_vertices(c),
        theta=theta,
        k_mass=np.linalg.norm(curvature_force(c).atoms, axis=1),
        density_angle=theta / w,
        density_chord=2.0 * np.sin(theta / 2.0) / w,
        density_arc=arc,
        turning_number=tn,
    )
