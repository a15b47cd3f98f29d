"""First variation of length, the length gradient and a discrete bending flow."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import CUSP_TOL, curvature_density, curvature_force, turning_angles, unit_tangents
from .curve import PolyCurve, edge_lengths, require_normalized
from .errors import CuspEncountered, CuspError, DegenerateCurve, DimensionMismatch


def as_field(c: PolyCurve, xi) -> np.ndarray:
    """Validate a per-vertex vector field against ``c``."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != c.vertices.shape:
        raise DimensionMismatch(f"field shape {xi.shape} does not match curve {c.vertices.shape}")
    return xi


def first_variation_length(c: PolyCurve, xi) -> float:
    """``d/dt Len(c + t xi)`` at ``t = 0``, as a sum over edges of ``<T_e, dxi_e>``."""
    xi = as_field(c, xi)
    T = unit_tangents(c)
    head = np.roll(xi, -1, axis=0)[: c.n_edges] if c.closed else xi[1:]
    return float(np.sum(T * (head - xi[: c.n_edges])))


def first_variation_force_form(c: PolyCurve, xi) -> float:
    """The same derivative paired against the curvature force and boundary tangents."""
    xi = as_field(c, xi)
    K = curvature_force(c)
    total = -float(np.sum(xi[K.vertices] * K.atoms))
    if not c.closed:
        total -= float(xi[0] @ K.boundary[0] + xi[-1] @ K.boundary[1])
    return total


def length_gradient(c: PolyCurve) -> np.ndarray:
    """Field ``g`` with ``d/dt Len(c + t xi) = -sum <xi(v), g(v)>``.

    ``g`` is the curvature force at interior vertices and the inward unit
    tangent at arc endpoints; moving along ``+g`` shortens the curve.
    """
    require_normalized(c)
    K = curvature_force(c)
    g = np.zeros_like(c.vertices)
    g[K.vertices] = K.atoms
    if not c.closed:
        g[0], g[-1] = K.boundary
    return g


# ---------------------------------------------------------------------------
# bending flow


def flow_objective(V: np.ndarray, closed: bool, model: str = "arc", lam: float = 1.0) -> float:
    """Scale-invariant bending objective.

    ``mean_edge * bending_energy + lam * sum((|e_i| / mean_edge - 1)^2)``. Both
    terms are invariant under rigid motions and scaling, so regular polygons
    are stationary.
    """
    c = PolyCurve(V, closed)
    el = edge_lengths(c)
    ebar = float(el.mean())
    if ebar <= 0 or np.any(el <= 0):
        raise DegenerateCurve("zero-length edge")
    kappa, w = curvature_density(c, model)
    bend = float(np.sum(kappa * kappa * w))
    return ebar * bend + lam * float(np.sum((el / ebar - 1.0) ** 2))


def objective_gradient(V: np.ndarray, closed: bool, model: str = "arc", lam: float = 1.0,
                       rel_h: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient of :func:`flow_objective`."""
    scale = float(np.max(np.linalg.norm(V - V.mean(axis=0), axis=1)))
    h = rel_h * (scale if scale > 0 else 1.0)
    g = np.empty_like(V)
    W = V.copy()
    for idx in np.ndindex(*V.shape):
        x = W[idx]
        W[idx] = x + h
        fp = flow_objective(W, closed, model, lam)
        W[idx] = x - h
        fm = flow_objective(W, closed, model, lam)
        W[idx] = x
        g[idx] = (fp - fm) / (2.0 * h)
    return g


@dataclass(frozen=True, eq=False)
class FlowStep:
    curve: PolyCurve
    energy: float
    gradnorm: float
    stepsize: float


@dataclass(eq=False)
class FlowTrace:
    """Accepted iterates of a bending flow; the first entry is the input (step size 0)."""

    iterates: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    converged: bool = False

    @property
    def final(self) -> PolyCurve:
        return self.iterates[-1].curve

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.iterates])

    @property
    def accepted_steps(self) -> int:
        return len(self.iterates) - 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "energy", "gradnorm", "stepsize"])
        for k, s in enumerate(self.iterates):
            w.writerow([k, repr(s.energy), repr(s.gradnorm), repr(s.stepsize)])
        return buf.getvalue()

    def to_dict(self):
        return {"config": self.config, "converged": self.converged,
                "steps": [{"energy": s.energy, "gradnorm": s.gradnorm, "stepsize": s.stepsize}
                          for s in self.iterates]}


def _has_cusp(V, closed):
    theta = turning_angles(PolyCurve(V, closed))
    return bool(np.any(theta >= math.pi - CUSP_TOL))


def _signed_turns(V, closed):
    T = unit_tangents(PolyCurve(V, closed))
    tin, tout = (np.roll(T, 1, axis=0), T) if closed else (T[:-1], T[1:])
    return np.arctan2(tin[:, 0] * tout[:, 1] - tin[:, 1] * tout[:, 0], np.sum(tin * tout, axis=1))


def _jumps_cusp(V, W, closed):
    """A planar step that flips a signed turn across +-pi passed through a cusp."""
    if V.shape[1] != 2:
        return False
    return bool(np.any(np.abs(_signed_turns(W, closed) - _signed_turns(V, closed)) > math.pi))


def bending_flow(c: PolyCurve, model: str = "arc", steps: int = 500, lam: float = 1.0,
                 tol: float = 1e-8, step0: float = 1e-2, shrink: float = 0.5, grow: float = 2.0,
                 armijo: float = 1e-4, min_step: float = 1e-16) -> FlowTrace:
    """Backtracking gradient descent on :func:`flow_objective`.

    Trial steps that create a cusp, carry a planar corner across one, or do not
    lower the objective enough are rejected and the step shrinks; after an accepted step it grows by ``grow``. Stops when the
    gradient norm is at most ``tol``, the step budget is spent, or the step
    underflows ``min_step`` (relative to curve size).

    Raises
    ------
    CuspEncountered
        If the current iterate itself has a cusp; ``trace`` holds the steps so far.
    """
    V = np.array(c.vertices, dtype=float)
    closed = c.closed
    config = {"model": model, "steps": steps, "lambda": lam, "tol": tol, "step0": step0,
              "shrink": shrink, "grow": grow, "armijo": armijo}
    trace = FlowTrace(config=config)
    if _has_cusp(V, closed):
        raise CuspEncountered("input has a cusp", trace=trace)
    try:
        f = flow_objective(V, closed, model, lam)
        g = objective_gradient(V, closed, model, lam)
    except CuspError as exc:
        raise CuspEncountered(str(exc), trace=trace) from exc
    gn = float(np.linalg.norm(g))
    trace.iterates.append(FlowStep(PolyCurve(V, closed), f, gn, 0.0))
    scale = float(np.max(np.linalg.norm(V - V.mean(axis=0), axis=1)))
    t = step0 * scale
    for _ in range(steps):
        if gn <= tol:
            trace.converged = True
            break
        d = -g / gn
        while t > min_step * scale:
            W = V + t * d
            if not _has_cusp(W, closed) and not _jumps_cusp(V, W, closed):
                try:
                    fw = flow_objective(W, closed, model, lam)
                except (CuspError, DegenerateCurve):
                    fw = math.inf
                if fw < f - armijo * t * gn:
                    break
            t *= shrink
        else:
            break
        V, f = W, fw
        try:
            g = objective_gradient(V, closed, model, lam)
        except CuspError as exc:
            raise CuspEncountered(str(exc), trace=trace) from exc
        gn = float(np.linalg.norm(g))
        trace.iterates.append(FlowStep(PolyCurve(V, closed), f, gn, t))
        t *= grow
    else:
        trace.converged = gn <= tol
    return trace


def regular_polygon_objective(n: int, model: str = "arc") -> float:
    """Objective value of any regular planar ``n``-gon."""
    from .curvature import _model_mass
    return n * float(_model_mass(np.array(2 * math.pi / n), model)) ** 2
