"""Conformal invariants computed from the disk maps.

* hyperbolic distance between interior points, and fields of it on grids
* conformal radius and reduced modulus (bounded base point or infinity),
  including the slit-disk families via their opening maps
* harmonic measure of polygon sides
* conformal modulus of quadrilaterals, by an iteration that adjusts a
  rectangle's aspect ratio until its four corners match the marked points
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .curves import (BoundaryCurve, boundary_clearance, make_opened_slit_disk,
                     make_polygon, make_rectangle, node_spacing_scale,
                     winding_inside, winding_number)
from .diskmap import cauchy_eval, map_bounded, map_unbounded, mobius_three_points
from .kernel import SolveConfig

__all__ = [
    "GridSpec",
    "ScalarField",
    "hyperbolic_distance",
    "hyperbolic_distance_field",
    "conformal_radius",
    "reduced_modulus",
    "reduced_modulus_slit_disk",
    "harmonic_measure",
    "harmonic_measure_all",
    "QuadConfig",
    "QuadModulusTrace",
    "quad_modulus",
    "quad_modulus_general",
]

TWO_PI = 2.0 * math.pi


# ----------------------------------------------------------------------
# grids and scalar fields
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid, nx by ny nodes inclusive of ends."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("grid extents must be nonempty")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("need at least 2 nodes per direction")

    def axes(self):
        return (np.linspace(self.xmin, self.xmax, self.nx),
                np.linspace(self.ymin, self.ymax, self.ny))

    def mesh(self) -> np.ndarray:
        x, y = self.axes()
        return x[None, :] + 1j * y[:, None]  # shape (ny, nx)


@dataclass
class ScalarField:
    """Values of a scalar quantity on a grid, masked to the domain."""

    grid_x: np.ndarray
    grid_y: np.ndarray
    mask: np.ndarray    # True where the value was computed
    values: np.ndarray  # NaN where mask is False

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y", "inside", "value"])
            for j, y in enumerate(self.grid_y):
                for i, x in enumerate(self.grid_x):
                    inside = int(self.mask[j, i])
                    v = self.values[j, i]
                    writer.writerow([f"{x:.15g}", f"{y:.15g}", inside,
                                     f"{v:.15g}" if inside else "nan"])

    def write_json(self, path):
        vals = [[(None if not self.mask[j, i] else float(self.values[j, i]))
                 for i in range(self.grid_x.size)]
                for j in range(self.grid_y.size)]
        doc = {
            "grid_x": [float(v) for v in self.grid_x],
            "grid_y": [float(v) for v in self.grid_y],
            "inside": [[bool(b) for b in row] for row in self.mask],
            "values": vals,
        }
        with open(path, "w") as fh:
            json.dump(doc, fh)
            fh.write("\n")


def _domain_mask(curve: BoundaryCurve, z: np.ndarray) -> np.ndarray:
    """Inside test plus a 10-node-spacing standoff from the boundary."""
    flat = z.ravel()
    inside = winding_inside(curve, flat)
    clear = boundary_clearance(curve, flat) > 10.0 * node_spacing_scale(curve)
    return (inside & clear).reshape(z.shape)


# ----------------------------------------------------------------------
# hyperbolic distance
# ----------------------------------------------------------------------

def _pair_distance(w1, w2):
    num = np.abs(w1 - w2)
    den = np.sqrt(np.maximum((1.0 - np.abs(w1) ** 2) * (1.0 - np.abs(w2) ** 2),
                             1e-300))
    return 2.0 * np.arcsinh(num / den)


def hyperbolic_distance(curve: BoundaryCurve, alpha: complex, z1: complex,
                        z2: complex, cfg: SolveConfig | None = None) -> float:
    """Hyperbolic distance between two interior points.

    The domain is mapped onto the unit disk (base point alpha, any
    interior point; the result is independent of it) and the disk's
    explicit metric is pulled back:

        dist = 2 asinh( |w1 - w2| / sqrt((1 - |w1|^2)(1 - |w2|^2)) ).
    """
    dm = map_bounded(curve, alpha, "unit", cfg)
    w = cauchy_eval(dm, np.array([z1, z2], dtype=complex))
    return float(_pair_distance(w[0], w[1]))


def hyperbolic_distance_field(curve: BoundaryCurve, alpha: complex, z1: complex,
                              grid: GridSpec,
                              cfg: SolveConfig | None = None) -> ScalarField:
    """Hyperbolic distance from z1 to every admissible grid node.

    Grid nodes outside the domain or within ten node spacings of the
    boundary are masked out.
    """
    dm = map_bounded(curve, alpha, "unit", cfg)
    w1 = cauchy_eval(dm, complex(z1))
    z = grid.mesh()
    mask = _domain_mask(curve, z)
    values = np.full(z.shape, np.nan)
    if mask.any():
        w = cauchy_eval(dm, z[mask], validate=False)
        values[mask] = _pair_distance(w1, w)
    x, y = grid.axes()
    return ScalarField(grid_x=x, grid_y=y, mask=mask, values=values)


# ----------------------------------------------------------------------
# conformal radius and reduced modulus
# ----------------------------------------------------------------------

def _complement_point(curve: BoundaryCurve, beta: complex | None) -> complex:
    if beta is None:
        beta = complex(np.mean(curve.eta))
    beta = complex(beta)
    w = winding_number(curve, beta)[0]
    if round(w) != -1:
        raise ValueError("auxiliary point must lie in the bounded complement")
    return beta


def conformal_radius(curve: BoundaryCurve, base: complex | None = None,
                     beta: complex | None = None,
                     cfg: SolveConfig | None = None) -> float:
    """Conformal radius e^h of the domain at the base point.

    ``base`` is an interior point of a bounded domain (counterclockwise
    curve); ``base=None`` means the point at infinity of an unbounded
    domain (clockwise curve), where ``beta`` optionally picks the
    auxiliary point in the bounded complement (default: node centroid).
    """
    if base is None:
        dm = map_unbounded(curve, _complement_point(curve, beta), cfg)
    else:
        dm = map_bounded(curve, base, "unit", cfg)
    return float(np.exp(dm.h))


def reduced_modulus(curve: BoundaryCurve, base: complex | None = None,
                    beta: complex | None = None,
                    cfg: SolveConfig | None = None) -> float:
    """Reduced modulus: h/(2 pi) at a finite base, -h/(2 pi) at infinity."""
    if base is None:
        dm = map_unbounded(curve, _complement_point(curve, beta), cfg)
        return float(-dm.h / TWO_PI)
    dm = map_bounded(curve, base, "unit", cfg)
    return float(dm.h / TWO_PI)


_SLIT_BASE_IMAGE = {
    "G1": lambda r, a: 2.0 * r,
    "G2": lambda r, a: -2.0 * r,
    "G3": lambda r, a: 2.0 * (r - a),
}


def reduced_modulus_slit_disk(case: str, r: float, a: float = 0.0,
                              n_s: int = 512, p: float = 3.0,
                              cfg: SolveConfig | None = None) -> float:
    """Reduced modulus of a slit unit disk at the family's base point.

    The slit is opened by the family's square-root map (unit derivative
    at the base point, so the modulus is preserved) and the resulting
    Jordan domain is handled by the bounded solver.
    """
    curve = make_opened_slit_disk(case, r, a, n_s, p)
    base = _SLIT_BASE_IMAGE[case](r, a)
    return reduced_modulus(curve, base, cfg=cfg)


# ----------------------------------------------------------------------
# harmonic measure of polygon sides
# ----------------------------------------------------------------------

def _vertex_images(dm, m: int, n_s: int) -> np.ndarray:
    zet = dm.phi_boundary[np.arange(m) * n_s]
    return zet / np.abs(zet)


def _side_measure(zet: np.ndarray, k: int, w: np.ndarray) -> np.ndarray:
    """Harmonic measure of the arc between vertex images k-1 and k (1-based side k)."""
    m = zet.size
    z1 = zet[k - 1]
    z3 = zet[k % m]
    ang1 = math.atan2(z1.imag, z1.real)
    ang3 = math.atan2(z3.imag, z3.real)
    if ang3 < ang1:
        ang3 += TWO_PI
    z2 = np.exp(0.5j * (ang1 + ang3))
    psi = mobius_three_points((z1, z2, z3), (-1j, 1.0, 1j))
    u = psi(w)
    return np.angle((1j - u) / (1.0 - 1j * u)) / math.pi


def _polygon_map_data(vertices, alpha, n_s, p, cfg, z):
    vertices = np.asarray(vertices, dtype=complex)
    curve = make_polygon(vertices, n_s, p)
    dm = map_bounded(curve, alpha, "unit", cfg)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = cauchy_eval(dm, z)
    zet = _vertex_images(dm, len(vertices), n_s)
    return zet, w


def harmonic_measure(vertices, side: int, alpha: complex, z,
                     n_s: int = 512, p: float = 3.0,
                     cfg: SolveConfig | None = None) -> np.ndarray:
    """Harmonic measure of one polygon side at interior points z.

    ``side`` is 1-based: side k joins vertex k to vertex k+1 (cyclic).
    The polygon is mapped onto the disk; the side becomes a boundary arc
    whose harmonic measure at the image point has a closed form after a
    Moebius transform pinning the arc at (-i, 1, i).
    """
    m = len(vertices)
    if not 1 <= side <= m:
        raise ValueError("side index out of range")
    zet, w = _polygon_map_data(vertices, alpha, n_s, p, cfg, z)
    out = _side_measure(zet, side, w)
    return out if np.asarray(z).ndim else float(out[0])


def harmonic_measure_all(vertices, alpha: complex, z, n_s: int = 512,
                         p: float = 3.0,
                         cfg: SolveConfig | None = None) -> np.ndarray:
    """Harmonic measures of every side at points z, shape (m, len(z)).

    One integral-equation solve is shared across all sides; the columns
    sum to 1 up to rounding because the side arcs partition the circle.
    """
    zet, w = _polygon_map_data(vertices, alpha, n_s, p, cfg, z)
    m = zet.size
    return np.vstack([_side_measure(zet, k, w) for k in range(1, m + 1)])


# ----------------------------------------------------------------------
# conformal modulus of quadrilaterals
# ----------------------------------------------------------------------

@dataclass
class QuadConfig:
    """Controls for the rectangle iteration of quad_modulus."""

    n_s: int = 512
    grading_p: float = 3.0
    eps: float = 0.5e-13
    max_iter: int = 50
    solve: SolveConfig = field(default_factory=SolveConfig)


@dataclass
class QuadModulusTrace:
    """Result and per-iteration history of the rectangle iteration."""

    r: float
    converged: bool
    iterations: int
    r_iterates: list
    z4_images: list
    deltas: list
    factors: list


def _check_circle_quad(points):
    pts = [complex(z) for z in points]
    if len(pts) != 4:
        raise ValueError("need exactly four marked points")
    for zz in pts:
        if abs(abs(zz) - 1.0) > 1e-8:
            raise ValueError("marked points must lie on the unit circle")
    args = np.unwrap([math.atan2(zz.imag, zz.real) for zz in pts], period=TWO_PI)
    if not np.all(np.diff(args) > 0.0) or args[-1] - args[0] >= TWO_PI:
        raise ValueError("marked points must be in counterclockwise order")
    return pts


def quad_modulus(z1, z2, z3, z4, cfg: QuadConfig | None = None) -> QuadModulusTrace:
    """Conformal modulus of the disk quadrilateral (z1, z2, z3, z4).

    The sought modulus is the aspect ratio r of the rectangle with
    vertices (0, 1, 1+ir, ir) that maps conformally onto the disk with
    corners going to the marked points. Starting from r = 1, each
    iteration maps the current rectangle onto the disk, sends the images
    of (0, 1, 1+ir) to (z1, z2, z3) by a Moebius transform, and corrects
    r by the angular mismatch of the fourth corner's image against z4,
    with a step-doubling/halving control and a 20 percent cap per step.

    Non-convergence within max_iter iterations is reported through the
    returned trace (``converged=False``), not as an exception.
    """
    if cfg is None:
        cfg = QuadConfig()
    z1, z2, z3, z4 = _check_circle_quad((z1, z2, z3, z4))
    r = 1.0
    delta_prev = 1.0  # delta_{k-1} entering the current iteration
    r_iterates = [r]
    z4_images: list = []
    deltas: list = []
    factors: list = []
    args: list = []
    converged = False
    iterations = 0
    rho_prev = None
    for k in range(1, cfg.max_iter + 1):
        iterations = k
        curve = make_rectangle(r, cfg.n_s, cfg.grading_p)
        alpha = 0.5 * (1.0 + 1j * r)
        dm = map_bounded(curve, alpha, "unit", cfg.solve, x0=rho_prev)
        rho_prev = dm.solution.rho
        ns = cfg.n_s
        zeta = dm.phi_boundary[[0, ns, 2 * ns]]
        zeta = zeta / np.abs(zeta)
        w4 = dm.phi_boundary[3 * ns]
        w4 = w4 / abs(w4)
        psi = mobius_three_points(tuple(zeta), (z1, z2, z3))
        z4k = complex(psi(w4))
        z4_images.append(z4k)
        arg = math.atan2((z4k / z4).imag, (z4k / z4).real)
        args.append(arg)
        delta_step = arg / TWO_PI
        deltas.append(delta_step)
        # step-size control once three angular mismatches are available:
        # same-sign history doubles the factor, alternating halves it
        if k >= 3:
            p1 = args[-3] * args[-2]
            p2 = args[-2] * args[-1]
            if p1 > 0.0 and p2 > 0.0:
                delta_prev = 2.0 * delta_prev
            elif p1 < 0.0 and p2 < 0.0:
                delta_prev = 0.5 * delta_prev
        step = delta_prev * delta_step
        cap = 0.2 * r
        if step > cap:
            step = cap
            delta_prev = 0.5 * delta_prev
        elif step < -cap:
            step = -cap
            delta_prev = 0.5 * delta_prev
        factors.append(delta_prev)
        r_new = r + step
        r_iterates.append(r_new)
        done = abs(r_new - r) < cfg.eps
        r = r_new
        if done:
            converged = True
            break
    return QuadModulusTrace(r=r, converged=converged, iterations=iterations,
                            r_iterates=r_iterates, z4_images=z4_images,
                            deltas=deltas, factors=factors)


def quad_modulus_general(curve: BoundaryCurve, params, alpha: complex | None = None,
                         cfg: QuadConfig | None = None) -> QuadModulusTrace:
    """Modulus of a quadrilateral on an arbitrary Jordan domain.

    ``params`` are four strictly increasing parameter values in [0, 2 pi)
    marking boundary points; each is taken at the nearest discretization
    node. The domain is mapped onto the disk and the marked points' disk
    images feed the rectangle iteration.
    """
    if cfg is None:
        cfg = QuadConfig()
    params = np.asarray(params, dtype=float)
    if params.shape != (4,):
        raise ValueError("need exactly four parameter values")
    if np.any(params < 0.0) or np.any(params >= TWO_PI) or np.any(np.diff(params) <= 0.0):
        raise ValueError("parameters must be strictly increasing in [0, 2 pi)")
    if alpha is None:
        alpha = complex(np.mean(curve.eta))
    if not winding_inside(curve, alpha):
        raise ValueError("alpha must be an interior point")
    dm = map_bounded(curve, alpha, "unit", cfg.solve)
    idx = np.rint(params / TWO_PI * curve.n).astype(int) % curve.n
    if len(set(idx.tolist())) != 4:
        raise ValueError("marked points collapse onto the same node")
    w = dm.phi_boundary[idx]
    w = w / np.abs(w)
    return quad_modulus(w[0], w[1], w[2], w[3], cfg)
