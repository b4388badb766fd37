"""Planar geometry of the device plane.

Positions in the device plane are represented as complex numbers
(``z = x + jy``, both in meters).  The enclosure floor plan is the
rectangle ``[0, L] x [0, B]`` with the origin at a corner.  Human bodies
are diameter-``W`` disks in the same plane.

Everything here is a pure function of its inputs and safe to call from
any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError

#: Absolute tolerance (meters) for point comparisons and containment tests.
EPS_GEO = 1e-9

#: A point in the device plane: real part = x, imaginary part = y.
Point = complex


@dataclass(frozen=True)
class Enclosure:
    """Rectangular enclosure with reflective walls and ceiling.

    The device plane sits ``plane_depth_dh`` meters below the ceiling; a
    signal bouncing off the ceiling therefore travels an extra vertical
    round trip of ``2 * plane_depth_dh``.
    """

    length_l: float = 15.0
    breadth_b: float = 5.0
    height_h: float = 2.5
    plane_depth_dh: float = 1.0

    def __post_init__(self):
        for name in ("length_l", "breadth_b", "height_h", "plane_depth_dh"):
            if not getattr(self, name) > 0:
                raise GeometryError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.plane_depth_dh < self.height_h:
            raise GeometryError("device plane must lie below the ceiling: plane_depth_dh < height_h")

    @property
    def area(self) -> float:
        return self.length_l * self.breadth_b

    def contains(self, p: Point, tol: float = EPS_GEO) -> bool:
        return (-tol <= p.real <= self.length_l + tol) and (-tol <= p.imag <= self.breadth_b + tol)

    def wall_clearance(self, p: Point) -> float:
        """Distance from p to the nearest wall (negative if outside)."""
        return min(p.real, self.length_l - p.real, p.imag, self.breadth_b - p.imag)


@dataclass(frozen=True)
class BodyDisk:
    """Human-body blockage: a disk of diameter ``diameter_w`` in the plane."""

    center: Point
    diameter_w: float

    def __post_init__(self):
        if not self.diameter_w > 0:
            raise GeometryError(f"diameter_w must be positive, got {self.diameter_w}")

    @property
    def radius(self) -> float:
        return self.diameter_w / 2.0


def points_equal(a: Point, b: Point, tol: float = EPS_GEO) -> bool:
    """Equality of plane points within an absolute tolerance."""
    return abs(a - b) <= tol


# ---------------------------------------------------------------------------
# Wall reflections (image method)
# ---------------------------------------------------------------------------

#: Wall order used throughout the package: x=0, x=L, y=0, y=B.
WALLS = ("x0", "xL", "y0", "yB")


def reflect_across_wall(p, wall: int, enc: Enclosure):
    """Mirror image of ``p`` across one wall.

    Works elementwise on complex numpy arrays as well as scalars.
    Wall indices follow :data:`WALLS`.
    """
    if wall == 0:  # x = 0
        return -np.conj(p) if isinstance(p, np.ndarray) else -(p.conjugate())
    if wall == 1:  # x = L
        return 2 * enc.length_l - (np.conj(p) if isinstance(p, np.ndarray) else p.conjugate())
    if wall == 2:  # y = 0
        return np.conj(p) if isinstance(p, np.ndarray) else p.conjugate()
    if wall == 3:  # y = B
        return (np.conj(p) if isinstance(p, np.ndarray) else p.conjugate()) + 2j * enc.breadth_b
    raise GeometryError(f"wall index must be 0..3, got {wall}")


def mirror_images(p: Point, enc: Enclosure) -> list[Point]:
    """First-order mirror images of ``p`` across the four walls.

    Returned in the fixed order x=0, x=L, y=0, y=B.  Only first-order
    images are generated; higher-order bounce paths are out of scope.
    """
    if not enc.contains(p):
        raise GeometryError(f"point {p} lies outside the {enc.length_l} x {enc.breadth_b} rectangle")
    return [complex(reflect_across_wall(p, w, enc)) for w in range(4)]


# ---------------------------------------------------------------------------
# Blocking-cone membership
# ---------------------------------------------------------------------------

def in_blocking_cone(z: Point, blocker: BodyDisk, z_ref: Point) -> bool:
    """Whether ``z`` falls in the blocking cone of ``blocker`` seen from ``z_ref``.

    The cone of a body disk B with diameter W, viewed from the reference
    device, is the set of points z with

        |z - z_ref|^2 >= |B - z_ref|^2 - (W/2)^2   and
        |angle(z - z_ref) - angle(B - z_ref)| <= asin(W / (2 |B - z_ref|)).

    Boundary points count as inside.  The cone is undefined when the
    viewpoint lies inside the blocker disk.
    """
    d_blk = abs(blocker.center - z_ref)
    if d_blk <= blocker.radius:
        raise GeometryError(
            "blocking cone undefined: viewpoint lies within the blocker disk "
            f"(|B - z_ref| = {d_blk:.4g} <= W/2 = {blocker.radius:.4g})"
        )
    rel = z - z_ref
    if abs(rel) ** 2 < d_blk ** 2 - blocker.radius ** 2:
        return False
    # angle difference wrapped to [-pi, pi] via the quotient argument
    ang = abs(np.angle(rel * (blocker.center - z_ref).conjugate())) if rel != 0 else 0.0
    return ang <= math.asin(min(1.0, blocker.diameter_w / (2.0 * d_blk)))


def cone_membership(z, centers, z_ref: Point, body_w: float):
    """Vectorized cone test used by the simulator.

    ``z`` and ``centers`` are broadcastable complex arrays.  A blocker
    whose disk covers the viewpoint blocks everything (the receiver is
    inside a body), which the scalar :func:`in_blocking_cone` reports as
    an error instead.
    """
    z = np.asarray(z, dtype=complex)
    centers = np.asarray(centers, dtype=complex)
    half_w = body_w / 2.0
    d_blk = np.abs(centers - z_ref)
    rel = z - z_ref
    swallowed = d_blk <= half_w
    safe = np.where(swallowed, np.inf, d_blk)
    radial = np.abs(rel) ** 2 >= d_blk ** 2 - half_w ** 2
    ang = np.abs(np.angle(rel * np.conj(centers - z_ref)))
    angular = ang <= np.arcsin(np.minimum(1.0, body_w / (2.0 * safe)))
    return np.where(swallowed, True, radial & angular)


# ---------------------------------------------------------------------------
# Segment / disk occlusion
# ---------------------------------------------------------------------------

def point_segment_distance(p, a, b):
    """Distance from point(s) ``p`` to the closed segment a-b (complex, broadcastable)."""
    u = b - a
    uu = (u * np.conj(u)).real
    v = np.asarray(p, dtype=complex) - a
    t = np.clip((v * np.conj(u)).real / uu, 0.0, 1.0)
    return np.abs(v - t * u)


def segment_blocked_by_disk(a: Point, b: Point, disk: BodyDisk) -> bool:
    """Whether the closed segment a-b passes within W/2 of the disk center.

    Endpoints inside the disk count as blocked.  This is the segment-based
    equivalent of blocking-cone membership used by the simulator's path
    checker.
    """
    if a == b:
        raise GeometryError("degenerate segment: a == b")
    return bool(point_segment_distance(disk.center, a, b) <= disk.radius)


def segment_disk_occlusion_matrix(sources, target: Point, centers, body_w: float):
    """Occlusion matrix for many segments against many disks.

    ``sources`` is an (n,) complex array of segment start points, all
    segments ending at ``target``; ``centers`` is an (m,) complex array of
    disk centers.  Returns a boolean (n, m) array: entry [i, j] is True
    when disk j occludes segment i.
    """
    src = np.asarray(sources, dtype=complex)
    cen = np.asarray(centers, dtype=complex)
    u = target - src  # (n,)
    uu = (u * np.conj(u)).real
    v = cen[None, :] - src[:, None]  # (n, m)
    with np.errstate(invalid="ignore"):
        t = np.clip((v * np.conj(u)[:, None]).real / uu[:, None], 0.0, 1.0)
    dist = np.abs(v - t * u[:, None])
    return dist <= body_w / 2.0


# ---------------------------------------------------------------------------
# Ray casting and Monte Carlo areas
# ---------------------------------------------------------------------------

def boundary_distance(z_ref: Point, enc: Enclosure, theta):
    """Distance from an interior point to the rectangle boundary along rays.

    ``theta`` is an array of ray angles; returns the matching array of
    distances to the first wall hit.
    """
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    dist = np.full_like(theta, np.inf)
    for d_wall, trig in ((enc.length_l - z_ref.real, c), (z_ref.real, -c),
                         (enc.breadth_b - z_ref.imag, s), (z_ref.imag, -s)):
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = np.where(trig > 0, d_wall / np.where(trig > 0, trig, 1.0), np.inf)
        dist = np.minimum(dist, cand)
    return dist


def corner_angles(z_ref: Point, enc: Enclosure) -> list[float]:
    """Angles from an interior point to the four rectangle corners."""
    return sorted(
        float(np.angle(complex(x, y) - z_ref))
        for x in (0.0, enc.length_l)
        for y in (0.0, enc.breadth_b)
    )


def region_area_montecarlo(predicate, rect, n_samples: int, seed: int,
                           antithetic_y: bool = False):
    """Monte Carlo area of ``{z in rect : predicate(z)}``.

    ``predicate`` must accept a complex ndarray and return a boolean
    ndarray.  ``rect`` is (x0, x1, y0, y1).  Returns ``(area, stderr)``
    where stderr is the binomial standard error of the estimate.  The
    result is deterministic for a given seed.

    With ``antithetic_y`` the sample set is closed under reflection about
    the rectangle's horizontal mid-line, which makes estimates for
    mirror-symmetric configurations agree exactly (the hit count is the
    same integer for both).
    """
    x0, x1, y0, y1 = map(float, rect)
    if not (x1 > x0 and y1 > y0):
        raise GeometryError(f"degenerate bounding rectangle {rect}")
    if n_samples < 10_000:
        raise GeometryError(f"n_samples must be >= 1e4, got {n_samples}")
    rng = np.random.default_rng(seed)
    if antithetic_y:
        half = (n_samples + 1) // 2
        xs = rng.uniform(x0, x1, size=half)
        ys = rng.uniform(y0, y1, size=half)
        pts = np.concatenate([xs + 1j * ys, xs + 1j * (y0 + y1 - ys)])[:n_samples]
    else:
        pts = rng.uniform(x0, x1, size=n_samples) + 1j * rng.uniform(y0, y1, size=n_samples)
    hits = int(np.count_nonzero(predicate(pts)))
    rect_area = (x1 - x0) * (y1 - y0)
    p_hat = hits / n_samples
    area = rect_area * p_hat
    stderr = rect_area * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / n_samples)
    return area, stderr
