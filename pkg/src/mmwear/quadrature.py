"""Adaptive Gauss-Legendre quadrature helpers.

Three integration patterns cover everything the coverage pipeline needs:

* 1-D adaptive panels (radial integrals of the interference Laplace terms),
* 2-D adaptive tensor products over a rectangle with optional interior
  split points (density integrals whose integrand has a radial kink),
* radially symmetric integrands over ``rectangle \\ disk`` regions, done in
  polar coordinates about the disk center so the circular boundary is an
  exact integration limit instead of a masked discontinuity.

Integrands must be vectorized over numpy arrays.  All routines raise
:class:`QuadratureError` if the tolerance is not met at max refinement.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError
from .geometry import Enclosure, Point, boundary_distance, corner_angles


@lru_cache(maxsize=None)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def _panel_nodes(edges, n_nodes: int):
    """GL nodes/weights on each panel defined by consecutive edges."""
    nodes, wts = _leggauss(n_nodes)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * nodes[None, :]
    w = half[:, None] * wts[None, :]
    return x.ravel(), w.ravel()


def _refine(edges):
    mids = 0.5 * (edges[:-1] + edges[1:])
    out = np.empty(edges.size + mids.size)
    out[0::2] = edges
    out[1::2] = mids
    return out


def adaptive_1d(f, a: float, b: float, rtol: float = 1e-9, atol: float = 0.0,
                breakpoints=(), n_nodes: int = 16, max_level: int = 12) -> float:
    """Adaptive composite Gauss-Legendre on [a, b].

    Panels start at the given interior breakpoints and are uniformly
    bisected until two successive refinements agree to tolerance.
    """
    if b <= a:
        return 0.0
    edges = np.array(sorted({float(a), float(b), *[float(t) for t in breakpoints if a < t < b]}))
    prev = None
    for _ in range(max_level):
        x, w = _panel_nodes(edges, n_nodes)
        val = float(np.sum(w * f(x)))
        if prev is not None and abs(val - prev) <= max(rtol * abs(val), atol):
            return val
        prev = val
        edges = _refine(edges)
    raise QuadratureError(
        f"1-D quadrature did not converge on [{a}, {b}] (last delta "
        f"{abs(val - prev):.3e} vs rtol {rtol})"
    )


def adaptive_rect(f, rect, rtol: float = 1e-6, split=None,
                  n_nodes: int = 8, max_level: int = 9) -> float:
    """Adaptive tensor-product Gauss-Legendre over a rectangle.

    ``f`` takes meshgrid-broadcast arrays (x[:, None], y[None, :]).
    ``split`` is an optional interior point (x, y) at which the panel grid
    is anchored; placing it at a kink of the integrand (e.g. the apex of a
    radial distance function) restores fast convergence.
    """
    x0, x1, y0, y1 = map(float, rect)
    if not (x1 > x0 and y1 > y0):
        raise QuadratureError(f"degenerate rectangle {rect}")
    xsplit = sorted({x0, x1, *([float(split[0])] if split and x0 < split[0] < x1 else [])})
    ysplit = sorted({y0, y1, *([float(split[1])] if split and y0 < split[1] < y1 else [])})
    xe = np.array(xsplit)
    ye = np.array(ysplit)
    prev = None
    for _ in range(max_level):
        x, wx = _panel_nodes(xe, n_nodes)
        y, wy = _panel_nodes(ye, n_nodes)
        vals = f(x[:, None], y[None, :])
        val = float(wx @ vals @ wy)
        if prev is not None and abs(val - prev) <= rtol * max(abs(val), 1e-300):
            return val
        prev = val
        xe = _refine(xe)
        ye = _refine(ye)
    raise QuadratureError(
        f"2-D quadrature did not converge (last delta {abs(val - prev):.3e} vs rtol {rtol})"
    )


def _annulus_breakpoints(z_ref: Point, enc: Enclosure, r_inner: float):
    """Theta panel breakpoints: rectangle corners plus wall/inner-circle crossings."""
    brk = {-math.pi, math.pi}
    brk.update(corner_angles(z_ref, enc))
    if r_inner > 0:
        for w_dist, w_ang in ((enc.length_l - z_ref.real, 0.0),
                              (enc.breadth_b - z_ref.imag, math.pi / 2),
                              (z_ref.real, math.pi),
                              (z_ref.imag, -math.pi / 2)):
            if 0 < w_dist < r_inner:
                da = math.acos(w_dist / r_inner)
                for t in (w_ang - da, w_ang + da):
                    brk.add((t + math.pi) % (2 * math.pi) - math.pi)
    return np.array(sorted(brk))


def integrate_radial_outside_disk(g, z_ref: Point, enc: Enclosure, r_inner: float,
                                  rtol: float = 1e-8, n_theta: int = 32,
                                  n_r: int = 24, max_level: int = 8) -> float:
    """Integral of ``g(|z - z_ref|)`` over ``rectangle \\ disk(z_ref, r_inner)``.

    Polar form: for each ray the radial range is ``[min(r_inner, R(theta)),
    R(theta)]`` with ``R`` the distance to the rectangle boundary, so the
    disk edge never appears as an integrand discontinuity.  ``g`` must be
    vectorized over 2-D arrays.
    """
    edges = _annulus_breakpoints(z_ref, enc, r_inner)
    rn, rw = _leggauss(n_r)
    prev = None
    n_t = n_theta
    for _ in range(max_level):
        th, tw = _panel_nodes(edges, n_t)
        r_out = boundary_distance(z_ref, enc, th)
        r_in = np.minimum(r_out, r_inner)
        half = 0.5 * (r_out - r_in)
        mid = 0.5 * (r_out + r_in)
        r = mid[:, None] + half[:, None] * rn[None, :]
        inner = (g(r) * r) @ rw * half
        val = float(np.sum(tw * inner))
        if prev is not None and abs(val - prev) <= rtol * max(abs(val), 1e-300):
            return val
        prev = val
        n_t *= 2
    raise QuadratureError(
        f"polar quadrature did not converge (last delta {abs(val - prev):.3e} vs rtol {rtol})"
    )


def disk_rect_intersection_area(z_ref: Point, enc: Enclosure, radius: float,
                                rtol: float = 1e-10) -> float:
    """Area of ``rectangle ∩ disk(z_ref, radius)`` for an interior center."""
    if radius <= 0:
        return 0.0
    edges = _annulus_breakpoints(z_ref, enc, radius)
    prev = None
    n_t = 64
    for _ in range(8):
        th, tw = _panel_nodes(edges, n_t)
        r_cap = np.minimum(boundary_distance(z_ref, enc, th), radius)
        val = float(np.sum(tw * 0.5 * r_cap * r_cap))
        if prev is not None and abs(val - prev) <= rtol * max(abs(val), 1e-300):
            return val
        prev = val
        n_t *= 2
    raise QuadratureError("disk/rectangle intersection area did not converge")
