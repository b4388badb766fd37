"""Blockage probabilities and the strong-interferer threshold radius.

A transmitter at distance ``r`` from the reference device is blocked by a
third user whenever that user's body-disk center falls in a stadium-shaped
region around the link segment of area ``r*W + pi*W^2/4``.  With body
centers forming a Poisson point process of intensity ``density``, the pair
blockage probability, the mean number of unblocked ("strong") interferers
and the equivalent threshold radius all follow from that area.

Self-blockage (by the transmitter's or the receiver's own body) is a pure
orientation effect and is characterized separately by ``self_block_prob``
and the two-trial count distribution ``self_block_counts``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDomainError, GeometryError
from .geometry import (EPS_GEO, Enclosure, Point, cone_membership,
                       region_area_montecarlo)
from .params import SystemParams
from .quadrature import adaptive_rect

#: Fixed seed for the internal Monte Carlo area estimates used by q1, so the
#: analytic pipeline is reproducible bit-for-bit.
Q1_AREA_SEED = 0x5EED_AREA5
#: Sample count for those estimates (even: antithetic pairs).
Q1_AREA_SAMPLES = 2 ** 21


@dataclass(frozen=True)
class SelfBlockDist:
    """Distribution of the number of self-blockages s in {0, 1, 2}."""

    p0: float
    p1: float
    p2: float

    def __post_init__(self):
        for p in (self.p0, self.p1, self.p2):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"self-block probabilities must be in [0,1], got {p}")
        if abs(self.p0 + self.p1 + self.p2 - 1.0) > 1e-12:
            raise ValueError("self-block probabilities must sum to 1")

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2])


def pair_block_prob(dist: float, params: SystemParams) -> float:
    """Probability that a link of length ``dist`` is blocked by some third user.

    Equals ``1 - exp(-density * (dist*W + pi*W^2/4))``; the area is the
    stadium swept by body centers that intersect the link segment.
    """
    if dist < 0:
        raise ValueError(f"dist must be >= 0, got {dist}")
    w = params.body_w
    area = dist * w + math.pi * w * w / 4.0
    return -math.expm1(-params.density * area)


def mean_strong_count(z_ref: Point, enc: Enclosure, params: SystemParams,
                      rtol: float = 1e-6) -> float:
    """Expected number of unblocked interferers seen from ``z_ref``.

    ``density * integral over the plane of (1 - pair_block_prob)``, computed
    with adaptive tensor-product Gauss-Legendre.  The integrand has a radial
    kink at ``z_ref``, so the panel grid is anchored there.
    """
    if not enc.contains(z_ref):
        raise GeometryError(f"z_ref {z_ref} outside the device plane")
    lam = params.density
    if lam == 0:
        return 0.0
    w = params.body_w
    cap = math.exp(-lam * math.pi * w * w / 4.0)

    def integrand(x, y):
        r = np.hypot(x - z_ref.real, y - z_ref.imag)
        return np.exp(-lam * w * r)

    val = adaptive_rect(integrand, (0.0, enc.length_l, 0.0, enc.breadth_b),
                        rtol=rtol, split=(z_ref.real, z_ref.imag))
    return lam * cap * val


def threshold_radius(z_ref: Point, enc: Enclosure, params: SystemParams) -> float:
    """Radius of the disk holding, on average, all strong interferers.

    ``sqrt(mean_strong_count / (pi * density))``; the disk is always treated
    as complete even where it extends beyond the walls (the overflow stands
    in for wall-reflection images).
    """
    if params.density == 0:
        return 0.0
    rho = mean_strong_count(z_ref, enc, params)
    return math.sqrt(rho / (math.pi * params.density))


def self_block_prob(params: SystemParams) -> float:
    """Probability that a user's own body blocks their device's link.

    ``asin(W / (2d)) / pi`` for a device uniformly placed on its radius-d
    orbit.
    """
    ratio = params.body_w / (2.0 * params.device_d)
    if ratio > 1.0:
        raise ValueError(f"W/(2d) = {ratio:.4g} > 1: self-block angle undefined")
    return math.asin(ratio) / math.pi


def self_block_counts(params: SystemParams) -> SelfBlockDist:
    """Distribution of the self-blockage count over the two bodies of a link."""
    p = self_block_prob(params)
    return SelfBlockDist(p0=(1.0 - p) ** 2, p1=2.0 * p * (1.0 - p), p2=p * p)


def _ref_body_center(z_ref: Point, psi_ref: float, params: SystemParams) -> Point:
    """Reference body center: the device faces psi_ref from its body."""
    return z_ref - params.device_d * complex(math.cos(psi_ref), math.sin(psi_ref))


def q1_detail(z_ref: Point, psi_ref: float, enc: Enclosure, params: SystemParams,
              r_b: float | None = None,
              n_samples: int = Q1_AREA_SAMPLES, seed: int = Q1_AREA_SEED):
    """Reference-cone occupancy probability for far interferers, with stderr.

    The probability that a transmitter outside the strong-interferer disk
    falls inside the reference body's blocking cone:

        |cone(B_ref) \\ disk| / (L*B - |plane ∩ disk|)

    Both areas are clipped to the plane and estimated with the seeded
    Monte Carlo area routine (antithetic in y, so mirror-symmetric
    configurations produce identical hit counts).
    """
    if not enc.contains(z_ref):
        raise GeometryError(f"z_ref {z_ref} outside the device plane")
    if r_b is None:
        r_b = threshold_radius(z_ref, enc, params)
    b_ref = _ref_body_center(z_ref, psi_ref, params)
    rect = (0.0, enc.length_l, 0.0, enc.breadth_b)
    w = params.body_w

    def in_cone_not_disk(z):
        return cone_membership(z, b_ref, z_ref, w) & (np.abs(z - z_ref) > r_b)

    def in_disk(z):
        return np.abs(z - z_ref) <= r_b

    num_area, num_se = region_area_montecarlo(in_cone_not_disk, rect, n_samples,
                                              seed, antithetic_y=True)
    disk_area, disk_se = region_area_montecarlo(in_disk, rect, n_samples,
                                                seed, antithetic_y=True)
    denom = enc.area - disk_area
    if denom <= max(EPS_GEO, 10.0 * disk_se):
        raise DegenerateDomainError(
            "strong-interferer disk covers the whole plane; no weak region left"
        )
    value = num_area / denom
    stderr = math.hypot(num_se / denom, value * disk_se / denom)
    return value, stderr


def q1(z_ref: Point, psi_ref: float, enc: Enclosure, params: SystemParams,
       r_b: float | None = None) -> float:
    """See :func:`q1_detail`; returns the probability alone."""
    return q1_detail(z_ref, psi_ref, enc, params, r_b=r_b)[0]


def q_facing(z_ref: Point, psi_ref: float, enc: Enclosure, params: SystemParams,
             r_b: float | None = None) -> float:
    """Probability that a far interferer and the reference face each other.

    ``(1 - self_block_prob) * (1 - q1)``: its own body must not block, and it
    must sit outside the reference body's cone.
    """
    return (1.0 - self_block_prob(params)) * (1.0 - q1(z_ref, psi_ref, enc, params, r_b=r_b))
