"""Blur kernels: uniform disk, directional ramp masks, dual-pixel half-CoC
kernels, the full-square ramp kernel and rotated kernel banks.

Grid convention: x grows to the right, y grows downward and the origin is
the central cell. Angles are in degrees, clockwise from +x on screen.
Weights are stored in gather orientation, out(p) = sum_o K[o] in(p + o).
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import ValidationError

logger = logging.getLogger(__name__)

DISK = 'disk'
DP = 'dp'
RAMP = 'ramp'
FAMILIES = (DISK, DP, RAMP)
DIRECTIONAL_FAMILIES = (DP, RAMP)


@dataclass(frozen=True, eq=False)
class Kernel:
    """Square nonnegative weight grid summing to one.
    arguments:
       weights: side x side array, read-only.
       radius_px: Signed radius the kernel was built for.
       theta_deg: Ramp fall-off direction (the requested angle, before the
                  180 degree turn applied to negative radii).
       family: One of disk, dp, ramp.
    """
    weights: np.ndarray
    radius_px: float = 0.0
    theta_deg: float = 0.0
    family: str = DISK

    @property
    def side(self):
        return self.weights.shape[0]

    @property
    def half(self):
        return self.side // 2

    @property
    def is_identity(self):
        return self.side == 1

    @property
    def support(self):
        """Boolean footprint of the nonzero weights."""
        return self.weights > 0

    @property
    def centroid(self):
        """Weighted mean offset (x, y) of the kernel in pixels."""
        offsets = np.arange(self.side, dtype=np.float64) - self.half
        x = math.fsum((self.weights * offsets[np.newaxis, :]).ravel())
        y = math.fsum((self.weights * offsets[:, np.newaxis]).ravel())
        return x, y

    def same_weights(self, other):
        return (self.weights.shape == other.weights.shape
                and np.array_equal(self.weights, other.weights))


def kernel_side(radius_px):
    """Side length 2 ceil(|r|) + 1 of the grid holding a radius."""
    return 2 * int(math.ceil(abs(radius_px))) + 1


def _direction(theta_deg):
    """Unit vector of an angle, exact on multiples of 90 degrees and exactly
    negated for theta + 180.
    """
    theta = float(theta_deg) % 360.0
    quadrant = int(theta // 90.0) % 4
    phi = math.radians(theta - 90.0 * quadrant)
    c, s = math.cos(phi), math.sin(phi)
    if phi == 0.0:
        c, s = 1.0, 0.0
    return ((c, s), (-s, c), (-c, -s), (s, -c))[quadrant]


def _offsets(side):
    h = (side - 1) // 2
    axis = np.arange(-h, h + 1, dtype=np.float64)
    return np.meshgrid(axis, axis, indexing='xy')


def _freeze(weights):
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    weights.setflags(write=False)
    return weights


def _normalize(weights):
    # fsum keeps the normalizer independent of cell order, so mirrored
    # kernels normalize bit-identically
    total = math.fsum(weights.ravel())
    return _freeze(weights / total)


def _identity(radius_px, theta_deg, family):
    return Kernel(_freeze(np.ones((1, 1))), float(radius_px), float(theta_deg),
                  family)


def _disk_support(radius):
    side = kernel_side(radius)
    x, y = _offsets(side)
    return np.hypot(x, y) <= radius


def ramp_mask(side, theta_deg, extent=None):
    """Linear ramp falling off toward theta.
    arguments:
       side: Odd grid side.
       theta_deg: Fall-off direction.
       extent: Largest |p| the ramp has to stay positive for; defaults to
               h = (side - 1) / 2, which covers the inscribed disk.
    returns: side x side array M = (e + 1 - p) / (2 (e + 1)) with
             p = x cos(theta) + y sin(theta) and e the extent. Values lie
             strictly in (0, 1) wherever |p| <= e.
    """
    if side < 1 or side % 2 == 0:
        raise ValidationError(f'ramp side must be odd and >= 1, got {side}')
    c, s = _direction(theta_deg)
    e = (side - 1) / 2 if extent is None else float(extent)
    x, y = _offsets(side)
    p = x * c + y * s
    return (e + 1 - p) / (2 * (e + 1))


def square_extent(side, theta_deg):
    """Largest projection |p| of a square grid onto the direction theta."""
    c, s = _direction(theta_deg)
    return (side - 1) / 2 * (abs(c) + abs(s))


@lru_cache(maxsize=1024)
def disk(radius_px):
    """Uniform disk over the cells whose centre lies within the radius."""
    if radius_px < 0:
        raise ValidationError(f'disk radius must be >= 0, got {radius_px}')
    if radius_px == 0:
        return _identity(0.0, 0.0, DISK)
    support = _disk_support(float(radius_px))
    return Kernel(_normalize(support.astype(np.float64)), float(radius_px),
                  0.0, DISK)


def _signed_theta(radius_px, theta_deg):
    # behind the focal plane the half-CoC keeps its direction, in front it flips
    return theta_deg if radius_px >= 0 else theta_deg + 180.0


@lru_cache(maxsize=4096)
def dp_kernel(radius_px, theta_deg):
    """Dual-pixel kernel: disk(|r|) times the ramp toward theta (theta + 180
    for negative radii), renormalized.
    """
    if radius_px == 0:
        return _identity(0.0, theta_deg, DP)
    radius = abs(float(radius_px))
    support = _disk_support(radius)
    mask = ramp_mask(support.shape[0], _signed_theta(radius_px, theta_deg))
    return Kernel(_normalize(np.where(support, mask, 0.0)), float(radius_px),
                  float(theta_deg), DP)


@lru_cache(maxsize=4096)
def ramp_psf(radius_px, theta_deg):
    """Ramp kernel over the full square support (no disk window).
    Off-axis the ramp is stretched over the square's corners so every cell
    keeps a positive weight.
    """
    if radius_px == 0:
        return _identity(0.0, theta_deg, RAMP)
    side = kernel_side(radius_px)
    theta = _signed_theta(radius_px, theta_deg)
    mask = ramp_mask(side, theta, square_extent(side, theta))
    return Kernel(_normalize(mask), float(radius_px), float(theta_deg), RAMP)


def flip_horizontal(k):
    """Mirror a kernel about its central column."""
    theta = (180.0 - k.theta_deg) % 360.0 if k.family != DISK else k.theta_deg
    return Kernel(_freeze(k.weights[:, ::-1]), k.radius_px, theta, k.family)


def make_kernel(family, radius_px, theta_deg=0.0):
    """Build the kernel of a family. Disk kernels ignore theta and use |r|."""
    if family == DP:
        return dp_kernel(float(radius_px), float(theta_deg))
    if family == RAMP:
        return ramp_psf(float(radius_px), float(theta_deg))
    if family == DISK:
        return disk(abs(float(radius_px)))
    raise ValidationError(f'unknown kernel family {family!r}')


def view_angles(n_views):
    """Angles k 360 / n of a rotation bank."""
    check_view_count(n_views)
    return [k * 360.0 / n_views for k in range(n_views)]


def check_view_count(n_views):
    if isinstance(n_views, bool) or int(n_views) != n_views:
        raise ValidationError(f'view count must be an integer, got {n_views}')
    if n_views < 2 or n_views % 2:
        raise ValidationError(
            f'view count must be an even number >= 2, got {n_views}')


def kernel_bank(radius_px, n_views, family=DP):
    """Kernels of one radius rotated through a full circle.
    Every kernel is built analytically at its own angle.
    arguments:
       radius_px: Signed radius.
       n_views: Even number of views.
       family: dp or ramp.
    returns: List of n_views kernels, kernel k at angle k 360 / n_views.
    """
    if family not in DIRECTIONAL_FAMILIES:
        raise ValidationError(
            f'kernel banks need a directional family, got {family!r}')
    return [make_kernel(family, radius_px, theta)
            for theta in view_angles(n_views)]
