"""Thin-lens model: image distance, aperture diameter and signed
circle-of-confusion radius of a scene point.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CameraParams:
    """Thin-lens camera.

    arguments:
       focal_length_mm: Focal length f in mm.
       f_number: Aperture ratio F.
       focus_distance_mm: Distance s of the focal plane in mm.
       pixels_per_mm: Sensor-plane scale converting a CoC in mm to pixels.
    """
    focal_length_mm: float
    f_number: float
    focus_distance_mm: float
    pixels_per_mm: float = 1.0

    def __post_init__(self):
        for name in ('focal_length_mm', 'f_number', 'focus_distance_mm',
                     'pixels_per_mm'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(
                    f'{name} must be a positive finite number, got {value}')
        if self.focus_distance_mm <= self.focal_length_mm:
            raise ValidationError(
                'focus distance ({}mm) must exceed the focal length ({}mm)'.
                format(self.focus_distance_mm, self.focal_length_mm))


def image_distance(params):
    """Distance between lens and sensor, s' = f s / (s - f), in mm."""
    f, s = params.focal_length_mm, params.focus_distance_mm
    if s <= f:
        raise ValidationError(
            f'degenerate focus: s={s}mm is not beyond f={f}mm')
    return f * s / (s - f)


def aperture_diameter(params):
    """Aperture diameter q = f / F in mm."""
    return params.focal_length_mm / params.f_number


def coc_radius_mm(params, d):
    """Signed circle-of-confusion radius of scene points at distance d.
    Zero on the focal plane, negative in front of it, positive behind.
    arguments:
       params: CameraParams.
       d: Scene distance in mm, a scalar or an array.
    returns: r = (q/2) (s'/s) (d - s)/d with the shape of d.
    """
    d_array = np.asarray(d, dtype=np.float64)
    if not np.all(np.isfinite(d_array)) or np.any(d_array <= 0):
        raise ValidationError('scene distances must be finite and > 0')
    s = params.focus_distance_mm
    scale = aperture_diameter(params) / 2 * image_distance(params) / s
    radius = scale * ((d_array - s) / d_array)
    if np.ndim(d) == 0:
        return float(radius)
    return radius
