"""Depth maps and their conversion into signed per-pixel defocus radii.

Two depth encodings are supported. Physical maps hold metric scene
distances in mm and go through the thin-lens model; artistic maps hold
normalized values in [0, 1] and are mapped linearly around a focus value.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ValidationError
from .thin_lens import CameraParams, coc_radius_mm

logger = logging.getLogger(__name__)

PHYSICAL = 'physical'
ARTISTIC = 'artistic'
DEPTH_MODES = (PHYSICAL, ARTISTIC)

DEFAULT_MAX_RADIUS_PX = 25.0


@dataclass(frozen=True)
class ArtisticParams:
    """Parameters of the artistic mapping.
    arguments:
       focus_disparity: Normalized value that lands on the focal plane.
       invert: Use 1 - v, for maps whose values grow toward the camera.
    """
    focus_disparity: float = 0.5
    invert: bool = False

    def __post_init__(self):
        if not (0.0 <= self.focus_disparity <= 1.0):
            raise ValidationError(
                f'focus disparity must lie in [0, 1], got {self.focus_disparity}')


@dataclass
class DepthMap:
    """Per-pixel depth, either metric (physical) or normalized (artistic)."""
    values: np.ndarray
    mode: str = ARTISTIC

    def __post_init__(self):
        if self.mode not in DEPTH_MODES:
            raise ValidationError(f'unknown depth mode {self.mode!r}')
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.size == 0:
            raise ValidationError(
                f'depth map must be a non-empty 2D grid, got shape {self.values.shape}')
        if not np.all(np.isfinite(self.values)):
            raise ValidationError('depth map contains NaN or infinite values')
        if self.mode == PHYSICAL and np.any(self.values <= 0):
            raise ValidationError('metric depths must be > 0')
        if self.mode == ARTISTIC and (self.values.min() < 0
                                      or self.values.max() > 1):
            raise ValidationError('normalized depths must lie in [0, 1]')

    @property
    def height(self):
        return self.values.shape[0]

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape


@dataclass
class DefocusMap:
    """Signed blur radius per pixel. Positive behind the focal plane,
    negative in front of it. `subject` marks pixels that must stay sharp.
    """
    values: np.ndarray
    max_radius_px: float = DEFAULT_MAX_RADIUS_PX
    subject: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValidationError('defocus map must be 2D')
        if not np.all(np.isfinite(self.values)):
            raise ValidationError('defocus map contains non-finite radii')
        if self.subject is not None:
            self.subject = np.asarray(self.subject, dtype=bool)
            if self.subject.shape != self.values.shape:
                raise ValidationError(
                    'subject mask shape {} does not match defocus shape {}'.
                    format(self.subject.shape, self.values.shape))

    @property
    def height(self):
        return self.values.shape[0]

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape


def _check_max_radius(max_radius_px):
    if not (math.isfinite(max_radius_px) and max_radius_px >= 0):
        raise ValidationError(
            f'max radius must be a finite number >= 0, got {max_radius_px}')


def defocus_map(params,
                depth,
                seg_mask=None,
                max_radius_px=DEFAULT_MAX_RADIUS_PX,
                image_shape=None):
    """Convert a depth map into a DefocusMap.
    arguments:
       params: CameraParams for physical depth, ArtisticParams for artistic depth.
       depth: DepthMap.
       seg_mask: Optional coverage mask; pixels > 0.5 belong to the subject
                 and get radius exactly 0.
       max_radius_px: Radius cap in pixels.
       image_shape: Optional (height, width) of the target image to check against.
    returns: DefocusMap with |r| <= max_radius_px.
    """
    _check_max_radius(max_radius_px)
    if image_shape is not None and tuple(image_shape[:2]) != depth.shape:
        raise ValidationError(
            'depth map shape {} does not match image shape {}'.format(
                depth.shape, tuple(image_shape[:2])))

    if depth.mode == PHYSICAL:
        if not isinstance(params, CameraParams):
            raise ValidationError('physical depth needs camera parameters')
        radius = params.pixels_per_mm * coc_radius_mm(params, depth.values)
        radius = np.clip(radius, -max_radius_px, max_radius_px)
    else:
        if not isinstance(params, ArtisticParams):
            raise ValidationError(
                'artistic depth needs a focus disparity, not camera parameters')
        values = 1.0 - depth.values if params.invert else depth.values
        focus = params.focus_disparity
        spread = max(focus, 1.0 - focus)
        radius = max_radius_px * (values - focus) / spread

    subject = None
    if seg_mask is not None:
        subject = np.asarray(seg_mask) > 0.5
        if subject.shape != depth.shape:
            raise ValidationError(
                'segmentation mask shape {} does not match depth shape {}'.
                format(subject.shape, depth.shape))
        radius = np.where(subject, 0.0, radius)

    logger.info('Defocus radii span [%.3f, %.3f] px', radius.min(),
                radius.max())
    return DefocusMap(radius, max_radius_px=max_radius_px, subject=subject)
