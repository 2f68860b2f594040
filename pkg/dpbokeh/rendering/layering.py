"""Decomposition of an image into depth layers of constant blur radius,
ordered back to front.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..errors import ValidationError

logger = logging.getLogger(__name__)

MAX_LAYERS = 500
RADIUS_GRANULARITY_PX = 0.25


@dataclass
class DepthLayer:
    """One slice of the image.
    Coverage and premultiplied colour are derived from a boolean mask and
    the source image, so a stack of hundreds of layers stays small.
    arguments:
       radius_px: Representative signed blur radius.
       mask: H x W boolean membership.
       image: The source image (shared by all layers of a stack).
       bbox: (top, bottom, left, right) of the mask, half open.
    """
    radius_px: float
    mask: np.ndarray = field(repr=False)
    image: np.ndarray = field(repr=False)
    bbox: tuple = (0, 0, 0, 0)

    @property
    def coverage(self):
        """H x W float mask, 1 where the pixel belongs to the layer."""
        return self.mask.astype(np.float64)

    @property
    def color(self):
        """Premultiplied colour plane, image * coverage."""
        coverage = self.coverage
        if self.image.ndim == 3:
            coverage = coverage[..., np.newaxis]
        return self.image * coverage

    @property
    def pixel_count(self):
        return int(np.count_nonzero(self.mask))

    def window(self, rows, cols):
        """Premultiplied colour and coverage sampled at index grids.
        arguments:
           rows: Row indices (may repeat edge rows for padding).
           cols: Column indices.
        returns: (color, coverage) windows.
        """
        index = (rows[:, np.newaxis], cols[np.newaxis, :])
        coverage = self.mask[index].astype(np.float64)
        color = self.image[index]
        if color.ndim == 3:
            return color * coverage[..., np.newaxis], coverage
        return color * coverage, coverage


@dataclass
class LayerStack:
    """Layers ordered back to front: index 0 is the farthest layer.
    `subject` marks pixels the renderer copies from the input unchanged.
    """
    layers: List[DepthLayer]
    shape: tuple
    subject: Optional[np.ndarray] = field(default=None, repr=False)

    def __len__(self):
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __getitem__(self, index):
        return self.layers[index]

    @property
    def radii(self):
        return [layer.radius_px for layer in self.layers]

    @property
    def max_abs_radius(self):
        return max((abs(r) for r in self.radii), default=0.0)


def _bbox(mask):
    rows = np.flatnonzero(mask.any(axis=1))
    cols = np.flatnonzero(mask.any(axis=0))
    return int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1


def layer_representatives(radii, max_layers=MAX_LAYERS):
    """Uniformly spaced representative radii for a set of signed radii.
    arguments:
       radii: Array of signed radii.
       max_layers: Upper bound of the number of representatives.
    returns: (representatives, bin_width). The representative closest to 0
             is replaced by exactly 0 when 0 falls into its bin.
    """
    lo, hi = float(radii.min()), float(radii.max())
    distinct = np.unique(np.rint(radii / RADIUS_GRANULARITY_PX)).size
    count = max(1, min(max_layers, distinct))
    if count == 1 or hi == lo:
        representative = 0.0 if lo <= 0.0 <= hi else (lo + hi) / 2
        return np.array([representative]), hi - lo
    representatives = np.linspace(lo, hi, count)
    width = (hi - lo) / (count - 1)
    if lo <= 0.0 <= hi:
        nearest = int(np.clip(np.rint(-lo / width), 0, count - 1))
        representatives[nearest] = 0.0
    return representatives, width


def quantize_layers(image, defocus, max_layers=MAX_LAYERS):
    """Split an image into layers of quantized blur radius.
    arguments:
       image: H x W or H x W x C linear-light array.
       defocus: DefocusMap with the same height and width.
       max_layers: Maximum number of layers.
    returns: LayerStack ordered back to front (descending signed radius).
    """
    image = np.asarray(image, dtype=np.float64)
    if image.shape[:2] != defocus.shape:
        raise ValidationError(
            'image shape {} does not match defocus shape {}'.format(
                image.shape[:2], defocus.shape))
    if int(max_layers) != max_layers or max_layers < 1:
        raise ValidationError(f'max layers must be >= 1, got {max_layers}')

    radii = defocus.values
    representatives, width = layer_representatives(radii, int(max_layers))
    if len(representatives) == 1:
        index = np.zeros(radii.shape, dtype=np.intp)
    else:
        index = np.rint((radii - radii.min()) / width).astype(np.intp)
        index = np.clip(index, 0, len(representatives) - 1)

    layers = []
    # linspace is ascending, so walking it backwards is back to front
    for bin_index in range(len(representatives) - 1, -1, -1):
        mask = index == bin_index
        if not mask.any():
            continue
        layers.append(
            DepthLayer(float(representatives[bin_index]), mask, image,
                       _bbox(mask)))

    logger.info('Quantized %d layers (bin width %.4f px)', len(layers), width)
    return LayerStack(layers, radii.shape, subject=defocus.subject)
