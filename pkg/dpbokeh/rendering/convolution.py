"""2D correlation of image planes with blur kernels.

Borders are handled by replicating edge pixels, so a constant plane is a
fixed point of every normalized kernel. Small kernels use direct
correlation, large ones FFT correlation.
"""
import logging

import numpy as np
from scipy import ndimage, signal

from ..errors import ValidationError

logger = logging.getLogger(__name__)

DIRECT = 'direct'
FFT = 'fft'
AUTO = 'auto'
METHODS = (AUTO, DIRECT, FFT)

# kernels with a side at least this large go through the FFT path
FFT_MIN_SIDE = 11


def choose_method(side, method=AUTO):
    if method not in METHODS:
        raise ValidationError(f'unknown convolution method {method!r}')
    if method == AUTO:
        return FFT if side >= FFT_MIN_SIDE else DIRECT
    return method


def padded_indices(shape, region, half):
    """Row and column indices of an output region grown by half a kernel,
    with out-of-image indices replaced by the nearest edge index.
    """
    height, width = shape[:2]
    top, bottom, left, right = region
    rows = np.clip(np.arange(top - half, bottom + half), 0, height - 1)
    cols = np.clip(np.arange(left - half, right + half), 0, width - 1)
    return rows, cols


def _gather(plane, region, half):
    rows, cols = padded_indices(plane.shape, region, half)
    return plane[rows[:, np.newaxis], cols[np.newaxis, :]]


def correlate_valid(padded, weights, method):
    """Correlate a padded window and keep only the fully covered part."""
    half = weights.shape[0] // 2
    if method == FFT:
        flipped = weights[::-1, ::-1]
        if padded.ndim == 3:
            flipped = flipped[..., np.newaxis]
            return signal.fftconvolve(padded, flipped, mode='valid',
                                      axes=(0, 1))
        return signal.fftconvolve(padded, flipped, mode='valid')
    if padded.ndim == 3:
        weights = weights[..., np.newaxis]
    out = ndimage.correlate(padded, weights, mode='nearest')
    if half == 0:
        return out
    return out[half:-half, half:-half]


def convolve(plane, k, method=AUTO, region=None):
    """Correlate a plane with a kernel using replicate-edge padding.
    arguments:
       plane: H x W or H x W x C array.
       k: Kernel.
       method: auto, direct or fft.
       region: (top, bottom, left, right) half open output window;
               the whole plane when omitted.
    returns: Array covering the region; the identity kernel returns a copy.
    """
    height, width = plane.shape[:2]
    region = region or (0, height, 0, width)
    if k.is_identity:
        top, bottom, left, right = region
        return np.array(plane[top:bottom, left:right], dtype=np.float64)
    padded = _gather(np.asarray(plane, dtype=np.float64), region, k.half)
    return correlate_valid(padded, k.weights, choose_method(k.side, method))


def reach_mask(mask, footprint, region):
    """Pixels of a region that some pixel of a mask reaches through a footprint.
    Counting is done in floating point with FFT and thresholded at 0.5,
    which is exact for binary inputs.
    arguments:
       mask: H x W boolean layer membership.
       footprint: Boolean kernel support.
       region: (top, bottom, left, right) output window.
    returns: Boolean array covering the region.
    """
    half = footprint.shape[0] // 2
    if half == 0:
        top, bottom, left, right = region
        return np.array(mask[top:bottom, left:right], dtype=bool)
    padded = _gather(mask, region, half).astype(np.float64)
    counts = signal.fftconvolve(padded,
                                footprint[::-1, ::-1].astype(np.float64),
                                mode='valid')
    return counts > 0.5
