import numpy as np

from dpbokeh.optics.defocus import DefocusMap
from dpbokeh.psf import kernel_side


def constant_defocus(shape, radius):
    return DefocusMap(np.full(shape[:2], float(radius)))


def interior(plane, margin):
    return plane[margin:-margin, margin:-margin]


def intensity_centroid(plane, center, half):
    """(x, y) centroid of the summed channels in a square window."""
    x0, y0 = center
    window = plane[y0 - half:y0 + half + 1, x0 - half:x0 + half + 1]
    if window.ndim == 3:
        window = window.sum(axis=2)
    y, x = np.mgrid[y0 - half:y0 + half + 1, x0 - half:x0 + half + 1]
    total = window.sum()
    return (x * window).sum() / total, (y * window).sum() / total


def box_weights(radius):
    """Uniform square over the support of a kernel of the given radius."""
    side = kernel_side(radius)
    return np.full((side, side), 1.0 / side**2)
