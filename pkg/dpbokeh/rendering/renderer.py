"""Layered defocus renderer.

Each depth layer is blurred with the kernel of its radius at the requested
angle, both its premultiplied colour and its coverage, and the blurred
layers are composited back to front with the OVER operator. The result is
normalized by the accumulated coverage. Views at angles k 360 / n give the
multi-view set whose cyclic playback produces the motion effect; the mean
of two opposite views is the bokeh image.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List

import numpy as np
from tqdm import tqdm

from ..errors import RenderError, ValidationError
from ..psf.kernels import DP, DISK, FAMILIES, make_kernel, view_angles
from .convolution import (AUTO, choose_method, correlate_valid, padded_indices,
                          reach_mask)

logger = logging.getLogger(__name__)

# accumulated coverage below this falls back to the input pixel
ALPHA_EPSILON = 1e-4

HORIZONTAL = 'horizontal'
VERTICAL = 'vertical'
ORIENTATIONS = {HORIZONTAL: (0.0, 180.0), VERTICAL: (90.0, 270.0)}


@dataclass
class ViewSet:
    """Rendered views plus the combined bokeh image.
    arguments:
       views: n planes, view k rendered at angle k 360 / n.
       bokeh: Mean of the two views at 0 and 180 degrees.
       n: Number of views.
       psf_family: Kernel family the views were rendered with.
    """
    views: List[np.ndarray] = field(repr=False)
    bokeh: np.ndarray = field(repr=False)
    n: int = 2
    psf_family: str = DP

    @property
    def angles(self):
        return view_angles(self.n)

    def opposite(self, k):
        """Index of the view rendered at the opposite angle of view k."""
        return (k + self.n // 2) % self.n

    def frames(self, cycles=1):
        """Views in animation order (ascending angle), repeated cyclically."""
        return [self.views[k % self.n] for k in range(self.n * cycles)]


def _dilate(bbox, half, shape):
    top, bottom, left, right = bbox
    height, width = shape
    return (max(top - half, 0), min(bottom + half, height),
            max(left - half, 0), min(right + half, width))


class LayerRenderer():
    """Renders views of one layer stack with one kernel family.
    Reach masks of the layers are computed once on construction and shared
    by every view, so one instance can render views from several threads.
    """

    def __init__(self, image, stack, family=DP, method=AUTO):
        """Prepare a renderer.
        arguments:
           image: The all-in-focus linear-light image the stack was built from.
           stack: LayerStack.
           family: dp, ramp or disk.
           method: Convolution method, auto, direct or fft.
        """
        if family not in FAMILIES:
            raise ValidationError(f'unknown kernel family {family!r}')
        if len(stack) == 0:
            raise RenderError('cannot render an empty layer stack')
        self.image = np.asarray(image, dtype=np.float64)
        if self.image.shape[:2] != tuple(stack.shape):
            raise ValidationError(
                'image shape {} does not match layer stack shape {}'.format(
                    self.image.shape[:2], tuple(stack.shape)))
        self.stack = stack
        self.family = family
        self.method = method
        self._reach = [self._layer_reach(layer) for layer in stack]

    def _layer_reach(self, layer):
        footprint = make_kernel(self.family, layer.radius_px, 0.0)
        if footprint.is_identity:
            return None
        region = _dilate(layer.bbox, footprint.half, self.stack.shape)
        return region, reach_mask(layer.mask, footprint.support, region)

    def _blur_layer(self, layer, reach, theta_deg):
        k = make_kernel(self.family, layer.radius_px, theta_deg)
        if k.is_identity:
            top, bottom, left, right = layer.bbox
            color, coverage = layer.window(np.arange(top, bottom),
                                           np.arange(left, right))
            return layer.bbox, color, coverage
        region, inside = reach
        rows, cols = padded_indices(self.stack.shape, region, k.half)
        color, coverage = layer.window(rows, cols)
        planes = np.concatenate(
            [_as_channels(color), coverage[..., np.newaxis]], axis=2)
        blurred = correlate_valid(planes, k.weights,
                                  choose_method(k.side, self.method))
        blurred *= inside[..., np.newaxis]
        alpha = np.clip(blurred[..., -1], 0.0, 1.0)
        color = blurred[..., :-1]
        if self.image.ndim == 2:
            color = color[..., 0]
        return region, color, alpha

    def render(self, theta_deg=0.0):
        """Composite all layers at one kernel angle.
        arguments:
           theta_deg: Kernel angle in degrees.
        returns: Plane with the shape of the input image.
        """
        acc_color = np.zeros_like(self.image)
        acc_alpha = np.zeros(self.stack.shape, dtype=np.float64)
        for layer, reach in zip(self.stack, self._reach):
            (top, bottom, left, right), color, alpha = self._blur_layer(
                layer, reach, theta_deg)
            window = (slice(top, bottom), slice(left, right))
            keep = 1.0 - alpha
            acc_color[window] = color + _expand(keep, color) * acc_color[window]
            acc_alpha[window] = alpha + keep * acc_alpha[window]

        covered = acc_alpha > ALPHA_EPSILON
        output = self.image.copy()
        normalized = acc_color / _expand(np.where(covered, acc_alpha, 1.0),
                                         acc_color)
        output[covered] = normalized[covered]
        if self.stack.subject is not None:
            output[self.stack.subject] = self.image[self.stack.subject]
        return output


def _as_channels(plane):
    return plane if plane.ndim == 3 else plane[..., np.newaxis]


def _expand(mask, like):
    return mask[..., np.newaxis] if like.ndim == 3 else mask


def render_view(image, stack, theta_deg=0.0, family=DP, method=AUTO):
    """Render one view with the kernels of a family rotated to theta."""
    return LayerRenderer(image, stack, family, method).render(theta_deg)


def render_dp_pair(image, stack, orientation=HORIZONTAL, family=DP,
                   method=AUTO):
    """Render the two dual-pixel sub-aperture views.
    arguments:
       image: Linear-light image.
       stack: LayerStack built from the image.
       orientation: horizontal gives the left/right pair (0 and 180 degrees),
                    vertical the top/bottom pair (90 and 270 degrees).
       family: Kernel family, dp by default.
    returns: (left, right) or (top, bottom).
    """
    if orientation not in ORIENTATIONS:
        raise ValidationError(f'unknown sensor orientation {orientation!r}')
    renderer = LayerRenderer(image, stack, family, method)
    first, second = ORIENTATIONS[orientation]
    return renderer.render(first), renderer.render(second)


def render_bokeh(image, stack, family=DP, method=AUTO):
    """Synthetic shallow depth-of-field image, the mean of the 0 and 180
    degree views of a family. The disk family renders it directly.
    """
    renderer = LayerRenderer(image, stack, family, method)
    if family == DISK:
        return renderer.render(0.0)
    left, right = renderer.render(0.0), renderer.render(180.0)
    return (left + right) / 2


def render_views(image,
                 stack,
                 n_views=8,
                 family=DP,
                 workers=1,
                 progress=False,
                 method=AUTO):
    """Render n views with kernels rotated in steps of 360 / n degrees.
    arguments:
       image: Linear-light image.
       stack: LayerStack built from the image.
       n_views: Even number of views.
       family: dp or ramp.
       workers: Number of threads rendering views concurrently.
       progress: Show a progress bar.
    returns: ViewSet; its bokeh is the mean of views 0 and n / 2.
    """
    angles = view_angles(n_views)
    renderer = LayerRenderer(image, stack, family, method)
    logger.info('Rendering %d views with %s kernels over %d layers', n_views,
                family, len(stack))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            views = list(
                tqdm(pool.map(renderer.render, angles), total=n_views,
                     desc='views', disable=not progress))
    else:
        views = [
            renderer.render(theta)
            for theta in tqdm(angles, desc='views', disable=not progress)
        ]
    bokeh = (views[0] + views[n_views // 2]) / 2
    return ViewSet(views, bokeh, n_views, family)
