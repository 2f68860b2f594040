"""Seeded synthetic scenes for benchmarks and tests."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .optics.defocus import DefocusMap


@dataclass
class SyntheticScene:
    """Linear-light image with its depth description.
    arguments:
       image: H x W x 3 array in [0, 1].
       defocus: DefocusMap of the scene.
       depth: Normalized depth in [0, 1], larger is farther.
       mask: Subject mask (1 = subject) or None.
       dot: (x, y) of a bright background dot, if the scene has one.
    """
    image: np.ndarray = field(repr=False)
    defocus: DefocusMap = field(repr=False)
    depth: Optional[np.ndarray] = field(default=None, repr=False)
    mask: Optional[np.ndarray] = field(default=None, repr=False)
    dot: Optional[tuple] = None


def random_image(height, width, channels=3, seed=0):
    rng = np.random.default_rng(seed)
    shape = (height, width) if channels == 1 else (height, width, channels)
    return rng.random(shape)


def layered_scene(size, max_radius, n_layers, seed=0):
    """Random texture whose defocus steps through n_layers radii in horizontal
    bands, from max_radius at the top (far) down to 0 at the bottom.
    arguments:
       size: Side of the square image.
       max_radius: Largest blur radius in pixels.
       n_layers: Number of distinct radii.
       seed: Seed of the texture.
    returns: SyntheticScene
    """
    image = random_image(size, size, seed=seed)
    rows = np.arange(size, dtype=np.float64)
    steps = np.floor(rows * n_layers / size)
    if n_layers > 1:
        radii = max_radius * (1.0 - steps / (n_layers - 1))
    else:
        radii = np.full(size, float(max_radius))
    radius = np.repeat(radii[:, np.newaxis], size, axis=1)
    return SyntheticScene(image, DefocusMap(radius, max_radius_px=max_radius))


def portrait_scene(size=64, max_radius=6.0, seed=0):
    """Portrait-style asset: a sharp elliptical subject in front of a
    background whose depth ramps from the focal plane to the far end, plus
    one bright dot in the background on a dark surround.
    The subject is in focus and marked in the mask.
    returns: SyntheticScene with artistic depth (focus at 0, far at 1).
    """
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    image = 0.05 + 0.1 * rng.random((size, size, 3))

    depth = 0.3 + 0.7 * (x / (size - 1))
    subject = (((x - size * 0.25) / (size * 0.14))**2 +
               ((y - size * 0.55) / (size * 0.3))**2) <= 1.0
    depth[subject] = 0.0
    image[subject] = 0.2 + 0.6 * rng.random((int(subject.sum()), 3))

    dot = (int(size * 0.75), int(size * 0.4))
    image[dot[1], dot[0]] = 1.0
    # dark, flat surround so the dot's spread is easy to follow
    reach = 2 * int(np.ceil(max_radius)) + 2
    around = (np.abs(x - dot[0]) <= reach) & (np.abs(y - dot[1]) <= reach)
    image[around & ~((x == dot[0]) & (y == dot[1]))] = 0.0
    depth[around] = depth[dot[1], dot[0]]

    radius = max_radius * depth
    mask = subject.astype(np.float64)
    defocus = DefocusMap(np.where(subject, 0.0, radius),
                         max_radius_px=max_radius,
                         subject=subject)
    return SyntheticScene(image, defocus, depth, mask, dot)
