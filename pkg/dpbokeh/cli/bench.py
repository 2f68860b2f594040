"""Timing of the layered renderer on seeded synthetic scenes."""
import logging
import time
from itertools import product

import pandas as pd
from tqdm import tqdm

from ..psf.kernels import DP
from ..rendering.layering import quantize_layers
from ..rendering.renderer import render_views
from ..synthetic import layered_scene

logger = logging.getLogger(__name__)

COLUMNS = ['size', 'radius', 'layers', 'views', 'psf', 'quantize_ms',
           'render_ms', 'ms_per_view']


def time_configuration(size, radius, n_layers, n_views, family=DP, seed=0,
                       repeat=1, workers=1):
    """Time one configuration, keeping the fastest of `repeat` runs.
    returns: dict with one row of the bench table.
    """
    scene = layered_scene(size, radius, n_layers, seed=seed)
    best_quantize = best_render = float('inf')
    for _ in range(repeat):
        start = time.perf_counter()
        stack = quantize_layers(scene.image, scene.defocus)
        quantized = time.perf_counter()
        render_views(scene.image, stack, n_views, family, workers=workers)
        done = time.perf_counter()
        best_quantize = min(best_quantize, quantized - start)
        best_render = min(best_render, done - quantized)
    return {
        'size': size,
        'radius': radius,
        'layers': len(stack),
        'views': n_views,
        'psf': family,
        'quantize_ms': round(best_quantize * 1000, 3),
        'render_ms': round(best_render * 1000, 3),
        'ms_per_view': round(best_render * 1000 / n_views, 3),
    }


def run_bench(sizes, radii, layer_counts, n_views=8, family=DP, seed=0,
              repeat=1, workers=1, progress=False):
    """Time every (size, radius, layer count) combination.
    arguments:
       sizes: Image sides in pixels.
       radii: Maximum blur radii in pixels.
       layer_counts: Numbers of distinct radii in the scene.
       n_views: Views rendered per configuration.
       family: dp or ramp.
       seed: Texture seed, fixed so workloads repeat exactly.
       repeat: Runs per configuration (fastest is kept).
    returns: pandas DataFrame with one row per configuration.
    """
    rows = []
    configurations = list(product(sizes, radii, layer_counts))
    for size, radius, n_layers in tqdm(configurations, desc='bench',
                                       disable=not progress):
        row = time_configuration(size, radius, n_layers, n_views, family,
                                 seed, repeat, workers)
        logger.info('size=%d radius=%g layers=%d: %.1f ms', size, radius,
                    row['layers'], row['render_ms'])
        rows.append(row)
    return pd.DataFrame(rows, columns=COLUMNS)
