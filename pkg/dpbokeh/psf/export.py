"""Debug export of kernels: plain-text grids, grayscale PNGs and a
matplotlib overview of a rotated kernel bank.
"""
import logging
from os import makedirs
from os.path import abspath, dirname, splitext

import imageio.v2 as imageio
import matplotlib
matplotlib.use('Agg')
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from ..errors import DofIOError

logger = logging.getLogger(__name__)


def kernel_to_text(k, precision=6):
    """Render a kernel as whitespace separated rows.
    arguments:
       k: Kernel to dump.
       precision: Number of decimals per weight.
    returns: String with a comment header line and one grid row per line.
    """
    header = '# family={} radius_px={:g} theta_deg={:g} side={}'.format(
        k.family, k.radius_px, k.theta_deg, k.side)
    rows = [
        ' '.join('{:.{p}f}'.format(w, p=precision) for w in row)
        for row in k.weights
    ]
    return '\n'.join([header] + rows) + '\n'


def kernel_to_image(k):
    """8-bit grayscale image of a kernel, scaled so the largest weight is white."""
    peak = k.weights.max()
    return np.round(k.weights / peak * 255.0).astype(np.uint8)


def save_kernel_png(k, save_path, scale=8):
    """Write a kernel as a grayscale PNG, each cell enlarged to scale x scale pixels."""
    image = kernel_to_image(k)
    image = np.kron(image, np.ones((scale, scale), dtype=np.uint8))
    try:
        imageio.imwrite(save_path, image)
    except (OSError, ValueError) as error:
        raise DofIOError(save_path, f'cannot write kernel image ({error})')
    return save_path


def plot_kernel_bank(bank, title=None, cmap='gray'):
    """Plot a row of kernels side by side.
    arguments:
       bank: List of kernels, e.g. from kernel_bank.
       title: Optional figure title.
       cmap: Colour map for the weights.
    returns: matplotlib figure
    """
    fig = Figure(figsize=(1.6 * len(bank), 2.0), dpi=150)
    for index, k in enumerate(bank):
        ax = fig.add_subplot(1, len(bank), index + 1)
        ax.imshow(k.weights, cmap=cmap, vmin=0, vmax=k.weights.max(),
                  interpolation='nearest')
        ax.set_title('{:g}°'.format(k.theta_deg), fontsize=8)
        ax.set_xticks([])
        ax.set_yticks([])
    if title:
        fig.suptitle(title, fontsize=9)
    return fig


def save_fig(fig, save_path):
    """Save a figure, the format follows the file extension."""
    makedirs(dirname(abspath(save_path)), exist_ok=True)
    FigureCanvasAgg(fig)
    try:
        fig.savefig(save_path, format=splitext(save_path)[1][1:],
                    bbox_inches='tight')
    except (OSError, ValueError) as error:
        raise DofIOError(save_path, f'cannot write figure ({error})')
    return save_path
