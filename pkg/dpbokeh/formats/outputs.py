"""Writing of rendered results: the bokeh image, the view sequence, the
dual-pixel pair and the looping GIF of the views.
"""
import logging
from os import makedirs
from os.path import join

import numpy as np
from PIL import Image

from ..errors import DofIOError
from ..rendering.renderer import HORIZONTAL, VERTICAL
from .images import encode_8bit, save_image

logger = logging.getLogger(__name__)

BOKEH_NAME = 'bokeh.png'
GIF_NAME = 'motion.gif'
PAIR_NAMES = {HORIZONTAL: ('left.png', 'right.png'),
              VERTICAL: ('top.png', 'bottom.png')}


def view_name(index):
    return 'view_{:03d}.png'.format(index)


def gif_delay_cs(fps):
    """Frame delay of a GIF in centiseconds, floor(100 / fps), at least 1."""
    return max(1, int(100 // fps))


def _rgb(frame):
    if frame.ndim == 2:
        frame = np.repeat(frame[..., np.newaxis], 3, axis=2)
    return Image.fromarray(frame)


def write_gif(path, frames, palette_frame, fps):
    """Write an infinitely looping GIF89a.
    All frames share one 256 colour median-cut palette taken from palette_frame.
    Pillow merges identical consecutive frames into one frame holding their
    summed delay, so a still scene gives a single-frame GIF.
    arguments:
       path: Output file.
       frames: List of uint8 frames.
       palette_frame: uint8 frame the palette is computed from.
       fps: Playback rate.
    """
    palette = _rgb(palette_frame).quantize(colors=256,
                                           method=Image.Quantize.MEDIANCUT)
    images = [
        _rgb(frame).quantize(palette=palette, dither=Image.Dither.NONE)
        for frame in frames
    ]
    try:
        images[0].save(path,
                       save_all=True,
                       append_images=images[1:],
                       duration=gif_delay_cs(fps) * 10,
                       loop=0,
                       disposal=1,
                       optimize=False)
    except OSError as error:
        raise DofIOError(path, f'cannot write GIF ({error})')
    return path


def _prepare(output_dir):
    try:
        makedirs(output_dir, exist_ok=True)
    except OSError as error:
        raise DofIOError(output_dir, f'cannot create output directory ({error})')


def write_bokeh(bokeh, job):
    """Write bokeh.png into the job's output directory.
    returns: List with the written path.
    """
    _prepare(job.output)
    return [save_image(join(job.output, BOKEH_NAME), bokeh, job.linearize)]


def write_dp_pair(pair, job):
    """Write the two dual-pixel views (left/right or top/bottom).
    returns: List of written paths.
    """
    _prepare(job.output)
    names = PAIR_NAMES[job.orientation]
    return [
        save_image(join(job.output, name), plane, job.linearize)
        for name, plane in zip(names, pair)
    ]


def write_outputs(view_set, job):
    """Write bokeh.png, view_000.png ... and optionally motion.gif.
    Views are re-encoded to 8-bit sRGB when the job linearized its input.
    arguments:
       view_set: ViewSet to store.
       job: RenderJob giving the output directory, fps and gif flag.
    returns: Manifest of written paths, bokeh first then views in order.
    """
    _prepare(job.output)
    manifest = [save_image(join(job.output, BOKEH_NAME), view_set.bokeh,
                           job.linearize)]
    for index, view in enumerate(view_set.views):
        manifest.append(save_image(join(job.output, view_name(index)), view,
                                   job.linearize))
    if job.gif:
        frames = [encode_8bit(view, job.linearize) for view in view_set.frames()]
        manifest.append(
            write_gif(join(job.output, GIF_NAME), frames,
                      encode_8bit(view_set.bokeh, job.linearize), job.fps))
    logger.info('Wrote %d files to %s', len(manifest), job.output)
    return manifest
