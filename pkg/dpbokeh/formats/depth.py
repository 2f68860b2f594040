"""Depth map files: 16-bit PNG for normalized (artistic) depth and PFM for
metric depth in mm.
"""
import logging
import re
from os import makedirs
from os.path import abspath, dirname, exists, splitext

import imageio.v2 as imageio
import numpy as np

from ..errors import DofIOError, ValidationError
from ..optics.defocus import ARTISTIC, PHYSICAL, DepthMap

logger = logging.getLogger(__name__)

_PFM_HEADER = re.compile(rb'^(PF|Pf)\s+(\d+)\s+(\d+)\s+([-+0-9.eE]+)\s')


def read_pfm(path):
    """Read a PFM file.
    The sign of the scale field gives the byte order, negative meaning
    little endian. Rows are stored bottom to top.
    arguments:
       path: PFM file.
    returns: H x W (Pf) or H x W x 3 (PF) float64 array, top row first.
    """
    try:
        with open(path, 'rb') as pfm:
            data = pfm.read()
    except OSError as error:
        raise DofIOError(path, f'cannot read file ({error})')
    match = _PFM_HEADER.match(data)
    if match is None:
        raise DofIOError(path, 'not a PFM file (bad header)')
    kind, width, height, scale = match.groups()
    width, height, scale = int(width), int(height), float(scale)
    channels = 3 if kind == b'PF' else 1
    dtype = '<f4' if scale < 0 else '>f4'
    count = width * height * channels
    payload = data[match.end():]
    if len(payload) < 4 * count:
        raise DofIOError(path, 'truncated PFM payload')
    values = np.frombuffer(payload, dtype=dtype, count=count)
    values = values.reshape((height, width, channels) if channels == 3 else
                            (height, width))
    return np.flipud(values).astype(np.float64)


def write_pfm(path, values):
    """Write a single-channel float grid as a little-endian PFM."""
    values = np.asarray(values, dtype='<f4')
    if values.ndim != 2:
        raise ValidationError('write_pfm expects a 2D grid')
    height, width = values.shape
    try:
        makedirs(dirname(abspath(path)), exist_ok=True)
        with open(path, 'wb') as pfm:
            pfm.write(b'Pf\n%d %d\n-1.0\n' % (width, height))
            pfm.write(np.flipud(values).tobytes())
    except OSError as error:
        raise DofIOError(path, f'cannot write file ({error})')
    return path


def write_depth_png(path, values):
    """Write normalized depth in [0, 1] as a 16-bit grayscale PNG."""
    values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
    try:
        makedirs(dirname(abspath(path)), exist_ok=True)
        imageio.imwrite(path, np.round(values * 65535.0).astype(np.uint16))
    except (OSError, ValueError) as error:
        raise DofIOError(path, f'cannot write depth image ({error})')
    return path


def load_depth(path, mode):
    """Load a depth map.
    arguments:
       path: 16-bit grayscale PNG (artistic mode) or PFM in mm (physical mode).
       mode: artistic or physical.
    returns: Validated DepthMap.
    """
    if not exists(path):
        raise DofIOError(path, 'file does not exist')
    extension = splitext(path)[1].lower()
    if mode == ARTISTIC:
        if extension != '.png':
            raise ValidationError(
                f'{path}: artistic depth must be a 16-bit PNG, got {extension!r}')
        try:
            raw = np.asarray(imageio.imread(path))
        except (OSError, ValueError, SyntaxError) as error:
            raise DofIOError(path, f'cannot decode depth image ({error})')
        if raw.dtype == np.int32 and raw.min() >= 0 and raw.max() <= 65535:
            raw = raw.astype(np.uint16)
        if raw.dtype != np.uint16:
            raise ValidationError(
                f'{path}: artistic depth must be 16 bit, got {raw.dtype}')
        if raw.ndim == 3:
            raw = raw[..., 0]
        values = raw.astype(np.float64) / 65535.0
    elif mode == PHYSICAL:
        if extension != '.pfm':
            raise ValidationError(
                f'{path}: metric depth must be a PFM file, got {extension!r}')
        values = read_pfm(path)
        if values.ndim == 3:
            raise ValidationError(f'{path}: metric depth must have one channel')
    else:
        raise ValidationError(f'unknown depth mode {mode!r}')
    try:
        depth = DepthMap(values, mode)
    except ValidationError as error:
        raise ValidationError(f'{path}: {error}')
    logger.info('Loaded %s depth %s (%dx%d)', mode, path, depth.width,
                depth.height)
    return depth
