"""Loading and saving of colour images and segmentation masks.

Images are decoded with imageio, normalized to [0, 1] and, unless told
otherwise, converted from the sRGB transfer curve to linear light.
"""
import logging
from dataclasses import dataclass
from os import makedirs
from os.path import abspath, dirname, exists, splitext

import imageio.v2 as imageio
import numpy as np

from ..errors import DofIOError, ValidationError

logger = logging.getLogger(__name__)

IMAGE_EXTENSIONS = ('.png', '.ppm', '.pgm', '.pnm')
SRGB = 'srgb'
LINEAR = 'linear'

MASK_THRESHOLD = 128


def srgb_to_linear(values):
    """Inverse sRGB transfer function on values in [0, 1]."""
    values = np.asarray(values, dtype=np.float64)
    return np.where(values <= 0.04045, values / 12.92,
                    ((values + 0.055) / 1.055)**2.4)


def linear_to_srgb(values):
    """sRGB transfer function on linear values in [0, 1]."""
    values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
    return np.where(values <= 0.0031308, values * 12.92,
                    1.055 * values**(1 / 2.4) - 0.055)


@dataclass
class ImagePlane:
    """Decoded image.
    arguments:
       values: H x W (one channel) or H x W x 3 array in [0, 1].
       colorspace: Encoding of the values, linear or srgb.
       source_colorspace: Encoding found in the file.
       bit_depth: Bits per channel of the file.
    """
    values: np.ndarray
    colorspace: str = LINEAR
    source_colorspace: str = SRGB
    bit_depth: int = 8

    @property
    def height(self):
        return self.values.shape[0]

    @property
    def width(self):
        return self.values.shape[1]

    @property
    def channels(self):
        return 1 if self.values.ndim == 2 else self.values.shape[2]

    @property
    def shape(self):
        return self.values.shape


def _read(path, extensions=IMAGE_EXTENSIONS):
    if not exists(path):
        raise DofIOError(path, 'file does not exist')
    extension = splitext(path)[1].lower()
    if extension not in extensions:
        raise DofIOError(
            path, 'unsupported format {!r}, expected one of {}'.format(
                extension, ', '.join(extensions)))
    try:
        return np.asarray(imageio.imread(path))
    except (OSError, ValueError, SyntaxError) as error:
        raise DofIOError(path, f'cannot decode image ({error})')


def _normalize(raw, path):
    if raw.dtype == np.uint8:
        return raw.astype(np.float64) / 255.0, 8
    # 16-bit grayscale PNGs may decode as 32-bit integers
    if raw.dtype == np.uint16 or (raw.dtype == np.int32 and raw.min() >= 0
                                  and raw.max() <= 65535):
        return raw.astype(np.float64) / 65535.0, 16
    raise DofIOError(path, f'unsupported sample type {raw.dtype}')


def _drop_alpha(values):
    if values.ndim == 3 and values.shape[2] in (2, 4):
        values = values[..., :-1]
    if values.ndim == 3 and values.shape[2] == 1:
        values = values[..., 0]
    if values.ndim == 3 and values.shape[2] != 3:
        raise ValidationError(f'unsupported channel count {values.shape[2]}')
    return values


def load_image(path, linearize=True):
    """Load an 8/16-bit PNG or binary PPM/PGM image.
    arguments:
       path: Image file.
       linearize: Convert from sRGB to linear light.
    returns: ImagePlane with finite values in [0, 1].
    """
    values, bit_depth = _normalize(_read(path), path)
    try:
        values = _drop_alpha(values)
    except ValidationError as error:
        raise DofIOError(path, str(error))
    if linearize:
        values = srgb_to_linear(values)
    logger.info('Loaded %s (%dx%d, %d bit)', path, values.shape[1],
                values.shape[0], bit_depth)
    return ImagePlane(values, LINEAR if linearize else SRGB, SRGB, bit_depth)


def load_mask(path):
    """Load an 8-bit grayscale segmentation mask.
    Values >= 128 belong to the subject.
    returns: H x W float array of zeros and ones.
    """
    raw = _read(path, ('.png', ))
    if raw.dtype != np.uint8:
        raise DofIOError(path, f'mask must be 8 bit, got {raw.dtype}')
    if raw.ndim == 3:
        raw = raw[..., 0]
    return (raw >= MASK_THRESHOLD).astype(np.float64)


def encode_8bit(values, to_srgb=True):
    """Quantize a [0, 1] plane to uint8, optionally sRGB encoding it first."""
    values = linear_to_srgb(values) if to_srgb else np.clip(values, 0.0, 1.0)
    return np.round(values * 255.0).astype(np.uint8)


def save_image(path, values, to_srgb=True):
    """Write a plane as an 8-bit PNG (or PPM/PGM by extension).
    returns: The written path.
    """
    try:
        makedirs(dirname(abspath(path)), exist_ok=True)
        imageio.imwrite(path, encode_8bit(values, to_srgb))
    except (OSError, ValueError) as error:
        raise DofIOError(path, f'cannot write image ({error})')
    return path
