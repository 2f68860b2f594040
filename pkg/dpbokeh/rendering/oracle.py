"""Brute-force gather renderer for validating the layered renderer on
tiny scenes.

Every source pixel q spreads its value with its own kernel; output pixel p
collects sum_q w_q(p) image(q) / sum_q w_q(p), where w_q(p) = K_q[q - p]
in the gather orientation of the kernels. There is no layering and no
occlusion, so agreement with the layered renderer is only expected where
occlusion cannot matter.
"""
import numpy as np

from ..errors import ValidationError
from ..psf.kernels import DP, make_kernel

MAX_ORACLE_SIDE = 64


def gather_render(image, defocus, theta_deg=0.0, family=DP):
    """Render a view by accumulating every source pixel's kernel.
    arguments:
       image: H x W or H x W x C array, at most 64 x 64.
       defocus: DefocusMap of the same size.
       theta_deg: Kernel angle.
       family: dp, ramp or disk.
    returns: Plane with the shape of the image.
    """
    image = np.asarray(image, dtype=np.float64)
    height, width = image.shape[:2]
    if height > MAX_ORACLE_SIDE or width > MAX_ORACLE_SIDE:
        raise ValidationError(
            'gather oracle is limited to {0}x{0} images, got {1}x{2}'.format(
                MAX_ORACLE_SIDE, height, width))
    if defocus.shape != (height, width):
        raise ValidationError('defocus map does not match the image')

    channels = image.reshape(height, width, -1)
    radii = defocus.values
    margin = max(make_kernel(family, r, theta_deg).half
                 for r in np.unique(radii))
    numerator = np.zeros((height + 2 * margin, width + 2 * margin,
                          channels.shape[2]))
    denominator = np.zeros((height + 2 * margin, width + 2 * margin))

    for y in range(height):
        for x in range(width):
            k = make_kernel(family, radii[y, x], theta_deg)
            h = k.half
            # q places K[q - p] on p, i.e. the kernel reversed around q
            weights = k.weights[::-1, ::-1]
            rows = slice(y + margin - h, y + margin + h + 1)
            cols = slice(x + margin - h, x + margin + h + 1)
            denominator[rows, cols] += weights
            numerator[rows, cols] += weights[..., np.newaxis] * channels[y, x]

    numerator = numerator[margin:margin + height, margin:margin + width]
    denominator = denominator[margin:margin + height, margin:margin + width]
    covered = denominator > 0
    output = np.zeros_like(channels)
    output[covered] = numerator[covered] / denominator[covered][:, np.newaxis]
    return output.reshape(image.shape)
