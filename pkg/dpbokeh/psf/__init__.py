from .kernels import (DISK, DP, RAMP, FAMILIES, DIRECTIONAL_FAMILIES, Kernel,
                      kernel_side, ramp_mask, square_extent, disk, dp_kernel,
                      ramp_psf, flip_horizontal, make_kernel,
                      view_angles, check_view_count, kernel_bank)
