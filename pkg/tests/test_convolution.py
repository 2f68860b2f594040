import numpy as np
import pytest
from scipy import ndimage

from dpbokeh.errors import ValidationError
from dpbokeh.psf import disk, dp_kernel, ramp_psf
from dpbokeh.rendering.convolution import (DIRECT, FFT, choose_method,
                                           convolve, reach_mask)
from dpbokeh.synthetic import random_image


def test_identity_kernel_returns_a_copy(image64):
    out = convolve(image64, disk(0.0))
    assert np.array_equal(out, image64)
    assert out is not image64


@pytest.mark.parametrize('method', [DIRECT, FFT])
@pytest.mark.parametrize('k', [disk(1.0), dp_kernel(4.0, 45.0),
                               ramp_psf(7.0, 300.0)])
def test_constant_plane_is_a_fixed_point(method, k):
    plane = np.full((20, 17, 3), 0.5)
    np.testing.assert_allclose(convolve(plane, k, method), 0.5, atol=1e-12)


def test_single_impulse_spreads_into_the_disk():
    plane = np.zeros((3, 3))
    plane[1, 1] = 1.0
    np.testing.assert_allclose(convolve(plane, disk(1.0)),
                               [[0, 0.2, 0], [0.2, 0.2, 0.2], [0, 0.2, 0]],
                               atol=1e-15)


def test_gather_orientation():
    # out(p) = sum_o K[o] in(p + o): an impulse lands on the mirrored offsets
    plane = np.zeros((7, 7))
    plane[3, 3] = 1.0
    out = convolve(plane, dp_kernel(1.0, 0.0), DIRECT)
    assert out[3, 4] == pytest.approx(0.3)
    assert out[3, 2] == pytest.approx(0.1)


@pytest.mark.parametrize('k', [dp_kernel(6.0, 30.0), ramp_psf(-5.0, 90.0)])
def test_direct_and_fft_agree(k):
    plane = random_image(40, 33, seed=4)
    np.testing.assert_allclose(convolve(plane, k, DIRECT),
                               convolve(plane, k, FFT), atol=1e-10)


def test_region_matches_full_plane(image64):
    k = dp_kernel(3.0, 135.0)
    full = convolve(image64, k)
    region = (5, 30, 40, 64)
    np.testing.assert_allclose(convolve(image64, k, region=region),
                               full[5:30, 40:64], atol=1e-12)


def test_grayscale_planes():
    plane = random_image(16, 16, channels=1, seed=8)
    out = convolve(plane, disk(2.0))
    assert out.shape == (16, 16)


def test_choose_method():
    assert choose_method(3) == DIRECT
    assert choose_method(11) == FFT
    assert choose_method(51, DIRECT) == DIRECT
    with pytest.raises(ValidationError):
        choose_method(3, 'winograd')


def test_reach_mask_is_a_dilation():
    mask = np.zeros((30, 30), dtype=bool)
    mask[10:14, 8:20] = True
    mask[20, 22] = True
    footprint = disk(4.0).support
    expected = ndimage.binary_dilation(mask, structure=footprint)
    assert np.array_equal(reach_mask(mask, footprint, (0, 30, 0, 30)),
                          expected)
    assert np.array_equal(reach_mask(mask, footprint, (5, 25, 2, 28)),
                          expected[5:25, 2:28])
