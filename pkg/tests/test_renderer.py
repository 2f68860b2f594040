import numpy as np
import pytest

from dpbokeh.errors import RenderError, ValidationError
from dpbokeh.optics.defocus import DefocusMap
from dpbokeh.psf import DISK, RAMP, disk, dp_kernel, ramp_psf
from dpbokeh.rendering import (LayerStack, quantize_layers, render_bokeh,
                               render_dp_pair, render_view, render_views)
from dpbokeh.rendering.convolution import DIRECT, FFT, convolve
from dpbokeh.synthetic import layered_scene, random_image

from .helpers import constant_defocus, intensity_centroid


def stack_for(image, radii, max_layers=500):
    return quantize_layers(image, DefocusMap(radii), max_layers)


def patch_scene(size=128, seed=11):
    """Sharp texture with flat-coloured patches in front of the focal plane.
    Patches are farther apart than their blur reaches."""
    image = random_image(size, size, seed=seed)
    radii = np.zeros((size, size))
    patches = [((20, 40, 20, 40), -5.0, (0.9, 0.2, 0.1)),
               ((70, 100, 60, 95), -9.0, (0.1, 0.5, 0.8)),
               ((100, 120, 10, 30), -3.0, (0.6, 0.6, 0.2))]
    for (top, bottom, left, right), radius, colour in patches:
        image[top:bottom, left:right] = colour
        radii[top:bottom, left:right] = radius
    return image, radii


def test_zero_defocus_is_bit_identical(image64):
    stack = stack_for(image64, np.zeros((64, 64)))
    view_set = render_views(image64, stack, 8)
    for view in view_set.views:
        assert np.array_equal(view, image64)
    assert np.array_equal(view_set.bokeh, image64)
    left, right = render_dp_pair(image64, stack)
    assert np.array_equal(left, image64) and np.array_equal(right, image64)
    assert np.array_equal(render_bokeh(image64, stack), image64)


@pytest.mark.parametrize('theta', [0.0, 90.0])
def test_constant_defocus_collapses_to_convolution(image64, theta):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 3.0))
    view = render_view(image64, stack, theta)
    expected = convolve(image64, dp_kernel(3.0, theta))
    assert np.abs(view - expected).max() <= 1e-6


def test_dp_pair_of_constant_defocus(image64):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 2.0))
    left, right = render_dp_pair(image64, stack)
    assert np.abs(left - convolve(image64, dp_kernel(2.0, 0.0))).max() <= 1e-6
    assert np.abs(right -
                  convolve(image64, dp_kernel(2.0, 180.0))).max() <= 1e-6
    top, bottom = render_dp_pair(image64, stack, 'vertical')
    assert np.abs(top - convolve(image64, dp_kernel(2.0, 90.0))).max() <= 1e-6
    assert np.abs(bottom -
                  convolve(image64, dp_kernel(2.0, 270.0))).max() <= 1e-6


def test_bokeh_of_constant_defocus_is_a_disk_blur(image64):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 2.0))
    expected = convolve(image64, disk(2.0))
    assert np.abs(render_bokeh(image64, stack) - expected).max() <= 1e-6
    assert np.abs(render_bokeh(image64, stack, DISK) -
                  expected).max() <= 1e-6


def test_ramp_family_views(image64):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 4.0))
    view_set = render_views(image64, stack, 4, RAMP)
    expected = convolve(image64, ramp_psf(4.0, 90.0))
    assert np.abs(view_set.views[1] - expected).max() <= 1e-6
    assert view_set.psf_family == RAMP


def test_mirrored_inputs_swap_the_pair(rng):
    image = random_image(40, 48, seed=9)
    radii = np.round(rng.uniform(-4.0, 6.0, size=(40, 48)))
    left, right = render_dp_pair(image, stack_for(image, radii))
    mirror = np.ascontiguousarray(image[:, ::-1])
    m_left, m_right = render_dp_pair(
        mirror, stack_for(mirror, np.ascontiguousarray(radii[:, ::-1])))
    assert np.abs(m_left[:, ::-1] - right).max() <= 1e-6
    assert np.abs(m_right[:, ::-1] - left).max() <= 1e-6


def test_opposite_views_average_to_bokeh():
    image, radii = patch_scene()
    stack = stack_for(image, radii)
    view_set = render_views(image, stack, 8)
    bokeh = render_bokeh(image, stack)
    assert np.array_equal(view_set.bokeh, bokeh)
    for k in range(8):
        pair = (view_set.views[k] + view_set.views[view_set.opposite(k)]) / 2
        assert np.abs(pair - bokeh).max() <= 1e-6
    # patches really are blurred over their sharp surroundings
    assert np.abs(bokeh - image).max() > 0.05


def test_constant_image_stays_constant(rng):
    image = np.full((36, 36, 3), 0.25)
    radii = rng.uniform(-7.0, 7.0, size=(36, 36))
    for view in render_views(image, stack_for(image, radii, 16), 4).views:
        np.testing.assert_allclose(view, 0.25, atol=1e-12)


def test_subject_pixels_are_untouched(portrait):
    stack = quantize_layers(portrait.image, portrait.defocus)
    view_set = render_views(portrait.image, stack, 8)
    subject = portrait.defocus.subject
    for plane in view_set.views + [view_set.bokeh]:
        assert np.array_equal(plane[subject], portrait.image[subject])
    background = ~subject
    assert not np.allclose(view_set.bokeh[background],
                           portrait.image[background])


def test_background_dot_circles_its_position(portrait):
    stack = quantize_layers(portrait.image, portrait.defocus)
    view_set = render_views(portrait.image, stack, 8)
    x0, y0 = portrait.dot
    radius = next(layer.radius_px for layer in stack if layer.mask[y0, x0])
    half = int(np.ceil(radius)) + 1
    centroids = np.array([
        intensity_centroid(view, portrait.dot, half)
        for view in view_set.views
    ])
    for (cx, cy), theta in zip(centroids, view_set.angles):
        kx, ky = dp_kernel(float(radius), theta).centroid
        assert cx == pytest.approx(x0 - kx, abs=1e-6)
        assert cy == pytest.approx(y0 - ky, abs=1e-6)
    offsets = centroids - np.array([x0, y0])
    assert np.hypot(*offsets.mean(axis=0)) <= 0.5
    distances = np.hypot(offsets[:, 0], offsets[:, 1])
    assert distances.min() > 0.5
    np.testing.assert_allclose(distances, distances[0], atol=1e-6)
    # one full cycle of frames comes back to the first view
    assert view_set.frames(2)[8] is view_set.views[0]


def test_parallel_views_are_bit_identical():
    scene = layered_scene(48, 6.0, 5, seed=2)
    stack = quantize_layers(scene.image, scene.defocus)
    serial = render_views(scene.image, stack, 8)
    threaded = render_views(scene.image, stack, 8, workers=4)
    for a, b in zip(serial.views, threaded.views):
        assert np.array_equal(a, b)


def test_convolution_methods_agree():
    scene = layered_scene(40, 7.0, 4, seed=6)
    stack = quantize_layers(scene.image, scene.defocus)
    direct = render_view(scene.image, stack, 45.0, method=DIRECT)
    fft = render_view(scene.image, stack, 45.0, method=FFT)
    np.testing.assert_allclose(direct, fft, atol=1e-9)


def test_view_set_helpers(image64):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 1.0))
    view_set = render_views(image64, stack, 6)
    assert view_set.angles == [0.0, 60.0, 120.0, 180.0, 240.0, 300.0]
    assert view_set.opposite(1) == 4 and view_set.opposite(5) == 2
    assert len(view_set.frames(3)) == 18


def test_renderer_rejects_bad_input(image64):
    stack = quantize_layers(image64, constant_defocus(image64.shape, 1.0))
    with pytest.raises(RenderError):
        render_view(image64, LayerStack([], (64, 64)))
    with pytest.raises(ValidationError):
        render_view(image64[:32], stack)
    with pytest.raises(ValidationError):
        render_view(image64, stack, family='gauss')
    with pytest.raises(ValidationError):
        render_dp_pair(image64, stack, 'diagonal')
    with pytest.raises(ValidationError):
        render_views(image64, stack, 5)
