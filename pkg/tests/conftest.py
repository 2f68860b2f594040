import numpy as np
import pytest

from dpbokeh.synthetic import portrait_scene, random_image


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def image64():
    return random_image(64, 64, seed=7)


@pytest.fixture
def portrait():
    return portrait_scene(size=64, max_radius=6.0, seed=3)


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False,
                     help='Also run full-size end-to-end tests.')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full-size end-to-end run')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--run-slow'):
        return
    skip = pytest.mark.skip(reason='needs --run-slow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)
