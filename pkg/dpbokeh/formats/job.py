"""Description of one rendering job: input paths, depth interpretation,
camera or artistic parameters, view and output settings.
"""
from dataclasses import dataclass
from os.path import exists
from typing import Optional

from ..errors import DofIOError, ValidationError
from ..optics.defocus import (ARTISTIC, DEFAULT_MAX_RADIUS_PX, DEPTH_MODES,
                              PHYSICAL, ArtisticParams)
from ..optics.thin_lens import CameraParams
from ..psf.kernels import DIRECTIONAL_FAMILIES, DP, check_view_count
from ..rendering.layering import MAX_LAYERS
from ..rendering.renderer import HORIZONTAL, ORIENTATIONS


@dataclass
class RenderJob:
    image: Optional[str] = None
    depth: Optional[str] = None
    mask: Optional[str] = None
    mode: str = ARTISTIC
    focal_length: Optional[float] = None
    f_number: Optional[float] = None
    focus_distance: Optional[float] = None
    pixels_per_mm: float = 1.0
    focus_disparity: float = 0.5
    invert_depth: bool = False
    max_radius: float = DEFAULT_MAX_RADIUS_PX
    max_layers: int = MAX_LAYERS
    views: int = 8
    psf: str = DP
    orientation: str = HORIZONTAL
    output: str = '.'
    fps: float = 8.0
    gif: bool = False
    linearize: bool = True
    workers: int = 1

    def lens(self):
        """CameraParams (physical mode) or ArtisticParams (artistic mode)."""
        if self.mode == PHYSICAL:
            missing = [
                name for name in ('focal_length', 'f_number', 'focus_distance')
                if getattr(self, name) is None
            ]
            if missing:
                raise ValidationError(
                    'physical mode needs {}'.format(', '.join(
                        '--' + name.replace('_', '-') for name in missing)))
            return CameraParams(self.focal_length, self.f_number,
                                self.focus_distance, self.pixels_per_mm)
        return ArtisticParams(self.focus_disparity, self.invert_depth)

    def validate(self, check_files=True, need_views=False):
        """Check value ranges and, optionally, that the inputs exist.
        Raises ValidationError for bad values and DofIOError for missing files.
        """
        if self.mode not in DEPTH_MODES:
            raise ValidationError(
                f'mode must be one of {", ".join(DEPTH_MODES)}, got {self.mode!r}')
        if self.psf not in DIRECTIONAL_FAMILIES:
            raise ValidationError(
                f'psf must be one of {", ".join(DIRECTIONAL_FAMILIES)}, got {self.psf!r}')
        if self.orientation not in ORIENTATIONS:
            raise ValidationError(f'unknown orientation {self.orientation!r}')
        if not self.max_radius >= 0:
            raise ValidationError(f'max radius must be >= 0, got {self.max_radius}')
        if self.max_layers < 1:
            raise ValidationError(f'max layers must be >= 1, got {self.max_layers}')
        if not self.fps > 0:
            raise ValidationError(f'fps must be > 0, got {self.fps}')
        if self.workers < 1:
            raise ValidationError(f'workers must be >= 1, got {self.workers}')
        if need_views:
            check_view_count(self.views)
        self.lens()
        if check_files:
            for name in ('image', 'depth'):
                if getattr(self, name) is None:
                    raise ValidationError(f'missing --{name}')
            for name in ('image', 'depth', 'mask'):
                path = getattr(self, name)
                if path is not None and not exists(path):
                    raise DofIOError(path, f'{name} file does not exist')
        return self
