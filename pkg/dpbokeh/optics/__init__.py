from .thin_lens import CameraParams, image_distance, aperture_diameter, coc_radius_mm
from .defocus import (ARTISTIC, PHYSICAL, DEPTH_MODES, DEFAULT_MAX_RADIUS_PX,
                      ArtisticParams, DepthMap, DefocusMap, defocus_map)
