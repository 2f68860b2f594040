from .images import (ImagePlane, load_image, load_mask, save_image,
                     srgb_to_linear, linear_to_srgb, encode_8bit)
from .depth import load_depth, read_pfm, write_pfm, write_depth_png
from .job import RenderJob
from .outputs import (write_outputs, write_bokeh, write_dp_pair, write_gif,
                      gif_delay_cs, view_name)
