from .layering import (MAX_LAYERS, RADIUS_GRANULARITY_PX, DepthLayer,
                       LayerStack, layer_representatives, quantize_layers)
from .convolution import convolve
from .renderer import (HORIZONTAL, VERTICAL, ViewSet, LayerRenderer,
                       render_view, render_dp_pair, render_bokeh, render_views)
