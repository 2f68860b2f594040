"""Command-line frontend.

Subcommands:
   bokeh    synthetic shallow depth-of-field image
   dp-pair  left/right (or top/bottom) dual-pixel views
   nimat    n rotated-kernel views, bokeh and optional looping GIF
   bench    render timings on seeded synthetic scenes
   kernels  debug export of a rotated kernel bank

Exit status: 0 success, 1 validation error, 2 I/O error, 3 internal error.
"""
import logging
import sys
from argparse import SUPPRESS, ArgumentParser
from os import makedirs
from os.path import join

from ..errors import DofIOError, ValidationError
from ..formats.depth import load_depth
from ..formats.images import load_image, load_mask
from ..formats.outputs import write_bokeh, write_dp_pair, write_outputs
from ..optics.defocus import DEPTH_MODES, defocus_map
from ..psf.export import (kernel_to_text, plot_kernel_bank, save_fig,
                          save_kernel_png)
from ..psf.kernels import DIRECTIONAL_FAMILIES, kernel_bank
from ..rendering.layering import quantize_layers
from ..rendering.renderer import (ORIENTATIONS, render_bokeh, render_dp_pair,
                                  render_views)
from .bench import run_bench
from .config import build_job, parse_bool

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3


def _job_arguments():
    """Parent parser with every RenderJob flag. Defaults are SUPPRESSed so
    only explicitly given flags override the config file.
    """
    parser = ArgumentParser(add_help=False, argument_default=SUPPRESS)
    group = parser.add_argument_group('job')
    group.add_argument('--config', help='File of `key = value` job settings.')
    group.add_argument('--image', help='All-in-focus image (PNG, PPM or PGM).')
    group.add_argument(
        '--depth',
        help='Depth map: 16-bit PNG (artistic) or PFM in mm (physical).')
    group.add_argument('--mask',
                       help='Segmentation mask, 8-bit PNG; >= 128 stays sharp.')
    group.add_argument('--mode',
                       choices=DEPTH_MODES,
                       help='Depth interpretation (default: artistic).')
    group.add_argument('--focal-length', type=float,
                       help='Focal length f in mm (physical mode).')
    group.add_argument('--f-number', type=float,
                       help='Aperture f-number F (physical mode).')
    group.add_argument('--focus-distance', type=float,
                       help='Focus distance s in mm (physical mode).')
    group.add_argument('--pixels-per-mm', type=float,
                       help='Sensor scale converting CoC mm to pixels (default: 1).')
    group.add_argument('--focus-disparity', type=float,
                       help='Normalized depth in focus (artistic mode, default: 0.5).')
    group.add_argument('--invert-depth', type=parse_bool, nargs='?', const=True,
                       help='Treat larger artistic values as nearer (default: off).')
    group.add_argument('--max-radius', type=float,
                       help='Blur radius cap in pixels (default: 25).')
    group.add_argument('--max-layers', type=int,
                       help='Maximum number of depth layers (default: 500).')
    group.add_argument('--output', '-o',
                       help='Output directory (default: current directory).')
    group.add_argument('--linearize', type=parse_bool, nargs='?', const=True,
                       help='Blur in linear light, re-encode to sRGB (default: on).')
    group.add_argument('--no-linearize', dest='linearize', action='store_const',
                       const=False, help='Blur the stored values directly.')
    group.add_argument('--workers', type=int,
                       help='Threads rendering views in parallel (default: 1).')
    return parser


def _verbosity():
    parser = ArgumentParser(add_help=False)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress and info, -vv for debug output.')
    return parser


def build_parser():
    parser = ArgumentParser(
        prog='dpbokeh',
        description='Synthetic bokeh, dual-pixel views and rotated-kernel '
        'image motion from an all-in-focus image and its depth map.')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    job, verbose = _job_arguments(), _verbosity()

    bokeh = commands.add_parser('bokeh', parents=[job, verbose],
                                help='Render bokeh.png.')
    bokeh.set_defaults(handler=cmd_bokeh)

    pair = commands.add_parser('dp-pair', parents=[job, verbose],
                               help='Render the dual-pixel view pair.')
    pair.add_argument('--orientation', choices=sorted(ORIENTATIONS),
                      default=SUPPRESS,
                      help='horizontal: left/right, vertical: top/bottom '
                      '(default: horizontal).')
    pair.set_defaults(handler=cmd_dp_pair)

    nimat = commands.add_parser('nimat', parents=[job, verbose],
                                help='Render rotated-kernel views and bokeh.')
    nimat.add_argument('--views', type=int, default=SUPPRESS,
                       help='Even number of views (default: 8).')
    nimat.add_argument('--psf', choices=DIRECTIONAL_FAMILIES, default=SUPPRESS,
                       help='Kernel family (default: dp).')
    nimat.add_argument('--fps', type=float, default=SUPPRESS,
                       help='GIF playback rate (default: 8).')
    nimat.add_argument('--gif', type=parse_bool, nargs='?', const=True,
                       default=SUPPRESS, help='Also write motion.gif.')
    nimat.set_defaults(handler=cmd_nimat)

    bench = commands.add_parser('bench', parents=[verbose],
                                help='Time the renderer on synthetic scenes.')
    bench.add_argument('--sizes', type=int, nargs='+', default=[256],
                       help='Image sides (default: 256).')
    bench.add_argument('--radii', type=float, nargs='+', default=[8.0],
                       help='Maximum blur radii (default: 8).')
    bench.add_argument('--layers', type=int, nargs='+', default=[8],
                       help='Distinct radii per scene (default: 8).')
    bench.add_argument('--views', type=int, default=8,
                       help='Views per configuration (default: 8).')
    bench.add_argument('--psf', choices=DIRECTIONAL_FAMILIES, default='dp',
                       help='Kernel family (default: dp).')
    bench.add_argument('--seed', type=int, default=0,
                       help='Scene seed (default: 0).')
    bench.add_argument('--repeat', type=int, default=1,
                       help='Runs per configuration, fastest kept (default: 1).')
    bench.add_argument('--workers', type=int, default=1,
                       help='Threads per render (default: 1).')
    bench.add_argument('--csv', default=None, help='Also write the table as csv.')
    bench.set_defaults(handler=cmd_bench)

    kernels = commands.add_parser('kernels', parents=[verbose],
                                  help='Export a rotated kernel bank.')
    kernels.add_argument('--radius', type=float, default=8.0,
                         help='Signed radius in pixels (default: 8).')
    kernels.add_argument('--views', type=int, default=8,
                         help='Even number of kernels (default: 8).')
    kernels.add_argument('--psf', choices=DIRECTIONAL_FAMILIES, default='dp',
                         help='Kernel family (default: dp).')
    kernels.add_argument('--output', '-o', default='.',
                         help='Output directory (default: current directory).')
    kernels.set_defaults(handler=cmd_kernels)
    return parser


def _job(args, need_views=False):
    flags = {
        key: value
        for key, value in vars(args).items()
        if key not in ('command', 'handler', 'verbose', 'config')
    }
    job = build_job(flags, getattr(args, 'config', None))
    return job.validate(need_views=need_views)


def prepare(job):
    """Load the inputs of a job and decompose the image into layers.
    returns: (image values, LayerStack)
    """
    image = load_image(job.image, linearize=job.linearize)
    depth = load_depth(job.depth, job.mode)
    mask = load_mask(job.mask) if job.mask is not None else None
    if depth.shape != image.shape[:2]:
        raise ValidationError(
            'depth map {} is {}x{} but image {} is {}x{}'.format(
                job.depth, depth.width, depth.height, job.image, image.width,
                image.height))
    if mask is not None and mask.shape != image.shape[:2]:
        raise ValidationError('mask {} is {}x{} but image is {}x{}'.format(
            job.mask, mask.shape[1], mask.shape[0], image.width, image.height))
    defocus = defocus_map(job.lens(), depth, mask, job.max_radius,
                          image.shape)
    return image.values, quantize_layers(image.values, defocus, job.max_layers)


def _print_manifest(manifest):
    for path in manifest:
        print(path)


def cmd_bokeh(args):
    """Render and write bokeh.png."""
    job = _job(args)
    image, stack = prepare(job)
    _print_manifest(write_bokeh(render_bokeh(image, stack), job))
    return EXIT_OK


def cmd_dp_pair(args):
    """Render and write the dual-pixel pair."""
    job = _job(args)
    image, stack = prepare(job)
    pair = render_dp_pair(image, stack, job.orientation)
    _print_manifest(write_dp_pair(pair, job))
    return EXIT_OK


def cmd_nimat(args):
    """Render n views, the bokeh image and optionally the GIF."""
    job = _job(args, need_views=True)
    image, stack = prepare(job)
    view_set = render_views(image, stack, job.views, job.psf,
                            workers=job.workers,
                            progress=args.verbose > 0)
    _print_manifest(write_outputs(view_set, job))
    return EXIT_OK


def cmd_bench(args):
    """Print a timing table for every configuration."""
    for name in ('sizes', 'layers', 'views', 'repeat', 'workers'):
        values = getattr(args, name)
        if any(v < 1 for v in (values if isinstance(values, list) else [values])):
            raise ValidationError(f'--{name} values must be >= 1')
    if any(r < 0 for r in args.radii):
        raise ValidationError('--radii values must be >= 0')
    table = run_bench(args.sizes, args.radii, args.layers, args.views,
                      args.psf, args.seed, args.repeat, args.workers,
                      progress=args.verbose > 0)
    print(table.to_string(index=False))
    if args.csv:
        try:
            table.to_csv(args.csv, index=False)
        except OSError as error:
            raise DofIOError(args.csv, f'cannot write csv ({error})')
        print(args.csv)
    return EXIT_OK


def cmd_kernels(args):
    """Write every kernel of a bank as text and PNG, plus an overview figure."""
    bank = kernel_bank(args.radius, args.views, args.psf)
    try:
        makedirs(args.output, exist_ok=True)
    except OSError as error:
        raise DofIOError(args.output, f'cannot create directory ({error})')
    manifest = []
    for index, k in enumerate(bank):
        text_path = join(args.output, 'kernel_{:03d}.txt'.format(index))
        try:
            with open(text_path, 'w') as text_file:
                text_file.write(kernel_to_text(k))
        except OSError as error:
            raise DofIOError(text_path, f'cannot write kernel ({error})')
        manifest.append(text_path)
        manifest.append(
            save_kernel_png(k, join(args.output,
                                    'kernel_{:03d}.png'.format(index))))
    figure = plot_kernel_bank(bank, title='{} r={:g}px'.format(
        args.psf, args.radius))
    manifest.append(save_fig(figure, join(args.output, 'bank.png')))
    _print_manifest(manifest)
    return EXIT_OK


def main(argv=None):
    """Parse arguments, run the chosen subcommand and return its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (logging.WARNING, logging.INFO,
             logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        return args.handler(args)
    except ValidationError as error:
        print(f'error: {error}', file=sys.stderr)
        return EXIT_VALIDATION
    except DofIOError as error:
        print(f'error: {error}', file=sys.stderr)
        return EXIT_IO
    except Exception as error:
        logger.debug('internal error', exc_info=True)
        print(f'error: internal failure: {error}', file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
