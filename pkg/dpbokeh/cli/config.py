"""Configuration of a render job from defaults, a `key = value` file and
command-line flags, in increasing order of precedence.
"""
import configparser
import logging
from dataclasses import fields

from ..errors import DofIOError, ValidationError
from ..formats.job import RenderJob

logger = logging.getLogger(__name__)

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')

_SECTION = 'job'


def normalize_key(key):
    return key.strip().lower().replace('-', '_')


def _field_types():
    types = {}
    for f in fields(RenderJob):
        default = f.default
        if isinstance(default, bool):
            types[f.name] = bool
        elif isinstance(default, int):
            types[f.name] = int
        elif isinstance(default, float) or f.name in (
                'focal_length', 'f_number', 'focus_distance'):
            types[f.name] = float
        else:
            types[f.name] = str
    return types


FIELD_TYPES = _field_types()


def parse_bool(text):
    value = str(text).strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValidationError(f'expected a boolean, got {text!r}')


def coerce(key, value):
    """Convert a raw config value to the type of its RenderJob field."""
    name = normalize_key(key)
    if name not in FIELD_TYPES:
        raise ValidationError(f'unknown configuration key {key!r}')
    kind = FIELD_TYPES[name]
    if value is None or not isinstance(value, str):
        return value
    try:
        if kind is bool:
            return parse_bool(value)
        if kind is int:
            return int(value)
        if kind is float:
            return float(value)
    except ValueError:
        raise ValidationError(
            f'invalid value {value!r} for {name.replace("_", "-")}')
    return value.strip()


def read_config(path):
    """Read a config file of `key = value` lines with # comments.
    arguments:
       path: Config file.
    returns: dict of field name -> typed value.
    """
    parser = configparser.ConfigParser(delimiters=('=', ),
                                       comment_prefixes=('#', ),
                                       inline_comment_prefixes=('#', ),
                                       interpolation=None)
    try:
        with open(path, encoding='utf-8') as config_file:
            text = config_file.read()
    except OSError as error:
        raise DofIOError(path, f'cannot read config ({error})')
    try:
        parser.read_string(f'[{_SECTION}]\n' + text, source=path)
    except configparser.Error as error:
        raise ValidationError(f'{path}: malformed config ({error})')
    extra = [name for name in parser.sections() if name != _SECTION]
    if extra:
        raise ValidationError(
            f'{path}: section headers are not supported ([{extra[0]}])')
    values = {}
    for key, value in parser.items(_SECTION):
        values[normalize_key(key)] = coerce(key, value)
    logger.info('Read %d settings from %s', len(values), path)
    return values


def build_job(flags, config_path=None):
    """Merge defaults, config file and explicit flags into a RenderJob.
    arguments:
       flags: dict of explicitly given flag values (field names as keys).
       config_path: Optional config file.
    returns: RenderJob (not yet validated).
    """
    values = {}
    if config_path is not None:
        values.update(read_config(config_path))
    for key, value in flags.items():
        values[normalize_key(key)] = coerce(key, value)
    return RenderJob(**values)
