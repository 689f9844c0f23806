import os
import logging
from dotenv import load_dotenv

from .errors import ConfigError

# Load numeric defaults from .env if present
load_dotenv()


def _positive_float(name, default):
    """Read a positive float from the environment."""
    raw = os.getenv(name, default)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not a number")
    if not value > 0:
        raise ConfigError(f"{name}={raw!r} must be positive")
    return value


def _positive_int(name, default):
    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer")
    if value <= 0:
        raise ConfigError(f"{name}={raw!r} must be positive")
    return value


# Residual tolerance for angles, log-tangents and solid angles
DEFAULT_TOL = _positive_float('REGGE_TOL', '1e-9')
# Volume residual tolerance for spherical/hyperbolic tetrahedra
DEFAULT_VOLUME_TOL = _positive_float('REGGE_VOLUME_TOL', '1e-5')
# Determinant / signature threshold, relative to the matrix scale
DEGENERACY_TOL = _positive_float('REGGE_DEGENERACY_TOL', '1e-10')
# Triangle near-degeneracy guard, relative to the longest side
TRIANGLE_TOL = _positive_float('REGGE_TRIANGLE_TOL', '1e-12')
QUAD_TOL = _positive_float('REGGE_QUAD_TOL', '1e-8')
QUAD_LIMIT = _positive_int('REGGE_QUAD_LIMIT', '200')

LOG_LEVEL = os.getenv('REGGE_LOG_LEVEL', 'WARNING').upper()
if not isinstance(logging.getLevelName(LOG_LEVEL), int):
    raise ConfigError(f"REGGE_LOG_LEVEL={LOG_LEVEL!r} is not a logging level")
