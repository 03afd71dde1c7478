"""
Configuration for the GPTDiscrim application.

This module collects the numerical tolerances shared by all modules, the
default search caps, and the environment lookups (RNG seed, log level).
Matrices handled here are tiny and O(1) in norm, so absolute tolerances are
used throughout.
"""

import logging
import os
import sys
from typing import Optional

# Hermiticity of stored operators (max entry deviation).
HERMITIAN_TOL = 1e-12
# Normalization of vectors flagged as normalized.
NORMALIZATION_TOL = 1e-12
# Residuals of eigen/Schmidt decompositions and canonical round trips.
DECOMPOSITION_TOL = 1e-10
# Reconstruction of certificates and measurement conditions (i)-(iii).
CERTIFICATE_TOL = 1e-9
# Eigenvalues below -NEGATIVE_EIGENVALUE_CUTOFF count as negative in nege.
NEGATIVE_EIGENVALUE_CUTOFF = 1e-12
PSD_TOL = 1e-10
SCO_TOL = 1e-10
CONDITION_TOL = 1e-12
# |gamma - 1| below this selects the gamma = 1 construction.
BRANCH_TOL = 1e-9
# Vector norms below this are treated as the zero vector.
ZERO_NORM_TOL = 1e-14
# State files are accepted when unit-norm within this tolerance.
STATE_FILE_NORM_TOL = 1e-9

COPY_SEARCH_CAP = 10**6
DEFAULT_SEED = 20200401
MAX_DIMENSION = 64

SEED_ENV_VAR = "GPTD_SEED"
LOG_LEVEL_ENV_VAR = "GPTD_LOG_LEVEL"


def _get_env(var: str) -> Optional[str]:
	"""
	Read an environment variable, treating empty strings as unset.

	Args:
		var (str): The name of the environment variable.

	Returns:
		Optional[str]: The stripped value, or None when unset.
	"""
	value = os.environ.get(var)
	if value is None or not value.strip():
		return None
	return value.strip()


def default_seed() -> int:
	"""
	Get the default RNG seed, honouring the GPTD_SEED override.

	Returns:
		int: The seed from GPTD_SEED when set and numeric, DEFAULT_SEED otherwise.
	"""
	raw = _get_env(SEED_ENV_VAR)
	if raw is None:
		return DEFAULT_SEED
	try:
		return int(raw)
	except ValueError:
		logging.getLogger(__name__).warning("Ignoring non-integer %s=%r", SEED_ENV_VAR, raw)
		return DEFAULT_SEED


def configure_logging(level: Optional[str] = None) -> None:
	"""
	Configure root logging once for command-line use.

	Log records go to stderr so that JSON/CSV payloads written to stdout stay
	machine readable.

	Args:
		level (Optional[str]): Level name; falls back to GPTD_LOG_LEVEL, then WARNING.
	"""
	name = (level or _get_env(LOG_LEVEL_ENV_VAR) or "WARNING").upper()
	logging.basicConfig(
		level=getattr(logging, name, logging.WARNING),
		format="%(levelname)s %(name)s: %(message)s",
		stream=sys.stderr,
		force=True,
	)
