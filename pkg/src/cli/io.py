"""
File formats of the command-line interface.

State files are UTF-8 JSON documents

	{"dA": 2, "dB": 2, "a1": [[re, im], ...], "b1": [...], "a2": [...], "b2": [...]}

whose vectors must be unit norm within 1e-9; they are renormalized after
parsing. Outputs are written as JSON or CSV; every file written to a path gets a
sidecar `<path>.meta.json` with the UTC timestamp and command line, so the
payload itself stays byte-stable.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.config.settings import STATE_FILE_NORM_TOL
from src.discrimination.measurement import MeasurementCertificate
from src.errors import GptdError, StateFileError
from src.linalg.operators import PureStateVector, decode_complex_array

logger = logging.getLogger(__name__)


class StateFile(BaseModel):
	"""
	The two product states ρ₁ = a₁⊗b₁ and ρ₂ = a₂⊗b₂.

	Attributes:
		d_a (int): Dimension of A ("dA").
		d_b (int): Dimension of B ("dB").
		a1, b1, a2, b2 (List[List[float]]): Vectors as [re, im] pairs.
	"""
	model_config = ConfigDict(frozen=True, populate_by_name=True)

	d_a: int = Field(alias="dA", ge=2)
	d_b: int = Field(alias="dB", ge=2)
	a1: List[List[float]]
	b1: List[List[float]]
	a2: List[List[float]]
	b2: List[List[float]]

	def _vector(self, name: str, dim: int) -> PureStateVector:
		amplitudes = decode_complex_array(getattr(self, name))
		if amplitudes.ndim != 1 or amplitudes.shape[0] != dim:
			raise StateFileError(f"{name} has {amplitudes.shape[0]} entries, expected {dim}")
		norm = float(np.linalg.norm(amplitudes))
		if abs(norm - 1.0) > STATE_FILE_NORM_TOL:
			raise StateFileError(f"{name} has norm {norm:.12g}, expected 1")
		return PureStateVector.single(amplitudes, normalize=True)

	def vectors(self) -> Tuple[PureStateVector, PureStateVector, PureStateVector, PureStateVector]:
		"""(a1, a2, b1, b2), renormalized."""
		return (
			self._vector("a1", self.d_a),
			self._vector("a2", self.d_a),
			self._vector("b1", self.d_b),
			self._vector("b2", self.d_b),
		)


def _read_json(path: str) -> dict:
	try:
		with open(path, encoding="utf-8") as handle:
			document = json.load(handle)
	except (OSError, json.JSONDecodeError) as error:
		raise StateFileError(f"cannot read {path}: {error}") from error
	if not isinstance(document, dict):
		raise StateFileError(f"{path}: expected a JSON object")
	return document


def load_states(path: str) -> Tuple[PureStateVector, PureStateVector, PureStateVector, PureStateVector]:
	"""
	Parse a state file.

	Args:
		path (str): Path to the JSON document.

	Returns:
		Tuple: (a1, a2, b1, b2) as unit vectors.

	Raises:
		StateFileError: When the file is unreadable or malformed.
	"""
	try:
		return StateFile.model_validate(_read_json(path)).vectors()
	except ValidationError as error:
		raise StateFileError(f"{path}: {error}") from error
	except StateFileError:
		raise
	except GptdError as error:
		raise StateFileError(f"{path}: {error}") from error


def load_certificate(path: str) -> MeasurementCertificate:
	"""
	Parse a measurement file: a certificate, or a discrimination result holding one.
	"""
	document = _read_json(path)
	if "certificate" in document:
		document = document["certificate"]
		if document is None:
			raise StateFileError(f"{path}: the result carries no measurement")
	try:
		return MeasurementCertificate.model_validate(document)
	except ValidationError as error:
		raise StateFileError(f"{path}: {error}") from error
	except GptdError as error:
		raise StateFileError(f"{path}: {error}") from error


def write_metadata(path: str, argv: Optional[List[str]] = None) -> None:
	meta = {
		"created": datetime.now(timezone.utc).isoformat(),
		"command": list(sys.argv if argv is None else argv),
	}
	with open(f"{path}.meta.json", "w", encoding="utf-8") as handle:
		json.dump(meta, handle, indent=2)
		handle.write("\n")


def write_json(payload: dict, out: Optional[str], argv: Optional[List[str]] = None) -> None:
	"""
	Write a JSON payload to `out`, or to stdout when out is None or "-".
	"""
	text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
	if out is None or out == "-":
		sys.stdout.write(text)
		return
	Path(out).write_text(text, encoding="utf-8")
	write_metadata(out, argv)
	logger.info("wrote %s", out)
