"""
Module defining the operator and vector types of the GPTDiscrim application.

This module provides pydantic models for Hermitian matrices and pure state
vectors on a single system or on a bipartite system H_A ⊗ H_B. Bipartite
indices follow the row-major convention i = i_A·d_B + i_B everywhere in the
library. Complex arrays serialize as nested [re, im] pairs so that every model
round-trips through JSON with `model_dump(mode="json")` and `model_validate`.
"""

import math
from typing import Annotated, Any, Tuple

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer, model_validator

from src.config.settings import HERMITIAN_TOL, MAX_DIMENSION, NORMALIZATION_TOL
from src.errors import DimensionError, NotHermitianError


def decode_complex_array(value: Any) -> np.ndarray:
	"""
	Decode a complex array from a numpy array or from nested [re, im] lists.

	Args:
		value (Any): An ndarray (returned as complex copy) or a nested list whose
			innermost level holds [re, im] pairs.

	Returns:
		np.ndarray: A read-only complex array.
	"""
	if isinstance(value, np.ndarray):
		array = np.array(value, dtype=complex)
	else:
		pairs = np.asarray(value, dtype=float)
		if pairs.ndim == 0 or pairs.shape[-1] != 2:
			raise DimensionError(f"expected nested [re, im] pairs, got shape {pairs.shape}")
		array = pairs[..., 0] + 1j * pairs[..., 1]
	array.setflags(write=False)
	return array


def encode_complex_array(array: np.ndarray) -> list:
	"""Encode a complex array as nested [re, im] lists."""
	array = np.asarray(array, dtype=complex)
	return np.stack([array.real, array.imag], axis=-1).tolist()


ComplexArray = Annotated[
	np.ndarray,
	BeforeValidator(decode_complex_array),
	PlainSerializer(encode_complex_array, return_type=list),
]


def _check_dims(dims: Tuple[int, ...]) -> None:
	if len(dims) not in (1, 2) or any(d < 1 for d in dims):
		raise DimensionError(f"dims must be (d,) or (d_A, d_B) with positive entries, got {dims}")
	if any(d > MAX_DIMENSION for d in dims):
		raise DimensionError(f"local dimensions above {MAX_DIMENSION} are not supported, got {dims}")


class HermitianOperator(BaseModel):
	"""
	A square complex Hermitian matrix tagged with its subsystem dimensions.

	Attributes:
		entries (np.ndarray): The matrix, side d (single) or d_A·d_B (bipartite).
		dims (Tuple[int, ...]): (d,) for a single system, (d_A, d_B) for a bipartite one.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	entries: ComplexArray
	dims: Tuple[int, ...]

	@model_validator(mode="after")
	def _validate(self) -> "HermitianOperator":
		_check_dims(self.dims)
		side = math.prod(self.dims)
		if self.entries.shape != (side, side):
			raise DimensionError(f"entries of shape {self.entries.shape} do not match dims {self.dims}")
		deviation = float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))
		if deviation > HERMITIAN_TOL:
			raise NotHermitianError(f"matrix deviates from Hermitian by {deviation:.3e}")
		return self

	@classmethod
	def single(cls, matrix) -> "HermitianOperator":
		"""Wrap a square matrix acting on a single system."""
		matrix = np.asarray(matrix, dtype=complex)
		return cls(entries=matrix, dims=(matrix.shape[0],))

	@classmethod
	def bipartite(cls, matrix, d_a: int, d_b: int) -> "HermitianOperator":
		"""Wrap a square matrix acting on H_A ⊗ H_B."""
		return cls(entries=np.asarray(matrix, dtype=complex), dims=(d_a, d_b))

	@classmethod
	def identity(cls, dims: Tuple[int, ...]) -> "HermitianOperator":
		return cls(entries=np.eye(math.prod(dims), dtype=complex), dims=tuple(dims))

	@property
	def is_bipartite(self) -> bool:
		return len(self.dims) == 2

	@property
	def dim(self) -> int:
		return self.entries.shape[0]

	def with_entries(self, matrix) -> "HermitianOperator":
		"""Build an operator on the same system from new entries."""
		return HermitianOperator(entries=np.asarray(matrix, dtype=complex), dims=self.dims)

	def expectation(self, vector: "PureStateVector") -> float:
		"""Return the real expectation value <v|X|v>."""
		if vector.dim != self.dim:
			raise DimensionError(f"vector of length {vector.dim} does not fit operator of side {self.dim}")
		return float(np.real(np.vdot(vector.amplitudes, self.entries @ vector.amplitudes)))

	def __repr__(self) -> str:
		return f"HermitianOperator(dims={self.dims})"


class PureStateVector(BaseModel):
	"""
	A (possibly unnormalized) vector on a single or bipartite system.

	Attributes:
		amplitudes (np.ndarray): The complex amplitudes.
		dims (Tuple[int, ...]): (d,) or (d_A, d_B).
		normalized (bool): When set, the vector is checked to have unit norm.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	amplitudes: ComplexArray
	dims: Tuple[int, ...]
	normalized: bool = False

	@model_validator(mode="after")
	def _validate(self) -> "PureStateVector":
		_check_dims(self.dims)
		if self.amplitudes.shape != (math.prod(self.dims),):
			raise DimensionError(f"amplitudes of shape {self.amplitudes.shape} do not match dims {self.dims}")
		if self.normalized and abs(self.norm() - 1.0) > NORMALIZATION_TOL:
			raise DimensionError(f"vector flagged normalized has norm {self.norm():.15f}")
		return self

	@classmethod
	def single(cls, amplitudes, normalize: bool = False) -> "PureStateVector":
		"""Wrap amplitudes of a single-system vector, optionally normalizing them."""
		amplitudes = np.asarray(amplitudes, dtype=complex)
		if normalize:
			amplitudes = amplitudes / np.linalg.norm(amplitudes)
		return cls(amplitudes=amplitudes, dims=(amplitudes.shape[0],), normalized=normalize)

	@classmethod
	def bipartite(cls, amplitudes, d_a: int, d_b: int, normalize: bool = False) -> "PureStateVector":
		"""Wrap amplitudes of a vector in H_A ⊗ H_B, optionally normalizing them."""
		amplitudes = np.asarray(amplitudes, dtype=complex)
		if normalize:
			amplitudes = amplitudes / np.linalg.norm(amplitudes)
		return cls(amplitudes=amplitudes, dims=(d_a, d_b), normalized=normalize)

	@property
	def is_bipartite(self) -> bool:
		return len(self.dims) == 2

	@property
	def dim(self) -> int:
		return self.amplitudes.shape[0]

	def norm(self) -> float:
		return float(np.linalg.norm(self.amplitudes))

	def projector(self) -> HermitianOperator:
		"""Return |v><v| (unnormalized when v is)."""
		return HermitianOperator(entries=np.outer(self.amplitudes, self.amplitudes.conj()), dims=self.dims)

	def __repr__(self) -> str:
		return f"PureStateVector(dims={self.dims}, normalized={self.normalized})"
