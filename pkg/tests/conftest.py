"""
Shared fixtures: seeded generators and product-state factories.
"""

import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from src.cones.certificates import PsdSum, RankOneTerm
from src.config.settings import PSD_TOL
from src.linalg.operators import HermitianOperator, PureStateVector
from src.linalg.tensor import eig_hermitian


def haar_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
	vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
	return vector / np.linalg.norm(vector)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
	matrix = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
	return (matrix + matrix.conj().T) / 2.0


def local_pair(overlap: float, dim: int = 2, rng: np.random.Generator = None, phase: float = 0.0):
	"""Two unit vectors with |<first|second>|² = overlap, rotated by a random unitary when rng is given."""
	first = np.zeros(dim, dtype=complex)
	first[0] = 1.0
	second = np.zeros(dim, dtype=complex)
	second[0] = math.sqrt(overlap) * np.exp(1j * phase)
	second[1] = math.sqrt(1.0 - overlap)
	if rng is not None:
		rotation = unitary_group.rvs(dim, random_state=rng)
		first, second = rotation @ first, rotation @ second
	return PureStateVector.single(first, normalize=True), PureStateVector.single(second, normalize=True)


def psd_sum_from_eigen(operator: HermitianOperator) -> PsdSum:
	"""Spectral PsdSum of a PSD operator; eigenvalues at or below PSD_TOL are dropped."""
	values, vectors = eig_hermitian(operator)
	terms = [
		RankOneTerm(weight=float(value), vector=PureStateVector(amplitudes=vectors[:, k], dims=operator.dims, normalized=True))
		for k, value in enumerate(values)
		if value > PSD_TOL
	]
	return PsdSum(terms=terms)


@pytest.fixture
def rng():
	return np.random.default_rng(20200401)


@pytest.fixture
def product_states():
	"""Factory: (a1, a2, b1, b2) with local overlaps x and y."""
	def make(x: float, y: float, d_a: int = 2, d_b: int = 2, seed: int = None):
		generator = None if seed is None else np.random.default_rng(seed)
		a1, a2 = local_pair(x, d_a, generator)
		b1, b2 = local_pair(y, d_b, generator)
		return a1, a2, b1, b2
	return make


@pytest.fixture
def bell_vector():
	return PureStateVector.bipartite(np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0), 2, 2)


@pytest.fixture
def bell_projector(bell_vector):
	return bell_vector.projector()


@pytest.fixture
def identity4():
	return HermitianOperator.identity((2, 2))
