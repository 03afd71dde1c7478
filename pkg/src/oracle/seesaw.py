"""
See-saw minimization of ⟨a⊗b|M|a⊗b⟩ over product unit vectors.

An operator M lies in SEP(A;B)* (is block positive) exactly when this minimum
is nonnegative. The see-saw fixes b, replaces a by the minimum eigenvector of
the operator M contracted with b, then does the same on the B side, until the
objective stops decreasing. Each restart starts from Haar-random product
vectors; the best value over all restarts is returned.

The result is an upper bound on the true minimum. A value below -1e-9 is a
certified counterexample; anything else only means none was found.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt
from scipy.linalg import eigh

from src.config.settings import default_seed
from src.errors import DimensionError
from src.linalg.operators import HermitianOperator, PureStateVector

logger = logging.getLogger(__name__)

# Values below this certify M ∉ SEP(A;B)*.
COUNTEREXAMPLE_TOL = 1e-9


class SeesawConfig(BaseModel):
	"""
	Settings for the product-state minimization.

	Attributes:
		restarts (int): Independent random starts.
		max_iters (int): Iteration cap per restart; one iteration updates both sides.
		convergence_tol (float): Stop once an iteration improves by less than this.
		seed (int): Root seed; restart k uses the k-th spawned child sequence.
		max_workers (Optional[int]): Thread pool size, None for the executor default.
	"""
	model_config = ConfigDict(frozen=True)

	restarts: PositiveInt = 64
	max_iters: PositiveInt = 1000
	convergence_tol: PositiveFloat = 1e-12
	seed: int = Field(default_factory=default_seed, ge=0, lt=2**64)
	max_workers: Optional[PositiveInt] = None


class ProductMinimum(BaseModel):
	"""
	Result of the see-saw.

	Attributes:
		value (float): ⟨a⊗b|M|a⊗b⟩ at the returned witnesses.
		witness_a (PureStateVector): Best vector on A.
		witness_b (PureStateVector): Best vector on B.
		restarts (int): Number of restarts performed.
		history (List[float]): Objective after each iteration of the winning restart.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	value: float
	witness_a: PureStateVector
	witness_b: PureStateVector
	restarts: int
	history: List[float]

	@property
	def counterexample(self) -> bool:
		return self.value < -COUNTEREXAMPLE_TOL

	def describe(self) -> str:
		if self.counterexample:
			return f"not block positive: product expectation {self.value:.12g}"
		return f"no counterexample found (restarts = {self.restarts})"


def _haar_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
	vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
	return vector / np.linalg.norm(vector)


def _lowest(matrix: np.ndarray) -> Tuple[float, np.ndarray]:
	matrix = (matrix + matrix.conj().T) / 2.0
	values, vectors = eigh(matrix, subset_by_index=[0, 0])
	return float(values[0]), vectors[:, 0]


def product_expectation(matrix: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
	"""⟨a⊗b|M|a⊗b⟩ by direct evaluation."""
	vector = np.kron(a, b)
	return float(np.real(vector.conj() @ matrix @ vector))


def _restart(
		tensor: np.ndarray,
		rng: np.random.Generator,
		config: SeesawConfig,
) -> Tuple[float, np.ndarray, np.ndarray, List[float]]:
	d_a, d_b = tensor.shape[0], tensor.shape[1]
	a = _haar_vector(rng, d_a)
	b = _haar_vector(rng, d_b)
	history: List[float] = []
	previous = np.inf
	for _ in range(config.max_iters):
		# (M_b)_{ik} = Σ_{jl} conj(b_j) M_{ij,kl} b_l
		_, a = _lowest(np.einsum("ijkl,j,l->ik", tensor, b.conj(), b))
		value, b = _lowest(np.einsum("ijkl,i,k->jl", tensor, a.conj(), a))
		history.append(value)
		if previous - value < config.convergence_tol:
			break
		previous = value
	return history[-1], a, b, history


def min_product_expectation(operator: HermitianOperator, config: Optional[SeesawConfig] = None) -> ProductMinimum:
	"""
	Minimize ⟨a⊗b|M|a⊗b⟩ over unit product vectors by see-saw with restarts.

	Restarts run concurrently; the winner is the smallest value, ties broken by
	restart index, so the result depends only on the seed.

	Args:
		operator (HermitianOperator): A bipartite Hermitian operator.
		config (Optional[SeesawConfig]): Search settings; defaults when None.

	Returns:
		ProductMinimum: The best value with its witnesses.
	"""
	if not operator.is_bipartite:
		raise DimensionError(f"see-saw needs a bipartite operator, got dims {operator.dims}")
	config = config or SeesawConfig()
	d_a, d_b = operator.dims
	matrix = operator.entries
	tensor = matrix.reshape(d_a, d_b, d_a, d_b)
	generators = [np.random.default_rng(child) for child in np.random.SeedSequence(config.seed).spawn(config.restarts)]

	with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
		outcomes = list(executor.map(lambda rng: _restart(tensor, rng, config), generators))

	index = min(range(len(outcomes)), key=lambda k: (outcomes[k][0], k))
	_, a, b, history = outcomes[index]
	value = product_expectation(matrix, a, b)
	logger.debug("see-saw minimum %.12g (restart %d of %d)", value, index, config.restarts)
	return ProductMinimum(
		value=value,
		witness_a=PureStateVector.single(a, normalize=True),
		witness_b=PureStateVector.single(b, normalize=True),
		restarts=config.restarts,
		history=history,
	)
