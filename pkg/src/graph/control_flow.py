"""
Module for defining the control flow graph of the discrimination pipeline.

This module provides the DiscriminationFlow class that builds the graph-based
workflow turning two separable pure states into a verified perfect
discrimination measurement: reduce the states to canonical form, evaluate the
sufficient condition of the targeted class, and, when it holds, build and
verify the measurement. When the condition fails the workflow ends without a
measurement; this never means the states are indistinguishable.
"""

import logging

from langgraph.graph import END, StateGraph
from langgraph.graph.state import CompiledStateGraph

from src.discrimination.class_parameter import minimal_parameters
from src.discrimination.measurement import build_measurement
from src.discrimination.verification import verify_measurement
from src.graph.graph_state import DiscriminationState
from src.linalg.canonical import canonical_reduction
from src.linalg.tensor import kron

logger = logging.getLogger(__name__)


class DiscriminationFlow:
	"""
	A class for managing the discrimination workflow graph.

	The graph has four nodes, reduce -> evaluate -> build -> verify, with a
	conditional edge after evaluate that ends the run when the sufficient
	condition of the class fails.

	Attributes:
		workflow (StateGraph): The state graph for the workflow.
	"""
	def __init__(self):
		self.workflow = StateGraph(DiscriminationState)

	def reduce_states(self, state: DiscriminationState) -> dict:
		"""
		Reduce the input states to canonical form and compute the overlaps.

		Args:
			state (dict): The current graph state

		Returns:
			state (dict): canonical, rho1, rho2, x, y and the minimal parameters
		"""
		form = canonical_reduction(state["a1"], state["a2"], state["b1"], state["b2"])
		x, y = 1.0 - form.alpha1, 1.0 - form.alpha2
		return {
			"canonical": form,
			"rho1": kron(state["a1"], state["b1"]).projector(),
			"rho2": kron(state["a2"], state["b2"]).projector(),
			"x": x,
			"y": y,
			"minimal": minimal_parameters(x, y),
			"steps": ["reduce"],
		}

	def evaluate_condition(self, state: DiscriminationState) -> dict:
		"""
		Evaluate the sufficient condition of the targeted class at (x, y).

		Args:
			state (dict): The current graph state

		Returns:
			state (dict): condition_holds
		"""
		logger.info("---EVALUATE CONDITION---")
		holds = state["class_parameter"].condition(state["x"], state["y"])
		return {"condition_holds": holds, "steps": ["evaluate"]}

	def decide_to_build(self, state: DiscriminationState) -> str:
		"""
		Determines whether to build a measurement or stop.

		Args:
			state (dict): The current graph state

		Returns:
			str: Binary decision for the next node to call
		"""
		if state["condition_holds"]:
			logger.info("---DECISION: CONDITION SATISFIED---")
			return "build"
		logger.info("---DECISION: CONDITION NOT SATISFIED---")
		return "stop"

	def build(self, state: DiscriminationState) -> dict:
		certificate = build_measurement(state["canonical"], state["class_parameter"])
		return {"certificate": certificate, "steps": ["build"]}

	def verify(self, state: DiscriminationState) -> dict:
		report = verify_measurement(state["certificate"], state["rho1"], state["rho2"], state["class_parameter"])
		return {"report": report, "steps": ["verify"]}

	def build_graph(self) -> CompiledStateGraph:
		"""
		Build the graph for the control flow
		"""
		workflow = self.workflow
		workflow.add_node("reduce", self.reduce_states)
		workflow.add_node("evaluate", self.evaluate_condition)
		workflow.add_node("build", self.build)
		workflow.add_node("verify", self.verify)

		workflow.set_entry_point("reduce")
		workflow.add_edge("reduce", "evaluate")
		workflow.add_conditional_edges(
			"evaluate",
			self.decide_to_build,
			{
				"build": "build",
				"stop": END,
			},
		)
		workflow.add_edge("build", "verify")
		workflow.add_edge("verify", END)
		return workflow.compile()
