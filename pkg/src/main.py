"""
Main module for the GPTDiscrim application.

This module is the command-line entry point. It exposes the discrimination
pipeline, the multi-copy computations, the feasibility regions, measurement
verification and the randomized audit as subcommands:

	python -m src.main discriminate states.json --class ms --s 0.25 --out result.json
	python -m src.main min-copies --overlap 0.9 --class mks --t 0.25
	python -m src.main region --class ms --s 0.5 --grid 101 --out region.csv
	python -m src.main verify --measurement result.json --states states.json --class ms --s 0.5
	python -m src.main audit --count 1000 --seed 1
	python -m src.main table --overlap 0.9 --s 0.25

Exit codes: 0 success, 1 input error, 2 condition not satisfied, 3 impossible
at the given parameter, 4 verification failure.
"""

import argparse
import logging
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from src.cli.io import load_certificate, load_states, write_json, write_metadata
from src.config.settings import COPY_SEARCH_CAP, configure_logging, default_seed
from src.discrimination.class_parameter import ClassParameter
from src.discrimination.pipeline import discriminate
from src.discrimination.verification import verify_measurement
from src.errors import (
	ConditionNotSatisfiedError,
	GptdError,
	IdenticalStatesError,
	SearchCapExceededError,
	VerificationFailedError,
	ZeroParameterError,
)
from src.linalg.tensor import kron
from src.multicopy.copies import MultiCopyInstance, finite_copy_table, min_copies
from src.multicopy.region import caption_parameters, write_region_csv
from src.oracle.audit import AUDIT_RESTARTS, randomized_cert_audit
from src.oracle.seesaw import SeesawConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSATISFIED = 2
EXIT_IMPOSSIBLE = 3
EXIT_VERIFICATION = 4


class UsageError(Exception):
	"""Command-line arguments are invalid."""


class _Parser(argparse.ArgumentParser):
	"""ArgumentParser that reports usage errors as exit code 1 instead of 2."""

	def error(self, message):
		raise UsageError(f"{self.prog}: {message}")


def _real(text: str) -> float:
	"""Parse a decimal real number; nan and infinities are rejected."""
	try:
		value = Decimal(text)
	except InvalidOperation:
		raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
	if not value.is_finite():
		raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
	return float(value)


def _add_class_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
	parser.add_argument("--class", dest="kind", choices=["ms", "mks"], required=required,
		help="measurement class: ms for M_s, mks for M(K_s)")
	group = parser.add_mutually_exclusive_group(required=required)
	group.add_argument("--s", type=_real, help="parameter s of M_s, in [0, 1/2]")
	group.add_argument("--t", type=_real, help="parameter t of M(K_s), in [0, 1]")


def _class_parameter(args: argparse.Namespace) -> ClassParameter:
	"""Build the class from --class/--s/--t; --s goes with ms, --t with mks."""
	if args.kind is None:
		raise UsageError("--class is required")
	if args.kind == "ms":
		if args.s is None:
			raise UsageError("--class ms takes --s")
		return ClassParameter.ms(args.s)
	if args.t is None:
		raise UsageError("--class mks takes --t")
	return ClassParameter.mks(args.t)


def cmd_discriminate(args: argparse.Namespace) -> int:
	class_parameter = _class_parameter(args)
	a1, a2, b1, b2 = load_states(args.states)
	result = discriminate(a1, a2, b1, b2, class_parameter)
	write_json(result.model_dump(mode="json"), args.out)
	if not result.guaranteed:
		logger.warning("condition not satisfied for %s at x=%.12g, y=%.12g",
			class_parameter.describe(), result.overlaps.x, result.overlaps.y)
		return EXIT_UNSATISFIED
	return EXIT_OK


def cmd_min_copies(args: argparse.Namespace) -> int:
	class_parameter = _class_parameter(args)
	count = min_copies(MultiCopyInstance(overlap=args.overlap, class_parameter=class_parameter), cap=args.cap)
	print(f"n={count.n} total={count.total_copies}")
	return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
	if args.preset == "caption":
		if args.kind is not None:
			raise UsageError("--preset caption cannot be combined with --class")
		classes = caption_parameters()
	else:
		classes = [_class_parameter(args)]
	if args.grid < 2:
		raise UsageError(f"--grid must be at least 2, got {args.grid}")
	if args.out in (None, "-"):
		write_region_csv(classes, args.grid, sys.stdout)
		return EXIT_OK
	write_region_csv(classes, args.grid, Path(args.out))
	write_metadata(args.out)
	return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
	class_parameter = _class_parameter(args)
	certificate = load_certificate(args.measurement)
	a1, a2, b1, b2 = load_states(args.states)
	report = verify_measurement(certificate, kron(a1, b1).projector(), kron(a2, b2).projector(), class_parameter)
	print(report.summary())
	return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_audit(args: argparse.Namespace) -> int:
	seed = default_seed() if args.seed is None else args.seed
	if seed < 0:
		raise UsageError(f"--seed must be nonnegative, got {seed}")
	report = randomized_cert_audit(args.count, seed, SeesawConfig(restarts=args.restarts, seed=seed))
	lines = report.to_json_lines()
	if args.out in (None, "-"):
		sys.stdout.write(lines)
	else:
		Path(args.out).write_text(lines, encoding="utf-8")
		write_metadata(args.out)
	for record in report.failures:
		logger.error("instance %d (seed %d) failed: %s", record.index, record.seed, "; ".join(record.failures))
	return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_table(args: argparse.Namespace) -> int:
	rows = finite_copy_table(args.overlap, args.s, cap=args.cap)
	frame = pd.DataFrame([row.model_dump() for row in rows])
	frame["n"] = frame["n"].astype("Int64")
	print(frame.to_string(index=False))
	return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
	common = _Parser(add_help=False)
	common.add_argument("-v", "--verbose", action="store_true", help="log pipeline steps to stderr")

	parser = _Parser(prog="gptdiscrim", description="Perfect discrimination in approximate quantum theory.")
	commands = parser.add_subparsers(dest="command", required=True)

	p = commands.add_parser("discriminate", parents=[common], help="build and verify a discriminating measurement")
	p.add_argument("states", help="state file (JSON)")
	_add_class_options(p)
	p.add_argument("--out", help="result JSON path (stdout when omitted)")
	p.set_defaults(handler=cmd_discriminate)

	p = commands.add_parser("min-copies", parents=[common], help="least number of copies for perfect discrimination")
	p.add_argument("--overlap", type=_real, required=True, help="single-copy overlap c in [0, 1)")
	_add_class_options(p)
	p.add_argument("--cap", type=int, default=COPY_SEARCH_CAP)
	p.set_defaults(handler=cmd_min_copies)

	p = commands.add_parser("region", parents=[common], help="boundary of the feasible (x, y) region as CSV")
	_add_class_options(p, required=False)
	p.add_argument("--preset", choices=["caption"], help="write the reference curves instead of one class")
	p.add_argument("--grid", type=int, default=101)
	p.add_argument("--out", help="CSV path (stdout when omitted)")
	p.set_defaults(handler=cmd_region)

	p = commands.add_parser("verify", parents=[common], help="check conditions (i)-(iii) for a measurement")
	p.add_argument("--measurement", required=True, help="certificate or result JSON")
	p.add_argument("--states", required=True, help="state file (JSON)")
	_add_class_options(p)
	p.set_defaults(handler=cmd_verify)

	p = commands.add_parser("audit", parents=[common], help="randomized end-to-end audit")
	p.add_argument("--count", type=int, required=True)
	p.add_argument("--seed", type=int, help="root seed (GPTD_SEED or the built-in default when omitted)")
	p.add_argument("--restarts", type=int, default=AUDIT_RESTARTS, help="see-saw restarts per element")
	p.add_argument("--out", help="JSON lines path (stdout when omitted)")
	p.set_defaults(handler=cmd_audit)

	p = commands.add_parser("table", parents=[common], help="finite-copy table for an overlap and s")
	p.add_argument("--overlap", type=_real, required=True)
	p.add_argument("--s", type=_real, required=True)
	p.add_argument("--cap", type=int, default=COPY_SEARCH_CAP)
	p.set_defaults(handler=cmd_table)
	return parser


def main(argv: Optional[List[str]] = None) -> int:
	"""
	Run one command and return its exit code.

	Args:
		argv (Optional[List[str]]): Arguments without the program name; sys.argv[1:] when None.

	Returns:
		int: The exit code of the command.
	"""
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except UsageError as error:
		print(f"error: {error}", file=sys.stderr)
		return EXIT_INPUT
	configure_logging("INFO" if args.verbose else None)

	try:
		return args.handler(args)
	except (ConditionNotSatisfiedError, SearchCapExceededError) as error:
		print(f"condition not satisfied: {error}", file=sys.stderr)
		return EXIT_UNSATISFIED
	except (ZeroParameterError, IdenticalStatesError) as error:
		print(f"impossible: {error}", file=sys.stderr)
		return EXIT_IMPOSSIBLE
	except VerificationFailedError as error:
		print(f"verification failed: {error}", file=sys.stderr)
		if error.report is not None:
			print(error.report.summary(), file=sys.stderr)
		return EXIT_VERIFICATION
	except (UsageError, GptdError, ValidationError, OSError) as error:
		print(f"error: {error}", file=sys.stderr)
		return EXIT_INPUT


if __name__ == "__main__":
	sys.exit(main())
