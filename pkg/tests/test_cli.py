import json
import math

import pandas as pd
import pytest

from src.main import (
	EXIT_IMPOSSIBLE,
	EXIT_INPUT,
	EXIT_OK,
	EXIT_UNSATISFIED,
	EXIT_VERIFICATION,
	main,
)


def _pair(overlap):
	"""Real unit vectors with |<first|second>|² = overlap, as [re, im] pairs."""
	root = math.sqrt(overlap)
	return [[1.0, 0.0], [0.0, 0.0]], [[root, 0.0], [math.sqrt(1.0 - overlap), 0.0]]


@pytest.fixture
def state_file(tmp_path):
	def write(x, y, name="states.json"):
		a1, a2 = _pair(x)
		b1, b2 = _pair(y)
		path = tmp_path / name
		path.write_text(json.dumps({"dA": 2, "dB": 2, "a1": a1, "a2": a2, "b1": b1, "b2": b2}), encoding="utf-8")
		return str(path)
	return write


def test_orthogonal_states_with_povms(state_file, tmp_path):
	out = tmp_path / "result.json"
	assert main(["discriminate", state_file(0.0, 0.5), "--class", "ms", "--s", "0", "--out", str(out)]) == EXIT_OK
	result = json.loads(out.read_text(encoding="utf-8"))
	assert result["guaranteed"]
	assert result["certificate"]["branch"] == "TrivialOrthogonal"
	meta = json.loads((tmp_path / "result.json.meta.json").read_text(encoding="utf-8"))
	assert "created" in meta and "command" in meta


def test_unsatisfied_condition_exits_two(state_file, capsys):
	assert main(["discriminate", state_file(0.5, 0.5), "--class", "ms", "--s", "0.25"]) == EXIT_UNSATISFIED
	result = json.loads(capsys.readouterr().out)
	assert not result["guaranteed"]
	assert result["certificate"] is None


def test_mks_small_overlaps(state_file, capsys):
	assert main(["discriminate", state_file(0.04, 0.04), "--class", "mks", "--t", "0.25"]) == EXIT_OK
	assert json.loads(capsys.readouterr().out)["guaranteed"]


def test_min_copies(capsys):
	assert main(["min-copies", "--overlap", "0.5", "--class", "ms", "--s", "0.5"]) == EXIT_OK
	assert capsys.readouterr().out.strip() == "n=1 total=2"
	assert main(["min-copies", "--overlap", "0.9", "--class", "mks", "--t", "0.25"]) == EXIT_OK
	assert capsys.readouterr().out.strip() == "n=11 total=22"
	assert main(["min-copies", "--overlap", "0.5", "--class", "ms", "--s", "0"]) == EXIT_IMPOSSIBLE


def test_min_copies_beyond_cap():
	argv = ["min-copies", "--overlap", "0.999", "--class", "ms", "--s", "0.01", "--cap", "100"]
	assert main(argv) == EXIT_UNSATISFIED


def test_region_csv(tmp_path):
	out = tmp_path / "region.csv"
	assert main(["region", "--class", "ms", "--s", "0.5", "--grid", "3", "--out", str(out)]) == EXIT_OK
	frame = pd.read_csv(out)
	assert list(frame["y_boundary"]) == pytest.approx([1.0, 0.5, 0.0])
	assert (tmp_path / "region.csv.meta.json").exists()


def test_region_preset_to_stdout(capsys):
	assert main(["region", "--preset", "caption", "--grid", "2"]) == EXIT_OK
	assert len(capsys.readouterr().out.splitlines()) == 1 + 6 * 2


def test_verify_gamma_one_measurement(state_file, tmp_path, capsys):
	states = state_file(0.5, 0.5)
	out = tmp_path / "result.json"
	assert main(["discriminate", states, "--class", "ms", "--s", "0.5", "--out", str(out)]) == EXIT_OK
	verify = ["verify", "--measurement", str(out), "--states", states, "--class", "ms"]
	assert main(verify + ["--s", "0.5"]) == EXIT_OK
	assert main(verify + ["--s", "0.4"]) == EXIT_VERIFICATION
	assert "nege" in capsys.readouterr().out


def test_truncated_json_is_an_input_error(tmp_path):
	broken = tmp_path / "broken.json"
	broken.write_text('{"dA": 2, "dB": ', encoding="utf-8")
	assert main(["discriminate", str(broken), "--class", "ms", "--s", "0.5"]) == EXIT_INPUT


def test_unnormalized_state_is_an_input_error(tmp_path):
	path = tmp_path / "states.json"
	document = {"dA": 2, "dB": 2, "a1": [[2.0, 0.0], [0.0, 0.0]], "a2": [[0.0, 0.0], [1.0, 0.0]],
		"b1": [[1.0, 0.0], [0.0, 0.0]], "b2": [[0.0, 0.0], [1.0, 0.0]]}
	path.write_text(json.dumps(document), encoding="utf-8")
	assert main(["discriminate", str(path), "--class", "ms", "--s", "0.5"]) == EXIT_INPUT


def test_audit_is_reproducible(capsys):
	argv = ["audit", "--count", "1", "--seed", "7", "--restarts", "2"]
	assert main(argv) == EXIT_OK
	first = capsys.readouterr().out
	assert main(argv) == EXIT_OK
	assert capsys.readouterr().out == first
	assert json.loads(first)["seed"] == 7


def test_audit_needs_a_positive_count():
	assert main(["audit", "--count", "0", "--seed", "1"]) == EXIT_INPUT


def test_table(capsys):
	assert main(["table", "--overlap", "0.9", "--s", "0.25"]) == EXIT_OK
	out = capsys.readouterr().out
	assert "Impossible" in out and "M(K_s)" in out and "SEP*" in out


@pytest.mark.parametrize("argv", [
	["min-copies", "--overlap", "0.5", "--class", "mks", "--s", "0.25"],
	["min-copies", "--overlap", "0.5", "--class", "ms", "--s", "0.25", "--t", "0.5"],
	["min-copies", "--overlap", "nan", "--class", "ms", "--s", "0.25"],
	["min-copies", "--overlap", "0.5", "--class", "ms", "--s", "0.75"],
	["region", "--class", "ms", "--s", "0.5", "--grid", "1"],
	["bogus"],
])
def test_usage_errors(argv):
	assert main(argv) == EXIT_INPUT
