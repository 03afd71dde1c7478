import pytest

from src.discrimination.class_parameter import ClassParameter
from src.errors import InvalidParameterError
from src.oracle.scan import scan_min_copies


def test_scan_examples():
	assert scan_min_copies(0.5, ClassParameter.ms(0.5), 100) == 1
	assert scan_min_copies(0.9, ClassParameter.mks(0.25), 100) == 11
	assert scan_min_copies(0.9, ClassParameter.ms(0.25), 10) is None


def test_scan_finds_nothing_for_povms():
	assert scan_min_copies(0.5, ClassParameter.ms(0.0), 10**6) is None
	assert scan_min_copies(0.999999, ClassParameter.ms(0.0), 1000) is None


def test_scan_orthogonal_overlap():
	assert scan_min_copies(0.0, ClassParameter.ms(0.0), 5) == 1


@pytest.mark.parametrize("c,cap", [(1.0, 10), (-0.1, 10), (0.5, 0)])
def test_scan_rejects_bad_input(c, cap):
	with pytest.raises(InvalidParameterError):
		scan_min_copies(c, ClassParameter.ms(0.5), cap)
