"""
Exception hierarchy for the GPTDiscrim library.

Every error raised by the library derives from GptdError. GptdError is not a
ValueError, so pydantic validators let it through unwrapped.
"""


class GptdError(Exception):
	"""Base class for all GPTDiscrim errors."""


class DimensionError(GptdError):
	"""Shapes or subsystem dimensions do not fit together."""


class NotHermitianError(GptdError):
	"""A matrix that must be Hermitian is not, beyond tolerance."""


class ZeroVectorError(GptdError):
	"""An operation received the zero vector where it is not allowed."""


class KindMismatchError(GptdError):
	"""Operands of different kinds (operator vs. vector) were combined."""


class InvalidParameterError(GptdError):
	"""A numerical parameter lies outside its admissible range."""


class IdenticalStatesError(GptdError):
	"""The two candidate states coincide (x = y = 1) and cannot be discriminated."""


class ConditionNotSatisfiedError(GptdError):
	"""The sufficient condition of the requested class does not hold.

	This is not a claim of impossibility: the conditions are only sufficient.
	"""


class CertificateMismatchError(GptdError):
	"""The certificate variant does not belong to the requested cone."""


class MissingCertificateError(GptdError):
	"""Class membership was requested without a certificate."""


class ZeroParameterError(GptdError):
	"""The class parameter is zero, so no finite number of copies works."""


class SearchCapExceededError(GptdError):
	"""The minimal copy number exceeds the search cap."""


class StateFileError(GptdError):
	"""A state or measurement file is malformed."""


class VerificationFailedError(GptdError):
	"""A freshly built measurement failed its own verification.

	Attributes:
		report: The verification report that failed.
	"""

	def __init__(self, message: str, report=None):
		super().__init__(message)
		self.report = report
