"""
Step Records and Decisions
Per-step diagnostic rows and the test's decision outcome
"""

from dataclasses import asdict, dataclass
from typing import Dict, Union

STEP_RECORD_FIELDS = ["t", "phi", "weight", "psi_bar", "v_hat", "lower_bound", "rejected"]


@dataclass(frozen=True, slots=True)
class StepRecord:
    """Diagnostic row emitted after observation t is consumed"""
    t: int
    phi: float
    weight: float
    psi_bar: float
    v_hat: float
    lower_bound: float
    rejected: bool

    def to_row(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(frozen=True, slots=True)
class Continue:
    """The test has not rejected"""

    @property
    def rejected(self) -> bool:
        return False


@dataclass(frozen=True, slots=True)
class Rejected:
    """The test rejected at observation index `at`"""
    at: int

    @property
    def rejected(self) -> bool:
        return True


Decision = Union[Continue, Rejected]
