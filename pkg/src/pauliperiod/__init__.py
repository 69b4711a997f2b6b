"""Pauli periodicity of Clifford circuits and the hierarchy level of their
controlled versions."""

from .circuit import Circuit, Gate, controlled, parse, serialize, to_exact, to_tableau
from .errors import PauliPeriodError
from .exact import ExactUnitary, RingElem
from .f2linalg import F2Matrix, nilpotency_index, two_power_order
from .families import brickwork_cnot, jordan_cnot_string, sch
from .hierarchy import exact_level, is_in_level, verify_controlled_jump
from .pauli import CliffordTableau, PauliString, pauli_periodicity, predicted_cu_level

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CliffordTableau",
    "ExactUnitary",
    "F2Matrix",
    "Gate",
    "PauliPeriodError",
    "PauliString",
    "RingElem",
    "brickwork_cnot",
    "controlled",
    "exact_level",
    "is_in_level",
    "jordan_cnot_string",
    "nilpotency_index",
    "parse",
    "pauli_periodicity",
    "predicted_cu_level",
    "sch",
    "serialize",
    "to_exact",
    "to_tableau",
    "two_power_order",
    "verify_controlled_jump",
]
