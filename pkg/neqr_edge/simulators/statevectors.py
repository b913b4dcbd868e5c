"""Dense statevector simulation.

Basis indices are little-endian: qubit ``k`` contributes ``2**k``. Gate kernels work on a
``(2,) * m`` view of the amplitude buffer, so a gate with ``k`` controls only touches the
``2**(m - k)`` amplitudes on its control branch and all updates happen in place.
"""

from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from pydantic_settings import BaseSettings, SettingsConfigDict

from neqr_edge.errors import CapacityError, LayoutError
from neqr_edge.loggers import get_logger
from neqr_edge.simulators.models import Circuit, Gate, GateKind

logger = get_logger(__name__)

SQRT1_2 = 1.0 / np.sqrt(2.0)


class Settings(BaseSettings):
    simulator_max_qubits: int = 28
    simulator_norm_atol: float = 1e-9

    model_config = SettingsConfigDict(
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
    )


@lru_cache
def get_simulator_settings() -> Settings:
    """Get simulator settings."""
    return Settings()


class StateVector:
    """2**num_qubits complex128 amplitudes over an m-qubit register file."""

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (1 << num_qubits,):
            raise LayoutError(f"Expected {1 << num_qubits} amplitudes for {num_qubits} qubits, got {amplitudes.shape}")
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex] | np.ndarray) -> "StateVector":
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        num_qubits = int(amplitudes.size).bit_length() - 1
        if num_qubits < 1 or amplitudes.size != 1 << num_qubits:
            raise LayoutError(f"Amplitude count {amplitudes.size} is not a power of two >= 2")
        return cls(num_qubits, amplitudes.copy())

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits}, norm={self.norm():.12f})"


def _check_capacity(num_qubits: int, settings: Settings | None) -> None:
    if settings is None:
        settings = get_simulator_settings()
    if not 1 <= num_qubits <= settings.simulator_max_qubits:
        raise CapacityError(f"{num_qubits} qubits outside supported range [1, {settings.simulator_max_qubits}]")


def new_zero_state(num_qubits: int, settings: Settings | None = None) -> StateVector:
    """Allocate |0...0> on ``num_qubits`` qubits."""
    return basis_state(num_qubits, 0, settings=settings)


def basis_state(num_qubits: int, index: int, settings: Settings | None = None) -> StateVector:
    _check_capacity(num_qubits, settings)
    if not 0 <= index < 1 << num_qubits:
        raise LayoutError(f"Basis index {index} out of range for {num_qubits} qubits")
    amplitudes = np.zeros(1 << num_qubits, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(num_qubits, amplitudes)


def _branch_views(state: StateVector, gate: Gate) -> tuple[np.ndarray, np.ndarray]:
    m = state.num_qubits
    psi = state.amplitudes.reshape((2,) * m)
    index: list[int | slice] = [slice(None)] * m
    for qubit, polarity in gate.controls:
        index[m - 1 - qubit] = polarity
    axis = m - 1 - gate.target
    # trailing Ellipsis keeps a 0-d view when every axis is fixed
    index[axis] = 0
    low = psi[(*index, Ellipsis)]
    index[axis] = 1
    high = psi[(*index, Ellipsis)]
    return low, high


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply ``gate`` to ``state`` in place and return it."""
    if max(gate.qubits) >= state.num_qubits:
        raise LayoutError(f"Gate {gate} out of range for {state.num_qubits} qubits")
    low, high = _branch_views(state, gate)
    if gate.kind is GateKind.X:
        swap = low.copy()
        low[...] = high
        high[...] = swap
    elif gate.kind is GateKind.Z:
        np.negative(high, out=high)
    elif gate.kind is GateKind.H:
        a = low.copy()
        b = high.copy()
        low[...] = (a + b) * SQRT1_2
        high[...] = (a - b) * SQRT1_2
    else:
        raise ValueError(f"Unsupported gate kind: {gate.kind}")
    return state


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply every gate of ``circuit`` in order, in place."""
    if circuit.num_qubits != state.num_qubits:
        raise LayoutError(f"Circuit width {circuit.num_qubits} does not match state width {state.num_qubits}")
    logger.debug(f"Applying {circuit.name}: {len(circuit)} gates on {state.num_qubits} qubits")
    for gate in circuit.gates:
        apply_gate(state, gate)
    return state


def enumerate_basis(state: StateVector, tol: float = 1e-9) -> list[tuple[int, complex]]:
    """All basis states with |amplitude| > tol, sorted by basis index."""
    if tol < 0:
        raise ValueError(f"Tolerance must be non-negative, got {tol}")
    indices = np.flatnonzero(np.abs(state.amplitudes) > tol)
    return [(int(i), complex(state.amplitudes[i])) for i in indices]


def permute_basis(circuit: Circuit, index: int) -> int:
    """Image of one computational-basis index under an X-family circuit."""
    for gate in circuit.gates:
        if gate.kind is not GateKind.X:
            raise LayoutError(f"permute_basis supports X-family gates only, found {gate}")
        if all((index >> qubit) & 1 == polarity for qubit, polarity in gate.controls):
            index ^= 1 << gate.target
    return index


def read_register(index: int, qubits: Sequence[int]) -> int:
    """Integer held by ``qubits`` (LSB first) in basis state ``index``."""
    return sum(((index >> qubit) & 1) << k for k, qubit in enumerate(qubits))


def write_register(index: int, qubits: Sequence[int], value: int) -> int:
    """Basis index with ``qubits`` (LSB first) overwritten by ``value``."""
    for k, qubit in enumerate(qubits):
        index = (index & ~(1 << qubit)) | (((value >> k) & 1) << qubit)
    return index


def _mask(qubits: Sequence[int]) -> int:
    mask = 0
    for qubit in qubits:
        mask |= 1 << qubit
    return mask


def nonzero_mass(state: StateVector, qubits: Sequence[int]) -> float:
    """Probability that at least one of ``qubits`` reads 1."""
    mask = _mask(qubits)
    indices = np.arange(state.dimension, dtype=np.int64)
    probabilities = np.abs(state.amplitudes) ** 2
    return float(probabilities[(indices & mask) != 0].sum())


def reset_qubits(state: StateVector, qubits: Sequence[int]) -> StateVector:
    """Rewrite amplitudes so that ``qubits`` read |0> on every branch, in place.

    Each amplitude moves to the index with ``qubits`` cleared. Branches that land on the same
    index are merged by probability and keep the phase of the lowest source index, so the
    norm is unchanged and the rewrite is exact whenever no two branches collide.
    """
    mask = _mask(qubits)
    amplitudes = state.amplitudes
    sources = np.flatnonzero(amplitudes != 0)
    targets = sources & ~mask
    probabilities = np.zeros(state.dimension, dtype=np.float64)
    np.add.at(probabilities, targets, np.abs(amplitudes[sources]) ** 2)
    unique_targets, first, counts = np.unique(targets, return_index=True, return_counts=True)
    leading = amplitudes[sources[first]]
    merged = np.zeros(state.dimension, dtype=np.complex128)
    merged[unique_targets] = np.where(
        counts == 1,
        leading,
        np.sqrt(probabilities[unique_targets]) * (leading / np.abs(leading)),
    )
    collisions = sources.size - unique_targets.size
    if collisions:
        logger.warning(f"Merged {collisions} colliding branches while clearing qubits {list(qubits)}")
    amplitudes[...] = merged
    return state
