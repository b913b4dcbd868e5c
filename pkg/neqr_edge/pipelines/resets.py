"""Register-clearing strategies.

The unitary strategy uncomputes with inverse circuits. The hybrid strategy rewrites
amplitudes directly, as a classical simulation shortcut, and is only available here.
"""

from abc import ABC, abstractmethod

from neqr_edge.arithmetics.ladders import Direction, build_ladder_shift
from neqr_edge.images.layouts import Axis, RegisterLayout
from neqr_edge.images.models import GrayImage
from neqr_edge.loggers import get_logger
from neqr_edge.pipelines.models import ResetStrategy
from neqr_edge.pipelines.stages import build_reset_stage
from neqr_edge.simulators.models import Circuit
from neqr_edge.simulators.statevectors import StateVector, apply_circuit, reset_qubits

logger = get_logger(__name__)


class BaseResetter(ABC):
    """Abstract base resetter."""

    strategy: ResetStrategy
    second_gradient: bool = False

    @abstractmethod
    def reset_neighbour(self, state: StateVector, image: GrayImage, layout: RegisterLayout, axis: Axis) -> Circuit:
        """Return I2 to |0> and step the axis register back to the source pixel.

        Returns:
            The gates that were simulated, for resource accounting.
        """
        raise NotImplementedError

    @abstractmethod
    def clear_between_axes(self, state: StateVector, layout: RegisterLayout) -> Circuit:
        """Make the registers shared by both passes of a composite run usable for the y pass."""
        raise NotImplementedError


class UnitaryResetter(BaseResetter):
    strategy = ResetStrategy.UNITARY
    second_gradient = True

    def reset_neighbour(self, state: StateVector, image: GrayImage, layout: RegisterLayout, axis: Axis) -> Circuit:
        circuit = build_reset_stage(image, layout, axis)
        apply_circuit(state, circuit)
        return circuit

    def clear_between_axes(self, state: StateVector, layout: RegisterLayout) -> Circuit:
        # the y pass writes its own gradient register; nothing shared needs clearing
        return Circuit(num_qubits=layout.num_qubits, name="clear_between_axes")


class HybridResetter(BaseResetter):
    strategy = ResetStrategy.HYBRID

    def reset_neighbour(self, state: StateVector, image: GrayImage, layout: RegisterLayout, axis: Axis) -> Circuit:
        reset_qubits(state, layout.i2.qubits)
        circuit = build_ladder_shift(layout.position(axis), Direction.DOWN, num_qubits=layout.num_qubits)
        apply_circuit(state, circuit)
        return circuit

    def clear_between_axes(self, state: StateVector, layout: RegisterLayout) -> Circuit:
        qubits = (*layout.grad.qubits, *layout.i2.qubits, layout.carry, layout.a1)
        logger.debug(f"Clearing qubits {list(qubits)} before the y pass")
        reset_qubits(state, qubits)
        return Circuit(num_qubits=layout.num_qubits, name="clear_between_axes")


def get_resetter(strategy: ResetStrategy) -> BaseResetter:
    if strategy == ResetStrategy.UNITARY:
        return UnitaryResetter()
    elif strategy == ResetStrategy.HYBRID:
        return HybridResetter()
    else:
        raise ValueError(f"Unknown reset strategy: {strategy}")
