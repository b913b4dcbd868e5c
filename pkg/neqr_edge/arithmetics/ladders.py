from collections.abc import Iterable
from enum import Enum

from neqr_edge.arithmetics.models import RegisterRef
from neqr_edge.errors import LayoutError
from neqr_edge.simulators.models import Circuit, Control, required_width


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"


def build_ladder_shift(
    pos: RegisterRef,
    direction: Direction = Direction.UP,
    controls: Iterable[Control] = (),
    num_qubits: int | None = None,
) -> Circuit:
    """|x> -> |x +/- 1 mod 2^n>, optionally only on the branch where ``controls`` fire.

    Up is the standard increment: from the MSB down, flip bit i when every lower bit is 1.
    Down is the same gate list reversed.
    """
    if pos.width == 0:
        raise LayoutError(f"Register {pos.name} is empty")
    controls = tuple(controls)
    control_qubits = [qubit for qubit, _ in controls]
    if set(control_qubits).intersection(pos.qubits):
        raise LayoutError(f"Ladder control {control_qubits} lies inside register {pos.name}")
    width = num_qubits or required_width(*pos.qubits, *control_qubits)
    circuit = Circuit(num_qubits=width, name=f"ladder_{Direction(direction).value}_{pos.name}")
    for i in reversed(range(pos.width)):
        lower = tuple((qubit, 1) for qubit in pos.qubits[:i])
        circuit.x(pos.qubits[i], controls=lower + controls)
    if Direction(direction) is Direction.DOWN:
        return Circuit(num_qubits=width, gates=list(reversed(circuit.gates)), name=circuit.name)
    return circuit
