"""NEQR encoding: intensities stored in basis qubits entangled with the position registers."""

from collections.abc import Iterable

from neqr_edge.arithmetics.models import RegisterRef, check_disjoint
from neqr_edge.errors import LayoutError
from neqr_edge.images.layouts import RegisterLayout
from neqr_edge.images.models import GrayImage
from neqr_edge.loggers import get_logger
from neqr_edge.simulators.models import Circuit, Control, required_width

logger = get_logger(__name__)


def build_position_superposition(layout: RegisterLayout) -> Circuit:
    """H on every x and y qubit: uniform superposition over all 2^(2n) positions."""
    circuit = Circuit(num_qubits=layout.num_qubits, name="positions")
    for qubit in (*layout.x.qubits, *layout.y.qubits):
        circuit.h(qubit)
    return circuit


def _position_controls(register: RegisterRef, value: int) -> tuple[Control, ...]:
    return tuple((qubit, (value >> k) & 1) for k, qubit in enumerate(register.qubits))


def build_neqr_oracle(
    image: GrayImage,
    x: RegisterRef,
    y: RegisterRef,
    target: RegisterRef,
    controls: Iterable[Control] = (),
    num_qubits: int | None = None,
) -> Circuit:
    """|x>|y>|0> -> |x>|y>|I(x, y)> for every position at once.

    One X per set intensity bit, controlled on the full position pattern with negative
    controls for zero bits. ``controls`` restrict the whole oracle to one branch.
    """
    if x.width != image.side_log2 or y.width != image.side_log2:
        raise LayoutError(f"Position registers ({x.width}, {y.width}) do not match n={image.side_log2}")
    if target.width != image.bit_depth:
        raise LayoutError(f"Target {target.name} has {target.width} qubits, image needs q={image.bit_depth}")
    controls = tuple(controls)
    control_qubits = tuple(qubit for qubit, _ in controls)
    check_disjoint(x.qubits, y.qubits, target.qubits, control_qubits)

    width = num_qubits or required_width(*x.qubits, *y.qubits, *target.qubits, *control_qubits)
    circuit = Circuit(num_qubits=width, name=f"neqr_{target.name}")
    for row in range(image.side):
        row_controls = _position_controls(y, row)
        for col in range(image.side):
            value = image.intensity(col, row)
            if value == 0:
                continue
            pattern = _position_controls(x, col) + row_controls + controls
            for k, qubit in enumerate(target.qubits):
                if (value >> k) & 1:
                    circuit.x(qubit, controls=pattern)
    logger.debug(f"NEQR oracle on {target.name}: {len(circuit)} gates")
    return circuit


def build_neqr_inverse(
    image: GrayImage,
    x: RegisterRef,
    y: RegisterRef,
    target: RegisterRef,
    controls: Iterable[Control] = (),
    num_qubits: int | None = None,
) -> Circuit:
    return build_neqr_oracle(image, x, y, target, controls=controls, num_qubits=num_qubits).inverse()
