from collections.abc import Iterable

from neqr_edge.arithmetics.models import RegisterRef
from neqr_edge.errors import LayoutError
from neqr_edge.simulators.models import Circuit, Control, required_width
from neqr_edge.thresholds.models import Threshold


def build_ftpo(
    threshold: Threshold,
    target: RegisterRef,
    controls: Iterable[Control] = (),
    num_qubits: int | None = None,
) -> Circuit:
    """Phase oracle flipping the sign of exactly the basis states s > T.

    Walks T from the MSB. Each zero bit t_i marks the prefix class "bits above i agree with T,
    bit i is 1" with one Z on qubit i controlled by the higher qubits, then flips qubit i so the
    higher-bit controls keep matching T's prefix. The flipped qubits are restored at the end.
    ``controls`` are added to the Z gates only; the X gates cancel in pairs.
    """
    if target.width != threshold.width:
        raise LayoutError(f"Threshold width {threshold.width} does not match register {target.name}={target.width}")
    controls = tuple(controls)
    control_qubits = [qubit for qubit, _ in controls]
    if set(control_qubits).intersection(target.qubits):
        raise LayoutError(f"Oracle control {control_qubits} lies inside register {target.name}")

    width = num_qubits or required_width(*target.qubits, *control_qubits)
    circuit = Circuit(num_qubits=width, name=f"ftpo_{threshold.bits}")
    flipped: list[int] = []
    for i in reversed(range(threshold.width)):
        if threshold.bit(i):
            continue
        higher = tuple((qubit, 1) for qubit in reversed(target.qubits[i + 1 :]))
        circuit.z(target.qubits[i], controls=higher + controls)
        circuit.x(target.qubits[i])
        flipped.append(target.qubits[i])
    for qubit in flipped:
        circuit.x(qubit)
    return circuit
