"""Threshold partitioning: phase-kickback partitioner, adder-based comparator and a brute-force classifier."""

from collections.abc import Iterable

from neqr_edge.arithmetics.adders import build_qrca
from neqr_edge.arithmetics.models import AdderLayout, RegisterRef, check_disjoint
from neqr_edge.errors import LayoutError
from neqr_edge.simulators.models import Circuit, Control, required_width
from neqr_edge.thresholds.models import PartitionSets, Threshold
from neqr_edge.thresholds.oracles import build_ftpo


def build_qpa(
    threshold: Threshold,
    grad: RegisterRef,
    ancilla: int,
    extra_controls: Iterable[Control] = (),
    num_qubits: int | None = None,
) -> Circuit:
    """|0>_anc |s> -> |[s > T]>_anc |s>.

    H on the ancilla, the threshold oracle controlled by the ancilla, H again. ``extra_controls``
    narrow the oracle to one branch; elsewhere the two H gates cancel and the ancilla is untouched.
    """
    extra_controls = tuple(extra_controls)
    if ancilla in grad.qubits:
        raise LayoutError(f"Ancilla q{ancilla} overlaps register {grad.name}")
    check_disjoint(grad.qubits, (ancilla,), tuple(qubit for qubit, _ in extra_controls))
    width = num_qubits or required_width(ancilla, *grad.qubits, *(qubit for qubit, _ in extra_controls))
    circuit = Circuit(num_qubits=width, name=f"qpa_{threshold.bits}")
    circuit.h(ancilla)
    circuit.extend(build_ftpo(threshold, grad, controls=((ancilla, 1), *extra_controls), num_qubits=width))
    circuit.h(ancilla)
    return circuit


def build_qrca_comparator(
    threshold: Threshold,
    grad: RegisterRef,
    t_reg: RegisterRef,
    sign_out: int,
    carry: int,
    num_qubits: int | None = None,
) -> Circuit:
    """Write T - s into the (q+1)-bit register t_reg||sign_out, so sign_out = [s > T].

    Uses T - s = ~(~T + s): load ~T, add s with the ripple-carry adder, complement again.
    ``grad`` and ``carry`` come back unchanged; ``t_reg`` keeps the low bits of T - s.
    """
    if grad.width != threshold.width or t_reg.width != threshold.width:
        raise LayoutError(
            f"Comparator widths do not match: T={threshold.width}, {grad.name}={grad.width}, {t_reg.name}={t_reg.width}"
        )
    check_disjoint(grad.qubits, t_reg.qubits, (sign_out,), (carry,))
    width = num_qubits or required_width(*grad.qubits, *t_reg.qubits, sign_out, carry)
    circuit = Circuit(num_qubits=width, name=f"cmp_{threshold.bits}")
    for i, qubit in enumerate(t_reg.qubits):
        if not threshold.bit(i):
            circuit.x(qubit)
    circuit.x(sign_out)
    circuit.extend(build_qrca(AdderLayout(a=grad, b=t_reg, carry_in=carry, carry_out=sign_out), num_qubits=width))
    for qubit in (*t_reg.qubits, sign_out):
        circuit.x(qubit)
    return circuit


def classify_bruteforce(s: int, threshold: Threshold) -> bool:
    if not 0 <= s < 1 << threshold.width:
        raise ValueError(f"Magnitude {s} outside [0, {1 << threshold.width})")
    return s > threshold.value


def partition_sets(threshold: Threshold) -> PartitionSets:
    values = range(1 << threshold.width)
    return PartitionSets(
        above=frozenset(s for s in values if s > threshold.value),
        at_or_below=frozenset(s for s in values if s <= threshold.value),
    )
