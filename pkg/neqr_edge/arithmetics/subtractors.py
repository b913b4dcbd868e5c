"""Two's-complement negation and subtraction built on the ripple-carry adder."""

from collections.abc import Iterable

from neqr_edge.arithmetics.adders import build_qrca
from neqr_edge.arithmetics.ladders import Direction, build_ladder_shift
from neqr_edge.arithmetics.models import AdderLayout, RegisterRef, check_disjoint
from neqr_edge.errors import LayoutError
from neqr_edge.simulators.models import Circuit, Control, required_width


def build_s2c(target: RegisterRef, controls: Iterable[Control] = (), num_qubits: int | None = None) -> Circuit:
    """|y> -> |-y mod 2^q>: flip every bit, then increment.

    The increment is a true modular +1 (multi-controlled ladder); a bare CNOT chain from the
    LSB does not carry correctly.
    """
    if target.width == 0:
        raise LayoutError(f"Register {target.name} is empty")
    controls = tuple(controls)
    width = num_qubits or required_width(*target.qubits, *(qubit for qubit, _ in controls))
    circuit = Circuit(num_qubits=width, name=f"s2c_{target.name}")
    for qubit in target.qubits:
        circuit.x(qubit, controls=controls)
    circuit.extend(build_ladder_shift(target, Direction.UP, controls=controls, num_qubits=width))
    return circuit


def build_subtractor(
    a: RegisterRef,
    b: RegisterRef,
    carry_in: int,
    carry_out: int,
    num_qubits: int | None = None,
) -> Circuit:
    """|x>|y> -> |x>|x - y mod 2^q>.

    ``carry_in`` is returned clean; ``carry_out`` is left XORed with the adder's final carry.
    """
    layout = AdderLayout(a=a, b=b, carry_in=carry_in, carry_out=carry_out)
    width = num_qubits or required_width(*a.qubits, *b.qubits, carry_in, carry_out)
    circuit = Circuit(num_qubits=width, name=f"sub_{a.name}_{b.name}")
    circuit.extend(build_s2c(b, num_qubits=width))
    circuit.extend(build_qrca(layout, num_qubits=width))
    return circuit


def build_abs_subtractor(
    a: RegisterRef,
    b: RegisterRef,
    sign: int,
    carry: int,
    num_qubits: int | None = None,
) -> Circuit:
    """|alpha>|beta>|0>_sign -> |alpha>||alpha - beta|>|[alpha < beta]>_sign.

    ``beta`` and ``sign`` together form a (q+1)-bit two's-complement register: negate it,
    add ``alpha`` with the sign qubit as carry-out, then negate the low q bits again when the
    sign is set. ``carry`` is an ancilla returned in |0>.
    """
    if a.width != b.width:
        raise LayoutError(f"Width mismatch: {a.name}={a.width}, {b.name}={b.width}")
    check_disjoint(a.qubits, b.qubits, (sign,), (carry,))
    width = num_qubits or required_width(*a.qubits, *b.qubits, sign, carry)
    signed = RegisterRef(name=f"{b.name}_signed", qubits=(*b.qubits, sign))
    circuit = Circuit(num_qubits=width, name=f"abs_sub_{a.name}_{b.name}")
    circuit.extend(build_s2c(signed, num_qubits=width))
    circuit.extend(build_qrca(AdderLayout(a=a, b=b, carry_in=carry, carry_out=sign), num_qubits=width))
    circuit.extend(build_s2c(b, controls=[(sign, 1)], num_qubits=width))
    return circuit
