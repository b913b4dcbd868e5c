"""Cuccaro ripple-carry adder blocks.

MAJ computes the carry in place on the ``a`` wire; UMA undoes MAJ and leaves the sum bit on
the ``b`` wire. A chain of n MAJ, one CX onto the carry-out, and n UMA adds in place with a
single carry ancilla.
"""

from neqr_edge.arithmetics.models import AdderLayout, check_disjoint
from neqr_edge.simulators.models import Circuit, required_width


def build_maj(c: int, b: int, a: int, num_qubits: int | None = None) -> Circuit:
    """|c, b, a> -> |c xor a, b xor a, MAJ(a, b, c)>."""
    check_disjoint((c,), (b,), (a,))
    circuit = Circuit(num_qubits=num_qubits or required_width(c, b, a), name="maj")
    circuit.x(b, controls=[(a, 1)])
    circuit.x(c, controls=[(a, 1)])
    circuit.x(a, controls=[(c, 1), (b, 1)])
    return circuit


def build_uma(c: int, b: int, a: int, num_qubits: int | None = None) -> Circuit:
    """Inverse of MAJ that leaves s = a xor b xor c on the ``b`` wire."""
    check_disjoint((c,), (b,), (a,))
    circuit = Circuit(num_qubits=num_qubits or required_width(c, b, a), name="uma")
    circuit.x(a, controls=[(c, 1), (b, 1)])
    circuit.x(c, controls=[(a, 1)])
    circuit.x(b, controls=[(c, 1)])
    return circuit


def build_qrca(layout: AdderLayout, num_qubits: int | None = None) -> Circuit:
    """|a>|b>|0>|z> -> |a>|a + b mod 2^n>|0>|z xor carry>."""
    a, b = layout.a.qubits, layout.b.qubits
    width = num_qubits or required_width(*a, *b, layout.carry_in, layout.carry_out)
    circuit = Circuit(num_qubits=width, name=f"qrca{layout.width}")
    carries = (layout.carry_in, *a[:-1])
    for carry, b_i, a_i in zip(carries, b, a, strict=True):
        circuit.extend(build_maj(carry, b_i, a_i, num_qubits=width))
    circuit.x(layout.carry_out, controls=[(a[-1], 1)])
    for carry, b_i, a_i in reversed(list(zip(carries, b, a, strict=True))):
        circuit.extend(build_uma(carry, b_i, a_i, num_qubits=width))
    return circuit
