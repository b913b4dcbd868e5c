"""Circuit builders for the edge-detection steps of one axis.

All stages act on the full register file of ``layout``. After the neighbourhood stage the
axis register points at the neighbour; the reset stage moves it back.
"""

from collections.abc import Iterable

from neqr_edge.arithmetics.ladders import Direction, build_ladder_shift
from neqr_edge.arithmetics.models import RegisterRef
from neqr_edge.arithmetics.subtractors import build_abs_subtractor
from neqr_edge.images.layouts import Axis, RegisterLayout
from neqr_edge.images.models import GrayImage
from neqr_edge.images.neqrs import build_neqr_inverse, build_neqr_oracle
from neqr_edge.simulators.models import Circuit, Control
from neqr_edge.thresholds.models import Threshold
from neqr_edge.thresholds.partitioners import build_qpa


def _encode(
    image: GrayImage,
    layout: RegisterLayout,
    target: RegisterRef,
    controls: Iterable[Control] = (),
    inverse: bool = False,
) -> Circuit:
    builder = build_neqr_inverse if inverse else build_neqr_oracle
    return builder(image, layout.x, layout.y, target, controls=controls, num_qubits=layout.num_qubits)


def build_neighborhood_stage(
    image: GrayImage,
    layout: RegisterLayout,
    axis: Axis,
    encode_source: bool = True,
) -> Circuit:
    """NEQR into I1, step the axis register forward, NEQR into I2.

    With ``encode_source=False`` I1 is assumed to hold I(position) already.
    """
    circuit = Circuit(num_qubits=layout.num_qubits, name=f"neighborhood_{Axis(axis).value}")
    if encode_source:
        circuit.extend(_encode(image, layout, layout.i1))
    circuit.extend(build_ladder_shift(layout.position(axis), Direction.UP, num_qubits=layout.num_qubits))
    circuit.extend(_encode(image, layout, layout.i2))
    return circuit


def build_gradient_stage(layout: RegisterLayout, axis: Axis = Axis.X) -> Circuit:
    """grad <- |I2 - I1|, sign <- [I2 < I1]; I1 and I2 are preserved."""
    magnitude = layout.magnitude(axis)
    circuit = Circuit(num_qubits=layout.num_qubits, name=f"gradient_{Axis(axis).value}")
    for source, copy in zip(layout.i1.qubits, magnitude.qubits, strict=True):
        circuit.x(copy, controls=[(source, 1)])
    circuit.extend(
        build_abs_subtractor(
            a=layout.i2,
            b=magnitude,
            sign=layout.sign_of(axis),
            carry=layout.carry,
            num_qubits=layout.num_qubits,
        )
    )
    return circuit


def build_reset_stage(image: GrayImage, layout: RegisterLayout, axis: Axis) -> Circuit:
    """Uncompute I2 at the neighbour position, then step the axis register back."""
    circuit = Circuit(num_qubits=layout.num_qubits, name=f"reset_{Axis(axis).value}")
    circuit.extend(_encode(image, layout, layout.i2, inverse=True))
    circuit.extend(build_ladder_shift(layout.position(axis), Direction.DOWN, num_qubits=layout.num_qubits))
    return circuit


def build_shift_stage(image: GrayImage, layout: RegisterLayout, axis: Axis) -> Circuit:
    """Duplicate every sign=1 branch and move one copy onto the darker neighbour.

    On sign=1 the ancilla is set and a controlled H splits the sign qubit, leaving
    (|sign=0, a=1> - |sign=1, a=1>)/sqrt(2). The sign=1 half gets I1 re-encoded at position + 1.
    """
    sign = layout.sign_of(axis)
    ancilla = layout.ancilla(axis)
    on_sign = [(sign, 1)]
    circuit = Circuit(num_qubits=layout.num_qubits, name=f"shift_{Axis(axis).value}")
    circuit.x(ancilla, controls=on_sign)
    circuit.h(sign, controls=[(ancilla, 1)])
    circuit.extend(_encode(image, layout, layout.i1, controls=on_sign, inverse=True))
    circuit.extend(
        build_ladder_shift(layout.position(axis), Direction.UP, controls=on_sign, num_qubits=layout.num_qubits)
    )
    circuit.extend(_encode(image, layout, layout.i1, controls=on_sign))
    return circuit


def build_threshold_stage(layout: RegisterLayout, threshold: Threshold, axis: Axis) -> Circuit:
    """out_axis <- [|dI| > T], then the same predicate XORed again on the in-place duplicate.

    The duplicate left behind by the shift stage is the (sign=0, a=1) branch; the second
    partitioner pass is controlled on that pattern so its edge flag returns to 0.
    """
    magnitude = layout.magnitude(axis)
    output = layout.output(axis)
    in_place_duplicate = ((layout.sign_of(axis), 0), (layout.ancilla(axis), 1))
    circuit = Circuit(num_qubits=layout.num_qubits, name=f"threshold_{Axis(axis).value}")
    circuit.extend(build_qpa(threshold, magnitude, output, num_qubits=layout.num_qubits))
    circuit.extend(
        build_qpa(threshold, magnitude, output, extra_controls=in_place_duplicate, num_qubits=layout.num_qubits)
    )
    return circuit


def build_or_stage(layout: RegisterLayout) -> Circuit:
    """out <- out_x OR out_y by De Morgan around a Toffoli."""
    circuit = Circuit(num_qubits=layout.num_qubits, name="or")
    circuit.x(layout.out_x)
    circuit.x(layout.out_y)
    circuit.x(layout.out, controls=[(layout.out_x, 1), (layout.out_y, 1)])
    circuit.x(layout.out)
    circuit.x(layout.out_x)
    circuit.x(layout.out_y)
    return circuit
