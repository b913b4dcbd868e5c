"""Qubit layout of the edge-detection register file.

Registers are packed little-endian in this order: x, y, I1, I2, grad (MSB is the sign),
carry, a1, a2, out_x, out_y, out, and an optional second gradient register for the y pass.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from neqr_edge.arithmetics.models import RegisterRef, check_disjoint
from neqr_edge.errors import CapacityError
from neqr_edge.simulators.statevectors import Settings as SimulatorSettings
from neqr_edge.simulators.statevectors import get_simulator_settings

# carry, a1, a2, out_x, out_y, out plus the sign bit of grad
LAYOUT_CONSTANT = 7


class Axis(str, Enum):
    X = "x"
    Y = "y"


class RegisterLayout(BaseModel):
    model_config = ConfigDict(frozen=True)

    side_log2: int = Field(..., ge=1, description="n")
    bit_depth: int = Field(..., ge=1, description="q")
    x: RegisterRef = Field(..., description="Column position, n qubits")
    y: RegisterRef = Field(..., description="Row position, n qubits")
    i1: RegisterRef = Field(..., description="Intensity at the current position, q qubits")
    i2: RegisterRef = Field(..., description="Intensity of the neighbour, q qubits")
    grad: RegisterRef = Field(..., description="|dI| in the low q qubits, sign in the MSB")
    carry: int = Field(..., description="Adder carry ancilla")
    a1: int = Field(..., description="Shift ancilla for the x pass")
    a2: int = Field(..., description="Shift ancilla for the y pass")
    out_x: int = Field(..., description="Edge flag of the x pass")
    out_y: int = Field(..., description="Edge flag of the y pass")
    out: int = Field(..., description="out_x OR out_y")
    grad_y: RegisterRef | None = Field(default=None, description="Separate gradient register for the y pass")

    @model_validator(mode="after")
    def check_registers(self) -> "RegisterLayout":
        groups = [
            self.x.qubits,
            self.y.qubits,
            self.i1.qubits,
            self.i2.qubits,
            self.grad.qubits,
            (self.carry, self.a1, self.a2, self.out_x, self.out_y, self.out),
        ]
        if self.grad_y is not None:
            groups.append(self.grad_y.qubits)
        check_disjoint(*groups)
        return self

    @property
    def num_qubits(self) -> int:
        return qubits_required(self.side_log2, self.bit_depth, second_gradient=self.grad_y is not None)

    @property
    def sign(self) -> int:
        return self.grad.msb

    def position(self, axis: Axis) -> RegisterRef:
        return self.x if Axis(axis) is Axis.X else self.y

    def gradient(self, axis: Axis) -> RegisterRef:
        if Axis(axis) is Axis.Y and self.grad_y is not None:
            return self.grad_y
        return self.grad

    def magnitude(self, axis: Axis) -> RegisterRef:
        gradient = self.gradient(axis)
        return gradient.slice(0, self.bit_depth, name=f"{gradient.name}_mag")

    def sign_of(self, axis: Axis) -> int:
        return self.gradient(axis).msb

    def ancilla(self, axis: Axis) -> int:
        return self.a1 if Axis(axis) is Axis.X else self.a2

    def output(self, axis: Axis) -> int:
        return self.out_x if Axis(axis) is Axis.X else self.out_y


def qubits_required(side_log2: int, bit_depth: int, second_gradient: bool = False) -> int:
    return 2 * side_log2 + 3 * bit_depth + LAYOUT_CONSTANT + (bit_depth + 1 if second_gradient else 0)


def build_layout(
    side_log2: int,
    bit_depth: int,
    second_gradient: bool = False,
    settings: SimulatorSettings | None = None,
) -> RegisterLayout:
    """Pin every register to qubit indices, refusing layouts over the simulator budget."""
    if settings is None:
        settings = get_simulator_settings()
    required = qubits_required(side_log2, bit_depth, second_gradient)
    if required > settings.simulator_max_qubits:
        raise CapacityError(
            f"Image needs {required} qubits (n={side_log2}, q={bit_depth}), "
            f"budget is {settings.simulator_max_qubits}; reduce the bit depth or the image size"
        )

    n, q = side_log2, bit_depth
    cursor = 0

    def take(name: str, width: int) -> RegisterRef:
        nonlocal cursor
        register = RegisterRef.span(name, cursor, width)
        cursor += width
        return register

    x = take("x", n)
    y = take("y", n)
    i1 = take("I1", q)
    i2 = take("I2", q)
    grad = take("grad", q + 1)
    carry, a1, a2, out_x, out_y, out = take("flags", 6).qubits
    grad_y = take("grad_y", q + 1) if second_gradient else None
    return RegisterLayout(
        side_log2=n,
        bit_depth=q,
        x=x,
        y=y,
        i1=i1,
        i2=i2,
        grad=grad,
        carry=carry,
        a1=a1,
        a2=a2,
        out_x=out_x,
        out_y=out_y,
        out=out,
        grad_y=grad_y,
    )
