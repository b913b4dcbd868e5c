from pydantic import BaseModel, ConfigDict, Field, model_validator

from neqr_edge.errors import LayoutError


class RegisterRef(BaseModel):
    """Named, ordered qubit range; ``qubits[0]`` is the least-significant bit."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Register name, e.g. 'x', 'I1', 'grad'")
    qubits: tuple[int, ...] = Field(..., description="Qubit indices, LSB first")

    @model_validator(mode="after")
    def check_qubits(self) -> "RegisterRef":
        if any(qubit < 0 for qubit in self.qubits):
            raise LayoutError(f"Register {self.name} has a negative qubit index: {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise LayoutError(f"Register {self.name} repeats a qubit: {self.qubits}")
        return self

    @property
    def width(self) -> int:
        return len(self.qubits)

    @property
    def msb(self) -> int:
        return self.qubits[-1]

    def slice(self, start: int, stop: int | None = None, name: str | None = None) -> "RegisterRef":
        return RegisterRef(name=name or f"{self.name}[{start}:{stop}]", qubits=self.qubits[start:stop])

    @classmethod
    def span(cls, name: str, start: int, width: int) -> "RegisterRef":
        return cls(name=name, qubits=tuple(range(start, start + width)))


class AdderLayout(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: RegisterRef = Field(..., description="Addend, preserved")
    b: RegisterRef = Field(..., description="Accumulator, receives a + b mod 2^n")
    carry_in: int = Field(..., ge=0, description="Carry ancilla, supplied and returned in |0>")
    carry_out: int = Field(..., ge=0, description="XORed with the final carry")

    @model_validator(mode="after")
    def check_layout(self) -> "AdderLayout":
        if self.a.width != self.b.width:
            raise LayoutError(f"Adder width mismatch: {self.a.name}={self.a.width}, {self.b.name}={self.b.width}")
        if self.a.width == 0:
            raise LayoutError("Adder registers must be non-empty")
        check_disjoint(self.a.qubits, self.b.qubits, (self.carry_in,), (self.carry_out,))
        return self

    @property
    def width(self) -> int:
        return self.a.width


def check_disjoint(*groups: tuple[int, ...]) -> None:
    seen: set[int] = set()
    for group in groups:
        overlap = seen.intersection(group)
        if overlap:
            raise LayoutError(f"Qubits used twice: {sorted(overlap)}")
        seen.update(group)
