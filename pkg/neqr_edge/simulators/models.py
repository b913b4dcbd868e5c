from collections.abc import Iterable
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from neqr_edge.errors import LayoutError

Control = tuple[int, int]


class GateKind(str, Enum):
    X = "X"
    H = "H"
    Z = "Z"


class Gate(BaseModel):
    """A single-target gate with any number of positive (1) or negative (0) controls.

    Every supported kind is self-inverse, with or without controls.
    """

    model_config = ConfigDict(frozen=True)

    kind: GateKind = Field(..., description="Single-qubit operation applied to the target")
    target: int = Field(..., ge=0, description="Target qubit index")
    controls: tuple[Control, ...] = Field(
        default=(),
        description="(qubit, polarity) pairs; polarity 1 fires on |1>, polarity 0 fires on |0>",
    )

    @model_validator(mode="after")
    def check_qubits(self) -> "Gate":
        qubits = [qubit for qubit, _ in self.controls]
        if any(qubit < 0 for qubit in qubits):
            raise LayoutError(f"Negative control index in {self.controls}")
        if any(polarity not in (0, 1) for _, polarity in self.controls):
            raise LayoutError(f"Control polarity must be 0 or 1: {self.controls}")
        if len(set(qubits)) != len(qubits):
            raise LayoutError(f"Duplicate control qubits: {qubits}")
        if self.target in qubits:
            raise LayoutError(f"Target {self.target} is also a control")
        return self

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target, *(qubit for qubit, _ in self.controls))

    @property
    def arity(self) -> int:
        return len(self.controls)

    def __str__(self) -> str:
        if not self.controls:
            return f"{self.kind.value} q{self.target}"
        rendered = ",".join(f"q{qubit}" if polarity else f"~q{qubit}" for qubit, polarity in self.controls)
        return f"{'C' * self.arity}{self.kind.value} q{self.target} ctrl[{rendered}]"


class Circuit(BaseModel):
    num_qubits: int = Field(..., ge=1, description="Width of the register file the circuit acts on")
    gates: list[Gate] = Field(default_factory=list, description="Gates in application order")
    name: str = Field(default="circuit", description="Label used in logs and listings")

    @model_validator(mode="after")
    def check_width(self) -> "Circuit":
        for gate in self.gates:
            self._check_gate(gate)
        return self

    def _check_gate(self, gate: Gate) -> None:
        if max(gate.qubits) >= self.num_qubits:
            raise LayoutError(f"Gate {gate} exceeds circuit width {self.num_qubits}")

    def __len__(self) -> int:
        return len(self.gates)

    def append(self, gate: Gate) -> "Circuit":
        self._check_gate(gate)
        self.gates.append(gate)
        return self

    def x(self, target: int, controls: Iterable[Control] = ()) -> "Circuit":
        return self.append(Gate(kind=GateKind.X, target=target, controls=tuple(controls)))

    def h(self, target: int, controls: Iterable[Control] = ()) -> "Circuit":
        return self.append(Gate(kind=GateKind.H, target=target, controls=tuple(controls)))

    def z(self, target: int, controls: Iterable[Control] = ()) -> "Circuit":
        return self.append(Gate(kind=GateKind.Z, target=target, controls=tuple(controls)))

    def extend(self, other: "Circuit") -> "Circuit":
        """Append every gate of ``other``, which may be narrower than this circuit."""
        if other.num_qubits > self.num_qubits:
            raise LayoutError(f"Cannot extend {self.num_qubits}-qubit circuit with {other.num_qubits}-qubit circuit")
        self.gates.extend(other.gates)
        return self

    def inverse(self) -> "Circuit":
        return Circuit(
            num_qubits=self.num_qubits,
            gates=list(reversed(self.gates)),
            name=f"{self.name}_dg",
        )

    def render(self) -> str:
        lines = [f"# {self.name} ({self.num_qubits} qubits, {len(self.gates)} gates)"]
        lines.extend(f"{i:4d}: {gate}" for i, gate in enumerate(self.gates))
        return "\n".join(lines)


class GateStats(BaseModel):
    total_gates: int = Field(0, description="Number of gates in the literal gate list")
    controlled_count: int = Field(0, description="Gates with at least one control")
    multi_controlled_count: int = Field(0, description="Gates with two or more controls")
    max_control_arity: int = Field(0, description="Largest number of controls on one gate")
    phase_gate_count: int = Field(0, description="Z-kind gates, controlled or not")
    kind_counts: dict[str, int] = Field(default_factory=dict, description="Gate count per kind")
    depth: int = Field(0, description="Longest chain of gates sharing a qubit")
    decomposed_depth: int = Field(0, description="Critical path with multi-controlled gates weighted by cost model")


def required_width(*qubits: int) -> int:
    """Smallest register file that holds every index given."""
    return max(qubits) + 1 if qubits else 1
