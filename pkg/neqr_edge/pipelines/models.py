from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from neqr_edge.images.layouts import Axis, RegisterLayout
from neqr_edge.images.models import EdgeMap
from neqr_edge.simulators.models import GateStats
from neqr_edge.thresholds.models import Threshold

__all__ = [
    "Axis",
    "BranchRecord",
    "PipelineConfig",
    "PipelineMode",
    "PipelineResult",
    "ResetStrategy",
]


class PipelineMode(str, Enum):
    PER_DIRECTION = "per-direction"
    COMPOSITE = "composite"


class ResetStrategy(str, Enum):
    UNITARY = "unitary"
    HYBRID = "hybrid"


class PipelineConfig(BaseModel):
    threshold: Threshold = Field(..., description="Strict threshold on |dI|")
    mode: PipelineMode = Field(default=PipelineMode.PER_DIRECTION, description="Independent axes or one state")
    reset_strategy: ResetStrategy = Field(
        default=ResetStrategy.UNITARY,
        description="Inverse circuits, or direct amplitude rewrite of cleared registers",
    )
    tol: float = Field(default=1e-9, gt=0, description="Readout amplitude tolerance")


class BranchRecord(BaseModel):
    """One basis state of the register file, decoded into named fields."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(..., description="Basis index")
    x: int
    y: int
    i1: int
    i2: int
    grad: int = Field(..., description="Magnitude bits of the gradient register")
    sign: int
    a1: int
    a2: int
    out_x: int
    out_y: int
    out: int
    grad_y: int | None = None
    sign_y: int | None = None
    amplitude: complex


class PipelineResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    edge_map: EdgeMap
    edge_x: EdgeMap
    edge_y: EdgeMap
    layout: RegisterLayout
    stats: GateStats
    mode: PipelineMode
    reset_strategy: ResetStrategy
    norm: float = Field(..., description="Final norm of the state that produced the edge map")

    @property
    def qubit_count(self) -> int:
        return self.layout.num_qubits
