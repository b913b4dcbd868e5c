from pathlib import Path

from pydantic import BaseModel, Field

from neqr_edge.pipelines.models import PipelineMode, PipelineResult, ResetStrategy
from neqr_edge.thresholds.models import Threshold


class RunReport(BaseModel):
    side_log2: int = Field(..., ge=1, description="n")
    bit_depth: int = Field(..., ge=1, description="q")
    mode: PipelineMode
    reset_strategy: ResetStrategy
    threshold: int = Field(..., ge=0)
    threshold_bits: str = Field(..., description="T, MSB first")
    qubit_count: int = Field(..., ge=0)
    gate_total: int = Field(..., ge=0)
    multi_controlled_count: int = Field(..., ge=0)
    max_control_arity: int = Field(..., ge=0)
    phase_gate_count: int = Field(..., ge=0)
    depth: int = Field(..., ge=0)
    decomposed_depth: int = Field(..., ge=0)
    edge_pixel_count: int = Field(..., ge=0)
    wall_time_ms: float = Field(..., ge=0)
    oracle_match: bool | None = Field(default=None, description="Set only when the classical reference ran")

    @classmethod
    def from_result(
        cls,
        result: PipelineResult,
        threshold: Threshold,
        wall_time_ms: float,
        oracle_match: bool | None = None,
    ) -> "RunReport":
        return cls(
            side_log2=result.layout.side_log2,
            bit_depth=result.layout.bit_depth,
            mode=result.mode,
            reset_strategy=result.reset_strategy,
            threshold=threshold.value,
            threshold_bits=threshold.bits,
            qubit_count=result.qubit_count,
            gate_total=result.stats.total_gates,
            multi_controlled_count=result.stats.multi_controlled_count,
            max_control_arity=result.stats.max_control_arity,
            phase_gate_count=result.stats.phase_gate_count,
            depth=result.stats.depth,
            decomposed_depth=result.stats.decomposed_depth,
            edge_pixel_count=result.edge_map.edge_count,
            wall_time_ms=wall_time_ms,
            oracle_match=oracle_match,
        )

    def to_text(self) -> str:
        """``key=value`` lines, then a ``# json`` marker and the same fields as one JSON object."""
        fields = self.model_dump(mode="json", exclude_none=True)
        lines = [f"{key}={str(value).lower() if isinstance(value, bool) else value}" for key, value in fields.items()]
        lines.append("# json")
        lines.append(self.model_dump_json(exclude_none=True))
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_text(), encoding="utf-8")
        return path
