"""Edge-detection pipeline: prepares the state, runs the stages per axis and reads out edges."""

import contextvars
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np
from opentelemetry import trace
from pydantic_settings import BaseSettings, SettingsConfigDict

from neqr_edge.errors import ConsistencyError
from neqr_edge.images.layouts import Axis, RegisterLayout, build_layout
from neqr_edge.images.models import EdgeMap, GrayImage
from neqr_edge.images.neqrs import build_position_superposition
from neqr_edge.loggers import get_logger
from neqr_edge.pipelines.models import (
    BranchRecord,
    PipelineConfig,
    PipelineMode,
    PipelineResult,
    ResetStrategy,
)
from neqr_edge.pipelines.resets import BaseResetter, get_resetter
from neqr_edge.pipelines.stages import (
    build_gradient_stage,
    build_neighborhood_stage,
    build_or_stage,
    build_shift_stage,
    build_threshold_stage,
)
from neqr_edge.simulators.analysis import gate_stats, merge_stats
from neqr_edge.simulators.models import Circuit, GateStats
from neqr_edge.simulators.statevectors import Settings as SimulatorSettings
from neqr_edge.simulators.statevectors import (
    StateVector,
    apply_circuit,
    enumerate_basis,
    get_simulator_settings,
    new_zero_state,
    nonzero_mass,
    read_register,
)
from neqr_edge.thresholds.models import Threshold

logger = get_logger(__name__)


class Settings(BaseSettings):
    pipeline_tol: float = 1e-9
    pipeline_reset_atol: float = 1e-12
    pipeline_mode: PipelineMode = PipelineMode.PER_DIRECTION
    pipeline_reset_strategy: ResetStrategy = ResetStrategy.UNITARY
    pipeline_parallel_axes: bool = True

    model_config = SettingsConfigDict(
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
    )


@lru_cache
def get_pipeline_settings() -> Settings:
    """Get pipeline settings."""
    return Settings()


def default_config(threshold: Threshold, settings: Settings = None) -> PipelineConfig:
    """PipelineConfig with mode, reset strategy and tolerance taken from settings."""
    if settings is None:
        settings = get_pipeline_settings()
    return PipelineConfig(
        threshold=threshold,
        mode=settings.pipeline_mode,
        reset_strategy=settings.pipeline_reset_strategy,
        tol=settings.pipeline_tol,
    )


def _register_values(indices: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    values = np.zeros_like(indices)
    for k, qubit in enumerate(qubits):
        values |= ((indices >> qubit) & 1) << k
    return values


def read_edges(state: StateVector, layout: RegisterLayout, flag: int, tol: float) -> EdgeMap:
    """Positions of every branch with ``flag`` = 1 and |amplitude| > tol."""
    indices = np.flatnonzero(np.abs(state.amplitudes) > tol).astype(np.int64)
    indices = indices[((indices >> flag) & 1) == 1]
    edge_map = EdgeMap.empty(layout.side_log2)
    edge_map.bits[_register_values(indices, layout.y.qubits), _register_values(indices, layout.x.qubits)] = True
    return edge_map


def decode_branches(state: StateVector, layout: RegisterLayout, tol: float = 1e-9) -> list[BranchRecord]:
    """Every basis state above ``tol``, decoded into named register fields."""
    magnitude = layout.grad.qubits[: layout.bit_depth]
    records = []
    for index, amplitude in enumerate_basis(state, tol=tol):
        fields = {}
        if layout.grad_y is not None:
            fields["grad_y"] = read_register(index, layout.grad_y.qubits[: layout.bit_depth])
            fields["sign_y"] = read_register(index, (layout.grad_y.msb,))
        records.append(
            BranchRecord(
                index=index,
                x=read_register(index, layout.x.qubits),
                y=read_register(index, layout.y.qubits),
                i1=read_register(index, layout.i1.qubits),
                i2=read_register(index, layout.i2.qubits),
                grad=read_register(index, magnitude),
                sign=read_register(index, (layout.sign,)),
                a1=read_register(index, (layout.a1,)),
                a2=read_register(index, (layout.a2,)),
                out_x=read_register(index, (layout.out_x,)),
                out_y=read_register(index, (layout.out_y,)),
                out=read_register(index, (layout.out,)),
                amplitude=amplitude,
                **fields,
            )
        )
    return records


class EdgeDetectionPipeline:
    """Runs the quantum edge detector on the statevector simulator.

    Per-direction mode simulates the x and y passes on independent states and unions the
    edge maps. Composite mode runs both passes and the final OR on one state.
    """

    def __init__(
        self,
        settings: Settings = None,
        simulator_settings: SimulatorSettings = None,
        tracer: trace.Tracer = None,
    ):
        if settings is None:
            settings = get_pipeline_settings()
        if simulator_settings is None:
            simulator_settings = get_simulator_settings()
        self.settings = settings
        self.simulator_settings = simulator_settings
        self.tracer = tracer or trace.get_tracer(__name__)

    def layout_for(self, image: GrayImage, config: PipelineConfig) -> RegisterLayout:
        resetter = get_resetter(config.reset_strategy)
        second_gradient = config.mode == PipelineMode.COMPOSITE and resetter.second_gradient
        return build_layout(
            image.side_log2,
            image.bit_depth,
            second_gradient=second_gradient,
            settings=self.simulator_settings,
        )

    def run(self, image: GrayImage, config: PipelineConfig) -> PipelineResult:
        layout = self.layout_for(image, config)
        resetter = get_resetter(config.reset_strategy)
        logger.info(
            f"Running {config.mode.value} pipeline: n={image.side_log2}, q={image.bit_depth}, "
            f"T={config.threshold.value}, reset={config.reset_strategy.value}, qubits={layout.num_qubits}"
        )
        with self.tracer.start_as_current_span("pipeline") as span:
            span.set_attribute("mode", config.mode.value)
            span.set_attribute("qubit_count", layout.num_qubits)
            if config.mode == PipelineMode.PER_DIRECTION:
                result = self._run_per_direction(image, layout, config, resetter)
            else:
                result = self._run_composite(image, layout, config, resetter)
        logger.info(f"Detected {result.edge_map.edge_count} edge pixels ({result.stats.total_gates} gates)")
        return result

    def _apply(self, state: StateVector, stage: str, circuit: Circuit, axis: Axis | None, stats: list[GateStats]):
        with self.tracer.start_as_current_span(stage) as span:
            span.set_attribute("axis", axis.value if axis else "both")
            span.set_attribute("gate_count", len(circuit))
            span.set_attribute("qubit_count", state.num_qubits)
            apply_circuit(state, circuit)
        stats.append(gate_stats(circuit))

    def _check_cleared(self, state: StateVector, qubits: Sequence[int], register: str):
        mass = nonzero_mass(state, qubits)
        logger.debug(f"Residual mass on {register}: {mass:.3e}")
        if mass > self.settings.pipeline_reset_atol:
            raise ConsistencyError(f"Register {register} not cleared: residual probability {mass:.3e}")

    def _check_norm(self, state: StateVector) -> float:
        norm = state.norm()
        if abs(norm - 1.0) > self.simulator_settings.simulator_norm_atol:
            raise ConsistencyError(f"State norm drifted to {norm:.12f}")
        return norm

    def _run_axis(
        self,
        state: StateVector,
        image: GrayImage,
        layout: RegisterLayout,
        config: PipelineConfig,
        axis: Axis,
        resetter: BaseResetter,
        stats: list[GateStats],
        encode_source: bool = True,
    ):
        self._apply(state, "neighborhood", build_neighborhood_stage(image, layout, axis, encode_source), axis, stats)
        self._apply(state, "gradient", build_gradient_stage(layout, axis), axis, stats)
        with self.tracer.start_as_current_span("reset") as span:
            span.set_attribute("axis", axis.value)
            span.set_attribute("strategy", resetter.strategy.value)
            stats.append(gate_stats(resetter.reset_neighbour(state, image, layout, axis)))
        self._check_cleared(state, layout.i2.qubits, "I2")
        self._apply(state, "shift", build_shift_stage(image, layout, axis), axis, stats)
        self._apply(state, "threshold", build_threshold_stage(layout, config.threshold, axis), axis, stats)

    def _single_pass(
        self,
        image: GrayImage,
        layout: RegisterLayout,
        config: PipelineConfig,
        axis: Axis,
        resetter: BaseResetter,
    ) -> tuple[EdgeMap, list[GateStats], float]:
        state = new_zero_state(layout.num_qubits, settings=self.simulator_settings)
        stats: list[GateStats] = []
        self._apply(state, "positions", build_position_superposition(layout), axis, stats)
        self._run_axis(state, image, layout, config, axis, resetter, stats)
        norm = self._check_norm(state)
        edges = read_edges(state, layout, layout.output(axis), config.tol)
        logger.debug(f"{axis.value} pass: {edges.edge_count} edge pixels")
        return edges, stats, norm

    def _run_per_direction(
        self,
        image: GrayImage,
        layout: RegisterLayout,
        config: PipelineConfig,
        resetter: BaseResetter,
    ) -> PipelineResult:
        axes = (Axis.X, Axis.Y)
        if self.settings.pipeline_parallel_axes:
            with ThreadPoolExecutor(max_workers=len(axes)) as executor:
                futures = [
                    executor.submit(
                        contextvars.copy_context().run, self._single_pass, image, layout, config, axis, resetter
                    )
                    for axis in axes
                ]
                passes = [future.result() for future in futures]
        else:
            passes = [self._single_pass(image, layout, config, axis, resetter) for axis in axes]

        (edge_x, stats_x, norm_x), (edge_y, stats_y, norm_y) = passes
        return PipelineResult(
            edge_map=edge_x.union(edge_y),
            edge_x=edge_x,
            edge_y=edge_y,
            layout=layout,
            stats=merge_stats(stats_x + stats_y),
            mode=config.mode,
            reset_strategy=config.reset_strategy,
            norm=max((norm_x, norm_y), key=lambda norm: abs(norm - 1.0)),
        )

    def _run_composite(
        self,
        image: GrayImage,
        layout: RegisterLayout,
        config: PipelineConfig,
        resetter: BaseResetter,
    ) -> PipelineResult:
        state = new_zero_state(layout.num_qubits, settings=self.simulator_settings)
        stats: list[GateStats] = []
        self._apply(state, "positions", build_position_superposition(layout), None, stats)
        self._run_axis(state, image, layout, config, Axis.X, resetter, stats)
        stats.append(gate_stats(resetter.clear_between_axes(state, layout)))
        self._run_axis(state, image, layout, config, Axis.Y, resetter, stats, encode_source=False)
        self._apply(state, "or", build_or_stage(layout), None, stats)
        norm = self._check_norm(state)
        self._check_or(state, layout, config.tol)
        return PipelineResult(
            edge_map=read_edges(state, layout, layout.out, config.tol),
            edge_x=read_edges(state, layout, layout.out_x, config.tol),
            edge_y=read_edges(state, layout, layout.out_y, config.tol),
            layout=layout,
            stats=merge_stats(stats),
            mode=config.mode,
            reset_strategy=config.reset_strategy,
            norm=norm,
        )

    def _check_or(self, state: StateVector, layout: RegisterLayout, tol: float):
        indices = np.flatnonzero(np.abs(state.amplitudes) > tol).astype(np.int64)
        out = (indices >> layout.out) & 1
        expected = ((indices >> layout.out_x) | (indices >> layout.out_y)) & 1
        mismatches = int(np.count_nonzero(out != expected))
        if mismatches:
            raise ConsistencyError(f"{mismatches} branches have out != out_x OR out_y")
