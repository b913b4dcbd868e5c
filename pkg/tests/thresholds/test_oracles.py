from math import log2

import numpy as np
import pytest

from neqr_edge.arithmetics.models import RegisterRef
from neqr_edge.errors import LayoutError
from neqr_edge.simulators.analysis import gate_stats
from neqr_edge.simulators.statevectors import StateVector, apply_circuit
from neqr_edge.thresholds.models import Threshold
from neqr_edge.thresholds.oracles import build_ftpo


def uniform(width: int) -> StateVector:
    return StateVector.from_amplitudes(np.full(1 << width, 1 / np.sqrt(1 << width)))


class TestBuildFtpo:
    """Test cases for the threshold phase oracle."""

    def test_gate_list_for_0010(self):
        circuit = build_ftpo(Threshold.parse("0010", 4), RegisterRef.span("s", 0, 4))
        assert [str(gate) for gate in circuit.gates] == [
            "Z q3",
            "X q3",
            "CZ q2 ctrl[q3]",
            "X q2",
            "CCCZ q0 ctrl[q3,q2,q1]",
            "X q0",
            "X q3",
            "X q2",
            "X q0",
        ]
        stats = gate_stats(circuit)
        # Z, CZ and CCCZ are all phase gates; only the CCCZ has two or more controls
        assert stats.phase_gate_count == 3
        assert stats.multi_controlled_count == 1
        assert stats.controlled_count == 2

    def test_all_ones_is_empty(self):
        assert len(build_ftpo(Threshold.parse("1111", 4), RegisterRef.span("s", 0, 4))) == 0

    @pytest.mark.parametrize("width", range(1, 9))
    def test_marks_exactly_above_threshold(self, width):
        register = RegisterRef.span("s", 0, width)
        values = np.arange(1 << width)
        for value in range(1 << width):
            state = apply_circuit(uniform(width), build_ftpo(Threshold(value=value, width=width), register))
            signs = np.sign(state.amplitudes.real)
            np.testing.assert_array_equal(signs, np.where(values > value, -1.0, 1.0))

    @pytest.mark.parametrize("width", range(1, 9))
    def test_phase_gates_equal_zero_bits(self, width):
        register = RegisterRef.span("s", 0, width)
        for value in range(1 << width):
            threshold = Threshold(value=value, width=width)
            assert gate_stats(build_ftpo(threshold, register)).phase_gate_count == threshold.zero_bits

    @pytest.mark.parametrize("width", [2, 4, 8, 16])
    def test_worst_case_is_q_phase_gates(self, width):
        stats = gate_stats(build_ftpo(Threshold(value=0, width=width), RegisterRef.span("s", 0, width)))
        assert stats.phase_gate_count == width
        assert stats.max_control_arity == width - 1

    def test_decomposed_depth_scaling(self):
        ratios = []
        for width in (2, 4, 8, 16):
            stats = gate_stats(build_ftpo(Threshold(value=0, width=width), RegisterRef.span("s", 0, width)))
            ratios.append(stats.decomposed_depth / (width * log2(width)))
        for previous, current in zip(ratios, ratios[1:]):
            assert current <= 1.5 * previous
        assert max(ratios[1:]) <= 1.5 * ratios[1]

    def test_oracle_control_only_on_phase_gates(self):
        circuit = build_ftpo(Threshold.parse("01", 2), RegisterRef.span("s", 0, 2), controls=[(2, 1)])
        for gate in circuit.gates:
            if gate.kind.value == "Z":
                assert (2, 1) in gate.controls
            else:
                assert gate.controls == ()

    def test_controlled_oracle_is_identity_when_control_off(self):
        register = RegisterRef.span("s", 0, 3)
        circuit = build_ftpo(Threshold(value=2, width=3), register, controls=[(3, 1)], num_qubits=4)
        amplitudes = np.zeros(16)
        amplitudes[:8] = 1 / np.sqrt(8)
        state = apply_circuit(StateVector.from_amplitudes(amplitudes), circuit)
        np.testing.assert_allclose(state.amplitudes, amplitudes)

    def test_width_mismatch(self):
        with pytest.raises(LayoutError):
            build_ftpo(Threshold(value=1, width=3), RegisterRef.span("s", 0, 4))

    def test_control_inside_register(self):
        with pytest.raises(LayoutError):
            build_ftpo(Threshold(value=1, width=2), RegisterRef.span("s", 0, 2), controls=[(1, 1)])
