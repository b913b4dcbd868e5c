import os
from unittest.mock import patch

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neqr_edge.errors import CapacityError, LayoutError
from neqr_edge.simulators.models import Circuit, Gate, GateKind
from neqr_edge.simulators.statevectors import (
    Settings,
    StateVector,
    apply_circuit,
    apply_gate,
    basis_state,
    enumerate_basis,
    get_simulator_settings,
    new_zero_state,
    nonzero_mass,
    permute_basis,
    read_register,
    reset_qubits,
    write_register,
)

SQRT1_2 = 1 / np.sqrt(2)


@st.composite
def random_circuits(draw, num_qubits: int = 4, max_gates: int = 24):
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        kind = draw(st.sampled_from(list(GateKind)))
        target = draw(st.integers(0, num_qubits - 1))
        others = [qubit for qubit in range(num_qubits) if qubit != target]
        control_qubits = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others)))
        controls = tuple((qubit, draw(st.integers(0, 1))) for qubit in control_qubits)
        gates.append(Gate(kind=kind, target=target, controls=controls))
    return Circuit(num_qubits=num_qubits, gates=gates, name="random")


class TestSettings:
    """Test cases for simulator Settings."""

    def test_default_settings(self):
        settings = Settings()
        assert settings.simulator_max_qubits == 28
        assert settings.simulator_norm_atol == 1e-9

    @patch.dict(os.environ, {"SIMULATOR_MAX_QUBITS": "12"})
    def test_env_settings(self):
        """Test settings from environment variables."""
        assert Settings().simulator_max_qubits == 12

    def test_get_simulator_settings_cached(self):
        assert get_simulator_settings() is get_simulator_settings()


class TestNewZeroState:
    """Test cases for state allocation."""

    def test_one_qubit(self):
        np.testing.assert_array_equal(new_zero_state(1).amplitudes, [1, 0])

    def test_two_qubits(self):
        np.testing.assert_array_equal(new_zero_state(2).amplitudes, [1, 0, 0, 0])

    @pytest.mark.parametrize("num_qubits", [0, 29])
    def test_out_of_range(self, num_qubits):
        with pytest.raises(CapacityError):
            new_zero_state(num_qubits)

    def test_custom_cap(self):
        with pytest.raises(CapacityError):
            new_zero_state(5, settings=Settings(simulator_max_qubits=4))

    def test_basis_state(self):
        state = basis_state(3, 5)
        assert enumerate_basis(state) == [(5, 1 + 0j)]

    def test_basis_state_out_of_range(self):
        with pytest.raises(LayoutError):
            basis_state(2, 4)

    def test_from_amplitudes(self):
        state = StateVector.from_amplitudes([SQRT1_2, 0, 0, SQRT1_2])
        assert state.num_qubits == 2
        assert state.norm() == pytest.approx(1.0)

    def test_from_amplitudes_rejects_odd_length(self):
        with pytest.raises(LayoutError):
            StateVector.from_amplitudes([1, 0, 0])


class TestApplyGate:
    """Test cases for the gate kernels."""

    def test_x_is_little_endian(self):
        state = apply_gate(new_zero_state(3), Gate(kind=GateKind.X, target=1))
        assert enumerate_basis(state) == [(2, 1 + 0j)]

    def test_hadamard(self):
        state = apply_gate(new_zero_state(1), Gate(kind=GateKind.H, target=0))
        np.testing.assert_allclose(state.amplitudes, [SQRT1_2, SQRT1_2])

    def test_z_flips_phase_of_one(self):
        state = StateVector.from_amplitudes([SQRT1_2, SQRT1_2])
        apply_gate(state, Gate(kind=GateKind.Z, target=0))
        np.testing.assert_allclose(state.amplitudes, [SQRT1_2, -SQRT1_2])

    @pytest.mark.parametrize("index", range(8))
    def test_toffoli_truth_table(self, index):
        toffoli = Gate(kind=GateKind.X, target=2, controls=((0, 1), (1, 1)))
        state = apply_gate(basis_state(3, index), toffoli)
        expected = index ^ 4 if index & 3 == 3 else index
        assert enumerate_basis(state) == [(expected, 1 + 0j)]

    @pytest.mark.parametrize("index", range(4))
    def test_negative_control(self, index):
        gate = Gate(kind=GateKind.X, target=1, controls=((0, 0),))
        state = apply_gate(basis_state(2, index), gate)
        expected = index ^ 2 if index & 1 == 0 else index
        assert enumerate_basis(state) == [(expected, 1 + 0j)]

    def test_controlled_hadamard_only_on_branch(self):
        state = StateVector.from_amplitudes([SQRT1_2, 0, SQRT1_2, 0])
        apply_gate(state, Gate(kind=GateKind.H, target=0, controls=((1, 1),)))
        np.testing.assert_allclose(state.amplitudes, [SQRT1_2, 0, 0.5, 0.5])

    def test_out_of_range(self):
        with pytest.raises(LayoutError):
            apply_gate(new_zero_state(2), Gate(kind=GateKind.X, target=2))

    def test_apply_circuit_width_mismatch(self):
        with pytest.raises(LayoutError):
            apply_circuit(new_zero_state(3), Circuit(num_qubits=2))

    @given(random_circuits(), st.integers(0, 15))
    @settings(max_examples=60, deadline=None)
    def test_inverse_restores_state(self, circuit, index):
        state = basis_state(4, index)
        apply_circuit(state, circuit)
        assert state.norm() == pytest.approx(1.0, abs=1e-9)
        apply_circuit(state, circuit.inverse())
        expected = np.zeros(16, dtype=complex)
        expected[index] = 1
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-9)

    @given(random_circuits(num_qubits=3))
    @settings(max_examples=40, deadline=None)
    def test_norm_preserved_on_superposition(self, circuit):
        state = StateVector.from_amplitudes(np.full(8, 1 / np.sqrt(8)))
        apply_circuit(state, circuit)
        assert state.norm() == pytest.approx(1.0, abs=1e-9)


class TestPermuteBasis:
    """Test cases for classical evaluation of X-family circuits."""

    @given(st.integers(0, 15))
    @settings(max_examples=30, deadline=None)
    def test_matches_statevector(self, index):
        circuit = Circuit(num_qubits=4)
        circuit.x(3, controls=[(0, 1), (1, 0)])
        circuit.x(0, controls=[(2, 1)])
        circuit.x(1)
        state = apply_circuit(basis_state(4, index), circuit)
        assert enumerate_basis(state) == [(permute_basis(circuit, index), 1 + 0j)]

    def test_rejects_hadamard(self):
        circuit = Circuit(num_qubits=1).h(0)
        with pytest.raises(LayoutError):
            permute_basis(circuit, 0)


class TestRegisters:
    """Test cases for register helpers."""

    def test_read_register(self):
        assert read_register(0b101100, (2, 3, 5)) == 0b111
        assert read_register(0b101100, (3, 4)) == 0b01

    def test_write_register(self):
        assert write_register(0, (1, 3), 0b11) == 0b1010
        assert write_register(0b1111, (0, 2), 0) == 0b1010

    def test_enumerate_basis_tolerance(self):
        state = StateVector.from_amplitudes([1e-10, 1, 0, 0])
        assert enumerate_basis(state) == [(1, 1 + 0j)]
        with pytest.raises(ValueError):
            enumerate_basis(state, tol=-1)

    def test_nonzero_mass(self):
        state = StateVector.from_amplitudes([0.5, 0.5, 0.5, 0.5])
        assert nonzero_mass(state, (1,)) == pytest.approx(0.5)
        assert nonzero_mass(state, (0, 1)) == pytest.approx(0.75)


class TestResetQubits:
    """Test cases for the direct amplitude rewrite."""

    def test_exact_without_collisions(self):
        # qubit 1 is a copy of qubit 0, so clearing it merges nothing
        state = StateVector.from_amplitudes([0.6, 0, 0, -0.8j])
        reset_qubits(state, (1,))
        np.testing.assert_array_equal(state.amplitudes, [0.6, -0.8j, 0, 0])

    def test_collisions_merge_by_probability(self, caplog):
        state = StateVector.from_amplitudes([0.5, 0.5, -0.5, 0.5])
        reset_qubits(state, (1,))
        np.testing.assert_allclose(state.amplitudes, [SQRT1_2, SQRT1_2, 0, 0])
        assert state.norm() == pytest.approx(1.0)
        assert "colliding branches" in caplog.text

    def test_clears_mass(self):
        state = StateVector.from_amplitudes(np.full(8, 1 / np.sqrt(8)))
        reset_qubits(state, (0, 2))
        assert nonzero_mass(state, (0, 2)) == 0.0
        assert state.norm() == pytest.approx(1.0)
