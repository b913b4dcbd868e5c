import itertools

import numpy as np
import pytest

from neqr_edge.images.layouts import Axis, build_layout
from neqr_edge.images.models import GrayImage
from neqr_edge.images.neqrs import build_position_superposition
from neqr_edge.pipelines.runners import decode_branches
from neqr_edge.pipelines.stages import (
    build_gradient_stage,
    build_neighborhood_stage,
    build_or_stage,
    build_reset_stage,
    build_shift_stage,
    build_threshold_stage,
)
from neqr_edge.simulators.statevectors import (
    apply_circuit,
    basis_state,
    new_zero_state,
    nonzero_mass,
    permute_basis,
    read_register,
    write_register,
)
from neqr_edge.thresholds.models import Threshold

GRADIENT_IMAGE = GrayImage.from_pixels([[3, 0], [1, 1]], bit_depth=2)


def prepared_state(layout):
    state = new_zero_state(layout.num_qubits)
    return apply_circuit(state, build_position_superposition(layout))


def shifted_state(image: GrayImage, axis: Axis):
    layout = build_layout(image.side_log2, image.bit_depth)
    state = prepared_state(layout)
    for circuit in (
        build_neighborhood_stage(image, layout, axis),
        build_gradient_stage(layout, axis),
        build_reset_stage(image, layout, axis),
        build_shift_stage(image, layout, axis),
    ):
        apply_circuit(state, circuit)
    return state, layout


class TestNeighborhoodStage:
    """Test cases for loading a pixel and its neighbour."""

    @pytest.mark.parametrize("axis", [Axis.X, Axis.Y])
    def test_loads_pixel_and_neighbour(self, axis):
        image = GrayImage.from_pixels([[0, 1], [2, 3]], bit_depth=2)
        layout = build_layout(1, 2)
        state = apply_circuit(prepared_state(layout), build_neighborhood_stage(image, layout, axis))
        records = decode_branches(state, layout)
        assert len(records) == 4
        for record in records:
            # the axis register already points at the neighbour
            if axis == Axis.X:
                source = image.intensity(record.x - 1, record.y)
            else:
                source = image.intensity(record.x, record.y - 1)
            assert record.i1 == source
            assert record.i2 == image.intensity(record.x, record.y)

    def test_skip_source_encoding(self):
        image = GrayImage.from_pixels([[0, 1], [2, 3]], bit_depth=2)
        layout = build_layout(1, 2)
        state = prepared_state(layout)
        apply_circuit(state, build_neighborhood_stage(image, layout, Axis.Y, encode_source=False))
        assert all(record.i1 == 0 for record in decode_branches(state, layout))

    def test_circuit_name(self):
        image = GrayImage.from_pixels([[0, 1], [2, 3]], bit_depth=2)
        assert build_neighborhood_stage(image, build_layout(1, 2), Axis.X).name == "neighborhood_x"


class TestGradientStage:
    """Test cases for the absolute-difference stage."""

    @pytest.mark.parametrize("bit_depth", [1, 2, 3])
    def test_magnitude_and_sign(self, bit_depth):
        layout = build_layout(1, bit_depth)
        circuit = build_gradient_stage(layout, Axis.X)
        magnitude = layout.magnitude(Axis.X)
        for i1, i2 in itertools.product(range(1 << bit_depth), repeat=2):
            index = write_register(write_register(0, layout.i1.qubits, i1), layout.i2.qubits, i2)
            out = permute_basis(circuit, index)
            assert read_register(out, magnitude.qubits) == abs(i2 - i1)
            assert read_register(out, (layout.sign,)) == int(i2 < i1)
            assert read_register(out, layout.i1.qubits) == i1
            assert read_register(out, layout.i2.qubits) == i2
            assert read_register(out, (layout.carry,)) == 0

    def test_second_gradient_register(self):
        layout = build_layout(1, 2, second_gradient=True)
        circuit = build_gradient_stage(layout, Axis.Y)
        index = write_register(write_register(0, layout.i1.qubits, 3), layout.i2.qubits, 1)
        out = permute_basis(circuit, index)
        assert read_register(out, layout.grad.qubits) == 0
        assert read_register(out, layout.magnitude(Axis.Y).qubits) == 2
        assert read_register(out, (layout.sign_of(Axis.Y),)) == 1


class TestResetStage:
    """Test cases for uncomputing the neighbour."""

    @pytest.mark.parametrize("axis", [Axis.X, Axis.Y])
    def test_returns_to_source(self, axis):
        image = GrayImage.from_pixels([[1, 2], [3, 0]], bit_depth=2)
        layout = build_layout(1, 2)
        state = prepared_state(layout)
        apply_circuit(state, build_neighborhood_stage(image, layout, axis))
        apply_circuit(state, build_reset_stage(image, layout, axis))
        assert nonzero_mass(state, layout.i2.qubits) < 1e-12
        for record in decode_branches(state, layout):
            assert record.i1 == image.intensity(record.x, record.y)


class TestShiftStage:
    """Test cases for moving marks onto the darker pixel."""

    def test_shift_state(self):
        state, layout = shifted_state(GRADIENT_IMAGE, Axis.X)
        records = decode_branches(state, layout)
        assert len(records) == 5
        moved = [record for record in records if record.sign == 1]
        assert len(moved) == 1
        assert (moved[0].x, moved[0].y) == (1, 0)
        assert moved[0].i1 == 0
        assert moved[0].a1 == 1
        assert moved[0].grad == 3
        assert moved[0].amplitude == pytest.approx(-1 / (2 * np.sqrt(2)))

        duplicate = [record for record in records if record.a1 == 1 and record.sign == 0]
        assert len(duplicate) == 1
        assert (duplicate[0].x, duplicate[0].y) == (0, 0)
        assert duplicate[0].i1 == 3
        assert duplicate[0].amplitude == pytest.approx(1 / (2 * np.sqrt(2)))

        untouched = [record for record in records if record.a1 == 0]
        assert {(record.x, record.y) for record in untouched} == {(1, 0), (0, 1), (1, 1)}
        assert all(record.amplitude == pytest.approx(0.5) for record in untouched)
        assert all(record.i2 == 0 for record in records)

    def test_norm_is_preserved(self):
        state, _ = shifted_state(GRADIENT_IMAGE, Axis.Y)
        assert state.norm() == pytest.approx(1.0)

    def test_no_shift_without_sign(self):
        image = GrayImage.from_pixels([[0, 1], [2, 3]], bit_depth=2)
        state, layout = shifted_state(image, Axis.X)
        records = decode_branches(state, layout)
        # pixels with a darker right neighbour split
        assert len(records) == 6
        assert sum(record.sign for record in records) == 2


class TestThresholdStage:
    """Test cases for marking edges."""

    @pytest.mark.parametrize("value", range(4))
    def test_marks_except_in_place_duplicate(self, value):
        layout = build_layout(1, 2)
        circuit = build_threshold_stage(layout, Threshold(value=value, width=2), Axis.X)
        magnitude = layout.magnitude(Axis.X)
        for s, (sign, ancilla) in itertools.product(range(4), [(0, 0), (1, 1), (0, 1)]):
            index = write_register(0, magnitude.qubits, s)
            index = write_register(index, (layout.sign, layout.a1), sign | ancilla << 1)
            state = apply_circuit(basis_state(layout.num_qubits, index), circuit)
            expected = int(s > value) if (sign, ancilla) != (0, 1) else 0
            assert nonzero_mass(state, (layout.out_x,)) == pytest.approx(expected)
            assert nonzero_mass(state, (layout.out_y,)) == 0

    def test_axis_y_writes_out_y(self):
        layout = build_layout(1, 2)
        circuit = build_threshold_stage(layout, Threshold(value=0, width=2), Axis.Y)
        index = write_register(0, layout.magnitude(Axis.Y).qubits, 2)
        state = apply_circuit(basis_state(layout.num_qubits, index), circuit)
        assert nonzero_mass(state, (layout.out_y,)) == pytest.approx(1)


class TestOrStage:
    """Test cases for combining the axis flags."""

    @pytest.mark.parametrize(("out_x", "out_y"), list(itertools.product((0, 1), repeat=2)))
    def test_truth_table(self, out_x, out_y):
        layout = build_layout(1, 1)
        index = write_register(0, (layout.out_x, layout.out_y), out_x | out_y << 1)
        out = permute_basis(build_or_stage(layout), index)
        assert read_register(out, (layout.out,)) == out_x | out_y
        assert read_register(out, (layout.out_x, layout.out_y)) == out_x | out_y << 1


class TestStageComposition:
    """Test cases spanning several stages."""

    @pytest.mark.parametrize("axis", [Axis.X, Axis.Y])
    def test_first_stages_are_undone_by_their_inverses(self, axis):
        image = GrayImage.from_pixels([[1, 2], [3, 0]], bit_depth=2)
        layout = build_layout(1, 2)
        initial = prepared_state(layout)
        state = initial.copy()
        stages = [
            build_neighborhood_stage(image, layout, axis),
            build_gradient_stage(layout, axis),
            build_reset_stage(image, layout, axis),
        ]
        for circuit in stages:
            apply_circuit(state, circuit)
        for circuit in reversed(stages):
            apply_circuit(state, circuit.inverse())
        np.testing.assert_allclose(state.amplitudes, initial.amplitudes, atol=1e-12)

    def test_shift_across_wrap_seam(self):
        image = GrayImage.from_pixels([[0, 3], [0, 3]], bit_depth=2)
        state, layout = shifted_state(image, Axis.X)
        moved = [record for record in decode_branches(state, layout) if record.sign == 1]
        assert {(record.x, record.y) for record in moved} == {(0, 0), (0, 1)}
        assert all(record.i1 == 0 and record.grad == 3 for record in moved)

    def test_out_flag_is_a_function_of_branch_fields(self):
        image = GrayImage.from_pixels([[0, 3, 1, 2], [2, 0, 3, 1], [1, 1, 0, 3], [3, 2, 2, 0]], bit_depth=2)
        layout = build_layout(2, 2)
        state, _ = shifted_state(image, Axis.X)
        apply_circuit(state, build_threshold_stage(layout, Threshold(value=1, width=2), Axis.X))
        seen = {}
        for record in decode_branches(state, layout):
            key = (record.x, record.y, record.grad, record.sign, record.a1)
            assert seen.setdefault(key, record.out_x) == record.out_x
        assert any(seen.values())
