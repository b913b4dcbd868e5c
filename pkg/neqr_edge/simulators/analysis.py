from collections import Counter
from math import ceil, log2

from neqr_edge.simulators.models import Circuit, GateKind, GateStats


def inverse(circuit: Circuit) -> Circuit:
    """Exact inverse: every supported gate is self-inverse, so only the order flips."""
    return circuit.inverse()


def multi_control_cost(arity: int) -> int:
    """Clifford+T depth charged for one gate with ``arity`` controls.

    Logarithmic-depth multi-controlled Toffoli with one ancilla; single- and
    singly-controlled gates cost one layer.
    """
    if arity <= 1:
        return 1
    return 1 + ceil(log2(arity))


def _critical_path(circuit: Circuit, weighted: bool) -> int:
    ready = [0] * circuit.num_qubits
    depth = 0
    for gate in circuit.gates:
        start = max(ready[qubit] for qubit in gate.qubits)
        finish = start + (multi_control_cost(gate.arity) if weighted else 1)
        for qubit in gate.qubits:
            ready[qubit] = finish
        depth = max(depth, finish)
    return depth


def gate_stats(circuit: Circuit) -> GateStats:
    arities = [gate.arity for gate in circuit.gates]
    return GateStats(
        total_gates=len(circuit.gates),
        controlled_count=sum(1 for arity in arities if arity >= 1),
        multi_controlled_count=sum(1 for arity in arities if arity >= 2),
        max_control_arity=max(arities, default=0),
        phase_gate_count=sum(1 for gate in circuit.gates if gate.kind is GateKind.Z),
        kind_counts=dict(sorted(Counter(gate.kind.value for gate in circuit.gates).items())),
        depth=_critical_path(circuit, weighted=False),
        decomposed_depth=_critical_path(circuit, weighted=True),
    )


def merge_stats(stats: list[GateStats]) -> GateStats:
    """Totals for circuits run one after another; depths add since the stages are sequential."""
    kinds: Counter[str] = Counter()
    for item in stats:
        kinds.update(item.kind_counts)
    return GateStats(
        total_gates=sum(item.total_gates for item in stats),
        controlled_count=sum(item.controlled_count for item in stats),
        multi_controlled_count=sum(item.multi_controlled_count for item in stats),
        max_control_arity=max((item.max_control_arity for item in stats), default=0),
        phase_gate_count=sum(item.phase_gate_count for item in stats),
        kind_counts=dict(sorted(kinds.items())),
        depth=sum(item.depth for item in stats),
        decomposed_depth=sum(item.decomposed_depth for item in stats),
    )
