"""Multi-cycle input dependency model.

A deep-pipelined netlist computes, at each primary output and clock cycle, a
pure function of primary-input values sampled over a window of earlier
cycles.  The MCID circuit materializes that function: every source net is
unrolled into timed copies net@t<step>, where a clocked gate at step t reads
its fanins at step t-1 and a transparent gate reads them at step t.

Splitters are identity fanout elements and are elided (aliased through);
storage elements keep their position in the unrolling but degrade to plain
buffers, since the time shift is already explicit in the signal names.
"""

from dataclasses import dataclass, field
from functools import cached_property

from .netlist import Netlist, logic_levels
from .profiles import TechnologyProfile

_DEFAULT_NON_CLOCKED = frozenset({"SPLIT"})


@dataclass(frozen=True, order=True)
class TimedSignal:
    net: str
    step: int  # 0 = observation cycle, negative = earlier waves

    def __str__(self) -> str:
        return f"{self.net}@t{self.step}"


@dataclass(frozen=True)
class MCIDGate:
    name: str
    func: str  # combinational kind name; storage elements appear as BUF
    inputs: tuple[TimedSignal, ...]
    output: TimedSignal
    source_id: str


@dataclass
class MCIDCircuit:
    source_name: str
    source_pis: tuple[str, ...]
    gates: list[MCIDGate]
    timed_inputs: tuple[TimedSignal, ...]  # sorted by (net, step)
    outputs: dict[str, TimedSignal]  # source PO name -> timed signal at step 0

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    @property
    def duplicated_gate_count(self) -> int:
        """How many gate instances exist beyond one copy per source gate."""
        return len(self.gates) - len({g.source_id for g in self.gates})

    @property
    def earliest_step(self) -> int:
        return min((s.step for s in self.timed_inputs), default=0)

    @cached_property
    def producers(self) -> dict[TimedSignal, MCIDGate]:
        return {g.output: g for g in self.gates}

    def to_bench(self) -> str:
        lines = [f"# MCID model of {self.source_name}"]
        lines += [f"INPUT({s})" for s in self.timed_inputs]
        lines += [f"OUTPUT({self.outputs[po]})" for po in self.outputs]
        for g in self.gates:
            args = ", ".join(str(s) for s in g.inputs)
            lines.append(f"{g.output} = {g.func}({args})")
        return "\n".join(lines) + "\n"


def _non_clocked(profile: TechnologyProfile | None) -> frozenset[str]:
    if profile is None:
        return _DEFAULT_NON_CLOCKED
    return profile.non_clocked_kinds


def build_mcid(netlist: Netlist, profile: TechnologyProfile | None = None) -> MCIDCircuit:
    """Unroll a netlist into its MCID circuit, observing all POs at step 0.

    Copies are shared: each (net, step) pair is expanded at most once, so the
    result is a DAG whose size is bounded by gates x distinct steps.
    """
    non_clocked = _non_clocked(profile)
    clocked_count = sum(1 for g in netlist.gates if g.kind.name not in non_clocked)
    floor = -(clocked_count + 1)  # any deeper would mean a clocked cycle

    memo: dict[tuple[str, int], TimedSignal] = {}
    gates: list[MCIDGate] = []
    pins: list[TimedSignal] = []

    for po in netlist.primary_outputs:
        # explicit two-phase stack: phase 0 schedules fanins, phase 1 emits
        stack: list[tuple[str, int, bool]] = [(po, 0, False)]
        while stack:
            net, t, ready = stack.pop()
            key = (net, t)
            if key in memo:
                continue
            if t < floor:
                raise RuntimeError(f"unroll depth exceeded at {net}@t{t}")
            if netlist.is_pi(net):
                sig = TimedSignal(net, t)
                memo[key] = sig
                pins.append(sig)
                continue
            gate = netlist.driver_of[net]
            dt = 0 if gate.kind.name in non_clocked else 1
            if gate.kind.name == "SPLIT":
                src = (gate.inputs[0], t - dt)
                if src in memo:
                    memo[key] = memo[src]
                else:
                    stack.append((net, t, ready))
                    stack.append((gate.inputs[0], t - dt, False))
                continue
            if ready:
                sig = TimedSignal(net, t)
                ins = tuple(memo[(i, t - dt)] for i in gate.inputs)
                func = "BUF" if gate.kind.name == "DFF" else gate.kind.name
                gates.append(MCIDGate(str(sig), func, ins, sig, gate.id))
                memo[key] = sig
            else:
                stack.append((net, t, True))
                for i in reversed(gate.inputs):
                    stack.append((i, t - dt, False))

    timed_inputs = tuple(sorted(set(pins), key=lambda s: (s.net, s.step)))
    outputs = {po: memo[(po, 0)] for po in netlist.primary_outputs}
    return MCIDCircuit(netlist.name, tuple(netlist.primary_inputs), gates, timed_inputs, outputs)


def dependency_window(mcid: MCIDCircuit) -> dict[str, tuple[int, ...]]:
    """Steps at which each source PI is sampled (ascending; may be empty)."""
    window: dict[str, list[int]] = {pi: [] for pi in mcid.source_pis}
    for sig in mcid.timed_inputs:
        window[sig.net].append(sig.step)
    return {pi: tuple(sorted(steps)) for pi, steps in window.items()}


def mcid_size_upper_bound(
    netlist: Netlist,
    removed_dffs: list[str],
    profile: TechnologyProfile | None = None,
) -> int:
    """Bound on gate duplication caused by removing the given storage gates.

    Each removal shifts the removed gate's whole fanin cone one step
    earlier; every shared gate in that cone may gain one extra timed copy.
    A cone of clocked depth L holds at most 2^L - 1 two-input gates, so a
    removal adds at most 2^L - 1 copies, L being the clocked depth of the
    removed gate's input net.  Removals are summed independently.
    """
    levels = logic_levels(netlist, profile)
    total = 0
    for gid in removed_dffs:
        gate = netlist.gates_by_id[gid]
        if gate.kind.name != "DFF":
            raise ValueError(f"{gid} is not a DFF")
        total += (1 << levels[gate.inputs[0]]) - 1
    return total
