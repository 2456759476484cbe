"""Cycle-accurate simulation and a brute-force equivalence oracle.

simulate() implements the synchronous recurrence directly: a clocked gate's
output at cycle t+1 is its function applied to cycle-t inputs (all state
starts at 0), a transparent gate settles within the cycle.  replay_trace()
re-runs a counterexample trace against the netlist to confirm it is real.

exhaustive_equivalence() enumerates every assignment of the model's full
input grid (one variable per primary input per window step) in one
bit-parallel pass, using wide ints as 2^bits parallel simulation lanes.
"""

from dataclasses import dataclass

from .errors import SfqlecError
from .itcl import ArrivalSchedule, apply_itcl, match_inputs
from .mcid import build_mcid
from .netlist import Netlist, circuit_depth, evaluate_kind, topological_order
from .profiles import TechnologyProfile
from .trace import TimedTrace

_DEFAULT_NON_CLOCKED = frozenset({"SPLIT"})


class SimError(SfqlecError):
    pass


def parse_wave(line: str) -> dict[str, int]:
    """One wave per line: 'a=0 b=1 d=1'.  Unlisted inputs read as 0."""
    wave: dict[str, int] = {}
    for tok in line.split():
        name, sep, bit = tok.partition("=")
        if not sep or bit not in ("0", "1") or not name:
            raise SimError(f"bad wave token {tok!r}, expected name=0|1")
        if name in wave:
            raise SimError(f"duplicate wave entry for {name}")
        wave[name] = int(bit)
    return wave


def format_wave(wave: dict[str, int], order) -> str:
    return " ".join(f"{pi}={wave.get(pi, 0)}" for pi in order)


def simulate(
    netlist: Netlist,
    waves: list[dict[str, int]],
    profile: TechnologyProfile | None = None,
    extra_cycles: int | None = None,
) -> list[dict[str, int]]:
    """Feed one wave per cycle (zeros afterwards) and record the outputs.

    Runs len(waves) + extra_cycles cycles; the default flushes the pipeline
    for circuit_depth further cycles so every wave reaches the outputs.
    """
    non_clocked = _DEFAULT_NON_CLOCKED if profile is None else profile.non_clocked_kinds
    if extra_cycles is None:
        extra_cycles = circuit_depth(netlist, profile)
    order = topological_order(netlist)
    prev: dict[str, int] = {}
    seen: list[dict[str, int]] = []
    for t in range(len(waves) + extra_cycles):
        wave = waves[t] if t < len(waves) else {}
        cur = {pi: wave.get(pi, 0) & 1 for pi in netlist.primary_inputs}
        for gid in order:
            g = netlist.gates_by_id[gid]
            src = cur if g.kind.name in non_clocked else prev
            cur[g.output] = evaluate_kind(g.kind.name, [src.get(i, 0) for i in g.inputs])
        seen.append({po: cur[po] for po in netlist.primary_outputs})
        prev = cur
    return seen


def evaluate_golden(netlist: Netlist, assignment: dict[str, int], mask: int = 1) -> dict[str, int]:
    """Evaluate a combinational specification netlist (storage is rejected)."""
    values = {pi: assignment.get(pi, 0) & mask for pi in netlist.primary_inputs}
    for gid in topological_order(netlist):
        g = netlist.gates_by_id[gid]
        if g.kind.name == "DFF":
            raise SimError(f"specification netlist holds state (DFF {g.id})")
        values[g.output] = evaluate_kind(g.kind.name, [values[i] for i in g.inputs], mask)
    return {po: values[po] for po in netlist.primary_outputs}


def replay_trace(
    netlist: Netlist,
    golden: Netlist,
    trace: TimedTrace,
    profile: TechnologyProfile | None = None,
) -> bool:
    """True when both halves of the trace reproduce: the netlist really emits
    mcid_output at the observation cycle and the spec really emits
    golden_output on the matched wave.  Expects an unshifted model's trace."""
    waves = [trace.wave(k) for k in range(trace.n_cycles)]
    extra = max(trace.observation_cycle + 1 - len(waves), 0)
    seen = simulate(netlist, waves, profile, extra_cycles=extra)
    if seen[trace.observation_cycle][trace.output_name] != trace.mcid_output:
        return False
    gold = evaluate_golden(golden, trace.golden_assignment)
    return gold[trace.output_name] == trace.golden_output


@dataclass
class ExhaustiveResult:
    equivalent: bool
    output_name: str | None = None
    model: dict[tuple[str, int], int] | None = None  # (pi, step) -> bit
    mcid_output: int | None = None
    golden_output: int | None = None


def exhaustive_equivalence(
    netlist: Netlist,
    golden: Netlist,
    profile: TechnologyProfile | None = None,
    schedule: ArrivalSchedule | None = None,
    max_bits: int = 24,
) -> ExhaustiveResult:
    """Check every grid assignment at once; only viable for small windows.

    The grid covers all (primary input, window step) cells, including cells
    the model never samples; those are don't-cares on both sides, so the
    verdict matches the miter's.
    """
    mcid = build_mcid(netlist, profile)
    shifts = {pi: 0 for pi in netlist.primary_inputs}
    if schedule is not None:
        mcid = apply_itcl(mcid, schedule)
        shifts = schedule.shifts(mcid.source_pis)
    matching = match_inputs(mcid, list(golden.primary_inputs))
    pins = mcid.timed_inputs
    earliest = min((p.step for p in pins), default=0)
    latest = max((p.step for p in pins), default=0)
    steps = range(earliest, latest + 1)
    cells = [(pi, s) for pi in netlist.primary_inputs for s in steps]
    bits = len(cells)
    if bits > max_bits:
        raise SimError(f"input grid needs {bits} bits, limit is {max_bits}")
    n = 1 << bits
    mask = (1 << n) - 1
    grid: dict[tuple[str, int], int] = {}
    for j, cell in enumerate(cells):
        h = 1 << j
        grid[cell] = (((1 << n) - 1) // ((1 << h) + 1)) << h

    non_clocked = _DEFAULT_NON_CLOCKED if profile is None else profile.non_clocked_kinds
    order = topological_order(netlist)
    prev: dict[str, int] = {}
    cur: dict[str, int] = {}
    # a shifted input's raw consumption at step s sees the external wave
    # that entered shift cycles earlier
    for s in range(earliest, 1):
        cur = {pi: grid.get((pi, s - shifts[pi]), 0) for pi in netlist.primary_inputs}
        for gid in order:
            g = netlist.gates_by_id[gid]
            src = cur if g.kind.name in non_clocked else prev
            cur[g.output] = evaluate_kind(g.kind.name, [src.get(i, 0) for i in g.inputs], mask)
        prev = cur

    gold = evaluate_golden(
        golden,
        {pi: grid[(pi, matching.matched[pi].step)] for pi in golden.primary_inputs},
        mask,
    )
    for po in golden.primary_outputs:
        diff = cur[po] ^ gold[po]
        if diff:
            b = (diff & -diff).bit_length() - 1
            model = {cell: (b >> j) & 1 for j, cell in enumerate(cells)}
            return ExhaustiveResult(False, po, model, (cur[po] >> b) & 1, (gold[po] >> b) & 1)
    return ExhaustiveResult(True)
