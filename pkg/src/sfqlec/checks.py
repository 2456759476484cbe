"""Structural validation: fanout restriction and path balancing.

Both checks run in one pass over the netlist.  Path balancing works on base
distance sets: for each net, the set of clocked-gate path lengths from any
primary input down to that net.  A correctly balanced circuit has a singleton
set at every gate fanin (the same data wave arrives on all pins together) and
one common depth across the primary outputs.
"""

from dataclasses import dataclass, field

from .netlist import Netlist, topological_order
from .profiles import TechnologyProfile

FANOUT_EXCEEDED = "FanoutExceeded"
UNBALANCED_FANIN = "UnbalancedFanin"
UNEQUAL_OUTPUT_DEPTH = "UnequalOutputDepth"

# Distance sets wider than this are truncated to {min, max}; they are
# non-singleton either way, so the verdict is unaffected.
DISTANCE_CAP = 64


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    detail: str

    def line(self) -> str:
        return f"VIOLATION {self.kind} {self.location} {self.detail}"


@dataclass
class CheckReport:
    check_name: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [v.line() for v in self.violations]


@dataclass(frozen=True)
class BaseDistanceSet:
    net: str
    distances: tuple[int, ...]  # sorted, possibly truncated to (min, max)
    truncated: bool = False

    @property
    def is_singleton(self) -> bool:
        return len(self.distances) == 1 and not self.truncated

    @property
    def depth(self) -> int:
        return self.distances[-1]


def _count_readers(netlist: Netlist) -> dict[str, int]:
    readers = {pi: 0 for pi in netlist.primary_inputs}
    for g in netlist.gates:
        readers.setdefault(g.output, 0)
    for g in netlist.gates:
        for net in g.inputs:
            readers[net] += 1
    for po in netlist.primary_outputs:
        readers[po] += 1  # an output pin is one physical sink
    return readers


def check_fanout(netlist: Netlist, profile: TechnologyProfile, visit_counter=None) -> CheckReport:
    """Every net must respect its driver's fanout limit.

    Splitter-driven nets use splitter_fanout_limit; everything else
    (including primary inputs) uses default_fanout_limit.
    """
    report = CheckReport("fanout")
    if not profile.requires_fanout_check:
        return report
    readers = _count_readers(netlist)
    if visit_counter is not None:
        for g in netlist.gates:
            visit_counter[g.id] = visit_counter.get(g.id, 0) + 1
    ordered = list(netlist.primary_inputs) + [g.output for g in netlist.gates]
    for net in ordered:
        driver = netlist.driver_of.get(net)
        limit = (
            profile.splitter_fanout_limit
            if driver is not None and driver.kind.name == "SPLIT"
            else profile.default_fanout_limit
        )
        n = readers[net]
        if n > limit:
            report.violations.append(
                Violation(FANOUT_EXCEEDED, net, f"{n} readers, limit {limit}")
            )
    return report


def base_distances(
    netlist: Netlist, profile: TechnologyProfile, visit_counter=None
) -> dict[str, BaseDistanceSet]:
    """One forward pass in topological order; each gate is visited once."""
    out: dict[str, BaseDistanceSet] = {
        pi: BaseDistanceSet(pi, (0,)) for pi in netlist.primary_inputs
    }
    for gid in topological_order(netlist):
        g = netlist.gates_by_id[gid]
        if visit_counter is not None:
            visit_counter[gid] = visit_counter.get(gid, 0) + 1
        step = 1 if profile.is_clocked(g.kind.name) else 0
        merged: set[int] = set()
        truncated = False
        for net in g.inputs:
            src = out[net]
            truncated = truncated or src.truncated
            merged.update(d + step for d in src.distances)
        if len(merged) > DISTANCE_CAP:
            truncated = True
        if truncated:
            merged = {min(merged), max(merged)}
        out[g.output] = BaseDistanceSet(g.output, tuple(sorted(merged)), truncated)
    return out


def check_path_balance(
    netlist: Netlist,
    profile: TechnologyProfile,
    po_only: bool = False,
    visit_counter=None,
) -> CheckReport:
    """Path balancing: singleton, equal fanin distances and equal PO depths.

    po_only relaxes the per-fanin requirement and checks only that all
    primary outputs sit at one common depth.
    """
    report = CheckReport("path-balance")
    if not profile.requires_path_balancing:
        return report
    dists = base_distances(netlist, profile, visit_counter=visit_counter)
    if not po_only:
        for gid in topological_order(netlist):
            g = netlist.gates_by_id[gid]
            fanins = [dists[net] for net in g.inputs]
            bad = next((f for f in fanins if not f.is_singleton), None)
            if bad is not None:
                report.violations.append(
                    Violation(
                        UNBALANCED_FANIN,
                        g.id,
                        f"fanin {bad.net} has path lengths {{{','.join(map(str, bad.distances))}}}",
                    )
                )
                continue
            first = fanins[0]
            mismatch = next((f for f in fanins[1:] if f.depth != first.depth), None)
            if mismatch is not None:
                report.violations.append(
                    Violation(
                        UNBALANCED_FANIN,
                        g.id,
                        f"fanin {first.net} at depth {first.depth} vs {mismatch.net} at depth {mismatch.depth}",
                    )
                )
    po_sets = [dists[po] for po in netlist.primary_outputs]
    singleton_depths = {s.depth for s in po_sets if s.is_singleton}
    want = min(singleton_depths) if singleton_depths else None
    for s in po_sets:
        if not s.is_singleton:
            report.violations.append(
                Violation(
                    UNEQUAL_OUTPUT_DEPTH,
                    s.net,
                    f"path lengths {{{','.join(map(str, s.distances))}}}",
                )
            )
        elif want is not None and s.depth != want:
            report.violations.append(
                Violation(UNEQUAL_OUTPUT_DEPTH, s.net, f"depth {s.depth} differs from depth {want}")
            )
    return report
