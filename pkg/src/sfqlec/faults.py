"""Seeded structural fault injection.

Three mutation classes exercise the three detection layers: a function swap
is caught by the miter, a storage removal unbalances paths and shifts the
dependency window, and a splitter bypass overloads a net so the fanout check
rejects the netlist before any unrolling happens.
"""

import random
from dataclasses import dataclass

from .errors import SfqlecError
from .netlist import Gate, Netlist, get_kind, logic_levels

SWAP_GATE = "swap-gate"
REMOVE_DFF = "remove-dff"
REMOVE_SPLITTER = "remove-splitter"
FAULT_KINDS = (SWAP_GATE, REMOVE_DFF, REMOVE_SPLITTER)

_SWAP_POOL = {
    1: ("BUF", "INV"),
    2: ("AND2", "NAND2", "NOR2", "OR2", "XNOR2", "XOR2"),
}


class FaultError(SfqlecError):
    pass


@dataclass(frozen=True)
class FaultSpec:
    kind: str
    target: str  # gate id in the original netlist
    detail: str

    def line(self) -> str:
        return f"FAULT {self.kind} {self.target} {self.detail}"


def _readers(netlist: Netlist, net: str) -> int:
    n = sum(1 for g in netlist.gates for i in g.inputs if i == net)
    return n + netlist.primary_outputs.count(net)


def _rebuild(netlist: Netlist, gates: list[Gate], pos=None) -> Netlist:
    return Netlist(
        name=netlist.name,
        primary_inputs=tuple(netlist.primary_inputs),
        primary_outputs=tuple(pos if pos is not None else netlist.primary_outputs),
        gates=tuple(gates),
    )


def _swap_gate(netlist: Netlist, rng: random.Random, target: str | None):
    eligible = [g.id for g in netlist.gates if g.kind.name not in ("DFF", "SPLIT")]
    if target is None:
        if not eligible:
            raise FaultError("no swappable gate")
        target = rng.choice(sorted(eligible))
    elif target not in eligible:
        raise FaultError(f"gate {target} cannot be swapped")
    old = netlist.gates_by_id[target]
    pool = [k for k in _SWAP_POOL[old.kind.arity] if k != old.kind.name]
    new_kind = rng.choice(pool)
    gates = [
        Gate(g.id, get_kind(new_kind), g.inputs, g.output) if g.id == target else g
        for g in netlist.gates
    ]
    return _rebuild(netlist, gates), FaultSpec(SWAP_GATE, target, f"{old.kind.name}->{new_kind}")


def _removable_dff(netlist: Netlist, g: Gate) -> bool:
    if g.kind.name != "DFF":
        return False
    if g.output not in netlist.primary_outputs:
        return True
    # output net is a primary output: removal renames the driver instead,
    # which needs a sole, non-primary driver net behind the storage
    src = g.inputs[0]
    return (
        not netlist.is_pi(src)
        and src not in netlist.primary_outputs
        and _readers(netlist, src) == 1
    )


def _remove_dff(netlist: Netlist, rng: random.Random, target: str | None):
    eligible = [g.id for g in netlist.gates if _removable_dff(netlist, g)]
    if target is None:
        if not eligible:
            raise FaultError("no removable storage gate")
        levels = logic_levels(netlist)
        ranked = sorted(eligible, key=lambda gid: (-levels[gid], gid))
        quartile = ranked[: max(1, len(ranked) // 4)]  # the ones nearest the outputs
        target = rng.choice(quartile)
    elif target not in eligible:
        raise FaultError(f"gate {target} is not a removable DFF")
    dff = netlist.gates_by_id[target]
    src, dst = dff.inputs[0], dff.output
    if dst not in netlist.primary_outputs:
        gates = [
            Gate(g.id, g.kind, tuple(src if i == dst else i for i in g.inputs), g.output)
            for g in netlist.gates
            if g.id != target
        ]
        return _rebuild(netlist, gates), FaultSpec(REMOVE_DFF, target, "removed")
    driver = netlist.driver_of[src]
    gates = []
    for g in netlist.gates:
        if g.id == target:
            continue
        if g.id == driver.id:
            gates.append(Gate(dst, g.kind, g.inputs, dst))
        else:
            gates.append(g)
    return _rebuild(netlist, gates), FaultSpec(REMOVE_DFF, target, "removed")


def _remove_splitter(netlist: Netlist, rng: random.Random, target: str | None):
    eligible = [
        g.id
        for g in netlist.gates
        if g.kind.name == "SPLIT"
        and g.output not in netlist.primary_outputs
        and _readers(netlist, g.output) >= 2
    ]
    if target is None:
        if not eligible:
            raise FaultError("no bypassable splitter")
        target = rng.choice(sorted(eligible))
    elif target not in eligible:
        raise FaultError(f"gate {target} is not a bypassable splitter")
    sp = netlist.gates_by_id[target]
    src, dst = sp.inputs[0], sp.output
    gates = [
        Gate(g.id, g.kind, tuple(src if i == dst else i for i in g.inputs), g.output)
        for g in netlist.gates
        if g.id != target
    ]
    pos = [src if po == dst else po for po in netlist.primary_outputs]
    return _rebuild(netlist, gates, pos), FaultSpec(REMOVE_SPLITTER, target, "bypassed")


def inject(
    netlist: Netlist, kind: str, seed: int = 0, target: str | None = None
) -> tuple[Netlist, FaultSpec]:
    rng = random.Random(seed)
    if kind == SWAP_GATE:
        return _swap_gate(netlist, rng, target)
    if kind == REMOVE_DFF:
        return _remove_dff(netlist, rng, target)
    if kind == REMOVE_SPLITTER:
        return _remove_splitter(netlist, rng, target)
    raise FaultError(f"unknown fault kind {kind!r}, expected one of {', '.join(FAULT_KINDS)}")
