"""Gate-level netlist core: gate library, bench-format parser/writer, ordering.

A netlist is a DAG of single-output gates over named nets.  Clocking is a
property of the gate kind (there are no clock nets): every clocked gate is
one pipeline stage deep.  Which kinds count as clocked is ultimately decided
by a technology profile; the flags stored here are the defaults.
"""

from dataclasses import dataclass, field
import heapq
import re

from .errors import SfqlecError


class NetlistError(SfqlecError):
    """Structural problem in a netlist (bad wiring, cycle, arity, ...)."""


class BenchParseError(NetlistError):
    """Syntax or semantic error in a bench file, with a line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class GateKind:
    name: str
    arity: int
    clocked: bool


# The fixed cell library.  SPLIT is the only kind that is non-clocked by
# default; profiles may widen that set (e.g. CMOS) or shrink it (e.g. AQFP).
KINDS: dict[str, GateKind] = {
    k.name: k
    for k in (
        GateKind("AND2", 2, True),
        GateKind("OR2", 2, True),
        GateKind("XOR2", 2, True),
        GateKind("NAND2", 2, True),
        GateKind("NOR2", 2, True),
        GateKind("XNOR2", 2, True),
        GateKind("INV", 1, True),
        GateKind("BUF", 1, True),
        GateKind("DFF", 1, True),
        GateKind("SPLIT", 1, False),
    )
}

DEFAULT_NON_CLOCKED = frozenset({"SPLIT"})


def get_kind(name: str) -> GateKind:
    kind = KINDS.get(name.upper())
    if kind is None:
        raise NetlistError(f"unknown gate kind {name!r}")
    return kind


def evaluate_kind(name: str, args: list[int], mask: int = 1) -> int:
    """Bitwise evaluation of one gate function.

    Works on plain bits (mask=1) and on wide integers used as parallel
    bit-vectors (mask = all-ones of the vector width).  DFF/SPLIT/BUF are
    identities here; any time shift is handled by the caller.
    """
    if name == "AND2":
        return args[0] & args[1]
    if name == "OR2":
        return args[0] | args[1]
    if name == "XOR2":
        return args[0] ^ args[1]
    if name == "NAND2":
        return mask ^ (args[0] & args[1])
    if name == "NOR2":
        return mask ^ (args[0] | args[1])
    if name == "XNOR2":
        return mask ^ args[0] ^ args[1]
    if name == "INV":
        return mask ^ args[0]
    if name in ("BUF", "DFF", "SPLIT"):
        return args[0]
    raise NetlistError(f"unknown gate kind {name!r}")


@dataclass(frozen=True)
class Gate:
    id: str
    kind: GateKind
    inputs: tuple[str, ...]
    output: str


# Names: letters/underscore first, then the bench charset plus '@' and '-'
# so that timed-model dumps ("a@t-1") stay re-parseable.
_NAME = r"[A-Za-z_][A-Za-z0-9_.@-]*"
_NAME_RE = re.compile(rf"^{_NAME}$")
_IO_RE = re.compile(rf"^(INPUT|OUTPUT)\s*\(\s*({_NAME})\s*\)$", re.IGNORECASE)
_GATE_RE = re.compile(rf"^({_NAME})\s*=\s*([A-Za-z0-9_]+)\s*\((.*)\)$")


@dataclass
class Netlist:
    """Immutable-by-convention DAG of gates.

    Derived lookup maps are built once at construction.  Each net has at
    most one driver; primary outputs must be gate-driven or primary inputs.
    """

    name: str
    primary_inputs: tuple[str, ...]
    primary_outputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    driver_of: dict[str, Gate] = field(init=False, repr=False, compare=False)
    gates_by_id: dict[str, Gate] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self.driver_of = {}
        self.gates_by_id = {}
        pi_set = set(self.primary_inputs)
        if len(pi_set) != len(self.primary_inputs):
            raise NetlistError("duplicate primary input declaration")
        if len(set(self.primary_outputs)) != len(self.primary_outputs):
            raise NetlistError("duplicate primary output declaration")
        for g in self.gates:
            if g.id in self.gates_by_id:
                raise NetlistError(f"duplicate gate id {g.id!r}")
            if g.output in pi_set:
                raise NetlistError(f"net {g.output!r} driven by a gate but declared INPUT")
            if g.output in self.driver_of:
                raise NetlistError(f"net {g.output!r} has two drivers")
            if len(g.inputs) != g.kind.arity:
                raise NetlistError(
                    f"gate {g.id!r}: {g.kind.name} takes {g.kind.arity} inputs, got {len(g.inputs)}"
                )
            self.driver_of[g.output] = g
            self.gates_by_id[g.id] = g
        for g in self.gates:
            for net in g.inputs:
                if net not in pi_set and net not in self.driver_of:
                    raise NetlistError(f"gate {g.id!r} reads undriven net {net!r}")
        for po in self.primary_outputs:
            if po not in pi_set and po not in self.driver_of:
                raise NetlistError(f"primary output {po!r} is undriven")
        # raises on cycles
        topological_order(self)

    def is_pi(self, net: str) -> bool:
        cached = getattr(self, "_pis", None)
        if cached is None:
            cached = set(self.primary_inputs)
            self._pis = cached
        return net in cached


def parse_netlist(text: str, name: str = "netlist") -> Netlist:
    """Parse the bench-style format.

    Grammar per line: ``INPUT(<name>)``, ``OUTPUT(<name>)`` or
    ``<out> = <KIND>(<in>{, <in>})``.  '#' starts a comment, blank lines are
    skipped, kind names are case-insensitive.
    """
    pis: list[str] = []
    pos: list[str] = []
    gates: list[Gate] = []
    seen_pis: set[str] = set()
    seen_outputs: set[str] = set()
    seen_pos: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _IO_RE.match(line)
        if m:
            keyword, net = m.group(1).upper(), m.group(2)
            if keyword == "INPUT":
                if net in seen_pis:
                    raise BenchParseError(line_no, f"duplicate INPUT({net})")
                seen_pis.add(net)
                pis.append(net)
            else:
                if net in seen_pos:
                    raise BenchParseError(line_no, f"duplicate OUTPUT({net})")
                seen_pos.add(net)
                pos.append(net)
            continue
        m = _GATE_RE.match(line)
        if m:
            out, kind_name, arg_text = m.group(1), m.group(2), m.group(3)
            try:
                kind = get_kind(kind_name)
            except NetlistError as exc:
                raise BenchParseError(line_no, str(exc)) from None
            args = [a.strip() for a in arg_text.split(",")] if arg_text.strip() else []
            for a in args:
                if not _NAME_RE.match(a):
                    raise BenchParseError(line_no, f"bad net name {a!r}")
            if len(args) != kind.arity:
                raise BenchParseError(
                    line_no, f"{kind.name} takes {kind.arity} inputs, got {len(args)}"
                )
            if out in seen_outputs:
                raise BenchParseError(line_no, f"net {out!r} has two drivers")
            seen_outputs.add(out)
            gates.append(Gate(id=out, kind=kind, inputs=tuple(args), output=out))
            continue
        raise BenchParseError(line_no, f"cannot parse {line!r}")
    return Netlist(name=name, primary_inputs=tuple(pis), primary_outputs=tuple(pos), gates=tuple(gates))


def write_netlist(netlist: Netlist) -> str:
    """Emit bench text: INPUTs, OUTPUTs, then gates in topological order."""
    lines = [f"INPUT({n})" for n in netlist.primary_inputs]
    lines += [f"OUTPUT({n})" for n in netlist.primary_outputs]
    for gid in topological_order(netlist):
        g = netlist.gates_by_id[gid]
        lines.append(f"{g.output} = {g.kind.name}({', '.join(g.inputs)})")
    return "\n".join(lines) + "\n"


def topological_order(netlist: Netlist) -> list[str]:
    """Kahn's algorithm over gates; deterministic, ties broken by gate id."""
    indegree: dict[str, int] = {}
    consumers: dict[str, list[str]] = {}
    for g in netlist.gates:
        deps = 0
        for net in g.inputs:
            drv = netlist.driver_of.get(net)
            if drv is not None:
                deps += 1
                consumers.setdefault(drv.id, []).append(g.id)
        indegree[g.id] = deps
    ready = [gid for gid, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        gid = heapq.heappop(ready)
        order.append(gid)
        for nxt in consumers.get(gid, ()):
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heapq.heappush(ready, nxt)
    if len(order) != len(netlist.gates):
        stuck = sorted(set(indegree) - set(order))
        raise NetlistError(f"cycle detected involving gate(s): {', '.join(stuck[:5])}")
    return order


def _non_clocked_set(profile) -> frozenset:
    if profile is None:
        return DEFAULT_NON_CLOCKED
    return frozenset(profile.non_clocked_kinds)


def logic_levels(netlist: Netlist, profile=None) -> dict[str, int]:
    """Level of every net: max count of clocked gates on any PI-to-net path."""
    non_clocked = _non_clocked_set(profile)
    levels = {pi: 0 for pi in netlist.primary_inputs}
    for gid in topological_order(netlist):
        g = netlist.gates_by_id[gid]
        step = 0 if g.kind.name in non_clocked else 1
        levels[g.output] = max(levels[net] for net in g.inputs) + step
    return levels


def logic_level(netlist: Netlist, net: str, profile=None) -> int:
    levels = logic_levels(netlist, profile)
    if net not in levels:
        raise NetlistError(f"unknown net {net!r}")
    return levels[net]


def circuit_depth(netlist: Netlist, profile=None) -> int:
    """Maximum logic level over the primary outputs."""
    levels = logic_levels(netlist, profile)
    return max((levels[po] for po in netlist.primary_outputs), default=0)
