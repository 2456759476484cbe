"""Input timing constraint logic and spec-to-model input matching.

A pipelined block rarely samples all of its inputs on the same wave; an
arrival schedule records how many cycles late each primary input is fed
relative to the earliest one.  apply_itcl absorbs that skew into the MCID
circuit by retiming each input pin earlier by its relative lateness and
rebuilding the consumed value through a buffer chain, so that afterwards one
wave of the specification corresponds to one matched step of the model.
"""

from dataclasses import dataclass, field

from .errors import SfqlecError
from .mcid import MCIDCircuit, MCIDGate, TimedSignal


class ItclError(SfqlecError):
    pass


@dataclass
class ArrivalSchedule:
    lateness: dict[str, int] = field(default_factory=dict)  # PI -> cycles late

    @classmethod
    def parse(cls, text: str) -> "ArrivalSchedule":
        """Parse 'a:0,b:2,d:1'.  Unlisted inputs default to 0."""
        lateness: dict[str, int] = {}
        text = text.strip()
        if not text:
            return cls(lateness)
        for part in text.split(","):
            name, sep, val = part.strip().partition(":")
            if not sep or not name:
                raise ItclError(f"bad arrival entry {part.strip()!r}, expected name:cycles")
            try:
                cycles = int(val)
            except ValueError:
                raise ItclError(f"bad arrival entry {part.strip()!r}, expected name:cycles") from None
            if name in lateness:
                raise ItclError(f"duplicate arrival entry for {name}")
            lateness[name] = cycles
        return cls(lateness)

    def format(self) -> str:
        return ",".join(f"{pi}:{self.lateness[pi]}" for pi in sorted(self.lateness))

    def validate(self, pis: tuple[str, ...]) -> None:
        known = set(pis)
        for name, cycles in self.lateness.items():
            if name not in known:
                raise ItclError(f"arrival schedule names unknown input {name}")
            if cycles < 0:
                raise ItclError(f"arrival of {name} is negative ({cycles})")

    def shifts(self, pis: tuple[str, ...]) -> dict[str, int]:
        """Relative shift per input: its lateness above the earliest one."""
        self.validate(pis)
        t_min = min((self.lateness.get(pi, 0) for pi in pis), default=0)
        return {pi: self.lateness.get(pi, 0) - t_min for pi in pis}


def apply_itcl(mcid: MCIDCircuit, schedule: ArrivalSchedule) -> MCIDCircuit:
    """Retarget each input pin k cycles earlier (k = relative lateness) and
    splice in a k-long buffer chain that restores the value at the step its
    consumers sample.  A uniform schedule leaves the circuit untouched."""
    shifts = schedule.shifts(mcid.source_pis)
    if all(k == 0 for k in shifts.values()):
        return mcid

    replace: dict[TimedSignal, TimedSignal] = {}
    new_pins: list[TimedSignal] = []
    chains: list[MCIDGate] = []
    for pin in mcid.timed_inputs:
        k = shifts[pin.net]
        if k == 0:
            new_pins.append(pin)
            continue
        fed = TimedSignal(pin.net, pin.step - k)
        new_pins.append(fed)
        base = f"{pin.net}.itcl.t{pin.step}"  # keeps chain nets off the pin namespace
        prev = fed
        for j in range(1, k + 1):
            out = TimedSignal(base, pin.step - k + j)
            chains.append(MCIDGate(str(out), "BUF", (prev,), out, str(out)))
            prev = out
        replace[pin] = prev

    gates = chains + [
        MCIDGate(
            g.name,
            g.func,
            tuple(replace.get(i, i) for i in g.inputs),
            g.output,
            g.source_id,
        )
        for g in mcid.gates
    ]
    outputs = {po: replace.get(sig, sig) for po, sig in mcid.outputs.items()}
    timed_inputs = tuple(sorted(new_pins, key=lambda s: (s.net, s.step)))
    return MCIDCircuit(mcid.source_name, mcid.source_pis, gates, timed_inputs, outputs)


@dataclass
class InputMatching:
    t_star: int
    matched: dict[str, TimedSignal]  # spec input name -> model pin
    free: tuple[TimedSignal, ...]  # model pins left unconstrained


def match_inputs(mcid: MCIDCircuit, golden_pis: list[str]) -> InputMatching:
    """Bind one wave of the spec to model pins.

    The matched step t* is the one where the most spec inputs have a pin
    (ties break toward the latest step).  A spec input absent at t* binds to
    its nearest occurrence, earlier on ties; every unbound pin stays free.
    """
    occurrences: dict[str, list[int]] = {}
    for sig in mcid.timed_inputs:
        occurrences.setdefault(sig.net, []).append(sig.step)
    for pi in golden_pis:
        if pi not in occurrences:
            raise ItclError(f"specification input {pi} is never sampled by the model")

    tally: dict[int, int] = {}
    for pi in golden_pis:
        for step in occurrences[pi]:
            tally[step] = tally.get(step, 0) + 1
    t_star = max(tally, key=lambda s: (tally[s], s))

    matched: dict[str, TimedSignal] = {}
    for pi in golden_pis:
        steps = occurrences[pi]
        if t_star in steps:
            matched[pi] = TimedSignal(pi, t_star)
        else:
            best = min(steps, key=lambda s: (abs(s - t_star), s))
            matched[pi] = TimedSignal(pi, best)
    bound = set(matched.values())
    free = tuple(s for s in mcid.timed_inputs if s not in bound)
    return InputMatching(t_star, matched, free)
