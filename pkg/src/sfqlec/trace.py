"""Multi-cycle counterexample traces.

A trace lists, cycle by cycle, the input wave fed to the implementation,
the single wave fed to the specification, and the observed disagreement on
one output.  Cycle 0 is the earliest wave in the model's dependency window;
the output is observed `observation_cycle` waves later.
"""

from dataclasses import dataclass


@dataclass
class TimedTrace:
    pi_order: tuple[str, ...]
    n_cycles: int
    timed_assignment: dict[tuple[str, int], int]  # (pi, cycle) -> bit
    golden_assignment: dict[str, int]
    output_name: str
    mcid_output: int
    golden_output: int
    observation_cycle: int  # cycle index the model's step 0 falls on

    def wave(self, cycle: int) -> dict[str, int]:
        return {pi: self.timed_assignment.get((pi, cycle), 0) for pi in self.pi_order}

    def format_lines(self) -> list[str]:
        lines = []
        for k in range(self.n_cycles):
            bits = " ".join(f"{pi}={self.timed_assignment.get((pi, k), 0)}" for pi in self.pi_order)
            lines.append(f"CYCLE {k}: {bits}")
        bits = " ".join(f"{pi}={self.golden_assignment[pi]}" for pi in sorted(self.golden_assignment))
        lines.append(f"GOLDEN: {bits}")
        lines.append(
            f"OUTPUT {self.output_name}: impl={self.mcid_output} golden={self.golden_output}"
        )
        return lines

    def format(self) -> str:
        return "\n".join(self.format_lines()) + "\n"
