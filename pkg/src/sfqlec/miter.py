"""Equivalence checking of an MCID model against a combinational spec.

Both sides are built into one shared and-inverter graph; matched input pins
are literally the same AIG variable, so a model whose unrolled logic is
structurally identical to the spec collapses to constant FALSE before any
solving.  Otherwise a seeded random-simulation pre-pass looks for an easy
disagreement, and a CDCL run settles the rest.

Counterexample models are canonicalized to the lexicographically smallest
satisfying assignment (inputs ordered by name, then step, preferring 0), so
witnesses do not depend on solver internals or on which pass found them.
"""

import random
from dataclasses import dataclass, field

from .aig import Aig, FALSE, TRUE
from .errors import SfqlecError
from .itcl import InputMatching, match_inputs
from .mcid import MCIDCircuit
from .netlist import Netlist, topological_order
from .sat import CdclSolver, cnf_from_aig, _label_key
from .trace import TimedTrace

_SIM_ROUNDS = 8
_SIM_WIDTH = 64
_CANON_CAP = 2_000_000


class MiterError(SfqlecError):
    pass


@dataclass
class Miter:
    aig: Aig
    root: int
    outputs: dict[str, tuple[int, int, int]]  # po -> (impl, golden, differ) edges
    matching: InputMatching
    mcid: MCIDCircuit
    golden: Netlist


@dataclass
class VerdictStats:
    method: str = ""
    aig_nodes: int = 0
    cnf_vars: int = 0
    cnf_clauses: int = 0
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0


@dataclass
class Verdict:
    equivalent: bool | None  # None = gave up under a solver limit
    trace: TimedTrace | None
    stats: VerdictStats
    per_output: dict[str, bool | None] | None = None


def _gate_edge(aig: Aig, func: str, ins: list[int]) -> int:
    if func in ("BUF", "DFF", "SPLIT"):
        return ins[0]
    if func == "INV":
        return ins[0] ^ 1
    if func == "AND2":
        return aig.and_(ins[0], ins[1])
    if func == "NAND2":
        return aig.and_(ins[0], ins[1]) ^ 1
    if func == "OR2":
        return aig.or_(ins[0], ins[1])
    if func == "NOR2":
        return aig.or_(ins[0], ins[1]) ^ 1
    if func == "XOR2":
        return aig.xor_(ins[0], ins[1])
    if func == "XNOR2":
        return aig.xor_(ins[0], ins[1]) ^ 1
    raise MiterError(f"no AIG construction for {func}")


def build_miter(
    mcid: MCIDCircuit, golden: Netlist, matching: InputMatching | None = None
) -> Miter:
    for g in golden.gates:
        if g.kind.name in ("DFF", "SPLIT"):
            raise MiterError(
                f"golden specification must be combinational, found {g.kind.name} gate {g.id}"
            )
    want = set(golden.primary_outputs)
    have = set(mcid.outputs)
    if want != have:
        missing = sorted(want ^ have)
        raise MiterError(f"output names differ between model and spec: {', '.join(missing)}")
    if matching is None:
        matching = match_inputs(mcid, list(golden.primary_inputs))

    aig = Aig()
    edge = {pin: aig.input_(pin) for pin in mcid.timed_inputs}
    for g in mcid.gates:
        edge[g.output] = _gate_edge(aig, g.func, [edge[i] for i in g.inputs])
    gold = {pi: edge[matching.matched[pi]] for pi in golden.primary_inputs}
    for gid in topological_order(golden):
        g = golden.gates_by_id[gid]
        gold[g.output] = _gate_edge(aig, g.kind.name, [gold[i] for i in g.inputs])

    outputs: dict[str, tuple[int, int, int]] = {}
    root = FALSE
    for po in golden.primary_outputs:
        ie = edge[mcid.outputs[po]]
        ge = gold[po]
        xe = aig.xor_(ie, ge)
        outputs[po] = (ie, ge, xe)
        root = aig.or_(root, xe)
    return Miter(aig, root, outputs, matching, mcid, golden)


def _lex_min_model(aig: Aig, root: int, model: dict) -> dict:
    """Fix cone inputs to 0 in order wherever the root stays satisfiable."""
    cnf = cnf_from_aig(aig, root)
    n_in = len(cnf.input_vars)
    if n_in * max(1, cnf.num_vars - n_in) > _CANON_CAP:
        return model
    by_var = {v: lbl for lbl, v in cnf.input_vars.items()}
    fixed: list[tuple[int, ...]] = []
    cur = dict(model)
    for var in range(1, n_in + 1):
        lbl = by_var[var]
        if cur.get(lbl, 0) == 0:
            fixed.append((-var,))
            continue
        status, m = CdclSolver(cnf.num_vars, cnf.clauses + fixed + [(-var,)]).solve()
        if status == "sat":
            cur = {l: int(m[v]) for l, v in cnf.input_vars.items()}
            fixed.append((-var,))
        else:
            fixed.append((var,))
    return cur


def _check_root(miter: Miter, root: int, stats: VerdictStats, max_conflicts, max_seconds, seed):
    aig = miter.aig
    if root == FALSE:
        stats.method = "structural"
        return Verdict(True, None, stats)
    if root == TRUE:
        stats.method = "structural"
        return Verdict(False, extract_trace(miter, {}), stats)

    ins, _ = aig.cone([root])
    labels = sorted((aig.label(i) for i in ins), key=_label_key)
    rng = random.Random(seed)
    mask = (1 << _SIM_WIDTH) - 1
    model = None
    for _ in range(_SIM_ROUNDS):
        vals = {lbl: rng.getrandbits(_SIM_WIDTH) for lbl in labels}
        (res,) = aig.evaluate(vals, [root], mask=mask)
        if res:
            bit = (res & -res).bit_length() - 1
            model = {lbl: (vals[lbl] >> bit) & 1 for lbl in labels}
            stats.method = "simulation"
            break
    if model is None:
        cnf = cnf_from_aig(aig, root)
        stats.cnf_vars = cnf.num_vars
        stats.cnf_clauses = len(cnf.clauses)
        solver = CdclSolver(cnf.num_vars, cnf.clauses, max_conflicts, max_seconds)
        status, m = solver.solve()
        stats.method = "sat"
        stats.decisions = solver.stats.decisions
        stats.conflicts = solver.stats.conflicts
        stats.propagations = solver.stats.propagations
        if status == "unknown":
            return Verdict(None, None, stats)
        if status == "unsat":
            return Verdict(True, None, stats)
        model = {lbl: int(m[var]) for lbl, var in cnf.input_vars.items()}
    model = _lex_min_model(aig, root, model)
    return Verdict(False, extract_trace(miter, model), stats)


def check_equivalence(
    miter: Miter,
    max_conflicts: int | None = None,
    max_seconds: float | None = None,
    seed: int = 0,
    per_output: bool = False,
) -> Verdict:
    stats = VerdictStats(aig_nodes=len(miter.aig.nodes))
    if not per_output:
        return _check_root(miter, miter.root, stats, max_conflicts, max_seconds, seed)

    per: dict[str, bool | None] = {}
    first_bad: Verdict | None = None
    for po in miter.golden.primary_outputs:
        sub = _check_root(
            miter,
            miter.outputs[po][2],
            VerdictStats(aig_nodes=len(miter.aig.nodes)),
            max_conflicts,
            max_seconds,
            seed,
        )
        per[po] = sub.equivalent
        stats.decisions += sub.stats.decisions
        stats.conflicts += sub.stats.conflicts
        stats.cnf_vars = max(stats.cnf_vars, sub.stats.cnf_vars)
        stats.cnf_clauses = max(stats.cnf_clauses, sub.stats.cnf_clauses)
        if first_bad is None and sub.equivalent is False:
            first_bad = sub
    stats.method = "per-output"
    if first_bad is not None:
        verdict = Verdict(False, first_bad.trace, stats)
    elif any(v is None for v in per.values()):
        verdict = Verdict(None, None, stats)
    else:
        verdict = Verdict(True, None, stats)
    verdict.per_output = per
    return verdict


def extract_trace(miter: Miter, model: dict) -> TimedTrace:
    """Turn a distinguishing assignment into a cycle-by-cycle trace."""
    aig, mcid = miter.aig, miter.mcid
    failing = None
    bits = (0, 0)
    for po in miter.golden.primary_outputs:
        ie, ge, _ = miter.outputs[po]
        iv, gv = aig.evaluate(model, [ie, ge])
        if iv != gv:
            failing, bits = po, (iv, gv)
            break
    if failing is None:
        raise MiterError("assignment does not distinguish the two sides")
    pins = mcid.timed_inputs
    earliest = min((p.step for p in pins), default=0)
    latest = max((p.step for p in pins), default=0)
    timed = {(p.net, p.step - earliest): model.get(p, 0) for p in pins}
    golden_assign = {pi: model.get(sig, 0) for pi, sig in miter.matching.matched.items()}
    return TimedTrace(
        pi_order=mcid.source_pis,
        n_cycles=latest - earliest + 1,
        timed_assignment=timed,
        golden_assignment=golden_assign,
        output_name=failing,
        mcid_output=bits[0],
        golden_output=bits[1],
        observation_cycle=-earliest,
    )
