import random

import pytest

from gen import random_comb, random_pipeline
from sfqlec import Netlist, NetlistError, parse_netlist, write_netlist, topological_order
from sfqlec.netlist import (
    BenchParseError,
    Gate,
    circuit_depth,
    evaluate_kind,
    get_kind,
    logic_levels,
)

SMALL = """
# two-stage sample
INPUT(a)
INPUT(b)
OUTPUT(y)
n1 = AND2(a, b)
n2 = DFF(n1)
y  = INV(n2)
"""


def test_parse_small_bench():
    net = parse_netlist(SMALL, name="small")
    assert net.name == "small"
    assert net.primary_inputs == ("a", "b")
    assert net.primary_outputs == ("y",)
    assert [g.id for g in net.gates] == ["n1", "n2", "y"]
    assert net.driver_of["y"].kind.name == "INV"
    assert net.is_pi("a") and not net.is_pi("n1")


def test_parse_is_case_insensitive_on_kinds():
    net = parse_netlist("INPUT(a)\nOUTPUT(y)\ny = inv(a)\n")
    assert net.driver_of["y"].kind.name == "INV"


def test_roundtrip_through_bench_text():
    for seed in range(25):
        rng = random.Random(seed)
        net = random_pipeline(rng, n_pis=rng.randint(2, 4), n_gates=rng.randint(3, 15))
        again = parse_netlist(write_netlist(net), name=net.name)
        assert again.primary_inputs == net.primary_inputs
        assert again.primary_outputs == net.primary_outputs
        assert {g.id: (g.kind.name, g.inputs) for g in again.gates} == {
            g.id: (g.kind.name, g.inputs) for g in net.gates
        }


def test_topological_order_respects_dependencies():
    for seed in range(25):
        rng = random.Random(100 + seed)
        net = random_comb(rng, n_pis=3, n_gates=rng.randint(2, 12))
        seen = set(net.primary_inputs)
        for gid in topological_order(net):
            g = net.gates_by_id[gid]
            assert all(i in seen for i in g.inputs), gid
            seen.add(g.output)
        assert len(seen) == len(net.primary_inputs) + len(net.gates)


def test_logic_levels_on_a_chain():
    net = parse_netlist(
        "INPUT(a)\nOUTPUT(d)\nb = DFF(a)\nbs = SPLIT(b)\nc = INV(bs)\nd = AND2(c, bs)\n"
    )
    lv = logic_levels(net)
    assert lv["a"] == 0
    assert lv["b"] == 1
    assert lv["bs"] == 1  # splitters do not add a level
    assert lv["c"] == 2
    assert lv["d"] == 3
    assert circuit_depth(net) == 3


@pytest.mark.parametrize(
    "kind,args,want",
    [
        ("AND2", [1, 1], 1),
        ("AND2", [1, 0], 0),
        ("NAND2", [1, 1], 0),
        ("OR2", [0, 0], 0),
        ("NOR2", [0, 0], 1),
        ("XOR2", [1, 1], 0),
        ("XNOR2", [1, 0], 0),
        ("INV", [0], 1),
        ("BUF", [1], 1),
        ("DFF", [1], 1),
        ("SPLIT", [0], 0),
    ],
)
def test_evaluate_kind_single_bits(kind, args, want):
    assert evaluate_kind(kind, args, mask=1) == want


def test_evaluate_kind_is_bitwise():
    mask = (1 << 8) - 1
    assert evaluate_kind("AND2", [0b10110011, 0b11010101], mask) == 0b10010001
    assert evaluate_kind("INV", [0b10110011], mask) == 0b01001100


def test_get_kind_rejects_unknown():
    with pytest.raises(NetlistError):
        get_kind("AND3")


def test_parse_rejects_bad_lines():
    bad = [
        "INPUT(a)\nINPUT(a)\n",  # duplicate input
        "INPUT(a)\nOUTPUT(y)\ny = FOO(a)\n",  # unknown kind
        "INPUT(a)\nOUTPUT(y)\ny = AND2(a)\n",  # arity mismatch
        "INPUT(a)\nOUTPUT(y)\ny = INV(a)\ny = INV(a)\n",  # two drivers
        "INPUT(a)\nwhat is this\n",
    ]
    for text in bad:
        with pytest.raises(BenchParseError):
            parse_netlist(text)


def test_validation_rejects_bad_graphs():
    with pytest.raises(NetlistError):  # reads an undriven net
        parse_netlist("INPUT(a)\nOUTPUT(y)\ny = AND2(a, ghost)\n")
    with pytest.raises(NetlistError):  # undriven output
        parse_netlist("INPUT(a)\nOUTPUT(y)\nn = INV(a)\n")
    with pytest.raises(NetlistError):  # gate drives a declared input
        parse_netlist("INPUT(a)\nINPUT(b)\nOUTPUT(b)\nb = INV(a)\n")
    with pytest.raises(NetlistError):  # combinational cycle
        kinds = get_kind("AND2"), get_kind("INV")
        loop = Netlist(
            name="loop",
            primary_inputs=("a",),
            primary_outputs=("y",),
            gates=(
                Gate("y", kinds[0], ("a", "z"), "y"),
                Gate("z", kinds[1], ("y",), "z"),
            ),
        )
        topological_order(loop)


def test_cycle_rejected_even_through_dff():
    # sequential loops are out of scope for this model: every net must be
    # a function of inputs only, so DFF feedback is rejected too
    with pytest.raises(NetlistError):
        net = parse_netlist("INPUT(a)\nOUTPUT(q)\nq = DFF(d)\nd = AND2(a, q)\n")
        topological_order(net)


def test_write_netlist_emits_topological_gate_order():
    net = parse_netlist(SMALL)
    text = write_netlist(net)
    lines = [l for l in text.splitlines() if "=" in l]
    assert lines.index("n1 = AND2(a, b)") < lines.index("n2 = DFF(n1)")
    assert lines[-1].startswith("y = INV")
