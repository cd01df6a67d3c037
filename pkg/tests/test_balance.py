"""Balance decisions, row signatures and quotient networks."""
import random

import pytest

import corpus
from synchro import (
    NotBalancedError,
    Partition,
    PartitionError,
    ResistorParallel,
    check_transitivity,
    compose,
    enumerate_balanced,
    is_balanced,
    is_finer,
    parse_partition,
    quotient,
    quotient_partition,
    quotient_relation_holds,
    row_signature,
)

R = ResistorParallel()


def test_signature_two_type_example(resistor6):
    seed = resistor6.type_partition()
    sig = row_signature(resistor6, seed, "1")
    assert sig.sums == (R.from_resistance(15), R.from_resistance(30))
    assert sig.owner_color == 1


def test_signature_triangle_doubled_input(triangle3):
    part = parse_partition("1,2;3", triangle3.cells)
    sig = row_signature(triangle3, part, "3")
    assert sig.sums == (2, 1)


def test_signature_under_trivial_partition_is_the_row(triangle3):
    trivial = Partition.trivial(3)
    sig = row_signature(triangle3, trivial, "3")
    assert sig.sums == (1, 1, 1)
    sig = row_signature(triangle3, trivial, "1")
    assert sig.sums == (1, 0, 1)


def test_signature_requires_type_compatible_partition(resistor6):
    with pytest.raises(PartitionError):
        row_signature(resistor6, Partition.single(6), "1")


def test_balanced_triangle(triangle3):
    assert is_balanced(triangle3, parse_partition("1,2;3", triangle3.cells)).balanced


def test_trivial_partition_always_balanced(triangle3, chain3, resistor6):
    for net in (triangle3, chain3, resistor6):
        assert is_balanced(net, Partition.trivial(net.n)).balanced


def test_chain_counterexample(chain3):
    result = is_balanced(chain3, parse_partition("1;2,3", chain3.cells))
    assert not result.balanced
    c, d, color = result.counterexample
    assert (c, d) == ("2", "3")
    sig_c = row_signature(chain3, parse_partition("1;2,3", chain3.cells), c)
    sig_d = row_signature(chain3, parse_partition("1;2,3", chain3.cells), d)
    assert sig_c.sums[color - 1] != sig_d.sums[color - 1]


def test_counterexample_is_first_in_cell_order(resistor6):
    result = is_balanced(resistor6, parse_partition("1;2;3;4;5,6", resistor6.cells))
    assert result.counterexample[:2] == ("5", "6")


def test_quotient_triangle(triangle3):
    part = parse_partition("1,2;3", triangle3.cells)
    qres = quotient(triangle3, part)
    q = qres.quotient
    assert q.cells == ("1+2", "3")
    assert [[q.entry(a, b) for b in q.cells] for a in q.cells] == [[1, 1], [2, 1]]
    assert quotient_relation_holds(triangle3, qres)


def test_quotient_of_trivial_partition_is_same_network(triangle3):
    qres = quotient(triangle3, Partition.trivial(3))
    assert qres.quotient == triangle3


def test_quotient_two_type_example(resistor6):
    part = parse_partition("1,2;3;4;5,6", resistor6.cells)
    qres = quotient(resistor6, part)
    q = qres.quotient
    assert q.cells == ("1+2", "3", "4", "5+6")
    # distinct rows of the final refinement table, compressed
    expected = {
        "1+2": {"1+2": 15, "3": 30},
        "3": {"1+2": 30, "4": 30, "5+6": 30},
        "4": {"3": 30, "5+6": 15},
        "5+6": {"1+2": 30, "5+6": 30},
    }
    for target in q.cells:
        for source in q.cells:
            want = expected[target].get(source)
            got = q.entry(target, source)
            if want is None:
                assert got == R.identity
            else:
                assert got == R.from_resistance(want)
    assert quotient_relation_holds(resistor6, qres)


def test_quotient_rejects_unbalanced(chain3):
    with pytest.raises(NotBalancedError) as err:
        quotient(chain3, parse_partition("1;2,3", chain3.cells))
    assert err.value.counterexample[:2] == ("2", "3")


def test_transitivity_on_resistor_example(resistor6):
    first = parse_partition("1,2;3;4;5;6", resistor6.cells)
    step1 = quotient(resistor6, first)
    second = parse_partition("1+2;3;4;5,6", step1.quotient.cells)
    report = check_transitivity(resistor6, first, second)
    assert report.ok
    direct_top = quotient(resistor6, parse_partition("1,2;3;4;5,6", resistor6.cells))
    assert report.direct == direct_top.quotient


def test_transitivity_identity_second_step(resistor6):
    first = parse_partition("1,2;3;4;5,6", resistor6.cells)
    step1 = quotient(resistor6, first)
    identity = Partition.trivial(step1.quotient.n)
    report = check_transitivity(resistor6, first, identity)
    assert report.ok
    assert report.direct == step1.quotient


def test_transitivity_trivial_first_step(triangle3):
    first = Partition.trivial(3)
    second = parse_partition("1,2;3", triangle3.cells)
    report = check_transitivity(triangle3, first, second)
    assert report.ok
    assert report.direct == quotient(triangle3, second).quotient


def test_transitivity_with_interleaved_classes():
    """Merged cell ids must agree even when classes interleave in cell order."""
    from synchro import MonoidRegistry, NaturalAdd, Network

    cells = ["a", "b", "c"]
    edges = [(x, y, 1) for x in cells for y in cells if x != y]
    net = Network.build(cells, ["t"] * 3, ["t"],
                        MonoidRegistry.uniform(NaturalAdd(), 1), edges)
    first = Partition.from_colors([1, 2, 1])  # classes {a,c} and {b} interleave
    step1 = quotient(net, first)
    assert step1.quotient.cells == ("a+c", "b")
    second = Partition.single(2)
    report = check_transitivity(net, first, second)
    assert report.ok
    assert report.direct.cells == ("a+b+c",)


def test_induced_partitions_stay_balanced_on_quotients():
    """Coarser balanced partitions survive as balanced colorings of the quotient."""
    rng = random.Random(5)
    nets = corpus.corpus_networks()[:12]
    checked = 0
    for net in nets:
        lattice = enumerate_balanced(net)
        elements = list(lattice.elements)
        for finer in elements:
            qres = quotient(net, finer)
            for coarser in elements:
                if finer == coarser or not is_finer(finer, coarser):
                    continue
                induced = quotient_partition(finer, coarser)
                assert is_balanced(qres.quotient, induced).balanced
                checked += 1
    assert checked > 0


def test_quotient_lattice_matches_coarser_elements():
    """Balanced colorings of a quotient correspond to coarser balanced ones."""
    nets = corpus.corpus_networks()[:10]
    for net in nets:
        lattice = enumerate_balanced(net)
        anchor = lattice.top
        qres = quotient(net, anchor)
        sub = enumerate_balanced(qres.quotient)
        lifted = {compose(anchor, q) for q in sub.elements}
        coarser = {p for p in lattice.elements if is_finer(anchor, p)}
        assert lifted == coarser
