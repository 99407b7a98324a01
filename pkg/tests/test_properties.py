import json

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from discharge_lab.coloring import is_valid, solve, swap_23
from discharge_lab.corpus import random_graph
from discharge_lab.discharging import RULES, ChargeLedger, discharge, expected_total
from discharge_lab.plane_graph import format_plg, parse_plg, validate_class_G

graphs = st.builds(
    lambda seed, n, cls: random_graph(np.random.default_rng(seed), n, cls),
    st.integers(0, 2**32 - 1), st.integers(3, 16), st.booleans(),
)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_plg_round_trip(g):
    text = format_plg(g)
    assert format_plg(parse_plg(text)) == text


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_solutions_are_valid_and_swap_invariant(g):
    s = solve(g)
    if s is not None:
        assert is_valid(g, s) and is_valid(g, swap_23(s))


@settings(max_examples=40, deadline=None)
@given(graphs, st.randoms(use_true_random=False))
def test_ledger_invariants(g, rnd):
    ledger = discharge(g)
    assert ledger.total_initial() == ledger.total_final() == expected_total(g)
    text = ledger.dumps()
    assert ChargeLedger.from_json(json.loads(text)).dumps() == text
    order = list(RULES)
    rnd.shuffle(order)
    assert discharge(g, order=order).dumps() == text


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 16))
def test_class_G_generator(seed, n):
    g = random_graph(np.random.default_rng(seed), n, True)
    assert validate_class_G(g).verdict
