import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from partlat.closure import (
    Verdict,
    bell_number,
    closure,
    enumerate_all_partitions,
    generates,
    is_closed,
    member_of_closure,
)
from partlat.constructions import quad_n4_atoms, quad_n4_mixed, quad_n5_type3, quad_n6_atom
from partlat.partition import PartitionError, join, meet, parse_prt, top

from strategies import partitions


def subsets(n, lo=1, hi=5):
    return st.lists(partitions(n), min_size=lo, max_size=hi)


def bell_recurrence(n):
    b = [1]
    for m in range(n):
        b.append(sum(comb(m, i) * b[i] for i in range(m + 1)))
    return b[n]


def test_bell_against_recurrence():
    for n in range(1, 15):
        assert bell_number(n) == bell_recurrence(n)
    with pytest.raises(PartitionError):
        enumerate_all_partitions(11)


def test_trivial_closures():
    store, rep = closure([top(5)])
    assert store == [top(5)] and rep.closure_size == 1 and rep.complete
    assert generates([parse_prt("prt(12)", 4)], 4).verdict is Verdict.NOT_GENERATES
    with pytest.raises(PartitionError):
        closure([])
    with pytest.raises(PartitionError):
        closure([top(4), top(5)])
    with pytest.raises(PartitionError):
        generates([top(4)], n=5)


@pytest.mark.parametrize("quad,size", [
    (quad_n4_atoms, 15), (quad_n4_mixed, 15), (quad_n5_type3, 52), (quad_n6_atom, 203)])
def test_sporadic_closure_sizes(quad, size):
    store, rep = closure(quad().members)
    assert rep.closure_size == size == len(set(store))
    assert set(store) == set(enumerate_all_partitions(quad().n))
    assert generates(quad().members).verdict is Verdict.GENERATES


def test_member_examples():
    phi6 = quad_n6_atom().members
    assert member_of_closure(phi6[0], phi6) is True
    assert member_of_closure(parse_prt("prt(56)", 6), phi6) is True
    assert member_of_closure(parse_prt("prt(12)", 6), [top(6)]) is False
    assert member_of_closure(parse_prt("prt(56)", 6), phi6, budget=0) is None


def test_report_invariants():
    rep = generates(quad_n6_atom().members)
    assert rep.verdict is Verdict.GENERATES and rep.atoms_found == 15
    assert not rep.budget_hit
    rep = generates(quad_n6_atom().members, budget=3)
    assert rep.verdict is Verdict.UNKNOWN and rep.budget_hit
    d = rep.as_dict()
    assert d["verdict"] == "Unknown" and d["atoms_total"] == 15
    assert "verdict: Unknown" in rep.to_text()


def test_trace_is_monotone():
    store, rep = closure(quad_n5_type3().members)
    trace = list(rep.trace)
    assert len(trace) == len(store) and trace == sorted(trace) and trace[0] == 0


def test_closed_result_random_pairs():
    store, _ = closure(quad_n6_atom().members)
    s = set(store)
    rng = random.Random(3)
    for _ in range(1000):
        p, q = rng.choice(store), rng.choice(store)
        assert meet(p, q) in s and join(p, q) in s
    assert is_closed(store)


@given(subsets(5))
@settings(max_examples=100, deadline=None)
def test_closure_extensive_idempotent_monotone(phi):
    c1 = set(closure(phi)[0])
    assert set(phi) <= c1
    assert set(closure(list(c1))[0]) == c1
    extra = phi + [parse_prt("prt(13)", 5)]
    assert c1 <= set(closure(extra)[0])


@given(subsets(6, 2, 4))
@settings(max_examples=100, deadline=None)
def test_early_exit_agrees_with_full_closure(phi):
    full = len(closure(phi)[0]) == bell_number(6)
    assert (generates(phi).verdict is Verdict.GENERATES) == full
    assert generates(phi, shortcut=False).verdict == generates(phi).verdict


@given(subsets(6, 1, 4))
@settings(max_examples=60, deadline=None)
def test_engines_agree(phi):
    s1, r1 = closure(phi, engine="numba")
    s2, r2 = closure(phi, engine="python")
    assert s1 == s2 and r1.pair_ops == r2.pair_ops
    g1 = generates(phi, engine="numba")
    g2 = generates(phi, engine="python")
    assert (g1.verdict, g1.pair_ops, g1.closure_size) == (g2.verdict, g2.pair_ops, g2.closure_size)


@given(subsets(6, 2, 4))
@settings(max_examples=30, deadline=None)
def test_parallel_matches_sequential(phi):
    s1, r1 = closure(phi)
    s2, r2 = closure(phi, jobs=2)
    assert set(s1) == set(s2)
    assert r2.approximate_pair_ops
    assert generates(phi, jobs=2).verdict == generates(phi).verdict


def test_python_engine_on_large_ground_set():
    # n = 17 is past the kernel; a small closed family stays small
    a = parse_prt("prt({1,2})", 17)
    b = parse_prt("prt({2,3})", 17)
    store, rep = closure([a, b])
    assert rep.complete and rep.closure_size == 4
    assert generates([a, b]).verdict is Verdict.NOT_GENERATES
    with pytest.raises(PartitionError):
        closure([a], engine="numba")
