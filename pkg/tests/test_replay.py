import re
from dataclasses import replace

import pytest

from partlat.circle import circle_witness, cycle_atoms, two_path_witness
from partlat.closure import Verdict, closure, enumerate_all_partitions, generates
from partlat.constructions import build_for, type3_even
from partlat.partition import (
    PartitionError,
    TargetShape,
    all_atoms,
    atom,
    bottom,
    canonical_target,
    height,
    join,
    parse_prt,
    top,
)
from partlat.replay import (
    SPORADIC_SCRIPTS,
    ScriptError,
    atom_join_decomposition,
    run_script,
    script_evenat,
    script_evenhtwo,
    script_for_quad,
    script_oddat,
    script_oddhtwo,
    script_sporadic,
    script_window,
    window_check_aleph0,
    window_quad,
)
from partlat.terms import Join, Meet, Var, evaluate, parse_term


def P(text, n):
    return parse_prt(text, n)


def step_by_expected(script, text):
    want = P(text, script.n)
    return next(s for s in script.steps if s.expected == want)


def env_value(script, name):
    env = list(script.generators.members)
    for s in script.steps:
        env.append(evaluate(s.recipe, env))
    return env[script.env_names.index(name)]


@pytest.mark.parametrize("builder,lo", [
    (script_oddat, 2), (script_evenat, 3), (script_evenhtwo, 2), (script_oddhtwo, 3)])
def test_ladder_scripts_small_k(builder, lo):
    for k in range(lo, lo + 6):
        s = builder(k)
        rep = run_script(s, witnesses=True)
        assert rep.ok, rep.message
        assert rep.steps_checked == rep.steps_total == len(s.steps)
        assert rep.atoms_established == len(all_atoms(s.n))


def test_oddat_k2_stops_early():
    names = [s.name for s in script_oddat(2).steps]
    assert "eps" not in names
    assert names == ["beta0", "gamma0", "a1_a2", "b1_b2", "a1_b2", "b1_a2", "a2_b2", "a2_a3", "b2_b3"]


def test_step_counts_grow_linearly():
    counts = {k: len(script_oddat(k).steps) for k in (8, 9, 10)}
    assert counts[9] - counts[8] == counts[10] - counts[9] == 9
    assert counts[8] == 64


def test_evenhtwo_k2_mu():
    s = script_evenhtwo(2)
    assert s.generators == type3_even(2)
    mu = s.steps[0]
    assert mu.name == "mu"
    assert mu.expected.blocks(include_singletons=True) == [(1, 2, 3, 4, 5), (6,)]


def test_evenat3_atoms_match_all_atoms():
    rep = run_script(script_evenat(3))
    assert rep.ok and rep.n == 8 and rep.atoms_established == 28


def test_oddhtwo3_on_part9():
    rep = run_script(script_oddhtwo(3))
    assert rep.ok and rep.n == 9


@pytest.mark.parametrize("which", SPORADIC_SCRIPTS)
def test_sporadic_scripts_pass(which):
    rep = run_script(script_sporadic(which), witnesses=True)
    assert rep.ok, rep.message


def test_sporadic_step_counts():
    counts = {w: len(script_sporadic(w).steps) for w in SPORADIC_SCRIPTS}
    assert counts == {"n4": 3, "n4atoms": 0, "n5": 9, "n6": 14, "n7": 25}


def test_quoted_steps():
    n6 = script_sporadic("n6")
    s = step_by_expected(n6, "prt(14)")
    assert isinstance(s.recipe, Meet)
    left, right = (n6.env_names[v.index - 1] for v in (s.recipe.left, s.recipe.right))
    assert (env_value(n6, left), env_value(n6, right)) == (P("prt(124;36)", 6), P("prt(134;256)", 6))
    n7 = script_sporadic("n7")
    s = step_by_expected(n7, "prt(46;57)")
    assert [env_value(n7, n7.env_names[v.index - 1]) for v in (s.recipe.left, s.recipe.right)] == \
        [P("prt(357;46)", 7), P("prt(14567)", 7)]
    n5 = script_sporadic("n5")
    s = step_by_expected(n5, "prt(12)")
    assert [env_value(n5, n5.env_names[v.index - 1]) for v in (s.recipe.left, s.recipe.right)] == \
        [P("prt(123)", 5), P("prt(125;34)", 5)]


def mutate_expected(script, j):
    s = script.steps[j]
    other = bottom(script.n) if s.expected != bottom(script.n) else top(script.n)
    steps = list(script.steps)
    steps[j] = replace(s, expected=other)
    return replace(script, steps=steps)


def mutate_recipe(script, j):
    s = script.steps[j]
    t = s.recipe
    flipped = (Join if isinstance(t, Meet) else Meet)(t.left, t.right)
    steps = list(script.steps)
    steps[j] = replace(s, recipe=flipped)
    return replace(script, steps=steps)


@pytest.mark.parametrize("which", ["n5", "n6", "n7"])
def test_every_single_step_mutation_is_caught(which):
    script = script_sporadic(which)
    for j in range(len(script.steps)):
        for bad in (mutate_expected(script, j), mutate_recipe(script, j)):
            rep = run_script(bad)
            assert not rep.ok and rep.failed_index == j
            assert rep.failed_name == script.steps[j].name


def test_ladder_mutation_caught_at_index():
    script = script_oddhtwo(4)
    for j in (0, 7, len(script.steps) // 2, len(script.steps) - 1):
        rep = run_script(mutate_expected(script, j))
        assert rep.failed_index == j


def test_missing_perimeter_edge_fails():
    script = script_oddat(3)
    last = len(script.steps) - 1
    short = replace(script, steps=script.steps[:last])
    rep = run_script(short)
    assert not rep.ok and not rep.cycle_edges_ok


def test_validation_rejects_forward_reference():
    script = script_oddat(2)
    steps = list(script.steps)
    steps[0] = replace(steps[0], recipe=Var(9))
    with pytest.raises(ScriptError):
        run_script(replace(script, steps=steps))
    with pytest.raises(ScriptError):
        run_script(replace(script, cycle=(1, 2)))
    with pytest.raises(ScriptError):
        run_script(replace(script, cycle=(1, 2, 99)))
    dup = list(script.steps) + [script.steps[0]]
    with pytest.raises(ScriptError):
        run_script(replace(script, steps=dup))


def test_builders_reject_small_k():
    for builder, k in ((script_oddat, 1), (script_evenat, 2), (script_evenhtwo, 1), (script_oddhtwo, 2)):
        with pytest.raises(ScriptError):
            builder(k)
    with pytest.raises(ScriptError):
        script_sporadic("n8")


@pytest.mark.parametrize("script", [script_oddat(3), script_evenhtwo(2), script_sporadic("n6")],
                         ids=["oddat3", "evenhtwo2", "n6"])
def test_dump_is_replayable(script):
    text = script.dump()
    names = {name: i + 1 for i, name in enumerate(script.env_names)}
    lines = [ln for ln in text.splitlines() if ":=" in ln]
    assert len(lines) == len(script.steps)
    env = list(script.generators.members)
    for ln in lines:
        m = re.fullmatch(r"(\S+) := (.*?)  # expected (prt\(.*\))", ln)
        name, term, expected = m.groups()
        got = evaluate(parse_term(term, names=names), env)
        assert got == P(expected, script.n)
        env.append(got)
    assert text.startswith(f"# script {script.name}\nn {script.n}\n")


def test_script_for_quad_matches_closure():
    for n in range(4, 8):
        for shape in TargetShape:
            q = build_for(canonical_target(shape, n))
            if not q.provenance.startswith("search"):
                s = script_for_quad(q)
                assert run_script(s).ok
                assert generates(q.members).verdict is Verdict.GENERATES
    with pytest.raises(ScriptError):
        script_for_quad(build_for(canonical_target(TargetShape.TWO_PLUS_TWO, 7), seed=1))


def test_relabelled_script_follows_quad():
    q = build_for(P("prt(35)", 7))
    s = script_for_quad(q)
    assert s.generators == q and run_script(s).ok


# -- circle witnesses and decompositions -----------------------------------------------


def test_circle_witness_example():
    t = circle_witness((1, 2, 3, 4), 1, 3)
    atoms = cycle_atoms(4, (1, 2, 3, 4))
    assert atoms == [P("prt(12)", 4), P("prt(23)", 4), P("prt(34)", 4), P("prt(14)", 4)]
    assert t == Meet(Join(Var(1), Var(2)), Join(Var(3), Var(4)))
    assert evaluate(t, atoms) == P("prt(13)", 4)
    assert circle_witness((1, 2, 3, 4), 2, 3) == Var(2)
    assert circle_witness((1, 2, 3, 4), 1, 4) == Var(4)


def test_circle_witness_six_cycle_all_pairs():
    cycle = (2, 5, 1, 6, 3, 4)
    atoms = cycle_atoms(6, cycle)
    for i in range(1, 7):
        for j in range(1, 7):
            if i != j:
                assert evaluate(circle_witness(cycle, i, j), atoms) == atom(6, cycle[i - 1], cycle[j - 1])


def test_circle_witness_errors():
    with pytest.raises(PartitionError):
        circle_witness((1, 2), 1, 2)
    with pytest.raises(PartitionError):
        circle_witness((1, 2, 3), 2, 2)
    with pytest.raises(PartitionError):
        circle_witness((1, 2, 2), 1, 2)


@pytest.mark.parametrize("k", range(3, 9))
def test_cycle_atoms_generate(k):
    cycle = tuple(range(1, k + 1))
    atoms = cycle_atoms(k, cycle)
    store, rep = closure(atoms)
    assert rep.closure_size == len(enumerate_all_partitions(k))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            assert evaluate(circle_witness(cycle, i, j), atoms) == atom(k, i, j)


def test_two_path_witness():
    res, steps = two_path_witness(6, [1, 2, 3, 4], [1, 6, 5, 4])
    assert res == atom(6, 1, 4)
    assert steps[-1] == res and len(steps) == 5


def test_atom_join_decomposition(part5):
    assert atom_join_decomposition(P("prt(123)", 3)) == [P("prt(12)", 3), P("prt(13)", 3)]
    assert atom_join_decomposition(bottom(4)) == []
    for p in part5:
        parts = atom_join_decomposition(p)
        assert len(parts) == height(p)
        acc = bottom(5)
        for a in parts:
            acc = join(acc, a)
        assert acc == p


# -- finite window ----------------------------------------------------------------------


def test_window_quad_shape():
    q = window_quad(3)
    assert q.n == 6
    assert q.members == (P("prt(14)", 6), P("prt(15;26)", 6), P("prt(24;35)", 6), P("prt(123;456)", 6))
    with pytest.raises(ScriptError):
        window_quad(1)


@pytest.mark.parametrize("k", range(2, 6))
def test_window_closure_and_replay_agree(k):
    assert window_check_aleph0(k, method="closure")
    assert window_check_aleph0(k, method="replay")
    assert run_script(script_window(k), witnesses=True).ok


def test_window_bad_method():
    with pytest.raises(ScriptError):
        window_check_aleph0(3, method="guess")
