"""Proof scripts: named steps whose lattice-term recipes are replayed and checked.

A script's environment starts with the four generators (alpha, beta, gamma,
delta) followed by every step in order; a recipe is a term whose variable i
refers to environment entry i.  Replay evaluates each recipe and compares it
with the step's explicitly stored partition.  The finale applies the circle
lemma to the script's perimeter cycle: once every edge atom of the cycle is
established, every atom on the cycle's vertex set is in the sublattice.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .circle import circle_witness, cycle_edges
from .closure import Verdict, generates
from .constructions import (
    MEMBER_NAMES,
    GeneratorQuad,
    Ladder,
    atom_even,
    atom_odd,
    quad_n4_atoms,
    quad_n4_mixed,
    quad_n5_type3,
    quad_n6_atom,
    quad_n7_type3,
    type3_even,
    type3_odd,
)
from .partition import (
    Partition,
    atom,
    bottom,
    from_blocks,
    join,
    parse_prt,
    relabel,
)
from .terms import Join, Meet, Term, Var, evaluate, format_term, max_var, substitute

WITNESS_CHECK_MAX_N = 24


class ScriptError(ValueError):
    pass


@dataclass(frozen=True)
class ProofStep:
    name: str
    expected: Partition
    recipe: Term


@dataclass
class ProofScript:
    name: str
    generators: GeneratorQuad
    steps: list[ProofStep]
    cycle: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.generators.n

    @property
    def env_names(self) -> list[str]:
        return list(MEMBER_NAMES) + [s.name for s in self.steps]

    def validate(self) -> None:
        names = self.env_names
        if len(set(names)) != len(names):
            raise ScriptError(f"{self.name}: duplicate step names")
        for j, step in enumerate(self.steps):
            if step.expected.n != self.n:
                raise ScriptError(f"{self.name}: step {j} ({step.name}) lives on the wrong ground set")
            if max_var(step.recipe) > 4 + j:
                raise ScriptError(f"{self.name}: step {j} ({step.name}) refers to a later or unknown name")
            if min(_var_indices(step.recipe)) < 1:
                raise ScriptError(f"{self.name}: step {j} ({step.name}) has a bad reference")
        if len(self.cycle) < 3 or len(set(self.cycle)) != len(self.cycle):
            raise ScriptError(f"{self.name}: the perimeter must be a cycle of >= 3 distinct elements")
        if not all(1 <= x <= self.n for x in self.cycle):
            raise ScriptError(f"{self.name}: perimeter element out of range")

    def relabel(self, perm: Sequence[int]) -> "ProofScript":
        return ProofScript(
            self.name,
            self.generators.relabel(perm),
            [ProofStep(s.name, relabel(s.expected, perm), s.recipe) for s in self.steps],
            tuple(perm[x - 1] for x in self.cycle),
        )

    def dump(self) -> str:
        names = self.env_names
        lines = [f"# script {self.name}", f"n {self.n}"]
        for name, p in zip(MEMBER_NAMES, self.generators.members):
            lines.append(f"# generator {name} {p}")
        for s in self.steps:
            lines.append(f"{s.name} := {format_term(s.recipe, names)}  # expected {s.expected}")
        lines.append("# cycle " + " ".join(map(str, self.cycle)))
        return "\n".join(lines) + "\n"


def _var_indices(t: Term) -> list[int]:
    if isinstance(t, Var):
        return [t.index]
    return _var_indices(t.left) + _var_indices(t.right)


@dataclass
class ReplayReport:
    script: str
    n: int
    ok: bool
    steps_total: int
    steps_checked: int
    failed_index: int | None = None
    failed_name: str | None = None
    message: str = ""
    atoms_explicit: int = 0
    atoms_established: int = 0
    atoms_total: int = 0
    cycle_edges_ok: bool = False
    witnesses_checked: int = 0

    def as_dict(self) -> dict:
        return {
            "script": self.script,
            "n": self.n,
            "ok": self.ok,
            "steps_total": self.steps_total,
            "steps_checked": self.steps_checked,
            "failed_index": self.failed_index,
            "failed_name": self.failed_name,
            "message": self.message,
            "atoms_explicit": self.atoms_explicit,
            "atoms_established": self.atoms_established,
            "atoms_total": self.atoms_total,
            "cycle_edges_ok": self.cycle_edges_ok,
            "witnesses_checked": self.witnesses_checked,
        }

    def to_text(self) -> str:
        out = []
        for key, val in self.as_dict().items():
            if isinstance(val, bool):
                val = "true" if val else "false"
            elif val is None:
                val = "-"
            out.append(f"{key}: {val}")
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def run_script(script: ProofScript, witnesses: bool | None = None) -> ReplayReport:
    """Replay every step, then check the perimeter edges and apply the circle rule.

    With ``witnesses`` (default: only for small n) the circle rule is not
    taken on trust: an explicit witness term is evaluated for every pair on
    the cycle.
    """
    script.validate()
    n = script.n
    total = n * (n - 1) // 2
    rep = ReplayReport(script.name, n, False, len(script.steps), 0, atoms_total=total)
    env = list(script.generators.members)
    for j, step in enumerate(script.steps):
        got = evaluate(step.recipe, env)
        if got != step.expected:
            rep.failed_index = j
            rep.failed_name = step.name
            rep.message = f"step {j} ({step.name}): recipe gives {got}, expected {step.expected}"
            return rep
        env.append(got)
        rep.steps_checked += 1

    atoms = {p for p in env if len(p.blocks()) == 1 and len(p.blocks()[0]) == 2}
    rep.atoms_explicit = len(atoms)
    edge_atoms = [atom(n, x, y) for x, y in cycle_edges(script.cycle)]
    missing = [p for p in edge_atoms if p not in atoms]
    if missing:
        rep.message = f"perimeter edge {missing[0]} is not established"
        return rep
    rep.cycle_edges_ok = True

    if witnesses is None:
        witnesses = n <= WITNESS_CHECK_MAX_N
    k = len(script.cycle)
    if witnesses:
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                t = circle_witness(script.cycle, i, j)
                want = atom(n, script.cycle[i - 1], script.cycle[j - 1])
                if evaluate(t, edge_atoms) != want:
                    rep.message = f"circle witness for {want} failed"
                    return rep
                rep.witnesses_checked += 1

    on_cycle = sorted(script.cycle)
    established = atoms | {atom(n, x, y) for i, x in enumerate(on_cycle) for y in on_cycle[i + 1:]}
    rep.atoms_established = len(established)
    rep.ok = rep.atoms_established == total
    if rep.ok:
        rep.message = "all steps replayed; perimeter covers the ground set"
    else:
        rep.message = f"only {rep.atoms_established} of {total} atoms established"
    return rep


# -- script construction -----------------------------------------------------------


class _Builder:
    def __init__(self, quad: GeneratorQuad):
        self.quad = quad
        self.n = quad.n
        self.steps: list[ProofStep] = []
        self.index = {name: i + 1 for i, name in enumerate(MEMBER_NAMES)}
        self.by_value: dict[Partition, str] = {}
        for name, p in zip(MEMBER_NAMES, quad.members):
            self.by_value.setdefault(p, name)

    def v(self, name: str) -> Var:
        return Var(self.index[name])

    def add(self, name: str, expected: Partition, recipe: Term) -> Var:
        if name in self.index:
            raise ScriptError(f"duplicate step name {name!r}")
        self.steps.append(ProofStep(name, expected, recipe))
        self.index[name] = len(self.index) + 1
        self.by_value.setdefault(expected, name)
        return Var(self.index[name])

    def ref(self, p: Partition) -> Var:
        try:
            return self.v(self.by_value[p])
        except KeyError:
            raise ScriptError(f"{p} has not been established") from None

    def at(self, x: int, y: int) -> Var:
        return self.ref(atom(self.n, x, y))

    def embed(self, sub: ProofScript, recipes: Sequence[Term], tag: str) -> None:
        """Replay ``sub`` inside this script along the singleton-padding embedding.

        The generators of ``sub`` are obtained as ``recipes`` (terms over this
        script's environment); every inherited step keeps its recipe with the
        generator variables redirected.
        """
        pad = self.n - sub.n
        mapping: dict[int, Term] = {}
        for i, (name, p, rec) in enumerate(zip(MEMBER_NAMES, sub.generators.members, recipes)):
            mapping[i + 1] = self.add(f"{name}_{tag}", _pad(p, pad), rec)
        for j, s in enumerate(sub.steps):
            mapping[5 + j] = self.add(s.name, _pad(s.expected, pad), _remap(s.recipe, mapping))

    def witness(self, name: str, cycle: Sequence[int], x: int, y: int) -> Var:
        """Establish prt(x y) by the circle witness over an already established cycle."""
        edges = [self.at(u, w) for u, w in cycle_edges(cycle)]
        t = circle_witness(cycle, list(cycle).index(x) + 1, list(cycle).index(y) + 1)
        t = substitute(t, {i + 1: e for i, e in enumerate(edges)})
        return self.add(name, atom(self.n, x, y), t)

    def script(self, name: str, cycle: Sequence[int]) -> ProofScript:
        return ProofScript(name, self.quad, list(self.steps), tuple(cycle))


def _remap(t: Term, mapping: dict[int, Term]) -> Term:
    if isinstance(t, Var):
        return mapping[t.index]
    return type(t)(_remap(t.left, mapping), _remap(t.right, mapping))


def _pad(p: Partition, extra: int) -> Partition:
    n = p.n
    return Partition._trusted(p.leaders + tuple(range(n, n + extra)))


def _pairs(n: int, pairs) -> Partition:
    return from_blocks(n, [list(b) for b in pairs])


def _ladder_body(B: _Builder, k: int, a: Callable[[int], int], b: Callable[[int], int], beta0: Var,
                 gamma0: Var) -> None:
    """Steps establishing every ladder edge below a_{k+1}, from alpha, beta0, gamma0, delta."""
    n = B.n
    alpha, delta = B.v("alpha"), B.v("delta")
    if k >= 3:
        eps = bottom(n)
        for i in range(1, k - 1):
            eps = join(eps, _pairs(n, [(a(i), a(i + 2)), (b(i), b(i + 2))]))
        B.add("eps", eps, Meet(Join(beta0, gamma0), delta))
    at = lambda x, y: atom(n, x, y)
    B.add("a1_a2", at(a(1), a(2)), Meet(Join(alpha, gamma0), delta))
    B.add("b1_b2", at(b(1), b(2)), Meet(Join(alpha, beta0), delta))
    B.add("a1_b2", at(a(1), b(2)), Meet(Join(alpha, B.v("b1_b2")), beta0))
    B.add("b1_a2", at(b(1), a(2)), Meet(Join(alpha, B.v("a1_a2")), gamma0))
    B.add("a2_b2", at(a(2), b(2)),
          Meet(Join(B.v("a1_a2"), B.v("a1_b2")), Join(B.v("b1_a2"), B.v("b1_b2"))))
    for q in range(2, k):
        p, r = q - 1, q + 1
        nm = lambda s: re.sub(r"[pqr]", lambda m: str({"p": p, "q": q, "r": r}[m.group()]), s)
        v = lambda s: B.v(nm(s))
        B.add(nm("aq_ar.bp_bq"), _pairs(n, [(a(q), a(r)), (b(p), b(q))]),
              Meet(Join(v("aq_bq"), gamma0), delta))
        B.add(nm("bq_br.ap_aq"), _pairs(n, [(b(q), b(r)), (a(p), a(q))]),
              Meet(Join(v("aq_bq"), beta0), delta))
        eps = B.v("eps")
        B.add(nm("ap_ar"), at(a(p), a(r)), Meet(Join(v("aq_ar.bp_bq"), v("ap_aq")), eps))
        B.add(nm("bp_br"), at(b(p), b(r)), Meet(Join(v("bq_br.ap_aq"), v("bp_bq")), eps))
        B.add(nm("aq_ar"), at(a(q), a(r)), Meet(Join(v("ap_aq"), v("ap_ar")), v("aq_ar.bp_bq")))
        B.add(nm("bq_br"), at(b(q), b(r)), Meet(Join(v("bp_bq"), v("bp_br")), v("bq_br.ap_aq")))
        B.add(nm("ar_bq"), at(a(r), b(q)), Meet(Join(v("aq_ar"), v("aq_bq")), gamma0))
        B.add(nm("br_aq"), at(b(r), a(q)), Meet(Join(v("bq_br"), v("aq_bq")), beta0))
        B.add(nm("ar_br"), at(a(r), b(r)), Meet(Join(v("ar_bq"), v("bq_br")), Join(v("aq_ar"), v("br_aq"))))


def _oddat_cycle(L: Ladder) -> list[int]:
    k = L.k
    return [L.a(i) for i in range(1, k + 2)] + [L.b(i) for i in range(k, 0, -1)]


def _require(k: int, lo: int, what: str) -> None:
    if k < lo:
        raise ScriptError(f"{what} needs k >= {lo}")


def script_oddat(k: int) -> ProofScript:
    _require(k, 2, "script_oddat")
    L = Ladder(k)
    n = 2 * k + 1
    B = _Builder(atom_odd(k))
    al, be, ga, de = (B.v(x) for x in MEMBER_NAMES)
    beta0 = _pairs(n, [(L.a(i), L.b(i + 1)) for i in range(1, k)])
    gamma0 = _pairs(n, [(L.b(i), L.a(i + 1)) for i in range(1, k)])
    b0 = B.add("beta0", beta0, Meet(be, Join(al, de)))
    g0 = B.add("gamma0", gamma0, Meet(ga, Join(al, de)))
    _ladder_body(B, k, L.a, L.b, b0, g0)
    akbk = B.at(L.a(k), L.b(k))
    B.add(f"a{k}_a{k + 1}", atom(n, L.a(k), L.a(k + 1)), Meet(Join(akbk, ga), be))
    B.add(f"b{k}_b{k + 1}", atom(n, L.b(k), L.b(k + 1)), Meet(Join(akbk, be), ga))
    return B.script(f"oddat-{k}", _oddat_cycle(L))


def script_evenat(k: int) -> ProofScript:
    _require(k, 3, "script_evenat")
    L = Ladder(k)
    n = 2 * k + 2
    B = _Builder(atom_even(k))
    al, be, ga, de = (B.v(x) for x in MEMBER_NAMES)
    beta0 = _pairs(n, [(L.a(i), L.b(i + 1)) for i in range(1, k)])
    gamma0 = _pairs(n, [(L.b(i), L.a(i + 1)) for i in range(1, k)])
    b0 = B.add("beta0", beta0, Meet(be, Join(al, de)))
    g0 = B.add("gamma0", gamma0, Meet(ga, Join(al, de)))
    _ladder_body(B, k, L.a, L.b, b0, g0)
    akbk = B.at(L.a(k), L.b(k))
    B.add(f"a{k}_a{k + 1}", atom(n, L.a(k), L.a(k + 1)), Meet(Join(akbk, ga), be))
    B.add(f"b{k}_b{k + 1}", atom(n, L.b(k), L.b(k + 1)), Meet(Join(akbk, be), ga))
    B.add("a1_c", atom(n, L.a(1), L.c), Meet(be, Join(al, ga)))
    B.add("c_b1", atom(n, L.c, L.b(1)), Meet(ga, Join(be, al)))
    return B.script(f"evenat-{k}", [L.c] + _oddat_cycle(L))


def script_evenhtwo(k: int) -> ProofScript:
    _require(k, 2, "script_evenhtwo")
    L = Ladder(k)
    n = 2 * k + 2
    B = _Builder(type3_even(k))
    al, be, ga, de = (B.v(x) for x in MEMBER_NAMES)
    rest = [x for x in range(1, n + 1) if x != L.c]
    mu = B.add("mu", from_blocks(n, [rest]), Join(be, ga))
    B.embed(script_oddat(k), [Meet(g, mu) for g in (al, be, ga, de)], "A")
    inner = _oddat_cycle(L)
    a1bk1 = B.witness(f"a1_b{k + 1}", inner, L.a(1), L.b(k + 1))
    bk1b1 = B.witness(f"b{k + 1}_b1", inner, L.b(k + 1), L.b(1))
    B.add("a1_c", atom(n, L.a(1), L.c), Meet(al, Join(a1bk1, de)))
    B.add("c_b1", atom(n, L.c, L.b(1)), Meet(al, Join(de, bk1b1)))
    return B.script(f"evenhtwo-{k}", [L.c] + inner)


def script_oddhtwo(k: int) -> ProofScript:
    _require(k, 3, "script_oddhtwo")
    L = Ladder(k)
    n = 2 * k + 3
    B = _Builder(type3_odd(k))
    al, be, ga, de = (B.v(x) for x in MEMBER_NAMES)
    rest = [x for x in range(1, n + 1) if x != L.d]
    nu = B.add("nu", from_blocks(n, [rest]), Join(al, de))
    B.embed(script_evenhtwo(k), [Meet(g, nu) for g in (al, be, ga, de)], "C")
    a1b1 = B.at(L.a(1), L.b(1))
    B.add("a1_d", atom(n, L.a(1), L.d), Meet(be, Join(a1b1, ga)))
    B.add("d_b1", atom(n, L.d, L.b(1)), Meet(ga, Join(be, a1b1)))
    B.witness("b2_c", [L.c] + _oddat_cycle(L), L.b(2), L.c)
    k1 = L.a(k + 1)
    cycle = [L.d] + [L.a(i) for i in range(1, k + 1)] + [k1] + \
        [L.b(i) for i in range(k, 1, -1)] + [L.c, L.b(1)]
    return B.script(f"oddhtwo-{k}", cycle)


# The sporadic chains, one equality per line, exactly as displayed.

_N4 = """
prt(12) = prt(12;34) & prt(124)
prt(34) = prt(12;34) & prt(134)
prt(41) = prt(124) & prt(134)
"""

_N5 = """
prt(1235) = prt(123) | prt(35)
prt(2345) = prt(35) | prt(25;34)
prt(1345) = prt(35) | prt(145)
prt(23) = prt(123) & prt(2345)
prt(34) = prt(25;34) & prt(1345)
prt(15) = prt(145) & prt(1235)
prt(45) = prt(145) & prt(2345)
prt(125;34) = prt(25;34) | prt(15)
prt(12) = prt(123) & prt(125;34)
"""

_N6 = """
prt(125;34) = prt(12) | prt(25;34)
prt(124;36) = prt(12) | prt(24;36)
prt(134;256) = prt(25;34) | prt(13;56)
prt(23456) = prt(25;34) | prt(24;36)
prt(1356;24) = prt(13;56) | prt(24;36)
prt(56) = prt(13;56) & prt(23456)
prt(15) = prt(125;34) & prt(1356;24)
prt(14) = prt(124;36) & prt(134;256)
prt(124) = prt(12) | prt(14)
prt(1356) = prt(13;56) | prt(15)
prt(134;56) = prt(13;56) | prt(14)
prt(34) = prt(25;34) & prt(134;56)
prt(24) = prt(24;36) & prt(124)
prt(36) = prt(24;36) & prt(1356)
"""

_N7 = """
prt(12347;56) = prt(123) | prt(147;56)
prt(12357;46) = prt(123) | prt(357;46)
prt(123456) = prt(123) | prt(15;26;34)
prt(17) = prt(147;56) & prt(12357;46)
prt(14;56) = prt(147;56) & prt(123456)
prt(37) = prt(357;46) & prt(12347;56)
prt(35;46) = prt(357;46) & prt(123456)
prt(34) = prt(15;26;34) & prt(12347;56)
prt(15) = prt(15;26;34) & prt(12357;46)
prt(1234) = prt(123) | prt(34)
prt(14567) = prt(147;56) | prt(15)
prt(34567) = prt(357;46) | prt(34)
prt(157;26;34) = prt(15;26;34) | prt(17)
prt(1456) = prt(14;56) | prt(15)
prt(3456) = prt(35;46) | prt(34)
prt(14) = prt(147;56) & prt(1234)
prt(47;56) = prt(147;56) & prt(34567)
prt(56) = prt(147;56) & prt(3456)
prt(46;57) = prt(357;46) & prt(14567)
prt(57) = prt(357;46) & prt(157;26;34)
prt(46) = prt(357;46) & prt(1456)
prt(1256;347) = prt(15;26;34) | prt(47;56)
prt(157;2346) = prt(15;26;34) | prt(46;57)
prt(12) = prt(123) & prt(1256;347)
prt(23) = prt(123) & prt(157;2346)
"""

_EQUATION = re.compile(r"^\s*(prt\([^)]*\))\s*=\s*(prt\([^)]*\))\s*([&|])\s*(prt\([^)]*\))\s*$")


def _step_name(p: Partition) -> str:
    return "p" + "_".join("".join(map(str, b)) for b in p.blocks())


def _chain_script(name: str, quad: GeneratorQuad, text: str, cycle: Sequence[int]) -> ProofScript:
    B = _Builder(quad)
    for line in text.strip().splitlines():
        m = _EQUATION.match(line)
        if not m:
            raise ScriptError(f"bad equation line {line!r}")
        lhs, x, op, y = (m.group(1), m.group(2), m.group(3), m.group(4))
        left, right = B.ref(parse_prt(x, quad.n)), B.ref(parse_prt(y, quad.n))
        expected = parse_prt(lhs, quad.n)
        B.add(_step_name(expected), expected, Meet(left, right) if op == "&" else Join(left, right))
    return B.script(name, cycle)


SPORADIC_SCRIPTS = ("n4", "n4atoms", "n5", "n6", "n7")


def script_sporadic(which: str) -> ProofScript:
    if which == "n4":
        return _chain_script("n4", quad_n4_mixed(), _N4, (1, 2, 3, 4))
    if which == "n4atoms":
        return _chain_script("n4atoms", quad_n4_atoms(), "", (1, 2, 3, 4))
    if which == "n5":
        return _chain_script("n5", quad_n5_type3(), _N5, (1, 2, 3, 4, 5))
    if which == "n6":
        return _chain_script("n6", quad_n6_atom(), _N6, (1, 2, 4, 3, 6, 5))
    if which == "n7":
        return _chain_script("n7", quad_n7_type3(), _N7, (1, 2, 3, 7, 5, 6, 4))
    raise ScriptError(f"unknown sporadic script {which!r}; choose from {', '.join(SPORADIC_SCRIPTS)}")


LADDER_SCRIPTS = {
    "oddat": script_oddat,
    "evenat": script_evenat,
    "evenhtwo": script_evenhtwo,
    "oddhtwo": script_oddhtwo,
}


def script_for_quad(quad: GeneratorQuad) -> ProofScript:
    """The script matching a quad's provenance, relabelled like the quad."""
    prov = quad.provenance
    if prov in ("atom_odd", "atom_even", "type3_even", "type3_odd"):
        lemma = {"atom_odd": "oddat", "atom_even": "evenat",
                 "type3_even": "evenhtwo", "type3_odd": "oddhtwo"}[prov]
        script = LADDER_SCRIPTS[lemma](quad.k)
    elif prov.startswith("sporadic-"):
        which = {"sporadic-n4": "n4atoms", "sporadic-n4-mixed": "n4", "sporadic-n5": "n5",
                 "sporadic-n6": "n6", "sporadic-n7": "n7"}[prov]
        script = script_sporadic(which)
    else:
        raise ScriptError(f"no proof script for provenance {prov!r}; use closure mode")
    if quad.perm is not None:
        script = script.relabel(quad.perm)
    if script.generators.members != quad.members:
        raise ScriptError("quad does not match its advertised construction")
    return script


# -- misc -----------------------------------------------------------------------------


def atom_join_decomposition(p: Partition) -> list[Partition]:
    """Atoms prt(m x), m the least element of its block, whose join is p."""
    out = []
    for block in p.blocks():
        out.extend(atom(p.n, block[0], x) for x in block[1:])
    return out


def window_quad(k: int) -> GeneratorQuad:
    """alpha, beta0, gamma0, delta on the 2k-element ladder a_i -> i, b_i -> k+i."""
    if k < 2:
        raise ScriptError("the window needs k >= 2")
    n = 2 * k
    a = lambda i: i
    b = lambda i: k + i
    return GeneratorQuad(
        n,
        atom(n, a(1), b(1)),
        _pairs(n, [(a(i), b(i + 1)) for i in range(1, k)]),
        _pairs(n, [(b(i), a(i + 1)) for i in range(1, k)]),
        from_blocks(n, [[a(i) for i in range(1, k + 1)], [b(i) for i in range(1, k + 1)]]),
        f"window k={k}",
        k=k,
    )


def script_window(k: int) -> ProofScript:
    quad = window_quad(k)
    B = _Builder(quad)
    _ladder_body(B, k, lambda i: i, lambda i: k + i, B.v("beta"), B.v("gamma"))
    cycle = list(range(1, k + 1)) + [k + i for i in range(k, 0, -1)]
    return B.script(f"window-{k}", cycle)


def window_check_aleph0(k: int, method: str = "auto") -> bool:
    """Every atom on the 2k-element ladder a_1..a_k, b_1..b_k lies in [alpha, beta0, gamma0, delta]."""
    if k < 2:
        raise ScriptError("the window needs k >= 2")
    if method == "auto":
        method = "closure" if k <= 6 else "replay"
    if method == "closure":
        return generates(window_quad(k).members).verdict is Verdict.GENERATES
    if method == "replay":
        return run_script(script_window(k)).ok
    raise ScriptError(f"unknown method {method!r}")
