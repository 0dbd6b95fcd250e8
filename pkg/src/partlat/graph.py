"""Ladder drawings of the four parameterised constructions (DOT text).

Nodes sit on two vertical rails a_1..a_k (left) and b_1..b_k (right) with
a_{k+1} = b_{k+1} on top; c and d sit below the rails.  Each of beta, gamma
and delta gets its own line style, auxiliary rungs are grey and dashed, and
every non-singleton alpha-block becomes a rounded cluster.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import (
    ConstructionError,
    GeneratorQuad,
    Ladder,
    atom_even,
    atom_odd,
    type3_even,
    type3_odd,
)

LEMMAS = {
    "oddat": atom_odd,
    "evenat": atom_even,
    "evenhtwo": type3_even,
    "oddhtwo": type3_odd,
}

STYLES = {
    "beta": {"color": "firebrick", "style": "solid", "penwidth": "2.0"},
    "gamma": {"color": "royalblue", "style": "dotted", "penwidth": "2.5"},
    "delta": {"color": "darkgreen", "style": "dashed", "penwidth": "1.5"},
    "aux": {"color": "grey60", "style": "dashed", "penwidth": "1.0"},
}


@dataclass
class LadderDrawing:
    lemma: str
    k: int
    quad: GeneratorQuad
    labels: dict[int, str]
    pos: dict[int, tuple[float, float]]
    edges: dict[str, list[tuple[int, int]]]
    clusters: list[tuple[int, ...]]


def ladder_drawing(lemma: str, k: int) -> LadderDrawing:
    if lemma not in LEMMAS:
        raise ConstructionError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    quad = LEMMAS[lemma](k)
    L = Ladder(k)
    labels, pos = {}, {}
    for i in range(1, k + 1):
        labels[L.a(i)], pos[L.a(i)] = f"a{i}", (0.0, float(i))
        labels[L.b(i)], pos[L.b(i)] = f"b{i}", (2.0, float(i))
    labels[L.a(k + 1)], pos[L.a(k + 1)] = f"a{k + 1}", (1.0, float(k + 1))
    if quad.n >= L.c:
        labels[L.c], pos[L.c] = "c", (1.0, 0.0)
    if quad.n >= L.d:
        labels[L.d], pos[L.d] = "d", (1.0, -1.0)

    def block_path(block):
        order = sorted(block, key=lambda x: (pos[x][1], pos[x][0]))
        return list(zip(order, order[1:]))

    edges = {}
    for name in ("beta", "gamma", "delta"):
        p = getattr(quad, name)
        edges[name] = [e for b in p.blocks() for e in block_path(b)]
    if lemma in ("oddat", "evenat"):
        aux = [(L.a(i), L.b(i)) for i in range(1, k + 1)]
    else:
        aux = [(L.a(i), L.b(i)) for i in range(2, k + 1)] + [(L.a(1), L.c), (L.c, L.b(1))]
    edges["aux"] = aux
    return LadderDrawing(lemma, k, quad, labels, pos, edges, quad.alpha.blocks())


def emit_graph(lemma: str, k: int) -> str:
    """DOT source for one construction; deterministic for given (lemma, k)."""
    d = ladder_drawing(lemma, k)
    out = [f"graph {d.lemma}_k{d.k} {{", "  layout=neato;", "  node [shape=circle, fontsize=10];"]
    in_cluster = {x for b in d.clusters for x in b}
    for t, block in enumerate(d.clusters):
        out.append(f"  subgraph cluster_alpha{t} {{")
        out.append('    label="alpha"; style=rounded; color=black;')
        for x in block:
            out.append(f"    {_node(d, x)}")
        out.append("  }")
    for x in sorted(d.labels):
        if x not in in_cluster:
            out.append(f"  {_node(d, x)}")
    for name in ("beta", "gamma", "delta", "aux"):
        attrs = ", ".join(f'{key}="{val}"' for key, val in STYLES[name].items())
        for u, v in d.edges[name]:
            out.append(f'  n{u} -- n{v} [class="{name}", {attrs}];')
    out.append("}")
    return "\n".join(out) + "\n"


def _node(d: LadderDrawing, x: int) -> str:
    px, py = d.pos[x]
    return f'n{x} [label="{d.labels[x]}", pos="{px:g},{py:g}!"];'
