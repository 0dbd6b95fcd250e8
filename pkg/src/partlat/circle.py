"""Witness terms for the circle lemma.

The atoms along a cycle v1 - v2 - ... - vk - v1 generate every atom on
{v1, ..., vk}: the join of the edge atoms along each of the two arcs from vi
to vj is a partition with one block (the arc's vertices), and the meet of the
two arcs' blocks is {vi, vj}.
"""

from __future__ import annotations

from typing import Sequence

from .partition import Partition, PartitionError, atom, join, meet
from .terms import Meet, Term, Var, join_all


def cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int]]:
    """Edge t (1-based) joins cycle[t-1] and cycle[t]; the last edge closes the cycle."""
    k = len(cycle)
    return [(cycle[t], cycle[(t + 1) % k]) for t in range(k)]


def cycle_atoms(n: int, cycle: Sequence[int]) -> list[Partition]:
    return [atom(n, x, y) for x, y in cycle_edges(cycle)]


def circle_witness(cycle: Sequence[int], i: int, j: int) -> Term:
    """Term over the k edge atoms of ``cycle`` that evaluates to prt(v_i v_j).

    ``i`` and ``j`` are 1-based positions.  Variable t stands for edge t.
    """
    k = len(cycle)
    if k < 3:
        raise PartitionError("a cycle needs at least three vertices")
    if len(set(cycle)) != k:
        raise PartitionError("cycle vertices must be distinct")
    if i == j:
        raise PartitionError("circle_witness needs two different positions")
    if not (1 <= i <= k and 1 <= j <= k):
        raise PartitionError(f"positions ({i}, {j}) out of range for a {k}-cycle")
    i, j = min(i, j), max(i, j)
    forward = list(range(i, j))
    backward = list(range(j, k + 1)) + list(range(1, i))
    if len(forward) == 1:
        return Var(forward[0])
    if len(backward) == 1:
        return Var(backward[0])
    return Meet(join_all([Var(t) for t in forward]), join_all([Var(t) for t in backward]))


def two_path_witness(n: int, path1: Sequence[int], path2: Sequence[int]) -> tuple[Partition, list[Partition]]:
    """Meet of the joins of the atom chains along two internally disjoint x-y paths.

    Returns the resulting partition (prt(x y)) and every intermediate join, in
    the order computed.
    """
    steps: list[Partition] = []
    arcs = []
    for path in (path1, path2):
        acc = atom(n, path[0], path[1])
        for a, b in zip(path[1:], path[2:]):
            acc = join(acc, atom(n, a, b))
            steps.append(acc)
        arcs.append(acc)
    result = meet(arcs[0], arcs[1])
    steps.append(result)
    return result, steps
