"""Sublattice closure [Phi] of a finite set of partitions, and generation checks.

The worklist visits stored elements in insertion order; when element i is
visited it is combined (meet and join) with every element stored before it,
so each unordered pair is processed exactly once.  One such pair is one
``pair_op``.  New partitions are appended to the store.

Generation queries split this into two rounds.  The core is the input
set plus every atom found.  The first round only forms pairs that touch
the core (core with core, core with anything); the second round does all
remaining pairs, again each exactly once.  Atoms are usually reached long
before the non-core pairs are needed, and a round that ends complete still
proves the store closed, so NotGenerates stays exact.

Generation queries stop early.  Every partition is the join of the atoms
below it, so once all atoms are present the closure is all of Part(n).
Along the way, whenever a new atom closes a cycle in the graph of atoms
found so far, each missing atom prt(x y) with two internally disjoint x-y
atom paths is derived directly: the joins along the two paths meet in
prt(x y).  These derivations are ordinary meets and joins of stored
elements (one ``pair_op`` per binary operation), so everything stored
always lies in [Phi].

For n <= 16 the loop runs in a numba kernel over uint8 leader rows keyed by
a packed 64-bit integer; larger ground sets use a pure-Python loop.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numba
import numpy as np
from numba import njit, prange, types
from numba.typed import Dict

from .partition import Partition, PartitionError, atom, join, meet

DEFAULT_BUDGET = 10**8
ENUMERATION_CAP = 10
FAST_MAX_N = 16
_CHUNK = 4096

_COMPLETE, _ALL_ATOMS, _TARGET_HIT, _BUDGET = 0, 1, 2, 3

if numba.config.THREADING_LAYER == "default":
    numba.config.THREADING_LAYER = "workqueue"


class Verdict(enum.Enum):
    GENERATES = "Generates"
    NOT_GENERATES = "NotGenerates"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class ClosureReport:
    n: int
    verdict: Verdict
    closure_size: int
    atoms_found: int
    pair_ops: int
    budget_hit: bool
    complete: bool
    approximate_pair_ops: bool = False
    # pair_ops count at the moment each stored element was found
    trace: np.ndarray | None = field(default=None, repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "verdict": self.verdict.value,
            "closure_size": self.closure_size,
            "closure_complete": self.complete,
            "atoms_found": self.atoms_found,
            "atoms_total": comb(self.n, 2),
            "pair_ops": self.pair_ops,
            "pair_ops_approximate": self.approximate_pair_ops,
            "budget_hit": self.budget_hit,
        }

    def to_text(self) -> str:
        lines = []
        for key, value in self.as_dict().items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


# -- numba kernel ------------------------------------------------------------------


@njit(cache=True)
def _pack(row):
    key = 0
    for t in range(row.shape[0]):
        key |= np.int64(row[t]) << (4 * t)
    return key


@njit(cache=True)
def _atom_pair(row):
    """(x, y) 0-based if row is an atom, else (-1, -1)."""
    moved = 0
    y = -1
    for t in range(row.shape[0]):
        if row[t] != t:
            moved += 1
            y = t
    if moved == 1:
        return np.int64(row[y]), np.int64(y)
    return np.int64(-1), np.int64(-1)


@njit(cache=True)
def _meet_row(a, b, out, slot, n):
    for t in range(n):
        key = np.int64(a[t]) * n + b[t]
        s = slot[key]
        if s < 0:
            slot[key] = t
            out[t] = t
        else:
            out[t] = s
    for t in range(n):
        slot[np.int64(a[t]) * n + b[t]] = -1


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _join_row(a, b, out, parent, n):
    for t in range(n):
        parent[t] = a[t]
    for t in range(n):
        if b[t] != t:
            ri = _find(parent, t)
            rj = _find(parent, b[t])
            if ri < rj:
                parent[rj] = ri
            elif rj < ri:
                parent[ri] = rj
    for t in range(n):
        out[t] = _find(parent, t)


@njit(cache=True)
def _connected(adj, n, x, y):
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    seen[x] = True
    stack[0] = x
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        if u == y:
            return True
        for w in range(n):
            if adj[u, w] and not seen[w]:
                seen[w] = True
                stack[top] = w
                top += 1
    return False


@njit(cache=True)
def _two_paths(adj, n, u, v, p1, p2):
    """Two internally disjoint u-v paths of the graph adj, as vertex lists.

    Unit-capacity max flow with every vertex split in two; returns the two
    path lengths (vertex counts), or (0, 0) if no such pair exists.
    """
    m = 2 * n
    cap = np.zeros((m, m), np.int64)
    for w in range(n):
        cap[2 * w, 2 * w + 1] = 2 if (w == u or w == v) else 1
        for z in range(n):
            if adj[w, z]:
                cap[2 * w + 1, 2 * z] = 1
    flow = np.zeros((m, m), np.int64)
    src, dst = 2 * u + 1, 2 * v
    prev = np.empty(m, np.int64)
    queue = np.empty(m, np.int64)
    for _ in range(2):
        prev[:] = -1
        prev[src] = src
        queue[0] = src
        head, tail = 0, 1
        while head < tail and prev[dst] < 0:
            a = queue[head]
            head += 1
            for b in range(m):
                if prev[b] < 0 and cap[a, b] - flow[a, b] > 0:
                    prev[b] = a
                    queue[tail] = b
                    tail += 1
        if prev[dst] < 0:
            return 0, 0
        b = dst
        while b != src:
            a = prev[b]
            flow[a, b] += 1
            flow[b, a] -= 1
            b = a
    lens = np.zeros(2, np.int64)
    for t in range(2):
        out = p1 if t == 0 else p2
        out[0] = u
        length = 1
        a = src
        while True:
            nxt = -1
            for b in range(0, m, 2):
                if flow[a, b] > 0:
                    nxt = b
                    break
            flow[a, nxt] -= 1
            w = nxt // 2
            out[length] = w
            length += 1
            if w == v:
                break
            a = 2 * w + 1
        lens[t] = length
    return lens[0], lens[1]


@njit(cache=True)
def _products_serial(store, i, js, t0, t1, meets, joins, slot, parent):
    n = store.shape[1]
    for t in range(t0, t1):
        _meet_row(store[i], store[js[t]], meets[t - t0], slot, n)
        _join_row(store[i], store[js[t]], joins[t - t0], parent, n)


@njit(cache=True, parallel=True)
def _products_parallel(store, i, js, t0, t1, meets, joins, slot, parent):
    n = store.shape[1]
    for t in prange(t0, t1):
        s = np.full(n * n, -1, np.int64)
        p = np.empty(n, np.int64)
        _meet_row(store[i], store[js[t]], meets[t - t0], s, n)
        _join_row(store[i], store[js[t]], joins[t - t0], p, n)


@njit(cache=True)
def _partners(i, rank, s1, is_core, core_idx, ncore, js):
    """Indices j < i that element i is combined with in the given rank.

    Rank 0 takes the pairs touching a core element (generators and atoms);
    rank 1 takes the rest, plus everything for elements found after rank 0.
    A plain FIFO pass is rank 1 with s1 = 0.
    """
    c = 0
    if (rank == 0 and is_core[i]) or (rank == 1 and i >= s1):
        for j in range(i):
            js[c] = j
            c += 1
    elif rank == 0:
        for t in range(ncore):
            if core_idx[t] >= i:
                break
            js[c] = core_idx[t]
            c += 1
    elif not is_core[i]:
        for j in range(i):
            if not is_core[j]:
                js[c] = j
                c += 1
    return c


@njit(cache=True)
def _grow(store, born):
    s2 = np.empty((2 * store.shape[0], store.shape[1]), np.uint8)
    s2[: store.shape[0]] = store
    b2 = np.empty(2 * born.shape[0], np.int64)
    b2[: born.shape[0]] = born
    return s2, b2


@njit(cache=True)
def _store_row(store, born, size, index, row, ops):
    key = _pack(row)
    if key in index:
        return store, born, size, False
    if size == store.shape[0]:
        store, born = _grow(store, born)
    store[size] = row
    born[size] = ops
    index[key] = size
    return store, born, size + 1, True


@njit(cache=True)
def _atom_row(x, y, out):
    for t in range(out.shape[0]):
        out[t] = t
    out[max(x, y)] = min(x, y)


@njit(cache=True)
def _complete(store, born, size, index, adj, n, ops, atoms, target_key):
    """Derive every missing atom prt(u v) that has two disjoint u-v atom paths.

    Each derivation joins the atoms along both paths and meets the two
    results; all intermediate partitions are stored.  Repeats until no
    missing atom is derivable.  Returns the updated state and whether the
    target turned up.
    """
    p1 = np.empty(n, np.int64)
    p2 = np.empty(n, np.int64)
    acc = np.empty(n, np.uint8)
    edge = np.empty(n, np.uint8)
    out = np.empty(n, np.uint8)
    arcs = np.empty((2, n), np.uint8)
    parent = np.empty(n, np.int64)
    slot = np.full(n * n, -1, np.int64)
    hit = False
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(u + 1, n):
                if adj[u, v]:
                    continue
                l1, l2 = _two_paths(adj, n, u, v, p1, p2)
                if l1 == 0:
                    continue
                for t in range(2):
                    path = p1 if t == 0 else p2
                    length = l1 if t == 0 else l2
                    _atom_row(path[0], path[1], acc)
                    for q in range(1, length - 1):
                        _atom_row(path[q], path[q + 1], edge)
                        _join_row(acc, edge, out, parent, n)
                        acc[:] = out
                        ops += 1
                        store, born, size, new = _store_row(store, born, size, index, acc, ops)
                        if new and _pack(acc) == target_key:
                            hit = True
                    arcs[t] = acc
                _meet_row(arcs[0], arcs[1], out, slot, n)
                ops += 1
                x, y = _atom_pair(out)
                if x != u or y != v:
                    raise AssertionError("two-path derivation did not give the atom")
                store, born, size, new = _store_row(store, born, size, index, out, ops)
                if _pack(out) == target_key:
                    hit = True
                adj[u, v] = True
                adj[v, u] = True
                atoms += 1
                changed = True
                if hit:
                    return store, born, size, ops, atoms, hit
    return store, born, size, ops, atoms, hit


@njit(cache=True)
def _mark(store, size, n_gen, marked, is_core, core_idx, ncore):
    """Classify elements marked..size-1 as core (generator or atom) or not."""
    if is_core.shape[0] < store.shape[0]:
        c2 = np.zeros(store.shape[0], np.bool_)
        c2[: is_core.shape[0]] = is_core
        is_core = c2
        i2 = np.empty(store.shape[0], np.int64)
        i2[:ncore] = core_idx[:ncore]
        core_idx = i2
    for t in range(marked, size):
        x, _ = _atom_pair(store[t])
        if t < n_gen or x >= 0:
            is_core[t] = True
            core_idx[ncore] = t
            ncore += 1
    return is_core, core_idx, ncore


@njit(cache=True)
def _closure_kernel(init, budget, stop_on_atoms, target_key, shortcut, parallel):
    m0, n = init.shape
    total_atoms = n * (n - 1) // 2
    cap = 64
    while cap < 4 * m0:
        cap *= 2
    store = np.empty((cap, n), np.uint8)
    born = np.zeros(cap, np.int64)
    index = Dict.empty(key_type=types.int64, value_type=types.int64)
    adj = np.zeros((n, n), np.bool_)
    size = 0
    atoms = 0
    pair_ops = 0
    status = _COMPLETE
    for r in range(m0):
        store, born, size, new = _store_row(store, born, size, index, init[r], 0)
        x, y = _atom_pair(init[r])
        if new and x >= 0:
            atoms += 1
            adj[x, y] = True
            adj[y, x] = True
    n_gen = size
    hit = target_key != -1 and target_key in index
    if shortcut and not hit:
        store, born, size, pair_ops, atoms, hit = _complete(
            store, born, size, index, adj, n, pair_ops, atoms, target_key)
    if hit:
        status = _TARGET_HIT
    elif stop_on_atoms and atoms == total_atoms:
        status = _ALL_ATOMS

    slot = np.full(n * n, -1, np.int64)
    parent = np.empty(n, np.int64)
    meets = np.empty((_CHUNK, n), np.uint8)
    joins = np.empty((_CHUNK, n), np.uint8)
    is_core = np.zeros(store.shape[0], np.bool_)
    core_idx = np.empty(store.shape[0], np.int64)
    ncore = 0
    marked = 0
    js = np.empty(store.shape[0], np.int64)
    # generation queries try core pairs first; plain closures are one FIFO pass
    rank = 0 if shortcut else 1
    s1 = 0
    while status == _COMPLETE and rank < 2:
        i = 0
        while status == _COMPLETE and i < size:
            is_core, core_idx, ncore = _mark(store, size, n_gen, marked, is_core, core_idx, ncore)
            marked = size
            if js.shape[0] < i:
                js = np.empty(store.shape[0], np.int64)
            cnt = _partners(i, rank, s1, is_core, core_idx, ncore, js)
            t0 = 0
            while t0 < cnt and status == _COMPLETE:
                t1 = min(cnt, t0 + _CHUNK)
                if parallel and t1 - t0 >= 256:
                    _products_parallel(store, i, js, t0, t1, meets, joins, slot, parent)
                else:
                    _products_serial(store, i, js, t0, t1, meets, joins, slot, parent)
                for tt in range(t1 - t0):
                    if pair_ops >= budget:
                        status = _BUDGET
                        break
                    pair_ops += 1
                    for op in range(2):
                        res = meets[tt] if op == 0 else joins[tt]
                        store, born, size, new = _store_row(store, born, size, index, res, pair_ops)
                        if not new:
                            continue
                        if _pack(res) == target_key:
                            status = _TARGET_HIT
                            break
                        x, y = _atom_pair(res)
                        if x < 0:
                            continue
                        cycle = _connected(adj, n, x, y)
                        adj[x, y] = True
                        adj[y, x] = True
                        atoms += 1
                        if shortcut and cycle:
                            store, born, size, pair_ops, atoms, hit = _complete(
                                store, born, size, index, adj, n, pair_ops, atoms, target_key)
                            if hit:
                                status = _TARGET_HIT
                                break
                        if stop_on_atoms and atoms == total_atoms:
                            status = _ALL_ATOMS
                            break
                    if status != _COMPLETE:
                        break
                t0 = t1
            i += 1
        s1 = size
        rank += 1
    return store[:size].copy(), born[:size].copy(), atoms, pair_ops, status


# -- pure-Python loop ----------------------------------------------------------------


class _PyState:
    """Store and atom graph for the pure-Python engine (same rules as the kernel)."""

    def __init__(self, n, target):
        self.n = n
        self.target = target
        self.store: list[Partition] = []
        self.born: list[int] = []
        self.seen: set[Partition] = set()
        self.adj = np.zeros((n, n), np.bool_)
        self.atoms = 0
        self.pair_ops = 0
        self.hit = False

    def add(self, p: Partition) -> bool:
        if p in self.seen:
            return False
        self.seen.add(p)
        self.store.append(p)
        self.born.append(self.pair_ops)
        if p == self.target:
            self.hit = True
        return True

    def complete(self):
        n = self.n
        p1 = np.empty(n, np.int64)
        p2 = np.empty(n, np.int64)
        changed = True
        while changed:
            changed = False
            for u in range(n):
                for v in range(u + 1, n):
                    if self.adj[u, v]:
                        continue
                    l1, l2 = _two_paths(self.adj, n, u, v, p1, p2)
                    if l1 == 0:
                        continue
                    arcs = []
                    for path in (p1[:l1].tolist(), p2[:l2].tolist()):
                        acc = atom(n, path[0] + 1, path[1] + 1)
                        for a, b in zip(path[1:-1], path[2:]):
                            acc = join(acc, atom(n, a + 1, b + 1))
                            self.pair_ops += 1
                            self.add(acc)
                        arcs.append(acc)
                    res = meet(arcs[0], arcs[1])
                    self.pair_ops += 1
                    if res != atom(n, u + 1, v + 1):
                        raise AssertionError("two-path derivation did not give the atom")
                    self.add(res)
                    self.adj[u, v] = self.adj[v, u] = True
                    self.atoms += 1
                    changed = True
                    if self.hit:
                        return


def _closure_python(init: list[Partition], budget, stop_on_atoms, target, shortcut):
    n = init[0].n
    total_atoms = comb(n, 2)
    st = _PyState(n, target)

    def note_atom(p, check_cycle):
        x, y = (v - 1 for v in p.blocks()[0])
        cycle = check_cycle and bool(_connected(st.adj, n, x, y))
        st.adj[x, y] = st.adj[y, x] = True
        st.atoms += 1
        return cycle

    for p in init:
        if st.add(p) and _is_atom(p):
            note_atom(p, False)
    if shortcut and not st.hit:
        st.complete()
    out = lambda status: (st.store, st.born, st.atoms, st.pair_ops, status)
    if st.hit:
        return out(_TARGET_HIT)
    if stop_on_atoms and st.atoms == total_atoms:
        return out(_ALL_ATOMS)
    n_gen = len({p for p in init})
    core: list[bool] = []
    core_idx: list[int] = []

    def mark():
        for t in range(len(core), len(st.store)):
            core.append(t < n_gen or _is_atom(st.store[t]))
            if core[t]:
                core_idx.append(t)

    def partners(i, rank, s1):
        if (rank == 0 and core[i]) or (rank == 1 and i >= s1):
            return range(i)
        if rank == 0:
            return [j for j in core_idx if j < i]
        return [] if core[i] else [j for j in range(i) if not core[j]]

    s1 = 0
    for rank in ((0, 1) if shortcut else (1,)):
        i = 0
        while i < len(st.store):
            mark()
            x = st.store[i]
            for j in partners(i, rank, s1):
                if st.pair_ops >= budget:
                    return out(_BUDGET)
                st.pair_ops += 1
                y = st.store[j]
                for r in (meet(x, y), join(x, y)):
                    if not st.add(r):
                        continue
                    if st.hit:
                        return out(_TARGET_HIT)
                    if not _is_atom(r):
                        continue
                    if note_atom(r, True) and shortcut:
                        st.complete()
                        if st.hit:
                            return out(_TARGET_HIT)
                    if stop_on_atoms and st.atoms == total_atoms:
                        return out(_ALL_ATOMS)
            i += 1
        s1 = len(st.store)
    return out(_COMPLETE)


def _is_atom(p: Partition) -> bool:
    return p.n - p.num_blocks() == 1


# -- public API ------------------------------------------------------------------------


def _prepare(phi: Iterable[Partition]) -> list[Partition]:
    items = list(phi)
    if not items:
        raise PartitionError("generating set must be non-empty")
    n = items[0].n
    if any(p.n != n for p in items):
        raise PartitionError("generating set mixes ground sets")
    return items


def _run(items, budget, stop_on_atoms, target, jobs, engine, shortcut=False):
    n = items[0].n
    if engine == "auto":
        engine = "numba" if n <= FAST_MAX_N else "python"
    if engine == "python":
        store, born, atoms, ops, status = _closure_python(
            items, budget, stop_on_atoms, target, shortcut)
    elif engine == "numba":
        if n > FAST_MAX_N:
            raise PartitionError(f"numba engine supports n <= {FAST_MAX_N}")
        init = np.array([p.leaders for p in items], dtype=np.uint8)
        target_key = -1
        if target is not None:
            target_key = int(_pack(np.array(target.leaders, dtype=np.uint8)))
        if jobs > 1:
            numba.set_num_threads(max(1, min(jobs, numba.config.NUMBA_NUM_THREADS)))
        rows, born_arr, atoms, ops, status = _closure_kernel(
            init, budget, stop_on_atoms, target_key, shortcut, jobs > 1)
        store = [Partition._trusted(tuple(int(v) for v in r)) for r in rows]
        born = born_arr.tolist()
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return store, np.asarray(born, dtype=np.int64), atoms, int(ops), status, jobs > 1


def _report(n, store, born, atoms, ops, status, parallel) -> ClosureReport:
    if status == _BUDGET:
        verdict = Verdict.UNKNOWN
    elif atoms == comb(n, 2):
        verdict = Verdict.GENERATES
    else:
        verdict = Verdict.NOT_GENERATES
    return ClosureReport(
        n=n,
        verdict=verdict,
        closure_size=len(store),
        atoms_found=atoms,
        pair_ops=ops,
        budget_hit=status == _BUDGET,
        complete=status == _COMPLETE,
        approximate_pair_ops=parallel,
        trace=born,
    )


def closure(phi: Iterable[Partition], budget: int = DEFAULT_BUDGET, jobs: int = 1,
            engine: str = "auto") -> tuple[list[Partition], ClosureReport]:
    """Full closure of phi: the elements in insertion order and a report.

    On budget exhaustion the partial set comes back with ``budget_hit`` set.
    """
    items = _prepare(phi)
    store, born, atoms, ops, status, par = _run(items, budget, False, None, jobs, engine)
    return store, _report(items[0].n, store, born, atoms, ops, status, par)


def generates(phi: Iterable[Partition], n: int | None = None, budget: int = DEFAULT_BUDGET,
              jobs: int = 1, engine: str = "auto", shortcut: bool = True) -> ClosureReport:
    """Decide whether phi generates Part(n) without completing the closure.

    ``shortcut=False`` disables the two-path atom derivation and
    waits for every atom to turn up in the worklist itself.
    """
    items = _prepare(phi)
    if n is not None and items[0].n != n:
        raise PartitionError(f"generating set lives on [{items[0].n}], not [{n}]")
    store, born, atoms, ops, status, par = _run(
        items, budget, True, None, jobs, engine, shortcut=shortcut)
    return _report(items[0].n, store, born, atoms, ops, status, par)


def member_of_closure(p: Partition, phi: Iterable[Partition], budget: int = DEFAULT_BUDGET,
                      engine: str = "auto") -> bool | None:
    """Membership of p in [phi], stopping at the first hit; None if the budget runs out."""
    items = _prepare(phi)
    if p.n != items[0].n:
        raise PartitionError("target and generating set live on different ground sets")
    _, _, _, _, status, _ = _run(items, budget, False, p, 1, engine)
    if status == _TARGET_HIT:
        return True
    if status == _BUDGET:
        return None
    return False


def bell_number(n: int) -> int:
    """Bell numbers from B(m+1) = sum_k C(m, k) B(k)."""
    bell = [1]
    for m in range(n):
        bell.append(sum(comb(m, k) * bell[k] for k in range(m + 1)))
    return bell[n]


def enumerate_all_partitions(n: int, cap: int = ENUMERATION_CAP) -> list[Partition]:
    """Every partition of [n], in restricted-growth order."""
    if n < 1:
        raise PartitionError("n must be positive")
    if n > cap:
        raise PartitionError(f"n={n} exceeds the enumeration cap {cap}")
    out: list[Partition] = []

    def rec(leaders: list[int], heads: list[int]):
        i = len(leaders)
        if i == n:
            out.append(Partition._trusted(tuple(leaders)))
            return
        for h in heads:
            leaders.append(h)
            rec(leaders, heads)
            leaders.pop()
        leaders.append(i)
        heads.append(i)
        rec(leaders, heads)
        heads.pop()
        leaders.pop()

    rec([], [])
    return out


def is_closed(elements: Sequence[Partition]) -> bool:
    s = set(elements)
    return all((a & b) in s and (a | b) in s for a in elements for b in elements)
