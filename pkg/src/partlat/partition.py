"""Partitions of [n] = {1, ..., n} as elements of the partition lattice.

A partition is stored in canonical form as its *leader array*: for every
element the smallest member of its block.  Elements are 1-indexed at the
API surface; the leader tuple itself is 0-indexed.
"""

from __future__ import annotations

import enum
import re
from itertools import combinations
from typing import Iterable, Sequence


class PartitionError(ValueError):
    """Raised for malformed partitions, bad ground sets or bad prt text."""


class Partition:
    """An immutable partition of [n].

    ``p & q`` is the meet, ``p | q`` the join and ``p <= q`` the refinement
    order.  Two partitions compare equal iff they have the same ground set
    and the same blocks.
    """

    __slots__ = ("leaders", "_hash")

    def __init__(self, leaders: Sequence[int]):
        leaders = tuple(leaders)
        for i, ld in enumerate(leaders):
            if not 0 <= ld <= i or leaders[ld] != ld:
                raise PartitionError(f"not a canonical leader array: {leaders!r}")
        if not leaders:
            raise PartitionError("ground set must be non-empty")
        self.leaders = leaders
        self._hash = hash(leaders)

    @classmethod
    def _trusted(cls, leaders: tuple) -> "Partition":
        obj = object.__new__(cls)
        obj.leaders = leaders
        obj._hash = hash(leaders)
        return obj

    @property
    def n(self) -> int:
        return len(self.leaders)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.leaders == other.leaders

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Partition({format_prt(self)!r}, n={self.n})"

    def __str__(self):
        return format_prt(self)

    def __and__(self, other: "Partition") -> "Partition":
        return meet(self, other)

    def __or__(self, other: "Partition") -> "Partition":
        return join(self, other)

    def __le__(self, other: "Partition") -> bool:
        return leq(self, other)

    def __ge__(self, other: "Partition") -> bool:
        return leq(other, self)

    def same_block(self, x: int, y: int) -> bool:
        return self.leaders[x - 1] == self.leaders[y - 1]

    def block_of(self, x: int) -> tuple[int, ...]:
        ld = self.leaders[x - 1]
        return tuple(i + 1 for i, l in enumerate(self.leaders) if l == ld)

    def blocks(self, include_singletons: bool = False) -> list[tuple[int, ...]]:
        """Blocks as sorted 1-indexed tuples, ordered by smallest element."""
        groups: dict[int, list[int]] = {}
        for i, ld in enumerate(self.leaders):
            groups.setdefault(ld, []).append(i + 1)
        out = [tuple(g) for g in groups.values()]
        if not include_singletons:
            out = [b for b in out if len(b) > 1]
        return out

    def num_blocks(self) -> int:
        return sum(1 for i, ld in enumerate(self.leaders) if i == ld)


def _check_same_n(p: Partition, q: Partition) -> None:
    if len(p.leaders) != len(q.leaders):
        raise PartitionError(f"ground sets differ: n={p.n} vs n={q.n}")


def bottom(n: int) -> Partition:
    if n < 1:
        raise PartitionError(f"n must be positive, got {n}")
    return Partition._trusted(tuple(range(n)))


def top(n: int) -> Partition:
    if n < 1:
        raise PartitionError(f"n must be positive, got {n}")
    return Partition._trusted((0,) * n)


def from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> Partition:
    """Partition of [n] whose listed blocks are given; other elements are singletons."""
    if n < 1:
        raise PartitionError(f"n must be positive, got {n}")
    leaders = list(range(n))
    seen: set[int] = set()
    for block in blocks:
        block = list(block)
        for x in block:
            if not isinstance(x, int) or isinstance(x, bool):
                raise PartitionError(f"element {x!r} is not an integer")
            if not 1 <= x <= n:
                raise PartitionError(f"element {x} out of range [1, {n}]")
            if x in seen:
                raise PartitionError(f"element {x} occurs more than once")
            seen.add(x)
        if block:
            ld = min(block) - 1
            for x in block:
                leaders[x - 1] = ld
    return Partition._trusted(tuple(leaders))


def meet(p: Partition, q: Partition) -> Partition:
    _check_same_n(p, q)
    first: dict[tuple[int, int], int] = {}
    out = [first.setdefault(key, i) for i, key in enumerate(zip(p.leaders, q.leaders))]
    return Partition._trusted(tuple(out))


def join(p: Partition, q: Partition) -> Partition:
    _check_same_n(p, q)
    parent = list(p.leaders)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(q.leaders):
        if i != j:
            ri, rj = find(i), find(j)
            if ri < rj:
                parent[rj] = ri
            elif rj < ri:
                parent[ri] = rj
    # union by minimum keeps every root equal to its component's least element
    return Partition._trusted(tuple(find(i) for i in range(len(parent))))


def leq(p: Partition, q: Partition) -> bool:
    """True iff every block of p lies inside a block of q."""
    _check_same_n(p, q)
    ql = q.leaders
    return all(ql[i] == ql[ld] for i, ld in enumerate(p.leaders))


def atom(n: int, x: int, y: int) -> Partition:
    if x == y:
        raise PartitionError("an atom needs two distinct elements")
    if not (1 <= x <= n and 1 <= y <= n):
        raise PartitionError(f"elements ({x}, {y}) out of range [1, {n}]")
    return from_blocks(n, [(x, y)])


def all_atoms(n: int) -> list[Partition]:
    return [atom(n, x, y) for x, y in combinations(range(1, n + 1), 2)]


def height(p: Partition) -> int:
    """n minus the number of blocks."""
    return p.n - p.num_blocks()


class Height2Type(enum.Enum):
    TWO_PLUS_TWO = "2+2"
    THREE = "3"
    NOT_HEIGHT2 = "not-height-2"


def classify_height2(p: Partition) -> Height2Type:
    sizes = sorted(len(b) for b in p.blocks())
    if sizes == [2, 2]:
        return Height2Type.TWO_PLUS_TWO
    if sizes == [3]:
        return Height2Type.THREE
    return Height2Type.NOT_HEIGHT2


def restrict(p: Partition, n: int) -> Partition:
    """The partition of [n] induced by p, for n <= p.n."""
    if not 1 <= n <= p.n:
        raise PartitionError(f"cannot restrict a partition of [{p.n}] to [{n}]")
    # the new leader of i is the least element of its block that is < n
    newl = []
    first: dict[int, int] = {}
    for i in range(n):
        newl.append(first.setdefault(p.leaders[i], i))
    return Partition._trusted(tuple(newl))


def is_extension(q: Partition, p: Partition) -> bool:
    """True iff q (on a superset [q.n]) extends p."""
    if p.n > q.n:
        return False
    return restrict(q, p.n) == p


def enumerate_extensions(p: Partition, m: int) -> list[Partition]:
    """All partitions of [n+m] restricting to p.

    New elements are placed in increasing order; for each one the existing
    blocks are tried by increasing leader, then a fresh singleton block.
    """
    if m < 0:
        raise PartitionError("m must be non-negative")
    out: list[Partition] = []

    def rec(leaders: list[int], block_leaders: list[int], left: int):
        if left == 0:
            out.append(Partition._trusted(tuple(leaders)))
            return
        new = len(leaders)
        for ld in block_leaders:
            leaders.append(ld)
            rec(leaders, block_leaders, left - 1)
            leaders.pop()
        leaders.append(new)
        block_leaders.append(new)
        rec(leaders, block_leaders, left - 1)
        block_leaders.pop()
        leaders.pop()

    leaders = list(p.leaders)
    rec(leaders, [i for i, ld in enumerate(leaders) if i == ld], m)
    return out


def _check_perm(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise PartitionError(f"not a permutation of [{n}]: {tuple(perm)!r}")


def relabel(p: Partition, perm: Sequence[int]) -> Partition:
    """Image of p under the automorphism induced by perm (perm[x-1] is the image of x)."""
    _check_perm(perm, p.n)
    return from_blocks(p.n, [[perm[x - 1] for x in b] for b in p.blocks()])


def invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for x, y in enumerate(perm, start=1):
        inv[y - 1] = x
    return tuple(inv)


def compose_perm(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """The permutation x -> outer(inner(x))."""
    return tuple(outer[y - 1] for y in inner)


class TargetShape(enum.Enum):
    ATOM = "atom"
    TWO_PLUS_TWO = "2+2"
    THREE = "3"


def canonical_target(shape: TargetShape, n: int) -> Partition:
    """prt(12), prt(12;34) or prt(123) in Part(n)."""
    spec = {
        TargetShape.ATOM: [(1, 2)],
        TargetShape.TWO_PLUS_TWO: [(1, 2), (3, 4)],
        TargetShape.THREE: [(1, 2, 3)],
    }[shape]
    return from_blocks(n, spec)


def shape_of(p: Partition) -> TargetShape:
    h = height(p)
    if h == 1:
        return TargetShape.ATOM
    if h == 2:
        if classify_height2(p) is Height2Type.TWO_PLUS_TWO:
            return TargetShape.TWO_PLUS_TWO
        return TargetShape.THREE
    raise PartitionError(f"{format_prt(p)} has height {h}, expected 1 or 2")


def normalize_target(p: Partition) -> tuple[TargetShape, tuple[int, ...]]:
    """Shape of a height-1/2 partition and a permutation sending it to the canonical target."""
    shape = shape_of(p)
    moved = [x for b in p.blocks() for x in b]
    rest = [x for x in range(1, p.n + 1) if x not in moved]
    perm = [0] * p.n
    for img, x in enumerate(moved + rest, start=1):
        perm[x - 1] = img
    return shape, tuple(perm)


# -- text form ---------------------------------------------------------------

_BRACE_BLOCK = re.compile(r"\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}")
_COMPACT_BLOCK = re.compile(r"\d+")


def parse_prt(text: str, n: int) -> Partition:
    """Parse ``prt(13;24)`` or ``prt({1,3};{2,4})``.

    The compact digit form is only accepted for n <= 9.  Order inside a block
    and between blocks is free on input; the formatter always writes the
    canonical order.
    """
    s = text.strip()
    if not (s.startswith("prt(") and s.endswith(")")):
        raise PartitionError(f"syntax error in {text!r}: expected prt(...)")
    body = s[4:-1].strip()
    blocks: list[list[int]] = []
    if body:
        for chunk in body.split(";"):
            chunk = chunk.strip()
            if m := _BRACE_BLOCK.fullmatch(chunk):
                blocks.append([int(t) for t in m.group(1).split(",")])
            elif _COMPACT_BLOCK.fullmatch(chunk):
                if n > 9:
                    raise PartitionError(
                        f"compact block {chunk!r} is ambiguous for n={n}; use braces"
                    )
                blocks.append([int(ch) for ch in chunk])
            else:
                raise PartitionError(f"syntax error in block {chunk!r} of {text!r}")
    return from_blocks(n, blocks)


def format_prt(p: Partition) -> str:
    blocks = p.blocks()
    if p.n <= 9:
        return "prt(" + ";".join("".join(map(str, b)) for b in blocks) + ")"
    return "prt(" + ";".join("{" + ",".join(map(str, b)) + "}" for b in blocks) + ")"
