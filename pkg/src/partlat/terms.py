"""Lattice terms: AST, text DSL, evaluation on partition tuples, and session keys.

Grammar (``&`` is meet and binds tighter than ``|``, join; both left-assoc)::

    expr   := meetop ('|' meetop)*
    meetop := atom ('&' atom)*
    atom   := VAR | '(' expr ')'

``VAR`` is ``x1`` .. ``xk``; when a name table is supplied, identifiers from
the table are accepted too.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .partition import Partition, PartitionError, format_prt, join, meet


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


Term = Union[Var, Meet, Join]


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + max(depth(t.left), depth(t.right))


def max_var(t: Term) -> int:
    if isinstance(t, Var):
        return t.index
    return max(max_var(t.left), max_var(t.right))


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    return variables(t.left) | variables(t.right)


def substitute(t: Term, mapping: Mapping[int, Term]) -> Term:
    """Replace each variable i by mapping[i] (variables not in mapping are kept)."""
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))


def join_all(terms: Sequence[Term]) -> Term:
    if not terms:
        raise TermError("empty join")
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<op>[&|()])|(?P<name>[A-Za-z_][A-Za-z0-9_'@.\-]*))")
_XVAR = re.compile(r"x([1-9][0-9]*)")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermError(f"syntax error at column {pos + 1} in {text!r}")
        out.append(m.group("op") or m.group("name"))
        pos = m.end()
    return out


def parse_term(text: str, k: int | None = None, names: Mapping[str, int] | None = None) -> Term:
    """Parse a term; ``k`` bounds the ``x<i>`` variable indices."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermError(f"unexpected end of input in {text!r}")
        pos += 1
        return tok

    def atom_():
        tok = take()
        if tok == "(":
            t = expr()
            if take() != ")":
                raise TermError(f"expected ')' in {text!r}")
            return t
        if tok in "&|)":
            raise TermError(f"unexpected {tok!r} in {text!r}")
        if names is not None and tok in names:
            return Var(names[tok])
        m = _XVAR.fullmatch(tok)
        if not m:
            raise TermError(f"unknown variable {tok!r} in {text!r}")
        i = int(m.group(1))
        if k is not None and i > k:
            raise TermError(f"variable x{i} out of range for arity {k}")
        return Var(i)

    def meetop():
        t = atom_()
        while peek() == "&":
            take()
            t = Meet(t, atom_())
        return t

    def expr():
        t = meetop()
        while peek() == "|":
            take()
            t = Join(t, meetop())
        return t

    if not tokens:
        raise TermError("empty term")
    t = expr()
    if pos != len(tokens):
        raise TermError(f"trailing input {tokens[pos]!r} in {text!r}")
    return t


def format_term(t: Term, names: Sequence[str] | None = None) -> str:
    """Print with the minimal parentheses needed to parse back to the same tree."""

    def leaf(i):
        return names[i - 1] if names is not None else f"x{i}"

    def fmt(t, ctx):
        # ctx: what the parent needs to avoid re-association
        if isinstance(t, Var):
            return leaf(t.index)
        if isinstance(t, Meet):
            s = f"{fmt(t.left, 'meet-left')} & {fmt(t.right, 'meet-right')}"
            return f"({s})" if ctx == "meet-right" else s
        s = f"{fmt(t.left, 'join-left')} | {fmt(t.right, 'join-right')}"
        return f"({s})" if ctx in ("meet-left", "meet-right", "join-right") else s

    return fmt(t, "top")


# -- evaluation ------------------------------------------------------------------


def evaluate(t: Term, values: Sequence[Partition]) -> Partition:
    """Evaluate t with x_i bound to values[i-1]."""
    if not values:
        raise TermError("empty argument tuple")
    n = values[0].n
    if any(v.n != n for v in values):
        raise TermError("arguments live on different ground sets")
    if max_var(t) > len(values):
        raise TermError(f"term needs {max_var(t)} arguments, got {len(values)}")

    def ev(t):
        if isinstance(t, Var):
            return values[t.index - 1]
        a, b = ev(t.left), ev(t.right)
        return meet(a, b) if isinstance(t, Meet) else join(a, b)

    return ev(t)


@dataclass(frozen=True)
class TermVector:
    k: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        if not self.terms:
            raise TermError("a term vector needs at least one term")
        for t in self.terms:
            if max_var(t) > self.k:
                raise TermError(f"term {format_term(t)} exceeds arity {self.k}")

    def evaluate(self, values: Sequence[Partition]) -> list[Partition]:
        if len(values) != self.k:
            raise TermError(f"expected {self.k} partitions, got {len(values)}")
        return [evaluate(t, values) for t in self.terms]


# -- SplitMix64 and random terms ---------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 generator (Steele, Lea, Flood); 64-bit outputs."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def random_term(rng: SplitMix64, k: int, max_depth: int) -> Term:
    """Sample a term of depth <= max_depth.

    At a node with depth budget 1 a variable is drawn. Otherwise one draw
    ``r = next() % 3`` decides: r == 0 gives a variable, else a second draw
    ``next() % 2`` picks meet (0) or join (1), then the left and right
    subterms are drawn in that order. Variables are ``x(1 + next() % k)``.
    """
    if max_depth <= 1 or rng.below(3) == 0:
        return Var(1 + rng.below(k))
    node = Meet if rng.below(2) == 0 else Join
    left = random_term(rng, k, max_depth - 1)
    right = random_term(rng, k, max_depth - 1)
    return node(left, right)


def random_terms(k: int, count: int, max_depth: int, seed: int) -> TermVector:
    if k < 1 or count < 1 or max_depth < 1:
        raise TermError("k, count and max_depth must all be positive")
    rng = SplitMix64(seed)
    return TermVector(k, tuple(random_term(rng, k, max_depth) for _ in range(count)))


def derive_session_key(tv: TermVector, values: Sequence[Partition]) -> bytes:
    """Newline-joined prt text of every evaluated term, UTF-8 encoded.

    This is raw key material; no hashing or KDF is applied.
    """
    try:
        results = tv.evaluate(values)
    except PartitionError as exc:
        raise TermError(str(exc)) from exc
    return "\n".join(format_prt(p) for p in results).encode("utf-8")
