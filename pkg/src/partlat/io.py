"""Line-oriented text files: partition sets and tuples, quads, and term vectors.

Every file starts with a header line (``n <int>`` or ``k <int>``).  Blank
lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .constructions import MEMBER_NAMES, GeneratorQuad
from .partition import Partition, PartitionError, format_prt, parse_prt
from .terms import TermError, TermVector, format_term, parse_term


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _header(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key or not parts[1].isdigit() or int(parts[1]) < 1:
        raise PartitionError(f"expected header '{key} <positive int>', got {line!r}")
    return int(parts[1])


def read_set(text: str) -> tuple[int, list[Partition]]:
    lines = _lines(text)
    if not lines:
        raise PartitionError("empty partition file")
    n = _header(lines[0], "n")
    return n, [parse_prt(ln, n) for ln in lines[1:]]


def write_set(n: int, parts: Iterable[Partition]) -> str:
    out = [f"n {n}"]
    for p in parts:
        if p.n != n:
            raise PartitionError(f"{p} is not a partition of [{n}]")
        out.append(format_prt(p))
    return "\n".join(out) + "\n"


# a tuple file is a set file whose order matters
read_tuple = read_set
write_tuple = write_set


def is_quad_file(text: str) -> bool:
    """True if the body uses named fields (``alpha ...``) rather than bare partitions."""
    lines = _lines(text)
    return len(lines) > 1 and lines[1].split(" ", 1)[0] in MEMBER_NAMES + ("provenance", "k", "target", "perm")


def write_quad(quad: GeneratorQuad) -> str:
    out = [f"n {quad.n}"]
    for name, p in zip(MEMBER_NAMES, quad.members):
        out.append(f"{name} {format_prt(p)}")
    out.append(f"provenance {quad.provenance}")
    if quad.k is not None:
        out.append(f"k {quad.k}")
    out.append(f"target {quad.target}")
    if quad.perm is not None:
        out.append("perm " + " ".join(map(str, quad.perm)))
    return "\n".join(out) + "\n"


def read_quad(text: str) -> GeneratorQuad:
    lines = _lines(text)
    if not lines:
        raise PartitionError("empty quad file")
    n = _header(lines[0], "n")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        key, _, value = ln.partition(" ")
        if key in fields:
            raise PartitionError(f"field {key!r} given twice")
        fields[key] = value.strip()
    missing = [m for m in MEMBER_NAMES if m not in fields]
    if missing:
        raise PartitionError(f"quad file lacks {', '.join(missing)}")
    unknown = set(fields) - set(MEMBER_NAMES) - {"provenance", "k", "target", "perm"}
    if unknown:
        raise PartitionError(f"unknown quad field(s): {', '.join(sorted(unknown))}")
    members = [parse_prt(fields[m], n) for m in MEMBER_NAMES]
    perm = None
    if "perm" in fields:
        try:
            perm = tuple(int(t) for t in fields["perm"].split())
        except ValueError:
            raise PartitionError(f"bad perm line {fields['perm']!r}") from None
        if sorted(perm) != list(range(1, n + 1)):
            raise PartitionError(f"perm is not a permutation of [{n}]")
    k = int(fields["k"]) if "k" in fields else None
    return GeneratorQuad(n, *members, provenance=fields.get("provenance", "file"), k=k,
                         target=fields.get("target", "alpha"), perm=perm)


def read_terms(text: str) -> TermVector:
    lines = _lines(text)
    if not lines:
        raise TermError("empty term file")
    try:
        k = _header(lines[0], "k")
    except PartitionError as exc:
        raise TermError(str(exc)) from None
    return TermVector(k, tuple(parse_term(ln, k) for ln in lines[1:]))


def write_terms(tv: TermVector) -> str:
    return "\n".join([f"k {tv.k}"] + [format_term(t) for t in tv.terms]) + "\n"


def format_partitions(parts: Sequence[Partition]) -> str:
    return "".join(format_prt(p) + "\n" for p in parts)
