"""Four-element generating sets of Part(n) containing a prescribed low element.

Ladder labelling used throughout: a_i -> i for i in [k+1], b_i -> k+1+i for
i in [k], b_{k+1} = a_{k+1} = k+1, c -> 2k+2, d -> 2k+3.
"""

from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import factorial
from typing import Sequence

from .closure import DEFAULT_BUDGET, Verdict, generates
from .partition import (
    Partition,
    PartitionError,
    TargetShape,
    bottom,
    canonical_target,
    compose_perm,
    enumerate_extensions,
    from_blocks,
    invert_perm,
    normalize_target,
    parse_prt,
    relabel,
    top,
)

log = logging.getLogger(__name__)

MEMBER_NAMES = ("alpha", "beta", "gamma", "delta")


class ConstructionError(PartitionError):
    pass


@dataclass(frozen=True)
class Ladder:
    k: int

    def a(self, i: int) -> int:
        return i

    def b(self, i: int) -> int:
        return self.k + 1 if i == self.k + 1 else self.k + 1 + i

    @property
    def c(self) -> int:
        return 2 * self.k + 2

    @property
    def d(self) -> int:
        return 2 * self.k + 3

    def a_chain(self) -> list[int]:
        return [self.a(i) for i in range(1, self.k + 1)]

    def b_chain(self) -> list[int]:
        return [self.b(i) for i in range(1, self.k + 1)]


@dataclass(frozen=True)
class GeneratorQuad:
    n: int
    alpha: Partition
    beta: Partition
    gamma: Partition
    delta: Partition
    provenance: str
    k: int | None = None
    target: str = "alpha"
    # relabelling applied to the construction as written (perm[x-1] = image of x)
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        members = self.members
        if any(p.n != self.n for p in members):
            raise ConstructionError("quad members live on different ground sets")
        if len(set(members)) != 4:
            raise ConstructionError("quad members must be pairwise distinct")
        if self.target not in MEMBER_NAMES:
            raise ConstructionError(f"unknown target member {self.target!r}")

    @property
    def members(self) -> tuple[Partition, Partition, Partition, Partition]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def target_element(self) -> Partition:
        return getattr(self, self.target)

    def relabel(self, perm: Sequence[int]) -> "GeneratorQuad":
        perm = tuple(perm)
        total = perm if self.perm is None else compose_perm(perm, self.perm)
        if total == tuple(range(1, self.n + 1)):
            total = None
        return replace(
            self,
            alpha=relabel(self.alpha, perm),
            beta=relabel(self.beta, perm),
            gamma=relabel(self.gamma, perm),
            delta=relabel(self.delta, perm),
            perm=total,
        )

    def __contains__(self, p: Partition) -> bool:
        return p in self.members


def _quad(n, alpha, beta, gamma, delta, provenance, k=None, target="alpha"):
    return GeneratorQuad(
        n,
        from_blocks(n, alpha),
        from_blocks(n, beta),
        from_blocks(n, gamma),
        from_blocks(n, delta),
        provenance,
        k=k,
        target=target,
    )


def atom_odd(k: int) -> GeneratorQuad:
    """n = 2k+1, alpha = prt(a1 b1)."""
    if k < 2:
        raise ConstructionError("atom_odd needs k >= 2")
    L = Ladder(k)
    a, b = L.a, L.b
    beta = [(a(i), b(i + 1)) for i in range(1, k)] + [(a(k), a(k + 1))]
    gamma = [(b(i), a(i + 1)) for i in range(1, k)] + [(b(k), b(k + 1))]
    return _quad(2 * k + 1, [(a(1), b(1))], beta, gamma,
                 [L.a_chain(), L.b_chain()], "atom_odd", k)


def atom_even(k: int) -> GeneratorQuad:
    """n = 2k+2, alpha = prt(a1 b1); c sits in the blocks of a1 (beta) and b1 (gamma)."""
    if k < 3:
        raise ConstructionError("atom_even needs k >= 3 (the construction fails for k = 2)")
    L = Ladder(k)
    a, b, c = L.a, L.b, L.c
    beta = [(c, a(1), b(2))] + [(a(i), b(i + 1)) for i in range(2, k + 1)]
    gamma = [(c, b(1), a(2))] + [(b(i), a(i + 1)) for i in range(2, k + 1)]
    return _quad(2 * k + 2, [(a(1), b(1))], beta, gamma,
                 [L.a_chain(), L.b_chain()], "atom_even", k)


def type3_even(k: int) -> GeneratorQuad:
    """n = 2k+2, alpha = prt(a1 b1 c)."""
    if k < 2:
        raise ConstructionError("type3_even needs k >= 2")
    L = Ladder(k)
    a, b, c = L.a, L.b, L.c
    beta = [(a(i), b(i + 1)) for i in range(1, k + 1)]
    gamma = [(b(i), a(i + 1)) for i in range(1, k + 1)]
    delta = [L.a_chain(), L.b_chain(), [c, a(k + 1)]]
    return _quad(2 * k + 2, [(a(1), b(1), c)], beta, gamma, delta, "type3_even", k)


def type3_odd(k: int) -> GeneratorQuad:
    """n = 2k+3, alpha = prt(a1 b1 c); d joins a1's beta-block and b1's gamma-block."""
    if k < 3:
        raise ConstructionError("type3_odd needs k >= 3")
    L = Ladder(k)
    a, b, c, d = L.a, L.b, L.c, L.d
    beta = [(d, a(1), b(2))] + [(a(i), b(i + 1)) for i in range(2, k + 1)]
    gamma = [(d, b(1), a(2))] + [(b(i), a(i + 1)) for i in range(2, k + 1)]
    delta = [L.a_chain(), L.b_chain(), [c, a(k + 1)]]
    return _quad(2 * k + 3, [(a(1), b(1), c)], beta, gamma, delta, "type3_odd", k)


def _sporadic(n, texts, provenance, target="alpha"):
    p = [parse_prt(t, n) for t in texts]
    return GeneratorQuad(n, *p, provenance, target=target)


def quad_n4_atoms() -> GeneratorQuad:
    return _sporadic(4, ["prt(12)", "prt(23)", "prt(34)", "prt(41)"], "sporadic-n4")


def quad_n4_mixed(target: str = "alpha") -> GeneratorQuad:
    return _sporadic(4, ["prt(12;34)", "prt(23)", "prt(124)", "prt(134)"],
                     "sporadic-n4-mixed", target)


def quad_n5_type3(target: str = "alpha") -> GeneratorQuad:
    return _sporadic(5, ["prt(123)", "prt(35)", "prt(25;34)", "prt(145)"], "sporadic-n5", target)


def quad_n6_atom(target: str = "alpha") -> GeneratorQuad:
    return _sporadic(6, ["prt(12)", "prt(25;34)", "prt(13;56)", "prt(24;36)"], "sporadic-n6", target)


def quad_n7_type3() -> GeneratorQuad:
    return _sporadic(7, ["prt(123)", "prt(147;56)", "prt(357;46)", "prt(15;26;34)"], "sporadic-n7")


CONSTRUCTIONS = {
    "atom_odd": atom_odd,
    "atom_even": atom_even,
    "type3_even": type3_even,
    "type3_odd": type3_odd,
}

SPORADIC = {
    "sporadic-n4": quad_n4_atoms,
    "sporadic-n4-mixed": quad_n4_mixed,
    "sporadic-n5": quad_n5_type3,
    "sporadic-n6": quad_n6_atom,
    "sporadic-n7": quad_n7_type3,
}


# -- type 2+2 search ----------------------------------------------------------------


def _verified(members: Sequence[Partition], budget: int) -> bool:
    n = members[0].n
    if len(set(members)) != 4:
        return False
    m = members[0] & members[1] & members[2] & members[3]
    j = members[0] | members[1] | members[2] | members[3]
    if m != bottom(n) or j != top(n):
        return False
    return generates(members, budget=budget).verdict is Verdict.GENERATES


def _random_partition(rng: random.Random, n: int, max_blocks: int) -> Partition:
    b = rng.randint(2, max_blocks)
    while True:
        labels = [rng.randrange(b) for _ in range(n)]
        if len(set(labels)) == b:
            break
    blocks: dict[int, list[int]] = {}
    for x, lab in enumerate(labels, start=1):
        blocks.setdefault(lab, []).append(x)
    return from_blocks(n, blocks.values())


def _extension_chain(n, rng, budget, per_step):
    """Grow the 2+2 quad of Part(6) one element at a time, verifying each step."""
    base = quad_n6_atom(target="beta")
    _, sigma = normalize_target(base.beta)
    start = base.relabel(sigma)
    alpha = start.beta
    others = [start.alpha, start.gamma, start.delta]
    for size in range(7, n + 1):
        alpha = enumerate_extensions(alpha, 1)[-1]  # new element as a singleton
        candidates = list(itertools.product(*(enumerate_extensions(p, 1) for p in others)))
        rng.shuffle(candidates)
        for cand in candidates[:per_step]:
            if _verified((alpha, *cand), budget):
                others = list(cand)
                break
        else:
            return None
        log.debug("type22 chain reached n=%d", size)
    return (alpha, *others)


def _random_candidates(n, rng, budget, samples):
    alpha = canonical_target(TargetShape.TWO_PLUS_TWO, n)
    h = (n + 1) // 2
    for _ in range(samples):
        beta, gamma, delta = (_random_partition(rng, n, h) for _ in range(3))
        if (beta | gamma) != top(n) or (beta & gamma) != bottom(n):
            continue
        if _verified((alpha, beta, gamma, delta), budget):
            return (alpha, beta, gamma, delta)
    return None


@lru_cache(maxsize=None)
def _canonical_type22(n: int, seed: int, restarts: int, budget: int) -> GeneratorQuad | None:
    for attempt in range(restarts):
        rng = random.Random(f"type22:{n}:{seed}:{attempt}")
        found = _extension_chain(n, rng, budget, per_step=64)
        if found is None:
            found = _random_candidates(n, rng, budget, samples=2000)
        if found is not None:
            return GeneratorQuad(n, *found, provenance=f"search seed={seed}")
        log.info("type22 search attempt %d failed for n=%d", attempt, n)
    return None


def type22_search(n: int, alpha: Partition | None = None, seed: int = 1, restarts: int = 4,
                  budget: int = 10**6) -> GeneratorQuad | None:
    """Closure-verified quad containing a type 2+2 partition of [n], n >= 7.

    Returns None once ``restarts`` attempts are used up.  ``budget`` bounds
    the pair operations spent on verifying any one candidate.
    """
    if n < 7:
        raise ConstructionError("type22_search is meant for n >= 7")
    if alpha is None:
        alpha = canonical_target(TargetShape.TWO_PLUS_TWO, n)
    shape, pi = normalize_target(alpha)
    if shape is not TargetShape.TWO_PLUS_TWO or alpha.n != n:
        raise ConstructionError(f"{alpha} is not a type 2+2 partition of [{n}]")
    quad = _canonical_type22(n, seed, restarts, budget)
    if quad is None:
        return None
    return quad.relabel(invert_perm(pi))


# -- dispatcher -----------------------------------------------------------------------


def _canonical_quad(shape: TargetShape, n: int, seed: int) -> GeneratorQuad:
    if shape is TargetShape.ATOM:
        if n == 4:
            return quad_n4_atoms()
        if n == 6:
            return quad_n6_atom()
        return atom_odd((n - 1) // 2) if n % 2 else atom_even((n - 2) // 2)
    if shape is TargetShape.THREE:
        if n == 4:
            return quad_n4_mixed(target="gamma")
        if n == 5:
            return quad_n5_type3()
        if n == 7:
            return quad_n7_type3()
        return type3_odd((n - 3) // 2) if n % 2 else type3_even((n - 2) // 2)
    if n == 4:
        return quad_n4_mixed()
    if n == 5:
        return quad_n5_type3(target="gamma")
    if n == 6:
        return quad_n6_atom(target="beta")
    quad = type22_search(n, seed=seed)
    if quad is None:
        raise ConstructionError(f"type 2+2 search found nothing for n={n}, seed={seed}")
    return quad


def build_for(alpha: Partition, seed: int = 1) -> GeneratorQuad:
    """A four-element generating set of Part(n) that contains alpha (height 1 or 2)."""
    n = alpha.n
    if n < 4:
        raise ConstructionError("the partition lattices below Part(4) are out of range")
    shape, pi = normalize_target(alpha)
    quad = _canonical_quad(shape, n, seed)
    _, sigma = normalize_target(quad.target_element)
    out = quad.relabel(compose_perm(invert_perm(pi), sigma))
    assert out.target_element == alpha
    return out


# -- eligible systems -----------------------------------------------------------------


@dataclass(frozen=True)
class EligibilityReport:
    u: int
    v: int
    beta_join_gamma_top: bool
    beta_meet_gamma_bottom: bool
    alpha_join_delta_uv_top: bool
    alpha_meet_delta_uv_bottom: bool
    delta_meet_alpha_uv_bottom: bool

    @property
    def eligible(self) -> bool:
        return all(self.checks().values())

    def checks(self) -> dict[str, bool]:
        return {
            "beta|gamma = top": self.beta_join_gamma_top,
            "beta&gamma = bottom": self.beta_meet_gamma_bottom,
            "alpha|delta|prt(uv) = top": self.alpha_join_delta_uv_top,
            "alpha&(delta|prt(uv)) = bottom": self.alpha_meet_delta_uv_bottom,
            "delta&(alpha|prt(uv)) = bottom": self.delta_meet_alpha_uv_bottom,
        }

    def to_text(self) -> str:
        lines = [f"u: {self.u}", f"v: {self.v}"]
        lines += [f"{name}: {'true' if ok else 'false'}" for name, ok in self.checks().items()]
        lines.append(f"eligible: {'true' if self.eligible else 'false'}")
        return "\n".join(lines) + "\n"


def eligible_system(quad: GeneratorQuad, u: int, v: int) -> EligibilityReport:
    n = quad.n
    if u == v:
        raise ConstructionError("u and v must differ")
    uv = from_blocks(n, [(u, v)])
    al, be, ga, de = quad.members
    bot, tp = bottom(n), top(n)
    return EligibilityReport(
        u=u,
        v=v,
        beta_join_gamma_top=(be | ga) == tp,
        beta_meet_gamma_bottom=(be & ga) == bot,
        alpha_join_delta_uv_top=(al | de | uv) == tp,
        alpha_meet_delta_uv_bottom=(al & (de | uv)) == bot,
        delta_meet_alpha_uv_bottom=(de & (al | uv)) == bot,
    )


# -- extension search -----------------------------------------------------------------


COUNT_MAX_N = 9


def extension_count_bound(m: int) -> float | None:
    """2^(m-3) (m-1)! / (3m+3) for even m, else None."""
    if m < 1 or m % 2:
        return None
    return 2.0 ** (m - 3) * factorial(m - 1) / (3 * m + 3)


@dataclass
class ExtensionReport:
    mode: str
    n: int
    m: int
    candidates: int
    checked: int = 0
    pruned: int = 0
    count: int = 0
    witness: GeneratorQuad | None = None
    complete: bool = True
    pair_ops: int = 0
    formula: float | None = None
    first_index: int | None = field(default=None, repr=False)

    def to_text(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"n: {self.n}",
            f"m: {self.m}",
            f"ground_set: {self.n + self.m}",
            f"candidates: {self.candidates}",
            f"checked: {self.checked}",
            f"pruned: {self.pruned}",
            f"generating: {self.count}",
            f"complete: {'true' if self.complete else 'false'}",
            f"pair_ops: {self.pair_ops}",
            f"formula_bound: {self.formula if self.formula is not None else 'n/a'}",
        ]
        if self.witness is not None:
            for name, p in zip(MEMBER_NAMES, self.witness.members):
                lines.append(f"witness_{name}: {p}")
        return "\n".join(lines) + "\n"


def _scan(ext_lists, start, stop, mode, budget):
    """Check candidates with product index in [start, stop)."""
    sizes = [len(e) for e in ext_lists]
    count = checked = pruned = pair_ops = 0
    first = None
    complete = True
    for idx in range(start, stop):
        rem, picks = idx, []
        for s in reversed(sizes):
            rem, r = divmod(rem, s)
            picks.append(r)
        members = [ext_lists[t][r] for t, r in enumerate(reversed(picks))]
        n = members[0].n
        if (members[0] & members[1] & members[2] & members[3]) != bottom(n) or \
                (members[0] | members[1] | members[2] | members[3]) != top(n):
            pruned += 1
            continue
        if pair_ops >= budget:
            complete = False
            break
        rep = generates(members, budget=budget - pair_ops)
        pair_ops += rep.pair_ops
        if rep.verdict is Verdict.UNKNOWN:
            complete = False
            break
        checked += 1
        if rep.verdict is Verdict.GENERATES:
            count += 1
            if first is None:
                first = idx
            if mode == "find":
                break
    return count, checked, pruned, pair_ops, first, complete


def extension_search(quad: GeneratorQuad, m: int, mode: str = "find",
                     budget: int = DEFAULT_BUDGET, jobs: int = 1,
                     count_max_n: int = COUNT_MAX_N) -> ExtensionReport:
    """Search the quads of Part(n+m) whose members extend the members of ``quad``.

    Candidates are taken in product order of the members' extension lists.
    A candidate whose members' meet is not bottom or whose join is not top
    cannot generate and is skipped without a closure run.  ``budget`` caps
    the total pair operations; if it runs out the report is incomplete.
    """
    if mode not in ("find", "count"):
        raise ConstructionError(f"unknown mode {mode!r}")
    if m < 0:
        raise ConstructionError("m must be non-negative")
    if mode == "count" and quad.n + m > count_max_n:
        raise ConstructionError(f"counting on [{quad.n + m}] is past the limit n + m <= {count_max_n}")
    ext_lists = [enumerate_extensions(p, m) for p in quad.members]
    total = 1
    for e in ext_lists:
        total *= len(e)
    report = ExtensionReport(mode, quad.n, m, total, formula=extension_count_bound(m))
    if jobs <= 1:
        results = [_scan(ext_lists, 0, total, mode, budget)]
    else:
        bounds = [total * t // jobs for t in range(jobs + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan, ext_lists, bounds[t], bounds[t + 1], mode, budget // jobs)
                       for t in range(jobs)]
            results = [f.result() for f in futures]
    for count, checked, pruned, ops, first, complete in results:
        report.checked += checked
        report.pruned += pruned
        report.pair_ops += ops
        report.complete &= complete
        if mode == "count":
            report.count += count
        if first is not None and report.first_index is None:
            report.first_index = first
            if mode == "find":
                report.count = 1
                break
        if mode == "find" and not complete:
            break
    if report.first_index is not None:
        idx, picks = report.first_index, []
        for e in reversed(ext_lists):
            idx, r = divmod(idx, len(e))
            picks.append(r)
        members = [ext_lists[t][r] for t, r in enumerate(reversed(picks))]
        report.witness = GeneratorQuad(quad.n + m, *members, provenance=f"extension m={m}",
                                       target=quad.target)
    if mode == "find" and report.first_index is not None:
        report.complete = True
    return report
