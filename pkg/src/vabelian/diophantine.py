"""Minimal non-negative solutions of linear Diophantine identities.

Systems have the shape

    sum_i x_i t_i  -  sum_j y_j u_j  =  w        (x, y) in N^(p+q)

with t_i, u_j in N^k and w in Z^k.  The solver is a breadth-first
completion procedure (Contejean-Devie style): it grows candidate tuples
from the unit vectors, only following coordinates whose column has
negative scalar product with the current residual, and prunes anything
that dominates an already-found solution.  That search is terminating
and returns exactly the minimal non-zero solutions.

Inhomogeneous systems are handled by adjoining a slack column ``-w``
whose coefficient is capped at 1; minimal solutions with slack 1
project onto the minimal solutions of the original identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructuralError

Vec = tuple[int, ...]

_ZERO_CACHE: dict[int, Vec] = {}


def _zero(dim: int) -> Vec:
    z = _ZERO_CACHE.get(dim)
    if z is None:
        z = (0,) * dim
        _ZERO_CACHE[dim] = z
    return z


@dataclass(frozen=True)
class DiophantineSystem:
    """Identity ``sum x_i positives[i] - sum y_j negatives[j] = target``."""

    positives: tuple[Vec, ...]
    negatives: tuple[Vec, ...]
    target: Vec

    def __post_init__(self):
        dim = len(self.target)
        for v in self.positives + self.negatives:
            if len(v) != dim:
                raise StructuralError(
                    f"vector of length {len(v)} in a dimension-{dim} system"
                )
            if any(x < 0 for x in v):
                raise StructuralError("positives/negatives must lie in N^k")

    @property
    def dim(self) -> int:
        return len(self.target)


def make_system(positives, negatives, target) -> DiophantineSystem:
    return DiophantineSystem(
        tuple(tuple(int(x) for x in v) for v in positives),
        tuple(tuple(int(x) for x in v) for v in negatives),
        tuple(int(x) for x in target),
    )


def _dominates(a: Vec, b: Vec) -> bool:
    """a >= b coordinate-wise."""
    return all(x >= y for x, y in zip(a, b))


def _complete(
    columns: tuple[Vec, ...],
    caps: tuple[int | None, ...] | None = None,
    stop=None,
) -> list[Vec]:
    """Minimal non-zero solutions of ``sum x_i columns[i] = 0`` over N.

    ``caps`` bounds individual coordinates (used for slack variables; a
    minimal solution never exceeds the cap on the slack, so pruning is
    lossless).  ``stop`` is an optional predicate on found solutions that
    aborts the search early.
    """
    p = len(columns)
    if p == 0:
        return []
    dim = len(columns[0])
    zero = _zero(dim)
    minimals: list[Vec] = []
    frontier: dict[Vec, Vec] = {}
    for i in range(p):
        if caps is not None and caps[i] is not None and caps[i] < 1:
            continue
        node = tuple(1 if j == i else 0 for j in range(p))
        frontier[node] = columns[i]
    while frontier:
        nxt: dict[Vec, Vec] = {}
        for node in sorted(frontier):
            val = frontier[node]
            if val == zero:
                minimals.append(node)
                if stop is not None and stop(node):
                    return minimals
                continue
            for i in range(p):
                col = columns[i]
                if sum(a * b for a, b in zip(val, col)) >= 0:
                    continue
                if caps is not None and caps[i] is not None and node[i] >= caps[i]:
                    continue
                child = node[:i] + (node[i] + 1,) + node[i + 1 :]
                if child in nxt:
                    continue
                if any(_dominates(child, m) for m in minimals):
                    continue
                nxt[child] = tuple(a + b for a, b in zip(val, col))
        frontier = {
            nd: v
            for nd, v in nxt.items()
            if not any(_dominates(nd, m) for m in minimals)
        }
    return minimals


_HOMOGENEOUS_CACHE: dict[tuple[Vec, ...], tuple[Vec, ...]] = {}
_AFFINE_CACHE: dict[tuple[tuple[Vec, ...], Vec], tuple[Vec, ...]] = {}


def solve_homogeneous(columns) -> list[Vec]:
    """Minimal non-zero solutions of ``sum x_i columns[i] = 0``, x in N^p."""
    key = tuple(tuple(c) for c in columns)
    hit = _HOMOGENEOUS_CACHE.get(key)
    if hit is None:
        hit = tuple(sorted(_complete(key)))
        _HOMOGENEOUS_CACHE[key] = hit
    return list(hit)


def solve_affine(columns, target) -> list[Vec]:
    """Minimal non-zero solutions of ``sum x_i columns[i] = target``.

    For a zero target this is `solve_homogeneous`; otherwise a capped
    slack column is adjoined and slack-1 solutions are projected out.
    """
    key = (tuple(tuple(c) for c in columns), tuple(target))
    hit = _AFFINE_CACHE.get(key)
    if hit is not None:
        return list(hit)
    cols, tgt = key
    if not any(tgt):
        result = tuple(solve_homogeneous(cols))
    else:
        ext = cols + (tuple(-x for x in tgt),)
        caps = (None,) * len(cols) + (1,)
        sols = _complete(ext, caps=caps)
        result = tuple(sorted(s[:-1] for s in sols if s[-1] == 1))
    _AFFINE_CACHE[key] = result
    return list(result)


def has_affine_solution(columns, target) -> bool:
    """Does ``sum x_i columns[i] = target`` admit any solution over N?

    The zero tuple counts for a zero target.
    """
    cols = tuple(tuple(c) for c in columns)
    tgt = tuple(target)
    if not any(tgt):
        return True
    key = (cols, tgt)
    hit = _AFFINE_CACHE.get(key)
    if hit is not None:
        return bool(hit)
    ext = cols + (tuple(-x for x in tgt),)
    caps = (None,) * len(cols) + (1,)
    sols = _complete(ext, caps=caps, stop=lambda nd: nd[-1] == 1)
    return any(s[-1] == 1 for s in sols)


def _columns_of(sys: DiophantineSystem) -> tuple[Vec, ...]:
    return sys.positives + tuple(tuple(-x for x in u) for u in sys.negatives)


def has_nonzero_solution(sys: DiophantineSystem) -> bool:
    """Is there a non-zero (x, y) in N^(p+q) satisfying the identity?"""
    cols = _columns_of(sys)
    if not cols:
        return False
    if not any(sys.target):
        sols = _complete(cols, stop=lambda nd: True)
        return bool(sols)
    return has_affine_solution(cols, sys.target)


def minimal_nonzero_solutions(sys: DiophantineSystem) -> list[Vec]:
    """All coordinate-wise minimal non-zero solutions of the identity.

    The result is sorted, pairwise incomparable and every non-zero
    solution dominates one of its elements.
    """
    cols = _columns_of(sys)
    if not cols:
        return []
    if not any(sys.target):
        return solve_homogeneous(cols)
    return solve_affine(cols, sys.target)


def minimal_nonzero_solutions_integer(periods, target) -> list[Vec]:
    """Minimal non-zero x in N^m with ``sum x_i periods[i] = target``.

    Each period may have entries of both signs.  It is split into its
    positive and negative parts, the system is lifted to N^(k+m) with a
    unit tail coupling the two copies of each variable, and the minimal
    solutions of the lifted system (which are exactly the doubled
    solutions) are projected back.
    """
    periods = [tuple(int(x) for x in v) for v in periods]
    target = tuple(int(x) for x in target)
    m = len(periods)
    if m == 0:
        return []
    k = len(target)
    for v in periods:
        if len(v) != k:
            raise StructuralError("period/target dimension mismatch")

    def lifted(v: Vec, i: int, sign: int) -> Vec:
        head = tuple(max(sign * x, 0) for x in v)
        tail = tuple(1 if j == i else 0 for j in range(m))
        return head + tail

    positives = tuple(lifted(v, i, +1) for i, v in enumerate(periods))
    negatives = tuple(lifted(v, i, -1) for i, v in enumerate(periods))
    lifted_target = target + (0,) * m
    doubled = minimal_nonzero_solutions(
        DiophantineSystem(positives, negatives, lifted_target)
    )
    out = []
    for s in doubled:
        x, y = s[:m], s[m:]
        assert x == y, "lifted solutions must be doubles"
        out.append(x)
    return sorted(out)
