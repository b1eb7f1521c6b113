"""Effective Boolean algebra of semilinear subsets of Z^k and N^k.

A linear set is ``base + periods*``; a semilinear set is a finite union
of linear sets.  All operations here are exact and constructive:
intersection reduces to minimal solutions of linear Diophantine systems,
complements over N^k go through lattice normal forms of the period
matrices, and differences over Z^k split along a fixed partition of Z^k
into monotone orthant pieces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from . import _intlinalg as la
from .diophantine import has_affine_solution, solve_affine, solve_homogeneous
from .errors import StructuralError

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class LinearSet:
    """The set ``base + {sum of non-negative multiples of periods}``."""

    base: Vec
    periods: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.base)


@dataclass(frozen=True)
class SemilinearSet:
    dim: int
    components: tuple[LinearSet, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise StructuralError("dimension must be positive")
        for c in self.components:
            if c.dim != self.dim:
                raise StructuralError("component dimension mismatch")


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset."""

    matrix: la.Mat
    offset: Vec

    def __post_init__(self):
        if len(self.matrix) != len(self.offset):
            raise StructuralError("matrix/offset shape mismatch")

    @property
    def src_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def dst_dim(self) -> int:
        return len(self.offset)

    def apply(self, x: Vec) -> Vec:
        return tuple(
            sum(m * v for m, v in zip(row, x)) + c
            for row, c in zip(self.matrix, self.offset)
        )


def affine_map(matrix, offset) -> AffineMap:
    return AffineMap(la.freeze(matrix), tuple(int(x) for x in offset))


def linear(base, periods=()) -> LinearSet:
    base = tuple(int(x) for x in base)
    seen = []
    for p in periods:
        p = tuple(int(x) for x in p)
        if len(p) != len(base):
            raise StructuralError("period dimension mismatch")
        if any(p) and p not in seen:
            seen.append(p)
    return LinearSet(base, tuple(sorted(seen)))


def semilinear(dim: int, components=()) -> SemilinearSet:
    comps = []
    for c in components:
        if not isinstance(c, LinearSet):
            c = linear(*c)
        else:
            c = linear(c.base, c.periods)
        comps.append(c)
    return SemilinearSet(dim, tuple(sorted(set(comps), key=lambda c: (c.base, c.periods))))


def empty(dim: int) -> SemilinearSet:
    return SemilinearSet(dim, ())


def singleton(x) -> SemilinearSet:
    x = tuple(int(v) for v in x)
    return semilinear(len(x), [linear(x)])


def nat_all(dim: int) -> SemilinearSet:
    """N^dim as a single linear component with unit periods."""
    units = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    return semilinear(dim, [linear((0,) * dim, units)])


def _int_all_compact(dim: int) -> SemilinearSet:
    """Z^dim as one component with signed unit periods (internal form)."""
    ps = []
    for i in range(dim):
        e = tuple(1 if i == j else 0 for j in range(dim))
        ps.append(e)
        ps.append(tuple(-x for x in e))
    return semilinear(dim, [linear((0,) * dim, ps)])


def is_empty(s: SemilinearSet) -> bool:
    # a linear set always contains its base, so emptiness is structural
    return not s.components


def is_structurally_nat(s: SemilinearSet) -> bool:
    return all(
        all(x >= 0 for x in c.base)
        and all(x >= 0 for p in c.periods for x in p)
        for c in s.components
    )


# ---------------------------------------------------------------------------
# axis components: every period is a standard basis vector


def _axis_free_set(c: LinearSet):
    """Free-coordinate indices if all periods are unit vectors, else None."""
    free = set()
    for p in c.periods:
        nz = [i for i, x in enumerate(p) if x != 0]
        if len(nz) != 1 or p[nz[0]] != 1:
            return None
        free.add(nz[0])
    return frozenset(free)


def _axis_intersect(c1: LinearSet, f1, c2: LinearSet, f2) -> LinearSet | None:
    dim = c1.dim
    base = []
    free = []
    for i in range(dim):
        a, b = c1.base[i], c2.base[i]
        in1, in2 = i in f1, i in f2
        if in1 and in2:
            base.append(max(a, b))
            free.append(i)
        elif in1:
            if b < a:
                return None
            base.append(b)
        elif in2:
            if a < b:
                return None
            base.append(a)
        else:
            if a != b:
                return None
            base.append(a)
    units = [tuple(1 if j == i else 0 for j in range(dim)) for i in free]
    return linear(tuple(base), units)


# ---------------------------------------------------------------------------
# membership and enumeration


def member(s: SemilinearSet, x) -> bool:
    x = tuple(int(v) for v in x)
    if len(x) != s.dim:
        raise StructuralError("point dimension mismatch")
    for c in s.components:
        if _member_component(c, x):
            return True
    return False


def _member_component(c: LinearSet, x: Vec) -> bool:
    free = _axis_free_set(c)
    if free is not None:
        return all(
            (v >= b if i in free else v == b)
            for i, (v, b) in enumerate(zip(x, c.base))
        )
    target = la.vec_sub(x, c.base)
    if not any(target):
        return True
    return has_affine_solution(c.periods, target)


def enumerate_in_box(s: SemilinearSet, lo, hi) -> set[Vec]:
    """``s`` intersected with the box ``[lo, hi]^dim`` (exact)."""
    lo = tuple(int(v) for v in lo) if not isinstance(lo, int) else (lo,) * s.dim
    hi = tuple(int(v) for v in hi) if not isinstance(hi, int) else (hi,) * s.dim
    if len(lo) != s.dim or len(hi) != s.dim:
        raise StructuralError("box dimension mismatch")
    if any(a > b for a, b in zip(lo, hi)):
        raise StructuralError("box lower bound exceeds upper bound")
    out: set[Vec] = set()
    for c in s.components:
        out |= _component_box(c, lo, hi)
    return out


def _component_box(c: LinearSet, lo: Vec, hi: Vec) -> set[Vec]:
    free = _axis_free_set(c)
    if free is not None:
        ranges = []
        for i in range(c.dim):
            if i in free:
                if c.base[i] > hi[i]:
                    return set()
                ranges.append(range(max(lo[i], c.base[i]), hi[i] + 1))
            else:
                if not lo[i] <= c.base[i] <= hi[i]:
                    return set()
                ranges.append(range(c.base[i], c.base[i] + 1))
        return set(itertools.product(*ranges))
    # breadth-first walk over partial sums; the excursion bound comes from
    # the Steinitz rearrangement lemma (L-inf constant <= dim), so every
    # representable box point has a representation staying inside it
    if not c.periods:
        x = c.base
        return {x} if all(l <= v <= h for l, v, h in zip(lo, x, hi)) else set()
    maxp = max(abs(x) for p in c.periods for x in p)
    slack = (c.dim + 1) * maxp
    bound = [
        (
            min(lo[i] - c.base[i], 0) - slack,
            max(hi[i] - c.base[i], 0) + slack,
        )
        for i in range(c.dim)
    ]
    seen = {(0,) * c.dim}
    frontier = [(0,) * c.dim]
    while frontier:
        nxt = []
        for pos in frontier:
            for p in c.periods:
                q = tuple(a + b for a, b in zip(pos, p))
                if q in seen:
                    continue
                if any(not (bl <= v <= bh) for v, (bl, bh) in zip(q, bound)):
                    continue
                seen.add(q)
                nxt.append(q)
        frontier = nxt
    out = set()
    for pos in seen:
        x = la.vec_add(c.base, pos)
        if all(l <= v <= h for l, v, h in zip(lo, x, hi)):
            out.add(x)
    return out


# ---------------------------------------------------------------------------
# union / products / translations / simplification


def union(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    if s1.dim != s2.dim:
        raise StructuralError("union dimension mismatch")
    return semilinear(s1.dim, s1.components + s2.components)


def union_all(dim: int, sets) -> SemilinearSet:
    comps = []
    for s in sets:
        if s.dim != dim:
            raise StructuralError("union dimension mismatch")
        comps.extend(s.components)
    return semilinear(dim, comps)


def cartesian(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    dim = s1.dim + s2.dim
    z1, z2 = (0,) * s1.dim, (0,) * s2.dim
    comps = []
    for c1 in s1.components:
        for c2 in s2.components:
            ps = [p + z2 for p in c1.periods] + [z1 + p for p in c2.periods]
            comps.append(linear(c1.base + c2.base, ps))
    return semilinear(dim, comps)


def translate(s: SemilinearSet, v) -> SemilinearSet:
    v = tuple(int(x) for x in v)
    return semilinear(
        s.dim, [linear(la.vec_add(c.base, v), c.periods) for c in s.components]
    )


def _component_subsumes(big: LinearSet, small: LinearSet) -> bool:
    """Sufficient test for ``small`` being contained in ``big``."""
    if not _member_component(big, small.base):
        return False
    return all(
        has_affine_solution(big.periods, p) for p in small.periods
    )


def simplify(s: SemilinearSet, limit: int = 64) -> SemilinearSet:
    """Drop components contained in other components (semantics preserved)."""
    comps = list(s.components)
    if len(comps) > limit:
        return s
    comps.sort(key=lambda c: (len(c.periods), c.base, c.periods))
    kept: list[LinearSet] = []
    for c in reversed(comps):  # try richer components as keepers first
        if any(_component_subsumes(k, c) for k in kept):
            continue
        kept = [k for k in kept if not _component_subsumes(c, k)]
        kept.append(c)
    return semilinear(s.dim, kept)


# ---------------------------------------------------------------------------
# affine images and preimages


def affine_image(s: SemilinearSet, f: AffineMap) -> SemilinearSet:
    if f.src_dim != s.dim:
        raise StructuralError("map domain dimension mismatch")
    comps = [
        linear(f.apply(c.base), [la.mat_vec(f.matrix, p) for p in c.periods])
        for c in s.components
    ]
    return semilinear(f.dst_dim, comps)


def preimage(s: SemilinearSet, f: AffineMap) -> SemilinearSet:
    """``{x : f(x) in s}`` via the graph construction.

    The graph of ``f`` over Z^m is one linear set; intersecting it with
    ``Z^m x s`` and projecting to the first m coordinates yields the
    preimage.
    """
    m, k = f.src_dim, f.dst_dim
    if k != s.dim:
        raise StructuralError("map codomain dimension mismatch")
    graph_periods = []
    for i in range(m):
        e = tuple(1 if j == i else 0 for j in range(m))
        col = tuple(row[i] for row in f.matrix)
        graph_periods.append(e + col)
        graph_periods.append(tuple(-x for x in e + col))
    graph = semilinear(m + k, [linear((0,) * m + f.offset, graph_periods)])
    cyl = cartesian(_int_all_compact(m) if m else empty(1), s) if m else None
    if m == 0:
        raise StructuralError("map with empty domain")
    inter = intersect(graph, cyl)
    proj = affine_map(
        [[1 if j == i else 0 for j in range(m + k)] for i in range(m)], (0,) * m
    )
    return affine_image(inter, proj)


def preimage_nat(s: SemilinearSet, f: AffineMap) -> SemilinearSet:
    """``{x in N^m : f(x) in s}`` with structurally non-negative output.

    Solved directly: for each component ``b + D*`` of ``s`` the condition
    ``f(x) = b + D mu`` is a linear system over the non-negative unknowns
    ``(x, mu)`` whose solution set projects onto the x part.
    """
    m = f.src_dim
    cols_x = [tuple(row[i] for row in f.matrix) for i in range(m)]
    comps = []
    for c in s.components:
        cols = cols_x + [tuple(-x for x in p) for p in c.periods]
        target = la.vec_sub(c.base, f.offset)
        comps.extend(_project_solutions(cols, target, m, None))
    return semilinear(m, comps)


def _project_solutions(cols, target, keep: int, embed) -> list[LinearSet]:
    """Components of the ``keep``-prefix projection of a solution set.

    ``cols``/``target`` define ``sum x_i cols[i] = target`` over N; the
    minimal solutions and the homogeneous Hilbert basis describe the full
    solution set, which is projected onto the first ``keep`` unknowns and
    optionally pushed through ``embed``.
    """
    target = tuple(target)
    mins = solve_affine(cols, target)
    if not any(target):
        mins = list(mins) + [(0,) * len(cols)]
    if not mins:
        return []
    homog = solve_homogeneous(cols)
    out = []
    periods = []
    for v in homog:
        pv = v[:keep]
        if any(pv):
            periods.append(pv if embed is None else embed(pv, True))
    for u in set(m[:keep] for m in mins):
        base = u if embed is None else embed(u, False)
        out.append(linear(base, periods))
    return out


# ---------------------------------------------------------------------------
# intersection (minimal-solution construction)


def _intersect_pair(c1: LinearSet, c2: LinearSet) -> list[LinearSet]:
    f1 = _axis_free_set(c1)
    if f1 is not None:
        f2 = _axis_free_set(c2)
        if f2 is not None:
            got = _axis_intersect(c1, f1, c2, f2)
            return [got] if got is not None else []
    p = len(c1.periods)
    cols = list(c1.periods) + [tuple(-x for x in q) for q in c2.periods]
    target = la.vec_sub(c2.base, c1.base)
    if not cols:
        return [linear(c1.base)] if not any(target) else []
    mins = solve_affine(cols, target)
    if not any(target):
        mins = list(mins) + [(0,) * len(cols)]
    if not mins:
        return []
    homog = solve_homogeneous(cols)

    def tau(v):
        acc = [0] * len(c1.base)
        for coeff, per in zip(v[:p], c1.periods):
            if coeff:
                acc = [a + coeff * x for a, x in zip(acc, per)]
        return tuple(acc)

    periods = [tau(v) for v in homog]
    out = []
    for u in sorted(set(tau(u) for u in mins)):
        out.append(linear(la.vec_add(c1.base, u), periods))
    return out


def intersect(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    if s1.dim != s2.dim:
        raise StructuralError("intersection dimension mismatch")
    comps = []
    for c1 in s1.components:
        for c2 in s2.components:
            comps.extend(_intersect_pair(c1, c2))
    return semilinear(s1.dim, comps)


def intersect_functional(
    s: SemilinearSet, func, rhs: int, relation: str
) -> SemilinearSet:
    """Restrict ``s`` by ``func . x = rhs`` or ``<= rhs`` (exact).

    Works in the coefficient space of each component, so only a
    one-dimensional Diophantine system is solved per component.
    """
    func = tuple(int(x) for x in func)
    comps = []
    for c in s.components:
        c0 = la.dot(func, c.base)
        pcoef = [la.dot(func, p) for p in c.periods]
        cols = [(x,) for x in pcoef]
        if relation == "le":
            cols = cols + [(1,)]
        target = (rhs - c0,)
        if not cols:
            ok = c0 == rhs if relation == "eq" else c0 <= rhs
            if ok:
                comps.append(c)
            continue
        mins = solve_affine(cols, target)
        if not any(target):
            mins = list(mins) + [(0,) * len(cols)]
        if not mins:
            continue
        homog = solve_homogeneous(cols)
        np = len(c.periods)

        def tau(v):
            acc = [0] * c.dim
            for coeff, per in zip(v[:np], c.periods):
                if coeff:
                    acc = [a + coeff * x for a, x in zip(acc, per)]
            return tuple(acc)

        periods = [tau(v) for v in homog]
        for u in sorted(set(tau(u) for u in mins)):
            comps.append(linear(la.vec_add(c.base, u), periods))
    return semilinear(s.dim, comps)


# ---------------------------------------------------------------------------
# Z^k cover, orthants, monotone pieces


def orthant_partition(k: int) -> list[LinearSet]:
    """2^k pairwise-disjoint monotone linear sets covering Z^k."""
    if k < 1:
        raise StructuralError("dimension must be positive")
    pieces = [((), ())]  # (base, periods) in dimension 0
    for axis in range(k):
        nxt = []
        for base, periods in pieces:
            up = tuple(1 if j == axis else 0 for j in range(k))
            down = tuple(-x for x in up)
            nxt.append((base + (0,), tuple(p for p in periods) + (up,)))
            nxt.append((base + (-1,), tuple(p for p in periods) + (down,)))
        pieces = [
            (b, tuple(p[: axis + 1] + (0,) * 0 for p in ps)) for b, ps in nxt
        ]
    out = []
    for base, periods in pieces:
        full = [p + (0,) * (k - len(p)) if len(p) < k else p for p in periods]
        out.append(linear(base, full))
    return out


def full_group(k: int) -> SemilinearSet:
    """All of Z^k, expressed as the union of the monotone orthant pieces."""
    return semilinear(k, orthant_partition(k))


def orthant_signs(piece: LinearSet) -> Vec:
    """Sign vector (+1/-1 per coordinate) of a monotone orthant piece."""
    signs = []
    for i in range(piece.dim):
        neg = piece.base[i] < 0 or any(p[i] < 0 for p in piece.periods)
        signs.append(-1 if neg else 1)
    return tuple(signs)


def monotone_decomposition(s: SemilinearSet) -> list[SemilinearSet]:
    """``[s ∩ Q]`` over the fixed orthant partition; disjoint, union = s."""
    out = []
    for q in orthant_partition(s.dim):
        out.append(intersect(s, semilinear(s.dim, [q])))
    return out


def split_monotone_components(s: SemilinearSet) -> list[LinearSet]:
    """Rewrite ``s`` as a union of monotone components (same set).

    Components are split coordinate by coordinate in their coefficient
    space, so no high-dimensional orthant enumeration happens.
    """
    todo = list(s.components)
    done: list[LinearSet] = []
    while todo:
        c = todo.pop()
        mixed = None
        for i in range(c.dim):
            vals = [c.base[i]] + [p[i] for p in c.periods]
            if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                mixed = i
                break
        if mixed is None:
            done.append(c)
            continue
        i = mixed
        coef = [p[i] for p in c.periods]
        for bound, sign in ((-c.base[i], 1), (c.base[i] + 1, -1)):
            # sign=+1: coordinate stays >= 0; sign=-1: coordinate <= -1
            cols = [(sign * x,) for x in coef] + [(-1,)]
            target = (bound,)
            mins = solve_affine(cols, target)
            if not any(target):
                mins = list(mins) + [(0,) * len(cols)]
            if not mins:
                continue
            homog = solve_homogeneous(cols)
            np = len(c.periods)

            def tau(v):
                acc = [0] * c.dim
                for coeff, per in zip(v[:np], c.periods):
                    if coeff:
                        acc = [a + coeff * x for a, x in zip(acc, per)]
                return tuple(acc)

            periods = [tau(v) for v in homog]
            for u in set(tau(u) for u in mins):
                todo.append(linear(la.vec_add(c.base, u), periods))
    return done


# ---------------------------------------------------------------------------
# single-region constructions (hyperplane, congruence, half-space)


def hyperplane_set(u, a: int, dim: int) -> SemilinearSet:
    """``{z : u . z = a}`` as at most one linear component."""
    u = tuple(int(x) for x in u)
    if not any(u):
        return _int_all_compact(dim) if a == 0 else empty(dim)
    part = la.solve((u,), (a,))
    if part is None:
        return empty(dim)
    kern = la.kernel_basis((u,))
    ps = [p for k in kern for p in (k, la.vec_neg(k))]
    return semilinear(dim, [linear(part, ps)])


def congruence_set(u, a: int, modulus: int, dim: int) -> SemilinearSet:
    """``{z : u . z ≡ a (mod modulus)}``."""
    if modulus < 1:
        raise StructuralError("modulus must be positive")
    u = tuple(int(x) for x in u)
    if modulus == 1:
        return _int_all_compact(dim)
    if not any(u):
        return _int_all_compact(dim) if a % modulus == 0 else empty(dim)
    row = u + (-modulus,)
    part = la.solve((row,), (a,))
    if part is None:
        return empty(dim)
    kern = la.kernel_basis((row,))
    ps = []
    for k in kern:
        kz = k[:dim]
        ps.extend((kz, la.vec_neg(kz)))
    return semilinear(dim, [linear(part[:dim], ps)])


def halfspace_set(u, a: int, dim: int) -> SemilinearSet:
    """``{z : u . z > a}`` as one linear component."""
    u = tuple(int(x) for x in u)
    if not any(u):
        return _int_all_compact(dim) if 0 > a else empty(dim)
    g = la.gcd_vector(u)
    step = la.solve((u,), (g,))
    c0 = g * (-((-(a + 1)) // g))  # least multiple of g that is >= a+1
    part = la.vec_scale(c0 // g, step)
    kern = la.kernel_basis((u,))
    ps = [step] + [p for k in kern for p in (k, la.vec_neg(k))]
    return semilinear(dim, [linear(part, ps)])


# ---------------------------------------------------------------------------
# complement machinery over N^k and differences


def _independentize(c: LinearSet) -> list[LinearSet]:
    """Rewrite one component as a union with linearly independent periods."""
    stack = [c]
    out = []
    while stack:
        cur = stack.pop()
        ps = cur.periods
        if la.rank(ps) == len(ps):
            out.append(cur)
            continue
        kern = la.kernel_basis(la.transpose(ps))
        kappa = min(kern, key=lambda v: (sum(abs(x) for x in v), v))
        if all(x <= 0 for x in kappa):
            kappa = la.vec_neg(kappa)
        pos = [i for i, x in enumerate(kappa) if x > 0]
        assert pos, "period relation must have a positive side"
        for i in pos:
            rest = tuple(p for j, p in enumerate(ps) if j != i)
            for mult in range(kappa[i]):
                stack.append(
                    linear(la.vec_add(cur.base, la.vec_scale(mult, ps[i])), rest)
                )
    return out


def _independent_component_regions(c: LinearSet):
    """Region description of an independent-period component.

    Returns a list of ('eq', u, a) / ('mod', u, a, b) / ('ge', u, a)
    triples whose conjunction over Z^dim is exactly the component.
    """
    dim = c.dim
    d = len(c.periods)
    regions = []
    if d == 0:
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            regions.append(("eq", e, c.base[i]))
        return regions
    mat = tuple(tuple(p[i] for p in c.periods) for i in range(dim))  # dim x d
    dd, u, v = la.smith_normal_form(mat)
    invs = [dd[i][i] for i in range(d)]
    assert all(x != 0 for x in invs), "independent periods expected"
    for i in range(d, dim):
        regions.append(("eq", u[i], la.dot(u[i], c.base)))
    for i in range(d):
        if invs[i] > 1:
            regions.append(("mod", u[i], la.dot(u[i], c.base), invs[i]))
    m = 1
    for x in invs:
        m = m * x // gcd(m, x)
    for j in range(d):
        f = [0] * dim
        for i in range(d):
            coef = v[j][i] * (m // invs[i])
            if coef:
                f = [a + coef * b for a, b in zip(f, u[i])]
        f = tuple(f)
        regions.append(("ge", f, la.dot(f, c.base)))
    return regions


def _region_set(region, dim: int) -> SemilinearSet:
    kind = region[0]
    if kind == "eq":
        return hyperplane_set(region[1], region[2], dim)
    if kind == "mod":
        return congruence_set(region[1], region[2], region[3], dim)
    if kind == "ge":
        return halfspace_set(region[1], region[2] - 1, dim)
    raise ValueError(kind)


def _negated_region_sets(region, dim: int) -> list[SemilinearSet]:
    kind = region[0]
    if kind == "eq":
        u, a = region[1], region[2]
        return [halfspace_set(u, a, dim), halfspace_set(la.vec_neg(u), -a, dim)]
    if kind == "mod":
        u, a, b = region[1], region[2], region[3]
        return [congruence_set(u, a + r, b, dim) for r in range(1, b)]
    if kind == "ge":
        u, a = region[1], region[2]
        return [halfspace_set(la.vec_neg(u), -a, dim)]
    raise ValueError(kind)


def _axis_nat_complement(c: LinearSet, free) -> list[LinearSet] | None:
    """N^dim minus an axis component, as axis components (first-fail)."""
    dim = c.dim
    if any(c.base[i] > 512 for i in range(dim) if i not in free):
        return None
    out = []
    for i in range(dim):
        # coordinates before i meet the component's condition, i fails
        prefix_base = []
        prefix_free = set(range(i + 1, dim))
        ok = True
        for j in range(i):
            prefix_base.append(c.base[j])
            if j in free:
                prefix_free.add(j)
        if not ok:
            continue
        if i in free:
            fails = range(0, c.base[i]) if c.base[i] > 0 else range(0)
        else:
            fails = itertools.chain(
                range(0, c.base[i]), (("ge", c.base[i] + 1),)
            )
        for val in fails:
            if isinstance(val, tuple):
                base = prefix_base + [val[1]] + [0] * (dim - i - 1)
                fr = prefix_free | {i}
            else:
                base = prefix_base + [val] + [0] * (dim - i - 1)
                fr = set(prefix_free)
            units = [
                tuple(1 if jj == j else 0 for jj in range(dim)) for j in sorted(fr)
            ]
            out.append(linear(tuple(base), units))
    return out


def difference_nat(x: SemilinearSet, y: SemilinearSet) -> SemilinearSet:
    """``x \\ y`` for semilinear subsets of N^k (structurally checked)."""
    if x.dim != y.dim:
        raise StructuralError("difference dimension mismatch")
    if not is_structurally_nat(x) or not is_structurally_nat(y):
        raise StructuralError("difference_nat needs subsets of N^k")
    result = x
    dim = x.dim
    sub_comps: list[LinearSet] = []
    for c in y.components:
        sub_comps.extend(_independentize(c))
    for c in sorted(sub_comps, key=lambda c: (len(c.periods), c.base)):
        if is_empty(result):
            break
        free = _axis_free_set(c)
        neg_comps: list[LinearSet] = []
        if free is not None:
            axis = _axis_nat_complement(c, free)
        else:
            axis = None
        if axis is not None:
            neg_comps = axis
        else:
            for region in _independent_component_regions(c):
                for ns in _negated_region_sets(region, dim):
                    neg_comps.extend(ns.components)
        new_comps: list[LinearSet] = []
        for rc in result.components:
            for nc in neg_comps:
                new_comps.extend(_intersect_pair(rc, nc))
        result = simplify(semilinear(dim, new_comps))
    return result


def difference(x: SemilinearSet, y: SemilinearSet) -> SemilinearSet:
    """``x \\ y`` over Z^k, through the monotone orthant partition."""
    if x.dim != y.dim:
        raise StructuralError("difference dimension mismatch")
    if is_empty(y) or is_empty(x):
        return x
    if is_structurally_nat(x) and is_structurally_nat(y):
        return difference_nat(x, y)
    dim = x.dim
    pieces = []
    for q in orthant_partition(dim):
        qset = semilinear(dim, [q])
        qx = intersect(x, qset)
        if is_empty(qx):
            continue
        qy = intersect(y, qset)
        signs = orthant_signs(q)
        flip = affine_map(
            [[signs[i] if i == j else 0 for j in range(dim)] for i in range(dim)],
            tuple(0 if s > 0 else -1 for s in signs),
        )
        # map the orthant into N^k: z -> signs*z (+ shift for negative axes)
        fx = affine_image(qx, flip)
        fy = affine_image(qy, flip)
        assert is_structurally_nat(fx) and is_structurally_nat(fy)
        fd = difference_nat(fx, fy)
        unflip = affine_map(
            [[signs[i] if i == j else 0 for j in range(dim)] for i in range(dim)],
            tuple(0 if s > 0 else -1 for s in signs),
        )
        pieces.append(affine_image(fd, unflip))
    return union_all(dim, pieces) if pieces else empty(dim)


def equals(s1: SemilinearSet, s2: SemilinearSet) -> bool:
    if s1.dim != s2.dim:
        raise StructuralError("equality dimension mismatch")
    if s1.components == s2.components:
        return True
    return is_empty(difference(s1, s2)) and is_empty(difference(s2, s1))


# ---------------------------------------------------------------------------
# disjoint decomposition with independent periods


def disjoint_independent_decomposition(s: SemilinearSet) -> list[LinearSet]:
    """Disjoint linear pieces with independent periods, union = ``s``.

    Components are first rewritten with independent periods, then made
    pairwise disjoint at the level of their lattice/inequality region
    descriptions, and finally each region cell is peeled into disjoint
    independent translates.
    """
    if not is_structurally_nat(s):
        raise StructuralError("decomposition expects a subset of N^k")
    comps: list[LinearSet] = []
    for c in s.components:
        comps.extend(_independentize(c))
    if not comps:
        return []
    if len(comps) > 1:
        disjoint = True
        for a, b in itertools.combinations(comps, 2):
            if _intersect_pair(a, b):
                disjoint = False
                break
        if disjoint:
            return comps
    else:
        return comps
    dim = s.dim
    nat_regions = [("ge", tuple(1 if j == i else 0 for j in range(dim)), 0) for i in range(dim)]
    basics = [_independent_component_regions(c) for c in comps]
    cells: list[list] = []
    for i, regions in enumerate(basics):
        live = [list(regions) + list(nat_regions)]
        for j in range(i):
            nxt = []
            for cell in live:
                for case in _first_fail_negation(basics[j], dim):
                    cand = cell + case
                    if not _regions_empty(cand, dim):
                        nxt.append(cand)
            live = nxt
            if not live:
                break
        cells.extend(live)
    pieces: list[LinearSet] = []
    for cell in cells:
        pieces.extend(_cell_pieces(cell, dim))
    return pieces


def _first_fail_negation(regions, dim):
    """Disjoint case split of the complement of a region conjunction."""
    cases = []
    for l, region in enumerate(regions):
        prefix = list(regions[:l])
        kind = region[0]
        if kind == "eq":
            u, a = region[1], region[2]
            cases.append(prefix + [("ge", u, a + 1)])
            cases.append(prefix + [("ge", la.vec_neg(u), -a + 1)])
        elif kind == "mod":
            u, a, b = region[1], region[2], region[3]
            for r in range(1, b):
                cases.append(prefix + [("mod", u, a + r, b)])
        else:
            u, a = region[1], region[2]
            cases.append(prefix + [("ge", la.vec_neg(u), -a + 1)])
    return cases


def _regions_lattice(cell, dim):
    """Solve the eq/mod part of a cell: point + basis, or None if empty."""
    rows = []
    rhs = []
    mods = []
    for region in cell:
        if region[0] == "eq":
            rows.append(region[1])
            rhs.append(region[2])
            mods.append(0)
        elif region[0] == "mod":
            rows.append(region[1])
            rhs.append(region[2])
            mods.append(region[3])
    if not rows:
        units = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
        return (0,) * dim, units
    t = len([m for m in mods if m])
    width = dim + t
    full_rows = []
    ti = 0
    for row, m in zip(rows, mods):
        extra = [0] * t
        if m:
            extra[ti] = -m
            ti += 1
        full_rows.append(tuple(row) + tuple(extra))
    part = la.solve(tuple(full_rows), tuple(rhs))
    if part is None:
        return None
    kern = la.kernel_basis(tuple(full_rows))
    zgens = [k[:dim] for k in kern]
    basis = la.lattice_reduce(zgens, dim)
    return part[:dim], basis


def _regions_empty(cell, dim) -> bool:
    sol = _regions_lattice(cell, dim)
    if sol is None:
        return True
    z0, basis = sol
    ineqs = [(r[1], r[2]) for r in cell if r[0] == "ge"]
    if not ineqs:
        return False
    rows = []
    rhs = []
    for u, a in ineqs:
        rows.append([la.dot(u, b) for b in basis])
        rhs.append(a - la.dot(u, z0))
    # feasibility of rows . y >= rhs over Z^d
    d = len(basis)
    cols = []
    for i in range(d):
        col = tuple(r[i] for r in rows)
        cols.append(col)
        cols.append(tuple(-x for x in col))
    for i in range(len(rows)):
        cols.append(tuple(-1 if j == i else 0 for j in range(len(rows))))
    target = tuple(rhs)
    if all(x <= 0 for x in target):
        return False
    return not has_affine_solution(cols, target)


def _cell_pieces(cell, dim) -> list[LinearSet]:
    sol = _regions_lattice(cell, dim)
    if sol is None:
        return []
    z0, basis = sol
    d = len(basis)
    ineqs = [(r[1], r[2]) for r in cell if r[0] == "ge"]
    if d == 0:
        ok = all(0 >= a - la.dot(u, z0) for u, a in ineqs)
        return [linear(z0)] if ok else []
    rows = [[la.dot(u, b) for b in basis] for u, _ in ineqs]
    rhs = [a - la.dot(u, z0) for u, a in ineqs]
    pieces: list[LinearSet] = []
    for signs in itertools.product((1, -1), repeat=d):
        # substitute y_c = x_c (sign +) or y_c = -1 - x_c (sign -), x in N^d
        shift = [0 if s > 0 else -1 for s in signs]
        rows2 = [[r[i] * signs[i] for i in range(d)] for r in rows]
        rhs2 = [
            b - sum(r[i] * shift[i] for i in range(d)) for r, b in zip(rows, rhs)
        ]
        for xa, xb in _peel_nat_system(rows2, rhs2, d):
            ybase = tuple(shift[i] + signs[i] * xa[i] for i in range(d))
            yper = [tuple(signs[i] * p[i] for i in range(d)) for p in xb]
            zbase = la.vec_add(z0, _comb(basis, ybase, dim))
            zper = [_comb(basis, p, dim) for p in yper]
            pieces.append(linear(zbase, zper))
    return pieces


def _comb(basis, coeffs, dim):
    acc = [0] * dim
    for c, b in zip(coeffs, basis):
        if c:
            acc = [a + c * x for a, x in zip(acc, b)]
    return tuple(acc)


def _peel_nat_system(rows, rhs, d):
    """Disjoint independent pieces of ``{x in N^d : rows . x >= rhs}``.

    Slack variables turn the system into equations over N^(d+r); that
    set is peeled one Hilbert generator at a time: S splits into the
    disjoint union over c >= 0 of c*v + (S minus v+S), and the remainder
    splits into coordinate slices of strictly smaller variable count.
    """
    r = len(rows)
    cols = []
    for i in range(d):
        cols.append(tuple(row[i] for row in rows))
    for i in range(r):
        cols.append(tuple(-1 if j == i else 0 for j in range(r)))
    target = tuple(rhs)
    full = _peel_solution_set(tuple(cols), target)
    out = []
    for base, periods in full:
        xb = base[:d]
        xp = [p[:d] for p in periods if any(p[:d])]
        assert len(xp) == len([p for p in periods if any(p[:d])])
        out.append((xb, xp))
    return out


def _peel_solution_set(cols: tuple[Vec, ...], target: Vec):
    """Disjoint independent decomposition of ``{z in N^D : sum z_i cols_i = target}``."""
    d = len(cols)
    hilbert = solve_homogeneous(cols)
    if not hilbert:
        mins = solve_affine(cols, target)
        if not any(target):
            mins = list(mins) + [(0,) * d]
        return [(m, []) for m in mins]
    if not solve_affine(cols, target) and any(target):
        return []
    v = hilbert[0]
    support = [i for i, x in enumerate(v) if x > 0]
    out = []
    for idx, i in enumerate(support):
        lower = {j: v[j] for j in support[:idx]}
        for gamma in range(v[i]):
            # slice: z_j >= v_j for earlier support coords, z_i = gamma
            fixed = dict(lower)
            fixed_i = gamma
            sub_cols = tuple(c for j, c in enumerate(cols) if j != i)
            shift = [0] * len(target)
            for j, amt in fixed.items():
                shift = [s + amt * x for s, x in zip(shift, cols[j])]
            shift = [s + fixed_i * x for s, x in zip(shift, cols[i])]
            sub_target = tuple(t - s for t, s in zip(target, shift))
            for base, periods in _peel_solution_set(sub_cols, sub_target):
                emb_base = _embed_coord(base, i, gamma)
                emb_base = tuple(
                    b + (fixed.get(j, 0)) for j, b in enumerate(emb_base)
                )
                emb_periods = [_embed_coord(p, i, 0) for p in periods]
                out.append((emb_base, emb_periods + [v]))
    return out


def _embed_coord(vec: Vec, i: int, val: int) -> Vec:
    return vec[:i] + (val,) + vec[i:]


# ---------------------------------------------------------------------------
# textual format


def to_text(s: SemilinearSet) -> str:
    lines = [f"semilinear dim={s.dim}"]
    for c in s.components:
        per = ",".join("(" + ",".join(str(x) for x in p) + ")" for p in c.periods)
        base = ",".join(str(x) for x in c.base)
        lines.append(f"linear base=({base}) periods={{{per}}}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> SemilinearSet:
    from .errors import FormatError

    dim = None
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("semilinear"):
            try:
                dim = int(line.split("dim=")[1])
            except (IndexError, ValueError):
                raise FormatError("bad semilinear header", lineno)
            continue
        if line.startswith("linear"):
            if dim is None:
                raise FormatError("component before header", lineno)
            try:
                base_part = line.split("base=(")[1].split(")")[0]
                base = tuple(int(x) for x in base_part.split(",") if x != "")
                per_part = line.split("periods={")[1].rsplit("}", 1)[0]
                periods = []
                for chunk in per_part.split("),("):
                    chunk = chunk.strip("()")
                    if chunk:
                        periods.append(tuple(int(x) for x in chunk.split(",")))
            except (IndexError, ValueError):
                raise FormatError("bad linear component", lineno)
            comps.append(linear(base, periods))
            continue
        raise FormatError(f"unrecognised line: {line}", lineno)
    if dim is None:
        raise FormatError("missing semilinear header")
    return semilinear(dim, comps)
