"""Rank-2 variation of GIT: chambers, wall crossings and 2-ray games.

A rank-2 presentation has a character plane carved into chambers by the
directions of its weight columns.  Each chamber is a birational model of
the quotient (its own irrelevant ideal); crossing an interior wall is a
flip, anti-flip or flop read off from a type vector; the two ends of the
sweep are fibrations or divisorial contractions.  This module computes the
full picture exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Optional, Sequence

from .coxpres import CoxPresentation, MonomialIdeal
from .errors import (
    InvalidArgumentError,
    NotQuasiProjectiveError,
    UnsupportedFeatureError,
)
from .intlattice import primitive_vector

__all__ = [
    "Chamber",
    "WallCrossing",
    "EndBehavior",
    "GameDiagram",
    "chambers_rank2",
    "model_at_chamber",
    "wall_crossing",
    "cones_rank2",
    "graded_ring_generators",
    "end_behavior",
    "two_ray_game",
    "anticanonical_in_moving_interior",
    "monomial_string",
]

Vec2 = tuple[int, int]


def _det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _require_rank2(p: CoxPresentation) -> None:
    if p.rank != 2:
        raise InvalidArgumentError(
            f"chamber analysis needs a rank-2 presentation, got rank {p.rank}"
        )


def _column_directions(p: CoxPresentation) -> list[Vec2]:
    """Primitive direction of each weight column, in variable order."""
    return [tuple(primitive_vector(p.weights.column(j))) for j in range(p.num_variables)]


def _support_extremes(dirs: Sequence[Vec2]) -> tuple[Vec2, Vec2]:
    """Boundary rays of the cone spanned by ``dirs`` (span at most a halfplane).

    Returns ``(lo, hi)`` with every direction counterclockwise of ``lo`` and
    clockwise of ``hi`` within an angle of at most pi; ``lo = hi`` when all
    directions coincide, ``hi = -lo`` for an exact halfplane.

    Raises:
        NotQuasiProjectiveError: when the directions span the whole plane
            (no GIT chamber admits a projective quotient).
    """
    distinct = list(dict.fromkeys(tuple(d) for d in dirs))
    lo = next(
        (e for e in distinct if all(_det2(e, d) >= 0 for d in distinct)), None
    )
    hi = next(
        (e for e in distinct if all(_det2(e, d) <= 0 for d in distinct)), None
    )
    if lo is None or hi is None:
        raise NotQuasiProjectiveError(
            "weight columns span the whole plane; no quasi-projective chamber"
        )
    if len(distinct) == 1:
        return distinct[0], distinct[0]
    if lo == hi:
        # Happens only when all directions are equal, handled above.
        raise NotQuasiProjectiveError("degenerate support cone")
    return lo, hi


def _sweep_from(dirs: Sequence[Vec2], lo: Vec2) -> list[Vec2]:
    """Distinct directions ordered counterclockwise starting at ``lo``.

    The antipode of ``lo``, if present, closes the sweep; all other pairs
    have nonzero cross product inside the halfplane, so the comparison
    ``a before b iff det(a, b) > 0`` is a total order.
    """
    distinct = list(dict.fromkeys(tuple(d) for d in dirs))
    anti = (-lo[0], -lo[1])
    middle = [d for d in distinct if d != lo and d != anti]
    middle.sort(key=cmp_to_key(lambda a, b: -1 if _det2(a, b) > 0 else 1))
    out = [lo] + middle
    if anti in distinct:
        out.append(anti)
    return out


@dataclass(frozen=True)
class Chamber:
    """Open cone between two consecutive walls of the sweep."""

    left: Vec2
    right: Vec2
    index: int

    def __post_init__(self) -> None:
        left = tuple(int(e) for e in self.left)
        right = tuple(int(e) for e in self.right)
        if left == right:
            raise InvalidArgumentError("chamber walls must be distinct")
        if self.index < 0:
            raise InvalidArgumentError("chamber index must be nonnegative")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)


@dataclass(frozen=True)
class WallCrossing:
    """Birational surgery at an interior wall of the sweep.

    ``type_vector`` lists the signed degrees of the off-wall variables
    against the wall (earlier-side variables positive); its sum's sign
    gives the classification.  ``base_vars`` are the on-wall variables and
    ``base_weights`` their multiples of the wall primitive: together they
    present the base of the crossing.
    """

    wall: Vec2
    type_vector: tuple[int, ...]
    classification: str
    base_vars: tuple[int, ...]
    base_weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "wall", tuple(int(e) for e in self.wall))
        object.__setattr__(self, "type_vector", tuple(int(e) for e in self.type_vector))
        object.__setattr__(self, "base_vars", tuple(int(e) for e in self.base_vars))
        object.__setattr__(
            self, "base_weights", tuple(int(e) for e in self.base_weights)
        )
        if any(t == 0 for t in self.type_vector):
            raise InvalidArgumentError("type vector entries must be nonzero")
        total = sum(self.type_vector)
        expected = "Flip" if total > 0 else "AntiFlip" if total < 0 else "Flop"
        if self.classification != expected:
            raise InvalidArgumentError(
                f"classification {self.classification!r} contradicts type sum {total}"
            )
        if len(self.base_vars) != len(self.base_weights):
            raise InvalidArgumentError("base variables and weights must pair up")


@dataclass(frozen=True)
class EndBehavior:
    """What happens at a boundary ray of the moving cone.

    ``Fibration`` when no column lies beyond the ray (the ray also bounds
    the effective cone), ``DivisorialContraction`` when exactly one does,
    ``Unclassified`` otherwise.  Target generators describe the image of
    the associated map as monomial exponent vectors.
    """

    kind: str
    ray: Vec2
    target_generators: tuple[tuple[int, ...], ...] = ()
    contracted_variable: Optional[int] = None
    beyond_count: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "ray", tuple(int(e) for e in self.ray))
        object.__setattr__(
            self,
            "target_generators",
            tuple(tuple(int(e) for e in g) for g in self.target_generators),
        )
        if self.kind not in ("Fibration", "DivisorialContraction", "Unclassified"):
            raise InvalidArgumentError(f"unknown end kind {self.kind!r}")
        if self.kind == "DivisorialContraction" and self.contracted_variable is None:
            raise InvalidArgumentError("a contraction must name its variable")
        if self.kind == "Fibration" and self.beyond_count != 0:
            raise InvalidArgumentError("a fibration has no columns beyond the ray")
        if self.kind == "Unclassified" and self.beyond_count < 2:
            raise InvalidArgumentError("unclassified ends have at least two columns beyond")


@dataclass(frozen=True)
class GameDiagram:
    """Complete 2-ray game: models, wall crossings and the two ends."""

    models: tuple[CoxPresentation, ...]
    crossings: tuple[WallCrossing, ...]
    ends: tuple[EndBehavior, EndBehavior]
    chambers: tuple[Chamber, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.chambers and len(self.models) != len(self.chambers):
            raise InvalidArgumentError("one model per chamber")
        if len(self.crossings) != max(len(self.models) - 1, 0):
            raise InvalidArgumentError("one crossing per interior wall")


# ---------------------------------------------------------------------------
# chambers and models


def _oriented_sweep(p: CoxPresentation) -> list[Vec2]:
    """The wall sweep, oriented so the input ideal sits in a chamber.

    Both orientations of the support cone are tried; the one in which some
    chamber's (before, after) variable split equals the input's ordered
    ideal components wins.  If neither matches (the input ideal is not a
    two-sided chamber ideal), the sweep placing the first variable's column
    nearest the start is used, counterclockwise on a tie.
    """
    dirs = _column_directions(p)
    lo, hi = _support_extremes(dirs)
    ccw = _sweep_from(dirs, lo)
    if len(ccw) == 1:
        return ccw
    cw = list(reversed(ccw))
    want = p.irrelevant.components
    for sweep in (ccw, cw):
        if len(want) != 2:
            break
        pos = {d: i for i, d in enumerate(sweep)}
        for cut in range(len(sweep) - 1):
            before = tuple(j for j in range(p.num_variables) if pos[dirs[j]] <= cut)
            after = tuple(j for j in range(p.num_variables) if pos[dirs[j]] > cut)
            if before == want[0] and after == want[1]:
                return sweep
    first = dirs[0]
    if ccw.index(first) < cw.index(first):
        return ccw
    if cw.index(first) < ccw.index(first):
        return cw
    return ccw


def chambers_rank2(
    p: CoxPresentation,
) -> tuple[tuple[Vec2, ...], tuple[Chamber, ...]]:
    """Walls (ordered primitive rays) and the chambers between them."""
    _require_rank2(p)
    sweep = _oriented_sweep(p)
    chambers = tuple(
        Chamber(sweep[i], sweep[i + 1], i) for i in range(len(sweep) - 1)
    )
    return tuple(sweep), chambers


def model_at_chamber(p: CoxPresentation, chamber: Chamber) -> CoxPresentation:
    """The presentation whose irrelevant ideal selects this chamber.

    Variables whose columns point at-or-before the chamber's left wall form
    the first component, the rest the second (on-wall columns join the
    near side).
    """
    walls, chambers = chambers_rank2(p)
    if chamber.index >= len(chambers) or chambers[chamber.index] != chamber:
        raise InvalidArgumentError(f"{chamber} is not a chamber of this sweep")
    dirs = _column_directions(p)
    pos = {d: i for i, d in enumerate(walls)}
    cut = chamber.index
    before = tuple(j for j in range(p.num_variables) if pos[dirs[j]] <= cut)
    after = tuple(j for j in range(p.num_variables) if pos[dirs[j]] > cut)
    return CoxPresentation(
        variables=p.variables,
        weights=p.weights,
        irrelevant=MonomialIdeal((before, after)),
        stacky=p.stacky,
    )


def wall_crossing(p: CoxPresentation, wall: Sequence[int]) -> WallCrossing:
    """Type vector and classification at an interior wall.

    Off-wall entries are the columns' signed determinants against the wall,
    positive on the earlier-chamber side; on-wall variables go to
    ``base_vars`` with their multiples of the wall primitive.
    """
    _require_rank2(p)
    walls, _ = chambers_rank2(p)
    w = tuple(primitive_vector(wall))
    if w not in walls:
        raise InvalidArgumentError(f"{w} is not a wall of this presentation")
    idx = walls.index(w)
    if idx == 0 or idx == len(walls) - 1:
        raise InvalidArgumentError(
            f"{w} is an extreme wall; use end_behavior for the ends of the game"
        )
    prev = walls[idx - 1]
    sign = 1 if _det2(w, prev) > 0 else -1
    dirs = _column_directions(p)
    on_wall = [j for j in range(p.num_variables) if dirs[j] == w]
    off_wall = [j for j in range(p.num_variables) if dirs[j] != w]
    entries = tuple(sign * _det2(w, p.weights.column(j)) for j in off_wall)
    base_weights = []
    axis = 0 if w[0] != 0 else 1
    for j in on_wall:
        col = p.weights.column(j)
        base_weights.append(col[axis] // w[axis])
    total = sum(entries)
    kind = "Flip" if total > 0 else "AntiFlip" if total < 0 else "Flop"
    return WallCrossing(w, entries, kind, tuple(on_wall), tuple(base_weights))


# ---------------------------------------------------------------------------
# cones


def cones_rank2(
    p: CoxPresentation,
) -> tuple[tuple[Vec2, Vec2], tuple[Vec2, Vec2]]:
    """Boundary rays of the effective cone and of the moving cone.

    Effective: the support of all columns.  Moving: the intersection over
    variables ``j`` of the support of the columns other than ``j`` (a
    divisor moves when every variable can avoid it).

    Raises:
        UnsupportedFeatureError: if the moving cone is empty.
    """
    _require_rank2(p)
    walls, _ = chambers_rank2(p)
    dirs = _column_directions(p)
    pos = {d: i for i, d in enumerate(walls)}
    start, end = 0, len(walls) - 1
    for j in range(p.num_variables):
        others = [pos[dirs[t]] for t in range(p.num_variables) if t != j]
        start = max(start, min(others))
        end = min(end, max(others))
    if start > end:
        raise UnsupportedFeatureError(
            "the moving cone is empty: some divisor meets every model"
        )
    return (walls[0], walls[-1]), (walls[start], walls[end])


# ---------------------------------------------------------------------------
# graded ring generators


def _dickson_minimal(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Componentwise-minimal elements of a finite set of exponent vectors."""
    out = []
    for v in vectors:
        if not any(
            u != v and all(a <= b for a, b in zip(u, v)) for u in vectors
        ):
            out.append(v)
    return out


def _line_solutions(qs: list[int], rho: int) -> list[tuple[int, ...]]:
    """All small nonnegative solutions of ``sum q_i e_i = rho``.

    The search bound covers every solution that is not componentwise above
    a homogeneous solution, which is all the callers keep.
    """
    if not qs:
        return [()] if rho == 0 else []
    top = max(abs(q) for q in qs)
    bound = abs(rho) + len(qs) * top * top + top + 1
    out: list[tuple[int, ...]] = []

    def rec(i: int, partial: list[int], acc: int) -> None:
        if i == len(qs):
            if acc == rho:
                out.append(tuple(partial))
            return
        for e in range(bound + 1):
            rec(i + 1, partial + [e], acc + qs[i] * e)

    rec(0, [], 0)
    return out


class _MonomialEnumerator:
    """Exact enumeration of monomials of a given multidegree.

    A strictly positive functional on the non-degenerate columns bounds
    the search; columns on the boundary line of a halfplane support are
    handled by a one-dimensional Diophantine solve, with monomials
    divisible by a degree-zero invariant discarded (they are never minimal
    generators and come in infinite families).
    """

    def __init__(self, p: CoxPresentation) -> None:
        self.p = p
        self.cols = [p.weights.column(j) for j in range(p.num_variables)]
        dirs = _column_directions(p)
        lo, hi = _support_extremes(dirs)
        rot_lo = (-lo[1], lo[0])
        if hi == (-lo[0], -lo[1]):
            ell = rot_lo
        elif lo == hi:
            ell = lo  # single direction: its own dot product is positive
        else:
            rot_hi = (hi[1], -hi[0])
            ell = (rot_lo[0] + rot_hi[0], rot_lo[1] + rot_hi[1])
        self.ell = ell
        self.values = [ell[0] * c[0] + ell[1] * c[1] for c in self.cols]
        assert all(v >= 0 for v in self.values), "functional must be nonnegative"
        self.zline = [j for j in range(len(self.cols)) if self.values[j] == 0]
        self.free = [j for j in range(len(self.cols)) if self.values[j] > 0]
        self.lo = lo
        # Multiples of lo carried by each boundary-line column.
        axis = 0 if lo[0] != 0 else 1
        self.qs = [self.cols[j][axis] // lo[axis] for j in self.zline]
        homog = [s for s in _line_solutions(self.qs, 0) if any(s)]
        self.invariants = _dickson_minimal(homog)

    def degree_zero_invariants(self) -> list[tuple[int, ...]]:
        """Minimal nonconstant monomials of multidegree (0, 0)."""
        out = []
        for s in self.invariants:
            e = [0] * len(self.cols)
            for slot, j in enumerate(self.zline):
                e[j] = s[slot]
            out.append(tuple(e))
        return out

    def monomials(self, d: tuple[int, int]) -> list[tuple[int, ...]]:
        """Exponent vectors of degree ``d``, modulo invariant divisibility."""
        budget = self.ell[0] * d[0] + self.ell[1] * d[1]
        if budget < 0:
            return []
        out: list[tuple[int, ...]] = []
        n = len(self.cols)

        def line_part(e: list[int], rest: tuple[int, int]) -> None:
            if not self.zline:
                if rest == (0, 0):
                    out.append(tuple(e))
                return
            # rest must be an integer multiple of lo
            axis = 0 if self.lo[0] != 0 else 1
            if rest[axis] % self.lo[axis] != 0:
                return
            rho = rest[axis] // self.lo[axis]
            other = 1 - axis
            if rho * self.lo[other] != rest[other]:
                return
            for s in _line_solutions(self.qs, rho):
                if any(
                    all(a <= b for a, b in zip(inv, s)) for inv in self.invariants
                ):
                    continue
                full = list(e)
                for slot, j in enumerate(self.zline):
                    full[j] = s[slot]
                out.append(tuple(full))

        def rec(i: int, e: list[int], remaining: tuple[int, int], slack: int) -> None:
            if i == len(self.free):
                line_part(e, remaining)
                return
            j = self.free[i]
            step = self.values[j]
            top = slack // step
            for cnt in range(top + 1):
                e[j] = cnt
                rec(
                    i + 1,
                    e,
                    (
                        remaining[0] - cnt * self.cols[j][0],
                        remaining[1] - cnt * self.cols[j][1],
                    ),
                    slack - cnt * step,
                )
            e[j] = 0

        rec(0, [0] * n, d, budget)
        return out


def _reversed_key(e: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(e))


def graded_ring_generators(
    p: CoxPresentation, chi: Sequence[int], degree_bound: int
) -> tuple[tuple[int, ...], ...]:
    """Minimal monomial generators of weight ``k * chi``, ``1 <= k <= bound``.

    A monomial is kept when it is not divisible by a degree-zero invariant
    or by a generator found at a lower multiple of ``chi``.  Within each
    level monomials are ordered lexicographically reading exponents from
    the last variable backwards, which lists low-index variables first.
    """
    _require_rank2(p)
    target = (int(chi[0]), int(chi[1]))
    if target == (0, 0):
        raise InvalidArgumentError("character must be nonzero")
    if degree_bound < 0:
        raise InvalidArgumentError("degree bound must be nonnegative")
    enum = _MonomialEnumerator(p)
    gens: list[tuple[int, ...]] = []
    for k in range(1, degree_bound + 1):
        d = (k * target[0], k * target[1])
        level = []
        for e in enum.monomials(d):
            if any(all(a <= b for a, b in zip(g, e)) for g in gens):
                continue
            level.append(e)
        level.sort(key=_reversed_key)
        gens.extend(level)
    return tuple(gens)


def monomial_string(variables: Sequence[str], exponents: Sequence[int]) -> str:
    """Compact monomial rendering: ``(2,0,1) over (x,y,z)`` is ``x^2z``."""
    parts = []
    for name, e in zip(variables, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# ends and the full game


def _default_bound(p: CoxPresentation, ray: Vec2, dirs: list[Vec2]) -> int:
    env = os.environ.get("COXFORGE_DEGREE_BOUND")
    if env:
        value = int(env)
        if value < 0:
            raise InvalidArgumentError("COXFORGE_DEGREE_BOUND must be nonnegative")
        return value
    axis = 0 if ray[0] != 0 else 1
    on_ray = [
        p.weights.column(j)[axis] // ray[axis]
        for j in range(p.num_variables)
        if dirs[j] == ray
    ]
    return max(1, max(on_ray, default=1)) + 1


def end_behavior(
    p: CoxPresentation,
    extreme_ray: Sequence[int],
    degree_bound: Optional[int] = None,
) -> EndBehavior:
    """Classify the end of the game at a boundary ray of the moving cone.

    No column strictly beyond the ray means the map at the ray is a
    fibration (the ray also bounds the effective cone); exactly one column
    beyond means its divisor is contracted; more are reported unclassified.
    Target generators come from :func:`graded_ring_generators` at the ray.
    """
    _require_rank2(p)
    ray = tuple(primitive_vector(extreme_ray))
    walls, _ = chambers_rank2(p)
    _, moving = cones_rank2(p)
    if ray not in moving:
        raise InvalidArgumentError(
            f"{ray} is not a boundary ray of the moving cone {moving}"
        )
    dirs = _column_directions(p)
    pos = {d: i for i, d in enumerate(walls)}
    ray_pos = pos[ray]
    if ray == moving[0]:
        beyond = [j for j in range(p.num_variables) if pos[dirs[j]] < ray_pos]
    else:
        beyond = [j for j in range(p.num_variables) if pos[dirs[j]] > ray_pos]
    bound = degree_bound if degree_bound is not None else _default_bound(p, ray, dirs)
    gens = graded_ring_generators(p, ray, bound)
    if not beyond:
        return EndBehavior("Fibration", ray, gens)
    if len(beyond) == 1:
        return EndBehavior(
            "DivisorialContraction", ray, gens, contracted_variable=beyond[0]
        )
    return EndBehavior("Unclassified", ray, gens, beyond_count=len(beyond))


def two_ray_game(
    p: CoxPresentation, degree_bound: Optional[int] = None
) -> GameDiagram:
    """Every model, crossing and end of the rank-2 game, in sweep order."""
    walls, chambers = chambers_rank2(p)
    if not chambers:
        raise UnsupportedFeatureError(
            "all columns share one direction; there is no chamber to play in"
        )
    models = tuple(model_at_chamber(p, c) for c in chambers)
    crossings = tuple(wall_crossing(p, w) for w in walls[1:-1])
    _, moving = cones_rank2(p)
    ends = (
        end_behavior(p, moving[0], degree_bound),
        end_behavior(p, moving[1], degree_bound),
    )
    return GameDiagram(models, crossings, ends, chambers)


def anticanonical_in_moving_interior(
    p: CoxPresentation, equation_degrees: Sequence[Sequence[int]]
) -> bool:
    """Whether ``-K = sum(columns) - sum(equation degrees)`` is interior to
    the moving cone.

    For rank 1 the moving cone is the positive span of the (necessarily
    same-sign) weights, so the test is a sign check.
    """
    degs = [tuple(int(x) for x in d) for d in equation_degrees]
    for d in degs:
        if len(d) != p.rank:
            raise InvalidArgumentError(
                f"degree {d} does not match rank {p.rank}"
            )
    total = [
        sum(p.weights.column(j)[i] for j in range(p.num_variables))
        - sum(d[i] for d in degs)
        for i in range(p.rank)
    ]
    if p.rank == 1:
        cols = [p.weights.entries[0][j] for j in range(p.num_variables)]
        if all(c > 0 for c in cols):
            return total[0] > 0
        if all(c < 0 for c in cols):
            return total[0] < 0
        raise NotQuasiProjectiveError("rank-1 weights of mixed sign")
    _require_rank2(p)
    walls, _ = chambers_rank2(p)
    _, moving = cones_rank2(p)
    mlo, mhi = moving
    v = (total[0], total[1])
    if mlo == mhi:
        return False  # a single ray has empty interior
    # Sweep orientation: sign of any consecutive non-antipodal wall pair.
    orient = 0
    for i in range(len(walls) - 1):
        d = _det2(walls[i], walls[i + 1])
        if d != 0:
            orient = 1 if d > 0 else -1
            break
    if mhi == (-mlo[0], -mlo[1]):
        return orient * _det2(mlo, v) > 0
    return orient * _det2(mlo, v) > 0 and orient * _det2(v, mhi) > 0
