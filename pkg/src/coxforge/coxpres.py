"""Cox presentations: weight matrix plus irrelevant ideal.

A presentation packages the GIT data of a simplicial toric variety (or
Deligne-Mumford stack): an ``r x n`` integer weight matrix grading ``n``
coordinate variables by a rank-``r`` torus, and an irrelevant monomial
ideal given as an intersection of coordinate primes.  The module decides
well-formedness, removes generic stabilisers and quasi-reflections while
emitting a replayable certificate of every elementary move, and tests two
presentations for equivalence up to unimodular row operations and variable
permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import (
    InvalidArgumentError,
    RankError,
    UnsupportedFeatureError,
)
from .intlattice import (
    IntMatrix,
    UnimodularWitness,
    _lift_transvections,
    _sl_echelon_ops_mod_p,
    delete_column,
    hnf_canonical,
    hnf_transform,
    is_standard,
    minor_gcd,
    rank,
    require_standard,
    smallest_prime_factor,
    standardize_with_steps,
)

__all__ = [
    "MonomialIdeal",
    "CoxPresentation",
    "RowTransform",
    "ColumnScale",
    "RowDivide",
    "RowRescaleRational",
    "Step",
    "WellFormingCertificate",
    "is_well_formed",
    "well_form",
    "wps_well_form",
    "coarse_moduli",
    "verify_certificate",
    "presentations_equivalent",
    "minimal_transversals",
]


# ---------------------------------------------------------------------------
# monomial ideals


def minimal_transversals(
    sets: Sequence[Iterable[int]],
) -> tuple[tuple[int, ...], ...]:
    """All inclusion-minimal hitting sets of a family of integer sets.

    A transversal meets every member of ``sets``.  The result is sorted
    lexicographically; an empty family has the empty transversal.  Used to
    pass between the two descriptions of a squarefree monomial ideal: its
    minimal monomial generators and its coordinate-prime components are
    each the minimal transversals of the other.
    """
    family = [frozenset(s) for s in sets]
    for s in family:
        if not s:
            raise InvalidArgumentError("cannot hit an empty set")
    family.sort(key=lambda s: (len(s), sorted(s)))
    found: set[frozenset[int]] = set()

    def extend(partial: frozenset[int], todo: list[frozenset[int]]) -> None:
        todo = [s for s in todo if not (s & partial)]
        if not todo:
            found.add(partial)
            return
        for e in sorted(todo[0]):
            extend(partial | {e}, todo[1:])

    extend(frozenset(), family)
    minimal = [
        t for t in found if not any(u < t for u in found)
    ]
    return tuple(sorted(tuple(sorted(t)) for t in minimal))


@dataclass(frozen=True, eq=False)
class MonomialIdeal:
    """Intersection of coordinate primes, one component per variable set.

    ``components`` lists the index sets generating each prime.  The stored
    order follows the constructor argument (several callers care about
    which component comes first), but equality and hashing treat the ideal
    as the set of its components.
    """

    components: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: list[frozenset[int]] = []
        normal: list[tuple[int, ...]] = []
        for comp in self.components:
            entries = tuple(comp)
            if not entries:
                raise InvalidArgumentError("empty ideal component")
            for i in entries:
                if not isinstance(i, int) or isinstance(i, bool) or i < 0:
                    raise InvalidArgumentError(
                        f"variable index must be a nonnegative integer, got {i!r}"
                    )
            key = frozenset(entries)
            if len(key) != len(entries):
                raise InvalidArgumentError(f"repeated index in component {entries}")
            if key in seen:
                continue
            seen.append(key)
            normal.append(tuple(sorted(entries)))
        for a in seen:
            for b in seen:
                if a < b:
                    raise InvalidArgumentError(
                        "components must form an antichain: "
                        f"{tuple(sorted(a))} is contained in {tuple(sorted(b))}"
                    )
        object.__setattr__(self, "components", tuple(normal))

    # set semantics: the intersection does not depend on component order
    def _key(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return "".join(
            "(" + ",".join(str(i) for i in comp) + ")" for comp in self.components
        )

    @property
    def max_index(self) -> int:
        """Largest variable index appearing in any component (-1 if none)."""
        return max((i for comp in self.components for i in comp), default=-1)

    def mapped(self, permutation: Sequence[int]) -> "MonomialIdeal":
        """Apply an index substitution ``i -> permutation[i]`` componentwise."""
        return MonomialIdeal(
            tuple(
                tuple(sorted(permutation[i] for i in comp))
                for comp in self.components
            )
        )

    def generators(self) -> tuple[tuple[int, ...], ...]:
        """Supports of the minimal squarefree monomial generators.

        A squarefree monomial lies in the intersection of coordinate primes
        exactly when its support meets every component, so the minimal
        generators are the minimal transversals of the component family.
        """
        return minimal_transversals(self.components)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class CoxPresentation:
    """Quotient presentation: variables, torus weights, irrelevant ideal.

    ``weights`` is ``r x n`` with one column per variable; ``irrelevant``
    collects the coordinate primes whose union is the unstable locus.  With
    ``stacky=False`` the matrix must be well-formed, so the presentation is
    a genuine variety; ``stacky=True`` permits generic stabilisers and
    quasi-reflections and denotes the quotient stack.
    """

    variables: tuple[str, ...]
    weights: IntMatrix
    irrelevant: MonomialIdeal
    stacky: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        names = self.variables
        if not names:
            raise InvalidArgumentError("need at least one variable")
        for name in names:
            if not isinstance(name, str) or not name.isidentifier():
                raise InvalidArgumentError(f"bad variable name {name!r}")
        if len(set(names)) != len(names):
            raise InvalidArgumentError("variable names must be distinct")
        if not isinstance(self.weights, IntMatrix):
            raise InvalidArgumentError("weights must be an IntMatrix")
        if self.weights.cols != len(names):
            raise InvalidArgumentError(
                f"{len(names)} variables but {self.weights.cols} weight columns"
            )
        if rank(self.weights) != self.weights.rows:
            raise RankError("weight matrix must have full row rank")
        for j in range(self.weights.cols):
            if all(e == 0 for e in self.weights.column(j)):
                raise InvalidArgumentError(f"column {j} of the weights is zero")
        if not isinstance(self.irrelevant, MonomialIdeal):
            raise InvalidArgumentError("irrelevant must be a MonomialIdeal")
        if not self.irrelevant.components:
            raise InvalidArgumentError("irrelevant ideal needs at least one component")
        if self.irrelevant.max_index >= len(names):
            raise InvalidArgumentError(
                f"ideal mentions variable {self.irrelevant.max_index} "
                f"but there are only {len(names)}"
            )
        if not isinstance(self.stacky, bool):
            raise InvalidArgumentError("stacky must be a bool")
        if not self.stacky and not is_well_formed(self.weights):
            raise InvalidArgumentError(
                "weights are not well-formed; pass stacky=True for the stack"
            )

    @property
    def rank(self) -> int:
        return self.weights.rows

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def variable_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InvalidArgumentError(f"no variable named {name!r}") from None

    def degree(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """Multidegree of the monomial with the given exponent vector."""
        if len(exponents) != self.num_variables:
            raise InvalidArgumentError(
                f"expected {self.num_variables} exponents, got {len(exponents)}"
            )
        return tuple(
            sum(w * e for w, e in zip(row, exponents)) for row in self.weights.entries
        )

    def ideal_by_name(self) -> str:
        """Human-readable irrelevant ideal, components by variable name."""
        return "".join(
            "(" + ",".join(self.variables[i] for i in comp) + ")"
            for comp in self.irrelevant.components
        )


# ---------------------------------------------------------------------------
# certificate steps


def _require_prime(q: int) -> None:
    if not isinstance(q, int) or isinstance(q, bool) or q < 2 or smallest_prime_factor(q) != q:
        raise InvalidArgumentError(f"factor must be prime, got {q!r}")


@dataclass(frozen=True)
class RowTransform:
    """Left-multiply the working matrix by a unimodular witness."""

    witness: UnimodularWitness

    def __post_init__(self) -> None:
        if not isinstance(self.witness, UnimodularWitness):
            raise InvalidArgumentError("RowTransform needs a UnimodularWitness")


@dataclass(frozen=True)
class ColumnScale:
    """Multiply one column by a prime ``factor``.

    ``row`` records the row whose entries are all divisible by ``factor``
    outside the scaled column; that divisibility is the hypothesis making
    the scaling an isomorphism of quotients, and replay re-checks it.
    """

    column: int
    factor: int
    row: int

    def __post_init__(self) -> None:
        _require_prime(self.factor)
        if self.column < 0 or self.row < 0:
            raise InvalidArgumentError("column and row indices must be nonnegative")


@dataclass(frozen=True)
class RowDivide:
    """Divide one row by a prime ``factor`` (all entries must be multiples)."""

    row: int
    factor: int

    def __post_init__(self) -> None:
        _require_prime(self.factor)
        if self.row < 0:
            raise InvalidArgumentError("row index must be nonnegative")


@dataclass(frozen=True)
class RowRescaleRational:
    """Rescale each row by a positive rational, result must stay integral.

    Present for completeness of the step language (removal of generic
    stabilisers can be phrased this way); the algorithms in this module
    always emit prime ``RowDivide`` steps instead.
    """

    factors: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(Fraction(f) for f in self.factors)
        if not coerced or any(f <= 0 for f in coerced):
            raise InvalidArgumentError("need positive rational factors, one per row")
        object.__setattr__(self, "factors", coerced)


Step = Union[RowTransform, ColumnScale, RowDivide, RowRescaleRational]

_STEP_TYPES = (RowTransform, ColumnScale, RowDivide, RowRescaleRational)


@dataclass(frozen=True)
class WellFormingCertificate:
    """Ordered elementary moves replaying an input matrix to an output."""

    steps: tuple[Step, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        for step in steps:
            if not isinstance(step, _STEP_TYPES):
                raise InvalidArgumentError(f"unknown certificate step {step!r}")
        object.__setattr__(self, "steps", steps)


def _replay(matrix: IntMatrix, steps: Sequence[Step]) -> IntMatrix:
    """Apply certificate steps, raising on any violated hypothesis."""
    work = matrix
    for step in steps:
        if isinstance(step, RowTransform):
            g = step.witness.matrix
            if g.cols != work.rows:
                raise InvalidArgumentError("row transform of the wrong size")
            work = g @ work
        elif isinstance(step, ColumnScale):
            j, q, i = step.column, step.factor, step.row
            if j >= work.cols or i >= work.rows:
                raise InvalidArgumentError("column scale out of range")
            if any(
                work.entries[i][t] % q != 0 for t in range(work.cols) if t != j
            ):
                raise InvalidArgumentError(
                    f"column scale hypothesis fails: row {i} is not divisible "
                    f"by {q} away from column {j}"
                )
            work = IntMatrix(
                tuple(
                    tuple(e * q if t == j else e for t, e in enumerate(row))
                    for row in work.entries
                )
            )
        elif isinstance(step, RowDivide):
            i, q = step.row, step.factor
            if i >= work.rows:
                raise InvalidArgumentError("row divide out of range")
            if any(e % q != 0 for e in work.entries[i]):
                raise InvalidArgumentError(f"row {i} is not divisible by {q}")
            work = IntMatrix(
                tuple(
                    tuple(e // q for e in row) if t == i else row
                    for t, row in enumerate(work.entries)
                )
            )
        else:  # RowRescaleRational
            if len(step.factors) != work.rows:
                raise InvalidArgumentError("need one rational factor per row")
            scaled = []
            for f, row in zip(step.factors, work.entries):
                values = [Fraction(e) * f for e in row]
                if any(v.denominator != 1 for v in values):
                    raise InvalidArgumentError("rational rescale left the lattice")
                scaled.append(tuple(int(v) for v in values))
            work = IntMatrix(tuple(scaled))
    return work


# ---------------------------------------------------------------------------
# well-formedness


def is_well_formed(a: IntMatrix) -> bool:
    """True when every column-deleted submatrix of ``a`` is standard.

    Raises:
        MustStandardizeFirstError: if ``a`` itself is not standard.
    """
    require_standard(a, "weight matrix")
    return all(is_standard(delete_column(a, k)) for k in range(a.cols))


def _well_form_matrix(m: IntMatrix) -> tuple[IntMatrix, tuple[Step, ...]]:
    """Drive ``m`` to its canonical standard well-formed model.

    Returns the model and the elementary steps.  Deterministic: columns are
    repaired in increasing index order, primes in increasing order, and the
    result is Hermite-canonical.  Already-canonical well-formed input gives
    an empty step list.
    """
    r = m.rows
    if rank(m) != r:
        raise RankError("weight matrix must have full row rank")
    steps: list[Step] = []

    _, work, raw = standardize_with_steps(m)
    for record in raw:
        if record[0] == "row_transform":
            steps.append(RowTransform(record[1]))
        else:
            steps.append(RowDivide(record[1], record[2]))

    for k in range(work.cols):
        while True:
            ak = delete_column(work, k)
            d = 0 if (ak.cols < r or rank(ak) < r) else minor_gcd(ak, r)
            if d == 1:
                break
            if d == 0:
                raise UnsupportedFeatureError(
                    f"deleting column {k} drops the rank; the presentation has "
                    "no well-formed model of the same rank"
                )
            q = smallest_prime_factor(d)
            # Echelon the deleted matrix mod q by transvections; since q
            # divides every maximal minor the rank drops mod q, so the last
            # row of g @ work is divisible by q away from column k.
            ops, _ = _sl_echelon_ops_mod_p(ak, q)
            if ops:
                g = _lift_transvections(ops, r, q)
                witness = UnimodularWitness.of(g)
                steps.append(RowTransform(witness))
                work = g @ work
            bottom = work.entries[r - 1]
            assert all(
                bottom[t] % q == 0 for t in range(work.cols) if t != k
            ), "echelon reduction failed to clear the bottom row"
            steps.append(ColumnScale(k, q, r - 1))
            work = IntMatrix(
                tuple(
                    tuple(e * q if t == k else e for t, e in enumerate(row))
                    for row in work.entries
                )
            )
            steps.append(RowDivide(r - 1, q))
            work = IntMatrix(
                work.entries[: r - 1]
                + (tuple(e // q for e in work.entries[r - 1]),)
            )
            nd = minor_gcd(delete_column(work, k), r)
            assert nd * q == d, "column repair must shave exactly one prime"

    h, witness = hnf_transform(work)
    if h != work:
        steps.append(RowTransform(witness))
        work = h
    assert is_well_formed(work), "well-forming postcondition"
    return work, tuple(steps)


def well_form(p: CoxPresentation) -> tuple[CoxPresentation, WellFormingCertificate]:
    """Canonical well-formed model of a presentation, with certificate.

    The irrelevant ideal and the variables are untouched; only the weights
    change, by unimodular row moves, prime column scalings (each recording
    the row that legitimises it) and prime row divisions.  The output is
    Hermite-canonical and has ``stacky=False``.
    """
    model, steps = _well_form_matrix(p.weights)
    out = CoxPresentation(
        variables=p.variables,
        weights=model,
        irrelevant=p.irrelevant,
        stacky=False,
    )
    return out, WellFormingCertificate(steps)


def coarse_moduli(p: CoxPresentation) -> CoxPresentation:
    """Underlying variety of a stacky presentation: its well-formed model."""
    out, _ = well_form(p)
    return out


def wps_well_form(weights: Sequence[int]) -> tuple[int, ...]:
    """Well-form a weighted projective space ``P(a_0, ..., a_n)``.

    Classical two-step reduction, repeated to exhaustion: divide all
    weights by their common factor (generic stabiliser), then for each
    index divide the other weights by their common factor
    (quasi-reflection).  The result has coprime co-(n-1)-tuples: the gcd of
    every subset omitting one weight is 1.
    """
    a = [int(w) for w in weights]
    if not a:
        raise InvalidArgumentError("need at least one weight")
    if any(w < 1 for w in a):
        raise InvalidArgumentError("weights must be positive")
    changed = True
    while changed:
        changed = False
        g = gcd(*a) if len(a) > 1 else a[0]
        if g > 1:
            a = [w // g for w in a]
            changed = True
        for i in range(len(a)):
            others = [a[j] for j in range(len(a)) if j != i]
            if not others:
                continue
            h = gcd(*others) if len(others) > 1 else others[0]
            if h > 1:
                a = [w if j == i else w // h for j, w in enumerate(a)]
                changed = True
    return tuple(a)


def verify_certificate(
    matrix: IntMatrix, cert: WellFormingCertificate, output: IntMatrix
) -> bool:
    """Replay ``cert`` on ``matrix`` and compare with ``output``.

    Every step's hypothesis is re-checked at its point of application (a
    ``ColumnScale`` needs its recorded row divisible by the factor away
    from the scaled column; divisions must be exact).  Malformed data
    yields ``False``, never an exception.
    """
    try:
        if not isinstance(cert, WellFormingCertificate):
            return False
        result = _replay(matrix, cert.steps)
    except Exception:
        return False
    return result == output


# ---------------------------------------------------------------------------
# equivalence


def _column_gcds(m: IntMatrix) -> tuple[int, ...]:
    return tuple(gcd(*(abs(e) for e in m.column(j))) if m.rows > 1 else abs(m.entries[0][j]) for j in range(m.cols))


def _ideal_signature(ideal: MonomialIdeal, n: int) -> list[tuple[int, ...]]:
    """Multiset of containing-component sizes for each variable index."""
    sig: list[tuple[int, ...]] = []
    for v in range(n):
        sizes = sorted(len(c) for c in ideal.components if v in c)
        sig.append(tuple(sizes))
    return sig


def presentations_equivalent(p: CoxPresentation, q: CoxPresentation) -> bool:
    """Decide equivalence of two presentations.

    True when the well-formed models differ by a variable permutation and a
    unimodular row transform that also identifies the irrelevant ideals.
    The permutation search backtracks over columns, pruned by two
    invariants of unimodular row moves: the gcd of each weight column and
    each variable's multiset of ideal-component sizes.
    """
    if p.num_variables != q.num_variables or p.rank != q.rank:
        return False
    pw, _ = well_form(p)
    qw, _ = well_form(q)
    a, b = pw.weights, qw.weights
    n = a.cols
    a_gcds, b_gcds = _column_gcds(a), _column_gcds(b)
    a_sig = _ideal_signature(pw.irrelevant, n)
    b_sig = _ideal_signature(qw.irrelevant, n)
    if sorted(a_gcds) != sorted(b_gcds) or sorted(a_sig) != sorted(b_sig):
        return False

    targets: list[int | None] = [None] * n  # source column -> target slot
    used = [False] * n

    def feasible(src: int, dst: int) -> bool:
        return a_gcds[src] == b_gcds[dst] and a_sig[src] == b_sig[dst]

    def place(src: int) -> bool:
        if src == n:
            permuted = IntMatrix(
                tuple(
                    tuple(row[targets.index(t)] for t in range(n))
                    for row in a.entries
                )
            )
            if hnf_canonical(permuted) != b:
                return False
            mapping = [targets[i] for i in range(n)]
            return pw.irrelevant.mapped(mapping) == qw.irrelevant
        for dst in range(n):
            if not used[dst] and feasible(src, dst):
                targets[src] = dst
                used[dst] = True
                if place(src + 1):
                    return True
                targets[src] = None
                used[dst] = False
        return False

    return place(0)
