"""Exact integer-lattice linear algebra.

Matrices are immutable tuples of tuples of Python ints and every operation
is exact; minors of weight matrices grow fast, so nothing here ever touches
floating point or fixed-width arithmetic.  The elimination cores (Hermite,
Smith, determinant) are delegated to :mod:`coxforge._kernels`, which selects
the compiled backend when available.

The central notions:

* a matrix is *standard* when it has full row rank and the gcd of its
  maximal minors is 1 (equivalently the induced map ``Z^n -> Z^r`` is
  surjective, equivalently all Smith elementary divisors are 1);
* :func:`standardize` factors any full-rank matrix as ``M = transform * N``
  with ``N`` standard, peeling prime factors off the minor gcd one at a
  time via determinant-one reductions mod p;
* the row-style Hermite normal form is the canonical representative used
  whenever two matrices have to be compared up to unimodular row
  equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from coxforge import _kernels
from coxforge.errors import (
    InvalidArgumentError,
    MustStandardizeFirstError,
    RankError,
)

RationalScalar = Fraction
"""Exact rational scalar: numerators/denominators stay reduced."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix.

    Attributes:
        entries: Tuple of row tuples.  At least one row; zero columns are
            permitted so that degenerate duals (``r == n``) have a value.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise InvalidArgumentError("matrix needs at least one row")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise InvalidArgumentError("ragged rows in matrix")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InvalidArgumentError(f"non-integer entry {x!r}")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        if self.cols == 0:
            raise InvalidArgumentError("cannot transpose a zero-column matrix")
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidArgumentError("matrix shape mismatch in product")
        bt = list(zip(*other.entries)) if other.cols else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class UnimodularWitness:
    """A unimodular matrix together with its exact integer inverse."""

    matrix: IntMatrix
    inverse: IntMatrix

    def __post_init__(self) -> None:
        n = self.matrix.rows
        if self.matrix.cols != n or self.inverse.rows != n or self.inverse.cols != n:
            raise InvalidArgumentError("witness matrices must be square of equal size")
        if self.matrix @ self.inverse != IntMatrix.identity(n):
            raise InvalidArgumentError("witness inverse is not an inverse")

    @classmethod
    def of(cls, matrix: IntMatrix) -> "UnimodularWitness":
        return cls(matrix, integer_inverse(matrix))


def det(m: IntMatrix) -> int:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise InvalidArgumentError("determinant of a non-square matrix")
    return _kernels.det(m.to_lists())


def integer_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, computed and verified exactly.

    Raises:
        InvalidArgumentError: if ``m`` is not square with determinant +-1.
    """
    n = m.rows
    if m.cols != n:
        raise InvalidArgumentError("inverse of a non-square matrix")
    d = det(m)
    if d not in (1, -1):
        raise InvalidArgumentError(f"matrix with determinant {d} is not unimodular")
    # Fraction-exact Gauss-Jordan; entries are certified integral afterwards.
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(m.entries)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if work[i][col])
        work[col], work[pivot] = work[pivot], work[col]
        pv = work[col][col]
        work[col] = [x / pv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    inv_rows = []
    for row in work:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise AssertionError("unimodular inverse came out non-integral")
        inv_rows.append([int(x) for x in tail])
    return IntMatrix.from_rows(inv_rows)


def smith_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Elementary divisors ``s_1 | s_2 | ...`` (nonnegative, may end in 0)."""
    diag, _, _ = _kernels.smith(m.to_lists())
    return tuple(diag)


def smith_transforms(m: IntMatrix) -> tuple[tuple[int, ...], IntMatrix, IntMatrix]:
    """Smith data ``(diag, u, v)`` with ``u @ m @ v`` diagonal, u/v unimodular."""
    diag, u, v = _kernels.smith(m.to_lists())
    return tuple(diag), IntMatrix.from_rows(u), IntMatrix.from_rows(v)


def rank(m: IntMatrix) -> int:
    """Rank over Q (equivalently the number of nonzero elementary divisors)."""
    if m.cols == 0:
        return 0
    return sum(1 for s in smith_diagonal(m) if s)


def minor_gcd(m: IntMatrix, r: int) -> int:
    """Gcd of the absolute values of all ``r x r`` minors of ``m``.

    Computed as the r-th determinantal divisor (the product of the first
    ``r`` elementary divisors), which agrees with exhaustive minor
    enumeration.  Returns 0 when every ``r x r`` minor vanishes.

    Raises:
        InvalidArgumentError: if ``r`` exceeds either dimension of ``m``.
    """
    if r < 1 or r > min(m.rows, m.cols):
        raise InvalidArgumentError(f"no {r} x {r} minors in a {m.rows} x {m.cols} matrix")
    out = 1
    for s in smith_diagonal(m)[:r]:
        out *= s
    return out


def is_standard(m: IntMatrix) -> bool:
    """True when ``m`` is surjective as a map ``Z^cols -> Z^rows``.

    Equivalently: full row rank and the gcd of maximal minors is 1.
    """
    if m.cols < m.rows:
        return False
    diag = smith_diagonal(m)
    return len(diag) >= m.rows and all(s == 1 for s in diag[: m.rows])


def delete_column(m: IntMatrix, k: int) -> IntMatrix:
    """Copy of ``m`` with column ``k`` removed."""
    if not 0 <= k < m.cols:
        raise InvalidArgumentError(f"column {k} out of range")
    return IntMatrix(tuple(row[:k] + row[k + 1 :] for row in m.entries))


def hnf_canonical(m: IntMatrix) -> IntMatrix:
    """Canonical row-style Hermite normal form of ``m``."""
    h, _ = _kernels.hnf(m.to_lists())
    return IntMatrix.from_rows(h)


def hnf_transform(m: IntMatrix) -> tuple[IntMatrix, UnimodularWitness]:
    """Hermite form plus the unimodular row transform ``u`` with ``u @ m = h``."""
    h, u = _kernels.hnf(m.to_lists())
    return IntMatrix.from_rows(h), UnimodularWitness.of(IntMatrix.from_rows(u))


def unimodular_row_equivalent(a: IntMatrix, b: IntMatrix) -> bool:
    """True when ``a = g @ b`` for some unimodular ``g`` (same shape required)."""
    if a.rows != b.rows or a.cols != b.cols:
        return False
    return hnf_canonical(a) == hnf_canonical(b)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel lattice of ``m``, one generator per column.

    The kernel of an integer matrix is saturated, so the returned
    ``cols x (cols - rank)`` matrix always has all-ones Smith form.  Columns
    are canonicalised by a column-style Hermite reduction, making the basis
    choice deterministic.
    """
    diag, _, v = smith_transforms(m)
    rk = sum(1 for s in diag if s)
    n = m.cols
    d = n - rk
    if d == 0:
        return IntMatrix(tuple(() for _ in range(n)))
    cols = [v.column(j) for j in range(rk, n)]
    # Column-style Hermite: run the row-style reduction on the transpose.
    h, _ = _kernels.hnf([list(c) for c in cols])
    basis_cols = [row for row in h if any(row)]
    assert len(basis_cols) == d
    return IntMatrix(tuple(tuple(c[i] for c in basis_cols) for i in range(n)))


def primitive_vector(v: tuple[int, ...]) -> tuple[int, ...]:
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise InvalidArgumentError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def smallest_prime_factor(n: int) -> int:
    """Least prime factor of ``n >= 2`` by trial division (inputs are small)."""
    if n < 2:
        raise InvalidArgumentError("need n >= 2")
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _apply_ops_mod_p(a: list[list[int]], ops, p: int) -> None:
    for i, j, c in ops:
        a[i] = [(x + c * y) % p for x, y in zip(a[i], a[j])]


def _sl_reduce_to_identity_mod_p(g: IntMatrix, p: int) -> list[tuple[int, int, int]]:
    """Transvections reducing ``g`` (det 1 mod p) to the identity over F_p.

    Each op ``(i, j, c)`` means "add c times row j to row i"; applying them
    in order to ``g`` yields the identity matrix mod p.
    """
    r = g.rows
    a = [[x % p for x in row] for row in g.entries]
    ops: list[tuple[int, int, int]] = []

    def apply(i: int, j: int, c: int) -> None:
        c %= p
        if c:
            a[i] = [(x + c * y) % p for x, y in zip(a[i], a[j])]
            ops.append((i, j, c))

    for col in range(r):
        # Invariant: columns < col are unit columns and rows >= col vanish
        # there, so transvections among rows >= col cannot disturb them.
        if a[col][col] == 0:
            k = next((i for i in range(col + 1, r) if a[i][col]), None)
            assert k is not None, "singular matrix slipped past the det check"
            apply(col, k, 1)
        if a[col][col] != 1:
            k = next((i for i in range(col + 1, r) if a[i][col]), None)
            if k is None:
                # Determinant one makes the final pivot 1 automatically, so a
                # fresh helper row below always exists when one is needed.
                assert col < r - 1, "det-1 matrix cannot need a helper at the last pivot"
                k = col + 1
                apply(k, col, 1)
            apply(col, k, (1 - a[col][col]) * pow(a[k][col], -1, p))
        for i in range(r):
            if i != col and a[i][col]:
                apply(i, col, -a[i][col])
    assert a == [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    return ops


def sl_lift_mod_p(g_bar: IntMatrix, p: int) -> IntMatrix:
    """Determinant-one integer lift of a matrix in ``SL_r(F_p)``.

    The reduction of ``g_bar`` to the identity is expressed as a product of
    transvections over F_p; inverting and lifting each transvection with a
    representative in ``[0, p)`` produces an integer matrix of determinant
    exactly 1 that is congruent to ``g_bar`` mod p.  Entries of the lift can
    be large; only the congruence and the determinant are contractual.

    Raises:
        InvalidArgumentError: if ``g_bar`` is not square or its determinant
            is not congruent to 1 mod p.
    """
    if g_bar.rows != g_bar.cols:
        raise InvalidArgumentError("sl_lift_mod_p needs a square matrix")
    if p < 2 or smallest_prime_factor(p) != p:
        raise InvalidArgumentError(f"{p} is not prime")
    if det(g_bar) % p != 1 % p:
        raise InvalidArgumentError("matrix is not in SL_r mod p")
    r = g_bar.rows
    ops = _sl_reduce_to_identity_mod_p(g_bar, p)
    # ops reduce g_bar to I, so g_bar = E(op_1)^-1 ... E(op_m)^-1.
    lift = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j, c in reversed(ops):
        cc = (-c) % p
        lift[i] = [x + cc * y for x, y in zip(lift[i], lift[j])]
    out = IntMatrix.from_rows(lift)
    assert det(out) == 1
    assert all(
        (x - y) % p == 0 for rx, ry in zip(out.entries, g_bar.entries) for x, y in zip(rx, ry)
    )
    return out


def _sl_echelon_ops_mod_p(m: IntMatrix, p: int) -> tuple[list[tuple[int, int, int]], int]:
    """Transvections bringing ``m`` to row echelon form (up to units) mod p.

    Only "add a multiple of another row" operations are used, so the
    accumulated transform lies in SL_r(F_p).  Pivot columns are taken in
    increasing order and the pivot row is the lowest-index candidate, which
    pins the whole procedure deterministically.  Returns the ops and the
    rank of ``m`` mod p.
    """
    nr = m.rows
    a = [[x % p for x in row] for row in m.entries]
    ops: list[tuple[int, int, int]] = []

    def apply(i: int, j: int, c: int) -> None:
        c %= p
        if c:
            a[i] = [(x + c * y) % p for x, y in zip(a[i], a[j])]
            ops.append((i, j, c))

    pivot_row = 0
    for col in range(m.cols):
        if pivot_row == nr:
            break
        k = next((i for i in range(pivot_row, nr) if a[i][col]), None)
        if k is None:
            continue
        if k != pivot_row:
            apply(pivot_row, k, 1)
        inv = pow(a[pivot_row][col], -1, p)
        for i in range(pivot_row + 1, nr):
            if a[i][col]:
                apply(i, pivot_row, -a[i][col] * inv)
        pivot_row += 1
    return ops, pivot_row


def _lift_transvections(ops, r: int, p: int) -> IntMatrix:
    """Integer determinant-one product of the lifted transvections."""
    g = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j, c in ops:
        cc = c % p
        g[i] = [x + cc * y for x, y in zip(g[i], g[j])]
    return IntMatrix.from_rows(g)


def standardize_with_steps(
    m: IntMatrix,
) -> tuple[IntMatrix, IntMatrix, list[tuple]]:
    """Standardise ``m`` and report the elementary steps taken.

    Returns ``(transform, n, steps)`` with ``m == transform @ n``, ``n``
    standard, and ``steps`` a list of ``("row_transform", witness)`` /
    ``("row_divide", row, prime)`` records that replay the reduction on the
    input.  Determinism: prime factors of the minor gcd are removed in
    increasing order, and the mod-p reduction uses the lowest available
    pivot column/row at every choice point.

    Raises:
        RankError: if ``m`` does not have full row rank.
    """
    r = m.rows
    if rank(m) < r:
        raise RankError("standardize needs full row rank")
    transform = IntMatrix.identity(r)
    work = m
    steps: list[tuple] = []
    d = minor_gcd(work, r)
    while d > 1:
        p = smallest_prime_factor(d)
        ops, rank_p = _sl_echelon_ops_mod_p(work, p)
        assert rank_p < r, "minor gcd divisible by p forces rank drop mod p"
        g = _lift_transvections(ops, r, p)
        gw = g @ work
        last = gw.row(r - 1)
        assert all(x % p == 0 for x in last), "echelon transform must kill the last row mod p"
        new_rows = [list(gw.row(i)) for i in range(r - 1)]
        new_rows.append([x // p for x in last])
        g_witness = UnimodularWitness.of(g)
        scale = IntMatrix.from_rows(
            [[(p if i == r - 1 else 1) if i == j else 0 for j in range(r)] for i in range(r)]
        )
        transform = transform @ g_witness.inverse @ scale
        if g != IntMatrix.identity(r):
            steps.append(("row_transform", g_witness))
        steps.append(("row_divide", r - 1, p))
        work = IntMatrix.from_rows(new_rows)
        nd = minor_gcd(work, r)
        assert nd == d // p, "minor gcd must drop by exactly p per reduction"
        d = nd
    assert transform @ work == m
    return transform, work, steps


def standardize(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Factor ``m = transform @ n`` with ``n`` standard.

    See :func:`standardize_with_steps` for the determinism guarantees.
    """
    transform, n, _ = standardize_with_steps(m)
    return transform, n


def require_standard(m: IntMatrix, what: str = "matrix") -> None:
    """Raise :class:`MustStandardizeFirstError` unless ``m`` is standard."""
    if not is_standard(m):
        raise MustStandardizeFirstError(f"{what} is not standard; run standardize first")
