# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled exact integer elimination kernels.

Cython translation of ``coxforge._kernels_py`` with identical semantics:
row-style Hermite reduction, Smith diagonalisation with transforms, and
Bareiss determinants.  Matrix entries stay Python ints (arbitrary
precision); the compilation removes interpreter overhead from the loop
structure.  ``coxforge._kernels`` prefers this module when importable.
"""

BACKEND = "cython"


cdef tuple _xgcd(object a, object b):
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    cdef object old_r = a, r = b
    cdef object old_s = 1, s = 0
    cdef object old_t = 0, t = 1
    cdef object q
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


cdef list _identity(Py_ssize_t n):
    cdef Py_ssize_t i, j
    cdef list out = [], row
    for i in range(n):
        row = []
        for j in range(n):
            row.append(1 if i == j else 0)
        out.append(row)
    return out


cdef inline void _combine_rows(list mat, Py_ssize_t dst, Py_ssize_t src,
                               object s, object t, object p, object q):
    """(row_dst, row_src) <- (s*dst + t*src, p*src - q*dst), in place."""
    cdef list rd = <list>mat[dst], rs = <list>mat[src]
    cdef Py_ssize_t j, n = len(rd)
    cdef object x, y
    for j in range(n):
        x = rd[j]
        y = rs[j]
        rd[j] = s * x + t * y
        rs[j] = p * y - q * x


cdef inline void _subtract_multiple(list mat, Py_ssize_t dst, Py_ssize_t src,
                                    object q):
    cdef list rd = <list>mat[dst], rs = <list>mat[src]
    cdef Py_ssize_t j, n = len(rd)
    for j in range(n):
        rd[j] = rd[j] - q * rs[j]


cdef inline void _negate_row(list mat, Py_ssize_t i):
    cdef list r = <list>mat[i]
    cdef Py_ssize_t j, n = len(r)
    for j in range(n):
        r[j] = -r[j]


def hnf(rows):
    """Row-style Hermite normal form with a unimodular transform.

    Returns ``(h, u)`` with ``u * rows == h`` and ``det(u) = +-1``.  Pivots
    are positive, entries above each pivot are reduced into ``[0, pivot)``,
    pivot columns move strictly right as the row index grows and zero rows
    sit at the bottom.  The result is the canonical representative of the
    left-unimodular equivalence class of ``rows``.
    """
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(m)
    cdef Py_ssize_t nc = len(<list>m[0]) if nr else 0
    cdef list u = _identity(nr)
    cdef Py_ssize_t pivot_row = 0, col, i
    cdef object a, b, g, s, t, p, q, pivot
    for col in range(nc):
        if pivot_row == nr:
            break
        for i in range(pivot_row + 1, nr):
            if (<list>m[i])[col] == 0:
                continue
            a = (<list>m[pivot_row])[col]
            b = (<list>m[i])[col]
            if a == 0:
                m[pivot_row], m[i] = m[i], m[pivot_row]
                u[pivot_row], u[i] = u[i], u[pivot_row]
                continue
            if b % a == 0:
                # Pivot divides the target: plain subtraction keeps the
                # pivot row untouched (a general Bezout combine may not).
                q = b // a
                _subtract_multiple(m, i, pivot_row, q)
                _subtract_multiple(u, i, pivot_row, q)
                continue
            g, s, t = _xgcd(a, b)
            p = a // g
            q = b // g
            _combine_rows(m, pivot_row, i, s, t, p, q)
            _combine_rows(u, pivot_row, i, s, t, p, q)
        pivot = (<list>m[pivot_row])[col]
        if pivot == 0:
            continue
        if pivot < 0:
            _negate_row(m, pivot_row)
            _negate_row(u, pivot_row)
            pivot = -pivot
        for i in range(pivot_row):
            q = (<list>m[i])[col] // pivot
            if q:
                _subtract_multiple(m, i, pivot_row, q)
                _subtract_multiple(u, i, pivot_row, q)
        pivot_row += 1
    return m, u


cdef void _column_combine(list mat, Py_ssize_t dst, Py_ssize_t src,
                          object s, object t, object p, object q):
    """(col_dst, col_src) <- (s*dst + t*src, p*src - q*dst), in place."""
    cdef Py_ssize_t i, n = len(mat)
    cdef list row
    cdef object x, y
    for i in range(n):
        row = <list>mat[i]
        x = row[dst]
        y = row[src]
        row[dst] = s * x + t * y
        row[src] = p * y - q * x


cdef void _column_subtract(list mat, Py_ssize_t dst, Py_ssize_t src, object q):
    cdef Py_ssize_t i, n = len(mat)
    cdef list row
    for i in range(n):
        row = <list>mat[i]
        row[dst] = row[dst] - q * row[src]


def smith(rows):
    """Smith normal form with both transforms.

    Returns ``(diag, u, v)`` where ``u * rows * v`` is diagonal with
    ``diag`` on the diagonal, every entry of ``diag`` is nonnegative and
    divides the next, and ``u``, ``v`` are unimodular.
    """
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(m)
    cdef Py_ssize_t nc = len(<list>m[0]) if nr else 0
    cdef list u = _identity(nr)
    cdef list v = _identity(nc)
    cdef Py_ssize_t t = 0, i, j, pr, pc, stray
    cdef Py_ssize_t bound = nr if nr < nc else nc
    cdef object best, e, a, b, g, s, tt, p, q, pivot
    cdef bint row_clean, col_clean
    cdef list row, rowt
    while t < bound:
        pr = pc = -1
        best = 0
        for i in range(t, nr):
            row = <list>m[i]
            for j in range(t, nc):
                e = row[j]
                if e != 0:
                    if e < 0:
                        e = -e
                    if best == 0 or e < best:
                        best = e
                        pr = i
                        pc = j
        if best == 0:
            break
        if pr != t:
            m[t], m[pr] = m[pr], m[t]
            u[t], u[pr] = u[pr], u[t]
        if pc != t:
            for i in range(nr):
                row = <list>m[i]
                row[t], row[pc] = row[pc], row[t]
            for i in range(nc):
                row = <list>v[i]
                row[t], row[pc] = row[pc], row[t]
        while True:
            # Fold the column into the pivot, then the row; column work can
            # reintroduce row entries and vice versa, so loop to a fixpoint.
            # When the pivot divides the target, subtract the multiple and
            # leave the pivot line alone; the general Bezout combine runs
            # only when it strictly shrinks |pivot|, which bounds the loop.
            for i in range(t + 1, nr):
                if (<list>m[i])[t] == 0:
                    continue
                a = (<list>m[t])[t]
                b = (<list>m[i])[t]
                if b % a == 0:
                    q = b // a
                    _subtract_multiple(m, i, t, q)
                    _subtract_multiple(u, i, t, q)
                    continue
                g, s, tt = _xgcd(a, b)
                p = a // g
                q = b // g
                _combine_rows(m, t, i, s, tt, p, q)
                _combine_rows(u, t, i, s, tt, p, q)
            row_clean = True
            for j in range(t + 1, nc):
                if (<list>m[t])[j] == 0:
                    continue
                a = (<list>m[t])[t]
                b = (<list>m[t])[j]
                if b % a == 0:
                    q = b // a
                    _column_subtract(m, j, t, q)
                    _column_subtract(v, j, t, q)
                    continue
                g, s, tt = _xgcd(a, b)
                p = a // g
                q = b // g
                _column_combine(m, t, j, s, tt, p, q)
                _column_combine(v, t, j, s, tt, p, q)
                row_clean = False
            if row_clean:
                col_clean = True
                for i in range(t + 1, nr):
                    if (<list>m[i])[t] != 0:
                        col_clean = False
                        break
                if col_clean:
                    # Divisibility: pivot must divide the remaining block.
                    pivot = (<list>m[t])[t]
                    stray = -1
                    for i in range(t + 1, nr):
                        row = <list>m[i]
                        for j in range(t + 1, nc):
                            if row[j] % pivot:
                                stray = i
                                break
                        if stray >= 0:
                            break
                    if stray < 0:
                        break
                    rowt = <list>m[t]
                    row = <list>m[stray]
                    for j in range(nc):
                        rowt[j] = rowt[j] + row[j]
                    rowt = <list>u[t]
                    row = <list>u[stray]
                    for j in range(nr):
                        rowt[j] = rowt[j] + row[j]
        if (<list>m[t])[t] < 0:
            _negate_row(m, t)
            _negate_row(u, t)
        t += 1
    cdef list diag = []
    for i in range(bound):
        diag.append((<list>m[i])[i])
    return diag, u, v


def det(rows):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    cdef Py_ssize_t sign = 1, k, i, j, pivot
    cdef object prev = 1, mkk
    cdef list rowk, rowi
    for k in range(n - 1):
        if (<list>m[k])[k] == 0:
            pivot = -1
            for i in range(k + 1, n):
                if (<list>m[i])[k] != 0:
                    pivot = i
                    break
            if pivot < 0:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        rowk = <list>m[k]
        mkk = rowk[k]
        for i in range(k + 1, n):
            rowi = <list>m[i]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * mkk - rowi[k] * rowk[j]) // prev
        prev = mkk
    mkk = (<list>m[n - 1])[n - 1]
    return mkk if sign == 1 else -mkk
