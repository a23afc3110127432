"""Exact rational linear algebra: kernel and solve by Gaussian elimination.

Matrices are lists of rows of Fractions.  Sizes here are tiny (hundreds of
rows at most), so plain fraction elimination is entirely adequate.
"""

from fractions import Fraction


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [row[:] for row in rows]
    pivots = []
    lead = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot_row = next((r for r in range(lead, len(m)) if m[r][col]), None)
        if pivot_row is None:
            continue
        m[lead], m[pivot_row] = m[pivot_row], m[lead]
        inv = 1 / m[lead][col]
        m[lead] = [v * inv for v in m[lead]]
        for r in range(len(m)):
            if r != lead and m[r][col]:
                factor = m[r][col]
                m[r] = [v - factor * p for v, p in zip(m[r], m[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return m, pivots


def rational_kernel(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel; one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -m[r][f]
        basis.append(vec)
    return basis


def rational_solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of rows * x = rhs, or None when inconsistent."""
    if not rows:
        return None
    ncols = len(rows[0])
    augmented = [row + [b] for row, b in zip(rows, rhs)]
    m, pivots = _echelon(augmented)
    if ncols in pivots:
        return None
    solution = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        solution[p] = m[r][ncols]
    return solution
