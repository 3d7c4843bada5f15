"""Exact dense linear algebra over Q.

Fraction-free (Bareiss) forward elimination on integer-scaled rows keeps
intermediates integral; back-substitution returns Fractions. Pivoting is
first-nonzero in column order so nullspace bases and underdetermined
representatives are deterministic.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InvariantViolation, PreconditionError

UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"


class RatMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(Fraction(e) for e in r) for r in rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = widths.pop() if widths else (ncols or 0)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def entry(self, i, j):
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"RatMatrix({[list(map(str, r)) for r in self.rows]})"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of an exact solve: classification, representative, kernel."""

    kind: str
    solution: tuple
    nullspace_basis: tuple
    certificate_row: int = None


def _int_rows(rows):
    """Scale each row by the lcm of its denominators; preserves the row space."""
    out = []
    for r in rows:
        den = lcm(*(e.denominator for e in r)) if r else 1
        out.append([int(e * den) for e in r])
    return out


def _echelon(irows, pivot_limit):
    """Fraction-free row echelon on integer rows.

    Only the first pivot_limit columns may carry pivots (keeps an augmented
    column out of the pivot set). Returns (matrix, [(row, col) pivots]).
    """
    a = [list(r) for r in irows]
    n = len(a)
    m = len(a[0]) if a else 0
    pivots = []
    prev = 1
    pr = 0
    for col in range(min(pivot_limit, m)):
        if pr >= n:
            break
        piv = next((r for r in range(pr, n) if a[r][col]), None)
        if piv is None:
            continue
        if piv != pr:
            a[pr], a[piv] = a[piv], a[pr]
        p = a[pr][col]
        for r in range(pr + 1, n):
            arc = a[r][col]
            row = a[r]
            prow = a[pr]
            for c in range(m):
                q, rem = divmod(p * row[c] - arc * prow[c], prev)
                if rem:
                    raise InvariantViolation("fraction-free step left a remainder")
                row[c] = q
        pivots.append((pr, col))
        prev = p
        pr += 1
    return a, pivots


def _back_substitute(ech, pivots, v):
    """Fill pivot coordinates of v (free coordinates preset) from E·v' = rhs.

    v has length ncols + 1; index ncols holds the right-hand side weight:
    v[ncols] = -1 solves E·x = rhs, v[ncols] = 0 solves E·x = 0.
    """
    ncols = len(v) - 1
    for pr, pc in reversed(pivots):
        row = ech[pr]
        s = Fraction(0)
        for c in range(pc + 1, ncols + 1):
            if row[c] and v[c]:
                s -= row[c] * v[c]
        v[pc] = s / row[pc]
    return v[:ncols]


def solve(a, b):
    """Solve A·x = b exactly, classifying unique/underdetermined/inconsistent.

    The underdetermined representative sets all free coordinates to 0;
    nullspace vectors are scaled so their first nonzero entry is 1.
    """
    b = tuple(Fraction(e) for e in b)
    if len(b) != a.nrows:
        raise PreconditionError(
            f"dimension mismatch: {a.nrows} rows vs {len(b)} right-hand entries"
        )
    ncols = a.ncols
    aug = [list(r) + [be] for r, be in zip(a.rows, b)]
    ech, pivots = _echelon(_int_rows(aug), ncols)
    pivot_cols = {pc for _, pc in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]

    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * (ncols + 1)
        v[fc] = Fraction(1)
        vec = _back_substitute(ech, pivots, v)
        lead = next(e for e in vec if e)
        basis.append(tuple(e / lead for e in vec))
    basis = tuple(basis)

    for ri, row in enumerate(ech):
        if row[-1] and not any(row[:-1]):
            return SolveOutcome(INCONSISTENT, None, basis, certificate_row=ri)

    v = [Fraction(0)] * (ncols + 1)
    v[ncols] = Fraction(-1)
    x = tuple(_back_substitute(ech, pivots, v))
    kind = UNIQUE if not free_cols else UNDERDETERMINED
    return SolveOutcome(kind, x, basis)


def rank(a):
    """Exact rank via the same elimination."""
    _, pivots = _echelon(_int_rows(a.rows), a.ncols)
    return len(pivots)
