"""Exact linear algebra over rationals and over the polynomial ring.

Determinants of polynomial matrices use cofactor expansion up to 4x4 and
fraction-free Bareiss elimination (exact ring division) above that, which
keeps intermediate term growth under control in property tests.
"""

from fractions import Fraction
from math import gcd

from .polynomial import Polynomial
from .rationals import rat


class NonSquareMatrixError(ValueError):
    pass


class AsymmetricMatrixError(ValueError):
    pass


class PolyMatrix:
    """Row-major matrix of polynomials sharing one context."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        ctx = entries[0].context
        for p in entries:
            if p.context != ctx:
                raise ValueError("matrix entries must share one context")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_of_entries):
        rows = len(rows_of_entries)
        cols = len(rows_of_entries[0])
        flat = [p for row in rows_of_entries for p in row]
        return cls(rows, cols, flat)

    @property
    def context(self):
        return self.entries[0].context

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r):
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c):
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def to_rows(self):
        return [self.row(r) for r in range(self.rows)]

    def transpose(self):
        return PolyMatrix(
            self.cols, self.rows,
            [self[r, c] for c in range(self.cols) for r in range(self.rows)],
        )

    def map(self, fn):
        return PolyMatrix(self.rows, self.cols, [fn(p) for p in self.entries])

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        out = []
        for r in range(self.rows):
            for c in range(other.cols):
                acc = Polynomial.zero(self.context)
                for k in range(self.cols):
                    acc = acc + self[r, k] * other[k, c]
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, out)

    def minor(self, drop_row, drop_col):
        ents = [
            self[r, c]
            for r in range(self.rows) if r != drop_row
            for c in range(self.cols) if c != drop_col
        ]
        return PolyMatrix(self.rows - 1, self.cols - 1, ents)

    def determinant(self):
        if self.rows != self.cols:
            raise NonSquareMatrixError("determinant of a non-square matrix")
        # Bareiss divisions are exact only in the full ring, so jet-capped
        # entries must stay on the cofactor path
        if self.rows <= 4 or any(e.jet is not None for e in self.entries):
            return self._det_cofactor()
        return self._det_bareiss()

    def _det_cofactor(self):
        n = self.rows
        if n == 1:
            return self[0, 0]
        if n == 2:
            return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]
        acc = Polynomial.zero(self.context)
        for c in range(n):
            if self[0, c].is_zero():
                continue
            cofactor = self.minor(0, c)._det_cofactor()
            if c % 2:
                acc = acc - self[0, c] * cofactor
            else:
                acc = acc + self[0, c] * cofactor
        return acc

    def _det_bareiss(self):
        # Fraction-free elimination in the polynomial ring; each division
        # by the previous pivot is exact (Sylvester identity).
        n = self.rows
        a = [[self[r, c] for c in range(n)] for r in range(n)]
        prev = Polynomial.constant(self.context, 1)
        sign = 1
        for k in range(n - 1):
            if a[k][k].is_zero():
                for r in range(k + 1, n):
                    if not a[r][k].is_zero():
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return Polynomial.zero(self.context)
            for r in range(k + 1, n):
                for c in range(k + 1, n):
                    num = a[r][c] * a[k][k] - a[r][k] * a[k][c]
                    a[r][c] = num.div_exact(prev)
                a[r][k] = Polynomial.zero(self.context)
            prev = a[k][k]
        det = a[n - 1][n - 1]
        return det if sign > 0 else -det

    def adjugate(self):
        """Exact adjugate: adj(M) * M = det(M) * I as a polynomial identity."""
        if self.rows != self.cols:
            raise NonSquareMatrixError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return PolyMatrix(1, 1, [Polynomial.constant(self.context, 1)])
        out = []
        for r in range(n):
            for c in range(n):
                cof = self.minor(c, r).determinant()  # transposed cofactor
                out.append(cof if (r + c) % 2 == 0 else -cof)
        return PolyMatrix(n, n, out)

    def evaluate(self, assignment):
        return RationalMatrix(
            self.rows, self.cols, [p.evaluate(assignment) for p in self.entries]
        )


class RationalMatrix:
    """Row-major matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [rat(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_of_entries):
        rows = len(rows_of_entries)
        cols = len(rows_of_entries[0]) if rows else 0
        return cls(rows, cols, [e for row in rows_of_entries for e in row])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [Fraction(int(r == c)) for r in range(n) for c in range(n)])

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def to_rows(self):
        return [self.entries[r * self.cols:(r + 1) * self.cols] for r in range(self.rows)]

    def transpose(self):
        return RationalMatrix(
            self.cols, self.rows,
            [self[r, c] for c in range(self.cols) for r in range(self.rows)],
        )

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        out = []
        for r in range(self.rows):
            for c in range(other.cols):
                out.append(sum((self[r, k] * other[k, c] for k in range(self.cols)), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RationalMatrix({self.to_rows()})"

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self[r, c] == self[c, r] for r in range(self.rows) for c in range(r)
        )

    def _integer_rows(self):
        # Clear denominators row by row; rank is unchanged.
        out = []
        for row in self.to_rows():
            den = 1
            for e in row:
                den = den * e.denominator // gcd(den, e.denominator)
            out.append([int(e * den) for e in row])
        return out

    def rank(self) -> int:
        """Exact rank by fraction-free (Bareiss) integer elimination."""
        a = self._integer_rows()
        rows, cols = self.rows, self.cols
        rank = 0
        prev = 1
        r0 = 0
        for c in range(cols):
            piv = None
            for r in range(r0, rows):
                if a[r][c] != 0:
                    piv = r
                    break
            if piv is None:
                continue
            a[r0], a[piv] = a[piv], a[r0]
            for r in range(r0 + 1, rows):
                for k in range(c + 1, cols):
                    a[r][k] = (a[r][k] * a[r0][c] - a[r][c] * a[r0][k]) // prev
                a[r][c] = 0
            prev = a[r0][c]
            r0 += 1
            rank += 1
            if r0 == rows:
                break
        return rank

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise NonSquareMatrixError("determinant of a non-square matrix")
        n = self.rows
        a = [row[:] for row in self.to_rows()]
        det = Fraction(1)
        for k in range(n):
            piv = None
            for r in range(k, n):
                if a[r][k] != 0:
                    piv = r
                    break
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            inv = 1 / a[k][k]
            for r in range(k + 1, n):
                if a[r][k] == 0:
                    continue
                f = a[r][k] * inv
                for c in range(k, n):
                    a[r][c] -= f * a[k][c]
        return det

    def signature(self):
        """Inertia (positives, negatives, zeros) of a symmetric matrix.

        Symmetric LDL^T elimination with diagonal pivot search; when every
        remaining diagonal candidate is zero, a 2x2 off-diagonal pivot block
        [[0,a],[a,d]] contributes one positive and one negative eigenvalue.
        """
        if not self.is_symmetric():
            raise AsymmetricMatrixError("signature needs a symmetric matrix")
        a = [row[:] for row in self.to_rows()]
        n = self.rows
        active = list(range(n))
        pos = neg = zero = 0

        def swap(i, j):
            active[i], active[j] = active[j], active[i]

        i = 0
        while i < len(active):
            rest = active[i:]
            # prefer a nonzero diagonal pivot (first in current order)
            dpos = None
            for t, r in enumerate(rest):
                if a[r][r] != 0:
                    dpos = t
                    break
            if dpos is not None:
                swap(i, i + dpos)
                p = active[i]
                d = a[p][p]
                if d > 0:
                    pos += 1
                else:
                    neg += 1
                for r in active[i + 1:]:
                    f = a[r][p] / d
                    if f == 0:
                        continue
                    for c in active[i + 1:]:
                        a[r][c] -= f * a[p][c]
                i += 1
                continue
            # all diagonals zero: find an off-diagonal entry
            found = None
            for t1 in range(len(rest)):
                for t2 in range(t1 + 1, len(rest)):
                    if a[rest[t1]][rest[t2]] != 0:
                        found = (t1, t2)
                        break
                if found:
                    break
            if found is None:
                zero += len(rest)
                break
            t1, t2 = found
            swap(i, i + t1)
            swap(i + 1, i + t2)
            p, q = active[i], active[i + 1]
            b = a[p][q]
            pos += 1
            neg += 1
            # Schur complement of [[0, b], [b, 0]] on the remaining block
            for r in active[i + 2:]:
                u, v = a[r][p], a[r][q]
                if u == 0 and v == 0:
                    continue
                for c in active[i + 2:]:
                    a[r][c] -= (u * a[q][c] + v * a[p][c]) / b
            i += 2
        return (pos, neg, zero)


def poly_identity(context, n):
    one = Polynomial.constant(context, 1)
    zero = Polynomial.zero(context)
    return PolyMatrix(n, n, [one if r == c else zero for r in range(n) for c in range(n)])
