"""Exact arithmetic: rationals, the quadratic field Q(sqrt5), exact determinant signs.

Rationals are plain :class:`fractions.Fraction` values (always in lowest terms
with a positive denominator).  :class:`QuadExt` adds the single irrationality
needed for icosahedral coordinates.  Signs are the ints ``-1, 0, 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Sign = int

PLUS, MINUS, ZERO = 1, -1, 0

_SIGN_CHARS = {1: "+", -1: "-", 0: "0"}
_CHAR_SIGNS = {"+": 1, "-": -1, "0": 0}


def sign_char(s: Sign) -> str:
    return _SIGN_CHARS[s]


def parse_sign(c: str) -> Sign:
    try:
        return _CHAR_SIGNS[c]
    except KeyError:
        raise ValueError(f"not a sign character: {c!r}") from None


def _sgn(x) -> Sign:
    return (x > 0) - (x < 0)


class QuadExt:
    """An element ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadExt")

    # arithmetic
    def __add__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QuadExt.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "QuadExt":
        nrm = self.norm()
        if nrm == 0:
            # a^2 = 5 b^2 has no rational solution except 0
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.a / nrm, -self.b / nrm)

    def __truediv__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1)
        for _ in range(k):
            out = out * self
        return out

    # comparison
    def __eq__(self, other):
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def sign(self) -> Sign:
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 5 b^2
        return sa * _sgn(self.a * self.a - 5 * self.b * self.b)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 5**0.5

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b})"

    def __str__(self):
        return format_quadext(self)


SQRT5 = QuadExt(0, 1)
PHI = QuadExt(Fraction(1, 2), Fraction(1, 2))

Number = Union[int, Fraction, QuadExt]


def sign_of(x: Number) -> Sign:
    """Exact sign of a rational or a Q(sqrt5) element."""
    if isinstance(x, QuadExt):
        return x.sign()
    return _sgn(x)


# serialization

def format_rational(x) -> str:
    return str(Fraction(x))


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def format_quadext(x: QuadExt) -> str:
    return f"{x.a}+{x.b}*sqrt5"


def parse_quadext(s: str) -> QuadExt:
    s = s.strip().replace(" ", "")
    if not s.endswith("*sqrt5"):
        return QuadExt(parse_rational(s))
    body = s[: -len("*sqrt5")]
    head, sep, tail = body.partition("+")
    if not sep:
        raise ValueError(f"malformed Q(sqrt5) literal: {s!r}")
    return QuadExt(parse_rational(head), parse_rational(tail))


def format_number(x: Number, field: str = "Q") -> str:
    if field == "Q":
        if isinstance(x, QuadExt):
            if x.b != 0:
                raise ValueError("irrational coordinate in a rational configuration")
            x = x.a
        return format_rational(x)
    return format_quadext(QuadExt.coerce(x))


def parse_number(s: str, field: str = "Q") -> Number:
    if field == "Q":
        return parse_rational(s)
    return parse_quadext(s)


# linear algebra

def _is_rational_matrix(rows: Sequence[Sequence[Number]]) -> bool:
    return all(not isinstance(x, QuadExt) or x.b == 0 for row in rows for x in row)


def _to_fraction(x) -> Fraction:
    return x.a if isinstance(x, QuadExt) else Fraction(x)


def _integer_rows(rows) -> list[list[int]]:
    # scaling a row by a positive integer does not change the determinant sign
    out = []
    for row in rows:
        fr = [_to_fraction(x) for x in row]
        m = reduce(lcm, (f.denominator for f in fr), 1)
        out.append([int(f * m) for f in fr])
    return out


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def field_det(rows: Sequence[Sequence[Number]]) -> Number:
    """Determinant over any exact field (Fraction or QuadExt entries)."""
    a = [list(r) for r in rows]
    n = len(a)
    det: Number = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        akk = a[k][k]
        det = det * akk
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / akk
                for j in range(k + 1, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    return det


def det_sign(m: Sequence[Sequence[Number]]) -> Sign:
    """Exact sign of the determinant of a square matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    if _is_rational_matrix(m):
        return _sgn(bareiss_det(_integer_rows(m)))
    return sign_of(field_det([[QuadExt.coerce(x) for x in row] for row in m]))


def row_reduce(rows: Sequence[Sequence[Number]]) -> list[list[Number]]:
    """Reduced row echelon form over the exact field of the entries."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return a


def matrix_rank(rows: Sequence[Sequence[Number]]) -> int:
    if not rows:
        return 0
    rows = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    return sum(1 for row in row_reduce(rows) if any(x != 0 for x in row))


def solve(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[Number]]:
    """Solve ``a @ x = b`` for square nonsingular ``a``; ``b`` may have several columns."""
    n = len(a)
    aug = [
        [Fraction(x) if isinstance(x, int) else x for x in list(a[i]) + list(b[i])]
        for i in range(n)
    ]
    red = row_reduce(aug)
    for i in range(n):
        if red[i][i] != 1:
            raise ValueError("singular system")
    return [row[n:] for row in red]


def homogenize(point: Iterable[Number]) -> list[Number]:
    return list(point) + [1]
