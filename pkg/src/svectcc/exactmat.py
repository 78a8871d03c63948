"""Exact matrices over the Gaussian rationals Q(i).

A :class:`Mat` keeps integer numerator arrays for the real and imaginary
parts over one positive common denominator, always fully reduced, so that
structural equality is mathematical equality. Shapes with a zero dimension
are first-class: a 2x0 matrix is not the same object as a 0x3 one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class Scalar:
    """An element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact; use Scalar")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = Scalar.coerce(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        o = Scalar.coerce(other)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return Scalar(p.re / n, p.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Render as "<re>" or "<re>+<im>i" (a negative imaginary part uses "-")."""
    if s.im == 0:
        return _fmt_q(s.re)
    sign = "+" if s.im > 0 else "-"
    return f"{_fmt_q(s.re)}{sign}{_fmt_q(abs(s.im))}i"


_Q = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^(?P<re>{_Q})(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?|[+-]\d+(?:/\d+)?)?i)?$")
_IMAG_RE = re.compile(r"^(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?i$")


def parse_scalar(text: str) -> Scalar:
    t = text.replace(" ", "")
    m = _SCALAR_RE.match(t)
    if m:
        re_part = Fraction(m.group("re"))
        if m.group("sign") is None:
            return Scalar(re_part)
        im = Fraction(m.group("im") or "1")
        return Scalar(re_part, im if m.group("sign") == "+" else -im)
    m = _IMAG_RE.match(t)
    if m:
        im = Fraction(m.group("im") or "1")
        return Scalar(0, -im if m.group("sign") == "-" else im)
    raise ValueError(f"malformed scalar literal {text!r}")


# --------------------------------------------------------------------------
# matrices


def _obj_zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Mat:
    """Immutable exact matrix with entries in Q(i).

    Construct from nested lists via :meth:`from_rows`, or use the helpers
    :func:`identity`, :func:`zeros`, :func:`unit`.
    """

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, re_num: np.ndarray, im_num: np.ndarray | None = None, den: int = 1):
        # Internal constructor: numerators are integer object arrays.
        if re_num.ndim != 2:
            raise DimensionError("matrix numerators must be two-dimensional")
        if im_num is None:
            im_num = _obj_zeros(*re_num.shape)
        if im_num.shape != re_num.shape:
            raise DimensionError("real and imaginary parts differ in shape")
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = den
        for v in re_num.flat:
            if g == 1:
                break
            g = gcd(g, v)
        for v in im_num.flat:
            if g == 1:
                break
            g = gcd(g, v)
        if g != 1:
            re_num = re_num // g
            im_num = im_num // g
            den //= g
        self._re = _freeze(np.array(re_num, dtype=object))
        self._im = _freeze(np.array(im_num, dtype=object))
        self._den = den
        self._hash = None

    # construction ----------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], shape: tuple[int, int] | None = None) -> "Mat":
        """Build from a row list of scalars (ints, Fractions, strings, Scalars).

        ``shape`` is required to pin down empty matrices, e.g. ``from_rows([], (2, 0))``.
        """
        rows = [list(r) for r in rows]
        if shape is None:
            if not rows:
                raise DimensionError("shape is ambiguous for an empty row list; pass shape=")
            shape = (len(rows), len(rows[0]))
        p, q = shape
        if p * q == 0:
            if any(len(r) for r in rows):
                raise DimensionError(f"entries given for an empty {p}x{q} matrix")
            if rows and len(rows) != p:
                raise DimensionError(f"expected {p} rows, got {len(rows)}")
            return zeros(p, q)
        if len(rows) != p or any(len(r) != q for r in rows):
            raise DimensionError(f"entries do not form a {p}x{q} array")
        scal = [[Scalar.coerce(x) for x in r] for r in rows]
        den = 1
        for r in scal:
            for s in r:
                den = _lcm(den, _lcm(s.re.denominator, s.im.denominator))
        re_num = _obj_zeros(p, q)
        im_num = _obj_zeros(p, q)
        for i, r in enumerate(scal):
            for j, s in enumerate(r):
                re_num[i, j] = s.re.numerator * (den // s.re.denominator)
                im_num[i, j] = s.im.numerator * (den // s.im.denominator)
        return cls(re_num, im_num, den)

    # basic accessors -------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._re.shape[0]

    @property
    def cols(self) -> int:
        return self._re.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._re.shape

    @property
    def is_empty(self) -> bool:
        return self.rows == 0 or self.cols == 0

    @property
    def is_real(self) -> bool:
        return not self._im.any()

    def __getitem__(self, idx) -> Scalar:
        i, j = idx
        return Scalar(Fraction(self._re[i, j], self._den), Fraction(self._im[i, j], self._den))

    def entries(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and np.array_equal(self._re, other._re)
            and np.array_equal(self._im, other._im)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._den, tuple(self._re.flat), tuple(self._im.flat)))
        return self._hash

    def __repr__(self):
        if self.is_empty:
            return f"Mat(empty {self.rows}x{self.cols})"
        body = "; ".join(", ".join(format_scalar(s) for s in row) for row in self.entries())
        return f"Mat[{body}]"

    # arithmetic ------------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        d = _lcm(self._den, other._den)
        fa, fb = d // self._den, d // other._den
        return Mat(self._re * fa + other._re * fb, self._im * fa + other._im * fb, d)

    def __neg__(self) -> "Mat":
        return Mat(-self._re, -self._im, self._den)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        s = Scalar.coerce(c)
        d = _lcm(_lcm(s.re.denominator, s.im.denominator), 1)
        a = s.re.numerator * (d // s.re.denominator)
        b = s.im.numerator * (d // s.im.denominator)
        re = self._re * a - self._im * b
        im = self._re * b + self._im * a
        return Mat(re, im, self._den * d)

    @property
    def T(self) -> "Mat":
        return Mat(self._re.T.copy(), self._im.T.copy(), self._den)

    def is_zero(self) -> bool:
        return not (self._re.any() or self._im.any())

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == identity(self.rows)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat(self._re[r0:r1, c0:c1].copy(), self._im[r0:r1, c0:c1].copy(), self._den)


# --------------------------------------------------------------------------
# constructors


def zeros(rows: int, cols: int) -> Mat:
    if rows < 0 or cols < 0:
        raise DimensionError("negative dimension")
    return Mat(_obj_zeros(rows, cols))


def identity(n: int) -> Mat:
    a = _obj_zeros(n, n)
    for i in range(n):
        a[i, i] = 1
    return Mat(a)


def unit(rows: int, cols: int, i: int, j: int) -> Mat:
    """The matrix unit E_ij of the given shape (0-based position)."""
    a = _obj_zeros(rows, cols)
    a[i, j] = 1
    return Mat(a)


# --------------------------------------------------------------------------
# operations


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    re = a._re @ b._re if a.cols else _obj_zeros(a.rows, b.cols)
    if a.cols and (a._im.any() or b._im.any()):
        re = re - a._im @ b._im
        im = a._re @ b._im + a._im @ b._re
    else:
        im = None
    return Mat(np.asarray(re, dtype=object).reshape(a.rows, b.cols),
               None if im is None else np.asarray(im, dtype=object).reshape(a.rows, b.cols),
               a._den * b._den)


def matprod(*ms: Mat) -> Mat:
    return reduce(mat_mul, ms)


def kron(a: Mat, b: Mat) -> Mat:
    p, q = a.rows * b.rows, a.cols * b.cols
    if p * q == 0:
        return zeros(p, q)
    re = np.kron(a._re, b._re)
    im = None
    if a._im.any() or b._im.any():
        re = re - np.kron(a._im, b._im)
        im = np.kron(a._re, b._im) + np.kron(a._im, b._re)
    return Mat(re, im, a._den * b._den)


def dsum(blocks: Iterable[Mat]) -> Mat:
    """Block-diagonal direct sum. Blocks with one zero dimension still
    contribute their other dimension as zero rows or columns."""
    blocks = list(blocks)
    p = sum(m.rows for m in blocks)
    q = sum(m.cols for m in blocks)
    den = 1
    for m in blocks:
        den = _lcm(den, m._den)
    re = _obj_zeros(p, q)
    im = _obj_zeros(p, q)
    r = c = 0
    for m in blocks:
        f = den // m._den
        if not m.is_empty:
            re[r:r + m.rows, c:c + m.cols] = m._re * f
            im[r:r + m.rows, c:c + m.cols] = m._im * f
        r += m.rows
        c += m.cols
    return Mat(re, im, den)


def inverse(a: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan elimination over Q(i)."""
    if a.rows != a.cols:
        raise DimensionError(f"cannot invert a non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return a
    if a.is_real:
        return _inverse_real(a)
    work = [[a[i, j] for j in range(n)] + [Scalar(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv_p = Scalar(1) / work[col][col]
        work[col] = [x * inv_p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return Mat.from_rows([row[n:] for row in work])


def _inverse_real(a: Mat) -> Mat:
    n = a.rows
    work = [[Fraction(a._re[i, j], a._den) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return Mat.from_rows([row[n:] for row in work])


def is_invertible(a: Mat) -> bool:
    if a.rows != a.cols:
        return False
    try:
        inverse(a)
    except SingularMatrixError:
        return False
    return True


def perm_from_map(sigma: Sequence[int]) -> Mat:
    """Permutation matrix P with P[r, sigma[r]] = 1 (0-based images).

    Conjugation P @ diag(d) @ P^-1 puts d[sigma[r]] at diagonal position r.
    """
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{list(sigma)} is not a bijection of 0..{n - 1}")
    a = _obj_zeros(n, n)
    for r, c in enumerate(sigma):
        a[r, c] = 1
    return Mat(a)


def is_permutation_matrix(a: Mat) -> bool:
    if a.rows != a.cols or a._den != 1 or a._im.any():
        return False
    re = a._re
    return all(sorted(re[i, :].tolist()) == [0] * (a.cols - 1) + [1] for i in range(a.rows)) and all(
        sorted(re[:, j].tolist()) == [0] * (a.rows - 1) + [1] for j in range(a.cols)
    )
