"""1-morphisms of 2SVect_cc: pairs (rank matrix, normalized gauge)."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .exactmat import (
    DimensionError,
    Mat,
    SingularMatrixError,
    dsum,
    identity,
    inverse,
    is_permutation_matrix,
    kron,
    perm_from_map,
)
from .svect import ObjectDim, as_object, basis_object, dot


class CompositionError(ValueError):
    pass


class GaugeError(ValueError):
    pass


# --------------------------------------------------------------------------
# rank matrices


@dataclass(frozen=True)
class RankMatrix:
    m: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.m < 0 or self.n < 0:
            raise ValueError("negative rank matrix dimensions")
        if len(rows) != self.m or any(len(r) != self.n for r in rows):
            raise DimensionError(f"rank entries do not form a {self.m}x{self.n} array")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("rank matrix entries must be natural numbers")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> "RankMatrix":
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise DimensionError("column count is ambiguous for an empty rank matrix")
            n = len(rows[0])
        return cls(len(rows), n, rows)

    @classmethod
    def zero(cls, m: int, n: int) -> "RankMatrix":
        return cls(m, n, [[0] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "RankMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, idx) -> int:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def apply(self, a: Sequence[int]) -> ObjectDim:
        """R(a): the object the functor assigns to ``a``."""
        if len(a) != self.n:
            raise DimensionError(f"object with {len(a)} slots given to a {self.m}x{self.n} rank matrix")
        return tuple(dot(r, a) for r in self.entries)

    def __matmul__(self, other: "RankMatrix") -> "RankMatrix":
        if self.n != other.m:
            raise CompositionError(f"cannot multiply rank matrices {self.m}x{self.n} and {other.m}x{other.n}")
        return RankMatrix(
            self.m,
            other.n,
            [[sum(self.entries[i][l] * other.entries[l][j] for l in range(self.n)) for j in range(other.n)]
             for i in range(self.m)],
        )

    def is_permutation(self) -> bool:
        if self.m != self.n:
            return False
        return is_permutation_matrix(Mat.from_rows(self.entries, (self.m, self.n)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


# --------------------------------------------------------------------------
# gauges


class Gauge:
    """A family of normalized sections s_i: N^n -> GL(R_i . a).

    Subclasses implement :meth:`_compute`, returning ``(s_i(a), s_i(a)^-1)``.
    Results are memoized per ``(i, a)``.
    """

    def __init__(self, rank: RankMatrix):
        self.rank = rank
        self._memo: dict[tuple[int, ObjectDim], tuple[Mat, Mat]] = {}
        self._lock = threading.Lock()

    def _check(self, i: int, a) -> ObjectDim:
        a = as_object(a)
        if not 0 <= i < self.rank.m:
            raise IndexError(f"component {i} out of range for {self.rank.m} components")
        if len(a) != self.rank.n:
            raise DimensionError(f"object with {len(a)} slots, gauge expects {self.rank.n}")
        return a

    def eval_pair(self, i: int, a) -> tuple[Mat, Mat]:
        a = self._check(i, a)
        key = (i, a)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        val = self._compute(i, a)
        with self._lock:
            return self._memo.setdefault(key, val)

    def eval(self, i: int, a) -> Mat:
        return self.eval_pair(i, a)[0]

    def _compute(self, i: int, a: ObjectDim) -> tuple[Mat, Mat]:
        raise NotImplementedError


class TrivialGauge(Gauge):
    """s_i(a) = Id everywhere; the gauge of the reference functors."""

    def _compute(self, i, a):
        e = identity(dot(self.rank.row(i), a))
        return e, e

    def __repr__(self):
        return f"TrivialGauge({self.rank.m}x{self.rank.n})"


class TableGauge(Gauge):
    """Finitely many stored sections; identity at every other point.

    ``table`` maps ``(i, a)`` to an invertible matrix of size R(a)_i.
    Entries at basis points must be identities (normalization).
    """

    def __init__(self, rank: RankMatrix, table: Mapping[tuple[int, Sequence[int]], Mat]):
        super().__init__(rank)
        self.table: dict[tuple[int, ObjectDim], Mat] = {}
        self._inv: dict[tuple[int, ObjectDim], Mat] = {}
        basis = {basis_object(rank.n, j) for j in range(rank.n)}
        for (i, a), s in table.items():
            a = self._check(i, a)
            size = dot(rank.row(i), a)
            if s.shape != (size, size):
                raise GaugeError(f"section ({i}, {a}) has shape {s.shape}, expected {size}x{size}")
            if a in basis and not s.is_identity():
                raise GaugeError(f"section ({i}, {a}) violates normalization: must be the identity")
            try:
                inv = inverse(s)
            except SingularMatrixError:
                raise GaugeError(f"section ({i}, {a}) is not invertible") from None
            self.table[(i, a)] = s
            self._inv[(i, a)] = inv

    def _compute(self, i, a):
        s = self.table.get((i, a))
        if s is None:
            e = identity(dot(self.rank.row(i), a))
            return e, e
        return s, self._inv[(i, a)]

    def __repr__(self):
        return f"TableGauge({self.rank.m}x{self.rank.n}, {len(self.table)} entries)"


class ComposedGauge(Gauge):
    """Gauge of the composite ``outer o inner`` of two 1-morphisms."""

    def __init__(self, outer: "OneMorphism", inner: "OneMorphism"):
        super().__init__(outer.rank @ inner.rank)
        self.outer = outer
        self.inner = inner

    def _compute(self, k, a):
        G, F = self.outer, self.inner
        RG, RF = G.rank, F.rank
        sg, sg_inv = G.gauge.eval_pair(k, RF.apply(a))
        fam = [F.gauge.eval_pair(i, a) for i in range(RF.m)]
        mid = dsum(kron(identity(RG[k, i]), fam[i][0]) for i in range(RF.m))
        mid_inv = dsum(kron(identity(RG[k, i]), fam[i][1]) for i in range(RF.m))
        P = perm_block(RG.row(k), RF, a)
        corr = [G.gauge.eval_pair(k, RF.col(j)) for j in range(RF.n)]
        right = dsum(kron(corr[j][1], identity(a[j])) for j in range(RF.n))
        right_inv = dsum(kron(corr[j][0], identity(a[j])) for j in range(RF.n))
        s = sg @ mid @ P @ right
        s_inv = right_inv @ P.T @ mid_inv @ sg_inv
        return s, s_inv

    def __repr__(self):
        return f"ComposedGauge({self.outer!r} o {self.inner!r})"


# --------------------------------------------------------------------------
# 1-morphisms


@dataclass(frozen=True, eq=False)
class OneMorphism:
    """A 1-morphism n -> m: rank matrix (m x n) plus gauge."""

    src: int
    dst: int
    rank: RankMatrix
    gauge: Gauge

    def __post_init__(self):
        if (self.rank.m, self.rank.n) != (self.dst, self.src):
            raise DimensionError(f"rank matrix is {self.rank.m}x{self.rank.n}, expected {self.dst}x{self.src}")
        if self.gauge.rank != self.rank:
            raise GaugeError("gauge was built for a different rank matrix")

    @classmethod
    def make(cls, rank: RankMatrix, gauge: Gauge | Mapping | None = None) -> "OneMorphism":
        """Convenience constructor; ``gauge`` may be a table mapping or None (trivial)."""
        if gauge is None or (rank.m == 0 or rank.n == 0):
            g = TrivialGauge(rank)
        elif isinstance(gauge, Gauge):
            g = gauge
        else:
            g = TableGauge(rank, gauge)
        return cls(rank.n, rank.m, rank, g)

    @classmethod
    def zero(cls, n: int, m: int) -> "OneMorphism":
        r = RankMatrix.zero(m, n)
        return cls(n, m, r, TrivialGauge(r))

    def section(self, i: int, a) -> Mat:
        return self.gauge.eval(i, a)

    def __repr__(self):
        return f"OneMorphism({self.src}->{self.dst}, R={self.rank.tolist()}, {self.gauge!r})"


def one_identity(n: int) -> OneMorphism:
    r = RankMatrix.identity(n)
    return OneMorphism(n, n, r, TrivialGauge(r))


def gauge_eval(F: OneMorphism, i: int, a) -> Mat:
    return F.gauge.eval(i, a)


def perm_block(Rk: Sequence[int], R: RankMatrix, a: Sequence[int]) -> Mat:
    """The canonical block permutation P(R'_k, R, a).

    Rows follow the order of the diagonal [f_j]-blocks in the conjugated
    reference matrix (i, copy c, j, copy d); columns follow H(R'_k R), i.e.
    the same labels stably sorted by j. Each block is Id_{a_j}.
    """
    return perm_from_map(perm_block_map(Rk, R, a))


def perm_block_map(Rk: Sequence[int], R: RankMatrix, a: Sequence[int]) -> list[int]:
    """The permutation of :func:`perm_block` as a map: row r has its 1 in column sigma[r]."""
    Rk = tuple(int(x) for x in Rk)
    a = as_object(a)
    if len(Rk) != R.m:
        raise DimensionError(f"row vector of length {len(Rk)} for a rank matrix with {R.m} rows")
    if len(a) != R.n:
        raise DimensionError(f"object with {len(a)} slots for a rank matrix with {R.n} columns")
    return perm_block_plan(Rk, R)(a)


def perm_block_plan(Rk: Sequence[int], R: RankMatrix) -> Callable[[ObjectDim], list[int]]:
    """Precompute the block order of P(R'_k, R, -); the result maps ``a`` to the permutation."""
    labels = [j for i in range(R.m) for _ in range(Rk[i]) for j in range(R.n) for _ in range(R[i, j])]
    order = sorted(range(len(labels)), key=labels.__getitem__)  # stable

    def sigma(a: ObjectDim) -> list[int]:
        start = [0] * len(labels)
        off = 0
        for r in order:
            start[r] = off
            off += a[labels[r]]
        return [s + x for r, s in enumerate(start) for x in range(a[labels[r]])]

    return sigma


def compose1(G: OneMorphism, F: OneMorphism) -> OneMorphism:
    """The composite G o F of F: n -> m and G: m -> p."""
    if F.dst != G.src:
        raise CompositionError(f"cannot compose {F.src}->{F.dst} with {G.src}->{G.dst}")
    if 0 in (F.src, F.dst, G.dst):
        return OneMorphism.zero(F.src, G.dst)
    return OneMorphism(F.src, G.dst, G.rank @ F.rank, ComposedGauge(G, F))


def compose_many(*morphisms: OneMorphism) -> OneMorphism:
    """``compose_many(H, G, F)`` is H o G o F (right-nested)."""
    out = morphisms[-1]
    for g in reversed(morphisms[:-1]):
        out = compose1(g, out)
    return out


def is_invertible(F: OneMorphism) -> bool:
    return F.src == F.dst and F.rank.is_permutation()


def iso_eq(F: OneMorphism, G: OneMorphism) -> bool:
    """2-isomorphic iff the rank matrices agree."""
    if (F.src, F.dst) != (G.src, G.dst):
        raise CompositionError("1-morphisms have different source/target objects")
    return F.rank == G.rank


def gauges_agree(F: OneMorphism, G: OneMorphism, points: Iterable[Sequence[int]]) -> bool:
    """Pointwise gauge equality on a finite sample of N^n."""
    if F.rank != G.rank:
        return False
    for a in points:
        for i in range(F.dst):
            if F.gauge.eval(i, a) != G.gauge.eval(i, a):
                return False
    return True
