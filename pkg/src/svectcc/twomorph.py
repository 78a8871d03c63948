"""2-morphisms of 2SVect_cc and their compositions.

A cell (i, j) of a 2-morphism (R, s) => (R', s') is an R'_ij x R_ij matrix.
When either rank is zero the cell is *empty*; it is still stored as a
shape-tracked matrix with a zero dimension, and :meth:`TwoMorphism.is_empty`
reports the marker. With that representation the conventions for products
and tensor products involving empty entries fall out of ordinary matrix
algebra: an R''x0 times 0xR product is the R''xR zero matrix, and a tensor
factor with a zero dimension yields a block with a zero dimension.
"""

from __future__ import annotations

from typing import Sequence

from .bimorph import CompositionError, OneMorphism, compose1, one_identity
from .exactmat import DimensionError, Mat, dsum, identity, is_invertible, kron, zeros


class TwoMorphism:
    __slots__ = ("source", "target", "_cells")

    def __init__(self, source: OneMorphism, target: OneMorphism, cells: Sequence[Sequence[Mat | None]]):
        if (source.src, source.dst) != (target.src, target.dst):
            raise CompositionError("source and target 1-morphisms have different endpoints")
        m, n = source.dst, source.src
        R, Rp = source.rank, target.rank
        cells = [list(row) for row in cells]
        if len(cells) != m or any(len(row) != n for row in cells):
            raise DimensionError(f"cell grid must be {m}x{n}")
        grid = []
        for i, row in enumerate(cells):
            out = []
            for j, c in enumerate(row):
                shape = (Rp[i, j], R[i, j])
                if c is None:
                    if shape[0] and shape[1]:
                        raise DimensionError(f"cell ({i}, {j}) must be a {shape[0]}x{shape[1]} matrix, not empty")
                    c = zeros(*shape)
                elif c.shape != shape:
                    raise DimensionError(f"cell ({i}, {j}) has shape {c.shape}, expected {shape}")
                out.append(c)
            grid.append(tuple(out))
        self.source = source
        self.target = target
        self._cells = tuple(grid)

    @property
    def n(self) -> int:
        return self.source.src

    @property
    def m(self) -> int:
        return self.source.dst

    def cell(self, i: int, j: int) -> Mat:
        return self._cells[i][j]

    def is_empty(self, i: int, j: int) -> bool:
        return self._cells[i][j].is_empty

    def cells(self) -> list[list[Mat | None]]:
        """Grid with ``None`` at empty cells."""
        return [[None if c.is_empty else c for c in row] for row in self._cells]

    def __eq__(self, other):
        if not isinstance(other, TwoMorphism):
            return NotImplemented
        return (
            self.source.rank == other.source.rank
            and self.target.rank == other.target.rank
            and self._cells == other._cells
        )

    __hash__ = None

    def __repr__(self):
        return f"TwoMorphism({self.source.rank.tolist()} => {self.target.rank.tolist()}, cells={self.cells()})"


def two_identity(F: OneMorphism) -> TwoMorphism:
    R = F.rank
    return TwoMorphism(F, F, [[identity(R[i, j]) for j in range(F.src)] for i in range(F.dst)])


def vcompose(T2: TwoMorphism, T1: TwoMorphism) -> TwoMorphism:
    """Vertical composite T2 . T1 of T1: F => F' and T2: F' => F''."""
    if (T1.target.src, T1.target.dst) != (T2.source.src, T2.source.dst) or T1.target.rank != T2.source.rank:
        raise CompositionError("target of the first 2-morphism is not the source of the second")
    return TwoMorphism(
        T1.source,
        T2.target,
        [[T2.cell(i, j) @ T1.cell(i, j) for j in range(T1.n)] for i in range(T1.m)],
    )


def _check_horizontal(S: TwoMorphism, T: TwoMorphism):
    if T.m != S.n:
        raise CompositionError(f"cannot compose {T.n}->{T.m} with {S.n}->{S.m} horizontally")


def hcompose(S: TwoMorphism, T: TwoMorphism) -> TwoMorphism:
    """Horizontal composite S o T of T: F => F' (n -> m) and S: G => G' (m -> p)."""
    _check_horizontal(S, T)
    F, Fp, G, Gp = T.source, T.target, S.source, S.target
    src, tgt = compose1(G, F), compose1(Gp, Fp)
    n, m, p = T.n, T.m, S.m
    cells = []
    for k in range(p):
        row = []
        for j in range(n):
            core = dsum(kron(S.cell(k, i), T.cell(i, j)) for i in range(m))
            left = Gp.gauge.eval(k, Fp.rank.col(j))
            _, right_inv = G.gauge.eval_pair(k, F.rank.col(j))
            row.append(left @ core @ right_inv)
        cells.append(row)
    return TwoMorphism(src, tgt, cells)


def kv_hcompose(S: TwoMorphism, T: TwoMorphism) -> TwoMorphism:
    """Horizontal composite without gauge factors (reconstruction of the
    Kapranov-Voevodsky rule): cell (k, j) = sum_i S_ki (x) T_ij."""
    _check_horizontal(S, T)
    src = compose1(S.source, T.source)
    tgt = compose1(S.target, T.target)
    cells = [[dsum(kron(S.cell(k, i), T.cell(i, j)) for i in range(T.m)) for j in range(T.n)] for k in range(S.m)]
    return TwoMorphism(src, tgt, cells)


def whisker_left(F: OneMorphism, S: TwoMorphism) -> TwoMorphism:
    """S o 1_F."""
    return hcompose(S, two_identity(F))


def whisker_right(T: TwoMorphism, G: OneMorphism) -> TwoMorphism:
    """1_G o T."""
    return hcompose(two_identity(G), T)


def is_iso(T: TwoMorphism) -> bool:
    if T.source.rank != T.target.rank:
        return False
    return all(c.is_empty or is_invertible(c) for row in T._cells for c in row)


def iso_witness(F: OneMorphism, G: OneMorphism) -> TwoMorphism:
    """The 2-isomorphism F => G with identity cells (requires equal ranks)."""
    if F.rank != G.rank:
        raise CompositionError("no 2-isomorphism between 1-morphisms with different rank matrices")
    R = F.rank
    return TwoMorphism(F, G, [[identity(R[i, j]) for j in range(F.src)] for i in range(F.dst)])


def identity_unit(m: int) -> TwoMorphism:
    """The identity 2-morphism of the identity 1-morphism on m."""
    return two_identity(one_identity(m))


def closed_component(T: TwoMorphism, a) -> list[Mat]:
    """tau_a in closed form: s'_i(a) (sum_j T_ij (x) Id_{a_j}) s_i(a)^-1.

    Independent of :func:`svectcc.svect.nat_component`, which evaluates the
    generator sum; the two are compared in the tests.
    """
    a = tuple(a)
    out = []
    for i in range(T.m):
        core = dsum(kron(T.cell(i, j), identity(a[j])) for j in range(T.n))
        _, s_inv = T.source.gauge.eval_pair(i, a)
        out.append(T.target.gauge.eval(i, a) @ core @ s_inv)
    return out


__all__ = [
    "TwoMorphism",
    "two_identity",
    "vcompose",
    "hcompose",
    "kv_hcompose",
    "whisker_left",
    "whisker_right",
    "is_iso",
    "iso_witness",
    "identity_unit",
    "closed_component",
]
