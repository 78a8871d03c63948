"""Decoordinatized oracle layer over SVect^n.

Objects of SVect^n are points ``a`` of N^n (tuples of naturals); morphisms
are :class:`MorphismTuple` values, one matrix per slot. Everything here is
evaluated directly from the generators iota/pi and the reference functors
H(r), so it can be used to check the closed coordinate formulas in
:mod:`svectcc.bimorph` and :mod:`svectcc.twomorph`.

All indices (slot ``k``, position ``i``, component ``i``) are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .exactmat import DimensionError, Mat, _obj_zeros, identity, mat_mul, zeros

ObjectDim = tuple[int, ...]


class OracleError(RuntimeError):
    pass


def as_object(a: Sequence[int]) -> ObjectDim:
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError(f"object dimensions must be natural numbers, got {a}")
    return a


def basis_object(n: int, j: int) -> ObjectDim:
    """The object C(j, n), i.e. the point e_j."""
    return tuple(int(l == j) for l in range(n))


def dot(a: Sequence[int], r: Sequence[int]) -> int:
    if len(a) != len(r):
        raise ValueError(f"length mismatch: {len(a)} vs {len(r)}")
    return sum(x * y for x, y in zip(a, r))


@dataclass(frozen=True)
class MorphismTuple:
    """A morphism (f_1, ..., f_n): a -> a' in SVect^n."""

    domain: ObjectDim
    codomain: ObjectDim
    mats: tuple[Mat, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", as_object(self.domain))
        object.__setattr__(self, "codomain", as_object(self.codomain))
        object.__setattr__(self, "mats", tuple(self.mats))
        if not (len(self.domain) == len(self.codomain) == len(self.mats)):
            raise DimensionError("domain, codomain and component list differ in length")
        for j, (f, a, b) in enumerate(zip(self.mats, self.domain, self.codomain)):
            if f.shape != (b, a):
                raise DimensionError(f"component {j} has shape {f.shape}, expected {(b, a)}")

    @property
    def n(self) -> int:
        return len(self.mats)

    @classmethod
    def identity(cls, a: Sequence[int]) -> "MorphismTuple":
        a = as_object(a)
        return cls(a, a, tuple(identity(x) for x in a))

    def then(self, g: "MorphismTuple") -> "MorphismTuple":
        """Diagrammatic composite: ``f.then(g)`` is g o f."""
        if self.codomain != g.domain:
            raise DimensionError(f"cannot compose: codomain {self.codomain} != domain {g.domain}")
        return MorphismTuple(self.domain, g.codomain, tuple(mat_mul(y, x) for x, y in zip(self.mats, g.mats)))

    def __add__(self, other: "MorphismTuple") -> "MorphismTuple":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise DimensionError("cannot add morphisms with different endpoints")
        return MorphismTuple(self.domain, self.codomain, tuple(x + y for x, y in zip(self.mats, other.mats)))


def compose_tuples(g: MorphismTuple, f: MorphismTuple) -> MorphismTuple:
    return f.then(g)


# --------------------------------------------------------------------------
# generators


def _check_generator_index(a: ObjectDim, k: int, i: int):
    if not 0 <= k < len(a):
        raise ValueError(f"slot {k} out of range for an object with {len(a)} slots")
    if not 0 <= i < a[k]:
        raise ValueError(f"position {i} out of range for slot {k} of dimension {a[k]}")


def generator_iota(a: Sequence[int], k: int, i: int) -> MorphismTuple:
    """Inclusion of C(k, n) into ``a`` as the ``i``-th copy in slot ``k``."""
    a = as_object(a)
    _check_generator_index(a, k, i)
    n = len(a)
    mats = [zeros(a[l], 0) for l in range(n)]
    col = [[0] for _ in range(a[k])]
    col[i][0] = 1
    mats[k] = Mat.from_rows(col)
    return MorphismTuple(basis_object(n, k), a, mats)


def generator_pi(a: Sequence[int], k: int, i: int) -> MorphismTuple:
    """Projection of ``a`` onto the ``i``-th copy of C(k, n) in slot ``k``."""
    io = generator_iota(a, k, i)
    return MorphismTuple(io.codomain, io.domain, tuple(m.T for m in io.mats))


# --------------------------------------------------------------------------
# reference functors


def ref_apply(r: Sequence[int], f: MorphismTuple) -> Mat:
    """[H(r)(f)], the block-diagonal matrix with r_j copies of [f_j].

    Row blocks are indexed by (j, c) with height a'_j and column blocks by
    (j, c) with width a_j; zero-height or zero-width blocks still shift the
    other coordinate, which inserts the zero rows/columns required when a
    component has a zero domain or codomain.
    """
    r = tuple(int(x) for x in r)
    if len(r) != f.n:
        raise ValueError(f"rank vector of length {len(r)} applied to a {f.n}-slot morphism")
    if any(x < 0 for x in r):
        raise ValueError("rank vector entries must be natural numbers")
    rows = dot(r, f.codomain)
    cols = dot(r, f.domain)
    den = 1
    for fj, rj in zip(f.mats, r):
        if rj:
            den = den * fj._den // gcd(den, fj._den)
    re = _obj_zeros(rows, cols)
    im = _obj_zeros(rows, cols)
    ro = co = 0
    for fj, rj in zip(f.mats, r):
        h, w = fj.shape
        scale = den // fj._den
        for _ in range(rj):
            if h and w:
                re[ro:ro + h, co:co + w] = fj._re * scale
                im[ro:ro + h, co:co + w] = fj._im * scale
            ro += h
            co += w
    return Mat(re, im, den)


def a0_matrix(r: Sequence[int], a: Sequence[int], k: int, i: int) -> Mat:
    """[A0(r; a, k, i)] = [H(r)(iota(a, k, i))], shape (a.r) x r_k."""
    r, a = tuple(r), as_object(a)
    _check_a0_pre(r, a, k, i)
    return ref_apply(r, generator_iota(a, k, i))


def b0_matrix(r: Sequence[int], a: Sequence[int], k: int, i: int) -> Mat:
    """[B0(r; a, k, i)] = [H(r)(pi(a, k, i))], the transpose of :func:`a0_matrix`."""
    r, a = tuple(r), as_object(a)
    _check_a0_pre(r, a, k, i)
    return ref_apply(r, generator_pi(a, k, i))


def _check_a0_pre(r, a, k, i):
    if len(r) != len(a):
        raise ValueError("rank vector and object differ in length")
    _check_generator_index(a, k, i)
    if r[k] < 1:
        raise ValueError(f"A0/B0 need r_k >= 1, got r_{k} = {r[k]}")


# --------------------------------------------------------------------------
# functors and natural transformations given by coordinates


def functor_apply(F, f: MorphismTuple) -> MorphismTuple:
    """Evaluate the functor with rank matrix R and gauge s on ``f: a -> a'``.

    Component i is s_i(a') [H(R_i)(f)] s_i(a)^-1.
    """
    if F.src != f.n:
        raise DimensionError(f"functor expects {F.src}-slot morphisms, got {f.n}")
    R = F.rank
    out = []
    for i in range(F.dst):
        s_cod, _ = F.gauge.eval_pair(i, f.codomain)
        _, s_dom_inv = F.gauge.eval_pair(i, f.domain)
        h = ref_apply(R.row(i), f)
        try:
            out.append(s_cod @ h @ s_dom_inv)
        except DimensionError as exc:  # pragma: no cover - unreachable for valid gauges
            raise OracleError(f"gauge/reference shape mismatch in component {i}") from exc
    return MorphismTuple(R.apply(f.domain), R.apply(f.codomain), out)


def functor_evaluator(*functors, component: int) -> Callable[[MorphismTuple], Mat]:
    """Component ``component`` of the composite of ``functors`` (applied left to right)."""

    def ev(f: MorphismTuple) -> Mat:
        for F in functors:
            f = functor_apply(F, f)
        return f.mats[component]

    return ev


def gauge_extract(F_eval: Callable[[MorphismTuple], Mat], r: Sequence[int], a: Sequence[int]) -> Mat:
    """Recover phi(a) = sum_{k,i} [F(iota(a,k,i))] [B0(r; a, k, i)].

    ``F_eval`` evaluates one component of a linear functor with rank vector
    ``r``. For a functor built from a normalized gauge s this returns s(a).
    """
    r, a = tuple(r), as_object(a)
    size = dot(a, r)
    acc = zeros(size, size)
    for k in range(len(a)):
        if r[k] == 0:
            continue
        for i in range(a[k]):
            img = F_eval(generator_iota(a, k, i))
            if img.shape != (size, r[k]):
                raise OracleError(f"evaluator returned shape {img.shape}, expected {(size, r[k])}")
            acc = acc + img @ b0_matrix(r, a, k, i)
    return acc


def nat_component(T, a: Sequence[int]) -> list[Mat]:
    """Components tau_a of the natural transformation with matrix T.

    tau_a = sum_{j,l} F'(iota(a,j,l)) tau_{C(j,n)} F(pi(a,j,l)), written out
    with the gauges of the source F = (R, s) and target F' = (R', s').
    """
    a = as_object(a)
    F, G = T.source, T.target
    if len(a) != F.src:
        raise ValueError(f"object has {len(a)} slots, transformation expects {F.src}")
    out = []
    for i in range(F.dst):
        r, rp = F.rank.row(i), G.rank.row(i)
        s_i, s_i_inv = F.gauge.eval_pair(i, a)
        sp_i, _ = G.gauge.eval_pair(i, a)
        acc = zeros(dot(a, rp), dot(a, r))
        for j in range(len(a)):
            if r[j] == 0 or rp[j] == 0:
                continue
            for l in range(a[j]):
                acc = acc + a0_matrix(rp, a, j, l) @ T.cell(i, j) @ b0_matrix(r, a, j, l)
        out.append(sp_i @ acc @ s_i_inv)
    return out
