import pytest

from conftest import M
from svectcc.bimorph import CompositionError, OneMorphism, RankMatrix, compose1, one_identity
from svectcc.exactmat import DimensionError, identity, zeros
from svectcc.harness import (
    hcompose_oracle_cell,
    law_hassoc,
    law_interchange,
    law_oracle_hcompose,
    law_vassoc,
)
from svectcc.twomorph import (
    TwoMorphism,
    hcompose,
    identity_unit,
    is_iso,
    kv_hcompose,
    two_identity,
    vcompose,
    whisker_left,
    whisker_right,
)


def one(rows, gauge=None):
    return OneMorphism.make(RankMatrix.from_rows(rows), gauge)


# construction


def test_cell_shapes_are_validated():
    F, G = one([[1, 0]]), one([[2, 1]])
    TwoMorphism(F, G, [[M([1], [2]), None]])
    with pytest.raises(DimensionError):
        TwoMorphism(F, G, [[M([1, 2]), None]])
    with pytest.raises(DimensionError):
        TwoMorphism(F, G, [[None, None]])  # cell (0, 0) is 2x1, not empty
    with pytest.raises(CompositionError):
        TwoMorphism(F, one([[1]]), [[None]])


def test_empty_cells_reported_as_none():
    F, G = one([[1, 0]]), one([[0, 1]])
    X = TwoMorphism(F, G, [[None, None]])
    assert X.cells() == [[None, None]]
    assert X.is_empty(0, 0) and X.cell(0, 0).shape == (0, 1)


def test_two_identity():
    X = two_identity(one_identity(2))
    assert X.cells() == [[identity(1), None], [None, identity(1)]]


# vertical


def test_vcompose_examples():
    F = one([[1]])
    assert vcompose(TwoMorphism(F, F, [[M([2])]]), TwoMorphism(F, F, [[M([3])]])).cell(0, 0) == M([6])
    F0, F1 = one([[1]]), one([[0]])
    T1, T2 = TwoMorphism(F0, F1, [[None]]), TwoMorphism(F1, F0, [[None]])
    assert vcompose(T2, T1).cell(0, 0) == M([0])
    assert vcompose(T1, T2).is_empty(0, 0)


def test_vcompose_mismatch():
    F, G = one([[1]]), one([[2]])
    X = two_identity(F)
    with pytest.raises(CompositionError):
        vcompose(two_identity(G), X)


def test_vertical_laws(gen):
    for _ in range(20):
        d = gen.dims(2)
        (Fs,) = gen.chain(d, parallel=4)
        T1, T2, T3 = (gen.two(Fs[k], Fs[k + 1]) for k in range(3))
        assert law_vassoc(T1, T2, T3)
        assert vcompose(two_identity(T1.target), T1) == T1 == vcompose(T1, two_identity(T1.source))


# horizontal


def test_hcompose_scalar_example():
    F = one([[1]])
    X = hcompose(TwoMorphism(F, F, [[M([3])]]), TwoMorphism(F, F, [[M([2])]]))
    assert X.cell(0, 0) == M([6])


def test_hcompose_units_and_whiskers(gen):
    for _ in range(15):
        d = gen.dims(3)
        (F, Fp), (G, Gp) = gen.chain(d, parallel=2)
        X, S = gen.two(F, Fp), gen.two(G, Gp)
        assert hcompose(identity_unit(X.m), X) == X == hcompose(X, identity_unit(X.n))
        assert whisker_left(one_identity(X.n), X) == X == whisker_right(X, one_identity(X.m))
        # whiskering identities gives the identity of the composite
        assert whisker_left(F, two_identity(G)) == two_identity(compose1(G, F))
        assert whisker_right(two_identity(F), G) == two_identity(compose1(G, F))
        # interchange decomposition of S o X
        assert vcompose(whisker_left(Fp, S), whisker_right(X, G)) == hcompose(S, X)


def test_hcompose_identities_of_trivial_gauges_oracle():
    F, G = one([[1, 2], [1, 0]]), one([[2, 1]])
    X = hcompose(two_identity(G), two_identity(F))
    for j in range(2):
        assert X.cell(0, j) == hcompose_oracle_cell(two_identity(G), two_identity(F), 0, j)
    assert X == two_identity(compose1(G, F))


def test_hcompose_mismatch():
    with pytest.raises(CompositionError):
        hcompose(two_identity(one([[1, 1]])), two_identity(one([[1, 1]])))


def test_horizontal_laws(gen):
    for _ in range(10):
        d = gen.dims(4)
        (F, Fp), (G, Gp), (K, Kp) = gen.chain(d, parallel=2)
        X, S, U = gen.two(F, Fp), gen.two(G, Gp), gen.two(K, Kp)
        assert law_hassoc(X, S, U, [a for a in gen.points(d[0]) if sum(a) <= 2])
        assert law_oracle_hcompose(X, S, gen.points(d[0])[:8])


def test_interchange(gen):
    for _ in range(10):
        d = gen.dims(3)
        (F, Fp, Fpp), (G, Gp, Gpp) = gen.chain(d, parallel=3)
        assert law_interchange(gen.two(F, Fp), gen.two(Fp, Fpp), gen.two(G, Gp), gen.two(Gp, Gpp))


def test_zero_objects():
    Z = OneMorphism.zero(0, 2)
    X = two_identity(Z)
    assert X.cells() == [[], []]
    F = one([[1, 2]])
    out = hcompose(two_identity(F), X)
    assert (out.n, out.m) == (0, 1) and out.cells() == [[]]
    back = hcompose(X, two_identity(OneMorphism.zero(3, 0)))
    assert (back.n, back.m) == (3, 2) and back.cells() == [[None] * 3] * 2


# KV variant


def test_kv_equals_hcompose_with_trivial_factors():
    F, G = one([[2]]), one([[1]])
    X = TwoMorphism(F, F, [[M([1, 2], [3, 4])]])
    S = TwoMorphism(G, G, [[M([5])]])
    assert kv_hcompose(S, X) == hcompose(S, X)


def test_kv_associative_for_unit_ranks_on_one_object():
    F = one([[1]])
    Xs = [TwoMorphism(F, F, [[M([c])]]) for c in (2, 3, 5)]
    X, S, U = Xs
    assert kv_hcompose(U, kv_hcompose(S, X)) == kv_hcompose(kv_hcompose(U, S), X)


def test_kv_fails_associativity_on_known_witness():
    """Two parallel paths through a 2-dim middle object reorder direct-sum blocks."""
    F = one([[1], [1]])  # 1 -> 2
    G = one([[1, 1], [1, 1]])  # 2 -> 2
    K = one([[1, 1]])  # 2 -> 1
    X = TwoMorphism(F, F, [[M([1])], [M([2])]])
    S = TwoMorphism(G, G, [[M([1]), M([1])], [M([1]), M([1])]])
    U = TwoMorphism(K, K, [[M([1]), M([3])]])
    left = kv_hcompose(U, kv_hcompose(S, X))
    right = kv_hcompose(kv_hcompose(U, S), X)
    assert left.cell(0, 0) != right.cell(0, 0)
    assert sorted(str(left.cell(0, 0)[i, i]) for i in range(4)) == sorted(
        str(right.cell(0, 0)[i, i]) for i in range(4))
    # the gauge-corrected composition is associative on the same data
    assert hcompose(U, hcompose(S, X)) == hcompose(hcompose(U, S), X)


# isomorphisms


def test_is_iso():
    F = one([[1, 2]])
    assert is_iso(two_identity(F))
    assert not is_iso(TwoMorphism(F, one([[1, 1]]), [[identity(1), zeros(1, 2)]]))
    G = one([[1]])
    assert not is_iso(TwoMorphism(G, G, [[M([0])]]))
