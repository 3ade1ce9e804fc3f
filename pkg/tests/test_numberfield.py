import pytest
from gmpy2 import mpq

from curvesing.numberfield import (
    QQ, NumberField, TowerLimitError, adjoin_root, factor_over, squarefree_decomposition,
    upoly_eval,
)

# coefficient lists are lowest degree first


def test_gaussian_arithmetic():
    K = NumberField([1, 0, 1], name="i")
    i = K.gen()
    assert i * i == K(-1)
    assert (1 + i) * (1 - i) == K(2)
    assert (1 + i).inverse() * (1 + i) == K(1)
    assert K.modulus_str() == "i^2 + 1 = 0"


def test_division_by_zero():
    K = NumberField([-2, 0, 1])
    with pytest.raises(ZeroDivisionError):
        K(1) / K(0)


def test_factor_over_q():
    facs = factor_over([mpq(-1), 0, 0, 0, 1], QQ)  # z^4 - 1
    degrees = sorted(len(f.poly) - 1 for f in facs)
    assert degrees == [1, 1, 2]


def test_factor_over_extension_splits():
    K = NumberField([1, 0, 1], name="i")
    facs = factor_over([K(1), K(0), K(1)], K)  # z^2 + 1 over Q(i)
    assert [len(f.poly) - 1 for f in facs] == [1, 1]
    roots = {str(-f.poly[0]) for f in facs}
    assert len(roots) == 2


def test_factor_over_extension_irreducible():
    K = NumberField([1, 0, 1], name="i")
    facs = factor_over([K(-2), K(0), K(1)], K)  # z^2 - 2 stays irreducible over Q(i)
    assert len(facs) == 1


def test_tower_embedding():
    K, i = adjoin_root(factor_over([1, 0, 1], QQ)[0], QQ)
    fac = factor_over([K(-2), K(0), K(1)], K)[0]
    L, r2 = adjoin_root(fac, K)
    assert L.degree == 4
    assert r2 * r2 == L(2)
    j = L.embed(i)
    assert j * j == L(-1)
    assert K.is_subfield_of(L)


def test_tower_limits():
    fac = factor_over([-2, 0, 0, 1], QQ)[0]
    with pytest.raises(TowerLimitError):
        adjoin_root(fac, QQ, max_degree=2)


def test_squarefree_decomposition():
    # (z - 1)^2 (z + 2)
    p = [mpq(2), mpq(-3), mpq(0), mpq(1)]
    parts = squarefree_decomposition(p)
    assert [(list(f), k) for f, k in parts] == [([2, 1], 1), ([-1, 1], 2)]


def test_eval():
    assert upoly_eval([1, 2, 3], mpq(2)) == 17
