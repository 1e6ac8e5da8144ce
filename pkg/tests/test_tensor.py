import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diagram_kernel import rigid
from diagram_kernel.cat import Box as CatBox, MissingMapping, Ob
from diagram_kernel.tensor import (
    BOOL, COMPLEX, REAL, SEMIRINGS, Dim, DimensionError, Tensor, TensorFunctor,
    contract_naive, infer_semiring, join)

from helpers import naive_contract, naive_kron, random_dim, random_tensor


def test_dim():
    assert Dim(2, 3) @ Dim(4) == Dim(2, 3, 4) and Dim(2, 3).size == 6
    assert Dim(2, 3).l == Dim(3, 2) == Dim(2, 3).r and Dim().size == 1
    assert Dim(1, 2).size == 2 and Dim(2, 3)[1:] == Dim(3)
    with pytest.raises(ValueError):
        Dim(0)


def test_two_step_composite():
    x, y, z = Ob('x'), Ob('y'), Ob('z')
    f, g = CatBox('f', x, y), CatBox('g', y, z)
    F = TensorFunctor(ob={x: 1, y: 2, z: 2}, ar={f: [0, 1], g: [0, 1, 1, 0]})
    assert F(f >> g) == F(f) >> F(g) == [1, 0]


def test_construction():
    t = Tensor(Dim(2), Dim(2), [[1, 2], [3, 4]])
    assert t.flat.tolist() == [1, 2, 3, 4] and t.semiring is REAL
    assert t.array.shape == (2, 2)
    assert Tensor(Dim(), Dim(), [True]).semiring is BOOL
    assert Tensor(Dim(), Dim(), [1j]).semiring is COMPLEX
    with pytest.raises(DimensionError):
        Tensor(Dim(2), Dim(3), [1, 2])
    with pytest.raises(ValueError):
        t.flat[0] = 5


def test_then():
    t = Tensor(Dim(2), Dim(3), range(6))
    assert t >> Tensor.id(Dim(3)) == t == Tensor.id(Dim(2)) >> t
    with pytest.raises(DimensionError):
        t >> t


def test_matrix_product_oracle():
    rng = random.Random(7)
    f = random_tensor(rng, Dim(2), Dim(3))
    g = random_tensor(rng, Dim(3), Dim(4))
    expected = [sum(f.flat[3 * i + k] * g.flat[4 * k + j] for k in range(3))
                for i in range(2) for j in range(4)]
    assert (f >> g).equals(Tensor(Dim(2), Dim(4), expected))


def test_tensor_product():
    identity = Tensor.id(Dim(2)) @ Tensor.id(Dim(2))
    assert identity.flat.tolist() == np.eye(4).ravel().tolist()
    t = Tensor(Dim(2), Dim(2), [1, 2, 3, 4])
    assert Tensor(Dim(), Dim(), [3]) @ t == [3, 6, 9, 12]
    assert (t @ t).dom == Dim(2, 2)


def test_cups_and_caps():
    assert Tensor.cups(Dim(2)).flat.tolist() == [1, 0, 0, 1]
    assert Tensor.caps(Dim()) == Tensor(Dim(), Dim(), [1])
    d = Dim(3)
    snake = Tensor.caps(d) @ Tensor.id(d) >> Tensor.id(d) @ Tensor.cups(d)
    assert snake == Tensor.id(d)


def test_dagger():
    t = Tensor(Dim(2), Dim(3), range(6))
    assert t.dagger().dagger() == t
    assert t.dagger().flat.tolist() == np.arange(6).reshape(2, 3).T.ravel().tolist()
    u = Tensor(Dim(2), Dim(2), [1j, 0, 0, 1])
    assert u.dagger() == Tensor(Dim(2), Dim(2), [-1j, 0, 0, 1])
    v = Tensor(Dim(2), Dim(2), [0, 1j, 2, 0])
    assert v.dagger().flat.tolist() == [0, 2, -1j, 0]


def test_equality():
    t = Tensor(Dim(2), Dim(), [1.0, 2.0])
    assert t == Tensor(Dim(2), Dim(), [1.0, 2.0 + 1e-12])
    assert t != Tensor(Dim(2), Dim(), [1.0, 2.0 + 1e-6])
    assert t.equals(Tensor(Dim(2), Dim(), [1.0, 2.0 + 1e-6]), atol=1e-5)
    assert t != Tensor(Dim(1, 2), Dim(), [1.0, 2.0]).dagger()


def test_semirings():
    assert SEMIRINGS == {"bool": BOOL, "real": REAL, "complex": COMPLEX}
    assert join(BOOL, REAL) is REAL and join(COMPLEX, BOOL) is COMPLEX
    assert infer_semiring(np.array([True])) is BOOL
    assert infer_semiring(np.array([1])) is REAL
    mixed = Tensor(Dim(2), Dim(), [True, False]) >> Tensor(Dim(), Dim(2), [0.5, 2])
    assert mixed.semiring is REAL


@pytest.mark.parametrize("semiring", [BOOL, REAL, COMPLEX])
def test_semiring_laws(semiring):
    rng = np.random.default_rng(0)
    if semiring is BOOL:
        sample = [bool(b) for b in rng.random(4) < 0.5]
    else:
        sample = [semiring.dtype(v) for v in rng.integers(-5, 5, 4)]
        if semiring is COMPLEX:
            sample = [v + 1j * w for v, w in zip(sample, rng.integers(-5, 5, 4))]
    add, mul, zero, one = semiring.add, semiring.mul, semiring.zero, semiring.one
    for a, b, c in itertools.product(sample, repeat=3):
        assert add(add(a, b), c) == add(a, add(b, c)) and add(a, b) == add(b, a)
        assert mul(mul(a, b), c) == mul(a, mul(b, c)) and mul(a, b) == mul(b, a)
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, zero) == a and mul(a, one) == a and mul(a, zero) == zero


def test_functor_identity_and_errors():
    x, y = rigid.Ty('x'), rigid.Ty('y')
    F = TensorFunctor(ob={x: 2, y: 3}, ar={})
    assert F(rigid.Id(x @ y)) == Tensor.id(Dim(2, 3))
    assert F(rigid.Id(x @ y)).flat.tolist() == np.eye(6).ravel().tolist()
    with pytest.raises(MissingMapping):
        F(rigid.Box('f', x, y))
    G = TensorFunctor(ob={x: 2, y: 3}, ar={rigid.Box('f', x, y): [1, 2]})
    with pytest.raises(DimensionError):
        G(rigid.Box('f', x, y))


def test_boolean_join():
    """ Exists b. R(a, b) and S(b, c), as a diagram over the booleans. """
    a, b, c = rigid.Ty('a'), rigid.Ty('b'), rigid.Ty('c')
    R = rigid.Box('R', rigid.Ty(), a @ b)
    S = rigid.Box('S', rigid.Ty(), b.r @ c)
    query = R @ S >> rigid.Id(a) @ rigid.Cup(b) @ rigid.Id(c)
    rng = np.random.default_rng(3)
    r, s = rng.random((2, 3)) < 0.5, rng.random((3, 2)) < 0.5
    F = TensorFunctor(ob={a: 2, b: 3, c: 2}, ar={R: r, S: s}, semiring=BOOL)
    result = F(query)
    assert result.semiring is BOOL
    expected = {(i, k) for i, j, k in itertools.product(range(2), range(3), range(2))
                if r[i, j] and s[j, k]}
    found = {(i, k) for i in range(2) for k in range(2) if result.array[i, k]}
    assert found == expected


@given(st.randoms(use_true_random=False), st.sampled_from([BOOL, REAL, COMPLEX]))
def test_contraction_matches_oracles(rng, semiring):
    dom, mid, cod = (random_dim(rng, 6) for _ in range(3))
    f, g = random_tensor(rng, dom, mid, semiring), random_tensor(rng, mid, cod, semiring)
    expected = Tensor(dom, cod, naive_contract(f, g, semiring), semiring)
    assert (f >> g).equals(expected) and contract_naive(f, g).equals(expected)


@given(st.randoms(use_true_random=False), st.sampled_from([BOOL, REAL, COMPLEX]))
def test_kronecker_matches_oracle(rng, semiring):
    f = random_tensor(rng, random_dim(rng, 4), random_dim(rng, 4), semiring)
    g = random_tensor(rng, random_dim(rng, 4), random_dim(rng, 4), semiring)
    result = f @ g
    assert result.dom == f.dom @ g.dom and result.cod == f.cod @ g.cod
    matrix = Tensor(Dim(f.dom.size * g.dom.size), Dim(f.cod.size * g.cod.size),
                    naive_kron(f, g, semiring), semiring)
    assert Tensor(matrix.dom, matrix.cod, result.flat, semiring) == matrix


@given(st.randoms(use_true_random=False))
def test_interchange_law(rng):
    f = random_tensor(rng, random_dim(rng, 4), random_dim(rng, 4))
    g = random_tensor(rng, random_dim(rng, 4), random_dim(rng, 4))
    left = f @ Tensor.id(g.dom) >> Tensor.id(f.cod) @ g
    right = Tensor.id(f.dom) @ g >> f @ Tensor.id(g.cod)
    assert left.equals(f @ g) and right.equals(f @ g)


@given(st.randoms(use_true_random=False))
def test_associativity(rng):
    dims = [random_dim(rng, 8) for _ in range(4)]
    f, g, h = (random_tensor(rng, dims[i], dims[i + 1]) for i in range(3))
    assert ((f >> g) >> h).equals(f >> (g >> h))


@given(st.randoms(use_true_random=False))
def test_snake_equations(rng):
    d = random_dim(rng, 64, max_len=4)
    left = Tensor.caps(d) @ Tensor.id(d) >> Tensor.id(d) @ Tensor.cups(d.l)
    right = Tensor.id(d) @ Tensor.caps(d.r) >> Tensor.cups(d) @ Tensor.id(d)
    assert left.flat.tolist() == Tensor.id(d).flat.tolist()
    assert right.flat.tolist() == Tensor.id(d).flat.tolist()
