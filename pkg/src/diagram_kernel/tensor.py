"""
Dense tensors over a commutative semiring.

A tensor ``dom -> cod`` between dimensions ``(m_1, ..., m_k)`` and
``(n_1, ..., n_l)`` stores its entries row-major, indexed by the domain
multi-index followed by the codomain multi-index.  Composition contracts
the shared multi-index and tensor is the Kronecker product.
"""
from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from diagram_kernel import cat, monoidal, rigid

DEFAULT_ATOL = 1e-9


class DimensionError(cat.AxiomError):
    """Raised when tensor shapes do not match."""


@dataclass(frozen=True)
class Semiring:
    """
    A commutative semiring.

    ``vectorized`` semirings are contracted with numpy; the others go through
    the pure Python loops of :func:`contract_naive`.
    """
    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    dtype: Any = object
    conj: Callable[[Any], Any] = field(default=lambda x: x)
    exact: bool = False
    vectorized: bool = False

    def close(self, a, b, atol=DEFAULT_ATOL):
        a, b = np.asarray(a), np.asarray(b)
        if a.shape != b.shape:
            return False
        if self.exact or a.dtype == object or b.dtype == object:
            return bool(np.all(a == b))
        return bool(np.all(np.abs(a - b) <= atol))

    def __repr__(self):
        return "Semiring({!r})".format(self.name)


BOOL = Semiring("bool", False, True, operator.or_, operator.and_,
                dtype=np.bool_, exact=True, vectorized=True)
REAL = Semiring("real", 0.0, 1.0, operator.add, operator.mul,
                dtype=np.float64, vectorized=True)
COMPLEX = Semiring("complex", 0j, 1 + 0j, operator.add, operator.mul,
                   dtype=np.complex128, conj=np.conj, vectorized=True)

SEMIRINGS = {semiring.name: semiring for semiring in (BOOL, REAL, COMPLEX)}
_RANK = {"bool": 0, "real": 1, "complex": 2}


def join(first, second):
    """ The semiring in which both arguments embed, for the built-in ones. """
    if first is second:
        return first
    if first.name in _RANK and second.name in _RANK:
        return max(first, second, key=lambda s: _RANK[s.name])
    raise TypeError("Cannot mix semirings {} and {}.".format(first, second))


def infer_semiring(array):
    kind = np.asarray(array).dtype.kind
    if kind == "b":
        return BOOL
    if kind == "c":
        return COMPLEX
    if kind in "iuf":
        return REAL
    raise TypeError("Cannot infer semiring for dtype {}.".format(
        np.asarray(array).dtype))


class Dim(rigid.Ty):
    """
    Dimensions, i.e. lists of positive integers.  Adjoints are list reversal.

    >>> Dim(2, 3) @ Dim(4)
    Dim(2, 3, 4)
    >>> Dim(2, 3).l == Dim(3, 2) == Dim(2, 3).r
    True
    """
    def __init__(self, *dims):
        dims = tuple(d.name if isinstance(d, cat.Ob) else d for d in dims)
        for d in dims:
            if isinstance(d, bool) or not isinstance(d, (int, np.integer))\
                    or d < 1:
                raise ValueError("Expected positive integers, got {!r}."
                                 .format(dims))
        super().__init__(*(rigid.Ob(int(d)) for d in dims))

    @property
    def dims(self):
        return tuple(obj.name for obj in self)

    @property
    def size(self):
        return math.prod(self.dims)

    @property
    def l(self):
        return self._from_objects(tuple(reversed(self.objects)))

    @property
    def r(self):
        return self.l

    def __repr__(self):
        return "Dim({})".format(", ".join(map(str, self.dims)))

    __str__ = __repr__


def _as_dim(value):
    if isinstance(value, Dim):
        return value
    if isinstance(value, (int, np.integer)):
        return Dim(value)
    if isinstance(value, monoidal.Ty):
        return Dim(*value)
    return Dim(*value)


class Tensor:
    """
    A tensor ``dom -> cod`` over a semiring.

    >>> f = Tensor(Dim(1), Dim(2), [0, 1])
    >>> g = Tensor(Dim(2), Dim(2), [0, 1, 1, 0])
    >>> f >> g == [1, 0]
    True
    """
    def __init__(self, dom, cod, array, semiring=None):
        dom, cod = _as_dim(dom), _as_dim(cod)
        if semiring is None:
            semiring = infer_semiring(array)
        elif isinstance(semiring, str):
            semiring = SEMIRINGS[semiring]
        values = np.asarray(array)
        if semiring.dtype is not object:
            if np.iscomplexobj(values) and semiring is not COMPLEX:
                raise TypeError("Complex entries need the complex semiring.")
            values = values.astype(semiring.dtype)
        else:
            values = values.astype(object)
        shape = dom.dims + cod.dims
        if values.size != math.prod(shape):
            raise DimensionError(
                "Expected {} entries for shape {}, got {}."
                .format(math.prod(shape), shape, values.size))
        self._dom, self._cod, self._semiring = dom, cod, semiring
        self._array = values.reshape(shape)
        self._array.flags.writeable = False

    @property
    def dom(self):
        return self._dom

    @property
    def cod(self):
        return self._cod

    @property
    def semiring(self):
        return self._semiring

    @property
    def array(self):
        return self._array

    @property
    def flat(self):
        """ The entries in row-major order. """
        return self._array.ravel()

    def as_semiring(self, semiring):
        if semiring is self.semiring:
            return self
        return Tensor(self.dom, self.cod, self.array, semiring)

    @classmethod
    def id(cls, dom=None, semiring=REAL):
        dom = Dim() if dom is None else _as_dim(dom)
        return cls(dom, dom, _identity(dom.size, semiring), semiring)

    @classmethod
    def cups(cls, left, right=None, semiring=REAL):
        """ The reshaped identity ``left @ left.r -> Dim()``. """
        left = _as_dim(left)
        right = left.r if right is None else _as_dim(right)
        if right != left.r:
            raise DimensionError("{!r} is not the adjoint of {!r}."
                                 .format(right, left))
        return cls(left @ right, Dim(), _paired(left, semiring), semiring)

    @classmethod
    def caps(cls, left, right=None, semiring=REAL):
        """ The reshaped identity ``Dim() -> left @ left.l``. """
        left = _as_dim(left)
        right = left.l if right is None else _as_dim(right)
        if right != left.l:
            raise DimensionError("{!r} is not the adjoint of {!r}."
                                 .format(right, left))
        return cls(Dim(), left @ right, _paired(left, semiring), semiring)

    def then(self, *others):
        result = self
        for other in others:
            result = result._then(other)
        return result

    def _then(self, other):
        if not isinstance(other, Tensor):
            raise TypeError("Expected Tensor, got {!r}.".format(other))
        if self.cod != other.dom:
            raise DimensionError("Cannot compose {!r} with {!r}: {!r} != {!r}."
                                 .format(self, other, self.cod, other.dom))
        semiring = join(self.semiring, other.semiring)
        f, g = self.as_semiring(semiring), other.as_semiring(semiring)
        if not semiring.vectorized:
            return contract_naive(f, g)
        k = len(self.cod)
        if semiring is BOOL:
            array = np.tensordot(f.array.astype(np.int64),
                                 g.array.astype(np.int64), axes=k) > 0
        else:
            array = np.tensordot(f.array, g.array, axes=k)
        return Tensor(self.dom, other.cod, array, semiring)

    def __rshift__(self, other):
        return self.then(other)

    def __lshift__(self, other):
        return other.then(self)

    def tensor(self, *others):
        result = self
        for other in others:
            result = result._tensor(other)
        return result

    def _tensor(self, other):
        if not isinstance(other, Tensor):
            raise TypeError("Expected Tensor, got {!r}.".format(other))
        semiring = join(self.semiring, other.semiring)
        f, g = self.as_semiring(semiring), other.as_semiring(semiring)
        if semiring.vectorized:
            outer = np.multiply.outer(f.array, g.array)
        else:
            outer = np.frompyfunc(semiring.mul, 2, 1).outer(f.array, g.array)
        a, b = len(self.dom), len(self.cod)
        c, d = len(other.dom), len(other.cod)
        axes = list(range(a)) + list(range(a + b, a + b + c))\
            + list(range(a, a + b)) + list(range(a + b + c, a + b + c + d))
        return Tensor(self.dom @ other.dom, self.cod @ other.cod,
                      outer.transpose(axes), semiring)

    def __matmul__(self, other):
        return self.tensor(other)

    def dagger(self):
        """ Swap domain and codomain, transposing and conjugating entries. """
        k = len(self.dom)
        axes = list(range(k, k + len(self.cod))) + list(range(k))
        array = self.array.transpose(axes)
        if self.semiring.dtype is object:
            array = np.frompyfunc(self.semiring.conj, 1, 1)(array)
        else:
            array = self.semiring.conj(array)
        return Tensor(self.cod, self.dom, array, self.semiring)

    def equals(self, other, atol=DEFAULT_ATOL):
        """ Equality up to ``atol`` elementwise, exact for exact semirings. """
        if isinstance(other, Tensor):
            if (self.dom, self.cod) != (other.dom, other.cod):
                return False
            semiring = join(self.semiring, other.semiring)
            return semiring.close(self.array, other.array, atol)
        values = np.asarray(other)
        if values.size != self.array.size:
            return False
        return self.semiring.close(self.flat, values.ravel(), atol)

    def __eq__(self, other):
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return "Tensor(dom={!r}, cod={!r}, array={}, semiring={!r})".format(
            self.dom, self.cod, self.flat.tolist(), self.semiring.name)


def _identity(n, semiring):
    if semiring.vectorized:
        return np.eye(n, dtype=semiring.dtype)
    array = np.full((n, n), semiring.zero, dtype=object)
    for i in range(n):
        array[i, i] = semiring.one
    return array


def _paired(left, semiring):
    """ Entries of the reshaped identity pairing ``left`` with its reversal. """
    k = len(left)
    array = _identity(left.size, semiring).reshape(left.dims + left.dims)
    return array.transpose(list(range(k)) + list(reversed(range(k, 2 * k))))


def contract_naive(f, g):
    """
    Composition by explicit summation over the shared multi-index.

    This is the reference semantics for arbitrary semirings.
    """
    if f.cod != g.dom:
        raise DimensionError("Cannot compose {!r} with {!r}.".format(f, g))
    semiring = join(f.semiring, g.semiring)
    ranges = [[range(d) for d in dim.dims] for dim in (f.dom, f.cod, g.cod)]
    shape = f.dom.dims + g.cod.dims
    array = np.full(shape, semiring.zero, dtype=object)
    for a in itertools.product(*ranges[0]):
        for c in itertools.product(*ranges[2]):
            total = semiring.zero
            for b in itertools.product(*ranges[1]):
                total = semiring.add(
                    total, semiring.mul(f.array[a + b], g.array[b + c]))
            array[a + c] = total
    return Tensor(f.dom, g.cod, array, semiring)


class TensorFunctor(rigid.Functor):
    """
    A rigid functor into tensors, given by dimensions for objects and
    arrays (or tensors) for boxes.

    >>> x, y, z = rigid.Ty('x'), rigid.Ty('y'), rigid.Ty('z')
    >>> f, g = rigid.Box('f', x, y), rigid.Box('g', y, z)
    >>> F = TensorFunctor(ob={x: 1, y: 2, z: 2}, ar={f: [0, 1], g: [0, 1, 1, 0]})
    >>> F(f >> g) == F(f) >> F(g) == [1, 0]
    True
    """
    def __init__(self, ob, ar, semiring=None):
        if isinstance(semiring, str):
            semiring = SEMIRINGS[semiring]
        if semiring is None:
            semiring = _guess_semiring(ar)
        self.semiring = semiring
        super().__init__(ob, ar, ob_factory=Dim, ar_factory=Tensor)

    def coerce_ob(self, value):
        return _as_dim(value)

    def coerce_ar(self, box, value):
        dom, cod = self(box.dom), self(box.cod)
        if isinstance(value, Tensor):
            if (value.dom, value.cod) != (dom, cod):
                raise DimensionError(
                    "Image of {!r} should be {!r} -> {!r}, got {!r} -> {!r}."
                    .format(box, dom, cod, value.dom, value.cod))
            return value.as_semiring(join(value.semiring, self.semiring))
        return Tensor(dom, cod, value, self.semiring)

    def id(self, obj):
        return Tensor.id(obj, self.semiring)

    def cups(self, obj):
        return Tensor.cups(obj, semiring=self.semiring)

    def caps(self, obj):
        return Tensor.caps(obj, semiring=self.semiring)

    def __call__(self, arrow):
        if isinstance(arrow, monoidal.Diagram) and not isinstance(arrow, cat.Box)\
                and self.semiring.vectorized:
            return self._contract_layers(arrow)
        return super().__call__(arrow)

    def _contract_layers(self, diagram):
        """ Apply each layer's box to the relevant axes of a running tensor. """
        dom = self(diagram.dom)
        state = Tensor.id(dom, self.semiring).array
        semiring, p = self.semiring, len(dom)
        for left, box, right in diagram.layers:
            image = self(box)
            semiring = join(semiring, image.semiring)
            a, d, c = len(self(left)), len(image.dom), len(image.cod)
            matrix = image.as_semiring(semiring).array
            if semiring is BOOL:
                state, matrix = state.astype(np.int64), matrix.astype(np.int64)
            state = np.tensordot(state, matrix, axes=(
                list(range(p + a, p + a + d)), list(range(d))))
            state = np.moveaxis(state, list(range(state.ndim - c, state.ndim)),
                                list(range(p + a, p + a + c)))
            if semiring is BOOL:
                state = state > 0
        return Tensor(dom, self(diagram.cod), state, semiring)


def _guess_semiring(ar):
    values = ar.values() if isinstance(ar, dict) else ()
    semirings = [value.semiring if isinstance(value, Tensor)
                 else infer_semiring(value) for value in values]
    if not semirings:
        return REAL
    result = semirings[0]
    for semiring in semirings[1:]:
        result = join(result, semiring)
    return result
