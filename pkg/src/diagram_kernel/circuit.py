"""
Quantum circuits as diagrams over qubits.

Each box carries its complex matrix, indexed by input bits then output bits.
Evaluation maps every qubit to ``Dim(2)`` and contracts, measurement takes
squared moduli of the amplitudes of a state.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from diagram_kernel import cat, monoidal, rigid
from diagram_kernel.monoidal import PRO
from diagram_kernel.tensor import COMPLEX, REAL, DEFAULT_ATOL, Dim, Tensor,\
    TensorFunctor


class NonEmptyDomainError(ValueError):
    """Raised when measuring a circuit which is not a state."""


class Circuit(rigid.Diagram):
    """
    A diagram over ``PRO``, i.e. a circuit on some number of qubits.

    >>> circuit = Ket(0, 0) >> H @ Id(1) >> CX
    >>> circuit.measure() == [0.5, 0, 0, 0.5]
    True
    """
    ty_factory = PRO

    @classmethod
    def id(cls, dom=None):
        dom = PRO() if dom is None else dom
        return super().id(PRO(dom) if isinstance(dom, int) else dom)

    @classmethod
    def cups(cls, left, right=None):
        """ Nested unnormalised Bell effects on ``left @ left``. """
        n = _width(left)
        if right is not None and _width(right) != n:
            raise cat.AxiomError("Widths {} and {} differ.".format(n, right))
        result = cls.id(PRO(2 * n))
        for k in reversed(range(n)):
            result = result >> cls.id(k) @ Cup() @ cls.id(k)
        return result

    @classmethod
    def caps(cls, left, right=None):
        """ Nested unnormalised Bell states on ``left @ left``. """
        n = _width(left)
        if right is not None and _width(right) != n:
            raise cat.AxiomError("Widths {} and {} differ.".format(n, right))
        result = cls.id(PRO(0))
        for k in range(n):
            result = result >> cls.id(k) @ Cap() @ cls.id(k)
        return result

    def eval(self):
        """ The complex tensor of the circuit. """
        return EVAL(self)

    def measure(self):
        """
        The squared moduli of the amplitudes of a state, as a real tensor.

        These need not sum to one when the circuit contains effects or scalars.
        """
        if len(self.dom):
            raise NonEmptyDomainError(
                "Only states can be measured, got domain {!r}.".format(self.dom))
        amplitudes = self.eval()
        return Tensor(amplitudes.dom, amplitudes.cod,
                      np.abs(amplitudes.array) ** 2, REAL)


def _width(value):
    return value if isinstance(value, int) else len(value)


class Box(rigid.Box, Circuit):
    """
    A box ``PRO(m) -> PRO(n)`` with a ``2^m`` by ``2^n`` complex matrix,
    indexed by input then output.
    """
    def __init__(self, name, dom, cod, matrix, data=None, _dagger=False):
        dom = PRO(dom) if isinstance(dom, int) else dom
        cod = PRO(cod) if isinstance(cod, int) else cod
        self._tensor = Tensor(Dim(*[2] * len(dom)), Dim(*[2] * len(cod)),
                              np.asarray(matrix, dtype=complex), COMPLEX)
        rigid.Box.__init__(self, name, dom, cod, data=data, _dagger=_dagger)

    @property
    def array(self):
        """ The matrix as a ``2^m`` by ``2^n`` numpy array. """
        return self._tensor.array.reshape(
            2 ** len(self.dom), 2 ** len(self.cod))

    def tensor_value(self):
        return self._tensor

    def dagger(self):
        return Box(self.name, self.cod, self.dom, self.array.conj().T,
                   data=self.data, _dagger=not self.is_dagger)


class Gate(Box):
    """
    A gate on ``n_qubits`` given by its unitary ``U``, stored as ``U[out, in]``.

    >>> Gate('X', 1, [[0, 1], [1, 0]]).is_unitary()
    True
    """
    def __init__(self, name, n_qubits, unitary, data=None, _dagger=False):
        unitary = np.asarray(unitary, dtype=complex)
        if unitary.shape != (2 ** n_qubits, 2 ** n_qubits):
            raise ValueError("Gate {} on {} qubits needs a {}x{} matrix."
                             .format(name, n_qubits, 2 ** n_qubits,
                                     2 ** n_qubits))
        self.unitary = unitary
        super().__init__(name, n_qubits, n_qubits, unitary.T,
                         data=data, _dagger=_dagger)
        if not self.is_unitary():
            raise ValueError("Gate {} is not unitary.".format(name))

    @property
    def n_qubits(self):
        return len(self.dom)

    def is_unitary(self, atol=DEFAULT_ATOL):
        product = self.unitary.conj().T @ self.unitary
        return bool(np.all(np.abs(product - np.eye(len(product))) <= atol))

    def dagger(self):
        return Gate(self.name, self.n_qubits, self.unitary.conj().T,
                    data=self.data, _dagger=not self.is_dagger)

    def __repr__(self):
        return self.name + (".dagger()" if self.is_dagger else "")


class Rz(Gate):
    """
    Rotation around the Z axis by ``2 pi phase``: ``diag(e^{-i pi a}, e^{i pi a})``.

    >>> Rz(0.25).dagger() == Rz(-0.25)
    True
    """
    def __init__(self, phase):
        half = math.pi * phase
        super().__init__("Rz({})".format(phase), 1, [
            [cmath.exp(-1j * half), 0], [0, cmath.exp(1j * half)]],
            data=phase)

    @property
    def phase(self):
        return self.data

    def dagger(self):
        return type(self)(-self.phase)

    def __repr__(self):
        return "{}({!r})".format(type(self).__name__, self.phase)


class Rx(Rz):
    """ Rotation around the X axis by ``2 pi phase``. """
    def __init__(self, phase):
        c, s = math.cos(math.pi * phase), math.sin(math.pi * phase)
        Gate.__init__(self, "Rx({})".format(phase), 1,
                      [[c, -1j * s], [-1j * s, c]], data=phase)


def _basis(bits):
    vector = np.zeros(2 ** len(bits), dtype=complex)
    vector[int("".join(map(str, bits)) or "0", 2)] = 1
    return vector


def _bits(bits):
    bits = tuple(bits)
    if any(bit not in (0, 1) or isinstance(bit, bool) for bit in bits):
        raise ValueError("Expected bits, got {!r}.".format(bits))
    return bits


class Ket(Box):
    """
    The computational basis state ``|b_1 ... b_n>``.

    >>> Ket(1).eval() == [0, 1]
    True
    """
    def __init__(self, *bits):
        bits = _bits(bits)
        super().__init__("Ket{}".format(bits), 0, len(bits),
                         _basis(bits).reshape(1, -1), data=list(bits))

    @property
    def bits(self):
        return tuple(self.data)

    def dagger(self):
        return Bra(*self.bits)

    def __repr__(self):
        return "Ket({})".format(", ".join(map(str, self.bits)))


class Bra(Box):
    """ The computational basis effect ``<b_1 ... b_n|``. """
    def __init__(self, *bits):
        bits = _bits(bits)
        super().__init__("Bra{}".format(bits), len(bits), 0,
                         _basis(bits).reshape(-1, 1), data=list(bits))

    @property
    def bits(self):
        return tuple(self.data)

    def dagger(self):
        return Ket(*self.bits)

    def __repr__(self):
        return "Bra({})".format(", ".join(map(str, self.bits)))


class Scalar(Box):
    """ A complex number as a box ``PRO(0) -> PRO(0)``. """
    def __init__(self, value):
        value = complex(value)
        value = complex(value.real + 0.0, value.imag + 0.0)  # no -0.0 in names
        super().__init__("Scalar({})".format(value), 0, 0, [[value]],
                         data=value)

    @property
    def value(self):
        return self.data

    def dagger(self):
        return Scalar(self.value.conjugate())

    def __repr__(self):
        return "Scalar({!r})".format(self.value)


_BELL = np.array([1, 0, 0, 1], dtype=complex)


class Cup(Box, rigid.Cup):
    """ The unnormalised Bell effect ``PRO(2) -> PRO(0)``. """
    def __init__(self, _dagger=False):
        self._x = PRO(1)
        dom, cod = (0, 2) if _dagger else (2, 0)
        Box.__init__(self, "CUP", dom, cod,
                     _BELL.reshape((1, 4) if _dagger else (4, 1)),
                     _dagger=_dagger)

    def dagger(self):
        return Cup(_dagger=not self.is_dagger)

    def __repr__(self):
        return "Cup()" + (".dagger()" if self.is_dagger else "")


class Cap(Box, rigid.Cap):
    """ The unnormalised Bell state ``PRO(0) -> PRO(2)``. """
    def __init__(self, _dagger=False):
        self._x = PRO(1)
        dom, cod = (2, 0) if _dagger else (0, 2)
        Box.__init__(self, "CAP", dom, cod,
                     _BELL.reshape((4, 1) if _dagger else (1, 4)),
                     _dagger=_dagger)

    def dagger(self):
        return Cap(_dagger=not self.is_dagger)

    def __repr__(self):
        return "Cap()" + (".dagger()" if self.is_dagger else "")


Circuit.factory = Circuit
Id = Circuit.id


def _tensor_of(box):
    if not isinstance(box, Box):
        raise TypeError("{!r} is not a circuit box.".format(box))
    return box.tensor_value()


EVAL = TensorFunctor(ob={PRO(1): 2}, ar=_tensor_of, semiring=COMPLEX)

s2 = 1 / math.sqrt(2)
H = Gate("H", 1, [[s2, s2], [s2, -s2]])
X = Gate("X", 1, [[0, 1], [1, 0]])
Y = Gate("Y", 1, [[0, -1j], [1j, 0]])
Z = Gate("Z", 1, [[1, 0], [0, -1]])
S = Gate("S", 1, [[1, 0], [0, 1j]])
T = Gate("T", 1, [[1, 0], [0, cmath.exp(1j * math.pi / 4)]])
CX = Gate("CX", 2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
CZ = Gate("CZ", 2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
SWAP = Gate("SWAP", 2, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])

GATES = {gate.name: gate for gate in (H, X, Y, Z, S, T, CX, CZ, SWAP)}
PARAMETRIZED = {"Rx": Rx, "Rz": Rz}


def gate(name, phase=None):
    """ Look up a gate by name, with a phase in half-turns for Rx and Rz. """
    if name in PARAMETRIZED:
        if phase is None:
            raise ValueError("{} needs a phase.".format(name))
        return PARAMETRIZED[name](phase)
    if name not in GATES:
        raise KeyError("Unknown gate {!r}.".format(name))
    return GATES[name]


class CircuitFunctor(rigid.Functor):
    """
    A rigid functor into circuits: types go to numbers of qubits and boxes
    to circuits, cups and caps go to Bell effects and states.

    >>> n, s = rigid.Ty('n'), rigid.Ty('s')
    >>> alice = rigid.Box('Alice', rigid.Ty(), n)
    >>> F = CircuitFunctor(ob={n: 1, s: 0}, ar={alice: Ket(0)})
    >>> F(alice >> rigid.Id(n)) == Ket(0)
    True
    """
    def __init__(self, ob, ar):
        super().__init__(ob, ar, ob_factory=PRO, ar_factory=Circuit)

    def coerce_ob(self, value):
        return value if isinstance(value, PRO) else PRO(_width(value))

    def coerce_ar(self, box, value):
        dom, cod = self(box.dom), self(box.cod)
        if not isinstance(value, Circuit):
            raise TypeError("Image of {!r} should be a circuit, got {!r}."
                            .format(box, value))
        if (len(value.dom), len(value.cod)) != (len(dom), len(cod)):
            raise cat.AxiomError(
                "Image of {!r} should be {!r} -> {!r}, got {!r} -> {!r}."
                .format(box, dom, cod, value.dom, value.cod))
        return value

    def id(self, obj):
        return Circuit.id(obj)
