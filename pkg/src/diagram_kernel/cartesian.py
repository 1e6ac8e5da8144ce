"""
Free symmetric and Cartesian structure, evaluated as functions on tuples.

Swaps, copies and deletions are generated from their atomic instances:
``swap(x @ y, z)`` is a ladder of atomic swaps and ``copy(x @ y)`` copies
each half then swaps the two middle wires.
"""
from __future__ import annotations

from diagram_kernel import cat, monoidal
from diagram_kernel.monoidal import PRO, Ty


class ArityError(ValueError):
    """Raised when a function is applied to, or returns, the wrong number of values."""


class Diagram(monoidal.Diagram):
    """ A diagram which may use swaps, copies and deletions. """
    @classmethod
    def swap(cls, left, right):
        return swap(left, right)

    @classmethod
    def copy(cls, x):
        return copy(x)

    @classmethod
    def delete(cls, x):
        return delete(x)

    def find_swaps(self):
        """ Indices ``(i, j)`` of a swap whose outputs feed a swap back. """
        inputs, _ = self.wiring()
        for j, box in enumerate(self.boxes):
            if isinstance(box, Swap) and inputs[j][0][0] >= 0:
                i = inputs[j][0][0]
                if inputs[j] == [(i, 0), (i, 1)]\
                        and isinstance(self.boxes[i], Swap):
                    return i, j
        return None

    def swap_removal(self):
        """
        Yield the steps cancelling pairs of inverse swaps.

        The boxes between such a pair cannot touch its middle wires, so they
        are interchanged above it before the pair is deleted.
        """
        diagram = self
        while True:
            pair = diagram.find_swaps()
            if pair is None:
                return
            i, j = pair
            order = list(range(i)) + list(range(i + 1, j)) + [i, j]\
                + list(range(j + 1, len(diagram)))
            for diagram in diagram._reorder(order):
                yield diagram
            k = j - 1
            boxes, offsets = diagram.boxes, diagram.offsets
            del boxes[k:k + 2], offsets[k:k + 2]
            diagram = diagram.factory(diagram.dom, diagram.cod, boxes, offsets)
            yield diagram

    def rewrite_steps(self, left=False):
        """ Swap cancellations, then interchangers. """
        diagram = self
        for diagram in self.swap_removal():
            yield diagram
        yield from monoidal.Diagram.rewrite_steps(diagram, left=left)

    def normal_form(self, left=False, max_steps=None):
        """ Cancel inverse swaps, then take the interchanger normal form. """
        diagram = self
        for diagram in self.swap_removal():
            pass
        return monoidal.Diagram.normal_form(
            diagram, left=left, max_steps=max_steps)


class Box(monoidal.Box, Diagram):
    """
    A box with an optional Python function attached, used as its default
    semantics.  The function does not take part in equality.

    >>> add = Box('add', PRO(2), PRO(1), function=lambda x, y: x + y)
    >>> PythonFunctor(ob={}, ar={})(add)(1, 2)
    (3,)
    """
    def __init__(self, name, dom, cod, data=None, _dagger=False, function=None):
        self.function = function
        monoidal.Box.__init__(self, name, dom, cod, data=data, _dagger=_dagger)

    def dagger(self):
        return type(self)(self.name, self.cod, self.dom, data=self.data,
                          _dagger=not self.is_dagger)


class Swap(Box):
    """ The symmetry ``x @ y -> y @ x`` on atomic types. """
    def __init__(self, left, right):
        if len(left) != 1 or len(right) != 1:
            raise ValueError("Swap expects atomic types, got {!r} and {!r}."
                             .format(left, right))
        self.left, self.right = left, right
        super().__init__("SWAP", left @ right, right @ left)

    def dagger(self):
        return Swap(self.right, self.left)

    def __repr__(self):
        return "Swap({!r}, {!r})".format(self.left, self.right)


class Copy(Box):
    """ The diagonal ``x -> x @ x`` on an atomic type. """
    def __init__(self, x, _dagger=False):
        if len(x) != 1:
            raise ValueError("Copy expects an atomic type, got {!r}.".format(x))
        self.x = x
        dom, cod = (x @ x, x) if _dagger else (x, x @ x)
        super().__init__("COPY", dom, cod, _dagger=_dagger)

    def dagger(self):
        return Copy(self.x, _dagger=not self.is_dagger)

    def __repr__(self):
        return "Copy({!r})".format(self.x) + (".dagger()" if self.is_dagger else "")


class Delete(Box):
    """ The counit ``x -> Ty()`` on an atomic type. """
    def __init__(self, x, _dagger=False):
        if len(x) != 1:
            raise ValueError("Delete expects an atomic type, got {!r}."
                             .format(x))
        self.x = x
        dom, cod = (x[:0], x) if _dagger else (x, x[:0])
        super().__init__("DELETE", dom, cod, _dagger=_dagger)

    def dagger(self):
        return Delete(self.x, _dagger=not self.is_dagger)

    def __repr__(self):
        return "Delete({!r})".format(self.x) + (".dagger()" if self.is_dagger else "")


Diagram.factory = Diagram
Id = Diagram.id


def swap(left, right):
    """
    The symmetry ``left @ right -> right @ left`` as a ladder of atomic swaps.

    >>> x, y, z = Ty('x'), Ty('y'), Ty('z')
    >>> len(swap(x @ y, z)), swap(Ty(), x) == Diagram.id(x)
    (2, True)
    """
    if not len(left) or not len(right):
        return Diagram.id(left @ right)
    if len(left) == 1 and len(right) == 1:
        return Swap(left, right)
    if len(left) > 1:
        head, tail = left[:1], left[1:]
        return Diagram.id(head) @ swap(tail, right)\
            >> swap(head, right) @ Diagram.id(tail)
    head, tail = right[:1], right[1:]
    return swap(left, head) @ Diagram.id(tail)\
        >> Diagram.id(head) @ swap(left, tail)


def copy(x):
    """
    The diagonal ``x -> x @ x``: copy each half, then swap the middle.

    >>> copy(Ty('x', 'y')).cod
    Ty('x', 'y', 'x', 'y')
    """
    if not len(x):
        return Diagram.id(x)
    if len(x) == 1:
        return Copy(x)
    head, tail = x[:1], x[1:]
    return copy(head) @ copy(tail)\
        >> Diagram.id(head) @ swap(head, tail) @ Diagram.id(tail)


def delete(x):
    """ Discard every wire of ``x``. """
    result = Diagram.id(x)
    for k in range(len(x)):
        result = result >> Delete(x[k:k + 1]) @ Diagram.id(x[k + 1:])
    return result


class Function:
    """
    A function from ``dom``-tuples to ``cod``-tuples.

    Composition is function composition and tensor splits the input tuple
    and concatenates the outputs.

    >>> succ = Function(1, 1, lambda x: x + 1)
    >>> (succ >> succ)(40), (succ @ succ)(1, 2)
    ((42,), (2, 3))
    """
    def __init__(self, dom, cod, function, name=None):
        self.dom, self.cod = _arity(dom), _arity(cod)
        self.function, self.name = function, name

    def __call__(self, *values):
        if len(values) != self.dom:
            raise ArityError("{!r} expects {} arguments, got {}."
                             .format(self, self.dom, len(values)))
        result = self.function(*values)
        if not isinstance(result, tuple):
            if self.cod != 1:
                raise ArityError("{!r} should return a {}-tuple, got {!r}."
                                 .format(self, self.cod, result))
            result = (result, )
        if len(result) != self.cod:
            raise ArityError("{!r} should return a {}-tuple, got {!r}."
                             .format(self, self.cod, result))
        return result

    @classmethod
    def id(cls, dom=0):
        return cls(dom, dom, lambda *xs: xs, name="id")

    def then(self, *others):
        result = self
        for other in others:
            if result.cod != other.dom:
                raise ArityError("Cannot compose {!r} with {!r}."
                                 .format(result, other))
            result = Function(result.dom, other.cod,
                              _composite(result, other))
        return result

    def tensor(self, *others):
        result = self
        for other in others:
            result = Function(result.dom + other.dom, result.cod + other.cod,
                              _parallel(result, other))
        return result

    def __rshift__(self, other):
        return self.then(other)

    def __matmul__(self, other):
        return self.tensor(other)

    def __repr__(self):
        return "Function({}, {}{})".format(
            self.dom, self.cod, "" if self.name is None
            else ", name={!r}".format(self.name))


def _arity(value):
    if isinstance(value, monoidal.Ty):
        return len(value)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ArityError("Expected a natural number, got {!r}.".format(value))
    return value


def _composite(f, g):
    return lambda *xs: g(*f(*xs))


def _parallel(f, g):
    return lambda *xs: f(*xs[:f.dom]) + g(*xs[f.dom:])


def _number(text):
    try:
        return int(text)
    except ValueError:
        return float(text)


BUILTINS = {
    "id": (1, 1, lambda x: x),
    "add": (2, 1, lambda x, y: x + y),
    "sub": (2, 1, lambda x, y: x - y),
    "mul": (2, 1, lambda x, y: x * y),
    "neg": (1, 1, lambda x: -x),
    "succ": (1, 1, lambda x: x + 1),
    "dup": (1, 2, lambda x: (x, x)),
    "fork_succ": (1, 2, lambda x: (x, x + 1)),
    "discard": (1, 0, lambda x: ()),
}


def builtin(name):
    """
    Look up a function by name, ``const:v`` being the constant ``() -> (v,)``.

    >>> builtin('const:42')(), builtin('add')(1, 2)
    ((42,), (3,))
    """
    if name.startswith("const:"):
        value = _number(name[len("const:"):])
        return Function(0, 1, lambda: value, name=name)
    if name not in BUILTINS:
        raise KeyError("Unknown built-in function {!r}.".format(name))
    dom, cod, function = BUILTINS[name]
    return Function(dom, cod, function, name=name)


class PythonFunctor(monoidal.Functor):
    """
    A functor into Python functions: objects go to arities and boxes go to
    functions, either :class:`Function` instances or plain callables.

    Swaps, copies and deletions are interpreted structurally, boxes with an
    attached ``function`` default to it.

    >>> x, y, z = cat.Ob('x'), cat.Ob('y'), cat.Ob('z')
    >>> f, g = cat.Box('f', x, y), cat.Box('g', y, z)
    >>> F = PythonFunctor(ob={x: 0, y: 1, z: 2},
    ...                   ar={f: lambda: (42, ), g: lambda x: (x, x + 1)})
    >>> F(f >> g)()
    (42, 43)
    """
    def __init__(self, ob, ar):
        super().__init__(ob, ar, ob_factory=PRO, ar_factory=Function)

    def coerce_ob(self, value):
        return value if isinstance(value, PRO) else PRO(_arity(value))

    def map_ob(self, obj):
        if isinstance(obj, monoidal.Ty) and len(obj) == 1:
            obj = obj[0]
        try:
            return super().map_ob(obj)
        except cat.MissingMapping:
            if obj == PRO(1)[0]:
                return PRO(1)  # the generating wire of PRO is one value
            raise

    def __call__(self, arrow):
        if isinstance(arrow, cat.Ob) and not isinstance(arrow, monoidal.Ty):
            return self.map_ob(arrow)
        return super().__call__(arrow)

    def id(self, obj):
        return Function.id(len(obj))

    def map_box(self, box):
        if isinstance(box, Swap):
            m, n = len(self(box.left)), len(self(box.right))
            return Function(m + n, n + m, lambda *xs: xs[m:] + xs[:m])
        if isinstance(box, (Copy, Delete)):
            if box.is_dagger:
                raise ArityError("{!r} has no function semantics.".format(box))
            n = len(self(box.x))
            if isinstance(box, Copy):
                return Function(n, 2 * n, lambda *xs: xs + xs)
            return Function(n, 0, lambda *xs: ())
        if isinstance(box, Box) and box.function is not None and not (
                isinstance(self.ar, dict) and box in self.ar):
            return self.coerce_ar(box, box.function)
        return self.coerce_ar(box, self._lookup(self.ar, box))

    def coerce_ar(self, box, value):
        dom, cod = len(self(box.dom)), len(self(box.cod))
        if isinstance(value, str):
            value = builtin(value)
        if isinstance(value, Function):
            if (value.dom, value.cod) != (dom, cod):
                raise ArityError(
                    "Image of {!r} should be {} -> {}, got {} -> {}."
                    .format(box, dom, cod, value.dom, value.cod))
            return value
        if not callable(value):
            raise TypeError("Expected a function for {!r}, got {!r}."
                            .format(box, value))
        return Function(dom, cod, value)
