"""
Free monoidal categories.

A diagram is an arrow in the free category generated by layers: each box
comes with an offset, the number of wires passing to its left.  Equality in
the free monoidal category is decided by rewriting with interchangers
towards a normal form.
"""
from __future__ import annotations

from functools import reduce

from diagram_kernel import cat
from diagram_kernel.cat import AxiomError, Ob


class InterchangerError(AxiomError):
    """Raised when two boxes cannot be interchanged because they are connected."""


class NotBoundaryConnected(NotImplementedError):
    """Raised when a normal form is requested for a diagram with floating components."""


def _flat(objects):
    """ Types given as arguments are spliced in. """
    for obj in objects:
        if isinstance(obj, Ty):
            yield from obj
        else:
            yield obj


class Ty(Ob):
    """
    A type, i.e. a list of objects, with tensor given by concatenation.

    >>> x, y = Ty('x'), Ty('y')
    >>> (x @ y) @ Ty() == x @ (y @ Ty()) == Ty('x', 'y')
    True
    """
    def __init__(self, *objects):
        self._objects = tuple(
            obj if isinstance(obj, Ob) else Ob(obj) for obj in _flat(objects))
        super().__init__(self._objects)

    @property
    def objects(self):
        return list(self._objects)

    def _key(self):
        return self._objects

    @classmethod
    def _from_objects(cls, objects):
        return cls(*objects)

    def _upgrade(self, other):
        mine, theirs = type(self), type(other)
        return theirs if issubclass(theirs, mine) else mine

    def tensor(self, *others):
        result = self
        for other in others:
            if not isinstance(other, Ty):
                raise TypeError("Expected Ty, got {!r}.".format(other))
            result = result._upgrade(other)._from_objects(
                result._objects + other._objects)
        return result

    def __matmul__(self, other):
        return self.tensor(other)

    def __pow__(self, n):
        return self._from_objects(self._objects * n)

    def __len__(self):
        return len(self._objects)

    def __iter__(self):
        return iter(self._objects)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return self._from_objects(self._objects[key])
        return self._objects[key]

    def __repr__(self):
        return "{}({})".format(
            type(self).__name__, ", ".join(repr(obj.name) for obj in self))

    def __str__(self):
        return " @ ".join(map(str, self)) or "Ty()"


class PRO(Ty):
    """
    The types of a monoidal category generated by a single object ``Ob(1)``.

    >>> PRO(2) == Ty(1, 1)
    True
    >>> PRO(2) @ PRO(1)
    PRO(3)
    """
    def __init__(self, n=0):
        if isinstance(n, Ty):
            n = len(n)
        if n < 0:
            raise ValueError("Expected a natural number, got {}.".format(n))
        super().__init__(*(n * [Ob(1)]))

    @classmethod
    def _from_objects(cls, objects):
        if all(obj == Ob(1) for obj in objects):
            return cls(len(objects))
        return Ty(*objects)

    @property
    def l(self):
        return self

    @property
    def r(self):
        return self

    def __repr__(self):
        return "PRO({})".format(len(self))

    def __str__(self):
        return "PRO({})".format(len(self))


class Layer(cat.Box):
    """ A box with wires to its left and right, an arrow of the free category. """
    def __init__(self, left, box, right):
        self._left, self._box, self._right = left, box, right
        super().__init__(
            box.name, left @ box.dom @ right, left @ box.cod @ right)

    @property
    def left(self):
        return self._left

    @property
    def box(self):
        return self._box

    @property
    def right(self):
        return self._right

    def dagger(self):
        return Layer(self.left, self.box.dagger(), self.right)

    def _fields(self):
        return self.left, self.box, self.right

    def __iter__(self):
        yield from (self.left, self.box, self.right)

    def __hash__(self):
        return hash(self._fields())

    def __repr__(self):
        return "Layer({!r}, {!r}, {!r})".format(*self._fields())


class Diagram(cat.Arrow):
    """
    A diagram given by a domain, a list of boxes and a list of offsets.

    The codomain is inferred when ``cod`` is ``None``, otherwise checked.

    >>> x, y = Ty('x'), Ty('y')
    >>> f = Box('f', x, y)
    >>> d = f @ f
    >>> d.offsets, d.dom, d.cod
    ([0, 1], Ty('x', 'x'), Ty('y', 'y'))
    """
    ty_factory = Ty

    def __init__(self, dom, cod, boxes, offsets, _scan=True):
        boxes, offsets = list(boxes), list(offsets)
        if len(boxes) != len(offsets):
            raise ValueError("Boxes and offsets must have the same length.")
        if not isinstance(dom, Ty) or cod is not None and not isinstance(cod, Ty):
            raise TypeError("Expected Ty instances, got {!r} and {!r}."
                            .format(dom, cod))
        layers, scan = [], dom
        for i, (box, off) in enumerate(zip(boxes, offsets)):
            if _scan:
                if not isinstance(box, Box):
                    raise TypeError("Expected Box, got {!r}.".format(box))
                if not isinstance(off, int) or off < 0\
                        or off + len(box.dom) > len(scan):
                    raise AxiomError(
                        "Box {} ({!r}) at offset {} out of range for {!r}."
                        .format(i, box, off, scan))
                if scan[off:off + len(box.dom)] != box.dom:
                    raise AxiomError(
                        "Box {} ({!r}) expects {!r} at offset {}, found {!r}."
                        .format(i, box, box.dom, off,
                                scan[off:off + len(box.dom)]))
            left, right = scan[:off], scan[off + len(box.dom):]
            layers.append(Layer(left, box, right))
            scan = left @ box.cod @ right
        if cod is None:
            cod = scan
        elif _scan and scan != cod:
            raise AxiomError("Codomain {!r} expected, got {!r}."
                             .format(cod, scan))
        cat.Arrow.__init__(self, dom, cod, boxes, _scan=False)
        self._offsets, self._layers = offsets, layers

    @property
    def offsets(self):
        return list(self._offsets)

    @property
    def layers(self):
        return list(self._layers)

    @classmethod
    def id(cls, dom=None):
        dom = cls.ty_factory() if dom is None else dom
        return cls.factory(dom, dom, [], [], _scan=False)

    def then(self, *others):
        if len(others) != 1:
            return reduce(lambda f, g: f.then(g), others, self)
        other, = others
        if not isinstance(other, Diagram):
            raise TypeError("Expected Diagram, got {!r}.".format(other))
        if self.cod != other.dom:
            raise AxiomError("{} does not compose with {}: {!r} != {!r}."
                             .format(self, other, self.cod, other.dom))
        return self._upgrade(other)(
            self.dom, other.cod, self.boxes + other.boxes,
            self.offsets + other.offsets, _scan=False)

    def tensor(self, *others):
        """ Horizontal composition: ``self``'s boxes first, then ``other``'s. """
        if len(others) != 1:
            return reduce(lambda f, g: f.tensor(g), others, self)
        other, = others
        if not isinstance(other, Diagram):
            raise TypeError("Expected Diagram, got {!r}.".format(other))
        offsets = self.offsets + [n + len(self.cod) for n in other.offsets]
        return self._upgrade(other)(
            self.dom @ other.dom, self.cod @ other.cod,
            self.boxes + other.boxes, offsets, _scan=False)

    def __matmul__(self, other):
        return self.tensor(other)

    def dagger(self):
        return self.factory(
            self.cod, self.dom, [box.dagger() for box in self.boxes[::-1]],
            self.offsets[::-1], _scan=False)

    def slice(self, i, j):
        if not 0 <= i <= j <= len(self):
            raise IndexError("Slice [{}:{}] out of range for diagram of length {}."
                             .format(i, j, len(self)))
        dom = self._layers[i].dom if i < len(self) else self.cod
        return self.factory(dom, None, self.boxes[i:j], self.offsets[i:j],
                            _scan=False)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return super().__getitem__(key)
        left, box, right = self._layers[key]
        return self.id(left) @ box @ self.id(right)

    def __eq__(self, other):
        if not isinstance(other, cat.Arrow):
            return NotImplemented
        if not isinstance(other, Diagram):
            return False
        return (self.dom, self.cod, self.boxes, self.offsets)\
            == (other.dom, other.cod, other.boxes, other.offsets)

    def __hash__(self):
        if len(self) == 1 and self.offsets == [0] and self.dom == self.boxes[0].dom:
            return hash(self.boxes[0])
        return hash((self.dom, self.cod, tuple(self.boxes), tuple(self.offsets)))

    def __repr__(self):
        if not len(self):
            return "Id({!r})".format(self.dom)
        return "{}(dom={!r}, cod={!r}, boxes={!r}, offsets={!r})".format(
            type(self).__name__, self.dom, self.cod, self.boxes, self.offsets)

    def __str__(self):
        if not len(self):
            return "Id({})".format(self.dom)

        def layer_str(layer):
            left, box, right = layer
            return " @ ".join(
                ["Id({})".format(left)] * bool(left) + [str(box)]
                + ["Id({})".format(right)] * bool(right))
        return " >> ".join(map(layer_str, self._layers))

    def wiring(self):
        """
        Trace every wire from its source port to its target port.

        Returns ``(inputs, outputs)`` where ``inputs[i][k]`` is the
        ``(source, port)`` feeding input ``k`` of box ``i`` and
        ``outputs[i][k]`` is the ``(target, port)`` fed by output ``k``.
        The domain boundary is source ``-1`` and the codomain boundary is
        target ``len(self)``; their port is the wire position.
        """
        scan = [(-1, k) for k in range(len(self.dom))]
        inputs = [[] for _ in self.boxes]
        outputs = [[None] * len(box.cod) for box in self.boxes]
        for i, (box, off) in enumerate(zip(self.boxes, self.offsets)):
            inputs[i] = scan[off:off + len(box.dom)]
            for k, (src, port) in enumerate(inputs[i]):
                if src >= 0:
                    outputs[src][port] = (i, k)
            scan = scan[:off] + [(i, k) for k in range(len(box.cod))]\
                + scan[off + len(box.dom):]
        for position, (src, port) in enumerate(scan):
            if src >= 0:
                outputs[src][port] = (len(self), position)
        return inputs, outputs

    def is_boundary_connected(self):
        """ Whether every box is linked by wires to the domain or codomain. """
        parent = list(range(len(self) + 1))  # node len(self) is the boundary

        def find(node):
            while parent[node] != node:
                parent[node] = parent[parent[node]]
                node = parent[node]
            return node

        def union(a, b):
            parent[find(a)] = find(b)

        boundary = len(self)
        inputs, outputs = self.wiring()
        for i in range(len(self)):
            for src, _ in inputs[i]:
                union(i, boundary if src < 0 else src)
            for tgt, _ in outputs[i]:
                if tgt == boundary:
                    union(i, boundary)
        return all(find(i) == find(boundary) for i in range(len(self)))

    def _interchange_adjacent(self, i, left=False):
        box0, box1 = self.boxes[i], self.boxes[i + 1]
        off0, off1 = self.offsets[i], self.offsets[i + 1]
        box0_left = off1 >= off0 + len(box0.cod)
        box0_right = off0 >= off1 + len(box1.dom)
        if box0_left and (left or not box0_right):
            off0, off1 = off0, off1 - len(box0.cod) + len(box0.dom)
        elif box0_right:
            off0, off1 = off0 - len(box1.dom) + len(box1.cod), off1
        else:
            raise InterchangerError(
                "Boxes {} ({}) and {} ({}) are connected."
                .format(i, box0, i + 1, box1))
        boxes, offsets = self.boxes, self.offsets
        boxes[i:i + 2] = [box1, box0]
        offsets[i:i + 2] = [off1, off0]
        return self.factory(self.dom, self.cod, boxes, offsets, _scan=False)

    def interchange(self, i, j, left=False):
        """
        Move the box at index ``i`` to index ``j`` by adjacent interchangers.

        When two boxes are on disjoint wires in both directions (e.g. an
        effect above a state) the right interchanger is used unless ``left``.
        Raises ``InterchangerError`` if some step would swap connected boxes.
        """
        if not 0 <= i < len(self) or not 0 <= j < len(self):
            raise IndexError("Indices {}, {} out of range.".format(i, j))
        result = self
        step = 1 if j > i else -1
        for k in range(i, j, step):
            result = result._interchange_adjacent(min(k, k + step), left=left)
        return result

    def _reorder(self, order):
        """ Yield interchanger steps permuting the boxes into ``order``. """
        diagram, current = self, list(range(len(self)))
        for target, index in enumerate(order):
            position = current.index(index)
            for k in reversed(range(target, position)):
                diagram = diagram._interchange_adjacent(k)
                current[k], current[k + 1] = current[k + 1], current[k]
                yield diagram

    def _applicable(self, i, left=False):
        box0, box1 = self.boxes[i], self.boxes[i + 1]
        off0, off1 = self.offsets[i], self.offsets[i + 1]
        if left:
            return off1 >= off0 + len(box0.cod)
        return off0 >= off1 + len(box1.dom)

    def normalize(self, left=False):
        """
        Yield the reduction sequence of right (or left) interchangers.

        At each step the interchanger at the lowest index is applied.  The
        sequence is infinite for diagrams which are not boundary-connected.
        """
        diagram, i = self, 0
        while True:
            for k in range(max(i - 1, 0), len(diagram) - 1):
                if diagram._applicable(k, left=left):
                    diagram, i = diagram._interchange_adjacent(k, left=left), k
                    yield diagram
                    break
            else:
                return

    def rewrite_steps(self, left=False):
        """
        Every step of the reduction computed by ``normal_form``, checking
        boundary-connectedness before any interchanger.
        """
        if not self.is_boundary_connected():
            raise NotBoundaryConnected(
                "{} is not boundary-connected.".format(self))
        return self.normalize(left=left)

    def normal_form(self, left=False, max_steps=None):
        """
        The last diagram of ``normalize`` for boundary-connected diagrams.

        The step count is capped at ``10 n^3 + 100`` by default.
        """
        if not self.is_boundary_connected():
            raise NotBoundaryConnected(
                "{} is not boundary-connected.".format(self))
        if max_steps is None:
            max_steps = step_bound(len(self))
        result = self
        for step, result in enumerate(self.normalize(left=left), start=1):
            if step > max_steps:
                raise RuntimeError(
                    "Normalisation exceeded {} steps.".format(max_steps))
        return result

    def draw(self, **params):
        from diagram_kernel.drawing import draw
        return draw(self, **params)


class Box(cat.Box, Diagram):
    """
    A box in a monoidal signature, i.e. a diagram with one box at offset 0.

    >>> f = Box('f', Ty('x'), Ty('y', 'z'))
    >>> f.boxes == [f] and f.offsets == [0]
    True
    """
    def __init__(self, name, dom, cod, data=None, _dagger=False):
        if not isinstance(dom, Ty) or not isinstance(cod, Ty):
            raise TypeError("Expected Ty instances, got {!r} and {!r}."
                            .format(dom, cod))
        cat.Box.__init__(self, name, dom, cod, data=data, _dagger=_dagger)
        self._offsets = [0]

    @property
    def layers(self):
        return [Layer(self.ty_factory(), self, self.ty_factory())]

    @property
    def _layers(self):
        return self.layers

    def __eq__(self, other):
        if isinstance(other, Box):
            return cat.Box.__eq__(self, other)
        if isinstance(other, Diagram):
            return Diagram.__eq__(self, other)
        return NotImplemented

    def __hash__(self):
        return cat.Box.__hash__(self)

    __repr__, __str__ = cat.Box.__repr__, cat.Box.__str__


Diagram.factory = Diagram


def make_diagram(dom, boxes, offsets):
    """ Build a diagram from a domain, boxes and offsets, inferring the codomain. """
    return Diagram(dom, None, boxes, offsets)


def step_bound(n_boxes):
    """ Cap on the number of interchanger steps for a diagram with ``n`` boxes. """
    return 10 * n_boxes ** 3 + 100


class Functor(cat.Functor):
    """
    A monoidal functor, given by its image on objects and boxes.

    ``ob_factory`` must provide a unit (called with no arguments) and a
    ``tensor`` method, ``ar_factory`` must provide ``id``, ``then`` and
    ``tensor``.

    >>> x, y, z = Ty('x'), Ty('y'), Ty('z')
    >>> f = Box('f', x, y)
    >>> F = Functor(ob={x: z, y: x}, ar={f: Box('g', z, x)})
    >>> F(f @ f) == Box('g', z, x) @ Box('g', z, x)
    True
    """
    def __init__(self, ob, ar, ob_factory=Ty, ar_factory=Diagram):
        if isinstance(ob, dict):
            ob = {_atom(key): value for key, value in ob.items()}
        super().__init__(ob, ar, ob_factory=ob_factory, ar_factory=ar_factory)

    def coerce_ob(self, value):
        if isinstance(value, self.ob_factory):
            return value
        return self.ob_factory(value)

    def coerce_ar(self, box, value):
        return value

    def map_ob(self, obj):
        return self.coerce_ob(super().map_ob(obj))

    def map_box(self, box):
        if box.is_dagger:
            return self.map_box(box.dagger()).dagger()
        return self.coerce_ar(box, super().map_box(box))

    def __call__(self, arrow):
        if isinstance(arrow, Ty):
            return reduce(lambda x, y: x.tensor(y),
                          (self.map_ob(obj) for obj in arrow),
                          self.ob_factory())
        if isinstance(arrow, Diagram) and not isinstance(arrow, cat.Box):
            result = self.id(self(arrow.dom))
            for left, box, right in arrow.layers:
                layer = self.id(self(left)).tensor(self(box))\
                    .tensor(self.id(self(right)))
                result = result.then(layer)
            return result
        return super().__call__(arrow)


def _atom(key):
    if isinstance(key, Ty) and not isinstance(key, cat.Box) and len(key) == 1:
        return key[0]
    return key


Id = Diagram.id
