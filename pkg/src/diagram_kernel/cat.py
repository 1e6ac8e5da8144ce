"""
Free categories on a simple signature.

An arrow is a list of composable boxes: identities are empty lists and
composition is list concatenation.  Functors out of the free category are
determined by where they send objects and boxes.
"""
from __future__ import annotations

from functools import reduce


class AxiomError(Exception):
    """Raised when boxes do not compose, i.e. some codomain and domain differ."""


class MissingMapping(LookupError):
    """Raised when a functor is applied to a box or object it does not map."""


class Ob:
    """
    A generating object, given by any hashable name.

    >>> Ob('x') == Ob('x') != Ob('y')
    True
    """
    def __init__(self, name):
        self._name = name

    @property
    def name(self):
        return self._name

    def _key(self):
        return self._name

    def __eq__(self, other):
        if not isinstance(other, Ob):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "Ob({!r})".format(self.name)

    def __str__(self):
        return str(self.name)


class Arrow:
    """
    An arrow ``dom -> cod`` in the free category, i.e. a list of boxes.

    Composability is checked at construction so ill-typed lists never exist.

    >>> x, y, z = Ob('x'), Ob('y'), Ob('z')
    >>> f, g = Box('f', x, y), Box('g', y, z)
    >>> (f >> g).boxes == [f, g]
    True
    >>> Arrow.id(x) >> f == f == f >> Arrow.id(y)
    True
    """
    def __init__(self, dom, cod, boxes, _scan=True):
        boxes = list(boxes)
        if _scan:
            if not isinstance(dom, Ob) or not isinstance(cod, Ob):
                raise TypeError("Expected Ob instances, got {!r} and {!r}."
                                .format(dom, cod))
            scan = dom
            for i, box in enumerate(boxes):
                if not isinstance(box, Box):
                    raise TypeError("Expected Box, got {!r}.".format(box))
                if box.dom != scan:
                    raise AxiomError(
                        "Box {} ({!r}) has domain {!r}, expected {!r}."
                        .format(i, box, box.dom, scan))
                scan = box.cod
            if scan != cod:
                raise AxiomError("Codomain {!r} expected, got {!r}."
                                 .format(cod, scan))
        self._dom, self._cod, self._boxes = dom, cod, boxes

    @property
    def dom(self):
        return self._dom

    @property
    def cod(self):
        return self._cod

    @property
    def boxes(self):
        return list(self._boxes)

    @classmethod
    def id(cls, dom):
        return cls.factory(dom, dom, [], _scan=False)

    def _upgrade(self, other):
        """ The arrow class used for results involving ``self`` and ``other``. """
        mine, theirs = self.factory, getattr(other, "factory", self.factory)
        return theirs if issubclass(theirs, mine) else mine

    def then(self, *others):
        """ Sequential composition, written ``f >> g`` or ``g << f``. """
        if len(others) != 1:
            return reduce(lambda f, g: f.then(g), others, self)
        other, = others
        if not isinstance(other, Arrow):
            raise TypeError("Expected Arrow, got {!r}.".format(other))
        if self.cod != other.dom:
            raise AxiomError("{!r} does not compose with {!r}: {!r} != {!r}."
                             .format(self, other, self.cod, other.dom))
        return self._upgrade(other)(
            self.dom, other.cod, self._boxes + other._boxes, _scan=False)

    def __rshift__(self, other):
        return self.then(other)

    def __lshift__(self, other):
        return other.then(self)

    def dagger(self):
        """ Reverse the boxes, swap domain and codomain, dagger each box. """
        return self.factory(self.cod, self.dom,
                            [box.dagger() for box in reversed(self._boxes)],
                            _scan=False)

    def slice(self, i, j):
        """ The composite of ``boxes[i:j]``, with its domain and codomain. """
        if not 0 <= i <= j <= len(self):
            raise IndexError("Slice [{}:{}] out of range for arrow of length {}."
                             .format(i, j, len(self)))
        dom = self._boxes[i].dom if i < len(self) else self.cod
        cod = self._boxes[j - 1].cod if j > i else dom
        return self.factory(dom, cod, self._boxes[i:j], _scan=False)

    def __len__(self):
        return len(self._boxes)

    def __iter__(self):
        return iter(self._boxes)

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.step == -1 and key.start is None and key.stop is None:
                return self.dagger()
            if key.step not in (None, 1):
                raise IndexError("Only unit steps and [::-1] are supported.")
            start = 0 if key.start is None else key.start
            stop = len(self) if key.stop is None else key.stop
            start = start + len(self) if start < 0 else start
            stop = stop + len(self) if stop < 0 else stop
            return self.slice(start, stop)
        return self._boxes[key]

    def __eq__(self, other):
        if not isinstance(other, Arrow):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod)\
            and self._boxes == other._boxes

    def __hash__(self):
        if len(self._boxes) == 1:
            return hash(self._boxes[0])
        return hash((self.dom, self.cod, tuple(self._boxes)))

    def __repr__(self):
        if not self._boxes:
            return "{}.id({!r})".format(type(self).__name__, self.dom)
        return "{}(dom={!r}, cod={!r}, boxes={!r})".format(
            type(self).__name__, self.dom, self.cod, self._boxes)

    def __str__(self):
        if not self._boxes:
            return "Id({})".format(self.dom)
        return " >> ".join(map(str, self._boxes))


class Box(Arrow):
    """
    A generating arrow, i.e. an arrow whose list of boxes is itself.

    ``data`` is an opaque payload which takes part in equality;
    ``_dagger`` records whether this is the formal dagger of a box.
    """
    def __init__(self, name, dom, cod, data=None, _dagger=False):
        self._name, self._data, self._dagger = name, data, _dagger
        Arrow.__init__(self, dom, cod, [self], _scan=False)
        if not isinstance(dom, Ob) or not isinstance(cod, Ob):
            raise TypeError("Expected Ob instances, got {!r} and {!r}."
                            .format(dom, cod))

    @property
    def name(self):
        return self._name

    @property
    def data(self):
        return self._data

    @property
    def is_dagger(self):
        return self._dagger

    def dagger(self):
        return type(self)(self.name, self.cod, self.dom,
                          data=self.data, _dagger=not self._dagger)

    def _fields(self):
        return self.name, self.dom, self.cod, self.data, self._dagger

    def __eq__(self, other):
        if isinstance(other, Box):
            return self._fields() == other._fields()
        if isinstance(other, Arrow):
            return len(other) == 1 and other[0] == self
        return NotImplemented

    def __hash__(self):
        return hash((self.name, self.dom, self.cod, self._dagger))

    def __repr__(self):
        extra = "" if self.data is None else ", data={!r}".format(self.data)
        text = "{}({!r}, {!r}, {!r}{})".format(
            type(self).__name__, self.name,
            *((self.cod, self.dom) if self._dagger else (self.dom, self.cod)),
            extra)
        return text + ".dagger()" if self._dagger else text

    def __str__(self):
        return str(self.name) + ("[::-1]" if self._dagger else "")


Arrow.factory = Arrow


class Functor:
    """
    A functor from a free category, defined by its image on the signature.

    ``ob`` and ``ar`` are dicts or callables.  ``ar_factory`` is the target
    category of arrows: it must provide ``id`` and ``then``.

    >>> x, y, z = Ob('x'), Ob('y'), Ob('z')
    >>> f, g, h = Box('f', x, y), Box('g', y, z), Box('h', z, x)
    >>> F = Functor(ob={x: y, y: z, z: x}, ar={f: g, g: h})
    >>> F(f >> g) == F(f) >> F(g) == g >> h
    True
    """
    def __init__(self, ob, ar, ob_factory=Ob, ar_factory=Arrow):
        self._ob, self._ar = ob, ar
        self.ob_factory, self.ar_factory = ob_factory, ar_factory

    @property
    def ob(self):
        return self._ob

    @property
    def ar(self):
        return self._ar

    @staticmethod
    def _lookup(mapping, key):
        try:
            if callable(mapping) and not isinstance(mapping, dict):
                return mapping(key)
            return mapping[key]
        except KeyError:
            raise MissingMapping("No image for {!r}.".format(key)) from None

    def map_ob(self, obj):
        return self._lookup(self._ob, obj)

    def map_box(self, box):
        if box.is_dagger:
            return self.map_box(box.dagger()).dagger()
        return self._lookup(self._ar, box)

    def id(self, obj):
        return self.ar_factory.id(obj)

    def __call__(self, arrow):
        if isinstance(arrow, Box):
            return self.map_box(arrow)
        if isinstance(arrow, Arrow):
            result = self.id(self(arrow.dom))
            for box in arrow:
                result = result.then(self(box))
            return result
        if isinstance(arrow, Ob):
            return self.map_ob(arrow)
        raise TypeError("Expected Ob or Arrow, got {!r}.".format(arrow))

    def __repr__(self):
        return "{}(ob={!r}, ar={!r})".format(
            type(self).__name__, self._ob, self._ar)


Id = Arrow.id
