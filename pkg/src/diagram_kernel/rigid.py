"""
Free rigid categories.

Objects are lists of pairs ``(name, z)`` where the winding number ``z``
counts adjoints: ``Ob(x, z).l == Ob(x, z - 1)`` and ``Ob(x, z).r == Ob(x, z + 1)``.
Cups and caps witness the adjunctions, and snake removal computes normal forms.
"""
from __future__ import annotations

from diagram_kernel import cat, monoidal


class Ob(cat.Ob):
    """
    An atomic rigid object: a name with an adjoint winding number.

    >>> x = Ob('x')
    >>> x.l, x.r, x.l.r == x
    (Ob('x', z=-1), Ob('x', z=1), True)
    """
    def __init__(self, name, z=0):
        if not isinstance(z, int):
            raise TypeError("Expected integer winding number, got {!r}.".format(z))
        super().__init__(name)
        self._z = z

    @property
    def z(self):
        return self._z

    @property
    def l(self):
        return Ob(self.name, self.z - 1)

    @property
    def r(self):
        return Ob(self.name, self.z + 1)

    def _key(self):
        # z == 0 atoms coincide with plain objects of the same name
        return self.name if not self.z else (self.name, self.z)

    def __repr__(self):
        if not self.z:
            return "Ob({!r})".format(self.name)
        return "Ob({!r}, z={})".format(self.name, self.z)

    def __str__(self):
        suffix = ".l" * -self.z if self.z < 0 else ".r" * self.z
        return str(self.name) + suffix


def _rigid_ob(obj):
    if isinstance(obj, Ob):
        return obj
    if isinstance(obj, cat.Ob):
        return Ob(obj.name)
    return Ob(obj)


class Ty(monoidal.Ty):
    """
    A pregroup type, i.e. a list of rigid objects.

    Adjoints reverse the list: ``(x @ y).l == y.l @ x.l``.

    >>> n, s = Ty('n'), Ty('s')
    >>> (n @ s).l == s.l @ n.l
    True
    >>> n.r.l == n == n.l.r
    True
    """
    def __init__(self, *objects):
        super().__init__(*map(_rigid_ob, monoidal._flat(objects)))

    @property
    def l(self):
        return self._from_objects(tuple(obj.l for obj in reversed(self)))

    @property
    def r(self):
        return self._from_objects(tuple(obj.r for obj in reversed(self)))

    def __repr__(self):
        return "Ty({})".format(", ".join(
            repr(obj.name) if not obj.z else repr(obj) for obj in self))

    def __str__(self):
        return " @ ".join(map(str, self)) or "Ty()"


class Diagram(monoidal.Diagram):
    """
    A diagram in a free rigid category, with cups and caps for every type.

    >>> n = Ty('n')
    >>> snake = Diagram.id(n) @ Cap(n.r) >> Cup(n) @ Diagram.id(n)
    >>> snake.normal_form() == Diagram.id(n)
    True
    """
    ty_factory = Ty

    @classmethod
    def cups(cls, left, right=None):
        """ Nested cups ``left @ left.r -> Ty()``, innermost first. """
        right = left.r if right is None else right
        if right != left.r:
            raise cat.AxiomError("{!r} is not the right adjoint of {!r}."
                                 .format(right, left))
        result = cls.id(left @ right)
        for k in reversed(range(len(left))):
            atom = left[k:k + 1]
            result = result >> cls.id(left[:k]) @ Cup(atom)\
                @ cls.id(left[:k].r)
        return result

    @classmethod
    def caps(cls, left, right=None):
        """ Nested caps ``Ty() -> left @ left.l``, outermost first. """
        right = left.l if right is None else right
        if right != left.l:
            raise cat.AxiomError("{!r} is not the left adjoint of {!r}."
                                 .format(right, left))
        result = cls.id(cls.ty_factory())
        for k in range(len(left)):
            atom = left[k:k + 1]
            result = result >> cls.id(left[:k]) @ Cap(atom)\
                @ cls.id(left[:k].l)
        return result

    def find_snake(self):
        """
        The indices ``(cap, cup)`` of the first snake, scanning caps top-down.

        A snake is a cap whose left output feeds the right input of a cup, or
        whose right output feeds the left input of a cup.
        """
        _, outputs = self.wiring()
        for i, box in enumerate(self.boxes):
            if not isinstance(box, Cap) or box.is_dagger:
                continue
            (tgt0, port0), (tgt1, port1) = outputs[i]
            for tgt, port, expected in ((tgt0, port0, 1), (tgt1, port1, 0)):
                if tgt < len(self) and port == expected\
                        and isinstance(self.boxes[tgt], Cup)\
                        and not self.boxes[tgt].is_dagger:
                    return i, tgt
        return None

    def _below(self, cap, cup):
        """
        The cap with the boxes between cap and cup lying on the side of the
        snake wire opposite the cup.  The others can move above the cap.
        """
        port = 0 if self.wiring()[1][cap][0][0] == cup else 1
        below = {cap}
        scan = [None] * len(self.dom)
        for k, (box, off) in enumerate(zip(self.boxes, self.offsets)):
            if cap < k < cup:
                wire = scan.index((cap, port))
                left = off + len(box.dom) <= wire
                if left == bool(port):
                    below.add(k)
            scan[off:off + len(box.dom)] = [(k, i) for i in range(len(box.cod))]
        return below

    def snake_removal(self):
        """
        Yield the rewriting steps of snake removal.

        Each snake is made adjacent by interchangers (boxes on the cap side
        of the snake wire move below the cup, the others above the cap),
        then replaced by an identity wire.
        """
        diagram = self
        while True:
            snake = diagram.find_snake()
            if snake is None:
                return
            cap, cup = snake
            below = diagram._below(cap, cup)
            middle = range(cap + 1, cup)
            order = list(range(cap))\
                + [k for k in middle if k not in below] + [cap, cup]\
                + [k for k in middle if k in below]\
                + list(range(cup + 1, len(diagram)))
            for diagram in diagram._reorder(order):
                yield diagram
            k = order.index(cap)
            boxes, offsets = diagram.boxes, diagram.offsets
            del boxes[k:k + 2], offsets[k:k + 2]
            diagram = diagram.factory(diagram.dom, diagram.cod, boxes, offsets)
            yield diagram

    def rewrite_steps(self, left=False):
        """ Snake removal steps, then interchangers. """
        diagram = self
        for diagram in self.snake_removal():
            yield diagram
        yield from monoidal.Diagram.rewrite_steps(diagram, left=left)

    def snake_normal_form(self, left=False, max_steps=None):
        """ Remove all snakes, then take the monoidal normal form. """
        diagram = self
        for diagram in self.snake_removal():
            pass
        return monoidal.Diagram.normal_form(
            diagram, left=left, max_steps=max_steps)

    normal_form = snake_normal_form


class Box(monoidal.Box, Diagram):
    """ A box in a rigid signature. """
    def __init__(self, name, dom, cod, data=None, _dagger=False):
        monoidal.Box.__init__(self, name, dom, cod, data=data, _dagger=_dagger)


class Cup(Box):
    """
    The counit ``x @ x.r -> Ty()`` of the adjunction for an atomic type ``x``.

    >>> Cup(Ty('n')).dom
    Ty('n', Ob('n', z=1))
    """
    def __init__(self, x, _dagger=False):
        x = Ty(x) if not isinstance(x, monoidal.Ty) else Ty(*x)
        if len(x) != 1:
            raise ValueError("Cup expects an atomic type, got {!r}.".format(x))
        self._x = x
        dom, cod = x @ x.r, Ty()
        if _dagger:
            dom, cod = cod, dom
        super().__init__("CUP", dom, cod, _dagger=_dagger)

    @property
    def x(self):
        return self._x

    def dagger(self):
        return Cup(self.x, _dagger=not self.is_dagger)

    def __repr__(self):
        text = "Cup({!r})".format(self.x)
        return text + ".dagger()" if self.is_dagger else text


class Cap(Box):
    """
    The unit ``Ty() -> x @ x.l`` of the adjunction for an atomic type ``x``.

    >>> Cap(Ty('n')).cod
    Ty('n', Ob('n', z=-1))
    """
    def __init__(self, x, _dagger=False):
        x = Ty(x) if not isinstance(x, monoidal.Ty) else Ty(*x)
        if len(x) != 1:
            raise ValueError("Cap expects an atomic type, got {!r}.".format(x))
        self._x = x
        dom, cod = Ty(), x @ x.l
        if _dagger:
            dom, cod = cod, dom
        super().__init__("CAP", dom, cod, _dagger=_dagger)

    @property
    def x(self):
        return self._x

    def dagger(self):
        return Cap(self.x, _dagger=not self.is_dagger)

    def __repr__(self):
        text = "Cap({!r})".format(self.x)
        return text + ".dagger()" if self.is_dagger else text


Diagram.factory = Diagram


class Functor(monoidal.Functor):
    """
    A rigid functor: images are given on objects with ``z == 0`` and boxes,
    adjoints go to adjoints and cups and caps go to the target's cups and caps.

    ``ar_factory`` must provide ``id``, ``then``, ``tensor``, ``cups`` and
    ``caps``, and objects of the target must have ``l`` and ``r``.
    """
    def __init__(self, ob, ar, ob_factory=Ty, ar_factory=Diagram):
        super().__init__(ob, ar, ob_factory=ob_factory, ar_factory=ar_factory)

    def map_ob(self, obj):
        z = getattr(obj, "z", 0)
        if not z:
            return super().map_ob(obj)
        result = self.map_ob(Ob(obj.name))
        for _ in range(abs(z)):
            result = result.l if z < 0 else result.r
        return result

    def cups(self, obj):
        return self.ar_factory.cups(obj)

    def caps(self, obj):
        return self.ar_factory.caps(obj)

    def map_box(self, box):
        if isinstance(box, (Cup, Cap)):
            if box.is_dagger:
                return self.map_box(box.dagger()).dagger()
            x = self(box.x)
            return self.cups(x) if isinstance(box, Cup) else self.caps(x)
        return super().map_box(box)


def snake_normal_form(diagram, left=False, max_steps=None):
    """ Snake removal followed by the interchanger normal form. """
    return Diagram.snake_normal_form(diagram, left=left, max_steps=max_steps)


Id = Diagram.id
cups, caps = Diagram.cups, Diagram.caps
