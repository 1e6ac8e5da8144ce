"""
JSON encoding of objects, types, boxes, arrows, diagrams, tensors,
grammars, layouts and functor descriptions.

Every value is encoded as a dict with a single key naming its kind, e.g.
``{"ty": ["x", "y"]}``, and ``decode(encode(value)) == value``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from diagram_kernel import cartesian, cat, circuit, drawing, grammar, monoidal,\
    rigid, tensor


class DecodeError(ValueError):
    """Raised on JSON which does not encode a value."""


CATEGORIES = {
    "monoidal": monoidal.Diagram,
    "rigid": rigid.Diagram,
    "cartesian": cartesian.Diagram,
    "circuit": circuit.Circuit,
}


def _category(diagram_class):
    for name in ("circuit", "cartesian", "rigid"):
        if issubclass(diagram_class, CATEGORIES[name]):
            return name
    return "monoidal"


def _complex(value):
    value = complex(value)
    return [value.real, value.imag]


def _uncomplex(pair):
    if not isinstance(pair, list) or len(pair) != 2:
        raise DecodeError("Expected a [re, im] pair, got {!r}.".format(pair))
    return complex(*pair)


def encode_atom(obj):
    if isinstance(obj, rigid.Ob):
        return {"name": obj.name, "z": obj.z}
    return obj.name


def decode_atom(data):
    if isinstance(data, dict):
        if set(data) != {"name", "z"}:
            raise DecodeError("Bad atom {!r}.".format(data))
        return rigid.Ob(data["name"], data["z"])
    return cat.Ob(data)


def encode_type(ty):
    if isinstance(ty, tensor.Dim):
        return {"dim": list(ty.dims)}
    if isinstance(ty, monoidal.PRO):
        return {"pro": len(ty)}
    if isinstance(ty, monoidal.Ty):
        result = {"ty": [encode_atom(obj) for obj in ty]}
        if isinstance(ty, rigid.Ty):
            result["rigid"] = True
        return result
    if isinstance(ty, cat.Ob):
        return {"ob": {"name": ty.name}} if not isinstance(ty, rigid.Ob)\
            else {"ob": {"name": ty.name, "z": ty.z}}
    raise TypeError("Cannot encode {!r}.".format(ty))


def decode_type(data):
    kind, body = _unwrap(data)
    if kind == "dim":
        return tensor.Dim(*body)
    if kind == "pro":
        return monoidal.PRO(body)
    if kind == "ty":
        atoms = [decode_atom(atom) for atom in body]
        if data.get("rigid"):
            return rigid.Ty(*atoms)
        return monoidal.Ty(*atoms)
    if kind == "ob":
        if "z" in body:
            return rigid.Ob(body["name"], body["z"])
        return cat.Ob(body["name"])
    raise DecodeError("Expected a type, got {!r}.".format(data))


TAGS = {"ob", "ty", "pro", "dim", "box", "cup", "cap", "word", "swap", "copy",
        "delete", "gate", "ket", "bra", "scalar", "arrow", "diagram",
        "tensor", "grammar", "layout", "functor"}


def _unwrap(data):
    if not isinstance(data, dict) or not data:
        raise DecodeError("Expected a tagged JSON object, got {!r}."
                          .format(data))
    tags = [key for key in data if key in TAGS]
    if len(tags) != 1:
        raise DecodeError("Expected exactly one tag in {!r}.".format(data))
    return tags[0], data[tags[0]]


def _encode_matrix(array):
    return [[_complex(value) for value in row] for row in array]


def encode_box(box):
    if isinstance(box, circuit.Box):
        return _encode_circuit_box(box)
    body = {"name": box.name, "dom": encode_type(box.dom),
            "cod": encode_type(box.cod), "data": box.data,
            "dagger": box.is_dagger}
    kind = "box"
    if isinstance(box, rigid.Cup):
        kind, body = "cup", {"x": encode_type(box.x), "dagger": box.is_dagger}
    elif isinstance(box, rigid.Cap):
        kind, body = "cap", {"x": encode_type(box.x), "dagger": box.is_dagger}
    elif isinstance(box, grammar.Word):
        kind = "word"
    elif isinstance(box, cartesian.Swap):
        kind, body = "swap", {"left": encode_type(box.left),
                              "right": encode_type(box.right)}
    elif isinstance(box, (cartesian.Copy, cartesian.Delete)):
        kind = "copy" if isinstance(box, cartesian.Copy) else "delete"
        body = {"x": encode_type(box.x), "dagger": box.is_dagger}
    elif isinstance(box, monoidal.Box):
        body["category"] = _category(box.factory)
    return {kind: body}


def _encode_circuit_box(box):
    if isinstance(box, circuit.Ket):
        return {"ket": list(box.bits)}
    if isinstance(box, circuit.Bra):
        return {"bra": list(box.bits)}
    if isinstance(box, circuit.Scalar):
        return {"scalar": _complex(box.value)}
    if isinstance(box, circuit.Cup):
        return {"cup": {"x": {"pro": 1}, "dagger": box.is_dagger,
                        "circuit": True}}
    if isinstance(box, circuit.Cap):
        return {"cap": {"x": {"pro": 1}, "dagger": box.is_dagger,
                        "circuit": True}}
    if isinstance(box, circuit.Rz):
        return {"gate": {"name": type(box).__name__, "phase": box.phase}}
    if isinstance(box, circuit.Gate):
        base = box.dagger() if box.is_dagger else box
        body, known = {"name": box.name, "dagger": box.is_dagger},\
            circuit.GATES.get(box.name)
        if known is None or base.data is not None\
                or not np.array_equal(known.unitary, base.unitary):
            body.update(n_qubits=base.n_qubits, data=base.data,
                        unitary=_encode_matrix(base.unitary))
        return {"gate": body}
    return {"gate": {"name": box.name, "dom": len(box.dom),
                     "cod": len(box.cod), "data": box.data,
                     "dagger": box.is_dagger,
                     "matrix": _encode_matrix(box.array)}}


def decode_box(data):
    kind, body = _unwrap(data)
    if kind == "ket":
        return circuit.Ket(*body)
    if kind == "bra":
        return circuit.Bra(*body)
    if kind == "scalar":
        return circuit.Scalar(_uncomplex(body))
    if kind == "gate":
        return _decode_gate(body)
    if kind in ("cup", "cap"):
        if body.get("circuit"):
            cls = circuit.Cup if kind == "cup" else circuit.Cap
            return cls(_dagger=body["dagger"])
        cls = rigid.Cup if kind == "cup" else rigid.Cap
        return cls(decode_type(body["x"]), _dagger=body["dagger"])
    if kind == "swap":
        return cartesian.Swap(decode_type(body["left"]),
                              decode_type(body["right"]))
    if kind in ("copy", "delete"):
        cls = cartesian.Copy if kind == "copy" else cartesian.Delete
        return cls(decode_type(body["x"]), _dagger=body["dagger"])
    if kind == "word":
        ty = decode_type(body["dom" if body["dagger"] else "cod"])
        word = grammar.Word(body["name"], ty, data=body["data"])
        return word.dagger() if body["dagger"] else word
    if kind == "box":
        dom, cod = decode_type(body["dom"]), decode_type(body["cod"])
        if "category" not in body:
            cls = cat.Box
        else:
            cls = {"monoidal": monoidal.Box, "rigid": rigid.Box,
                   "cartesian": cartesian.Box}[body["category"]]
        box = cls(body["name"], cod, dom, data=body["data"])\
            if body["dagger"] else cls(body["name"], dom, cod, data=body["data"])
        return box.dagger() if body["dagger"] else box
    raise DecodeError("Expected a box, got {!r}.".format(data))


def _decode_gate(body):
    name = body["name"]
    if name in circuit.PARAMETRIZED:
        return circuit.gate(name, body["phase"])
    if "matrix" in body:
        matrix = [[_uncomplex(v) for v in row] for row in body["matrix"]]
        box = circuit.Box(name, body["dom"], body["cod"], matrix,
                          data=body["data"], _dagger=body["dagger"])
        return box
    if "unitary" in body:
        unitary = [[_uncomplex(v) for v in row] for row in body["unitary"]]
        result = circuit.Gate(name, body["n_qubits"], unitary,
                              data=body.get("data"))
    else:
        result = circuit.gate(name)
    return result.dagger() if body.get("dagger") else result


def encode_diagram(diagram):
    if isinstance(diagram, monoidal.Diagram):
        return {"diagram": {
            "dom": encode_type(diagram.dom), "cod": encode_type(diagram.cod),
            "boxes": [encode_box(box) for box in diagram.boxes],
            "offsets": diagram.offsets,
            "category": _category(type(diagram).factory)}}
    return {"arrow": {
        "dom": encode_type(diagram.dom), "cod": encode_type(diagram.cod),
        "boxes": [encode_box(box) for box in diagram.boxes]}}


def decode_diagram(data):
    kind, body = _unwrap(data)
    if kind == "arrow":
        return cat.Arrow(decode_type(body["dom"]), decode_type(body["cod"]),
                         [decode_box(box) for box in body["boxes"]])
    if kind != "diagram":
        raise DecodeError("Expected a diagram, got {!r}.".format(data))
    factory = CATEGORIES[body.get("category", "monoidal")]
    dom = decode_type(body["dom"])
    cod = decode_type(body["cod"]) if "cod" in body else None
    return factory(dom, cod, [decode_box(box) for box in body["boxes"]],
                   list(body["offsets"]))


def encode_tensor(value):
    flat = value.flat.tolist()
    if value.semiring is tensor.COMPLEX:
        flat = [_complex(x) for x in flat]
    elif value.semiring is tensor.BOOL:
        flat = [bool(x) for x in flat]
    return {"tensor": {"dom": list(value.dom.dims), "cod": list(value.cod.dims),
                       "semiring": value.semiring.name, "array": flat}}


def decode_tensor(data):
    kind, body = _unwrap(data)
    if kind != "tensor":
        raise DecodeError("Expected a tensor, got {!r}.".format(data))
    semiring = tensor.SEMIRINGS.get(body["semiring"])
    if semiring is None:
        raise DecodeError("Unknown semiring {!r}.".format(body["semiring"]))
    array = body["array"]
    if semiring is tensor.COMPLEX:
        array = [_uncomplex(x) for x in array]
    return tensor.Tensor(tensor.Dim(*body["dom"]), tensor.Dim(*body["cod"]),
                         array, semiring)


def encode_grammar(value):
    return {"grammar": {
        "vocab": list(value.vocab), "basic": list(value.basic),
        "s": value.sentence,
        "dict": [[word, [[obj.name, obj.z] for obj in ty]]
                 for word, ty in value.dictionary]}}


def decode_grammar(data):
    kind, body = _unwrap(data)
    if kind != "grammar":
        raise DecodeError("Expected a grammar, got {!r}.".format(data))
    return grammar.Grammar(body["vocab"], body["basic"], body["s"],
                           [(word, [tuple(atom) for atom in ty])
                            for word, ty in body["dict"]])


def encode_layout(layout):
    return {"layout": {
        "nodes": [{"id": node.id, "x": node.x, "y": node.y, "kind": node.kind,
                   "label": node.label,
                   "box": None if node.box is None else encode_box(node.box)}
                  for node in layout.nodes],
        "edges": [{"source": edge.source, "target": edge.target,
                   "label": encode_atom(edge.label),
                   "path": [list(point) for point in edge.path]}
                  for edge in layout.edges],
        "category": None if layout.factory is None
        else _category(layout.factory)}}


def decode_layout(data):
    kind, body = _unwrap(data)
    if kind != "layout":
        raise DecodeError("Expected a layout, got {!r}.".format(data))
    nodes = tuple(drawing.Node(
        node["id"], float(node["x"]), float(node["y"]), node["kind"],
        node.get("label"),
        None if node.get("box") is None else decode_box(node["box"]))
        for node in body["nodes"])
    edges = tuple(drawing.Edge(
        edge["source"], edge["target"], decode_atom(edge["label"]),
        tuple((float(x), float(y)) for x, y in edge.get("path", [])))
        for edge in body["edges"])
    category = body.get("category")
    return drawing.PlanarLayout(
        nodes, edges, None if category is None else CATEGORIES[category])


@dataclass
class FunctorSpec:
    """
    A functor described by names: ``ob`` maps atom names to dimensions,
    arities or widths and ``ar`` maps box names to their images.

    ``kind`` is ``'tensor'`` (images are flat arrays), ``'python'`` (images
    are built-in function names) or ``'circuit'`` (images are circuits).
    """
    kind: str
    ob: dict
    ar: dict
    semiring: str = None
    extra: dict = field(default_factory=dict)

    def build(self):
        def ob(obj):
            if obj.name not in self.ob:
                raise cat.MissingMapping("No image for {!r}.".format(obj))
            return self.ob[obj.name]

        def ar(box):
            if box.name not in self.ar:
                raise cat.MissingMapping("No image for {!r}.".format(box))
            return self.ar[box.name]
        if self.kind == "tensor":
            return tensor.TensorFunctor(ob, ar, semiring=self.semiring
                                        or tensor.REAL)
        if self.kind == "python":
            return cartesian.PythonFunctor(ob, ar)
        if self.kind == "circuit":
            return circuit.CircuitFunctor(ob, ar)
        raise DecodeError("Unknown functor kind {!r}.".format(self.kind))


def encode_functor(spec):
    body = {"kind": spec.kind, "ob": dict(spec.ob)}
    if spec.kind == "tensor":
        body["semiring"] = spec.semiring or "real"
        ar = {}
        for name, value in spec.ar.items():
            flat = np.asarray(value).ravel().tolist()
            ar[name] = [_complex(x) for x in flat]\
                if spec.semiring == "complex" else flat
        body["ar"] = ar
    elif spec.kind == "circuit":
        body["ar"] = {name: encode_diagram(value)
                      for name, value in spec.ar.items()}
    else:
        body["ar"] = dict(spec.ar)
    return {"functor": body}


def decode_functor(data):
    kind, body = _unwrap(data)
    if kind != "functor":
        raise DecodeError("Expected a functor, got {!r}.".format(data))
    functor_kind = body.get("kind", "tensor")
    ar = dict(body.get("ar", {}))
    semiring = body.get("semiring")
    if functor_kind == "tensor" and semiring == "complex":
        ar = {name: [_uncomplex(x) if isinstance(x, list) else x
                     for x in value] for name, value in ar.items()}
    if functor_kind == "circuit":
        ar = {name: decode_diagram(value) for name, value in ar.items()}
    return FunctorSpec(functor_kind, dict(body.get("ob", {})), ar, semiring)


def encode(value):
    """ The JSON-compatible encoding of a value. """
    if isinstance(value, cat.Box):
        return encode_box(value)
    if isinstance(value, cat.Arrow):
        return encode_diagram(value)
    if isinstance(value, cat.Ob):
        return encode_type(value)
    if isinstance(value, tensor.Tensor):
        return encode_tensor(value)
    if isinstance(value, grammar.Grammar):
        return encode_grammar(value)
    if isinstance(value, drawing.PlanarLayout):
        return encode_layout(value)
    if isinstance(value, FunctorSpec):
        return encode_functor(value)
    raise TypeError("Cannot encode {!r}.".format(value))


def decode(data):
    """ The value encoded by some JSON data. """
    kind, _ = _unwrap(data)
    if kind in ("ob", "ty", "pro", "dim"):
        return decode_type(data)
    if kind in ("arrow", "diagram"):
        return decode_diagram(data)
    if kind == "tensor":
        return decode_tensor(data)
    if kind == "grammar":
        return decode_grammar(data)
    if kind == "layout":
        return decode_layout(data)
    if kind == "functor":
        return decode_functor(data)
    return decode_box(data)


def dumps(value, **params):
    """ Deterministic JSON text: sorted keys, compact separators. """
    params.setdefault("sort_keys", True)
    return json.dumps(encode(value), **params)


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise DecodeError(str(error)) from error
    return decode(data)
