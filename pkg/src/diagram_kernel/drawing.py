"""
Planar layouts of diagrams, and back.

:func:`draw` places the domain on the line ``y = 0`` and the ``k``-th box at
height ``k + 1/2``, with ``y`` growing downwards, making room for each box by
pushing everything on its right further right.  :func:`read` recovers the
diagram from any progressive, generic layout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from diagram_kernel import monoidal, rigid


class MalformedGraphError(ValueError):
    """Raised by :func:`read` on layouts which are not progressive planar graphs."""


@dataclass(frozen=True)
class LayoutConfig:
    """ Grid constants: wire spacing, layer height and box height. """
    wire_spacing: float = 1.0
    layer_height: float = 1.0
    box_height: float = 0.5

    def __post_init__(self):
        if min(self.wire_spacing, self.layer_height, self.box_height) <= 0\
                or self.box_height >= self.layer_height:
            raise ValueError("Invalid layout constants {!r}.".format(self))


@dataclass(frozen=True)
class Node:
    """ A node: ``kind`` is ``'dom'``, ``'cod'`` or ``'box'``. """
    id: int
    x: float
    y: float
    kind: str
    label: str = None
    box: object = None


@dataclass(frozen=True)
class Edge:
    """ A wire from ``source`` to ``target``, drawn through ``path``. """
    source: int
    target: int
    label: object
    path: tuple = ()


@dataclass(frozen=True)
class PlanarLayout:
    nodes: tuple
    edges: tuple
    factory: type = field(default=None, compare=False)

    def node(self, i):
        return self._index()[i]

    def _index(self):
        return {node.id: node for node in self.nodes}

    @property
    def inner(self):
        return [node for node in self.nodes if node.kind == "box"]


def draw(diagram, config=None):
    """
    The planar layout of a diagram.

    >>> x, y = monoidal.Ty('x'), monoidal.Ty('y')
    >>> layout = draw(monoidal.Box('f', x, y @ y))
    >>> [(node.kind, node.x, node.y) for node in layout.nodes]
    [('dom', 0.0, 0.0), ('box', 0.0, 0.5), ('cod', -0.5, 1.0), ('cod', 0.5, 1.0)]
    """
    config = config or LayoutConfig()
    port = config.box_height / 2 / config.layer_height
    nodes, edges = [], []

    def add_node(x, y, kind, label=None, box=None):
        nodes.append([len(nodes), float(x), float(y), kind, label, box])
        return len(nodes) - 1

    def shift(threshold, delta):
        for node in nodes:
            if node[1] >= threshold:
                node[1] += delta
        for edge in edges:
            for point in edge["path"]:
                if point[0] >= threshold:
                    point[0] += delta

    scan = []
    for i, obj in enumerate(diagram.dom):
        source = add_node(i, 0, "dom", str(obj))
        scan.append(_open_edge(edges, source, obj, i, 0))
    for height, (box, offset) in enumerate(zip(diagram.boxes,
                                               diagram.offsets)):
        d, c = len(box.dom), len(box.cod)
        inputs = scan[offset:offset + d]
        xl = scan[offset - 1]["path"][0][0] if offset else -math.inf
        xr = scan[offset + d]["path"][0][0] if offset + d < len(scan)\
            else math.inf
        if d:
            middle = sum(edge["path"][0][0] for edge in inputs) / d
        elif xl > -math.inf:
            middle = xl + 1 + (c - 1) / 2
        elif xr < math.inf:
            middle = xr - 1 - (c - 1) / 2
        else:
            middle = (c - 1) / 2
        low = max(middle - (c - 1) / 2, xl + 1)
        if xr < low + c:
            shift(xr, low + c - xr)
        y = height + 0.5
        x = low + (c - 1) / 2 if c else low - 0.5
        node = add_node(x, y, "box", str(box.name), box)
        for edge in inputs:
            edge["target"] = node
            edge["path"].append([edge["path"][0][0], y - port])
        outputs = [_open_edge(edges, node, obj, low + k, y + port)
                   for k, obj in enumerate(box.cod)]
        scan[offset:offset + d] = outputs
    bottom = max(len(diagram), 1)
    for edge, obj in zip(scan, diagram.cod):
        x = edge["path"][0][0]
        edge["target"] = add_node(x, bottom, "cod", str(obj))
        edge["path"].append([x, bottom])
    sx, sy = config.wire_spacing, config.layer_height
    return PlanarLayout(
        nodes=tuple(Node(i, x * sx, y * sy, kind, label, box)
                    for i, x, y, kind, label, box in nodes),
        edges=tuple(Edge(edge["source"], edge["target"], edge["label"],
                         tuple((px * sx, py * sy) for px, py in edge["path"]))
                    for edge in sorted(edges, key=lambda e: e["order"])),
        factory=type(diagram).factory)


def _open_edge(edges, source, label, x, y):
    edge = {"source": source, "target": None, "label": label,
            "path": [[float(x), float(y)]], "order": len(edges)}
    edges.append(edge)
    return edge


def _x_at(edge, nodes, y):
    """ The abscissa of an edge at height ``y``, following its path. """
    points = list(edge.path) or [
        (nodes[edge.source].x, nodes[edge.source].y),
        (nodes[edge.target].x, nodes[edge.target].y)]
    points.sort(key=lambda point: point[1])
    if y <= points[0][1]:
        return points[0][0]
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if y0 <= y <= y1:
            return x0 if y1 == y0 else x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    return points[-1][0]


def _start(edge, nodes):
    return edge.path[0][0] if edge.path else nodes[edge.source].x


def _end(edge, nodes):
    return edge.path[-1][0] if edge.path else nodes[edge.target].x


def check_layout(layout):
    """
    The list of violated invariants, empty for valid layouts: edges must go
    strictly downwards, inner nodes must have distinct heights and outer
    nodes must border exactly one edge.
    """
    problems, nodes = [], layout._index()
    if len(nodes) != len(layout.nodes):
        problems.append("duplicate node ids")
    for edge in layout.edges:
        if edge.source not in nodes or edge.target not in nodes:
            problems.append("edge {} -> {} has a missing endpoint"
                            .format(edge.source, edge.target))
        elif not nodes[edge.source].y < nodes[edge.target].y:
            problems.append("non-progressive edge {} -> {}"
                            .format(edge.source, edge.target))
    heights = [node.y for node in layout.inner]
    if len(set(heights)) != len(heights):
        problems.append("height tie between inner nodes")
    for node in layout.nodes:
        if node.kind not in ("dom", "cod", "box"):
            problems.append("node {} has unknown kind {!r}"
                            .format(node.id, node.kind))
        if node.kind == "box":
            continue
        incident = [edge for edge in layout.edges
                    if node.id in (edge.source, edge.target)]
        direction = "source" if node.kind == "dom" else "target"
        if len(incident) != 1 or getattr(incident[0], direction) != node.id:
            problems.append("dangling outer node {}".format(node.id))
    if layout.inner:
        top, bottom = min(heights), max(heights)
        for node in layout.nodes:
            if node.kind == "dom" and node.y >= top\
                    or node.kind == "cod" and node.y <= bottom:
                problems.append("outer node {} is not on the boundary"
                                .format(node.id))
    return problems


def read(layout, factory=None):
    """
    The diagram of a progressive generic layout.

    Boxes are the inner nodes ordered by height, offsets count the wires on
    their left.

    >>> x, y = monoidal.Ty('x'), monoidal.Ty('y')
    >>> f, g = monoidal.Box('f', x, y), monoidal.Box('g', y, x)
    >>> read(draw(f @ g)) == f @ g
    True
    """
    problems = check_layout(layout)
    if problems:
        raise MalformedGraphError("; ".join(problems))
    factory = factory or layout.factory or _factory(layout)
    nodes = layout._index()
    incoming = {node.id: [] for node in layout.nodes}
    outgoing = {node.id: [] for node in layout.nodes}
    for edge in layout.edges:
        outgoing[edge.source].append(edge)
        incoming[edge.target].append(edge)
    dom_nodes = sorted((node for node in layout.nodes if node.kind == "dom"),
                       key=lambda node: node.x)
    scan = [outgoing[node.id][0] for node in dom_nodes]
    make_ty = factory.ty_factory._from_objects
    dom = make_ty(tuple(edge.label for edge in scan))
    boxes, offsets = [], []
    for node in sorted(layout.inner, key=lambda node: node.y):
        inputs = sorted(incoming[node.id], key=lambda e: _end(e, nodes))
        outputs = sorted(outgoing[node.id], key=lambda e: _start(e, nodes))
        if inputs:
            positions = [_position(scan, edge) for edge in inputs]
            if None in positions:
                raise MalformedGraphError(
                    "node {} is reached before its inputs".format(node.id))
            offset = positions[0]
            if positions != list(range(offset, offset + len(inputs))):
                raise MalformedGraphError(
                    "inputs of node {} are not adjacent".format(node.id))
        else:
            offset = sum(_x_at(edge, nodes, node.y) < node.x for edge in scan)
        box = node.box
        if box is None:
            box = monoidal.Box(node.label,
                               make_ty(tuple(e.label for e in inputs)),
                               make_ty(tuple(e.label for e in outputs)))
        if [len(box.dom), len(box.cod)] != [len(inputs), len(outputs)]:
            raise MalformedGraphError(
                "node {} has {} inputs and {} outputs but box {!r} is {!r} -> {!r}"
                .format(node.id, len(inputs), len(outputs),
                        box, box.dom, box.cod))
        boxes.append(box)
        offsets.append(offset)
        scan[offset:offset + len(inputs)] = outputs
    cod_ids = [edge.target for edge in scan]
    if any(nodes[i].kind != "cod" for i in cod_ids):
        raise MalformedGraphError("some wire does not reach the codomain")
    if sorted(cod_ids, key=lambda i: nodes[i].x) != cod_ids:
        raise MalformedGraphError("codomain wires cross")
    cod = make_ty(tuple(edge.label for edge in scan))
    try:
        return factory(dom, cod, boxes, offsets)
    except Exception as error:
        raise MalformedGraphError(
            "invalid valuation: {}".format(error)) from error


def _position(scan, edge):
    for i, other in enumerate(scan):
        if other is edge:
            return i
    return None


def _factory(layout):
    result = monoidal.Diagram
    for node in layout.inner:
        if node.box is not None and issubclass(node.box.factory, result):
            result = node.box.factory
    return result


def _fmt(value):
    text = "{:.4f}".format(value).rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


_TEX = {c: "\\" + c for c in "_&%$#{}"}


def _tex(text):
    return "".join(_TEX.get(c, c) for c in str(text))


def _ports(layout, node):
    inputs = [edge.path[-1] for edge in layout.edges
              if edge.target == node.id and edge.path]
    outputs = [edge.path[0] for edge in layout.edges
               if edge.source == node.id and edge.path]
    return sorted(inputs), sorted(outputs)


def _is_word(box):
    return box is not None and not len(box.dom) and not box.is_dagger


def _bend(box):
    """ 'cup' or 'cap' for boxes drawn as bent wires, else None. """
    if isinstance(box, rigid.Cup):
        return "cap" if box.is_dagger else "cup"
    if isinstance(box, rigid.Cap):
        return "cup" if box.is_dagger else "cap"
    return None


def _wire(edge, nodes):
    """ Cubic segments through the path points, as (start, c1, c2, end). """
    points = list(edge.path) or [(nodes[edge.source].x, nodes[edge.source].y),
                                 (nodes[edge.target].x, nodes[edge.target].y)]
    segments = []
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        middle = (y0 + y1) / 2
        segments.append(((x0, y0), (x0, middle), (x1, middle), (x1, y1)))
    return segments


def to_tikz(layout, triangles=False, config=None):
    """
    TikZ commands drawing the layout, with ``y`` pointing up as usual.

    Boxes are rectangles, cups and caps are bent wires and, when
    ``triangles`` is set, boxes with empty domain are triangles.
    """
    config = config or LayoutConfig()
    nodes, lines = layout._index(), []

    def point(x, y):
        return "({}, {})".format(_fmt(x), _fmt(-y))
    for edge in layout.edges:
        segments = _wire(edge, nodes)
        text = point(*segments[0][0])
        for _, c1, c2, end in segments:
            text += " .. controls {} and {} .. {}".format(
                point(*c1), point(*c2), point(*end))
        lines.append("\\draw {};".format(text))
    half = config.box_height / 2
    for node in layout.nodes:
        if node.kind != "box":
            anchor = "above" if node.kind == "dom" else "below"
            lines.append("\\node [{}] at {} {{{}}};".format(
                anchor, point(node.x, node.y), _tex(node.label)))
            continue
        inputs, outputs = _ports(layout, node)
        bend = _bend(node.box)
        if bend is not None:
            ends = inputs if bend == "cup" else outputs
            if len(ends) == 2:
                (x0, y0), (x1, y1) = ends
                angle = -90 if bend == "cup" else 90
                lines.append(
                    "\\draw {} to [out={}, in={}] {};".format(
                        point(x0, y0), angle, angle, point(x1, y1)))
                continue
        xs = [x for x, _ in inputs + outputs] + [node.x]
        left = min(xs) - 0.4 * config.wire_spacing
        right = max(xs) + 0.4 * config.wire_spacing
        top, bottom = node.y - half, node.y + half
        if triangles and _is_word(node.box):
            lines.append("\\draw {} -- {} -- {} -- cycle;".format(
                point(left, bottom), point(right, bottom), point(node.x, top)))
        else:
            lines.append("\\draw {} rectangle {};".format(
                point(left, top), point(right, bottom)))
        lines.append("\\node at {} {{{}}};".format(
            point(node.x, node.y), _tex(node.label)))
    return "\n".join(
        ["\\begin{tikzpicture}"] + lines + ["\\end{tikzpicture}"]) + "\n"


def to_svg(layout, triangles=False, config=None, scale=40.0):
    """
    A standalone SVG document: one ``path`` of class ``wire`` per edge.
    """
    config = config or LayoutConfig()
    nodes = layout._index()
    xs = [node.x for node in layout.nodes] or [0.0]
    ys = [node.y for node in layout.nodes] or [0.0]
    x_min, x_max = min(xs) - 1, max(xs) + 1
    y_min, y_max = min(ys) - 0.5, max(ys) + 0.5

    def px(x):
        return _fmt((x - x_min) * scale)

    def py(y):
        return _fmt((y - y_min) * scale)

    body = []
    for edge in layout.edges:
        segments = _wire(edge, nodes)
        d = "M {} {}".format(px(segments[0][0][0]), py(segments[0][0][1]))
        for _, c1, c2, end in segments:
            d += " C {} {} {} {} {} {}".format(
                px(c1[0]), py(c1[1]), px(c2[0]), py(c2[1]),
                px(end[0]), py(end[1]))
        body.append('<path class="wire" d="{}" fill="none" stroke="black"/>'
                    .format(d))
    half = config.box_height / 2
    for node in layout.nodes:
        if node.kind != "box":
            dy = -0.15 if node.kind == "dom" else 0.35
            body.append('<text x="{}" y="{}" text-anchor="middle">{}</text>'
                        .format(px(node.x), py(node.y + dy),
                                escape(str(node.label))))
            continue
        inputs, outputs = _ports(layout, node)
        bend = _bend(node.box)
        if bend is not None:
            ends = inputs if bend == "cup" else outputs
            if len(ends) == 2:
                (x0, y0), (x1, y1) = ends
                dy = half if bend == "cup" else -half
                body.append(
                    '<path class="{}" d="M {} {} C {} {} {} {} {} {}" '
                    'fill="none" stroke="black"/>'.format(
                        bend, px(x0), py(y0), px(x0), py(y0 + dy),
                        px(x1), py(y1 + dy), px(x1), py(y1)))
                continue
        xs = [x for x, _ in inputs + outputs] + [node.x]
        left = min(xs) - 0.4 * config.wire_spacing
        right = max(xs) + 0.4 * config.wire_spacing
        top, bottom = node.y - half, node.y + half
        if triangles and _is_word(node.box):
            body.append(
                '<polygon class="word" points="{},{} {},{} {},{}" '
                'fill="white" stroke="black"/>'.format(
                    px(left), py(bottom), px(right), py(bottom),
                    px(node.x), py(top)))
        else:
            body.append(
                '<rect class="box" x="{}" y="{}" width="{}" height="{}" '
                'fill="white" stroke="black"/>'.format(
                    px(left), py(top), _fmt((right - left) * scale),
                    _fmt((bottom - top) * scale)))
        body.append(
            '<text x="{}" y="{}" text-anchor="middle" '
            'dominant-baseline="middle">{}</text>'.format(
                px(node.x), py(node.y), escape(str(node.label))))
    width = _fmt((x_max - x_min) * scale)
    height = _fmt((y_max - y_min) * scale)
    head = ('<svg xmlns="http://www.w3.org/2000/svg" width={} height={} '
            'viewBox="0 0 {} {}">'.format(quoteattr(width), quoteattr(height),
                                          width, height))
    return "\n".join([head] + body + ["</svg>"]) + "\n"
