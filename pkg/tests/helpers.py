"""
Random generators and brute-force oracles shared by the test modules.

Generators take a ``random.Random`` instance so that hypothesis
(``st.randoms()``) and seeded loops drive the same code.
"""
import itertools
import math

import numpy as np

from diagram_kernel import cartesian, cat, circuit, monoidal, rigid
from diagram_kernel.tensor import BOOL, COMPLEX, REAL, Dim, Tensor, TensorFunctor

ATOMS = ("x", "y", "z")


def random_arrow(rng, length=None, obs=ATOMS, prefix="f"):
    """ A random composable arrow in the free category on ``obs``. """
    length = rng.randint(0, 4) if length is None else length
    start = cat.Ob(rng.choice(obs))
    boxes, current = [], start
    for i in range(length):
        target = cat.Ob(rng.choice(obs))
        boxes.append(cat.Box("{}{}".format(prefix, rng.randint(0, 3)),
                             current, target))
        current = target
    return cat.Arrow(start, current, boxes)


def random_arrow_from(rng, dom, length=None, obs=ATOMS):
    arrow = random_arrow(rng, length, obs)
    if not len(arrow):
        return cat.Arrow.id(dom)
    first = arrow[0]
    head = cat.Box(first.name, dom, first.cod, _dagger=rng.random() < 0.3)
    if head.is_dagger:
        head = cat.Box(first.name, first.cod, dom).dagger()
    return head >> arrow[1:] if len(arrow) > 1 else head >> cat.Arrow.id(first.cod)


def random_type(rng, length, atoms=ATOMS[:2], ty=monoidal.Ty):
    return ty(*[rng.choice(atoms) for _ in range(length)])


def random_diagram(rng, n_boxes=None, max_wires=4, atoms=ATOMS[:2],
                   module=monoidal, allow_scalars=True, prefix="f", dom=None):
    """
    A random diagram with at most ``max_wires`` wires at any height.
    Box names are distinct within the diagram.
    """
    n_boxes = rng.randint(0, 6) if n_boxes is None else n_boxes
    if dom is None:
        dom = random_type(rng, rng.randint(0, max_wires), atoms, module.Ty)
    scan, boxes, offsets = dom, [], []
    for i in range(n_boxes):
        width = len(scan)
        d = rng.randint(0, width)
        offset = rng.randint(0, width - d)
        c = rng.randint(0, max_wires - (width - d))
        if not allow_scalars and not d and not c:
            c = 1 if width < max_wires else 0
            d = 0 if c else 1
            offset = min(offset, width - d)
        cod = random_type(rng, c, atoms, module.Ty)
        box = module.Box("{}{}".format(prefix, i), scan[offset:offset + d], cod)
        boxes.append(box)
        offsets.append(offset)
        scan = scan[:offset] @ cod @ scan[offset + d:]
    return module.Diagram(dom, None, boxes, offsets)


def random_connected_diagram(rng, n_boxes, max_wires=4, tries=10000):
    for _ in range(tries):
        diagram = random_diagram(rng, n_boxes, max_wires, allow_scalars=False)
        if diagram.is_boundary_connected():
            return diagram
    raise RuntimeError("No boundary-connected diagram found.")


RIGID_ATOMS = ("n", "s")


def random_rigid_atom(rng):
    return rigid.Ty(rigid.Ob(rng.choice(RIGID_ATOMS), rng.choice((-1, 0, 0, 1))))


def random_rigid_diagram(rng, n_moves=None, max_wires=5, prefix="g"):
    """
    A random rigid diagram built from boxes, cups, caps and yanked wires.
    """
    n_moves = rng.randint(0, 6) if n_moves is None else n_moves
    width = rng.randint(0, 3)
    dom = rigid.Ty()
    for _ in range(width):
        dom = dom @ random_rigid_atom(rng)
    diagram = rigid.Diagram.id(dom)
    for i in range(n_moves):
        scan = diagram.cod
        move = rng.choice(("box", "box", "cup", "cap", "snake", "snake"))
        if move == "cup":
            pairs = [k for k in range(len(scan) - 1)
                     if scan[k + 1:k + 2] == scan[k:k + 1].r]
            if pairs:
                k = rng.choice(pairs)
                diagram = diagram >> rigid.Diagram.id(scan[:k])\
                    @ rigid.Cup(scan[k:k + 1]) @ rigid.Diagram.id(scan[k + 2:])
                continue
            move = "box"
        if move == "cap" and len(scan) + 2 <= max_wires:
            k = rng.randint(0, len(scan))
            diagram = diagram >> rigid.Diagram.id(scan[:k])\
                @ rigid.Cap(random_rigid_atom(rng)) @ rigid.Diagram.id(scan[k:])
            continue
        if move == "snake" and len(scan) and len(scan) + 2 <= max_wires:
            k = rng.randrange(len(scan))
            a = scan[k:k + 1]
            if rng.random() < 0.5:
                yank = rigid.Diagram.id(a) @ rigid.Cap(a.r)\
                    >> rigid.Cup(a) @ rigid.Diagram.id(a)
            else:
                yank = rigid.Cap(a) @ rigid.Diagram.id(a)\
                    >> rigid.Diagram.id(a) @ rigid.Cup(a.l)
            diagram = diagram >> rigid.Diagram.id(scan[:k]) @ yank\
                @ rigid.Diagram.id(scan[k + 1:])
            continue
        d = rng.randint(0, min(2, len(scan)))
        k = rng.randint(0, len(scan) - d)
        c = rng.randint(0, max(0, min(2, max_wires - len(scan) + d)))
        cod = rigid.Ty()
        for _ in range(c):
            cod = cod @ random_rigid_atom(rng)
        box = rigid.Box("{}{}".format(prefix, i), scan[k:k + d], cod)
        diagram = diagram >> rigid.Diagram.id(scan[:k]) @ box\
            @ rigid.Diagram.id(scan[k + d:])
    return diagram


def random_array(rng, size, semiring=REAL):
    generator = np.random.default_rng(rng.getrandbits(32))
    if semiring is BOOL:
        return generator.random(size) < 0.5
    if semiring is COMPLEX:
        return generator.normal(size=size) + 1j * generator.normal(size=size)
    return generator.normal(size=size)


def random_tensor_functor(rng, diagram, max_dim=3, semiring=REAL):
    """ Random dimensions for atoms and random arrays for boxes. """
    names = {obj.name for obj in diagram.dom} | {obj.name for obj in diagram.cod}
    for box in diagram.boxes:
        names |= {obj.name for obj in box.dom} | {obj.name for obj in box.cod}
    ob = {cat.Ob(name): rng.randint(1, max_dim) for name in sorted(names, key=str)}

    def size(ty):
        return math.prod(ob[cat.Ob(obj.name)] for obj in ty)
    ar = {}
    for box in diagram.boxes:
        if isinstance(box, (rigid.Cup, rigid.Cap)):
            continue
        base = box.dagger() if box.is_dagger else box
        if base not in ar:
            ar[base] = random_array(rng, size(base.dom) * size(base.cod),
                                    semiring)
    return TensorFunctor(ob, ar, semiring=semiring)


def random_dim(rng, max_size, max_len=3):
    dims, size = [], 1
    for _ in range(rng.randint(0, max_len)):
        d = rng.randint(1, 4)
        if size * d > max_size:
            break
        dims.append(d)
        size *= d
    return Dim(*dims)


def random_tensor(rng, dom, cod, semiring=REAL):
    return Tensor(dom, cod, random_array(rng, dom.size * cod.size, semiring),
                  semiring)


def naive_contract(f, g, semiring):
    """ result[a, c] = sum_b f[a, b] g[b, c] over flat row-major indices. """
    m, k, n = f.dom.size, f.cod.size, g.cod.size
    fv, gv = list(f.flat), list(g.flat)
    out = []
    for a in range(m):
        for c in range(n):
            total = semiring.zero
            for b in range(k):
                total = semiring.add(total, semiring.mul(fv[a * k + b],
                                                         gv[b * n + c]))
            out.append(total)
    return out


def naive_kron(f, g, semiring):
    """ Kronecker product of the matrices of ``f`` and ``g``, flattened. """
    m, n = f.dom.size, f.cod.size
    p, q = g.dom.size, g.cod.size
    fv, gv = list(f.flat), list(g.flat)
    out = []
    for a, c in itertools.product(range(m), range(p)):
        for b, d in itertools.product(range(n), range(q)):
            out.append(semiring.mul(fv[a * n + b], gv[c * q + d]))
    return out


ONE_QUBIT = ("H", "X", "Y", "Z", "S", "T")
TWO_QUBIT = ("CX", "CZ", "SWAP")


def random_gate_circuit(rng, n_qubits, n_gates):
    """ Gates only, on ``Ket(0, ..., 0)``. """
    result = circuit.Ket(*[0] * n_qubits)
    for _ in range(n_gates):
        choice = rng.random()
        if n_qubits >= 2 and choice < 0.3:
            gate = circuit.GATES[rng.choice(TWO_QUBIT)]
        elif choice < 0.45:
            gate = rng.choice((circuit.Rx, circuit.Rz))(
                round(rng.uniform(-1, 1), 3))
        else:
            gate = circuit.GATES[rng.choice(ONE_QUBIT)]
        if rng.random() < 0.2:
            gate = gate.dagger()
        k = rng.randint(0, n_qubits - len(gate.dom))
        result = result >> circuit.Id(k) @ gate\
            @ circuit.Id(n_qubits - k - len(gate.dom))
    return result


def random_cartesian(rng, n_boxes=None):
    """ Random swaps, copies, deletions and boxes of the function table. """
    n_boxes = rng.randint(0, 5) if n_boxes is None else n_boxes
    x = monoidal.Ty("x")
    width = rng.randint(1, 3)
    diagram = cartesian.Diagram.id(x ** width)
    table = {"add": (2, 1), "succ": (1, 1), "neg": (1, 1), "dup": (1, 2)}
    for _ in range(n_boxes):
        width = len(diagram.cod)
        move = rng.choice(("swap", "copy", "delete", "box"))
        if move == "swap" and width >= 2:
            k = rng.randint(0, width - 2)
            box = cartesian.Swap(x, x)
        elif move == "copy" and width <= 3:
            k, box = rng.randint(0, width - 1), cartesian.Copy(x)
        elif move == "delete" and width >= 2:
            k, box = rng.randint(0, width - 1), cartesian.Delete(x)
        else:
            name = rng.choice([n for n, (d, c) in table.items()
                               if d <= width and width - d + c <= 4])
            d, c = table[name]
            k, box = rng.randint(0, width - d), cartesian.Box(name, x ** d, x ** c)
        diagram = diagram >> cartesian.Diagram.id(x ** k) @ box\
            @ cartesian.Diagram.id(x ** (width - k - len(box.dom)))
    return diagram


def random_circuit(rng, n_qubits=None, n_boxes=None):
    """ Gates, kets, bras, scalars, cups and caps on at most four qubits. """
    width = rng.randint(0, 3) if n_qubits is None else n_qubits
    diagram = circuit.Id(width)
    for _ in range(rng.randint(0, 5) if n_boxes is None else n_boxes):
        choice = rng.random()
        if choice < 0.15 and width < 4:
            box = circuit.Ket(*(rng.randint(0, 1) for _ in range(rng.randint(1, 2))))
        elif choice < 0.25 and width:
            box = circuit.Bra(rng.randint(0, 1))
        elif choice < 0.3:
            box = circuit.Scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
        elif choice < 0.35 and width >= 2:
            box = circuit.Cup()
        elif choice < 0.4 and width <= 2:
            box = circuit.Cap()
        elif choice < 0.55:
            box = circuit.Rz(round(rng.uniform(-1, 1), 3))
        elif width >= 2 and choice < 0.7:
            box = circuit.GATES[rng.choice(TWO_QUBIT)]
        else:
            box = circuit.GATES[rng.choice(ONE_QUBIT)]
        if rng.random() < 0.2:
            box = box.dagger()
        if len(box.dom) > width:
            continue
        k = rng.randint(0, width - len(box.dom))
        diagram = diagram >> circuit.Id(k) @ box\
            @ circuit.Id(width - k - len(box.dom))
        width = len(diagram.cod)
    return diagram


def random_value(rng):
    """ A random value of any serializable kind, with its kind name. """
    from diagram_kernel import drawing, grammar, serialize
    kind = rng.choice((
        "ob", "rigid_ob", "ty", "rigid_ty", "pro", "dim", "arrow", "box",
        "diagram", "rigid", "word", "cartesian", "circuit", "gate", "tensor",
        "grammar", "layout", "functor"))
    if kind == "ob":
        value = cat.Ob(rng.choice(ATOMS))
    elif kind == "rigid_ob":
        value = rigid.Ob(rng.choice(ATOMS), rng.randint(-3, 3))
    elif kind == "ty":
        value = random_type(rng, rng.randint(0, 4), ATOMS)
    elif kind == "rigid_ty":
        value = rigid.Ty(*(random_rigid_atom(rng) for _ in range(rng.randint(0, 4))))
    elif kind == "pro":
        value = monoidal.PRO(rng.randint(0, 5))
    elif kind == "dim":
        value = random_dim(rng, 64)
    elif kind == "arrow":
        value = random_arrow(rng)
    elif kind == "box":
        value = monoidal.Box(
            rng.choice("fgh"), random_type(rng, rng.randint(0, 3)),
            random_type(rng, rng.randint(0, 3)),
            data=rng.choice((None, rng.randint(0, 9), "payload", [1, "two"])))
        value = value.dagger() if rng.random() < 0.3 else value
    elif kind == "diagram":
        value = random_diagram(rng)
    elif kind == "rigid":
        value = random_rigid_diagram(rng)
    elif kind == "word":
        n = rigid.Ty("n")
        value = grammar.Word(rng.choice(("one", "two")), rng.choice(
            (n, n.r @ n @ n.l, rigid.Ty("s") @ n.l)))
        value = value.dagger() if rng.random() < 0.3 else value
    elif kind == "cartesian":
        value = random_cartesian(rng)
    elif kind == "circuit":
        value = random_circuit(rng)
    elif kind == "gate":
        value = rng.choice((
            circuit.GATES[rng.choice(ONE_QUBIT + TWO_QUBIT)],
            circuit.Rx(round(rng.uniform(-1, 1), 3)),
            circuit.Gate("U", 1, circuit.Rx(round(rng.uniform(-1, 1), 3)).unitary,
                         data=rng.randint(0, 3)),
            circuit.Ket(*(rng.randint(0, 1) for _ in range(rng.randint(0, 3))))))
        value = value.dagger() if rng.random() < 0.3 else value
    elif kind == "tensor":
        semiring = rng.choice((BOOL, REAL, COMPLEX))
        value = random_tensor(rng, random_dim(rng, 8), random_dim(rng, 8), semiring)
    elif kind == "grammar":
        value = grammar.example_grammar()
        if rng.random() < 0.5:
            value = grammar.Grammar(["fish", "swim"], ["n", "s"], "s", [
                ("fish", [("n", 0)]), ("swim", [("n", 1), ("s", 0)])][
                    :rng.randint(0, 2)])
    elif kind == "layout":
        diagram = random_diagram(rng) if rng.random() < 0.5\
            else random_rigid_diagram(rng)
        value = drawing.draw(diagram)
        if rng.random() < 0.3:
            value = drawing.PlanarLayout(value.nodes, value.edges)
    else:
        functor_kind = rng.choice(("tensor", "python", "circuit"))
        ob = {name: rng.randint(1, 3) for name in ATOMS[:rng.randint(0, 3)]}
        if functor_kind == "tensor":
            semiring = rng.choice(("bool", "real", "complex"))
            sample = {"bool": lambda: rng.random() < 0.5,
                      "real": lambda: float(rng.randint(-4, 4)),
                      "complex": lambda: complex(rng.randint(-2, 2), rng.randint(-2, 2))}
            ar = {name: [sample[semiring]() for _ in range(rng.randint(1, 4))]
                  for name in "fg"[:rng.randint(0, 2)]}
            value = serialize.FunctorSpec("tensor", ob, ar, semiring)
        elif functor_kind == "python":
            ar = {name: rng.choice(("add", "dup", "const:3")) for name in "fg"}
            value = serialize.FunctorSpec("python", ob, ar)
        else:
            value = serialize.FunctorSpec(
                "circuit", ob, {"f": random_circuit(rng, 1, 2)})
    return kind, value
