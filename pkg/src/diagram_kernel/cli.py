"""
Command line interface: load values from JSON, normalise, evaluate, parse
and draw them.

Exit codes: 0 on success, 1 when the input is well-formed but the operation
fails (no parse, not boundary-connected, step cap reached), 2 on malformed
input.  Settings come from flags, then ``DK_*`` environment variables, then
``diagram-kernel.toml``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from diagram_kernel import cat, circuit, drawing, grammar, monoidal, serialize,\
    tensor
from diagram_kernel.cartesian import ArityError

CONFIG_FILE = "diagram-kernel.toml"
ENV_PREFIX = "DK_"


class DomainError(Exception):
    """ A well-formed input on which the operation fails. """


class MalformedInput(Exception):
    """ An input which cannot be decoded or does not type-check. """


@dataclass
class Settings:
    tolerance: float = tensor.DEFAULT_ATOL
    max_steps: int = None
    wire_spacing: float = 1.0
    layer_height: float = 1.0
    box_height: float = 0.5
    output_dir: str = "."

    def __post_init__(self):
        for name in ("tolerance", "wire_spacing", "layer_height", "box_height"):
            if getattr(self, name) <= 0:
                raise MalformedInput("{} must be positive.".format(name))
        if self.max_steps is not None and self.max_steps <= 0:
            raise MalformedInput("max_steps must be positive.")

    @property
    def layout(self):
        return drawing.LayoutConfig(
            self.wire_spacing, self.layer_height, self.box_height)


def load_settings(path=None, environ=None, overrides=None):
    """
    Settings from the config file, overridden by ``DK_*`` environment
    variables, overridden by explicit values.
    """
    environ = os.environ if environ is None else environ
    values = {}
    path = Path(path) if path is not None else Path(CONFIG_FILE)
    if path.exists():
        try:
            with open(path, "rb") as file:
                config = tomllib.load(file)
        except tomllib.TOMLDecodeError as error:
            raise MalformedInput("{}: {}".format(path, error)) from error
        values.update(config.pop("layout", {}))
        values.update(config)
    types = {item.name: item for item in fields(Settings)}
    for name in types:
        key = ENV_PREFIX + name.upper()
        if key in environ:
            values[name] = environ[key]
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    unknown = set(values) - set(types)
    if unknown:
        raise MalformedInput("Unknown settings {}.".format(sorted(unknown)))
    try:
        for name, value in values.items():
            cast = str if name == "output_dir" else\
                int if name == "max_steps" else float
            values[name] = cast(value)
    except ValueError as error:
        raise MalformedInput(str(error)) from error
    return Settings(**values)


@dataclass
class Workspace:
    """ Named diagrams, functors and grammars, with the current settings. """
    settings: Settings = field(default_factory=Settings)
    diagrams: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    grammars: dict = field(default_factory=dict)

    def load(self, path, kind=None):
        """ Decode a JSON file, registering it under its file stem. """
        value = read_json(path)
        name = Path(path).stem
        if isinstance(value, cat.Arrow):
            registry = self.diagrams
        elif isinstance(value, serialize.FunctorSpec):
            registry = self.functors
        elif isinstance(value, grammar.Grammar):
            registry = self.grammars
        else:
            registry = None
        if kind is not None and registry is not getattr(self, kind, None):
            raise MalformedInput("{} does not contain a {}.".format(
                path, kind[:-1]))
        if registry is not None:
            if name in registry:
                raise MalformedInput("Duplicate name {!r}.".format(name))
            registry[name] = value
        return value


def read_json(path):
    try:
        with open(path) as file:
            return serialize.loads(file.read())
    except OSError as error:
        raise MalformedInput(str(error)) from error


def emit(value, out=None):
    """ Deterministic JSON on one line. """
    text = json.dumps(value, sort_keys=True)
    print(text, file=out or sys.stdout)


def cmd_validate(args, workspace):
    value = workspace.load(args.file)
    kind = next(iter(serialize.encode(value)))
    if isinstance(value, drawing.PlanarLayout):
        problems = drawing.check_layout(value)
        if problems:
            raise MalformedInput("; ".join(problems))
    emit({"valid": True, "kind": kind})


def normalize_trace(diagram, left=False, max_steps=None):
    """
    The JSON lines of a normalisation, as ``(lines, complete)``.

    The last line holds the final diagram, or the diagram reached when the
    step cap interrupts the reduction.
    """
    steps = getattr(diagram, "rewrite_steps", None)
    if steps is None:
        raise MalformedInput("Only monoidal diagrams can be normalised.")
    if max_steps is None:
        max_steps = monoidal.step_bound(len(diagram))
    lines, result = [], diagram
    for step, result in enumerate(steps(left=left), start=1):
        if step > max_steps:
            lines.append({"truncated": True, "steps": max_steps,
                          "diagram": serialize.encode(previous)})
            return lines, False
        lines.append({"step": step, "diagram": serialize.encode(result)})
        previous = result
    lines.append({"result": serialize.encode(result)})
    return lines, True


def cmd_normalize(args, workspace):
    diagram = workspace.load(args.file, "diagrams")
    max_steps = args.max_steps or workspace.settings.max_steps
    lines, complete = normalize_trace(diagram, args.left, max_steps)
    for line in lines if args.trace else lines[-1:]:
        emit(line)
    if not complete:
        raise DomainError("Normalisation exceeded {} steps.".format(
            lines[-1]["steps"]))


def _expect(result, args, workspace):
    if args.expect is not None:
        expected = read_json(args.expect)
        if not result.equals(expected, atol=workspace.settings.tolerance):
            raise DomainError("Result differs from {}.".format(args.expect))


def cmd_eval(args, workspace):
    spec = workspace.load(args.functor, "functors")
    diagram = workspace.load(args.diagram, "diagrams")
    if spec.kind != "tensor":
        raise MalformedInput("eval needs a tensor functor.")
    result = spec.build()(diagram)
    _expect(result, args, workspace)
    emit(serialize.encode(result))


def _number(text):
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise MalformedInput("Not a number: {!r}.".format(text)) from None


def cmd_run(args, workspace):
    spec = workspace.load(args.functor, "functors")
    diagram = workspace.load(args.diagram, "diagrams")
    if spec.kind != "python":
        raise MalformedInput("run needs a python functor.")
    values = [_number(x) for x in args.args.split(",") if x.strip()]\
        if args.args else []
    emit(list(spec.build()(diagram)(*values)))


def cmd_parse(args, workspace):
    value = workspace.load(args.grammar, "grammars")
    target = None
    if args.target:
        target = [(name, int(z)) for name, z in
                  (atom.split(":") if ":" in atom else (atom, 0)
                   for atom in args.target.split())]
    try:
        result = grammar.parse(value, args.sentence, target=target)
    except grammar.UnknownWord as error:
        raise MalformedInput("Unknown word {}.".format(error)) from error
    if result is None:
        emit({"parse": None})
        raise DomainError("No parse for {!r}.".format(args.sentence))
    emit(serialize.encode(result))


def _circuit(args, workspace):
    diagram = workspace.load(args.file, "diagrams")
    if not isinstance(diagram, circuit.Circuit):
        raise MalformedInput("{} is not a circuit.".format(args.file))
    return diagram


def cmd_eval_circuit(args, workspace):
    result = _circuit(args, workspace).eval()
    _expect(result, args, workspace)
    emit(serialize.encode(result))


def cmd_measure(args, workspace):
    result = _circuit(args, workspace).measure()
    emit(result.flat.tolist())


def cmd_draw(args, workspace):
    diagram = workspace.load(args.file, "diagrams")
    if not isinstance(diagram, monoidal.Diagram):
        raise MalformedInput("Only monoidal diagrams can be drawn.")
    config = workspace.settings.layout
    layout = drawing.draw(diagram, config)
    if args.format == "tikz":
        text = drawing.to_tikz(layout, args.triangles, config)
    elif args.format == "svg":
        text = drawing.to_svg(layout, args.triangles, config)
    else:
        text = json.dumps(serialize.encode(layout), sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        out = Path(workspace.settings.output_dir) / args.out
        out.write_text(text)
        emit({"written": str(out)})


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diagram-kernel",
        description="Normalise, evaluate, parse and draw string diagrams.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="settings file (TOML)")
    common.add_argument("--tolerance", type=float)
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name, function, help_text):
        sub = verbs.add_parser(name, parents=[common], help=help_text,
                               description=help_text)
        sub.set_defaults(function=function)
        return sub

    sub = verb("validate", cmd_validate, "Check that a JSON file decodes.")
    sub.add_argument("file")
    sub = verb("normalize", cmd_normalize,
               "Normal form by snake removal and interchangers.")
    sub.add_argument("file")
    sub.add_argument("--left", action="store_true",
                     help="use left interchangers")
    sub.add_argument("--max-steps", type=int)
    sub.add_argument("--trace", action="store_true",
                     help="print every rewrite step as a JSON line")
    for name, function, help_text in (
            ("eval", cmd_eval, "Evaluate a diagram with a tensor functor."),
            ("run", cmd_run, "Run a diagram as a Python function.")):
        sub = verb(name, function, help_text)
        sub.add_argument("--functor", required=True)
        sub.add_argument("--diagram", required=True)
        if name == "run":
            sub.add_argument("--args", default="",
                             help="comma-separated inputs")
        else:
            sub.add_argument("--expect", help="tensor JSON to compare with")
    sub = verb("parse", cmd_parse, "Parse a sentence with a pregroup grammar.")
    sub.add_argument("--grammar", required=True)
    sub.add_argument("--sentence", required=True)
    sub.add_argument("--target", help="target type, e.g. 'n' or 'n:1 s'")
    sub = verb("eval-circuit", cmd_eval_circuit, "Evaluate a circuit.")
    sub.add_argument("file")
    sub.add_argument("--expect", help="tensor JSON to compare with")
    sub = verb("measure", cmd_measure,
               "Born rule probabilities of a state.")
    sub.add_argument("file")
    sub = verb("draw", cmd_draw, "Draw a diagram.")
    sub.add_argument("file")
    sub.add_argument("--format", choices=["tikz", "svg", "json"],
                     default="tikz")
    sub.add_argument("--out")
    sub.add_argument("--triangles", action="store_true",
                     help="draw boxes with empty domain as triangles")
    return parser


MALFORMED = (MalformedInput, serialize.DecodeError, cat.AxiomError,
             cat.MissingMapping, ArityError, KeyError, TypeError, ValueError)
DOMAIN = (DomainError, monoidal.NotBoundaryConnected,
          circuit.NonEmptyDomainError)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(
            args.config, overrides={"tolerance": args.tolerance})
        args.function(args, Workspace(settings))
    except DOMAIN as error:
        print("error: {}".format(error), file=sys.stderr)
        return 1
    except MALFORMED as error:
        print("malformed input: {}".format(error), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
