import json
import os

import pytest

from diagram_kernel import cli, drawing, monoidal
from diagram_kernel.circuit import CX, H, Id as CircuitId, Ket
from diagram_kernel.grammar import example_grammar, parse
from diagram_kernel.serialize import FunctorSpec, decode, dumps, encode
from diagram_kernel.tensor import Dim, Tensor

x = monoidal.Ty('x')


def chain(k):
    """ k boxes on the right wire below k boxes on the left wire. """
    diagram = monoidal.Id(x @ x)
    for i in range(k):
        diagram = diagram >> monoidal.Id(x) @ monoidal.Box('g%d' % i, x, x)
    for i in range(k):
        diagram = diagram >> monoidal.Box('f%d' % i, x, x) @ monoidal.Id(x)
    return diagram


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith(cli.ENV_PREFIX):
            monkeypatch.delenv(key)

    def write(name, value):
        path = tmp_path / name
        path.write_text(value if isinstance(value, str) else dumps(value))
        return str(path)
    return write


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines()], err


def test_validate(files, capsys):
    code, lines, _ = run(capsys, "validate", files("d.json", chain(1)))
    assert code == 0 and lines == [{"valid": True, "kind": "diagram"}]
    code, _, err = run(capsys, "validate", files("bad.json", '{"ty": 3'))
    assert code == 2 and "malformed" in err
    code, _, _ = run(capsys, "validate", "missing.json")
    assert code == 2


def test_normalize_matches_library(files, capsys):
    diagram = chain(2)
    code, lines, _ = run(capsys, "normalize", "--trace", files("d.json", diagram))
    steps = list(diagram.normalize())
    assert code == 0 and len(lines) == len(steps) + 1
    assert [decode(line["diagram"]) for line in lines[:-1]] == steps
    assert decode(lines[-1]["result"]) == diagram.normal_form()
    code, lines, _ = run(capsys, "normalize", "--left", files("e.json", diagram))
    assert decode(lines[-1]["result"]) == diagram.normal_form(left=True)


def test_normalize_truncates(files, capsys):
    diagram = chain(4)
    assert len(list(diagram.normalize())) >= 11
    code, lines, err = run(capsys, "normalize", "--max-steps", "10", "--trace",
                           files("d.json", diagram))
    assert code == 1 and "10 steps" in err
    assert [line["step"] for line in lines[:-1]] == list(range(1, 11))
    assert lines[-1]["truncated"] and lines[-1]["steps"] == 10
    assert decode(lines[-1]["diagram"]) == list(diagram.normalize())[9]


def test_normalize_not_boundary_connected(files, capsys):
    scalar = monoidal.Box('a', monoidal.Ty(), monoidal.Ty())
    code, _, err = run(capsys, "normalize", files("d.json", scalar @ scalar))
    assert code == 1 and "boundary-connected" in err


def test_eval(files, capsys):
    f, g = monoidal.Box('f', monoidal.Ty(), x), monoidal.Box('g', x, x)
    spec = FunctorSpec("tensor", {"x": 2}, {"f": [0, 1], "g": [0, 1, 1, 0]}, "real")
    diagram = files("d.json", f >> g)
    code, lines, _ = run(capsys, "eval", "--functor", files("F.json", spec),
                         "--diagram", diagram)
    assert code == 0 and decode(lines[0]) == spec.build()(f >> g) == [1, 0]
    expected = files("expected.json", Tensor(Dim(), Dim(2), [1, 1e-12]))
    code, _, _ = run(capsys, "eval", "--functor", "F.json", "--diagram", diagram,
                     "--expect", expected)
    assert code == 0
    code, _, _ = run(capsys, "eval", "--functor", "F.json", "--diagram", diagram,
                     "--expect", expected, "--tolerance", "1e-15")
    assert code == 1


def test_run(files, capsys):
    add, one = monoidal.Box('add', x @ x, x), monoidal.Box('one', monoidal.Ty(), x)
    spec = FunctorSpec("python", {"x": 1}, {"add": "add", "one": "const:1"})
    code, lines, _ = run(capsys, "run", "--functor", files("F.json", spec),
                         "--diagram", files("d.json", one @ monoidal.Id(x) >> add),
                         "--args", "41")
    assert code == 0 and lines == [[42]]
    code, _, _ = run(capsys, "run", "--functor", "F.json", "--diagram", "d.json",
                     "--args", "forty")
    assert code == 2


def test_parse(files, capsys):
    grammar = files("g.json", example_grammar())
    sentence = "one plus two equals three"
    code, lines, _ = run(capsys, "parse", "--grammar", grammar,
                         "--sentence", sentence)
    assert code == 0 and decode(lines[0]) == parse(example_grammar(), sentence)
    assert decode(lines[0]).cod == decode(encode(example_grammar().sentence_type))
    code, lines, _ = run(capsys, "parse", "--grammar", grammar,
                         "--sentence", "one three plus")
    assert code == 1 and lines == [{"parse": None}]
    code, _, _ = run(capsys, "parse", "--grammar", grammar, "--sentence", "one minus")
    assert code == 2
    code, lines, _ = run(capsys, "parse", "--grammar", grammar,
                         "--sentence", "one plus two", "--target", "n")
    assert decode(lines[0]) == parse(example_grammar(), "one plus two",
                                     target=[("n", 0)])


def test_circuits(files, capsys):
    circuit = Ket(0, 0) >> H @ CircuitId(1) >> CX
    path = files("c.json", circuit)
    code, lines, _ = run(capsys, "eval-circuit", path)
    assert code == 0 and decode(lines[0]) == circuit.eval()
    code, lines, _ = run(capsys, "measure", path)
    assert code == 0 and lines == [circuit.measure().flat.tolist()]
    code, _, _ = run(capsys, "measure", files("h.json", H))
    assert code == 1
    code, _, _ = run(capsys, "measure", files("d.json", chain(1)))
    assert code == 2


def test_draw(files, capsys, tmp_path):
    diagram = chain(1)
    path = files("d.json", diagram)
    assert cli.main(["draw", path]) == 0
    assert capsys.readouterr().out == drawing.to_tikz(drawing.draw(diagram))
    code, lines, _ = run(capsys, "draw", path, "--format", "svg", "--out", "d.svg")
    assert code == 0 and (tmp_path / "d.svg").read_text()\
        == drawing.to_svg(drawing.draw(diagram))
    assert cli.main(["draw", path, "--format", "json"]) == 0
    layout = decode(json.loads(capsys.readouterr().out))
    assert drawing.read(layout) == diagram
    code, lines, _ = run(capsys, "validate", files("layout.json", layout))
    assert code == 0 and lines[0]["kind"] == "layout"


def test_output_is_deterministic(files, capsys):
    path = files("d.json", chain(3))
    outputs = set()
    for _ in range(2):
        cli.main(["normalize", "--trace", path])
        outputs.add(capsys.readouterr().out)
    assert len(outputs) == 1


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as error:
        cli.main(["frobnicate"])
    assert error.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["parse", "--help"])
    assert "--sentence" in capsys.readouterr().out


def test_settings_precedence(tmp_path):
    config = tmp_path / "diagram-kernel.toml"
    config.write_text("tolerance = 0.5\nmax_steps = 7\n[layout]\nwire_spacing = 2.0\n")
    settings = cli.load_settings(config, environ={})
    assert (settings.tolerance, settings.max_steps, settings.wire_spacing)\
        == (0.5, 7, 2.0)
    settings = cli.load_settings(config, environ={"DK_TOLERANCE": "0.25"})
    assert settings.tolerance == 0.25 and settings.max_steps == 7
    settings = cli.load_settings(config, environ={"DK_TOLERANCE": "0.25"},
                                 overrides={"tolerance": 0.125, "max_steps": None})
    assert settings.tolerance == 0.125 and settings.max_steps == 7
    assert cli.load_settings(tmp_path / "absent.toml", environ={})\
        == cli.Settings()
    for bad in ({"DK_TOLERANCE": "-1"}, {"DK_MAX_STEPS": "ten"}):
        with pytest.raises(cli.MalformedInput):
            cli.load_settings(config, environ=bad)
    config.write_text("colour = 'red'\n")
    with pytest.raises(cli.MalformedInput):
        cli.load_settings(config, environ={})


def test_config_flows_to_commands(files, capsys, monkeypatch):
    path = files("d.json", chain(4))
    files("diagram-kernel.toml", "max_steps = 10\n")
    code, lines, _ = run(capsys, "normalize", path)
    assert code == 1 and lines[-1]["steps"] == 10
    monkeypatch.setenv("DK_MAX_STEPS", "100")
    assert run(capsys, "normalize", path)[0] == 0
    code, lines, _ = run(capsys, "normalize", "--max-steps", "3", path)
    assert code == 1 and lines[-1]["steps"] == 3


def test_workspace_names_are_unique(files):
    workspace = cli.Workspace()
    path = files("d.json", chain(1))
    workspace.load(path)
    with pytest.raises(cli.MalformedInput):
        workspace.load(path)
    with pytest.raises(cli.MalformedInput):
        workspace.load(files("g.json", example_grammar()), "diagrams")
    assert list(workspace.diagrams) == ["d"]
