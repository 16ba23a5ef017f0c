import pytest
from hypothesis import given

from mapforge import cli
from mapforge.errors import ParseError
from mapforge.fixtures import cube
from mapforge.gauss import ColoredGaussCode, pn_code
from mapforge.io import format_code, format_map, parse_code_text, parse_map, parse_map_text, format_descriptor
from mapforge.maps import classify_surface, to_descriptor
from mapforge.orbit import square_identical_isomorphic

from strategies import codes, colored_codes, maps

PLANAR_CODE = "gausscode\nseq: 1 3 4 6 7 2 3 9 6 5 2 1 8 7 5 4 9 8\n"


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def keyed(out):
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# ------------------------------------------------------------ formats


@given(maps(max_edges=12, connected=False))
def test_map_round_trip(m):
    text = format_map(m)
    assert format_descriptor(parse_map_text(text)) == text
    assert square_identical_isomorphic(parse_map(text), m)


@given(codes())
def test_code_round_trip(x):
    text = format_code(x)
    assert parse_code_text(text) == x
    assert format_code(parse_code_text(text)) == text


@given(colored_codes())
def test_colored_code_round_trip(c):
    text = format_code(c)
    assert parse_code_text(text) == c


def test_comments_and_blank_lines():
    text = "# a cube\n" + format_map(cube()).replace("\n", "  # tail\n\n", 1)
    assert format_map(parse_map(text)) == format_map(cube())


@pytest.mark.parametrize(
    "text",
    [
        "",
        "map v2\nimbalance:\n",
        "map v1\n",
        "map v1\nvgon a 1 2\nimbalance:\n",
        "map v1\nvgon a: 1 2\nimbalance 1\n",
        "map v1\nvgon a:\nimbalance:\n",
    ],
)
def test_map_parse_errors(text):
    with pytest.raises(ParseError):
        parse_map_text(text)


@pytest.mark.parametrize("text", ["", "gausscode\n", "gausscode\nseq:\n", "gausscode\nsequence: 1 1\n", "code\nseq: 1 1\n"])
def test_code_parse_errors(text):
    with pytest.raises(ParseError):
        parse_code_text(text)


# ------------------------------------------------------------ verbs


def test_classify_cube(capsys, tmp_path):
    path = write(tmp_path, "cube.map", format_map(cube()))
    code, out, _ = run(capsys, "classify", path)
    assert code == 0
    assert keyed(out) == {"chi": "2", "xi": "0", "orientable": "true", "surface": "sphere"}
    code, out, _ = run(capsys, "classify", path, "--dot", "phial")
    assert code == 0 and "graph G_P" in out


def test_classify_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(format_map(cube())))
    code, out, _ = run(capsys, "classify", "-")
    assert code == 0 and keyed(out)["chi"] == "2"


def test_orbit_and_deficiency(capsys, tmp_path):
    path = write(tmp_path, "cube.map", format_map(cube()))
    code, out, _ = run(capsys, "orbit", path)
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run(capsys, "deficiency", path)
    assert code == 0 and keyed(out)["def"] == "0" and keyed(out)["rich"] == "true"


def test_realize_planar_sample_code(capsys, tmp_path):
    path = write(tmp_path, "fig.code", PLANAR_CODE)
    code, out, _ = run(capsys, "realize", path)
    assert code == 0
    assert keyed(out)["surface"] == "plane"
    assert "coloring 1: black=" in out
    code, _, _ = run(capsys, "rosenstiehl", path)
    assert code == 0


def test_realize_p3_negative(capsys, tmp_path):
    path = write(tmp_path, "p3.code", format_code(pn_code(3)))
    code, out, _ = run(capsys, "realize", path, "--surface", "projective")
    assert code == 1 and keyed(out)["realizable"] == "false"
    code, out, _ = run(capsys, "realize", path, "--surface", "plane")
    assert code == 0 and keyed(out)["colorings"] == "2"


def test_surface_of(capsys, tmp_path):
    path = write(tmp_path, "p4.code", format_code(ColoredGaussCode(pn_code(4), frozenset("1"))))
    code, out, _ = run(capsys, "surface-of", path)
    assert code == 0
    assert keyed(out)["xi"] == "2" and keyed(out)["orientable"] == "false"


def test_projminmax_and_oracle(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "lines", "2", "-o", str(tmp_path / "l2.map"))
    assert code == 0 and out == ""
    path = str(tmp_path / "l2.map")
    code, out, _ = run(capsys, "projminmax", path)
    assert code == 0 and keyed(out)["min_transversal"] == "4"
    assert sum(line.startswith("circuit ") for line in out.splitlines()) == 4
    code, out, _ = run(capsys, "oracle", "min-transversal", path)
    assert code == 0 and keyed(out)["min_transversal"] == "4"
    code, out, _ = run(capsys, "projminmax", "--doubled", path)
    assert code == 0 and keyed(out)["min_transversal"] == "4"


def test_projminmax_precondition_exit(capsys, tmp_path):
    path = write(tmp_path, "cube.map", format_map(cube()))
    code, _, err = run(capsys, "projminmax", path)
    assert code == 1 and err.startswith("error: ")


def test_gen_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "pn", "4")
    assert code == 0 and "seq: 1 2 3 4 1 2 3 4" in out
    code, out, _ = run(capsys, "gen", "lines", "2")
    m = parse_map(out)
    s = classify_surface(m)
    assert (s.chi, s.orientable) == (1, False)
    a = run(capsys, "gen", "random", "--edges", "10", "--seed", "7")
    b = run(capsys, "gen", "random", "--edges", "10", "--seed", "7")
    assert a == b and a[0] == 0
    code, out, _ = run(capsys, "gen", "random", "--edges", "8", "--seed", "3", "--projective-eulerian")
    assert code == 0 and classify_surface(parse_map(out)).chi == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "pn"],
        ["gen", "pn", "0"],
        ["gen", "cube", "3"],
        ["gen", "random"],
        ["gen", "spiral"],
        ["classify"],
        ["classify", "/nonexistent/file.map"],
        ["sweep", "nonsense"],
        ["frobnicate"],
        ["classify", "x.map", "--bogus"],
    ],
)
def test_error_exit_codes(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_malformed_input_exit(capsys, tmp_path):
    path = write(tmp_path, "bad.map", "map v1\nvgon a: 1\nimbalance:\n")
    code, _, err = run(capsys, "classify", path)
    assert code == 2 and "error:" in err


def test_sweep_verb(capsys, monkeypatch):
    code, out, _ = run(capsys, "sweep", "absorption", "--trials", "20", "--seed", "1")
    assert code == 0 and keyed(out)["violations"] == "0" and keyed(out)["seed"] == "1"
    monkeypatch.setenv("MAPFORGE_SEED", "9")
    code, out, _ = run(capsys, "sweep", "triple", "--trials", "5")
    assert code == 0 and keyed(out)["seed"] == "9"


def test_descriptor_of_generated_cube_is_canonical():
    text = format_map(cube())
    assert format_descriptor(to_descriptor(parse_map(text))) == text
