"""Plain-text file formats for maps and Gauss codes.

Map files::

    map v1
    vgon <name>: <label> <label> ...
    ...
    imbalance: <label> ...

Gauss code files::

    gausscode
    seq: s1 s2 ... s2m
    black: ...            (optional)

``#`` starts a comment.  Serialization is canonical, so parsing and writing
a canonical file gives back the same bytes.
"""

from __future__ import annotations

import sys
from typing import Union

from .errors import ParseError
from .gauss import ColoredGaussCode, GaussCode
from .maps import Descriptor, Map, from_descriptor, sorted_labels, to_descriptor

MAP_HEADER = "map v1"
CODE_HEADER = "gausscode"


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _key_value(no: int, line: str, key: str) -> str:
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != key:
        raise ParseError(f"line {no}: expected '{key}: ...'")
    return rest.strip()


def parse_map_text(text: str) -> Descriptor:
    lines = _lines(text)
    if not lines or lines[0][1] != MAP_HEADER:
        raise ParseError(f"map files start with '{MAP_HEADER}'")
    if len(lines) < 2:
        raise ParseError("missing 'imbalance:' line")
    seqs, names = [], []
    for no, line in lines[1:-1]:
        if not line.startswith("vgon "):
            raise ParseError(f"line {no}: expected 'vgon <name>: <labels>'")
        head, sep, rest = line[5:].partition(":")
        name = head.strip()
        if not sep or not name or " " in name:
            raise ParseError(f"line {no}: expected 'vgon <name>: <labels>'")
        labels = rest.split()
        if not labels:
            raise ParseError(f"line {no}: v-gon {name} has no labels")
        seqs.append(tuple(labels))
        names.append(name)
    no, last = lines[-1]
    imb = _key_value(no, last, "imbalance").split()
    d = Descriptor(tuple(seqs), frozenset(imb), tuple(names))
    d.validate()
    return d


def format_descriptor(d: Descriptor) -> str:
    names = d.names or tuple(f"v{i}" for i in range(len(d.v_ordering)))
    out = [MAP_HEADER]
    for name, seq in zip(names, d.v_ordering):
        out.append(f"vgon {name}: {' '.join(seq)}")
    out.append(("imbalance: " + " ".join(sorted_labels(d.imbalance))).rstrip())
    return "\n".join(out) + "\n"


def format_map(m: Map) -> str:
    return format_descriptor(to_descriptor(m))


def parse_map(text: str) -> Map:
    return from_descriptor(parse_map_text(text))


def parse_code_text(text: str) -> Union[GaussCode, ColoredGaussCode]:
    """A plain code, or a colored one when a ``black:`` line is present."""
    lines = _lines(text)
    if not lines or lines[0][1] != CODE_HEADER:
        raise ParseError(f"Gauss code files start with '{CODE_HEADER}'")
    if len(lines) not in (2, 3):
        raise ParseError("expected a 'seq:' line and an optional 'black:' line")
    seq = _key_value(*lines[1], "seq").split()
    if not seq:
        raise ParseError("empty Gauss code")
    code = GaussCode.of(seq)
    if len(lines) == 2:
        return code
    black = _key_value(*lines[2], "black").split()
    return ColoredGaussCode(code, frozenset(black))


def format_code(code: Union[GaussCode, ColoredGaussCode]) -> str:
    out = [CODE_HEADER]
    if isinstance(code, ColoredGaussCode):
        out.append(f"seq: {code.code}")
        out.append(("black: " + " ".join(sorted_labels(code.black))).rstrip())
    else:
        out.append(f"seq: {code}")
    return "\n".join(out) + "\n"


def read_text(path: str) -> str:
    """File contents, or standard input for ``-``."""
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def read_map(path: str) -> Map:
    return parse_map(read_text(path))


def read_code(path: str) -> Union[GaussCode, ColoredGaussCode]:
    return parse_code_text(read_text(path))
