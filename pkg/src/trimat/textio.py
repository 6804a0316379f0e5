"""Reading and writing ``.m3`` documents.

A document declares one field and then any number of named objects::

    field rational
    # the worked 3x3x2 example
    A: matrix 3x3x2 {
      layer 1: [1 2 4; 8 1 1; 3 1 0]
      layer 2: [3 1 5; 0 2 1; 1 7 4]
    }
    s: mscalar 2 [25 -6]

Layers carry explicit indices (k = 1 is the bottom layer) and may appear in
any order. ``#`` starts a comment. A JSON mirror of the same data is available
through :func:`document_to_json` / :func:`document_from_json`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from typing import Union

from .errors import (
    DocumentSyntaxError,
    DuplicateLayer,
    FieldLiteralError,
    MissingLayer,
    ParseError,
    ShapeError,
    TrimatError,
)
from .field import FieldSpec
from .linalg2d import Matrix2
from .tensor3d import Matrix3, MultiScalar

Object = Union[Matrix3, MultiScalar]

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_DIMS_RE = re.compile(r"(\d+)x(\d+)x(\d+)\Z")
_UINT_RE = re.compile(r"\d+\Z")
_PUNCT = "{}[]:;"
# guards against absurd declared sizes in hostile input
MAX_DIM = 10**6


@dataclass
class Document:
    field: FieldSpec
    objects: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for name, obj in self.objects.items():
            if not NAME_RE.match(name):
                raise ValueError(f"invalid object name {name!r}")
            if not isinstance(obj, (Matrix3, MultiScalar)):
                raise TypeError(f"{name}: unsupported object {type(obj).__name__}")
            if obj.spec != self.field:
                raise ValueError(f"{name} is over {obj.spec}, document over {self.field}")

    def __getitem__(self, name: str) -> Object:
        return self.objects[name]


@dataclass
class _Tok:
    kind: str  # "word", a punctuation character, or "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
        elif c.isspace():
            i, col = i + 1, col + 1
        elif c == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif c in _PUNCT:
            toks.append(_Tok(c, c, line, col))
            i, col = i + 1, col + 1
        else:
            start, scol = i, col
            while i < n and not text[i].isspace() and text[i] not in _PUNCT and text[i] != "#":
                i, col = i + 1, col + 1
            toks.append(_Tok("word", text[start:i], line, scol))
    toks.append(_Tok("eof", "", line, col))
    return toks


def _describe(tok: _Tok) -> str:
    if tok.kind == "eof":
        return "end of input"
    return repr(tok.text)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.spec = None

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok, message, expected=None, cls=DocumentSyntaxError):
        raise cls(message, tok.line, tok.col, expected)

    def expect(self, kind, text=None, expected=None):
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = expected or repr(text if text is not None else kind)
            self.fail(tok, f"unexpected {_describe(tok)}", want)
        return tok

    def uint(self, what) -> tuple[int, _Tok]:
        tok = self.expect("word", expected=what)
        if not _UINT_RE.match(tok.text):
            self.fail(tok, f"unexpected {_describe(tok)}", what)
        value = int(tok.text)
        if not 1 <= value <= MAX_DIM:
            self.fail(tok, f"{what} {value} out of range 1..{MAX_DIM}", cls=ShapeError)
        return value, tok

    # -- grammar --------------------------------------------------------------

    def document(self) -> Document:
        self.expect("word", "field", expected="'field' header")
        self.spec = self.fieldspec()
        objects = {}
        if self.peek().kind == "eof":
            self.fail(self.peek(), "document has no objects", "an object definition")
        while self.peek().kind != "eof":
            name_tok = self.expect("word", expected="object name")
            if not NAME_RE.match(name_tok.text):
                self.fail(name_tok, f"invalid object name {name_tok.text!r}", "an identifier")
            if name_tok.text in objects:
                self.fail(name_tok, f"duplicate object name {name_tok.text!r}")
            self.expect(":", expected="':'")
            kind = self.expect("word", expected="'matrix' or 'mscalar'")
            if kind.text == "matrix":
                objects[name_tok.text] = self.matrix3()
            elif kind.text == "mscalar":
                objects[name_tok.text] = self.multiscalar()
            else:
                self.fail(kind, f"unknown object kind {kind.text!r}", "'matrix' or 'mscalar'")
        return Document(self.spec, objects)

    def fieldspec(self) -> FieldSpec:
        tok = self.expect("word", expected="'rational', 'gf' or 'float'")
        if tok.text == "rational":
            return FieldSpec.parse("rational")
        if tok.text == "gf":
            arg = self.expect("word", expected="prime modulus")
            try:
                return FieldSpec.parse(f"gf {arg.text}")
            except ValueError as exc:
                self.fail(arg, str(exc), "a prime modulus below 2^31")
        if tok.text == "float":
            nxt = self.peek()
            if nxt.kind == "word" and nxt.text[:1] in "0123456789.+-":
                self.next()
                try:
                    return FieldSpec.parse(f"float {nxt.text}")
                except ValueError as exc:
                    self.fail(nxt, str(exc), "a nonnegative tolerance")
            return FieldSpec.parse("float")
        self.fail(tok, f"unknown field {tok.text!r}", "'rational', 'gf' or 'float'")

    def dims(self) -> tuple[int, int, int]:
        first = self.peek()
        parts = []
        while self.peek().kind == "word" and len(parts) < 5:
            parts.append(self.next().text)
            m = _DIMS_RE.match("".join(parts))
            if m:
                dims = tuple(int(g) for g in m.groups())
                for d in dims:
                    if not 1 <= d <= MAX_DIM:
                        self.fail(first, f"dimension {d} out of range 1..{MAX_DIM}", cls=ShapeError)
                return dims
        self.fail(first, f"unexpected {_describe(first)}", "dimensions MxNxP")

    def element(self, tok: _Tok):
        try:
            return self.spec.parse_literal(tok.text)
        except ValueError as exc:
            self.fail(tok, str(exc), f"an element of {self.spec}", cls=FieldLiteralError)

    def matrix3(self) -> Matrix3:
        m, n, p = self.dims()
        open_tok = self.expect("{", expected="'{'")
        layers = {}
        while self.peek().kind != "}":
            kw = self.expect("word", "layer", expected="'layer' or '}'")
            k, ktok = self.uint("layer index")
            if k > p:
                self.fail(ktok, f"layer index {k} exceeds depth {p}", cls=ShapeError)
            if k in layers:
                self.fail(ktok, f"layer {k} given twice", cls=DuplicateLayer)
            self.expect(":", expected="':'")
            layers[k] = self.layer_rows(m, n, kw)
        self.expect("}", expected="'}'")
        missing = [k for k in range(1, p + 1) if k not in layers]
        if missing:
            self.fail(open_tok, f"missing layer(s) {', '.join(map(str, missing))} of {p}",
                      cls=MissingLayer)
        return Matrix3([Matrix2.from_raw(self.spec, m, n, layers[k]) for k in range(1, p + 1)])

    def layer_rows(self, m: int, n: int, at: _Tok) -> list:
        self.expect("[", expected="'['")
        data = []
        rows = 0
        while True:
            row_tok = self.peek()
            count = 0
            while self.peek().kind == "word":
                data.append(self.element(self.next()))
                count += 1
            if count != n:
                self.fail(row_tok, f"row has {count} entries, expected {n}", cls=ShapeError)
            rows += 1
            if rows > m:
                self.fail(row_tok, f"layer has more than {m} rows", cls=ShapeError)
            tok = self.next()
            if tok.kind == "]":
                break
            if tok.kind != ";":
                self.fail(tok, f"unexpected {_describe(tok)}", "an element, ';' or ']'")
        if rows != m:
            self.fail(at, f"layer has {rows} rows, expected {m}", cls=ShapeError)
        return data

    def multiscalar(self) -> MultiScalar:
        p, _ = self.uint("multi-scalar length")
        open_tok = self.expect("[", expected="'['")
        comps = []
        while self.peek().kind == "word":
            comps.append(self.element(self.next()))
        self.expect("]", expected="an element or ']'")
        if len(comps) != p:
            self.fail(open_tok, f"multi-scalar has {len(comps)} components, expected {p}",
                      cls=ShapeError)
        return MultiScalar(self.spec, comps)


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        head = data[:exc.start]
        line = head.count(b"\n") + 1
        col = exc.start - (head.rfind(b"\n") + 1) + 1
        raise DocumentSyntaxError("input is not valid UTF-8", line, col) from None


def parse_document(text) -> Document:
    """Parse ``.m3`` text (``str`` or UTF-8 ``bytes``) into a :class:`Document`.

    Every failure is a :class:`~trimat.errors.ParseError` carrying line and
    column; nothing else escapes, whatever the input.
    """
    if isinstance(text, (bytes, bytearray)):
        text = _decode(bytes(text))
    try:
        return _Parser(text).document()
    except ParseError:
        raise
    except (TrimatError, ValueError, TypeError, RecursionError, OverflowError) as exc:
        raise DocumentSyntaxError(f"invalid document: {exc}", 1, 1) from exc


def load(path) -> Document:
    with open(path, "rb") as fh:
        return parse_document(fh.read())


# -- serialization ----------------------------------------------------------------


def _layer_text(L: Matrix2) -> str:
    return "[" + "; ".join(" ".join(row) for row in L.tolist()) + "]"


def serialize_object(obj: Object) -> str:
    if isinstance(obj, MultiScalar):
        return f"mscalar {obj.p} [{' '.join(obj.tolist())}]"
    if isinstance(obj, Matrix3):
        lines = [f"matrix {obj.m}x{obj.n}x{obj.p} {{"]
        lines += [f"  layer {k}: {_layer_text(L)}" for k, L in enumerate(obj.layers, 1)]
        lines.append("}")
        return "\n".join(lines)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj) -> str:
    """Canonical text for a Document, Matrix3 or MultiScalar.

    A document yields a complete ``.m3`` file; a bare object yields just its
    body (``matrix ... {...}`` or ``mscalar ...``).
    """
    if isinstance(obj, Document):
        parts = [f"field {obj.field}"]
        parts += [f"{name}: {serialize_object(o)}" for name, o in obj.objects.items()]
        return "\n".join(parts) + "\n"
    return serialize_object(obj)


def dump(objects: dict, spec: FieldSpec | None = None) -> str:
    """Serialize named objects as a full document (field taken from the first object)."""
    if spec is None:
        spec = next(iter(objects.values())).spec
    return serialize(Document(spec, dict(objects)))


# -- JSON mirror ------------------------------------------------------------------


def document_to_json(doc: Document) -> dict:
    objects = {}
    for name, obj in doc.objects.items():
        if isinstance(obj, Matrix3):
            objects[name] = {"kind": "matrix", "dims": [obj.m, obj.n, obj.p], "layers": obj.tolist()}
        else:
            objects[name] = {
                "kind": "mscalar",
                "dims": [obj.p],
                "layers": [[[c]] for c in obj.tolist()],
            }
    return {"field": str(doc.field), "objects": objects}


def document_from_json(data) -> Document:
    """Inverse of :func:`document_to_json`; accepts a dict or a JSON string."""
    def bad(msg):
        raise DocumentSyntaxError(msg, 1, 1)

    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except ValueError as exc:
            bad(f"invalid JSON: {exc}")
    if not isinstance(data, dict) or not isinstance(data.get("objects"), dict):
        bad("JSON document needs 'field' and 'objects'")
    try:
        spec = FieldSpec.parse(str(data.get("field")))
    except ValueError as exc:
        bad(str(exc))
    objects = {}
    for name, entry in data["objects"].items():
        try:
            kind, dims, layers = entry["kind"], entry["dims"], entry["layers"]
            parsed = [[[spec.parse_literal(str(x)) for x in row] for row in L] for L in layers]
            if kind == "matrix":
                m, n, p = dims
                obj = Matrix3([Matrix2(spec, L) for L in parsed])
                if obj.shape != (m, n, p):
                    bad(f"{name}: dims {dims} do not match data")
            elif kind == "mscalar":
                (p,) = dims
                if any(len(L) != 1 or len(L[0]) != 1 for L in parsed) or len(parsed) != p:
                    bad(f"{name}: mscalar layers must be {p} 1x1 blocks")
                obj = MultiScalar(spec, [L[0][0] for L in parsed])
            else:
                bad(f"{name}: unknown kind {kind!r}")
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, TrimatError) as exc:
            bad(f"{name}: {exc}")
        objects[name] = obj
    try:
        return Document(spec, objects)
    except (ValueError, TypeError) as exc:
        bad(str(exc))
