"""
Parser for variety description files (``.vd``).

One construction per line, ``NAME = KIND ARGS``; ``#`` starts a comment.
The last stanza (or the one named by a ``target NAME`` line) is the
variety the file describes::

    NAME = atomic enriques|k3|point
    NAME = projective N [HYPERPLANE]
    NAME = grassmannian 2 4 [HYPERPLANE]
    NAME = product LEFT RIGHT
    NAME = projbundle BASE [D1, D2, ...] HNAME
    NAME = blowup AMBIENT CENTER codim=K ENAME
    NAME = zerolocus AMBIENT bundle=BUNDLE
    NAME = universal BASE w=W jump=LOCUS divisor=D [hyperplane=HNAME]
    NAME = models MODEL1 MODEL2 ...
    target NAME

    BUNDLE := [D1, D2, ...]                 split sum of line bundles
            | formal(RANK, C1)              rank and first Chern class only
            | symrank2(K, C1) [twist=D]     Sym^K of a rank-2 bundle with c1 = C1,
                                            optionally tensored with O(D)

Divisor classes are signed integer combinations of generator names of the
variety they live on, e.g. ``-2H1``, ``3s1 + 3H'``, ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from fanosod import geometry as geo
from fanosod.picard import FormalBundle, PicardError, c1_sym_rank2, parse_class


class DescriptionError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[=\[\](),+\-*]))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int  # 1-based


def _tokenize(line: str, lineno: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        m = _TOKEN.match(line, pos)
        if not m:
            col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
            raise DescriptionError(f"unexpected character {line[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], line: str, lineno: int):
        self.toks = toks
        self.i = 0
        self.line = line
        self.lineno = lineno

    def error(self, msg: str, tok: _Tok | None = None):
        if tok is None:
            tok = self.toks[self.i] if self.i < len(self.toks) else None
        col = tok.col if tok else len(self.line.rstrip()) + 1
        return DescriptionError(msg, self.lineno, col)

    def peek(self, k: int = 0) -> _Tok | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error(f"expected {what}, found end of line")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next(repr(text))
        if tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def name(self, what: str = "a name") -> _Tok:
        tok = self.next(what)
        if tok.kind != "name":
            raise self.error(f"expected {what}, found {tok.text!r}", tok)
        return tok

    def integer(self, what: str = "an integer") -> int:
        tok = self.next(what)
        if tok.kind != "int":
            raise self.error(f"expected {what}, found {tok.text!r}", tok)
        return int(tok.text)

    def at_keyword(self) -> bool:
        a, b = self.peek(), self.peek(1)
        return a is not None and a.kind == "name" and b is not None and b.text == "="

    def keyword(self, key: str) -> None:
        tok = self.name(f"{key}=")
        if tok.text != key:
            raise self.error(f"expected {key}=, found {tok.text!r}", tok)
        self.expect("=")

    def class_text(self, stops: tuple[str, ...] = (",", "]", ")")) -> tuple[str, _Tok]:
        """Raw text of a divisor class up to a delimiter or the next ``key=``."""
        start = self.peek()
        if start is None:
            raise self.error("expected a divisor class")
        j = self.i
        while j < len(self.toks) and self.toks[j].text not in stops:
            if (
                j > self.i
                and self.toks[j].kind == "name"
                and j + 1 < len(self.toks)
                and self.toks[j + 1].text == "="
            ):
                break
            j += 1
        if j == self.i:
            raise self.error("expected a divisor class", start)
        end = self.toks[j - 1]
        text = self.line[start.col - 1 : end.col - 1 + len(end.text)]
        self.i = j
        return text, start

    def done(self) -> bool:
        return self.i >= len(self.toks)


@dataclass
class Description:
    varieties: dict = field(default_factory=dict)
    target_name: str | None = None

    @property
    def target(self):
        if self.target_name is None:
            raise ValueError("empty description")
        return self.varieties[self.target_name]


def _lookup(desc: Description, cur: _Cursor, what: str):
    tok = cur.name(what)
    if tok.text not in desc.varieties:
        raise cur.error(f"unknown variety {tok.text!r}", tok)
    return desc.varieties[tok.text]


def _parse_class(cur: _Cursor, lattice):
    text, tok = cur.class_text()
    try:
        return parse_class(text, lattice)
    except PicardError as exc:
        raise cur.error(str(exc), tok) from None


def _parse_bundle(cur: _Cursor, lattice) -> FormalBundle:
    tok = cur.peek()
    if tok is None:
        raise cur.error("expected a bundle")
    if tok.text == "[":
        cur.next("[")
        parts = []
        if cur.peek() is not None and cur.peek().text == "]":
            cur.next("]")
            return FormalBundle.split([], lattice)
        while True:
            parts.append(_parse_class(cur, lattice))
            sep = cur.next("',' or ']'")
            if sep.text == "]":
                break
            if sep.text != ",":
                raise cur.error(f"expected ',' or ']', found {sep.text!r}", sep)
        return FormalBundle.split(parts, lattice)
    if tok.text == "formal":
        cur.next("formal")
        cur.expect("(")
        rank = cur.integer("a rank")
        cur.expect(",")
        c1 = _parse_class(cur, lattice)
        cur.expect(")")
        return FormalBundle(rank, c1)
    if tok.text == "symrank2":
        cur.next("symrank2")
        cur.expect("(")
        k = cur.integer("a symmetric power")
        cur.expect(",")
        c1 = _parse_class(cur, lattice)
        cur.expect(")")
        bundle = FormalBundle(k + 1, c1_sym_rank2(c1, k))
        if cur.at_keyword() and cur.peek().text == "twist":
            cur.keyword("twist")
            bundle = bundle.twist(_parse_class(cur, lattice))
        return bundle
    raise cur.error(f"expected a bundle, found {tok.text!r}", tok)


def _construct(desc: Description, kind: _Tok, cur: _Cursor):
    k = kind.text
    if k == "atomic":
        tok = cur.name("an atom name")
        if tok.text not in geo.ATOMS:
            raise cur.error(f"unknown atom {tok.text!r}; known: {', '.join(geo.ATOMS)}", tok)
        return geo.ATOMS[tok.text]()
    if k == "projective":
        n = cur.integer("a dimension")
        hyp = cur.name("a hyperplane name").text if not cur.done() else "h"
        return geo.ProjectiveSpace(n, hyp)
    if k == "grassmannian":
        tok = cur.peek()
        if (cur.integer(), cur.integer()) != (2, 4):
            raise cur.error("only grassmannian 2 4 is supported", tok)
        hyp = cur.name("a hyperplane name").text if not cur.done() else "s1"
        return geo.Grassmannian24(hyp)
    if k == "product":
        return geo.Product(_lookup(desc, cur, "a variety"), _lookup(desc, cur, "a variety"))
    if k == "projbundle":
        base = _lookup(desc, cur, "a base variety")
        bundle = _parse_bundle(cur, geo.lattice(base))
        return geo.ProjBundle(base, bundle, cur.name("a relative class name").text)
    if k == "blowup":
        ambient = _lookup(desc, cur, "an ambient variety")
        center = _lookup(desc, cur, "a center variety")
        cur.keyword("codim")
        codim = cur.integer("a codimension")
        return geo.BlowUp(ambient, center, codim, cur.name("an exceptional divisor name").text)
    if k == "zerolocus":
        ambient = _lookup(desc, cur, "an ambient variety")
        cur.keyword("bundle")
        return geo.ZeroLocus(ambient, _parse_bundle(cur, geo.lattice(ambient)))
    if k == "universal":
        base = _lookup(desc, cur, "a base variety")
        cur.keyword("w")
        w = cur.integer("a linear system dimension")
        cur.keyword("jump")
        jump = _lookup(desc, cur, "a jump locus")
        cur.keyword("divisor")
        divisor = _parse_class(cur, geo.lattice(base))
        hyp = "H'"
        if not cur.done():
            cur.keyword("hyperplane")
            hyp = cur.name("a hyperplane name").text
        return geo.UniversalDivisor(base, w, jump, divisor, hyp)
    if k == "models":
        models = []
        while not cur.done():
            models.append(_lookup(desc, cur, "a variety"))
        return geo.Models(tuple(models))
    raise cur.error(f"unknown construction {k!r}", kind)


def parse(text: str) -> Description:
    desc = Description()
    explicit_target = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cur = _Cursor(_tokenize(line, lineno), line, lineno)
        head = cur.name("a variety name or 'target'")
        if head.text == "target" and cur.peek() is not None and cur.peek().text != "=":
            tok = cur.name("a variety name")
            if tok.text not in desc.varieties:
                raise cur.error(f"unknown variety {tok.text!r}", tok)
            explicit_target = tok.text
        else:
            if head.text in desc.varieties:
                raise cur.error(f"variety {head.text!r} defined twice", head)
            cur.expect("=")
            kind = cur.name("a construction keyword")
            try:
                node = _construct(desc, kind, cur)
            except (geo.GeometryError, PicardError) as exc:
                raise DescriptionError(f"invalid {kind.text}: {exc}", lineno, kind.col) from None
            if not cur.done():
                raise cur.error(f"unexpected {cur.peek().text!r}")
            desc.varieties[head.text] = node
            desc.target_name = head.text
        if not cur.done():
            raise cur.error(f"unexpected {cur.peek().text!r}")
    if explicit_target is not None:
        desc.target_name = explicit_target
    if desc.target_name is None:
        raise DescriptionError("no varieties defined", 1, 1)
    return desc


BUNDLED = Path(__file__).parent / "examples"


def resolve_path(path: str | Path) -> Path:
    """Return ``path`` if it exists, else the bundled example with that file name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = BUNDLED / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such description file: {path}")


def load(path: str | Path) -> Description:
    return parse(resolve_path(path).read_text(encoding="utf-8"))
