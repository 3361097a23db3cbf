"""Quivers, paths, relations, and the plain-text quiver DSL.

Grammar (one statement per `;`, `#` comments to end of line):

    file  := stmt+
    stmt  := vdecl | adecl | rdecl | sdecl
    vdecl := "vertices" ident+ ";"
    adecl := "arrow" ident ":" ident "->" ident ";"
    rdecl := "rel" relexpr ";"
    relexpr := term (("+"|"-") term)*
    term  := (coef "*")? ident ("*" ident)*
    coef  := int | int "/" int
    sdecl := "special" ident+ ";"

Identifiers are [A-Za-z0-9_]+.  Vertex names may be bare integers, arrow
names must not be (that keeps `2*a` meaning coefficient 2 unambiguous).
A `-` directly in front of digits in coefficient position lexes as a
negative integer literal, so a relation whose first term has a negative
coefficient serializes as e.g. `rel -1*a*b + c*d;`.

Paths read left to right along the orientation: a path `a*b` first
traverses a, then b, and composing p, q requires target(p) = source(q).

Name-decoration table used by the splitting constructions (plus/minus
superscripts of the underlying construction rendered in ASCII):

    vertex v split:        v__p, v__m
    arrow a, both signs:   a__p_p, a__p_m, a__m_p, a__m_m
    arrow a, left sign:    a__p_o, a__m_o      (o = undecorated side)
    arrow a, right sign:   a__o_p, a__o_m
    one-sign family:       a__p, a__m          (companion gentle pair)
    added special loop:    delta__v
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class QuiverError(ValueError):
    """Invalid quiver data (duplicate names, dangling endpoints, ...)."""


class DslSyntaxError(QuiverError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class RelationExpr:
    """Homogeneous linear combination of equal-length parallel paths."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    def __post_init__(self):
        if not self.terms:
            raise QuiverError("relation with no terms")
        for coef, path in self.terms:
            if coef == 0:
                raise QuiverError("zero coefficient in relation")
            if not path:
                raise QuiverError("empty path in relation")

    @property
    def paths(self):
        return [path for _, path in self.terms]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def length(self) -> int:
        return len(self.terms[0][1])


@dataclass(frozen=True)
class Path:
    """A (possibly trivial) path; source == target when arrows is empty."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)


class _ZeroPath:
    """Distinguished zero of path composition (Kronecker delta miss)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_PATH"

    def __bool__(self):
        return False


ZERO_PATH = _ZeroPath()


@dataclass(frozen=True)
class QuiverSpec:
    """A finite quiver with relations and a set of special vertices.

    Declaration order of vertices and arrows is part of the data: it later
    seeds the monomial order of the normal-form engine.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)
    relations: tuple[RelationExpr, ...] = ()
    special: tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise QuiverError(f"duplicate vertex name {v!r}")
            seen.add(v)
        vset = set(self.vertices)
        aseen = set()
        for name, s, t in self.arrows:
            if name in aseen:
                raise QuiverError(f"duplicate arrow name {name!r}")
            aseen.add(name)
            if s not in vset or t not in vset:
                raise QuiverError(f"arrow {name!r} has dangling endpoint {s!r}->{t!r}")
        src = {name: s for name, s, _ in self.arrows}
        tgt = {name: t for name, _, t in self.arrows}
        for rel in self.relations:
            lengths = {len(p) for p in rel.paths}
            if len(lengths) != 1:
                raise QuiverError("mixed-length relation")
            ends = set()
            for p in rel.paths:
                for a in p:
                    if a not in aseen:
                        raise QuiverError(f"relation references unknown arrow {a!r}")
                for a, b in zip(p, p[1:]):
                    if tgt[a] != src[b]:
                        raise QuiverError(
                            f"non-composable relation path: target({a})={tgt[a]} != source({b})={src[b]}"
                        )
                ends.add((src[p[0]], tgt[p[-1]]))
            if len(ends) != 1:
                raise QuiverError("relation terms are not parallel paths")
        sseen = set()
        for v in self.special:
            if v not in vset:
                raise QuiverError(f"special vertex {v!r} not declared")
            if v in sseen:
                raise QuiverError(f"duplicate special vertex {v!r}")
            sseen.add(v)

    # -- structure helpers -------------------------------------------------
    def arrow_source(self, name: str) -> str:
        return self._src()[name]

    def arrow_target(self, name: str) -> str:
        return self._tgt()[name]

    def _src(self):
        return {name: s for name, s, _ in self.arrows}

    def _tgt(self):
        return {name: t for name, _, t in self.arrows}

    def arrows_from(self, v: str):
        return [name for name, s, _ in self.arrows if s == v]

    def arrows_into(self, v: str):
        return [name for name, _, t in self.arrows if t == v]

    def path(self, arrows) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("use trivial_path(v) for empty paths")
        src, tgt = self._src(), self._tgt()
        for a, b in zip(arrows, arrows[1:]):
            if tgt[a] != src[b]:
                raise QuiverError(f"non-composable path at {a!r}*{b!r}")
        return Path(src[arrows[0]], tgt[arrows[-1]], arrows)

    def trivial_path(self, v: str) -> Path:
        if v not in self.vertices:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path(v, v, ())


def path_compose(p: Path, q: Path):
    """Concatenation when target(p) = source(q), otherwise ZERO_PATH."""
    if p.target != q.source:
        return ZERO_PATH
    return Path(p.source, q.target, p.arrows + q.arrows)


# ---------------------------------------------------------------------------
# Lexer / parser
# ---------------------------------------------------------------------------

_KEYWORDS = {"vertices", "arrow", "rel", "special"}


@dataclass
class _Tok:
    kind: str  # ident | int | punct
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _IDENT_CHARS:
            j = i
            while j < n and text[j] in _IDENT_CHARS:
                j += 1
            word = text[i:j]
            kind = "int" if word.isdigit() else "ident"
            toks.append(_Tok(kind, word, line, col))
            col += j - i
            i = j
            continue
        if ch == "-" and i + 1 < n and text[i + 1].isdigit():
            # negative integer literal only in operand position
            prev = toks[-1] if toks else None
            if prev is None or prev.text in {"+", "-", "*", ":", ";"} or (
                prev.kind == "ident" and prev.text in _KEYWORDS
            ):
                j = i + 1
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(_Tok("int", text[i:j], line, col))
                col += j - i
                i = j
                continue
        if ch == "-" and i + 1 < n and text[i + 1] == ">":
            toks.append(_Tok("punct", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "+-*/:;":
            toks.append(_Tok("punct", ch, line, col))
            i += 1
            col += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def _err(self, msg):
        if self.i < len(self.toks):
            t = self.toks[self.i]
            raise DslSyntaxError(msg, t.line, t.col)
        last = self.toks[-1] if self.toks else _Tok("punct", "", 1, 1)
        raise DslSyntaxError(msg + " (at end of input)", last.line, last.col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind=None, text=None):
        t = self.peek()
        if t is None or (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind or "token"
            self._err(f"expected {want}")
        self.i += 1
        return t

    def name(self) -> str:
        t = self.peek()
        if t is None or t.kind not in ("ident", "int") or t.text.startswith("-"):
            self._err("expected identifier")
        self.i += 1
        return t.text

    def parse(self):
        vertices: list[str] = []
        arrows: list[tuple[str, str, str]] = []
        relations: list[RelationExpr] = []
        special: list[str] = []
        if self.peek() is None:
            raise DslSyntaxError("empty input", 1, 1)
        while self.peek() is not None:
            t = self.peek()
            if t.kind != "ident" or t.text not in _KEYWORDS:
                self._err("expected statement keyword (vertices/arrow/rel/special)")
            if t.text == "vertices":
                self.take()
                while self.peek() is not None and self.peek().text != ";":
                    vertices.append(self.name())
                if not vertices:
                    self._err("vertices declaration needs at least one name")
                self.take(text=";")
            elif t.text == "arrow":
                self.take()
                nm_tok = self.peek()
                nm = self.name()
                if nm.isdigit() or nm.lstrip("-").isdigit():
                    raise DslSyntaxError(
                        "arrow name must not be an integer literal", nm_tok.line, nm_tok.col
                    )
                self.take(text=":")
                s = self.name()
                self.take(text="->")
                tt = self.name()
                self.take(text=";")
                arrows.append((nm, s, tt))
            elif t.text == "rel":
                self.take()
                relations.append(self._relexpr())
                self.take(text=";")
            else:  # special
                self.take()
                while self.peek() is not None and self.peek().text != ";":
                    special.append(self.name())
                self.take(text=";")
        return vertices, arrows, relations, special

    def _relexpr(self) -> RelationExpr:
        terms = [self._term(Fraction(1))]
        while self.peek() is not None and self.peek().text in ("+", "-"):
            sign = Fraction(1) if self.take().text == "+" else Fraction(-1)
            terms.append(self._term(sign))
        return RelationExpr(tuple(terms))

    def _term(self, sign: Fraction):
        coef = Fraction(1)
        t = self.peek()
        if t is not None and t.kind == "int" and self._int_is_coef():
            num = int(self.take().text)
            den = 1
            if self.peek() is not None and self.peek().text == "/":
                self.take()
                den = int(self.take(kind="int").text)
                if den == 0:
                    self._err("zero denominator")
            coef = Fraction(num, den)
            self.take(text="*")
        path = [self.name()]
        while self.peek() is not None and self.peek().text == "*":
            self.take()
            path.append(self.name())
        return (sign * coef, tuple(path))

    def _int_is_coef(self) -> bool:
        # An int token opens a coefficient iff it is followed by / or by a
        # `*`; arrow names are never integers so `2*a` is unambiguous.
        t = self.toks[self.i]
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
        if t.text.startswith("-"):
            return True
        return nxt is not None and nxt.text in ("*", "/")


def parse(text: str) -> QuiverSpec:
    """Parse DSL source into a QuiverSpec, preserving declaration order."""
    vertices, arrows, relations, special = _Parser(_lex(text)).parse()
    return QuiverSpec(tuple(vertices), tuple(arrows), tuple(relations), tuple(special))


def _fmt_coef(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(spec: QuiverSpec) -> str:
    """Canonical DSL text; parse(serialize(spec)) == spec."""
    lines = ["vertices " + " ".join(spec.vertices) + ";"]
    for name, s, t in spec.arrows:
        lines.append(f"arrow {name}: {s}->{t};")
    for rel in spec.relations:
        parts = []
        for idx, (coef, path) in enumerate(rel.terms):
            body = "*".join(path)
            mag = abs(coef)
            txt = body if mag == 1 else f"{_fmt_coef(mag)}*{body}"
            if idx == 0:
                if coef < 0:
                    txt = f"{_fmt_coef(coef)}*{body}" if mag != 1 else f"-1*{body}"
                parts.append(txt)
            else:
                parts.append(("+ " if coef > 0 else "- ") + txt)
        lines.append("rel " + " ".join(parts) + ";")
    if spec.special:
        lines.append("special " + " ".join(spec.special) + ";")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# ASCII renderings of the decorated names (for reports and witnesses)
# ---------------------------------------------------------------------------

def display_name(name: str) -> str:
    """Human form of a decorated name: a__p_m -> '+a-', 1__p -> '1+'."""
    if "__" not in name:
        return name
    base, _, deco = name.rpartition("__")
    signs = {"p": "+", "m": "-", "o": ""}
    if deco in ("p", "m"):
        return base + signs[deco]
    if "_" in deco:
        left, right = deco.split("_", 1)
        if left in signs and right in signs:
            return signs[left] + base + signs[right]
    return name
