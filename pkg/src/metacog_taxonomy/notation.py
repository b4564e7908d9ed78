"""Parser and printer for the arrow notation used to write scenarios.

Accepted input covers three surface styles::

    I -> [P, P->S, P ->] O, O->F->E->I + F->I          (bracketed)
    I->P, P->S, P->O, O->F->E->I + F->I                (flat)
    I->{P,S}, P<->S, {P,S}->O, Topology 8              (topology short)

Unicode arrows (``→``, ``↔``, ``⇌``, ``⇄``), the LaTeX arrow macros and ``$``
math delimiters are accepted as well. Brackets only mark the internal cluster
and carry no meaning of their own.

``parse_scenario`` never raises on bad input: it returns a
:class:`ParseResult` whose ``diagnostics`` explain what went wrong.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .model import (
    BACKBONE,
    Arrangement,
    InvalidScenario,
    Scenario,
    Shortcut,
    sort_nodes,
    sort_shortcuts,
)

__all__ = [
    "NotationStyle",
    "Severity",
    "ParseDiagnostic",
    "ParseResult",
    "NotationError",
    "IdOutOfRange",
    "parse_scenario",
    "parse",
    "format_scenario",
    "topology_id",
    "topology_shortcuts",
]


class NotationStyle(str, enum.Enum):
    BRACKETED = "bracketed"
    FLAT = "flat"
    TOPOLOGY = "topology"


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


class IdOutOfRange(ValueError):
    pass


_TOPOLOGIES: Tuple[FrozenSet[Shortcut], ...] = (
    frozenset(),
    frozenset({Shortcut.OE}),
    frozenset({Shortcut.OI}),
    frozenset({Shortcut.FI}),
    frozenset({Shortcut.OE, Shortcut.OI}),
    frozenset({Shortcut.OE, Shortcut.FI}),
    frozenset({Shortcut.OI, Shortcut.FI}),
    frozenset({Shortcut.OE, Shortcut.OI, Shortcut.FI}),
)


def topology_id(shortcuts: Iterable) -> int:
    return _TOPOLOGIES.index(frozenset(Shortcut(s) for s in shortcuts)) + 1


def topology_shortcuts(tid: int) -> FrozenSet[Shortcut]:
    if isinstance(tid, bool) or not isinstance(tid, int) or not 1 <= tid <= 8:
        raise IdOutOfRange(f"topology id must be in 1..8, got {tid!r}")
    return _TOPOLOGIES[tid - 1]


@dataclass(frozen=True)
class ParseDiagnostic:
    span: Tuple[int, int]  # UTF-8 byte offsets, end exclusive
    message: str
    severity: Severity = Severity.ERROR
    code: str = "Syntax"

    def render(self, text: Optional[str] = None) -> str:
        return f"{self.severity.value}[{self.code}] at {self.span[0]}..{self.span[1]}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    scenario: Optional[Scenario]
    diagnostics: Tuple[ParseDiagnostic, ...] = ()
    broken_links: Tuple[Tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return self.scenario is not None

    @property
    def canonical(self) -> bool:
        """False when the text used the broken-link operator."""
        return self.ok and not self.broken_links

    @property
    def errors(self) -> Tuple[ParseDiagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.ERROR)

    @property
    def warnings(self) -> Tuple[ParseDiagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.WARNING)


class NotationError(ValueError):
    def __init__(self, text: str, diagnostics: Sequence[ParseDiagnostic]):
        self.text = text
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(d.render() for d in self.errors) or "invalid notation")

    @property
    def errors(self):
        return [d for d in self.diagnostics if d.severity is Severity.ERROR]


# ---------------------------------------------------------------- tokenizer

class _Tok:
    # plain constants: enum member lookup is measurably slow in the tokenizer hot loop
    NODE = "node"
    ARROW = "->"
    BIARROW = "<->"
    BROKEN = "x"
    LBRACE = "{"
    RBRACE = "}"
    LBRACK = "["
    RBRACK = "]"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","
    PLUS = "+"
    WORD = "word"
    NUMBER = "number"
    COLON = ":"


class _Token(NamedTuple):
    kind: str  # one of the _Tok constants
    text: str
    start: int  # character offsets
    end: int


_LATEX = {
    "rightarrow": _Tok.ARROW,
    "to": _Tok.ARROW,
    "longrightarrow": _Tok.ARROW,
    "rightleftharpoons": _Tok.BIARROW,
    "rightleftarrows": _Tok.BIARROW,
    "leftrightarrow": _Tok.BIARROW,
    "leftrightarrows": _Tok.BIARROW,
    "leftrightharpoons": _Tok.BIARROW,
    "otimes": _Tok.BROKEN,
}
_LATEX_SPACING = {",", ";", ":", "!", " ", "quad", "qquad"}

_SINGLE = {
    "→": _Tok.ARROW,
    "↔": _Tok.BIARROW,
    "⇌": _Tok.BIARROW,
    "⇄": _Tok.BIARROW,
    "⟷": _Tok.BIARROW,
    "⊗": _Tok.BROKEN,
    "{": _Tok.LBRACE,
    "}": _Tok.RBRACE,
    "[": _Tok.LBRACK,
    "]": _Tok.RBRACK,
    "(": _Tok.LPAREN,
    ")": _Tok.RPAREN,
    ",": _Tok.COMMA,
    "+": _Tok.PLUS,
    ":": _Tok.COLON,
}
_FIXED = {"->": _Tok.ARROW, "<->": _Tok.BIARROW, "<=>": _Tok.BIARROW, **_SINGLE}
_NODE_LETTERS = frozenset("IPSOFE")


class _Diagnostics:
    def __init__(self, text: str):
        self.text = text
        self.items: List[ParseDiagnostic] = []
        self._bytes: Optional[List[int]] = None  # character offset -> byte offset, built on demand

    def span(self, start: int, end: int) -> Tuple[int, int]:
        if self._bytes is None:
            self._bytes = [0]
            for ch in self.text:
                self._bytes.append(self._bytes[-1] + len(ch.encode("utf-8", "surrogatepass")))
        n = len(self.text)
        start = max(0, min(start, n))
        end = max(start, min(end, n))
        if end == start and n:
            if end < n:
                end += 1
            else:
                start -= 1
        return (self._bytes[start], self._bytes[end])

    def add(self, start, end, message, code, severity=Severity.ERROR):
        self.items.append(ParseDiagnostic(self.span(start, end), message, severity, code))

    def error(self, start, end, message, code="Syntax"):
        self.add(start, end, message, code)

    def warn(self, start, end, message, code):
        self.add(start, end, message, code, Severity.WARNING)

    @property
    def failed(self) -> bool:
        return any(d.severity is Severity.ERROR for d in self.items)


_SCANNER = re.compile(r"""
    (?P<skip>[\s$\u200b]+)
  | \\(?P<macro>[A-Za-z_][A-Za-z0-9_]*)
  | \\(?P<escaped>[{}])
  | \\(?P<spacing>[,;:! ])
  | (?P<fixed><->|<=>|->|[→↔⇌⇄⟷⊗{}\[\](),+:])
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<bad>.)
""", re.VERBOSE | re.DOTALL)


def _tokenize(text: str, diag: _Diagnostics) -> List[_Token]:
    tokens: List[_Token] = []
    for m in _SCANNER.finditer(text):
        kind = m.lastgroup
        if kind == "skip" or kind == "spacing":
            continue
        i, j = m.span()
        if kind == "fixed":
            text = m.group()
            tokens.append(_Token(_FIXED[text], text, i, j))
        elif kind == "word":
            word = m.group()
            tokens.append(_Token(_Tok.NODE if word in _NODE_LETTERS else _Tok.WORD, word, i, j))
        elif kind == "number":
            tokens.append(_Token(_Tok.NUMBER, m.group(), i, j))
        elif kind == "macro":
            name = m.group("macro")
            if name in _LATEX:
                tokens.append(_Token(_LATEX[name], m.group(), i, j))
            elif name not in _LATEX_SPACING:
                diag.error(i, j, f"unknown macro {m.group()!r}", "UnknownToken")
        elif kind == "escaped":
            tokens.append(_Token(_Tok.LBRACE if m.group("escaped") == "{" else _Tok.RBRACE, m.group(), i, j))
        elif m.group() == "\\":
            diag.error(i, j, "stray backslash", "UnknownToken")
        else:
            diag.error(i, j, f"unexpected character {m.group()!r}", "UnknownToken")
    return tokens


# ------------------------------------------------------------------- parser

@dataclass
class _Edge:
    src: str
    dst: str
    op: str  # _Tok.ARROW, BIARROW or BROKEN
    start: int
    end: int


@dataclass
class _Reading:
    edges: List[_Edge] = field(default_factory=list)
    loose_entries: List[Tuple[Tuple[str, ...], int, int]] = field(default_factory=list)
    topologies: List[Tuple[int, int, int]] = field(default_factory=list)


class _Parser:
    def __init__(self, tokens: List[_Token], diag: _Diagnostics):
        self.n = len(tokens)
        self.toks = tokens + [None] * 4  # sentinels so peek needs no bounds check
        self.pos = 0
        self.diag = diag
        self.depth = 0  # bracket depth
        self.out = _Reading()

    def peek(self, offset: int = 0) -> Optional[_Token]:
        return self.toks[self.pos + offset]

    def take(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def skip_brackets(self) -> None:
        while (tok := self.peek()) is not None and tok.kind in (_Tok.LBRACK, _Tok.RBRACK):
            self.take()
            if tok.kind is _Tok.LBRACK:
                self.depth += 1
            elif self.depth == 0:
                self.diag.error(tok.start, tok.end, "unbalanced ']'", "Syntax")
            else:
                self.depth -= 1

    def run(self) -> _Reading:
        self.skip_label()
        while self.peek() is not None:
            self.clause()
            tok = self.peek()
            if tok is None:
                break
            if tok.kind in (_Tok.COMMA, _Tok.PLUS):
                self.take()
                continue
            if tok.kind in (_Tok.LPAREN, _Tok.WORD):
                continue  # "(Topology 8)" or an annotation may follow without a separator
            self.diag.error(tok.start, tok.end, f"unexpected {tok.text!r}", "UnknownToken")
            self.take()
        if self.depth:
            last = self.toks[self.n - 1]
            self.diag.error(last.start, last.end, "unclosed '['", "Syntax")
        return self.out

    def skip_label(self) -> None:
        # optional leading "S7:" or "Scenario 7:" label
        for n in (2, 3):
            toks = [self.peek(k) for k in range(n)]
            if any(t is None for t in toks) or toks[-1].kind is not _Tok.COLON:
                continue
            if all(t.kind in (_Tok.WORD, _Tok.NUMBER, _Tok.NODE) for t in toks[:-1]):
                self.pos += n
                return

    def clause(self) -> None:
        self.skip_brackets()
        tok = self.peek()
        if tok is None:
            return
        if tok.kind in (_Tok.COMMA, _Tok.PLUS):
            return  # empty clause, e.g. "O,$ $O"
        if tok.kind is _Tok.LPAREN:
            self.paren_group()
            return
        if tok.kind is _Tok.WORD:
            if tok.text.lower() == "topology":
                self.topology_clause()
                return
            if tok.text.lower() == "full" and (nxt := self.peek(1)) and nxt.text.lower() == "topology":
                self.take()
                self.topology_clause()
                return
            self.trailing_annotation(tok)
            return
        if tok.kind in (_Tok.NODE, _Tok.LBRACE):
            self.chain()
            return
        self.diag.error(tok.start, tok.end, f"unexpected {tok.text!r}", "UnknownToken")
        self.take()

    def topology_clause(self) -> None:
        word = self.take()
        num = self.peek()
        if num is None or num.kind is not _Tok.NUMBER:
            end = num.end if num is not None else word.end
            self.diag.error(word.start, end, "expected a topology number after 'Topology'", "Syntax")
            if num is not None and num.kind not in (_Tok.COMMA, _Tok.PLUS, _Tok.RPAREN):
                self.take()
            return
        self.take()
        self.out.topologies.append((int(num.text), word.start, num.end))

    def paren_group(self) -> None:
        open_ = self.take()
        inner: List[_Token] = []
        depth = 1
        while (tok := self.peek()) is not None:
            self.take()
            if tok.kind is _Tok.LPAREN:
                depth += 1
            elif tok.kind is _Tok.RPAREN:
                depth -= 1
                if depth == 0:
                    break
            inner.append(tok)
        else:
            self.diag.error(open_.start, open_.end, "unclosed '('", "Syntax")
            return
        words = [t.text.lower() for t in inner]
        if len(inner) >= 2 and inner[-2].text.lower() == "topology" and inner[-1].kind is _Tok.NUMBER \
                and all(w in ("full", "topology") for w in words[:-1]):
            self.out.topologies.append((int(inner[-1].text), inner[-2].start, inner[-1].end))
            return
        end = tok.end
        if self.peek() is None:
            self.diag.warn(open_.start, end, "ignored trailing annotation", "UnknownAnnotation")
        else:
            self.diag.error(open_.start, end, "parenthesised text is only allowed as a trailing annotation",
                            "UnknownToken")

    def trailing_annotation(self, tok: _Token) -> None:
        rest = self.toks[self.pos:self.n]
        if any(t.kind in (_Tok.ARROW, _Tok.BIARROW, _Tok.BROKEN) for t in rest):
            self.diag.error(tok.start, tok.end, f"unknown token {tok.text!r}", "UnknownToken")
            self.recover()
            return
        self.diag.warn(tok.start, rest[-1].end, "ignored trailing annotation", "UnknownAnnotation")
        self.pos = self.n

    def term(self) -> Optional[Tuple[Tuple[str, ...], int, int]]:
        self.skip_brackets()
        tok = self.peek()
        if tok is None:
            last = self.toks[self.n - 1]
            self.diag.error(last.start, last.end, "expected a node or node set", "Syntax")
            return None
        if tok.kind is _Tok.NODE:
            self.take()
            return (tok.text,), tok.start, tok.end
        if tok.kind is _Tok.LBRACE:
            self.take()
            members: List[str] = []
            while True:
                t = self.peek()
                if t is None:
                    self.diag.error(tok.start, tok.end, "unclosed '{'", "Syntax")
                    return None
                self.take()
                if t.kind is _Tok.RBRACE:
                    break
                if t.kind is _Tok.COMMA:
                    continue
                if t.kind is _Tok.NODE:
                    if t.text in members:
                        self.diag.warn(t.start, t.end, f"node {t.text} repeated in set", "Redundant")
                    else:
                        members.append(t.text)
                    continue
                self.diag.error(t.start, t.end, f"unexpected {t.text!r} inside set", "UnknownToken")
            if not members:
                self.diag.error(tok.start, t.end, "empty node set", "Syntax")
                return None
            return tuple(members), tok.start, t.end
        self.diag.error(tok.start, tok.end, f"expected a node or node set, got {tok.text!r}", "Syntax")
        return None

    def chain(self) -> None:
        depth_at_start = self.depth
        first = self.term()
        if first is None:
            self.recover()
            return
        left = first
        arrows = 0
        while (tok := self.peek()) is not None and tok.kind in (_Tok.ARROW, _Tok.BIARROW, _Tok.BROKEN):
            self.take()
            right = self.term()
            if right is None:
                self.recover()
                return
            arrows += 1
            for a in left[0]:
                for b in right[0]:
                    self.out.edges.append(_Edge(a, b, tok.kind, left[1], right[2]))
            left = right
        self.skip_brackets()
        if arrows == 0:
            if depth_at_start > 0 or self.depth > 0:
                self.out.loose_entries.append(first)
            else:
                self.diag.error(first[1], first[2], "node set without any connection", "Syntax")

    def recover(self) -> None:
        while (tok := self.peek()) is not None and tok.kind not in (_Tok.COMMA, _Tok.PLUS):
            self.take()


# -------------------------------------------------------------- interpreter

_SHORTCUT_EDGES: Dict[Tuple[str, str], Shortcut] = {sc.edge: sc for sc in Shortcut}
_EXTERNAL = frozenset("OFEI")


def _interpret(reading: _Reading, diag: _Diagnostics, text: str):
    entry: Dict[str, None] = {}
    exit_: Dict[str, None] = {}
    arrangements: List[Tuple[Arrangement, _Edge]] = []
    shortcuts: Dict[Shortcut, None] = {}
    backbone_seen: Dict[Tuple[str, str], _Edge] = {}
    external_named = False
    broken: List[Tuple[str, str]] = []

    for e in reading.edges:
        pair = (e.src, e.dst)
        if e.src == e.dst:
            diag.error(e.start, e.end, f"self-loop {e.src}->{e.dst}", "InvalidEdge")
            continue
        if e.op is _Tok.BROKEN:
            broken.append(pair)
            diag.warn(e.start, e.end, f"broken link {e.src}x{e.dst}; scenario is not canonical", "BrokenLink")
            if pair in BACKBONE:
                external_named = True
                backbone_seen.setdefault(pair, e)
            elif e.src in _EXTERNAL and e.dst in _EXTERNAL:
                external_named = True
            continue
        if {e.src, e.dst} == {"P", "S"}:
            if e.op is _Tok.BIARROW:
                arr = Arrangement.BIDIRECTIONAL
            else:
                arr = Arrangement.BOTTOM_UP if pair == ("P", "S") else Arrangement.TOP_DOWN
            arrangements.append((arr, e))
            continue
        if e.op is _Tok.BIARROW:
            diag.error(e.start, e.end, "bidirectional arrows are only meaningful between P and S", "InvalidEdge")
            continue
        if e.src == "I" and e.dst in "PS":
            entry[e.dst] = None
        elif e.src in "PS" and e.dst == "O":
            exit_[e.src] = None
        elif pair in BACKBONE:
            external_named = True
            if pair in backbone_seen:
                diag.warn(e.start, e.end, f"{e.src}->{e.dst} is part of the backbone; repeated edge ignored",
                          "RedundantBackbone")
            else:
                backbone_seen[pair] = e
        elif pair in _SHORTCUT_EDGES:
            external_named = True
            sc = _SHORTCUT_EDGES[pair]
            if sc in shortcuts:
                diag.warn(e.start, e.end, f"shortcut {e.src}->{e.dst} listed twice", "Redundant")
            shortcuts[sc] = None
        elif e.src in _EXTERNAL and e.dst in _EXTERNAL:
            external_named = True
            diag.error(e.start, e.end, f"{e.src}->{e.dst} is neither a backbone edge nor a shortcut; "
                       "the external chain must follow O->F->E->I", "MissingBackbone")
        else:
            diag.error(e.start, e.end, f"{e.src}->{e.dst} is not a valid connection", "InvalidEdge")

    for members, start, end in reading.loose_entries:
        bad = [m for m in members if m not in "PS"]
        if bad:
            diag.error(start, end, f"only P and S can receive input, got {','.join(bad)}", "InvalidEdge")
            continue
        for m in members:
            entry[m] = None
        diag.warn(start, end, "entry set listed apart from 'I ->'; read as input to these nodes", "LooseEntry")

    whole = (0, len(text))
    if not entry:
        diag.error(*whole, "no entry connection (I->P and/or I->S) given", "EmptyEntry")
    if not exit_:
        diag.error(*whole, "no exit connection (P->O and/or S->O) given", "EmptyExit")

    internal = None
    if not arrangements:
        diag.error(*whole, "no internal arrangement (P->S, S->P or P<->S) given", "MissingArrangement")
    else:
        internal, first_edge = arrangements[0]
        for arr, e in arrangements[1:]:
            if arr is not internal:
                diag.error(e.start, e.end, f"internal arrangement {arr.value} conflicts with {internal.value}",
                           "ConflictingArrangement")
            elif (e.start, e.end) != (first_edge.start, first_edge.end):
                diag.warn(e.start, e.end, "internal arrangement repeated", "Redundant")

    if external_named and len(backbone_seen) < len(BACKBONE):
        missing = [f"{a}->{b}" for a, b in BACKBONE if (a, b) not in backbone_seen]
        diag.error(*whole, f"external chain omits backbone edge(s) {', '.join(missing)}", "MissingBackbone")

    chosen = frozenset(shortcuts)
    for tid, start, end in reading.topologies:
        try:
            from_id = topology_shortcuts(tid)
        except IdOutOfRange as exc:
            diag.error(start, end, str(exc), "IdOutOfRange")
            continue
        if external_named and from_id != chosen:
            diag.error(start, end, f"Topology {tid} disagrees with the listed shortcuts "
                       f"(Topology {topology_id(chosen)})", "TopologyMismatch")
        chosen = from_id
    if not external_named and not reading.topologies:
        diag.warn(*whole, "no external topology given; assuming Topology 1", "ImplicitTopology")

    if diag.failed:
        return None, ()
    return Scenario(entry=entry, internal=internal, exit=exit_, shortcuts=chosen), tuple(broken)


# Fast path for the exact strings format_scenario prints; anything else goes
# through the general parser. Both must agree (checked in the test suite).
_A, _B = "(?:->|→)", "(?:<->|↔)"
_SET = r"(P|S|\{P,S\})"
_ARR = f"(P{_A}S|S{_A}P|P{_B}S)"
_SCS = f"((?: \\+ O{_A}E)?(?: \\+ O{_A}I)?(?: \\+ F{_A}I)?)"
_CANONICAL = re.compile(
    f"I {_A} \\[{_SET}, {_ARR}, {_SET} {_A}\\] O, O{_A}F{_A}E{_A}I{_SCS}"
    f"|I{_A}{_SET}, {_ARR}, {_SET}{_A}O, (?:O{_A}F{_A}E{_A}I{_SCS}|Topology ([1-8]))"
)
_ARR_OF = {"P": Arrangement.BOTTOM_UP, "S": Arrangement.TOP_DOWN}


def _parse_canonical(text: str) -> Optional[Scenario]:
    m = _CANONICAL.fullmatch(text)
    if m is None:
        return None
    g = m.groups()
    entry, arr, exit_, scs = (g[0:4] if g[0] is not None else g[4:8])
    if g[0] is None and g[8] is not None:
        shortcuts = topology_shortcuts(int(g[8]))
    else:
        scs = scs.replace("→", "->")
        shortcuts = frozenset(sc for sc in Shortcut if f"{sc.value[0]}->{sc.value[1]}" in scs)
    internal = Arrangement.BIDIRECTIONAL if ("<" in arr or "↔" in arr) else _ARR_OF[arr[0]]
    nodes = lambda s: ("P", "S") if s.startswith("{") else (s,)
    return Scenario(entry=nodes(entry), internal=internal, exit=nodes(exit_), shortcuts=shortcuts)


def parse_scenario(text: Union[str, bytes]) -> ParseResult:
    """Parse scenario notation, collecting diagnostics instead of raising."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            span = (exc.start, max(exc.end, exc.start + 1))
            return ParseResult(None, (ParseDiagnostic(span, "input is not valid UTF-8", Severity.ERROR,
                                                      "Encoding"),))
    fast = _parse_canonical(text)
    if fast is not None:
        return ParseResult(fast)
    return _parse_general(text)


def _parse_general(text: str) -> ParseResult:
    diag = _Diagnostics(text)
    tokens = _tokenize(text, diag)
    if not tokens:
        diag.error(0, len(text), "empty notation", "Syntax")
        return ParseResult(None, tuple(diag.items))
    reading = _Parser(tokens, diag).run()
    if diag.failed:
        return ParseResult(None, tuple(diag.items))
    try:
        scenario, broken = _interpret(reading, diag, text)
    except InvalidScenario as exc:  # pragma: no cover - interpreter guards entry/exit itself
        diag.error(0, len(text), str(exc), "Syntax")
        scenario, broken = None, ()
    return ParseResult(scenario, tuple(diag.items), broken)


def parse(text: Union[str, bytes], label: Optional[str] = None) -> Scenario:
    """Like :func:`parse_scenario` but raises :class:`NotationError` on failure."""
    result = parse_scenario(text)
    if result.scenario is None:
        raise NotationError(text if isinstance(text, str) else repr(text), result.diagnostics)
    return result.scenario.with_label(label) if label else result.scenario


# ------------------------------------------------------------------ printer

_GLYPHS = {
    False: {"->": "->", "<->": "<->"},
    True: {"->": "→", "<->": "↔"},
}
_ARRANGEMENT_TEXT = {
    Arrangement.BOTTOM_UP: "P{a}S",
    Arrangement.TOP_DOWN: "S{a}P",
    Arrangement.BIDIRECTIONAL: "P{b}S",
}


def _nodes(nodes) -> str:
    names = [n.value for n in sort_nodes(nodes)]
    return names[0] if len(names) == 1 else "{" + ",".join(names) + "}"


def format_scenario(s: Scenario, style: Union[NotationStyle, str] = NotationStyle.BRACKETED,
                    unicode: bool = False) -> str:
    style = NotationStyle(style)
    a = _GLYPHS[unicode]["->"]
    b = _GLYPHS[unicode]["<->"]
    arrangement = _ARRANGEMENT_TEXT[s.internal].format(a=a, b=b)
    entry, exit_ = _nodes(s.entry), _nodes(s.exit)
    if style is NotationStyle.TOPOLOGY:
        return f"I{a}{entry}, {arrangement}, {exit_}{a}O, Topology {topology_id(s.shortcuts)}"
    external = a.join("OFEI")
    for sc in sort_shortcuts(s.shortcuts):
        external += f" + {sc.value[0]}{a}{sc.value[1]}"
    if style is NotationStyle.FLAT:
        return f"I{a}{entry}, {arrangement}, {exit_}{a}O, {external}"
    return f"I {a} [{entry}, {arrangement}, {exit_} {a}] O, {external}"
