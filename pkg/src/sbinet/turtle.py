"""Reader and writer for the Turtle subset used in dataset annotation preludes.

Supported constructs: ``@prefix`` directives, subject blocks with
``;``-separated predicate-object lists and ``,``-separated object lists, the
``a`` shorthand for ``rdf:type``, angle-bracket IRIs and local names, prefixed
names, integer and double-quoted string literals, ``.`` terminators and ``#``
comments.  Anything outside this subset is rejected with a position-carrying
error rather than skipped.

Prefixed names expand by plain string concatenation of the declared prefix IRI
and the local part; no separator is inserted and no IRI normalization happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import TurtleSyntaxError, UndeclaredPrefix

RDF_TYPE_IRI = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"


@dataclass(frozen=True)
class Term:
    """One RDF term: an IRI (or local name) or an integer/string literal."""

    kind: str  # "iri" | "int" | "str"
    value: str | int

    @staticmethod
    def iri(value: str) -> "Term":
        return Term("iri", value)

    @staticmethod
    def integer(value: int) -> "Term":
        return Term("int", int(value))

    @staticmethod
    def string(value: str) -> "Term":
        return Term("str", str(value))

    @property
    def is_literal(self) -> bool:
        return self.kind != "iri"

    @property
    def sort_key(self) -> tuple[str, str]:
        return (self.kind, str(self.value))

    def turtle(self) -> str:
        if self.kind == "iri":
            return f"<{self.value}>"
        if self.kind == "int":
            return str(self.value)
        escaped = (
            str(self.value)
            .replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\r", "\\r")
            .replace("\t", "\\t")
        )
        return f'"{escaped}"'

    def __str__(self) -> str:
        return self.turtle()


RDF_TYPE = Term.iri(RDF_TYPE_IRI)


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if self.subject.is_literal or self.predicate.is_literal:
            raise ValueError("subject and predicate must not be literals")

    @property
    def sort_key(self):
        return (self.subject.sort_key, self.predicate.sort_key, self.object.sort_key)

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."


@dataclass(frozen=True)
class TurtleDocument:
    triples: frozenset[Triple]
    prefixes: dict[str, str]


_WS = " \t\r\n"
_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CHARS = _NAME_START | set("0123456789-.")
_ESCAPES = {"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\"}


class _Lexer:
    """Character scanner producing (type, value, line, col) tokens."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_ws_and_comments(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in _WS:
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def tokens(self):
        while True:
            self._skip_ws_and_comments()
            if self.pos >= len(self.text):
                yield ("eof", "", self.line, self.col)
                return
            line, col = self.line, self.col
            ch = self.text[self.pos]
            if ch == "<":
                end = self.text.find(">", self.pos + 1)
                nl = self.text.find("\n", self.pos + 1)
                if end < 0 or (0 <= nl < end):
                    raise TurtleSyntaxError("unterminated IRI", line, col)
                value = self.text[self.pos + 1 : end]
                self._advance(end - self.pos + 1)
                yield ("iriref", value, line, col)
            elif ch == '"':
                yield self._string(line, col)
            elif ch in ".;,":
                self._advance()
                yield ({".": "dot", ";": "semi", ",": "comma"}[ch], ch, line, col)
            elif ch == "@":
                self._advance()
                word = self._name()
                if word != "prefix":
                    raise TurtleSyntaxError(f"unsupported directive '@{word}'", line, col)
                yield ("at_prefix", word, line, col)
            elif ch == "-" or ch.isdigit():
                start = self.pos
                self._advance()
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self._advance()
                raw = self.text[start : self.pos]
                if raw in ("-",):
                    raise TurtleSyntaxError("expected digits after '-'", line, col)
                yield ("int", int(raw), line, col)
            elif ch in _NAME_START:
                name = self._name()
                if self.pos < len(self.text) and self.text[self.pos] == ":":
                    self._advance()
                    local = self._name(allow_empty=True)
                    yield ("pname", (name, local), line, col)
                elif name == "a":
                    yield ("kw_a", "a", line, col)
                else:
                    raise TurtleSyntaxError(f"unexpected bare word {name!r}", line, col)
            else:
                raise TurtleSyntaxError(f"unexpected character {ch!r}", line, col)

    def _name(self, allow_empty: bool = False) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _NAME_CHARS:
            self._advance()
        name = self.text[start : self.pos]
        if not name and not allow_empty:
            raise TurtleSyntaxError("expected a name", self.line, self.col)
        # trailing '.' belongs to the statement terminator, not the name
        while name.endswith("."):
            name = name[:-1]
            self.pos -= 1
            self.col -= 1
        return name

    def _string(self, line: int, col: int):
        self._advance()  # opening quote
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\n":
                break
            if ch == '"':
                self._advance()
                return ("str", "".join(out), line, col)
            if ch == "\\":
                self._advance()
                if self.pos >= len(self.text) or self.text[self.pos] not in _ESCAPES:
                    raise TurtleSyntaxError("unsupported escape sequence", self.line, self.col)
                out.append(_ESCAPES[self.text[self.pos]])
                self._advance()
            else:
                out.append(ch)
                self._advance()
        raise TurtleSyntaxError("unterminated string literal", line, col)


class _Parser:
    def __init__(self, text: str):
        self._stream = _Lexer(text).tokens()
        self.prefixes: dict[str, str] = {}
        self.triples: set[Triple] = set()
        self._tok = next(self._stream)

    def _next(self) -> None:
        self._tok = next(self._stream)

    def _expect(self, ttype: str, what: str) -> tuple:
        tok = self._tok
        if tok[0] != ttype:
            raise TurtleSyntaxError(f"expected {what}, found {tok[1]!r}", tok[2], tok[3])
        self._next()
        return tok

    def parse(self) -> TurtleDocument:
        while self._tok[0] != "eof":
            if self._tok[0] == "at_prefix":
                self._prefix_decl()
            else:
                self._triple_block()
        return TurtleDocument(frozenset(self.triples), dict(self.prefixes))

    def _prefix_decl(self) -> None:
        self._next()
        _, (name, local), line, col = self._expect("pname", "a prefix name")
        if local:
            raise TurtleSyntaxError("prefix declaration must end with ':'", line, col)
        _, iri, _, _ = self._expect("iriref", "an IRI")
        self._expect("dot", "'.'")
        self.prefixes[name] = iri

    def _resolve(self, tok) -> Term:
        ttype, value, line, col = tok
        if ttype == "iriref":
            return Term.iri(value)
        if ttype == "pname":
            prefix, local = value
            if prefix not in self.prefixes:
                raise UndeclaredPrefix(f"prefix '{prefix}:' is not declared", line, col)
            return Term.iri(self.prefixes[prefix] + local)
        raise TurtleSyntaxError(f"expected an IRI or prefixed name, found {value!r}", line, col)

    def _subject(self) -> Term:
        tok = self._tok
        if tok[0] not in ("iriref", "pname"):
            raise TurtleSyntaxError(f"expected a subject, found {tok[1]!r}", tok[2], tok[3])
        self._next()
        return self._resolve(tok)

    def _verb(self) -> Term:
        tok = self._tok
        if tok[0] == "kw_a":
            self._next()
            return RDF_TYPE
        if tok[0] in ("iriref", "pname"):
            self._next()
            return self._resolve(tok)
        raise TurtleSyntaxError(f"expected a predicate, found {tok[1]!r}", tok[2], tok[3])

    def _object(self) -> Term:
        tok = self._tok
        if tok[0] in ("iriref", "pname"):
            self._next()
            return self._resolve(tok)
        if tok[0] == "int":
            self._next()
            return Term.integer(tok[1])
        if tok[0] == "str":
            self._next()
            return Term.string(tok[1])
        raise TurtleSyntaxError(f"expected an object, found {tok[1]!r}", tok[2], tok[3])

    def _triple_block(self) -> None:
        subject = self._subject()
        while True:
            predicate = self._verb()
            while True:
                obj = self._object()
                self.triples.add(Triple(subject, predicate, obj))
                if self._tok[0] == "comma":
                    self._next()
                    continue
                break
            if self._tok[0] == "semi":
                self._next()
                if self._tok[0] == "dot":  # tolerate a trailing ';' before '.'
                    self._next()
                    return
                continue
            self._expect("dot", "'.', ';' or ','")
            return


def parse_turtle_document(text: str) -> TurtleDocument:
    """Parse annotation text, returning triples plus the declared prefix map."""
    return _Parser(text).parse()


def parse_turtle_subset(text: str) -> frozenset[Triple]:
    """Parse annotation text into the set of expanded triples."""
    return parse_turtle_document(text).triples


def serialize_triples(triples: Iterable[Triple]) -> str:
    """Serialize triples one statement per line, fully expanded, sorted.

    Re-parsing the output yields an equal triple set.
    """
    lines = [str(t) for t in sorted(triples, key=lambda t: t.sort_key)]
    return "\n".join(lines) + ("\n" if lines else "")
