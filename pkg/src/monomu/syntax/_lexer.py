import re
from typing import NamedTuple

from monomu.errors import ParseError

RESERVED = frozenset(
    {"mu", "nu", "true", "false", "exists", "forall", "sr", "box", "sing", "empty", "eqv", "A", "E"}
)

_SYMBOLS = ["[A]", "[E]", "[]", "<->", "<=", "<>", "->", "\\/", "/\\", "~", "(", ")", ".", ",", "|", "&"]
_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<id>[A-Za-z0-9_]+)|(?P<sym>" + "|".join(re.escape(s) for s in _SYMBOLS) + ")"
)


class Token(NamedTuple):
    kind: str  # "id", "sym" or "eof"
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            for i, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text):
        tok = self.peek
        return tok.kind != "eof" and tok.text == text

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text):
        tok = self.peek
        if tok.text != text or tok.kind == "eof":
            self.fail(f"expected {text!r}")
        return self.next()

    def identifier(self):
        tok = self.peek
        if tok.kind != "id":
            self.fail("expected identifier")
        if tok.text in RESERVED:
            self.fail(f"reserved word {tok.text!r} used as a variable")
        return self.next().text

    def end(self):
        if self.peek.kind != "eof":
            self.fail("trailing input")

    def fail(self, message):
        tok = self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.column)
