# jetmaps/dsl/lexer.py

from dataclasses import dataclass
from typing import List

from jetmaps.errors import DslSyntaxError

PUNCTUATION = set("+-*/^()[],=")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> List[Token]:
    """Split one line of expression text into tokens.

    ``column_offset`` is the 0-based position of ``text`` inside its
    source line so that reported columns point into the original file.
    Identifiers may carry trailing primes (``t'``, ``f''``).
    """
    tokens: List[Token] = []
    i = 0
    size = len(text)
    while i < size:
        ch = text[i]
        column = column_offset + i + 1
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < size and text[i].isdigit():
                i += 1
            if i < size and (text[i].isalpha() or text[i] == "."):
                raise DslSyntaxError(
                    f"malformed number near {text[start:i + 1]!r}", line, column_offset + i + 1
                )
            tokens.append(Token("int", text[start:i], line, column))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < size and (text[i].isalnum() or text[i] == "_"):
                i += 1
            while i < size and text[i] == "'":
                i += 1
            tokens.append(Token("ident", text[start:i], line, column))
            continue
        if ch in PUNCTUATION:
            tokens.append(Token("op", ch, line, column))
            i += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, column)
    tokens.append(Token("end", "", line, column_offset + size + 1))
    return tokens
