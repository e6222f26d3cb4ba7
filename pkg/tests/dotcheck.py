"""Minimal checker for the undirected subset of the DOT grammar we emit."""

from __future__ import annotations

import re

_TOKEN = re.compile(
    r'\s+|(?P<str>"(?:[^"\\]|\\.)*")|(?P<kw>graph|subgraph)\b'
    r"|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>--|[{}\[\];=,])"
)


def tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ValueError(f"lexical error at offset {pos}: {text[pos:pos+20]!r}")
        pos = match.end()
        tok = match.group().strip()
        if tok:
            tokens.append(tok)
    return tokens


def check_dot(text: str) -> None:
    """Raise ValueError unless the text is a well-formed undirected graph."""
    tokens = tokenize(text)
    if not tokens or tokens[0] != "graph":
        raise ValueError("must start with 'graph'")
    i = 1
    if tokens[i] not in "{":
        i += 1  # optional graph name
    if tokens[i] != "{":
        raise ValueError("missing opening brace")
    depth = 0
    in_attrs = False
    for j in range(i, len(tokens)):
        tok = tokens[j]
        if tok == "{":
            depth += 1
        elif tok == "}":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced braces")
        elif tok == "[":
            if in_attrs:
                raise ValueError("nested attribute list")
            in_attrs = True
        elif tok == "]":
            if not in_attrs:
                raise ValueError("stray ']'")
            in_attrs = False
        elif tok == "--":
            prev_ok = tokens[j - 1].startswith('"') or tokens[j - 1].isidentifier()
            next_ok = j + 1 < len(tokens) and (
                tokens[j + 1].startswith('"') or tokens[j + 1].isidentifier()
            )
            if not (prev_ok and next_ok):
                raise ValueError("edge operator without node operands")
    if depth != 0:
        raise ValueError("unbalanced braces")
    if in_attrs:
        raise ValueError("unterminated attribute list")


def cluster_names(text: str) -> list[str]:
    tokens = tokenize(text)
    out = []
    for j, tok in enumerate(tokens):
        if tok == "subgraph" and j + 1 < len(tokens):
            name = tokens[j + 1]
            out.append(name.strip('"'))
    return out
