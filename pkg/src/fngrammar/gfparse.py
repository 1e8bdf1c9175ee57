"""Reader for the module dialect written by the generators.

Only what the generators emit is supported: module headers, ``fun``
signatures, ``lin`` rules (record or plain right-hand sides) and
expressions built from identifiers, string literals, parentheses and
``variants {a | b}``.  Other judgements (``cat``, ``lincat``, ``oper``) are
kept as raw text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union


class GFSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class App:
    head: "Expr"
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Variants:
    options: tuple["Expr", ...]


Expr = Union[Var, Str, App, Variants]


@dataclass(frozen=True)
class FunDecl:
    name: str
    arg_types: tuple[str, ...]
    result: str


@dataclass(frozen=True)
class LinRule:
    name: str
    params: tuple[str, ...]
    body: Union[Expr, dict]  # record rules map field name to expression


@dataclass
class Module:
    kind: str          # abstract | concrete | resource
    name: str
    of: str | None
    header: str
    funs: dict[str, FunDecl] = field(default_factory=dict)
    lins: dict[str, LinRule] = field(default_factory=dict)
    other: list[str] = field(default_factory=list)


_TOKEN = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<arrow>->)|(?P<sym>[(){}|;=:,.\\])|'
                    r"(?P<id>[^\s(){}|;=:,.\\\"]+))")


def tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise GFSyntaxError(f"cannot tokenize near {text[pos:pos + 20]!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise GFSyntaxError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> Expr:
        head = self.atom()
        args = []
        while self.peek() is not None and self.peek() not in (")", "}", "|", ";"):
            args.append(self.atom())
        return App(head, tuple(args)) if args else head

    def atom(self) -> Expr:
        tok = self.take()
        if tok == "(":
            e = self.expr()
            self.take(")")
            return e
        if tok.startswith('"'):
            return Str(tok[1:-1].replace('\\"', '"'))
        if tok == "variants":
            self.take("{")
            opts = [self.expr()]
            while self.peek() == "|":
                self.take("|")
                opts.append(self.expr())
            self.take("}")
            return Variants(tuple(opts))
        if tok in "(){}|;=:,.\\":
            raise GFSyntaxError(f"unexpected {tok!r}")
        return Var(tok)

    def done(self) -> bool:
        return self.i >= len(self.toks)


def parse_expr(text: str) -> Expr:
    p = _Parser(tokenize(text))
    e = p.expr()
    if not p.done():
        raise GFSyntaxError(f"trailing tokens in {text!r}")
    return e


def _strip_comments(text: str) -> str:
    out = []
    for line in text.splitlines():
        in_str = False
        for i, ch in enumerate(line):
            if ch == '"':
                in_str = not in_str
            elif not in_str and line.startswith("--", i):
                line = line[:i]
                break
        out.append(line)
    return "\n".join(out)


def _statements(body: str) -> list[str]:
    stmts, depth, cur, in_str = [], 0, [], False
    for ch in body:
        if ch == '"':
            in_str = not in_str
        if not in_str:
            if ch in "({":
                depth += 1
            elif ch in ")}":
                depth -= 1
            elif ch == ";" and depth == 0:
                stmts.append("".join(cur).strip())
                cur = []
                continue
        cur.append(ch)
    if "".join(cur).strip():
        stmts.append("".join(cur).strip())
    return [s for s in stmts if s]


_HEADER = re.compile(r"^\s*(abstract|concrete|resource)\s+(\S+)(?:\s+of\s+(\S+))?")


def parse_module(text: str) -> Module:
    text = _strip_comments(text)
    m = _HEADER.match(text)
    if not m:
        raise GFSyntaxError("missing module header")
    start, end = text.find("{"), text.rfind("}")
    if start < 0 or end < start:
        raise GFSyntaxError(f"module {m.group(2)} has no body")
    mod = Module(m.group(1), m.group(2), m.group(3), text[:start].strip())
    for stmt in _statements(text[start + 1:end]):
        keyword, _, rest = stmt.partition(" ")
        rest = rest.strip()
        if keyword == "fun":
            name, _, sig = rest.partition(":")
            types = [t.strip() for t in sig.split("->")]
            mod.funs[name.strip()] = FunDecl(name.strip(), tuple(types[:-1]), types[-1])
        elif keyword == "lin":
            lhs, _, rhs = rest.partition("=")
            names = lhs.split()
            rhs = rhs.strip()
            if rhs.startswith("{") and rhs.endswith("}"):
                body = {}
                for field_stmt in _statements(rhs[1:-1]):
                    fname, _, fexpr = field_stmt.partition("=")
                    body[fname.strip()] = parse_expr(fexpr)
            else:
                body = parse_expr(rhs)
            mod.lins[names[0]] = LinRule(names[0], tuple(names[1:]), body)
        else:
            mod.other.append(stmt)
    return mod
