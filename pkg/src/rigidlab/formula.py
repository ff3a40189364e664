"""Boolean formulas over property names, evaluated in three-valued logic.

Syntax: ``!a``, ``a & b``, ``a | b``, ``a -> b``, ``a <-> b``, parentheses,
``true``/``false``. A literal that cannot be decided (``None``) propagates
unless the connective already fixes the result, and evaluation is lazy, so
``a -> b`` never asks for ``b`` when ``a`` is false.
"""
from __future__ import annotations

import re

from .errors import FormulaError

PRESETS = {
    # rigid base whose V_2 extension is not rigid
    "q2.9": "sigma_rigid & !vn2_sigma_rigid",
    # sigma-rigid but not sigma-semicommutative, with M[x; sigma] not reduced in degree <= 1
    "drop_semicomm": "sigma_rigid & !sigma_semicommutative & !skew_reduced_d1",
}

_TOKEN = re.compile(r"\s*(<->|->|[()!~&|]|[A-Za-z_][A-Za-z0-9_.]*)")


def tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaError(f"unexpected input at {pos}: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks, self.i = tokens, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise FormulaError(f"expected {expected or 'a term'}, got {tok!r}")
        self.i += 1
        return tok

    def iff(self):
        node = self.imp()
        while self.peek() == "<->":
            self.take()
            node = ("iff", node, self.imp())
        return node

    def imp(self):
        node = self.disj()
        if self.peek() == "->":
            self.take()
            return ("imp", node, self.imp())
        return node

    def disj(self):
        node = self.conj()
        while self.peek() == "|":
            self.take()
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.unary()
        while self.peek() == "&":
            self.take()
            node = ("and", node, self.unary())
        return node

    def unary(self):
        if self.peek() in ("!", "~"):
            self.take()
            return ("not", self.unary())
        tok = self.take()
        if tok == "(":
            node = self.iff()
            self.take(")")
            return node
        if tok in ("true", "false"):
            return ("const", tok == "true")
        if tok in (")", "&", "|", "->", "<->"):
            raise FormulaError(f"unexpected {tok!r}")
        return ("lit", tok)


def parse(text: str):
    text = PRESETS.get(text.strip(), text)
    toks = tokenize(text)
    if not toks:
        raise FormulaError("empty formula")
    p = _Parser(toks)
    node = p.iff()
    if p.peek() is not None:
        raise FormulaError(f"trailing input {p.peek()!r}")
    return node


def literals(node) -> list[str]:
    out = []

    def walk(n):
        if n[0] == "lit":
            if n[1] not in out:
                out.append(n[1])
        elif n[0] != "const":
            for child in n[1:]:
                walk(child)
    walk(node)
    return out


def evaluate(node, lookup):
    """Kleene evaluation; ``lookup(name)`` returns True, False or None."""
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "lit":
        return lookup(node[1])
    if kind == "not":
        v = evaluate(node[1], lookup)
        return None if v is None else not v
    if kind == "and":
        a = evaluate(node[1], lookup)
        if a is False:
            return False
        b = evaluate(node[2], lookup)
        if b is False:
            return False
        return None if a is None or b is None else True
    if kind == "or":
        a = evaluate(node[1], lookup)
        if a is True:
            return True
        b = evaluate(node[2], lookup)
        if b is True:
            return True
        return None if a is None or b is None else False
    if kind == "imp":
        a = evaluate(node[1], lookup)
        if a is False:
            return True
        b = evaluate(node[2], lookup)
        if b is True:
            return True
        return None if a is None or b is None else False
    if kind == "iff":
        a = evaluate(node[1], lookup)
        if a is None:
            return None
        b = evaluate(node[2], lookup)
        return None if b is None else a == b
    raise FormulaError(f"bad node {node!r}")


def to_text(node) -> str:
    kind = node[0]
    if kind == "const":
        return "true" if node[1] else "false"
    if kind == "lit":
        return node[1]
    if kind == "not":
        return f"!{to_text(node[1])}"
    sym = {"and": "&", "or": "|", "imp": "->", "iff": "<->"}[kind]
    return f"({to_text(node[1])} {sym} {to_text(node[2])})"
