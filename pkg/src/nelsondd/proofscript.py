"""Reading and writing proof scripts (``.nd`` files).

A file is ``(proof <logic> <node>)`` where a node is either
``(assume <label> <formula>)`` or
``(<rule> <formula> [:discharge (<labels>)] [:var <v>] [:term <t>] <node>...)``.
``#`` starts a line comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .kernel import Assumption, Inference, LogicId
from .syntax import ParseError, parse_formula_prefix, parse_term, to_text

__all__ = ["ProofScript", "ScriptError", "parse_script", "parse_node",
           "dump_script", "dump_node"]


class ScriptError(ParseError):
    def __init__(self, message, pos, text):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        ValueError.__init__(self, f"{message} (line {line}, column {col})")
        self.pos, self.text = pos, text


@dataclass(frozen=True)
class ProofScript:
    logic: LogicId
    root: object
    name: str = ""


_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'?|\d+")


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        t = self.text
        while self.pos < len(t):
            if t[self.pos].isspace():
                self.pos += 1
            elif t[self.pos] == "#":
                nl = t.find("\n", self.pos)
                self.pos = len(t) if nl < 0 else nl + 1
            else:
                break

    def peek(self):
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def error(self, msg, pos=None):
        return ScriptError(msg, self.pos if pos is None else pos, self.text)

    def char(self, c):
        if self.peek() != c:
            raise self.error(f"expected {c!r}")
        self.pos += 1

    def word(self, what="word"):
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if m is None:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def formula(self):
        self.skip()
        try:
            f, end = parse_formula_prefix(self.text, self.pos)
        except ParseError as e:
            raise ScriptError(str(e).rsplit(" (at position", 1)[0], e.pos, self.text) from None
        self.pos = end
        return f

    def node(self):
        start = self.pos
        self.char("(")
        head = self.word("rule name")
        if head == "assume":
            label = self.word("label")
            if not label.isdigit():
                raise self.error("assumption label must be an integer")
            f = self.formula()
            self.char(")")
            return Assumption(int(label), f)
        conclusion = self.formula()
        discharges, var, term, premises = [], None, None, []
        while True:
            c = self.peek()
            if c == ":":
                self.pos += 1
                key = self.word("option")
                if key == "discharge":
                    self.char("(")
                    while self.peek() != ")":
                        lab = self.word("label")
                        if not lab.isdigit():
                            raise self.error("discharge labels must be integers")
                        discharges.append(int(lab))
                    self.char(")")
                elif key == "var":
                    var = self.word("variable")
                elif key == "term":
                    at = self.pos
                    word = self.word("term")
                    try:
                        term = parse_term(word)
                    except ParseError as e:
                        raise self.error(str(e).rsplit(" (at", 1)[0], at) from None
                else:
                    raise self.error(f"unknown option :{key}")
            elif c == "(":
                premises.append(self.node())
            elif c == ")":
                self.pos += 1
                break
            else:
                raise self.error("unterminated proof node", start if not c else None)
        return Inference(head, conclusion, tuple(premises), tuple(discharges), var, term)


def parse_node(text: str):
    r = _Reader(text)
    node = r.node()
    if r.peek():
        raise r.error("trailing input")
    return node


def parse_script(text: str, name: str = "") -> ProofScript:
    r = _Reader(text)
    r.char("(")
    if r.word() != "proof":
        raise r.error("a script starts with (proof <logic> ...)")
    at = r.pos
    logic_text = r.word("logic id")
    try:
        logic = LogicId.parse(logic_text)
    except ValueError as e:
        raise r.error(str(e), at) from None
    root = r.node()
    r.char(")")
    if r.peek():
        raise r.error("trailing input")
    return ProofScript(logic, root, name)


def dump_node(node, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(node, Assumption):
        return f"{pad}(assume {node.label} {to_text(node.formula)})"
    head = f"{pad}({node.rule} {to_text(node.conclusion)}"
    if node.discharges:
        head += " :discharge (" + " ".join(map(str, node.discharges)) + ")"
    if node.var is not None:
        head += f" :var {node.var}"
    if node.term is not None:
        head += f" :term {node.term}"
    if not node.premises:
        return head + ")"
    body = "\n".join(dump_node(p, indent + 1) for p in node.premises)
    return f"{head}\n{body})"


def dump_script(script: ProofScript) -> str:
    return f"(proof {script.logic}\n{dump_node(script.root, 1)})\n"
