"""Reader and printer for the ``(VAR ...) (RULES ...)`` TRS file format."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, ParseError
from .rewriting import TRS, RewriteRule
from .terms import App, Term, Var, var_names

IDENT = re.compile(r"[A-Za-z0-9_'+*]+|-(?!>)")


@dataclass
class Token:
    kind: str  # "(" ")" "," "->" "ident" "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            toks.append(Token("->", "->", line, col))
            i, col = i + 2, col + 2
            continue
        if c in "(),":
            toks.append(Token(c, c, line, col))
            i, col = i + 1, col + 1
            continue
        start = i
        while i < n:
            m = IDENT.match(text, i)
            if not m:
                break
            i = m.end()
        if i == start:
            raise ParseError(f"unexpected character {c!r}", line, col)
        toks.append(Token("ident", text[start:i], line, col))
        col += i - start
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, variables=(), signature=None, allow_fresh_consts=False, infer=True):
        self.toks = tokenize(text)
        self.pos = 0
        self.variables = set(variables)
        self.signature: dict[str, int] = dict(signature or {})
        self.allow_fresh_consts = allow_fresh_consts
        self.infer = infer

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        self.pos += 1
        return tok

    def term(self) -> Term:
        head = self.expect("ident")
        name = head.text
        args = []
        if self.tok.kind == "(":
            self.pos += 1
            args.append(self.term())
            while self.tok.kind == ",":
                self.pos += 1
                args.append(self.term())
            self.expect(")")
        if name in self.variables:
            if args:
                raise self.error(f"variable {name!r} applied to arguments", head)
            return Var(name)
        known = self.signature.get(name)
        if known is None:
            if not self.infer and not (self.allow_fresh_consts and not args):
                raise self.error(f"unknown symbol {name!r}", head)
            self.signature[name] = len(args)
        elif known != len(args):
            raise self.error(f"symbol {name!r} used with arity {len(args)}, earlier with arity {known}", head)
        return App(name, args)

    def trs(self) -> TRS:
        self.expect("(")
        if self.tok.kind == "ident" and self.tok.text == "VAR":
            self.pos += 1
            while self.tok.kind == "ident":
                self.variables.add(self.tok.text)
                self.pos += 1
            self.expect(")")
            self.expect("(")
        section = self.tok
        if section.kind != "ident":
            raise self.error("expected a section name")
        if section.text != "RULES":
            raise self.error(f"unsupported feature: section {section.text!r}")
        self.pos += 1
        rules: list[RewriteRule] = []
        while self.tok.kind == "ident":
            start = self.tok
            lhs = self.term()
            self.expect("->")
            rhs = self.term()
            if isinstance(lhs, Var):
                raise self.error(f"left-hand side {lhs} is a variable", start)
            extra = var_names(rhs) - var_names(lhs)
            if extra:
                raise self.error(
                    f"right-hand side variable(s) {', '.join(sorted(extra))} not in left-hand side", start
                )
            rule = RewriteRule(lhs, rhs)
            if rule not in rules:
                rules.append(rule)
        self.expect(")")
        if self.tok.kind != "eof":
            if self.tok.kind == "(" and self.toks[self.pos + 1].kind == "ident":
                raise self.error(f"unsupported feature: section {self.toks[self.pos + 1].text!r}")
            raise self.error(f"unexpected {self.tok.text!r} after RULES section")
        return TRS(self.signature, frozenset(self.variables), tuple(rules))


def parse_trs(text: str) -> TRS:
    return _Parser(text).trs()


def parse_term(text: str, trs: Optional[TRS] = None, allow_fresh_consts: bool = False) -> Term:
    """Parse a term against ``trs``'s symbols and variables.

    Without a TRS every identifier is a function symbol.  With one, unknown
    symbols are rejected unless ``allow_fresh_consts`` admits them as
    constants.
    """
    if trs is None:
        p = _Parser(text)
    else:
        p = _Parser(text, trs.variables, trs.signature, allow_fresh_consts, infer=False)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after term")
    return t


def parse_rule(text: str, variables=()) -> RewriteRule:
    p = _Parser(text, variables)
    lhs = p.term()
    p.expect("->")
    rhs = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after rule")
    try:
        return RewriteRule(lhs, rhs)
    except InputError as e:
        raise ParseError(str(e), 1, 1) from None


def format_trs(trs: TRS) -> str:
    lines = ["(VAR " + " ".join(sorted(trs.variables)) + ")", "(RULES"]
    lines += [f"  {r.lhs} -> {r.rhs}" for r in trs.rules]
    lines.append(")")
    return "\n".join(lines) + "\n"
