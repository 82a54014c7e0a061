"""Concrete syntax for terms and types.

Grammar (ASCII only; see README for the full reference):

    term   := '\\' IDENT ':' type '.' term | disj
    disj   := conj ('|' disj)?                  -- right-associative
    conj   := neg ('&' conj)?                   -- right-associative
    neg    := '~' neg | union
    union  := cons ('++' cons)*                 -- left-associative
    cons   := app ('::' cons)?                  -- right-associative
    app    := atom atom*                        -- left-associative
    atom   := IDENT | '(' term ')' | '(' OP ')'
    type   := btype ('>' type)?                 -- right-associative
    btype  := 'e' | 't' | 'g' | '(' type ')'

`&`, `|`, `~`, `::`, `++` are infix/prefix sugar for the built-in constants;
`( & )` style sections denote the bare constant.  `Ex`, `sel`, `nil`, `top`,
`bot` are constants; `Coord` and `Sub` abbreviate the environment
combinators.  Unknown identifiers resolve against a caller-supplied constant
signature.  Bound names are erased: `parse_term` produces De Bruijn terms,
and `pretty` re-invents names (x1, x2, ... in binder order), so
parse_term(pretty(t)) is alpha-equivalent to t for every closed t.
"""
from __future__ import annotations

import re
from typing import Mapping, Optional

from .errors import ContsemError
from .terms import (
    AND, BUILTINS, CONS, COORD, NOT, OR, SUB, UNION,
    App, Arrow, Base, Const, Lam, SemType, Term, Var, type_text,
)


class ParseError(ContsemError):
    def __init__(self, message: str, position: int, line: int, column: int):
        self.position = position
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownIdentifier(ContsemError):
    def __init__(self, name: str, position: int = 0):
        self.name = name
        self.position = position
        super().__init__(f"unknown identifier {name!r}")


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<cons>::)"
    r"|(?P<union>\+\+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<op>[\\.():>&|~])"
)

# Words with a fixed meaning in term syntax; they cannot be binder names.
_RESERVED = {"nil", "top", "bot", "sel", "Ex", "Coord", "Sub"}

_SUGAR = {"Coord": COORD, "Sub": SUB}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                self._fail(f"unexpected character {text[pos]!r}", pos)
            pos = m.end()
            if m.lastgroup == "ws":
                continue
            kind = m.lastgroup
            value = m.group()
            if kind == "op":
                kind = value
            self.tokens.append((kind, value, m.start()))
        self.tokens.append(("eof", "", len(text)))
        self.index = 0

    def _fail(self, message, pos):
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(message, pos, line, column)

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        if tok[0] != "eof":
            self.index += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        if tok[0] != kind:
            self._fail(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return self.next()


class _Parser:
    def __init__(self, text: str, sig: Mapping[str, SemType]):
        self.lex = _Lexer(text)
        self.sig = sig

    def parse(self) -> Term:
        term = self.term([])
        tok = self.lex.peek()
        if tok[0] != "eof":
            self.lex._fail(f"unexpected {tok[1]!r} after term", tok[2])
        return term

    # -- terms ------------------------------------------------------------

    def term(self, env: list[str]) -> Term:
        if self.lex.peek()[0] == "\\":
            self.lex.next()
            kind, name, pos = self.lex.expect("ident")
            if name in _RESERVED:
                self.lex._fail(f"{name!r} is reserved and cannot be bound", pos)
            self.lex.expect(":")
            ty = self.type_()
            self.lex.expect(".")
            body = self.term([name] + env)
            return Lam(ty, body)
        return self.disj(env)

    def disj(self, env) -> Term:
        left = self.conj(env)
        if self.lex.peek()[0] == "|":
            self.lex.next()
            return App(App(OR, left), self.disj(env))
        return left

    def conj(self, env) -> Term:
        left = self.neg(env)
        if self.lex.peek()[0] == "&":
            self.lex.next()
            return App(App(AND, left), self.conj(env))
        return left

    def neg(self, env) -> Term:
        if self.lex.peek()[0] == "~":
            self.lex.next()
            return App(NOT, self.neg(env))
        return self.union(env)

    def union(self, env) -> Term:
        left = self.cons(env)
        while self.lex.peek()[0] == "union":
            self.lex.next()
            left = App(App(UNION, left), self.cons(env))
        return left

    def cons(self, env) -> Term:
        head = self.application(env)
        if self.lex.peek()[0] == "cons":
            self.lex.next()
            return App(App(CONS, head), self.cons(env))
        return head

    _ATOM_STARTS = ("ident", "(")

    def application(self, env) -> Term:
        term = self.atom(env)
        while self.lex.peek()[0] in self._ATOM_STARTS:
            term = App(term, self.atom(env))
        return term

    _SECTIONS = {"&": AND, "|": OR, "~": NOT, "cons": CONS, "union": UNION}

    def atom(self, env) -> Term:
        kind, value, pos = self.lex.peek()
        if kind == "(":
            # `(&)`-style sections expose operator constants unapplied.
            nxt, nval, _ = self.lex.peek(1)
            if nxt in self._SECTIONS and self.lex.peek(2)[0] == ")":
                self.lex.next()
                self.lex.next()
                self.lex.next()
                return self._SECTIONS[nxt]
            self.lex.next()
            term = self.term(env)
            self.lex.expect(")")
            return term
        if kind == "ident":
            self.lex.next()
            if value in env:
                return Var(env.index(value))
            if value in _SUGAR:
                return _SUGAR[value]
            if value in BUILTINS:
                return BUILTINS[value]
            if value in self.sig:
                return Const(value, self.sig[value])
            raise UnknownIdentifier(value, pos)
        self.lex._fail(f"expected a term, found {value!r}", pos)

    # -- types ------------------------------------------------------------

    def type_(self) -> SemType:
        left = self.btype()
        if self.lex.peek()[0] == ">":
            self.lex.next()
            return Arrow(left, self.type_())
        return left

    def btype(self) -> SemType:
        kind, value, pos = self.lex.peek()
        if kind == "(":
            self.lex.next()
            ty = self.type_()
            self.lex.expect(")")
            return ty
        if kind == "ident" and value in ("e", "t", "g"):
            self.lex.next()
            return Base(value)
        self.lex._fail(f"expected a type, found {value!r}", pos)


def parse_term(text: str, constants: Optional[Mapping[str, SemType]] = None) -> Term:
    """Parse the named lambda syntax into a De Bruijn term.

    `constants` declares non-builtin constants (content words, entity names).
    """
    return _Parser(text, dict(constants or {})).parse()


def parse_type(text: str) -> SemType:
    parser = _Parser(text, {})
    ty = parser.type_()
    tok = parser.lex.peek()
    if tok[0] != "eof":
        parser.lex._fail(f"unexpected {tok[1]!r} after type", tok[2])
    return ty


# ---------------------------------------------------------------------------
# Pretty-printing

# Precedence levels, loosest first.  A construct is parenthesized when it
# appears in a context demanding a tighter level than its own.
_LAM, _DISJ, _CONJ, _NEG, _UNION, _CONS, _APP, _ATOM = range(8)

_WORDLIKE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def pretty(term: Term) -> str:
    """Named rendering with canonical fresh names (x1, x2, ... in binder
    order).  Round-trips through parse_term for closed terms."""
    used = set()

    def collect(t):
        if isinstance(t, Const):
            used.add(t.name)
        elif isinstance(t, Lam):
            collect(t.body)
        elif isinstance(t, App):
            collect(t.fn)
            collect(t.arg)

    collect(term)
    counter = [0]

    def fresh():
        while True:
            counter[0] += 1
            name = f"x{counter[0]}"
            if name not in used and name not in _RESERVED:
                return name

    def render(t, level, env):
        if t == COORD:
            return "Coord"
        if t == SUB:
            return "Sub"
        if isinstance(t, Var):
            if t.index < len(env):
                return env[t.index]
            return f"#{t.index}"  # free variable; not re-parseable
        if isinstance(t, Const):
            if _WORDLIKE.match(t.name):
                return t.name
            return f"({t.name})"
        if isinstance(t, Lam):
            name = fresh()
            body = render(t.body, _LAM, [name] + env)
            text = f"\\{name}:{type_text(t.ty)}. {body}"
            return f"({text})" if level > _LAM else text
        # Applications, with infix/prefix sugar for the logical constants.
        if isinstance(t.fn, App):
            head, left, right = t.fn.fn, t.fn.arg, t.arg
            if head == AND:
                text = f"{render(left, _CONJ + 1, env)} & {render(right, _CONJ, env)}"
                return f"({text})" if level > _CONJ else text
            if head == OR:
                text = f"{render(left, _DISJ + 1, env)} | {render(right, _DISJ, env)}"
                return f"({text})" if level > _DISJ else text
            if head == CONS:
                text = f"{render(left, _CONS + 1, env)}::{render(right, _CONS, env)}"
                return f"({text})" if level > _CONS else text
            if head == UNION:
                text = f"{render(left, _UNION, env)}++{render(right, _UNION + 1, env)}"
                return f"({text})" if level > _UNION else text
        if t.fn == NOT:
            text = f"~ {render(t.arg, _NEG, env)}"
            return f"({text})" if level > _NEG else text
        text = f"{render(t.fn, _APP, env)} {render(t.arg, _ATOM, env)}"
        return f"({text})" if level > _APP else text

    return render(term, _LAM, [])
