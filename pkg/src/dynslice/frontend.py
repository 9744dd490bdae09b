"""Lexer, parser, and semantic checker for the mini-OO language.

`parse` turns source text into a numbered ``Program``; `check` validates it,
annotates name bindings, and dispatches every call site through
`resolve_overload`. `load` chains both.

Statement numbering: when any executable statement carries a ``#n:`` label,
all of them must, and the labels must be exactly 1..stmt_count. Unlabeled
programs are auto-numbered in textual order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Assign,
    BinOp,
    Call,
    ClassDef,
    Expr,
    Formal,
    If,
    Input,
    IntLit,
    MethodDef,
    Name,
    Output,
    Pos,
    Program,
    Return,
    Stmt,
    StrLit,
    VarDecl,
    While,
    walk,
)


class SourceError(Exception):
    """Error tied to a source position."""

    def __init__(self, message: str, pos: Pos | None = None):
        self.message = message
        self.pos = pos
        where = f" at line {pos.line}, col {pos.col}" if pos else ""
        super().__init__(f"{message}{where}")


class LexError(SourceError):
    pass


class ParseError(SourceError):
    pass


class CheckError(SourceError):
    pass


class NoMatchError(CheckError):
    """No method signature matches the call's name, arity, and actual types."""


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

KEYWORDS = {"class", "public", "void", "int", "if", "else", "while", "return", "cin", "cout"}

# longest first so maximal munch works
_SYMBOLS = [">>", "<<", "<=", ">=", "==", "!=",
            "{", "}", "(", ")", ";", ":", ",", ".", "#", "&",
            "=", "<", ">", "+", "-", "*", "/"]


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, STRING, keyword text, or symbol text
    text: str
    pos: Pos


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        pos = Pos(line, col)
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("INT", source[i:j], pos))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            tokens.append(Token(text if text in KEYWORDS else "IDENT", text, pos))
            col += j - i
            i = j
            continue
        if c == '"':
            j = i + 1
            while j < n and source[j] not in '"\n':
                j += 1
            if j >= n or source[j] != '"':
                raise LexError("unterminated string literal", pos)
            tokens.append(Token("STRING", source[i + 1 : j], pos))
            col += j + 1 - i
            i = j + 1
            continue
        for sym in _SYMBOLS:
            if source.startswith(sym, i):
                tokens.append(Token(sym, sym, pos))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise LexError(f"unexpected character {c!r}", pos)
    tokens.append(Token("EOF", "", Pos(line, col)))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.cur
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.cur.kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str) -> Token:
        if self.cur.kind != kind:
            raise ParseError(f"expected {kind!r}, found {self.cur.text!r}", self.cur.pos)
        return self.advance()

    # program := classdef* "void" "main" "(" ")" block
    def program(self) -> Program:
        classes = []
        while self.cur.kind == "class":
            classes.append(self.classdef())
        self.expect("void")
        name = self.expect("IDENT")
        if name.text != "main":
            raise ParseError("entry procedure must be named 'main'", name.pos)
        self.expect("(")
        self.expect(")")
        main = self.block()
        self.expect("EOF")
        return Program(classes=classes, main=main)

    def classdef(self) -> ClassDef:
        pos = self.expect("class").pos
        name = self.expect("IDENT").text
        self.expect("{")
        members: list[str] = []
        while self.cur.kind == "int":
            self.advance()
            members.append(self.expect("IDENT").text)
            while self.accept(","):
                members.append(self.expect("IDENT").text)
            self.expect(";")
        self.expect("public")
        self.expect(":")
        methods = []
        while self.cur.kind != "}":
            methods.append(self.methoddef(name))
        self.expect("}")
        self.expect(";")
        return ClassDef(name=name, members=members, methods=methods, pos=pos)

    def methoddef(self, cls: str) -> MethodDef:
        rt = self.cur
        if rt.kind not in ("void", "int", "IDENT"):
            raise ParseError("expected a method return type", rt.pos)
        self.advance()
        name = self.expect("IDENT")
        self.expect("(")
        formals: list[Formal] = []
        if self.cur.kind != ")":
            while True:
                t = self.cur
                if t.kind not in ("int", "IDENT"):
                    raise ParseError("expected a parameter type", t.pos)
                self.advance()
                by_ref = self.accept("&") is not None
                pname = self.expect("IDENT")
                formals.append(Formal(pname.text, t.text, by_ref, pos=pname.pos))
                if not self.accept(","):
                    break
        self.expect(")")
        body = self.block()
        return MethodDef(name=name.text, return_type=rt.text, formals=formals,
                         body=body, pos=rt.pos, cls=cls)

    def block(self) -> list[Stmt]:
        self.expect("{")
        body: list[Stmt] = []
        while self.cur.kind != "}":
            body.append(self.stmt())
        self.expect("}")
        return body

    def stmt(self) -> Stmt:
        label = None
        if self.cur.kind == "#":
            pos = self.advance().pos
            label = int(self.expect("INT").text)
            self.expect(":")
        else:
            pos = self.cur.pos
        s = self._bare_stmt()
        if label is not None:
            if isinstance(s, VarDecl):
                raise ParseError("declarations are not executable and take no label", pos)
            s.label = label
        s.pos = pos
        return s

    def _bare_stmt(self) -> Stmt:
        kind = self.cur.kind
        if kind == "cin":
            self.advance()
            self.expect(">>")
            target = self.lvalue()
            self.expect(";")
            return Input(target=target)
        if kind == "cout":
            self.advance()
            self.expect("<<")
            if self.cur.kind == "STRING":
                tok = self.advance()
                value: Expr = StrLit(tok.text, pos=tok.pos)
            else:
                value = self.expr()
            self.expect(";")
            return Output(value=value)
        if kind == "if":
            self.advance()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then_body = self.block()
            else_body = self.block() if self.accept("else") else []
            return If(cond=cond, then_body=then_body, else_body=else_body)
        if kind == "while":
            self.advance()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            return While(cond=cond, body=self.block())
        if kind == "return":
            self.advance()
            value = None if self.cur.kind == ";" else self.expr()
            self.expect(";")
            return Return(value=value)
        if kind in ("int", "IDENT") and self.tokens[self.i + 1].kind == "IDENT":
            decl_type = self.advance().text
            names = [self.expect("IDENT").text]
            while self.accept(","):
                names.append(self.expect("IDENT").text)
            self.expect(";")
            return VarDecl(decl_type=decl_type, names=names)
        if kind == "IDENT":
            first = self.lvalue()
            if self.accept("="):
                # either plain assignment or call-assignment
                if (
                    self.cur.kind == "IDENT"
                    and self.tokens[self.i + 1].kind == "."
                    and self.tokens[self.i + 3].kind == "("
                ):
                    call = self._call_tail()
                    call.assign_to = first
                    self.expect(";")
                    return call
                value = self.expr()
                self.expect(";")
                return Assign(target=first, value=value)
            if first.member is not None and self.cur.kind == "(":
                call = Call(receiver=Name(first.base, pos=first.pos),
                            method=first.member, args=self._args())
                self.expect(";")
                return call
            raise ParseError("expected '=' or a method call", self.cur.pos)
        raise ParseError(f"unexpected token {self.cur.text!r}", self.cur.pos)

    def _call_tail(self) -> Call:
        recv = self.expect("IDENT")
        self.expect(".")
        method = self.expect("IDENT").text
        return Call(receiver=Name(recv.text, pos=recv.pos), method=method, args=self._args())

    def _args(self) -> list[Expr]:
        self.expect("(")
        args: list[Expr] = []
        if self.cur.kind != ")":
            args.append(self.expr())
            while self.accept(","):
                args.append(self.expr())
        self.expect(")")
        return args

    def lvalue(self) -> Name:
        base = self.expect("IDENT")
        member = None
        if self.accept("."):
            member = self.expect("IDENT").text
        return Name(base.text, member, pos=base.pos)

    # expr := additive (relop additive)?
    def expr(self) -> Expr:
        left = self.additive()
        if self.cur.kind in ("<", ">", "<=", ">=", "==", "!="):
            op = self.advance()
            right = self.additive()
            return BinOp(op.kind, left, right, pos=op.pos)
        return left

    def additive(self) -> Expr:
        left = self.term()
        while self.cur.kind in ("+", "-"):
            op = self.advance()
            left = BinOp(op.kind, left, self.term(), pos=op.pos)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.cur.kind in ("*", "/"):
            op = self.advance()
            left = BinOp(op.kind, left, self.factor(), pos=op.pos)
        return left

    def factor(self) -> Expr:
        if self.cur.kind == "INT":
            tok = self.advance()
            return IntLit(int(tok.text), pos=tok.pos)
        if self.cur.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if self.cur.kind == "IDENT":
            return self.lvalue()
        raise ParseError(f"expected an expression, found {self.cur.text!r}", self.cur.pos)


def parse(source: str) -> Program:
    """Parse source text into a numbered (but not yet checked) Program."""
    program = _Parser(tokenize(source)).program()
    _number(program)
    return program


def _source_order(program: Program):
    """Executable statements in textual order: class methods, then main."""
    for c in program.classes:
        for m in c.methods:
            yield from walk(m.body)
    yield from walk(program.main)


def _number(program: Program) -> None:
    stmts = list(_source_order(program))
    program.stmt_count = len(stmts)
    labeled = [s for s in stmts if s.label is not None]
    if not labeled:
        for i, s in enumerate(stmts, start=1):
            s.id = i
        return
    if len(labeled) != len(stmts):
        bare = next(s for s in stmts if s.label is None)
        raise ParseError("mixed labeling: every executable statement needs a label", bare.pos)
    seen: dict[int, Stmt] = {}
    for s in stmts:
        if s.label in seen:
            raise ParseError(f"label collision: #{s.label} used twice", s.pos)
        seen[s.label] = s
    if set(seen) != set(range(1, len(stmts) + 1)):
        raise ParseError(f"labels must be exactly 1..{len(stmts)} with no gaps",
                         labeled[0].pos)
    for s in stmts:
        s.id = s.label


# ---------------------------------------------------------------------------
# Overload resolution
# ---------------------------------------------------------------------------

def resolve_overload(cls: ClassDef, name: str, actual_types: tuple[str, ...],
                     pos: Pos | None = None) -> MethodDef:
    """Dispatch on name + exact arity + exact ordered type tags; no conversions."""
    for m in cls.methods:
        if m.name == name and tuple(f.type for f in m.formals) == actual_types:
            return m
    shape = f"{name}({', '.join(actual_types)})"
    raise NoMatchError(f"no method of class {cls.name} matches {shape}", pos)


# ---------------------------------------------------------------------------
# Semantic checker
# ---------------------------------------------------------------------------

class _Scope:
    """One procedure's declarations. Locals are procedure-wide but must be
    declared textually before first use; formals and receiver members come
    pre-declared."""

    def __init__(self, program: Program, cls: ClassDef | None):
        self.program = program
        self.cls = cls
        self.vars: dict[str, str] = {}  # name -> "int" | class name

    def declare(self, name: str, type_: str, pos: Pos | None) -> None:
        if name in self.vars:
            raise CheckError(f"duplicate declaration of {name!r}", pos)
        if self.cls and name in self.cls.members:
            raise CheckError(f"{name!r} shadows a member of class {self.cls.name}", pos)
        self.vars[name] = type_

    def bind(self, name: Name) -> str:
        """Annotate a Name with its binding; return its type tag."""
        t = self.vars.get(name.base)
        if t is None and self.cls and name.base in self.cls.members:
            if name.member is not None:
                raise CheckError(f"member {name.base!r} is not an object", name.pos)
            name.binding = "recv_member"
            name.cls = self.cls.name
            return "int"
        if t is None:
            raise CheckError(f"undeclared variable {name.base!r}", name.pos)
        if name.member is None:
            name.binding = "int_local" if t == "int" else "obj_local"
            name.cls = None if t == "int" else t
            return t
        if t == "int":
            raise CheckError(f"{name.base!r} is an int, not an object", name.pos)
        cdef = self.program.class_named(t)
        if name.member not in cdef.members:
            raise CheckError(f"class {t} has no member {name.member!r}", name.pos)
        name.binding = "obj_member"
        name.cls = t
        return "int"


def check(program: Program) -> Program:
    """Validate and annotate a parsed Program in place."""
    seen_classes: set[str] = set()
    for c in program.classes:
        if c.name in seen_classes:
            raise CheckError(f"duplicate class {c.name!r}", c.pos)
        seen_classes.add(c.name)
        if len(set(c.members)) != len(c.members):
            raise CheckError(f"duplicate member in class {c.name!r}", c.pos)
        sigs = set()
        for m in c.methods:
            if m.signature in sigs:
                raise CheckError(f"duplicate signature {m.signature} in class {c.name!r}", m.pos)
            sigs.add(m.signature)
            names = [f.name for f in m.formals]
            if len(set(names)) != len(names):
                raise CheckError(f"duplicate formal in {c.name}.{m.name}", m.pos)
            for f in m.formals:
                _check_type(program, f.type, f.pos)
            if m.return_type != "void":
                _check_type(program, m.return_type, m.pos)

    for cls_name, method, body in program.procedures():
        cls = program.class_named(cls_name) if method is not None else None
        scope = _Scope(program, cls)
        if method is not None:
            for f in method.formals:
                scope.declare(f.name, f.type, f.pos)
        _check_block(body, scope, method)
    program.checked = True
    return program


def load(source: str) -> Program:
    return check(parse(source))


def _check_type(program: Program, type_: str, pos: Pos | None) -> None:
    if type_ != "int" and program.class_named(type_) is None:
        raise CheckError(f"unknown type {type_!r}", pos)


def _check_block(body: list[Stmt], scope: _Scope, method: MethodDef | None) -> None:
    for s in body:
        if isinstance(s, VarDecl):
            _check_type(scope.program, s.decl_type, s.pos)
            for name in s.names:
                scope.declare(name, s.decl_type, s.pos)
        elif isinstance(s, Assign):
            _check_int_lvalue(s.target, scope, "assignment target")
            _check_int_expr(s.value, scope)
        elif isinstance(s, Input):
            _check_int_lvalue(s.target, scope, "input target")
        elif isinstance(s, Output):
            if not isinstance(s.value, StrLit):
                _check_int_expr(s.value, scope)
        elif isinstance(s, Call):
            _check_call(s, scope)
        elif isinstance(s, If):
            _check_int_expr(s.cond, scope)
            _check_block(s.then_body, scope, method)
            _check_block(s.else_body, scope, method)
        elif isinstance(s, While):
            _check_int_expr(s.cond, scope)
            _check_block(s.body, scope, method)
        elif isinstance(s, Return):
            if s.value is not None:
                if method is None:
                    raise CheckError("main cannot return a value", s.pos)
                if method.return_type != "int":
                    raise CheckError(
                        f"returning a value from a {method.return_type} method", s.pos)
                _check_int_expr(s.value, scope)
        else:
            raise CheckError(f"unsupported statement {s!r}", s.pos)


def _check_int_lvalue(name: Name, scope: _Scope, what: str) -> None:
    t = scope.bind(name)
    if t != "int":
        raise CheckError(f"{what} must be an int variable, not object {name.base!r}", name.pos)


def _check_int_expr(e: Expr, scope: _Scope) -> None:
    if isinstance(e, IntLit):
        return
    if isinstance(e, StrLit):
        raise CheckError("string literal outside cout", e.pos)
    if isinstance(e, Name):
        if scope.bind(e) != "int":
            raise CheckError(f"object {e.base!r} used as an int value", e.pos)
        return
    if isinstance(e, BinOp):
        _check_int_expr(e.left, scope)
        _check_int_expr(e.right, scope)
        return
    raise CheckError(f"unsupported expression {e!r}", getattr(e, "pos", None))


def _static_type(e: Expr, scope: _Scope) -> str:
    """Type tag of an actual argument (the overload dispatch key)."""
    if isinstance(e, IntLit):
        return "int"
    if isinstance(e, Name):
        return scope.bind(e)
    if isinstance(e, BinOp):
        _check_int_expr(e, scope)
        return "int"
    raise CheckError("invalid actual argument", getattr(e, "pos", None))


def _check_call(s: Call, scope: _Scope) -> None:
    if s.receiver.member is not None:
        raise CheckError("call receiver must be a plain object variable", s.receiver.pos)
    recv_type = scope.bind(s.receiver)
    if recv_type == "int":
        raise CheckError(f"{s.receiver.base!r} is an int, not an object", s.receiver.pos)
    cls = scope.program.class_named(recv_type)
    actual_types = tuple(_static_type(a, scope) for a in s.args)
    m = resolve_overload(cls, s.method, actual_types, s.pos)
    s.resolved = m
    s.receiver_cls = cls.name
    for f, a in zip(m.formals, s.args):
        if f.by_ref:
            if not isinstance(a, Name):
                raise CheckError(
                    f"actual for by-reference parameter {f.name!r} must be a variable",
                    getattr(a, "pos", s.pos))
            if f.type != "int" and a.member is not None:
                raise CheckError(
                    f"actual for by-reference object parameter {f.name!r} must be an object",
                    a.pos)
    if s.assign_to is not None:
        if m.return_type != "int":
            raise CheckError(
                f"cannot assign from {m.return_type} method {cls.name}.{m.name}", s.pos)
        _check_int_lvalue(s.assign_to, scope, "call result target")
