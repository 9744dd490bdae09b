"""Seeded random program generator for differential testing.

Shape bounds per program: at most 40 executable statements, 2 classes, 3
methods total including exactly one overloaded pair, and if/while nesting
depth 3. Loops always count down a dedicated counter that nothing else
writes, so every program terminates; `cin` appears only at the top level of
main and each one gets an input value, so runs never exhaust input.
By-reference parameters are int-only and a call never passes the same
variable to two by-ref formals. Method bodies may call only methods defined
earlier, so there is no recursion. Division is never generated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

MAX_STMTS = 40
MAX_DEPTH = 3


@dataclass(frozen=True)
class GeneratedProgram:
    seed: int
    source: str
    inputs: tuple[int, ...]


@dataclass(frozen=True)
class _Method:
    cls: str
    name: str
    ret: str  # "void" | "int"
    formals: tuple[tuple[str, str, bool], ...]  # (name, type, by_ref)
    index: int  # definition order; callees must have a smaller index

    @property
    def by_ref_count(self) -> int:
        return sum(1 for _, _, by_ref in self.formals if by_ref)


class _Gen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.seed = seed
        self.lines: list[str] = []
        self.inputs: list[int] = []
        self.stmts = 0
        self.counter_id = 0
        self.classes: dict[str, list[str]] = {}  # name -> members
        self.methods: list[_Method] = []

    def room(self, n: int = 1) -> bool:
        return self.stmts + n <= MAX_STMTS

    def charge(self) -> None:
        self.stmts += 1

    def emit(self, depth: int, text: str) -> None:
        self.lines.append("    " * depth + text)

    # -- program --------------------------------------------------------------

    def build(self) -> GeneratedProgram:
        rng = self.rng
        for ci in range(rng.choice([1, 1, 2])):
            self.classes[f"c{ci}"] = [f"m{i}" for i in range(rng.randint(1, 3))]

        # one overloaded pair on c0, plus at most one extra method
        shapes = [("c0", "f", *shape) for shape in self._overload_pair()]
        if rng.random() < 0.7:
            host = rng.choice(list(self.classes))
            shapes.append((host, "g", *self._method_shape()))
        self.methods = [_Method(cls, name, ret, formals, i)
                        for i, (cls, name, ret, formals) in enumerate(shapes)]

        for cls, members in self.classes.items():
            self.emit(0, f"class {cls} {{")
            for m in members:
                self.emit(1, f"int {m};")
            self.emit(0, "public:")
            for method in self.methods:
                if method.cls == cls:
                    self._method_body(method)
            self.emit(0, "};")
            self.emit(0, "")
        self._main()
        return GeneratedProgram(self.seed, "\n".join(self.lines) + "\n",
                                tuple(self.inputs))

    # -- method shapes ----------------------------------------------------------

    def _param_types(self) -> list[str]:
        rng = self.rng
        return ["int" if rng.random() < 0.7 else rng.choice(list(self.classes))
                for _ in range(rng.randint(1, 2))]

    def _shape_from_types(self, types: list[str]) -> tuple[str, tuple]:
        rng = self.rng
        ret = "int" if rng.random() < 0.4 else "void"
        formals = tuple(
            (f"p{i}", t, t == "int" and rng.random() < 0.3)
            for i, t in enumerate(types))
        return ret, formals

    def _method_shape(self) -> tuple[str, tuple]:
        return self._shape_from_types(self._param_types())

    def _overload_pair(self) -> list[tuple[str, tuple]]:
        while True:
            a, b = self._param_types(), self._param_types()
            if a != b:
                return [self._shape_from_types(a), self._shape_from_types(b)]

    # -- bodies -------------------------------------------------------------------

    def _method_body(self, method: _Method) -> None:
        rng = self.rng
        params = ", ".join(
            f"{t} {'&' if by_ref else ''}{n}" for n, t, by_ref in method.formals)
        self.emit(1, f"{method.ret} {method.name}({params}) {{")
        scope = _MethodScope(self, method, decl_at=len(self.lines))
        for _ in range(rng.randint(1, 3)):
            if self.room(2):
                self._body_stmt(scope, depth=2, nest=1)
        if method.ret == "int" and self.room():
            self.charge()
            self.emit(2, f"return {scope.int_expr()};")
        self.emit(1, "}")

    def _main(self) -> None:
        rng = self.rng
        self.emit(0, "void main() {")
        scope = _MainScope(self, decl_at=len(self.lines))
        for obj, cls in scope.objects.items():
            self.emit(1, f"{cls} {obj};")
        self.emit(1, f"int {', '.join(scope.ints)};")
        for x in scope.ints[: rng.randint(1, min(3, len(scope.ints)))]:
            if self.room():
                self.charge()
                self.emit(1, f"cin >> {x};")
                self.inputs.append(rng.randint(0, 9))
        while self.room(2) and rng.random() < 0.9:
            self._body_stmt(scope, depth=1, nest=1)
        if self.room():
            self.charge()
            self.emit(1, f"cout << {rng.choice(scope.ints)};")
        self.emit(0, "}")

    def _body_stmt(self, scope: "_Scope", depth: int, nest: int) -> None:
        rng = self.rng
        choices = ["assign", "assign", "out"]
        if scope.callable_methods():
            choices += ["call", "call"]
        if nest < MAX_DEPTH and self.room(3):
            choices += ["if", "while"]
        kind = rng.choice(choices)
        if kind == "assign":
            self.charge()
            self.emit(depth, f"{scope.pick_lvalue()} = {scope.int_expr()};")
        elif kind == "out":
            self.charge()
            self.emit(depth, f"cout << {scope.int_expr()};")
        elif kind == "call":
            self._call_stmt(scope, depth)
        elif kind == "if":
            self.charge()
            self.emit(depth, f"if ({scope.condition()}) {{")
            for _ in range(rng.randint(1, 2)):
                if self.room(1):
                    self._body_stmt(scope, depth + 1, nest + 1)
            if rng.random() < 0.4 and self.room(1):
                self.emit(depth, "} else {")
                self._body_stmt(scope, depth + 1, nest + 1)
            self.emit(depth, "}")
        else:
            k = scope.fresh_counter()
            self.charge()
            self.emit(depth, f"{k} = {rng.randint(1, 3)};")
            self.charge()
            self.emit(depth, f"while ({k} > 0) {{")
            for _ in range(rng.randint(1, 2)):
                if self.room(2):
                    self._body_stmt(scope, depth + 1, nest + 1)
            self.charge()
            self.emit(depth + 1, f"{k} = {k} - 1;")
            self.emit(depth, "}")

    def _call_stmt(self, scope: "_Scope", depth: int) -> None:
        rng = self.rng
        method, receiver = rng.choice(scope.callable_methods())
        used_by_ref: set[str] = set()
        actuals = []
        for _, t, by_ref in method.formals:
            if t != "int":
                actuals.append(scope.pick_object(t))
            elif by_ref:
                lv = scope.pick_lvalue(avoid=used_by_ref)
                used_by_ref.add(lv)
                actuals.append(lv)
            else:
                actuals.append(scope.int_expr())
        call = f"{receiver}.{method.name}({', '.join(actuals)})"
        if method.ret == "int" and rng.random() < 0.6:
            call = f"{scope.pick_lvalue()} = {call}"
        self.charge()
        self.emit(depth, f"{call};")


class _Scope:
    """Name pools and expression building shared by main and method scopes.

    Loop counters are readable but never appear in `lvalues`, so only the
    generated decrement writes them and loops always terminate.
    """

    gen: _Gen
    counters: list[str]
    decl_at: int

    def int_vars(self) -> list[str]:
        raise NotImplementedError

    def lvalues(self) -> list[str]:
        raise NotImplementedError

    def decl_indent(self) -> str:
        raise NotImplementedError

    def pick_lvalue(self, avoid: set[str] = frozenset()) -> str:
        pool = [v for v in self.lvalues() if v not in avoid]
        return self.gen.rng.choice(pool)

    def object_pool(self, cls: str) -> list[str]:
        raise NotImplementedError

    def pick_object(self, cls: str) -> str:
        return self.gen.rng.choice(self.object_pool(cls))

    def callable_methods(self) -> list[tuple[_Method, str]]:
        raise NotImplementedError

    def operand(self) -> str:
        rng = self.gen.rng
        pool = self.int_vars()
        if not pool or rng.random() < 0.3:
            return str(rng.randint(0, 9))
        return rng.choice(pool)

    def int_expr(self) -> str:
        rng = self.gen.rng
        text = self.operand()
        for _ in range(rng.randint(0, 2)):
            op = rng.choice(["+", "+", "-", "*"])
            text = f"{text} {op} {self.operand()}"
        return text

    def condition(self) -> str:
        op = self.gen.rng.choice(["<", ">", "<=", ">=", "==", "!="])
        return f"{self.operand()} {op} {self.operand()}"

    def fresh_counter(self) -> str:
        name = f"k{self.gen.counter_id}"
        self.gen.counter_id += 1
        self.counters.append(name)
        self.gen.lines.insert(self.decl_at, f"{self.decl_indent()}int {name};")
        return name

    def _feasible(self, pairs: list[tuple[_Method, str]]) -> list[tuple[_Method, str]]:
        writable = len(set(self.lvalues()))
        out = []
        for m, r in pairs:
            if m.by_ref_count > writable:
                continue
            if all(self.object_pool(t) for _, t, _ in m.formals if t != "int"):
                out.append((m, r))
        return out


class _MainScope(_Scope):
    def __init__(self, gen: _Gen, decl_at: int):
        self.gen = gen
        self.decl_at = decl_at
        rng = gen.rng
        self.objects: dict[str, str] = {}
        for i in range(rng.randint(1, 3)):
            self.objects[f"o{i}"] = rng.choice(list(gen.classes))
        # every class gets at least one instance so all methods are callable
        for cls in gen.classes:
            if cls not in self.objects.values():
                self.objects[f"o{len(self.objects)}"] = cls
        self.ints = [f"x{i}" for i in range(rng.randint(2, 4))]
        self.counters: list[str] = []

    def int_vars(self) -> list[str]:
        return self.ints + self.counters

    def lvalues(self) -> list[str]:
        return self.ints

    def decl_indent(self) -> str:
        return "    "

    def object_pool(self, cls: str) -> list[str]:
        return [o for o, c in self.objects.items() if c == cls]

    def callable_methods(self) -> list[tuple[_Method, str]]:
        pairs = [(m, obj) for m in self.gen.methods
                 for obj, cls in self.objects.items() if cls == m.cls]
        return self._feasible(pairs)


class _MethodScope(_Scope):
    def __init__(self, gen: _Gen, method: _Method, decl_at: int):
        self.gen = gen
        self.method = method
        self.decl_at = decl_at
        self.members = gen.classes[method.cls]
        self.int_formals = [n for n, t, _ in method.formals if t == "int"]
        self.obj_formals = [(n, t) for n, t, _ in method.formals if t != "int"]
        self.counters: list[str] = []

    def int_vars(self) -> list[str]:
        return self.members + self.int_formals + self.counters

    def lvalues(self) -> list[str]:
        return self.members + self.int_formals

    def decl_indent(self) -> str:
        return "        "

    def object_pool(self, cls: str) -> list[str]:
        return [n for n, t in self.obj_formals if t == cls]

    def callable_methods(self) -> list[tuple[_Method, str]]:
        pairs = [(m, n) for m in self.gen.methods if m.index < self.method.index
                 for n, t in self.obj_formals if t == m.cls]
        return self._feasible(pairs)


def generate(seed: int) -> GeneratedProgram:
    """Deterministic program + matching inputs for the given seed."""
    return _Gen(seed).build()
