"""Tree-walking interpreter producing the execution event stream.

Semantics:
- Integers only; relational operators yield 1/0; conditions treat nonzero as
  true; division truncates toward zero and rejects a zero divisor.
- Objects are created by their declaration; members start uninitialized.
  Reading any uninitialized variable yields 0 plus a Warning event.
- By-value object actuals are copied member-wise into a fresh object owned by
  the callee frame. By-reference parameters use copy-restore: the formal gets
  a private copy and its value is written back to the actual on return, which
  matches the slice transfer rules exactly (aliasing the same location through
  two by-ref formals is therefore out of scope).
- The receiver is bound by reference, so member writes inside a method are
  writes to the caller's object.

Event order around a call: CallEntered, the callee's events, AboutToReturn
just before an executed return node, Returned (copy-backs, resets), and only
then the call site's own StmtExecuted. Loop tests emit StmtExecuted per
evaluation and LoopExited after the false one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .events import (
    AboutToReturn,
    Binding,
    Callee,
    CallEntered,
    ExecEvent,
    InputConsumed,
    LoopExited,
    OutputProduced,
    Returned,
    RuntimeVar,
    StmtExecuted,
    Warning,
)
from .syntax import (
    Assign,
    BinOp,
    Call,
    Expr,
    If,
    Input,
    IntLit,
    MethodDef,
    Name,
    Output,
    Program,
    Return,
    Stmt,
    StrLit,
    VarDecl,
    While,
)

DEFAULT_BUDGET = 100000


class RunInterrupt(Exception):
    """Internal: aborts execution with a terminal status."""

    def __init__(self, status: str, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


class _ReturnSignal(Exception):
    def __init__(self, value: int | None):
        self.value = value
        super().__init__()


@dataclass
class ObjectVal:
    cls: str
    oid: int
    var_name: str
    members: dict[str, int] = field(default_factory=dict)  # absent = uninitialized

    def member_var(self, member: str) -> RuntimeVar:
        return RuntimeVar("member", self.oid, member, f"{self.var_name}.{member}")


@dataclass
class Frame:
    proc: str
    serial: int
    receiver: ObjectVal | None = None
    method: MethodDef | None = None
    locals: dict[str, "int | ObjectVal | None"] = field(default_factory=dict)

    def local_var(self, name: str) -> RuntimeVar:
        return RuntimeVar("local", self.serial, name, name)


@dataclass
class RunResult:
    events: list[ExecEvent]
    outputs: list[int | str]
    status: str  # "ok", "input-exhausted", "div-by-zero", "budget-exceeded"
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def run(program: Program, inputs: list[int] | tuple[int, ...] = (),
        budget: int = DEFAULT_BUDGET) -> RunResult:
    """Execute a checked program on the given input sequence."""
    if not program.checked:
        raise ValueError("run requires a checked Program")
    interp = _Interp(program, list(inputs), budget)
    try:
        frame = interp.new_frame("main", None, None, program.main)
        try:
            interp.exec_block(program.main, frame)
        except _ReturnSignal:
            pass
        return RunResult(interp.events, interp.outputs, "ok")
    except RunInterrupt as stop:
        return RunResult(interp.events, interp.outputs, stop.status, stop.message)


class _Interp:
    def __init__(self, program: Program, inputs: list[int], budget: int):
        self.program = program
        self.inputs = inputs
        self.next_input = 0
        self.budget = budget
        self.steps = 0
        self.events: list[ExecEvent] = []
        self.outputs: list[int | str] = []
        self.next_serial = 0
        self.next_oid = 0

    def emit(self, ev: ExecEvent) -> None:
        self.events.append(ev)

    def new_frame(self, proc: str, receiver: ObjectVal | None,
                  method: MethodDef | None, body: list[Stmt]) -> Frame:
        self.next_serial += 1
        frame = Frame(proc, self.next_serial, receiver, method)
        # declarations are procedure-scoped; objects exist from frame entry
        for s in _decls(body):
            for name in s.names:
                if s.decl_type == "int":
                    frame.locals[name] = None
                else:
                    frame.locals[name] = self.new_object(s.decl_type, name)
        return frame

    def new_object(self, cls: str, var_name: str) -> ObjectVal:
        self.next_oid += 1
        return ObjectVal(cls, self.next_oid, var_name)

    # -- reads and writes ---------------------------------------------------

    def read_name(self, name: Name, frame: Frame, at: int) -> int:
        if name.binding == "recv_member":
            obj, member = frame.receiver, name.base
        elif name.binding == "obj_member":
            obj, member = frame.locals[name.base], name.member
        elif name.binding == "int_local":
            value = frame.locals[name.base]
            if value is None:
                self.emit(Warning(at, f"read of uninitialized {name.base!r}"))
                return 0
            return value
        else:
            raise ValueError(f"object {name.base!r} read as a value")
        if member not in obj.members:
            self.emit(Warning(at, f"read of uninitialized {obj.var_name}.{member}"))
            return 0
        return obj.members[member]

    def write_name(self, name: Name, frame: Frame, value: int) -> None:
        if name.binding == "recv_member":
            frame.receiver.members[name.base] = value
        elif name.binding == "obj_member":
            frame.locals[name.base].members[name.member] = value
        else:
            frame.locals[name.base] = value

    def name_var(self, name: Name, frame: Frame) -> RuntimeVar:
        if name.binding == "recv_member":
            return frame.receiver.member_var(name.base)
        if name.binding == "obj_member":
            return frame.locals[name.base].member_var(name.member)
        return frame.local_var(name.base)

    def expr_vars(self, e: Expr, frame: Frame) -> list[RuntimeVar]:
        """RuntimeVars read by an expression; object names expand member-wise."""
        if isinstance(e, (IntLit, StrLit)):
            return []
        if isinstance(e, Name):
            if e.binding == "obj_local":
                obj = frame.locals[e.base]
                members = self.program.class_named(obj.cls).members
                return [obj.member_var(m) for m in members]
            return [self.name_var(e, frame)]
        if isinstance(e, BinOp):
            return self.expr_vars(e.left, frame) + self.expr_vars(e.right, frame)
        raise TypeError(f"unknown expression {e!r}")

    # -- evaluation ----------------------------------------------------------

    def eval(self, e: Expr, frame: Frame, at: int) -> int:
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, Name):
            return self.read_name(e, frame, at)
        if isinstance(e, BinOp):
            left = self.eval(e.left, frame, at)
            right = self.eval(e.right, frame, at)
            return self.apply(e.op, left, right, at)
        raise TypeError(f"cannot evaluate {e!r}")

    def apply(self, op: str, a: int, b: int, at: int) -> int:
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0:
                raise RunInterrupt("div-by-zero", f"division by zero at node {at}")
            q = abs(a) // abs(b)
            return q if (a < 0) == (b < 0) else -q
        if op == "<":
            return int(a < b)
        if op == ">":
            return int(a > b)
        if op == "<=":
            return int(a <= b)
        if op == ">=":
            return int(a >= b)
        if op == "==":
            return int(a == b)
        if op == "!=":
            return int(a != b)
        raise ValueError(f"unknown operator {op!r}")

    # -- statement execution --------------------------------------------------

    def charge(self, s: Stmt) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise RunInterrupt("budget-exceeded",
                               f"step budget {self.budget} exceeded at node {s.id}")

    def stmt_event(self, s: Stmt, frame: Frame,
                   defs: list[RuntimeVar], uses: list[RuntimeVar]) -> None:
        self.emit(StmtExecuted(
            s.id,
            tuple(sorted(set(defs), key=RuntimeVar.sort_key)),
            tuple(sorted(set(uses), key=RuntimeVar.sort_key)),
        ))

    def exec_block(self, body: list[Stmt], frame: Frame) -> None:
        for s in body:
            if not isinstance(s, VarDecl):
                self.exec_stmt(s, frame)

    def exec_stmt(self, s: Stmt, frame: Frame) -> None:
        self.charge(s)
        if isinstance(s, Assign):
            uses = self.expr_vars(s.value, frame)
            self.write_name(s.target, frame, self.eval(s.value, frame, s.id))
            self.stmt_event(s, frame, [self.name_var(s.target, frame)], uses)
        elif isinstance(s, Input):
            if self.next_input >= len(self.inputs):
                raise RunInterrupt("input-exhausted",
                                   f"no input left for node {s.id}")
            value = self.inputs[self.next_input]
            self.next_input += 1
            self.emit(InputConsumed(s.id, value))
            self.write_name(s.target, frame, value)
            self.stmt_event(s, frame, [self.name_var(s.target, frame)], [])
        elif isinstance(s, Output):
            if isinstance(s.value, StrLit):
                value: int | str = s.value.value
                uses: list[RuntimeVar] = []
            else:
                uses = self.expr_vars(s.value, frame)
                value = self.eval(s.value, frame, s.id)
            self.outputs.append(value)
            self.emit(OutputProduced(s.id, value))
            self.stmt_event(s, frame, [], uses)
        elif isinstance(s, If):
            uses = self.expr_vars(s.cond, frame)
            taken = self.eval(s.cond, frame, s.id) != 0
            self.stmt_event(s, frame, [], uses)
            self.exec_block(s.then_body if taken else s.else_body, frame)
        elif isinstance(s, While):
            # entry charge covers the first condition evaluation
            while True:
                uses = self.expr_vars(s.cond, frame)
                alive = self.eval(s.cond, frame, s.id) != 0
                self.stmt_event(s, frame, [], uses)
                if not alive:
                    self.emit(LoopExited(s.id))
                    break
                self.exec_block(s.body, frame)
                self.charge(s)
        elif isinstance(s, Return):
            if s.value is None:
                self.emit(AboutToReturn(s.id, ()))
                self.stmt_event(s, frame, [], [])
                raise _ReturnSignal(None)
            uses = self.expr_vars(s.value, frame)
            value = self.eval(s.value, frame, s.id)
            self.emit(AboutToReturn(
                s.id, tuple(sorted(set(uses), key=RuntimeVar.sort_key))))
            self.stmt_event(s, frame, [], uses)
            raise _ReturnSignal(value)
        elif isinstance(s, Call):
            self.exec_call(s, frame)
        else:
            raise TypeError(f"cannot execute {s!r}")

    # -- calls ---------------------------------------------------------------

    def exec_call(self, s: Call, frame: Frame) -> None:
        receiver = frame.locals[s.receiver.base]
        method = s.resolved
        callee = self.new_frame(f"{s.receiver_cls}.{method.signature}",
                                receiver, method, method.body)

        uses: list[RuntimeVar] = []
        bindings: list[Binding] = []
        copy_backs: list[tuple[RuntimeVar, RuntimeVar]] = []
        write_backs: list[tuple[Name, str]] = []  # (actual lvalue, formal name)
        for f, a in zip(method.formals, s.args):
            arg_vars = self.expr_vars(a, frame)
            uses.extend(arg_vars)
            if f.type == "int":
                value = self.eval(a, frame, s.id)
                callee.locals[f.name] = value
                f_var = callee.local_var(f.name)
                kind = "literal" if not arg_vars else "var"
                bindings.append(Binding(f.name, f.by_ref, kind,
                                        ((f_var, tuple(arg_vars)),)))
                if f.by_ref:
                    copy_backs.append((f_var, self.name_var(a, frame)))
                    write_backs.append((a, f.name))
            else:
                actual_obj = frame.locals[a.base]
                copy = self.new_object(f.type, f.name)
                copy.members = dict(actual_obj.members)
                callee.locals[f.name] = copy
                members = self.program.class_named(f.type).members
                transfers = tuple(
                    (copy.member_var(m), (actual_obj.member_var(m),)) for m in members)
                bindings.append(Binding(f.name, f.by_ref, "object", transfers))
                if f.by_ref:
                    copy_backs.extend(
                        (copy.member_var(m), actual_obj.member_var(m)) for m in members)
                    write_backs.append((a, f.name))

        self.emit(CallEntered(s.id, Callee(s.receiver_cls, method.name,
                                           method.signature.param_types),
                              tuple(bindings)))

        returned: int | None = None
        try:
            self.exec_block(method.body, callee)
        except _ReturnSignal as sig:
            returned = sig.value

        # by-ref copy-restore: write the formal's final value back
        for a, fname in write_backs:
            formal_val = callee.locals[fname]
            if isinstance(formal_val, ObjectVal):
                frame.locals[a.base].members = dict(formal_val.members)
            else:
                self.write_name(a, frame, 0 if formal_val is None else formal_val)

        returned_into = None
        defs: list[RuntimeVar] = []
        if s.assign_to is not None:
            if returned is None:
                self.emit(Warning(s.id, f"{s.receiver_cls}.{method.name} returned no value"))
                returned = 0
            self.write_name(s.assign_to, frame, returned)
            returned_into = self.name_var(s.assign_to, frame)
            defs.append(returned_into)

        resets: list[RuntimeVar] = []
        for name, value in callee.locals.items():
            if isinstance(value, ObjectVal):
                members = self.program.class_named(value.cls).members
                resets.extend(value.member_var(m) for m in members)
            else:
                resets.append(callee.local_var(name))
        recv_members = tuple(receiver.member_var(m)
                             for m in self.program.class_named(receiver.cls).members)

        self.emit(Returned(
            s.id,
            tuple(copy_backs),
            tuple(sorted(resets, key=RuntimeVar.sort_key)),
            returned_into,
            recv_members,
        ))
        self.stmt_event(s, frame, defs, uses)


def _decls(body: list[Stmt]):
    for s in body:
        if isinstance(s, VarDecl):
            yield s
        elif isinstance(s, If):
            yield from _decls(s.then_body)
            yield from _decls(s.else_body)
        elif isinstance(s, While):
            yield from _decls(s.body)
