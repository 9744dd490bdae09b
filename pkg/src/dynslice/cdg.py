"""Control dependence graph and static def/use sets.

For this structured language the CDG restricted to one procedure is a tree:
every statement's control parent is the nearest enclosing test node, or the
procedure's synthetic Entry node. Entry nodes never appear in slices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .syntax import (
    Assign,
    BinOp,
    Call,
    Expr,
    If,
    Input,
    IntLit,
    Name,
    Output,
    Program,
    Return,
    Stmt,
    StrLit,
    VarDecl,
    While,
)


@dataclass(frozen=True)
class VarRef:
    """A sliceable storage location as seen statically.

    hint is one of "local" (procedure-local scalar), "obj_member" (member of a
    named object variable), "recv_member" (bare member name inside a method,
    bound to the receiver only at runtime).
    """

    base: str
    member: str | None
    hint: str

    def display(self) -> str:
        return f"{self.base}.{self.member}" if self.member else self.base


@dataclass(frozen=True)
class NodeInfo:
    id: int | str  # StmtId, or entry key for Entry nodes
    kind: str  # Assign, Input, Output, Test, TestLoop, Call, Return, Entry
    def_set: frozenset[VarRef]
    use_set: frozenset[VarRef]

    @property
    def is_test(self) -> bool:
        return self.kind in ("Test", "TestLoop")


@dataclass
class Cdg:
    nodes: dict[int, NodeInfo] = field(default_factory=dict)
    entries: dict[str, NodeInfo] = field(default_factory=dict)  # key -> node
    entry_order: list[str] = field(default_factory=list)
    parent: dict[int, int | str] = field(default_factory=dict)
    proc_of: dict[int, str] = field(default_factory=dict)
    members: dict[str, tuple[str, ...]] = field(default_factory=dict)  # class -> members
    main_objects: dict[str, str] = field(default_factory=dict)  # object -> class
    main_ints: tuple[str, ...] = ()

    def kind(self, sid: int) -> str:
        return self.nodes[sid].kind

    def parent_test(self, sid: int) -> int | None:
        """Control parent when it is a test node, else None (Entry parent)."""
        p = self.parent[sid]
        return p if isinstance(p, int) else None


def entry_key(cls: str, method) -> str:
    """Stable procedure key: "main" or "cls.name(type,...)" for methods."""
    if method is None:
        return "main"
    return f"{cls}.{method.signature}"


def _expr_vars(e: Expr, members: dict[str, tuple[str, ...]]) -> set[VarRef]:
    if isinstance(e, (IntLit, StrLit)):
        return set()
    if isinstance(e, Name):
        return set(_name_refs(e, members))
    if isinstance(e, BinOp):
        return _expr_vars(e.left, members) | _expr_vars(e.right, members)
    raise TypeError(f"unknown expression {e!r}")


def _name_refs(name: Name, members: dict[str, tuple[str, ...]]) -> list[VarRef]:
    """VarRefs of a bound Name; object names expand to all their members."""
    if name.binding == "recv_member":
        return [VarRef(name.base, None, "recv_member")]
    if name.binding == "obj_member":
        return [VarRef(name.base, name.member, "obj_member")]
    if name.binding == "obj_local":
        return [VarRef(name.base, m, "obj_member") for m in members[name.cls]]
    return [VarRef(name.base, None, "local")]


def def_use(node: Stmt, members: dict[str, tuple[str, ...]] | None = None):
    """Static (def_set, use_set) of one checked statement."""
    members = members or {}
    if isinstance(node, Assign):
        return (frozenset(_name_refs(node.target, members)),
                frozenset(_expr_vars(node.value, members)))
    if isinstance(node, Input):
        return frozenset(_name_refs(node.target, members)), frozenset()
    if isinstance(node, Output):
        return frozenset(), frozenset(_expr_vars(node.value, members))
    if isinstance(node, (If, While)):
        return frozenset(), frozenset(_expr_vars(node.cond, members))
    if isinstance(node, Call):
        uses: set[VarRef] = set()
        for a in node.args:
            uses |= _expr_vars(a, members)
        defs = frozenset(_name_refs(node.assign_to, members)) if node.assign_to else frozenset()
        return defs, frozenset(uses)
    if isinstance(node, Return):
        uses = _expr_vars(node.value, members) if node.value is not None else set()
        return frozenset(), frozenset(uses)
    raise TypeError(f"{node!r} is not an executable statement")


_KIND = {Assign: "Assign", Input: "Input", Output: "Output",
         If: "Test", While: "TestLoop", Call: "Call", Return: "Return"}


def build_cdg(program: Program) -> Cdg:
    if not program.checked:
        raise ValueError("build_cdg requires a checked Program")
    g = Cdg()
    g.members = {c.name: tuple(c.members) for c in program.classes}
    objs: dict[str, str] = {}
    ints: list[str] = []
    for s in program.main:
        if isinstance(s, VarDecl):
            for n in s.names:
                if s.decl_type == "int":
                    ints.append(n)
                else:
                    objs[n] = s.decl_type
    g.main_objects = objs
    g.main_ints = tuple(ints)

    for cls_name, method, body in program.procedures():
        key = entry_key(cls_name, method)
        g.entries[key] = NodeInfo(key, "Entry", frozenset(), frozenset())
        g.entry_order.append(key)
        _attach(g, body, key, key)
    return g


def _attach(g: Cdg, body: list[Stmt], parent: int | str, proc: str) -> None:
    for s in body:
        if isinstance(s, VarDecl):
            continue
        defs, uses = def_use(s, g.members)
        g.nodes[s.id] = NodeInfo(s.id, _KIND[type(s)], defs, uses)
        g.parent[s.id] = parent
        g.proc_of[s.id] = proc
        if isinstance(s, If):
            _attach(g, s.then_body, s.id, proc)
            _attach(g, s.else_body, s.id, proc)
        elif isinstance(s, While):
            _attach(g, s.body, s.id, proc)


def _entry_label(key: str) -> str:
    return f"Entry({key})"


def export_dot(g: Cdg) -> str:
    """Deterministic DOT text: edges point from each node to its control parent."""
    lines = ["digraph cdg {"]
    for key in g.entry_order:
        lines.append(f'    "{_entry_label(key)}" [shape=box];')
    for sid in sorted(g.nodes):
        node = g.nodes[sid]
        lines.append(f'    {sid} [label="{sid}: {node.kind}"];')
    for sid in sorted(g.parent):
        p = g.parent[sid]
        target = str(p) if isinstance(p, int) else f'"{_entry_label(p)}"'
        lines.append(f"    {sid} -> {target};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: Cdg) -> str:
    """JSON export: array of {id, kind, parent, defs, uses}, statements first."""
    rows = []
    for sid in sorted(g.nodes):
        node = g.nodes[sid]
        p = g.parent[sid]
        rows.append({
            "id": sid,
            "kind": node.kind,
            "parent": p if isinstance(p, int) else _entry_label(p),
            "defs": sorted(v.display() for v in node.def_set),
            "uses": sorted(v.display() for v in node.use_set),
        })
    for key in g.entry_order:
        rows.append({"id": _entry_label(key), "kind": "Entry", "parent": None,
                     "defs": [], "uses": []})
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"
