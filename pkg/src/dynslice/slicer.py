"""Streaming dynamic slicer.

Consumes the execution event stream and maintains the live slice state:
ActiveDataSlice per runtime variable, ActiveControlSlice per test node,
ActiveCallSlice with its stack, ActiveReturnSlice, and the accumulated
DyanSlice table with last-execution semantics. No event history is kept, so
state size is bounded by the program's variables and nodes regardless of how
long the run is; `peak_cardinality` makes that measurable.

All slice sets are frozensets of statement ids: a DyanSlice entry is a
snapshot taken when its node executed and later state changes cannot leak
into it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cdg import Cdg
from .events import (
    AboutToReturn,
    CallEntered,
    ExecEvent,
    LoopExited,
    Returned,
    RuntimeVar,
    StmtExecuted,
)

EMPTY: frozenset[int] = frozenset()


class CriterionError(Exception):
    """The requested slicing criterion never executed (or names nothing)."""


@dataclass
class SliceState:
    cdg: Cdg
    active_data: dict[RuntimeVar, frozenset[int]] = field(default_factory=dict)
    active_control: dict[int, frozenset[int]] = field(default_factory=dict)
    call_stack: list[frozenset[int]] = field(default_factory=list)
    active_call: frozenset[int] = EMPTY
    active_return: frozenset[int] = EMPTY
    dyn_table: dict[tuple[int, RuntimeVar], frozenset[int]] = field(default_factory=dict)
    # (node, display name) -> runtime var of the last execution, for queries
    dyn_index: dict[tuple[int, str], RuntimeVar] = field(default_factory=dict)
    executed: set[int] = field(default_factory=set)
    events: int = 0
    updates: int = 0
    peak_cardinality: int = 0
    _card: int = 0

    # -- event consumption ----------------------------------------------------

    def feed(self, ev: ExecEvent) -> "SliceState":
        self.events += 1
        if isinstance(ev, StmtExecuted):
            self.on_stmt(ev)
        elif isinstance(ev, CallEntered):
            self.on_call(ev)
        elif isinstance(ev, (AboutToReturn, Returned)):
            self.on_return(ev)
        elif isinstance(ev, LoopExited):
            self.on_loop_exit(ev)
        # input/output/warning events carry no slice information
        if self._card > self.peak_cardinality:
            self.peak_cardinality = self._card
        return self

    def consume(self, events) -> "SliceState":
        for ev in events:
            self.feed(ev)
        return self

    def on_stmt(self, ev: StmtExecuted) -> "SliceState":
        u = ev.id
        ctrl = self._ctrl(u)
        use_union = EMPTY
        for v in ev.uses:
            use_union |= self.active_data.get(v, EMPTY)
        kind = self.cdg.kind(u)

        # def update; at call nodes the defs were installed by on_return
        if kind != "Call":
            for d in ev.defs:
                self._set_data(d, frozenset({u}) | use_union | ctrl | self.active_call)

        # DyanSlice snapshot for everything this node touched
        for v in ev.defs + ev.uses:
            self._set_dyn(u, v, self.active_data.get(v, EMPTY) | ctrl)

        if kind in ("Test", "TestLoop"):
            self._set_control(u, frozenset({u}) | use_union | ctrl | self.active_call)

        self.executed.add(u)
        return self

    def on_call(self, ev: CallEntered) -> "SliceState":
        u = ev.call_site
        ctrl = self._ctrl(u)
        self.call_stack.append(self.active_call)
        self._card += len(self.active_call)
        self._set_call(frozenset({u}) | self.active_call | ctrl)
        for b in ev.bindings:
            for f_var, sources in b.transfers:
                ads = EMPTY
                for src in sources:
                    ads |= self.active_data.get(src, EMPTY)
                self._set_data(f_var, ads | self.active_call)
        return self

    def on_return(self, ev: AboutToReturn | Returned) -> "SliceState":
        if isinstance(ev, AboutToReturn):
            use_union = EMPTY
            for v in ev.uses:
                use_union |= self.active_data.get(v, EMPTY)
            head = frozenset({ev.id}) if ev.id is not None else EMPTY
            ctrl = self._ctrl(ev.id) if ev.id is not None else EMPTY
            self._set_return(head | use_union | ctrl | self.active_call)
            return self

        u = ev.call_site
        # by-ref copy-back: the actual inherits the formal's slice exactly
        for f_var, a_var in ev.copy_backs:
            self._set_data(a_var, self.active_data.get(f_var, EMPTY))
        if ev.returned_into is not None:
            self._set_data(ev.returned_into, self.active_return)
        # snapshot the receiver's members so (call node, member) is a valid
        # criterion: the call is where those defs reached the caller
        ctrl = self._ctrl(u)
        for v in ev.receiver_members:
            self._set_dyn(u, v, self.active_data.get(v, EMPTY) | ctrl)
        # callee locals die with the frame
        for v in ev.resets:
            self._pop_data(v)
        restored = self.call_stack.pop()
        self._card -= len(restored)
        self._set_call(restored)
        self._set_return(EMPTY)
        return self

    def on_loop_exit(self, ev: LoopExited) -> "SliceState":
        old = self.active_control.pop(ev.id, None)
        if old is not None:
            self._card -= len(old)
        return self

    # -- queries ----------------------------------------------------------------

    def slice_of(self, node: int, var: str) -> frozenset[int]:
        """DyanSlice of (node, var) for the node's last execution."""
        rv = self.dyn_index.get((node, var))
        if rv is None:
            raise CriterionError(
                f"criterion ({node}, {var}) never executed with that variable")
        return self.dyn_table[(node, rv)]

    def slice_of_object(self, obj: str) -> frozenset[int]:
        """Member-wise union of the object's final ActiveDataSlices."""
        cls = self.cdg.main_objects.get(obj)
        if cls is None:
            raise CriterionError(f"unknown object {obj!r}")
        result = EMPTY
        for m in self.cdg.members[cls]:
            display = f"{obj}.{m}"
            for rv, ads in self.active_data.items():
                if rv.kind == "member" and rv.display == display:
                    result |= ads
        return result

    def criteria(self) -> list[tuple[int, str]]:
        """All (node, variable) pairs that are valid slicing criteria."""
        return sorted(self.dyn_index)

    def cardinality(self) -> int:
        """Total stored set elements: the live memory measure."""
        return self._card

    def recount(self) -> int:
        """cardinality() recomputed from scratch (consistency check)."""
        total = len(self.active_call) + len(self.active_return)
        for store in (self.active_data, self.active_control, self.dyn_table):
            for s in store.values():
                total += len(s)
        for s in self.call_stack:
            total += len(s)
        return total

    # -- internals ---------------------------------------------------------------

    def _ctrl(self, sid: int) -> frozenset[int]:
        p = self.cdg.parent_test(sid)
        if p is None:
            return EMPTY
        return self.active_control.get(p, EMPTY)

    def _set_data(self, rv: RuntimeVar, value: frozenset[int]) -> None:
        old = self.active_data.get(rv, EMPTY)
        self.active_data[rv] = value
        self._card += len(value) - len(old)
        self.updates += 1

    def _pop_data(self, rv: RuntimeVar) -> None:
        old = self.active_data.pop(rv, None)
        if old is not None:
            self._card -= len(old)

    def _set_control(self, sid: int, value: frozenset[int]) -> None:
        old = self.active_control.get(sid, EMPTY)
        self.active_control[sid] = value
        self._card += len(value) - len(old)
        self.updates += 1

    def _set_call(self, value: frozenset[int]) -> None:
        self._card += len(value) - len(self.active_call)
        self.active_call = value

    def _set_return(self, value: frozenset[int]) -> None:
        self._card += len(value) - len(self.active_return)
        self.active_return = value

    def _set_dyn(self, sid: int, rv: RuntimeVar, value: frozenset[int]) -> None:
        old = self.dyn_table.get((sid, rv), EMPTY)
        self.dyn_table[(sid, rv)] = value
        self.dyn_index[(sid, rv.display)] = rv
        self._card += len(value) - len(old)
        self.updates += 1


def init(cdg: Cdg) -> SliceState:
    """Fresh all-empty slicer state for a run over this program's CDG."""
    return SliceState(cdg)


def slice_events(cdg: Cdg, events) -> SliceState:
    """One-shot convenience: feed a whole event stream through a fresh state."""
    return init(cdg).consume(events)
