from __future__ import annotations

from collections import Counter

import pytest

from dynslice import generate, load, run
from dynslice.generator import MAX_DEPTH, MAX_STMTS
from dynslice.syntax import If, Input, While, walk


def nesting_depth(body, depth=0):
    deepest = depth
    for s in body:
        if isinstance(s, If):
            inner = max(nesting_depth(s.then_body, depth + 1),
                        nesting_depth(s.else_body, depth + 1))
            deepest = max(deepest, inner)
        elif isinstance(s, While):
            deepest = max(deepest, nesting_depth(s.body, depth + 1))
    return deepest


def test_deterministic():
    a, b = generate(7), generate(7)
    assert a.source == b.source and a.inputs == b.inputs
    assert generate(8).source != a.source


@pytest.mark.parametrize("seed", range(40))
def test_generated_programs_are_well_formed(seed):
    g = generate(seed)
    program = load(g.source)
    assert 1 <= program.stmt_count <= MAX_STMTS
    assert 1 <= len(program.classes) <= 2

    names = Counter()
    for cls in program.classes:
        assert len(cls.methods) <= 3
        for m in cls.methods:
            names[(cls.name, m.name)] += 1
    overloaded = [k for k, n in names.items() if n >= 2]
    assert len(overloaded) == 1
    c, name = overloaded[0]
    sigs = {m.signature.param_types for cls in program.classes
            if cls.name == c for m in cls.methods if m.name == name}
    assert len(sigs) == 2  # same name, distinct shapes

    for _, _, body in program.procedures():
        assert nesting_depth(body) <= MAX_DEPTH


@pytest.mark.parametrize("seed", range(40))
def test_generated_programs_run_clean(seed):
    g = generate(seed)
    program = load(g.source)
    result = run(program, g.inputs)
    assert result.ok, f"seed {seed}: {result.status}"
    reads = sum(isinstance(s, Input) for s in program.statements())
    assert len(g.inputs) == reads


def test_inputs_are_small_ints():
    for seed in range(40):
        assert all(0 <= v <= 9 for v in generate(seed).inputs)
