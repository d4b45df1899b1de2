"""Small-step semantics and the finite-system builder.

A configuration is a store, a pending input symbol, and a program.  One
reduction either rewrites the configuration (a leaf) or fires a tick,
producing a node that emits the evaluated output tuple and branches
over every input symbol.  Context rules extend the rewrite through
sequencing, dereference, assignment, conditionals and tick arguments by
mapping over the leaves of the produced tree.

The coinductive limit of this process is realized by interning: each
tick node is keyed by its emitted output, its continuation program, and
its store restricted to live variables, and exploration stops when no
new key appears.  The segment before the first tick contributes the
initial state's output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..core import Alphabet, SynchronousSystem, symbol_components
from ..errors import (
    BuildError,
    IntRangeExceeded,
    NonFiniteIntRange,
    RoundDivergence,
    StateBudgetExceeded,
    StuckConfiguration,
)
from .syntax import (
    Assign,
    Ast,
    BoolLit,
    Conj,
    Dec,
    Deref,
    Get,
    If,
    IntLit,
    NotZero,
    Seq,
    Skip,
    Tick,
    VarRef,
    While,
    is_value,
    unparse,
)

Value = Union[bool, int]
Store = tuple[tuple[str, Value], ...]

# Reduction steps allowed within one round before diagnosing divergence.
ROUND_STEP_BUDGET = 100_000


@dataclass(frozen=True)
class Config:
    store: Store
    pending: str
    prog: Ast

    def lookup(self, name: str) -> Value:
        for (n, v) in self.store:
            if n == name:
                return v
        raise StuckConfiguration(f"variable {name!r} missing from store")

    def updated(self, name: str, value: Value) -> Store:
        return tuple((n, value if n == name else v) for (n, v) in self.store)


@dataclass(frozen=True)
class Leaf:
    config: Config


@dataclass(frozen=True)
class Node:
    out: str
    branches: tuple[tuple[str, "EvalTree"], ...]


EvalTree = Union[Leaf, Node]


def map_leaves(wrap, tree: EvalTree) -> EvalTree:
    """Apply a program rewriting to every leaf of a partial tree."""
    if isinstance(tree, Leaf):
        cfg = tree.config
        return Leaf(Config(cfg.store, cfg.pending, wrap(cfg.prog)))
    return Node(tree.out, tuple((a, map_leaves(wrap, t)) for (a, t) in tree.branches))


@dataclass(frozen=True)
class VarDecl:
    name: str
    base: str  # "bool" or "int"
    low: Optional[int] = None
    high: Optional[int] = None

    def default(self) -> Value:
        return False if self.base == "bool" else 0


def _literal(value: Value) -> Ast:
    return BoolLit(value) if isinstance(value, bool) else IntLit(value)


def _component_value(text: str, base: str) -> Value:
    if base == "bool":
        return text == "tt"
    return int(text)


def _value_text(value: Value) -> str:
    if isinstance(value, bool):
        return "tt" if value else "ff"
    return str(value)


class Machine:
    """Evaluation context: alphabets, component types, declared variables."""

    def __init__(
        self,
        inputs: Alphabet,
        outputs: Alphabet,
        in_types: tuple[str, ...],
        out_types: tuple[str, ...],
        variables: tuple[VarDecl, ...],
    ):
        self.inputs = inputs
        self.outputs = outputs
        self.in_types = in_types
        self.out_types = out_types
        self.variables = variables
        self.var_decl = {v.name: v for v in variables}

    def initial_store(self) -> Store:
        store = []
        for v in self.variables:
            value = v.default()
            if v.base == "int" and v.low is not None and not v.low <= 0 <= v.high:
                raise BuildError(
                    f"default 0 outside declared range of variable {v.name}"
                )
            store.append((v.name, value))
        return tuple(store)

    def check_assignment(self, name: str, value: Value) -> None:
        decl = self.var_decl.get(name)
        if decl is None:
            raise StuckConfiguration(f"assignment to undeclared variable {name}")
        if decl.base == "int" and not isinstance(value, bool):
            if decl.low is None:
                raise NonFiniteIntRange(
                    f"integer variable {name} has no declared range"
                )
            if not decl.low <= value <= decl.high:
                raise IntRangeExceeded(
                    f"assignment {name} := {value} leaves range"
                    f" [{decl.low}..{decl.high}]"
                )

    def input_component(self, pending: str, index: int) -> Value:
        comps = symbol_components(pending)
        return _component_value(comps[index], self.in_types[index])

    def emit_symbol(self, args: tuple) -> str:
        text = ",".join(_value_text(a.value) for a in args)
        if text not in self.outputs:
            raise BuildError(f"program emits undeclared output symbol {text!r}")
        return text

    def step(self, config: Config) -> EvalTree:
        """One application of the reduction relation."""
        st, pend, prog = config.store, config.pending, config.prog

        def leaf(new_store: Store, new_prog: Ast) -> Leaf:
            return Leaf(Config(new_store, pend, new_prog))

        if isinstance(prog, Seq):
            if isinstance(prog.first, Skip):
                return leaf(st, prog.second)
            tail = prog.second
            return map_leaves(
                lambda p, tail=tail: Seq(p, tail),
                self.step(Config(st, pend, prog.first)),
            )
        if isinstance(prog, While):
            unfolded = If(prog.cond, Seq(prog.body, prog), Skip())
            return leaf(st, unfolded)
        if isinstance(prog, If):
            if isinstance(prog.cond, BoolLit):
                return leaf(st, prog.then_branch if prog.cond.value else prog.else_branch)
            t, e = prog.then_branch, prog.else_branch
            return map_leaves(
                lambda p, t=t, e=e: If(p, t, e),
                self.step(Config(st, pend, prog.cond)),
            )
        if isinstance(prog, Assign):
            if is_value(prog.value):
                name = prog.target.name
                value = prog.value.value
                self.check_assignment(name, value)
                return leaf(config.updated(name, value), Skip())
            target = prog.target
            return map_leaves(
                lambda p, target=target: Assign(target, p),
                self.step(Config(st, pend, prog.value)),
            )
        if isinstance(prog, Deref):
            if isinstance(prog.target, VarRef):
                return leaf(st, _literal(config.lookup(prog.target.name)))
            return map_leaves(
                lambda p: Deref(p), self.step(Config(st, pend, prog.target))
            )
        if isinstance(prog, Get):
            return leaf(st, _literal(self.input_component(pend, prog.index)))
        if isinstance(prog, Dec):
            if isinstance(prog.inner, IntLit):
                return leaf(st, IntLit(prog.inner.value - 1))
            return map_leaves(lambda p: Dec(p), self.step(Config(st, pend, prog.inner)))
        if isinstance(prog, NotZero):
            if isinstance(prog.inner, IntLit):
                return leaf(st, BoolLit(prog.inner.value != 0))
            return map_leaves(
                lambda p: NotZero(p), self.step(Config(st, pend, prog.inner))
            )
        if isinstance(prog, Conj):
            if isinstance(prog.left, BoolLit) and isinstance(prog.right, BoolLit):
                return leaf(st, BoolLit(prog.left.value and prog.right.value))
            if isinstance(prog.left, BoolLit):
                left = prog.left
                return map_leaves(
                    lambda p, left=left: Conj(left, p),
                    self.step(Config(st, pend, prog.right)),
                )
            right = prog.right
            return map_leaves(
                lambda p, right=right: Conj(p, right),
                self.step(Config(st, pend, prog.left)),
            )
        if isinstance(prog, Tick):
            for i, arg in enumerate(prog.args):
                if not is_value(arg):
                    before = prog.args[:i]
                    after = prog.args[i + 1 :]
                    return map_leaves(
                        lambda p, before=before, after=after: Tick(
                            before + (p,) + after
                        ),
                        self.step(Config(st, pend, arg)),
                    )
            out = self.emit_symbol(prog.args)
            branches = tuple(
                (symbol, Leaf(Config(st, symbol, Skip())))
                for symbol in self.inputs
            )
            return Node(out, branches)
        raise StuckConfiguration(f"no rule applies to {unparse(prog)!r}")

    def run_round(self, config: Config) -> Optional[tuple[str, dict[str, Config]]]:
        """Reduce until a tick fires; None when the program terminates.

        All trees produced by :meth:`step` have depth at most one, so a
        fired tick surfaces immediately with leaf children.
        """
        for _ in range(ROUND_STEP_BUDGET):
            if isinstance(config.prog, Skip):
                return None
            tree = self.step(config)
            if isinstance(tree, Leaf):
                config = tree.config
                continue
            branches = {}
            for (symbol, child) in tree.branches:
                if not isinstance(child, Leaf):
                    raise StuckConfiguration("tick produced a nested tree")
                branches[symbol] = child.config
            return tree.out, branches
        raise RoundDivergence(
            f"no tick after {ROUND_STEP_BUDGET} reduction steps"
        )


def reads(expr: Ast) -> frozenset:
    """Variables read through a dereference anywhere in an expression."""
    if isinstance(expr, Deref):
        if isinstance(expr.target, VarRef):
            return frozenset({expr.target.name})
        return reads(expr.target)
    if isinstance(expr, (Dec, NotZero)):
        return reads(expr.inner)
    if isinstance(expr, Conj):
        return reads(expr.left) | reads(expr.right)
    return frozenset()


def live_in(prog: Ast, live_out: frozenset) -> frozenset:
    """Backward liveness: variables whose value may be read before reassignment."""
    if isinstance(prog, Skip):
        return live_out
    if isinstance(prog, Assign):
        if isinstance(prog.target, VarRef):
            return (live_out - {prog.target.name}) | reads(prog.value)
        return live_out | reads(prog.value)
    if isinstance(prog, Seq):
        return live_in(prog.first, live_in(prog.second, live_out))
    if isinstance(prog, If):
        return (
            reads(prog.cond)
            | live_in(prog.then_branch, live_out)
            | live_in(prog.else_branch, live_out)
        )
    if isinstance(prog, While):
        live = live_out | reads(prog.cond)
        while True:
            refined = live | live_in(prog.body, live)
            if refined == live:
                return live
            live = refined
    if isinstance(prog, Tick):
        out = live_out
        for arg in prog.args:
            out |= reads(arg)
        return out
    # Expression forms in statement position cannot occur in typed
    # programs; treat them as pure reads.
    return live_out | reads(prog)


def build_lts(
    machine: Machine,
    program: Ast,
    max_states: int,
    name: str = "program",
    initial_input: Optional[str] = None,
) -> SynchronousSystem:
    """Unfold a program into its reachable finite synchronous system.

    States are interned at tick boundaries, keyed by the emitted output,
    the continuation program, and the store restricted to the
    continuation's live variables.  Completeness holds by construction
    because every tick branches over the whole input alphabet.

    ``initial_input`` fills the pending-input slot before the first
    tick; it defaults to the first declared symbol.  A program that
    reads input before ticking can observe the choice, so it is
    explicit here and covered by tests for the shipped programs.
    """
    for v in machine.variables:
        if v.base == "int" and v.low is None:
            raise NonFiniteIntRange(
                f"integer variable {v.name} needs a declared range [lo..hi]"
            )
    if initial_input is None:
        initial_input = machine.inputs.symbols[0]
    elif initial_input not in machine.inputs:
        raise BuildError(f"initial input {initial_input!r} is not declared")
    initial = Config(machine.initial_store(), initial_input, program)
    first = machine.run_round(initial)
    if first is None:
        raise BuildError("program terminates before its first tick")
    out0, branches0 = first

    def intern_key(out: str, config: Config):
        live = live_in(config.prog, frozenset())
        store = tuple((n, v) for (n, v) in config.store if n in live)
        return (out, store, config.prog)

    # All branches of one tick share store and continuation.
    def round_key(out: str, branches: dict[str, Config]):
        any_cfg = branches[machine.inputs.symbols[0]]
        return intern_key(out, any_cfg)

    key0 = round_key(out0, branches0)
    names: dict = {key0: "q0"}
    info: dict = {"q0": (out0, branches0)}
    order = ["q0"]
    frontier = ["q0"]
    transitions: list[tuple[str, str, str]] = []
    while frontier:
        next_frontier = []
        for state in frontier:
            out, branches = info[state]
            for symbol in machine.inputs:
                result = machine.run_round(branches[symbol])
                if result is None:
                    raise BuildError(
                        "program terminates; cannot build a complete system"
                    )
                out2, branches2 = result
                key = round_key(out2, branches2)
                if key not in names:
                    if len(names) >= max_states:
                        raise StateBudgetExceeded(max_states)
                    fresh = f"q{len(names)}"
                    names[key] = fresh
                    info[fresh] = (out2, branches2)
                    order.append(fresh)
                    next_frontier.append(fresh)
                transitions.append((state, symbol, names[key]))
        frontier = next_frontier
    return SynchronousSystem(
        name=name,
        inputs=machine.inputs,
        outputs=machine.outputs,
        states=tuple(order),
        transitions=tuple(transitions),
        out_label={state: info[state][0] for state in order},
        initial="q0",
    )
