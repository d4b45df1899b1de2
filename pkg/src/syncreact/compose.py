"""Sequential and parallel composition of synchronous systems.

Sequential composition feeds the first machine's current output to the
second machine as its input for the same tick, so the second machine
sees the first one's state before the shared transition: the usual one
tick Moore delay.  Parallel composition pairs transitions and outputs
componentwise over product symbols.  Both constructions keep only the
part reachable from the initial pair, which never changes the
bisimilarity class of the initial state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Alphabet, SynchronousSystem, pair_symbol
from .errors import SignatureMismatch

# `*` is reserved in state names to join the two component state names.
STATE_JOIN = "*"


@dataclass(frozen=True)
class ComposedSystem:
    """A composite system plus provenance: component names and kind."""

    system: SynchronousSystem
    kind: str
    left: str
    right: str


def _pair_state(qf: str, qg: str) -> str:
    return f"{qf}{STATE_JOIN}{qg}"


def seq_compose(
    sys_f: SynchronousSystem,
    sys_g: SynchronousSystem,
    name: str | None = None,
    start: tuple[str, str] | None = None,
) -> ComposedSystem:
    """Sequential composition: the output of sys_f drives sys_g.

    Requires the output symbols of sys_f to equal the input symbols of
    sys_g as sets.  A composite transition on input a exists exactly
    when the first machine steps on a and the second steps on the first
    machine's current output; the composite output is the second
    machine's output.  ``start`` overrides the initial pair, which is
    used to explore composites from non-initial states.
    """
    if not sys_f.outputs.same_symbols(sys_g.inputs):
        raise SignatureMismatch(
            f"outputs of {sys_f.name} do not match inputs of {sys_g.name}"
        )
    if start is None:
        start = (sys_f.initial, sys_g.initial)
    sys_f.check_state(start[0])
    sys_g.check_state(start[1])
    states: list[tuple[str, str]] = [start]
    seen = {start}
    transitions: list[tuple[str, str, str]] = []
    frontier = [start]
    while frontier:
        next_frontier = []
        for (qf, qg) in frontier:
            feed = sys_f.out(qf)
            for sym in sys_f.inputs:
                for qf2 in sys_f.successors(qf, sym):
                    for qg2 in sys_g.successors(qg, feed):
                        transitions.append(
                            (_pair_state(qf, qg), sym, _pair_state(qf2, qg2))
                        )
                        if (qf2, qg2) not in seen:
                            seen.add((qf2, qg2))
                            states.append((qf2, qg2))
                            next_frontier.append((qf2, qg2))
        frontier = next_frontier
    system = SynchronousSystem(
        name=name or f"{sys_g.name}.{sys_f.name}",
        inputs=sys_f.inputs,
        outputs=sys_g.outputs,
        states=tuple(_pair_state(qf, qg) for (qf, qg) in states),
        transitions=tuple(transitions),
        out_label={_pair_state(qf, qg): sys_g.out(qg) for (qf, qg) in states},
        initial=_pair_state(*start),
    )
    return ComposedSystem(system, "seq", sys_f.name, sys_g.name)


def par_compose(
    sys_f: SynchronousSystem,
    sys_g: SynchronousSystem,
    name: str | None = None,
) -> ComposedSystem:
    """Parallel composition over product input and output symbols."""
    inputs = Alphabet(
        tuple(pair_symbol(a, c) for a in sys_f.inputs for c in sys_g.inputs)
    )
    outputs = Alphabet(
        tuple(pair_symbol(b, d) for b in sys_f.outputs for d in sys_g.outputs)
    )
    start = (sys_f.initial, sys_g.initial)
    states: list[tuple[str, str]] = [start]
    seen = {start}
    transitions: list[tuple[str, str, str]] = []
    frontier = [start]
    while frontier:
        next_frontier = []
        for (qf, qg) in frontier:
            for a in sys_f.inputs:
                for c in sys_g.inputs:
                    sym = pair_symbol(a, c)
                    for qf2 in sys_f.successors(qf, a):
                        for qg2 in sys_g.successors(qg, c):
                            transitions.append(
                                (_pair_state(qf, qg), sym, _pair_state(qf2, qg2))
                            )
                            if (qf2, qg2) not in seen:
                                seen.add((qf2, qg2))
                                states.append((qf2, qg2))
                                next_frontier.append((qf2, qg2))
        frontier = next_frontier
    out_label = {
        _pair_state(qf, qg): pair_symbol(sys_f.out(qf), sys_g.out(qg))
        for (qf, qg) in states
    }
    system = SynchronousSystem(
        name=name or f"{sys_f.name}-par-{sys_g.name}",
        inputs=inputs,
        outputs=outputs,
        states=tuple(_pair_state(qf, qg) for (qf, qg) in states),
        transitions=tuple(transitions),
        out_label=out_label,
        initial=_pair_state(*start),
    )
    return ComposedSystem(system, "par", sys_f.name, sys_g.name)
