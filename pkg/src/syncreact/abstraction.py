"""Compositional under-approximation of observable effects.

Deterministic observable effects (DOE) collapse every separating pair,
successor combination, input word and run pair of a state into one
effect sequence: a position holds a fixed output pair only when every
behavior exhibits exactly that difference there, and the silent symbol
otherwise.  Strongly separating pair sequences (SSPseq) are the
receiver-side dual: per-level sets of input pairs that keep separating
along every tracked successor pair.  The reactivity lemma combines the
two across a sequential composition without ever building the product.

Per-position universal quantifications over infinite words are
discharged exactly by level-set constructions: the frontier of run
pairs after n shared inputs ranges over a finite powerset, so both DOE
and SSPseq are ultimately periodic and are extracted as lassos by
frontier hashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

from .core import BisimOracle, SynchronousSystem
from .errors import NotReactive, PreconditionFailed, SignatureMismatch
from .lasso import (
    STAR,
    STAR_FOREVER,
    EffectSequence,
    EffectSymbol,
    PairSetSequence,
    merge_sequences,
    merge_symbols,
    obs_leq,
    star_prepend,
)
from .reactivity import separating_pairs

__all__ = [
    "ObsOrder",
    "obs_order",
    "merge_symbols",
    "merge_sequences",
    "obs_leq",
    "doe",
    "ssp",
    "ssp_seq",
    "ssp_seq_pair",
    "lemma_check",
    "doe_compose",
    "LemmaVerdict",
]

Pair = tuple[str, str]


def _successor_combos(
    sys: SynchronousSystem, q: str, pair: tuple[str, str]
) -> set[Pair]:
    """All (a1-successor, a2-successor) combinations in pair orientation."""
    a1, a2 = pair
    return {
        (r1, r2)
        for r1 in sys.successors(q, a1)
        for r2 in sys.successors(q, a2)
    }


def doe_levels(
    sys: SynchronousSystem, q: str
) -> tuple[list[frozenset], int]:
    """Run-pair level sets of a reactive state, as a lasso.

    Level 0 holds every successor combination of every separating pair
    of q in input declaration order; level i+1 holds all one-step
    synchronized successors.  Returns the level list and the index its
    tail loops back to.
    """
    sys.check_state(q)
    oracle = BisimOracle(sys, sys)
    sep = separating_pairs(sys, q, oracle)
    if not sep.reactive:
        raise NotReactive(f"state {q} of {sys.name} has no separating pair")
    level: set[Pair] = set()
    for pair in sep.pairs:
        level |= _successor_combos(sys, q, pair)
    seen: dict[frozenset, int] = {}
    levels: list[frozenset] = []
    frontier = frozenset(level)
    while frontier not in seen:
        seen[frontier] = len(levels)
        levels.append(frontier)
        frontier = frozenset(
            (r1, r2)
            for (p1, p2) in frontier
            for sym in sys.inputs
            for r1 in sys.successors(p1, sym)
            for r2 in sys.successors(p2, sym)
        )
    return levels, seen[frontier]


def doe(sys: SynchronousSystem, q: str) -> EffectSequence:
    """Sequence of deterministic observable effects of a state.

    Position i is a fixed pair (x1, x2) exactly when every run pair,
    over every separating pair of q taken in input declaration order,
    every successor combination and every input word, shows outputs
    (x1, x2) with x1 != x2 at index i.  Non-reactive states have the
    silent sequence.

    Computed on level sets: the position is an effect iff the output
    pair set of the level is one non-equal singleton.
    """
    try:
        levels, start = doe_levels(sys, q)
    except NotReactive:
        return STAR_FOREVER
    values = [_level_effect(sys, level) for level in levels]
    return EffectSequence(tuple(values[:start]), tuple(values[start:]))


def _level_effect(sys: SynchronousSystem, level: frozenset) -> EffectSymbol:
    outs = {(sys.out(r1), sys.out(r2)) for (r1, r2) in level}
    if len(outs) == 1:
        (x1, x2) = next(iter(outs))
        if x1 != x2:
            return (x1, x2)
    return STAR


def ssp(
    sys_a: SynchronousSystem,
    q1: str,
    sys_b: SynchronousSystem,
    q2: str,
    oracle: Optional[BisimOracle] = None,
) -> tuple[tuple[str, str], ...]:
    """Strongly separating pairs: separating pairs of the union of q1, q2.

    (a1, a2) qualifies when some a1-successor of q1 is non-bisimilar to
    every a2-successor of q2, or the same with the two inputs swapped.
    Evaluated for all states, reactive or not; on a single state this
    coincides with its separating pairs.
    """
    sys_a.require_same_signature(sys_b)
    sys_a.check_state(q1)
    sys_b.check_state(q2)
    if oracle is None:
        oracle = BisimOracle(sys_a, sys_b)
    out = []
    for (a1, a2) in sys_a.inputs.unordered_pairs():
        if _ssp_orientations(sys_a, q1, sys_b, q2, (a1, a2), oracle):
            out.append((a1, a2))
    return tuple(out)


def _ssp_orientations(sys_a, q1, sys_b, q2, pair, oracle) -> list[tuple[str, str]]:
    """Orientations (exists-input, forall-input) under which the pair holds."""
    a1, a2 = pair
    found = []
    for (ae, af) in ((a1, a2), (a2, a1)):
        movers = sys_a.successors(q1, ae)
        blockers = sys_b.successors(q2, af)
        if any(all(oracle.distinct(x, y) for y in blockers) for x in movers):
            found.append((ae, af))
    return found


@dataclass(frozen=True)
class LemmaVerdict:
    """Outcome of the sequential-composition reactivity check."""

    guaranteed: bool
    index: Optional[int] = None

    @property
    def label(self) -> str:
        return "GuaranteedReactive" if self.guaranteed else "NoGuarantee"


@dataclass(frozen=True)
class ObsOrder:
    """The observational order of a state, held intensionally.

    The interval between the silent sequence and the state's DOE is
    uncountable as a set of infinite sequences, so it is represented by
    its greatest element plus a membership test: a sequence belongs iff
    each position is silent or equals the greatest element there.
    """

    greatest: EffectSequence

    def __contains__(self, candidate: EffectSequence) -> bool:
        return obs_leq(candidate, self.greatest)

    @property
    def least(self) -> EffectSequence:
        return STAR_FOREVER


def obs_order(sys: SynchronousSystem, q: str) -> ObsOrder:
    return ObsOrder(doe(sys, q))


class _PairSpace:
    """Orientation-following successor relation over cross-state pairs.

    Pairs hold one state of each system (the same system twice for the
    single-state queries).  Successors of a pair follow every
    orientation under which one of its strongly separating pairs holds;
    the intersection of SSP over the n-step frontier is the n-th level
    of the SSPseq greatest fixpoint.
    """

    def __init__(self, sys_a: SynchronousSystem, sys_b: SynchronousSystem):
        sys_a.require_same_signature(sys_b)
        self.sys_a = sys_a
        self.sys_b = sys_b
        self.oracle = BisimOracle(sys_a, sys_b)
        self.full = frozenset(sys_a.inputs.unordered_pairs())
        self._ssp_cache: dict[Pair, tuple] = {}
        self._succ_cache: dict[Pair, frozenset] = {}

    def ssp_of(self, pair: Pair) -> tuple:
        if pair not in self._ssp_cache:
            q1, q2 = pair
            out = []
            orientations = {}
            for cand in self.sys_a.inputs.unordered_pairs():
                held = self._orientations(q1, q2, cand)
                if held:
                    out.append(cand)
                    orientations[cand] = held
            self._ssp_cache[pair] = (tuple(out), orientations)
        return self._ssp_cache[pair]

    def _orientations(self, q1, q2, pair):
        a1, a2 = pair
        found = []
        for (ae, af) in ((a1, a2), (a2, a1)):
            movers = self.sys_a.successors(q1, ae)
            blockers = self.sys_b.successors(q2, af)
            if any(
                all(self.oracle.distinct(x, y) for y in blockers) for x in movers
            ):
                found.append((ae, af))
        return found

    def successors(self, pair: Pair) -> frozenset:
        if pair not in self._succ_cache:
            q1, q2 = pair
            _, orientations = self.ssp_of(pair)
            succ = set()
            for held in orientations.values():
                for (ae, af) in held:
                    for r1 in self.sys_a.successors(q1, ae):
                        for r2 in self.sys_b.successors(q2, af):
                            succ.add((r1, r2))
            self._succ_cache[pair] = frozenset(succ)
        return self._succ_cache[pair]

    def level_value(self, frontier: frozenset) -> frozenset:
        """Intersection of SSP over the frontier; full set when empty."""
        value = set(self.full)
        for pair in frontier:
            value &= set(self.ssp_of(pair)[0])
            if not value:
                break
        return frozenset(value)

    def sequence_from(self, frontier: frozenset) -> PairSetSequence:
        seen: dict[frozenset, int] = {}
        values: list[frozenset] = []
        while frontier not in seen:
            seen[frontier] = len(values)
            values.append(self.level_value(frontier))
            frontier = frozenset(
                succ for pair in frontier for succ in self.successors(pair)
            )
        start = seen[frontier]
        return PairSetSequence(tuple(values[:start]), tuple(values[start:]))


def ssp_seq(sys: SynchronousSystem, q: str) -> PairSetSequence:
    """Level-indexed strongly separating pairs of one reactive state.

    Level 0 is the state's separating pairs; level n+1 intersects the
    SSP of every pair reached by following separating-pair orientations
    for n+1 steps.  Computed as the greatest fixpoint over the finite
    pair space, extracted as a lasso.
    """
    sys.check_state(q)
    space = _PairSpace(sys, sys)
    if not ssp(sys, q, sys, q, space.oracle):
        raise NotReactive(f"state {q} of {sys.name} has no separating pair")
    return space.sequence_from(frozenset({(q, q)}))


def ssp_seq_pair(
    sys_a: SynchronousSystem, q1: str, sys_b: SynchronousSystem, q2: str
) -> PairSetSequence:
    """SSPseq of a cross pair; both states must be reactive."""
    sys_a.check_state(q1)
    sys_b.check_state(q2)
    if not reactive_state(sys_a, q1):
        raise NotReactive(f"state {q1} of {sys_a.name} is not reactive")
    if not reactive_state(sys_b, q2):
        raise NotReactive(f"state {q2} of {sys_b.name} is not reactive")
    space = _PairSpace(sys_a, sys_b)
    return space.sequence_from(frozenset({(q1, q2)}))


def reactive_state(sys: SynchronousSystem, q: str) -> bool:
    return separating_pairs(sys, q).reactive


def _receiver_pairs_at(
    sys_f: SynchronousSystem,
    q_f: str,
    sys_g: SynchronousSystem,
    q_g: str,
    levels: list[frozenset],
    loop: int,
    depth: int,
) -> set[Pair]:
    """Receiver state pairs reachable while tracking the two sender runs.

    Both receiver copies first consume the sender's current output, then
    at step j+2 the output pair of some sender level-j run pair.  The
    per-level output-pair sets over-approximate the feeds, so the result
    covers every synchronized composite run pair.
    """
    first = sys_f.out(q_f)
    pairs = {
        (g1, g2)
        for g1 in sys_g.successors(q_g, first)
        for g2 in sys_g.successors(q_g, first)
    }
    for j in range(depth):
        level = levels[j] if j < len(levels) else levels[loop + (j - loop) % (len(levels) - loop)]
        feeds = {(sys_f.out(r1), sys_f.out(r2)) for (r1, r2) in level}
        pairs = {
            (t1, t2)
            for (r1, r2) in pairs
            for (y1, y2) in feeds
            for t1 in sys_g.successors(r1, y1)
            for t2 in sys_g.successors(r2, y2)
        }
    return pairs


def lemma_check(
    sys_f: SynchronousSystem,
    q_f: str,
    sys_g: SynchronousSystem,
    q_g: str,
) -> LemmaVerdict:
    """Reactivity guarantee for a sequential-composition state pair.

    Guaranteed when the sender's deterministic observable effect at some
    index i is a strongly separating pair of the receiver at level i+1,
    and consuming that effect forces an immediate receiver output
    difference on every receiver pair actually reachable alongside the
    two sender runs.  The second condition makes positive verdicts imply
    composite reactivity outright: every synchronized run pair of the
    composite successors then differs at output index i+2, whatever the
    inputs.  The membership test alone follows separating-pair
    trajectories and can diverge from the diagonal paths a composition
    actually drives the receiver along.

    The existential over all weakenings of the sender's DOE reduces to
    its non-silent positions, since a weakening only erases positions.
    Returns the least witness index i.
    """
    if not sys_f.outputs.same_symbols(sys_g.inputs):
        raise SignatureMismatch(
            f"outputs of {sys_f.name} do not match inputs of {sys_g.name}"
        )
    sys_f.check_state(q_f)
    sys_g.check_state(q_g)
    if not reactive_state(sys_f, q_f) or not reactive_state(sys_g, q_g):
        return LemmaVerdict(False)
    d = doe(sys_f, q_f)
    s = ssp_seq(sys_g, q_g)
    levels, loop = doe_levels(sys_f, q_f)
    window = max(len(d.prefix), len(s.prefix) + 1) + lcm(len(d.cycle), len(s.cycle))
    for i in range(window):
        value = d[i]
        if value is STAR:
            continue
        if sys_g.inputs.canonical_pair(*value) not in s[i + 1]:
            continue
        receiver_pairs = _receiver_pairs_at(sys_f, q_f, sys_g, q_g, levels, loop, i)
        x1, x2 = value
        forced = all(
            sys_g.out(t1) != sys_g.out(t2)
            for (r1, r2) in receiver_pairs
            for t1 in sys_g.successors(r1, x1)
            for t2 in sys_g.successors(r2, x2)
        )
        if forced:
            return LemmaVerdict(True, i)
    return LemmaVerdict(False)


def doe_compose(
    sys_f: SynchronousSystem,
    q_f: str,
    sys_g: SynchronousSystem,
    q_g: str,
    t: int,
) -> EffectSequence:
    """Composite observable-effect under-approximation at witness index t.

    Requires the sender's effect at t to be a strongly separating pair
    of the receiver at level t+1.  The result delays t+1 ticks and then
    merges the receiver DOE of every state reachable in exactly t+1
    composite steps; the leading silent tick is the communication delay
    of the synchronous model.
    """
    if not sys_f.outputs.same_symbols(sys_g.inputs):
        raise SignatureMismatch(
            f"outputs of {sys_f.name} do not match inputs of {sys_g.name}"
        )
    sys_f.check_state(q_f)
    sys_g.check_state(q_g)
    if t < 0:
        raise PreconditionFailed("witness index must be nonnegative")
    if not reactive_state(sys_f, q_f) or not reactive_state(sys_g, q_g):
        raise PreconditionFailed("both composed states must be reactive")
    d = doe(sys_f, q_f)
    s = ssp_seq(sys_g, q_g)
    value = d[t]
    if value is STAR or sys_g.inputs.canonical_pair(*value) not in s[t + 1]:
        raise PreconditionFailed(
            f"effect at index {t} is not a strongly separating pair at level {t + 1}"
        )
    # Composite frontier after exactly t+1 steps from (q_f, q_g).
    frontier = {(q_f, q_g)}
    for _ in range(t + 1):
        frontier = {
            (qf2, qg2)
            for (qf, qg) in frontier
            for sym in sys_f.inputs
            for qf2 in sys_f.successors(qf, sym)
            for qg2 in sys_g.successors(qg, sys_f.out(qf))
        }
    receivers = sorted({qg for (_, qg) in frontier})
    merged = merge_sequences([doe(sys_g, g) for g in receivers])
    return star_prepend(t + 1, merged)
