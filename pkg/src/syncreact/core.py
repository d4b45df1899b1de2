"""Finite synchronous systems: Moore-style labeled transition systems.

A system pairs every state with an output symbol and is required to be
complete (every state has at least one successor per input symbol) and
finitely branching.  All analysis in the sibling modules runs over the
immutable :class:`SynchronousSystem` defined here, together with runs,
output languages, the bisimulation quotient, and constructive
non-bisimilarity witnesses.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .errors import NotAProductSymbol, SignatureMismatch, UnknownState, UnknownSymbol

# Tokens are whitespace-free and may not contain the comment or lasso
# separator characters of the textual formats.
_TOKEN_RE = re.compile(r"[^\s#|]+$")


def is_token(text: str) -> bool:
    return bool(text) and bool(_TOKEN_RE.match(text))


def symbol_components(symbol: str) -> tuple[str, ...]:
    """Components of a (possibly product) symbol, split at every comma."""
    return tuple(symbol.split(","))


def symbol_arity(symbol: str) -> int:
    return len(symbol_components(symbol))


def pair_symbol(left: str, right: str) -> str:
    """Product symbol, textual form ``left,right`` with no spaces."""
    if not (is_token(left) and is_token(right)):
        raise UnknownSymbol(f"cannot pair non-token symbols {left!r}, {right!r}")
    return f"{left},{right}"


def split_symbol(symbol: str) -> tuple[str, str]:
    """Invert :func:`pair_symbol` by splitting at the last top-level comma.

    Only symbols whose right factor is atomic round-trip; the product
    monoid is used left-nested throughout this package.
    """
    if "," not in symbol:
        raise NotAProductSymbol(f"{symbol!r} has no product structure")
    left, _, right = symbol.rpartition(",")
    return left, right


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of symbols; iteration follows declaration order."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise UnknownSymbol("alphabet must be nonempty")
        seen = set()
        for s in self.symbols:
            if not is_token(s):
                raise UnknownSymbol(f"bad symbol token {s!r}")
            if s in seen:
                raise UnknownSymbol(f"duplicate symbol {s!r}")
            seen.add(s)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise UnknownSymbol(f"symbol {symbol!r} not in alphabet") from None

    def same_symbols(self, other: "Alphabet") -> bool:
        """Set equality; declaration order is irrelevant for signatures."""
        return set(self.symbols) == set(other.symbols)

    def canonical_pair(self, a: str, b: str) -> tuple[str, str]:
        """Unordered symbol pair in declaration order."""
        return (a, b) if self.index(a) <= self.index(b) else (b, a)

    def unordered_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(itertools.combinations(self.symbols, 2))


Transition = tuple[str, str, str]


@dataclass
class SynchronousSystem:
    """Complete, finitely-branching Moore-style LTS.

    Immutable after construction; every operation in this package is a
    pure query, so instances can be shared freely across threads.
    """

    name: str
    inputs: Alphabet
    outputs: Alphabet
    states: tuple[str, ...]
    transitions: tuple[Transition, ...]
    out_label: Mapping[str, str]
    initial: str
    _succ: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_token(self.name):
            raise UnknownSymbol(f"bad system name {self.name!r}")
        index = {}
        for q in self.states:
            if not is_token(q):
                raise UnknownState(f"bad state token {q!r}")
            if q in index:
                raise UnknownState(f"duplicate state {q!r}")
            index[q] = len(index)
        for (src, sym, dst) in self.transitions:
            if src not in index:
                raise UnknownState(f"transition from undeclared state {src!r}")
            if dst not in index:
                raise UnknownState(f"transition to undeclared state {dst!r}")
            if sym not in self.inputs:
                raise UnknownSymbol(f"transition on undeclared input {sym!r}")
        for q in self.states:
            if q not in self.out_label:
                raise UnknownState(f"state {q!r} has no output label")
            if self.out_label[q] not in self.outputs:
                raise UnknownSymbol(
                    f"state {q!r} labeled with undeclared output {self.out_label[q]!r}"
                )
        if self.initial not in index:
            raise UnknownState(f"initial state {self.initial!r} not declared")
        succ: dict[tuple[str, str], list[str]] = {}
        for (src, sym, dst) in self.transitions:
            succ.setdefault((src, sym), [])
            if dst not in succ[(src, sym)]:
                succ[(src, sym)].append(dst)
        self._succ = {k: tuple(v) for k, v in succ.items()}

    def check_state(self, q: str) -> None:
        if q not in self.out_label:
            raise UnknownState(f"unknown state {q!r} in system {self.name}")

    def check_word(self, word: Sequence[str]) -> None:
        for sym in word:
            if sym not in self.inputs:
                raise UnknownSymbol(f"unknown input symbol {sym!r} in system {self.name}")

    def successors(self, q: str, sym: str) -> tuple[str, ...]:
        """Targets of ``q`` under ``sym`` in transition declaration order."""
        self.check_state(q)
        if sym not in self.inputs:
            raise UnknownSymbol(f"unknown input symbol {sym!r} in system {self.name}")
        return self._succ.get((q, sym), ())

    def out(self, q: str) -> str:
        self.check_state(q)
        return self.out_label[q]

    def is_deterministic(self) -> bool:
        """Derived predicate: at most one successor per (state, input)."""
        return all(len(v) <= 1 for v in self._succ.values())

    def same_signature(self, other: "SynchronousSystem") -> bool:
        return self.inputs.same_symbols(other.inputs) and self.outputs.same_symbols(
            other.outputs
        )

    def require_same_signature(self, other: "SynchronousSystem") -> None:
        if not self.same_signature(other):
            raise SignatureMismatch(
                f"systems {self.name} and {other.name} have different signatures"
            )


def validate(sys: SynchronousSystem) -> list[str]:
    """Invariant report; empty list means the system is valid.

    Referential integrity is enforced at construction time, so the
    remaining checkable invariant is completeness.  Violations are data,
    not exceptions.
    """
    report = []
    for q in sys.states:
        for sym in sys.inputs:
            if not sys.successors(q, sym):
                report.append(f"incomplete: state {q} has no transition on input {sym}")
    return report


@dataclass(frozen=True)
class Run:
    """A finite maximal run: a start state plus one (input, state) step per symbol."""

    start: str
    steps: tuple[tuple[str, str], ...]

    def states(self) -> tuple[str, ...]:
        return (self.start,) + tuple(q for (_, q) in self.steps)

    def word(self) -> tuple[str, ...]:
        return tuple(a for (a, _) in self.steps)


def runs(sys: SynchronousSystem, q0: str, word: Sequence[str]) -> list[Run]:
    """All runs of ``sys`` on ``word`` from ``q0``, in deterministic order.

    Nonempty for valid systems by completeness; each run has exactly
    ``len(word)`` steps.
    """
    sys.check_state(q0)
    sys.check_word(word)
    frontier: list[tuple[str, tuple[tuple[str, str], ...]]] = [(q0, ())]
    for sym in word:
        next_frontier = []
        for (q, steps) in frontier:
            for target in sys.successors(q, sym):
                next_frontier.append((target, steps + ((sym, target),)))
        frontier = next_frontier
    return [Run(q0, steps) for (_, steps) in frontier]


def run_outputs(sys: SynchronousSystem, run: Run) -> tuple[str, ...]:
    """Outputs of every visited state, len(word)+1 symbols including the last."""
    return tuple(sys.out(q) for q in run.states())


def output_language(
    sys: SynchronousSystem, q0: str, word: Sequence[str]
) -> list[tuple[str, ...]]:
    """Output words of all runs on ``word``, sorted and deduplicated.

    Each output word has exactly ``len(word)`` symbols, starting at
    ``out(q0)``; the final state's output is not emitted.  This is the
    literal indexing of the defining equation (see the package notes on
    its off-by-one reading); separator analysis uses the inclusive
    variant :func:`run_outputs` instead.
    """
    words = {run_outputs(sys, r)[: len(word)] for r in runs(sys, q0, word)}
    return sorted(words)


@dataclass(frozen=True)
class Partition:
    """Bisimulation partition: total map from states onto class indices."""

    class_of: Mapping[str, int]
    classes: tuple[int, ...]
    representative: Mapping[int, str]

    def same_class(self, p: str, q: str) -> bool:
        return self.class_of[p] == self.class_of[q]


def _refine(sys: SynchronousSystem, class_of: dict[str, int]) -> dict[str, int]:
    """One Kanellakis-Smolka refinement round on successor-class signatures."""
    signatures = {}
    for q in sys.states:
        sig = (
            class_of[q],
            tuple(
                frozenset(class_of[t] for t in sys.successors(q, sym))
                for sym in sys.inputs
            ),
        )
        signatures[q] = sig
    order: dict = {}
    new_class = {}
    for q in sys.states:
        sig = signatures[q]
        if sig not in order:
            order[sig] = len(order)
        new_class[q] = order[sig]
    return new_class


def bisim_classes(sys: SynchronousSystem) -> Partition:
    """Coarsest partition refining output equality and stable under steps."""
    class_of = {}
    order: dict[str, int] = {}
    for q in sys.states:
        o = sys.out(q)
        if o not in order:
            order[o] = len(order)
        class_of[q] = order[o]
    while True:
        refined = _refine(sys, class_of)
        if len(set(refined.values())) == len(set(class_of.values())):
            class_of = refined
            break
        class_of = refined
    # Renumber classes by their lowest-ordered member state.
    reps: dict[int, str] = {}
    for q in sys.states:
        reps.setdefault(class_of[q], q)
    ordered = sorted(reps, key=lambda c: sys.states.index(reps[c]))
    renumber = {old: new for new, old in enumerate(ordered)}
    class_of = {q: renumber[c] for q, c in class_of.items()}
    classes = tuple(range(len(ordered)))
    representative = {renumber[c]: reps[c] for c in ordered}
    return Partition(class_of, classes, representative)


def bisim_quotient(
    sys: SynchronousSystem,
) -> tuple[Partition, SynchronousSystem]:
    """Quotient by bisimilarity; quotient states are class representatives."""
    partition = bisim_classes(sys)
    rep_of = {q: partition.representative[partition.class_of[q]] for q in sys.states}
    states = tuple(
        partition.representative[c] for c in partition.classes
    )
    transitions = []
    seen = set()
    for (src, sym, dst) in sys.transitions:
        t = (rep_of[src], sym, rep_of[dst])
        if t not in seen:
            seen.add(t)
            transitions.append(t)
    quotient = SynchronousSystem(
        name=f"{sys.name}_q",
        inputs=sys.inputs,
        outputs=sys.outputs,
        states=states,
        transitions=tuple(transitions),
        out_label={q: sys.out(q) for q in states},
        initial=rep_of[sys.initial],
    )
    return partition, quotient


def disjoint_union(
    sys_a: SynchronousSystem, sys_b: SynchronousSystem
) -> tuple[SynchronousSystem, str, str]:
    """Disjoint union with ``A.``/``B.`` prefixed state names.

    Returns the union plus the two prefixes; requires equal signatures.
    Cross-system analyses run on this union so that states of distinct
    systems can be compared directly.
    """
    sys_a.require_same_signature(sys_b)
    states = tuple(f"A.{q}" for q in sys_a.states) + tuple(
        f"B.{q}" for q in sys_b.states
    )
    transitions = tuple(
        (f"A.{s}", a, f"A.{t}") for (s, a, t) in sys_a.transitions
    ) + tuple((f"B.{s}", a, f"B.{t}") for (s, a, t) in sys_b.transitions)
    out_label = {f"A.{q}": sys_a.out(q) for q in sys_a.states}
    out_label.update({f"B.{q}": sys_b.out(q) for q in sys_b.states})
    union = SynchronousSystem(
        name=f"{sys_a.name}+{sys_b.name}",
        inputs=sys_a.inputs,
        outputs=sys_a.outputs,
        states=states,
        transitions=transitions,
        out_label=out_label,
        initial=f"A.{sys_a.initial}",
    )
    return union, "A.", "B."


class BisimOracle:
    """Non-bisimilarity queries between two (possibly identical) systems.

    Builds the disjoint union once and reuses its partition and
    separation depths for every query.
    """

    def __init__(self, sys_a: SynchronousSystem, sys_b: SynchronousSystem):
        self.sys_a = sys_a
        self.sys_b = sys_b
        if sys_a is sys_b:
            self.union = sys_a
            self.pa = self.pb = ""
        else:
            self.union, self.pa, self.pb = disjoint_union(sys_a, sys_b)
        self.partition = bisim_classes(self.union)
        self._depths: Optional[dict[tuple[str, str], int]] = None

    def distinct(self, qa: str, qb: str) -> bool:
        """True iff the two states are non-bisimilar."""
        return not self.partition.same_class(self.pa + qa, self.pb + qb)

    def _separation_depths(self) -> dict[tuple[str, str], int]:
        """Least approximant level separating each union state pair."""
        if self._depths is not None:
            return self._depths
        u = self.union
        depth: dict[tuple[str, str], int] = {}
        for p, q in itertools.product(u.states, repeat=2):
            if u.out(p) != u.out(q):
                depth[(p, q)] = 0
        level = 0
        changed = True
        while changed:
            changed = False
            level += 1
            for p, q in itertools.product(u.states, repeat=2):
                if (p, q) in depth:
                    continue
                if self._separated_below(u, depth, p, q, level):
                    depth[(p, q)] = level
                    changed = True
        self._depths = depth
        return depth

    @staticmethod
    def _separated_below(u, depth, p, q, level) -> bool:
        for sym in u.inputs:
            ps = u.successors(p, sym)
            qs = u.successors(q, sym)
            if any(
                all(depth.get((p2, q2), level) < level for q2 in qs) for p2 in ps
            ):
                return True
            if any(
                all(depth.get((p2, q2), level) < level for p2 in ps) for q2 in qs
            ):
                return True
        return False

    def depth(self, qa: str, qb: str) -> Optional[int]:
        """Least k at which the k-step approximants separate, None if bisimilar."""
        if not self.distinct(qa, qb):
            return None
        return self._separation_depths()[(self.pa + qa, self.pb + qb)]


@dataclass(frozen=True)
class BaseWitness:
    """Output mismatch: out(p) != out(q)."""

    p: str
    q: str
    out_p: str
    out_q: str

    @property
    def depth(self) -> int:
        return 0


@dataclass(frozen=True)
class IndWitness:
    """One inductive layer of a non-bisimilarity proof.

    ``side`` is 'left' when the existential player moves from p, 'right'
    when it moves from q.  ``children`` maps every opposing successor to
    a witness separating it from ``chosen``.
    """

    p: str
    q: str
    input: str
    side: str
    chosen: str
    children: tuple[tuple[str, Union["BaseWitness", "IndWitness"]], ...]

    @property
    def depth(self) -> int:
        return 1 + max(w.depth for (_, w) in self.children)


NonBisimWitness = Union[BaseWitness, IndWitness]


def non_bisimilar(
    sys_a: SynchronousSystem,
    qa: str,
    sys_b: SynchronousSystem,
    qb: str,
    oracle: Optional[BisimOracle] = None,
) -> Optional[NonBisimWitness]:
    """Minimal-depth witness that qa and qb are non-bisimilar, or None.

    The witness depth equals the least k at which the k-step
    bisimulation approximants separate the states.  A precomputed oracle
    for the same system pair may be passed to amortize repeated queries.
    """
    sys_a.check_state(qa)
    sys_b.check_state(qb)
    if oracle is None:
        oracle = BisimOracle(sys_a, sys_b)
    if not oracle.distinct(qa, qb):
        return None
    u = oracle.union
    depths = oracle._separation_depths()

    def build(p: str, q: str) -> NonBisimWitness:
        k = depths[(p, q)]
        if k == 0:
            return BaseWitness(p, q, u.out(p), u.out(q))
        for sym in u.inputs:
            ps = u.successors(p, sym)
            qs = u.successors(q, sym)
            for p2 in ps:
                if all(depths.get((p2, q2), k) <= k - 1 for q2 in qs):
                    children = tuple((q2, build(p2, q2)) for q2 in qs)
                    return IndWitness(p, q, sym, "left", p2, children)
            for q2 in qs:
                if all(depths.get((p2, q2), k) <= k - 1 for p2 in ps):
                    children = tuple((p2, build(p2, q2)) for p2 in ps)
                    return IndWitness(p, q, sym, "right", q2, children)
        raise AssertionError("separation depth table is inconsistent")

    return build(oracle.pa + qa, oracle.pb + qb)


def replay_witness(
    union: SynchronousSystem, witness: NonBisimWitness
) -> bool:
    """Re-derive p != q by replaying the witness against the union system."""
    if isinstance(witness, BaseWitness):
        return (
            union.out(witness.p) == witness.out_p
            and union.out(witness.q) == witness.out_q
            and witness.out_p != witness.out_q
        )
    if witness.side == "left":
        movers = union.successors(witness.p, witness.input)
        opponents = union.successors(witness.q, witness.input)
    else:
        movers = union.successors(witness.q, witness.input)
        opponents = union.successors(witness.p, witness.input)
    if witness.chosen not in movers:
        return False
    covered = {s for (s, _) in witness.children}
    if covered != set(opponents):
        return False
    return all(replay_witness(union, w) for (_, w) in witness.children)
