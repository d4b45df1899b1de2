"""Separating pairs, separators, observable effects, and reaction time.

Everything here runs on synchronized pair graphs: the product of two
state spaces stepping on one shared input per tick.  Nodes are
classified EQ when both components emit the same output and DIFF
otherwise.  Quantifications over infinite input words are discharged by
graph arguments: completeness and finite branching make the set of
run-pair paths a finitely-branching tree, so an infinite all-EQ path
exists iff the EQ-reachable subgraph has a cycle, and worst-case first
difference indices are longest paths in the acyclic case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import BisimOracle, SynchronousSystem
from .lasso import STAR

Pair = tuple[str, str]

EQ = "EQ"
DIFF = "DIFF"


@dataclass
class PairGraph:
    """Synchronized product of two state spaces from an origin pair."""

    sys_a: SynchronousSystem
    sys_b: SynchronousSystem
    origin: Pair
    nodes: tuple[Pair, ...] = field(init=False)
    edges: tuple[tuple[Pair, str, Pair], ...] = field(init=False)
    classification: dict = field(init=False)

    def __post_init__(self):
        self.sys_a.require_same_signature(self.sys_b)
        self.sys_a.check_state(self.origin[0])
        self.sys_b.check_state(self.origin[1])
        nodes: list[Pair] = [self.origin]
        seen = {self.origin}
        edges = []
        frontier = [self.origin]
        while frontier:
            next_frontier = []
            for (p, q) in frontier:
                for sym in self.sys_a.inputs:
                    for p2 in self.sys_a.successors(p, sym):
                        for q2 in self.sys_b.successors(q, sym):
                            edges.append(((p, q), sym, (p2, q2)))
                            if (p2, q2) not in seen:
                                seen.add((p2, q2))
                                nodes.append((p2, q2))
                                next_frontier.append((p2, q2))
            frontier = next_frontier
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.classification = {
            (p, q): EQ if self.sys_a.out(p) == self.sys_b.out(q) else DIFF
            for (p, q) in nodes
        }

    def successors(self, node: Pair, sym: str) -> list[Pair]:
        p, q = node
        return [
            (p2, q2)
            for p2 in self.sys_a.successors(p, sym)
            for q2 in self.sys_b.successors(q, sym)
        ]

    def is_eq(self, node: Pair) -> bool:
        return self.classification[node] == EQ


@dataclass(frozen=True)
class SepPairSet:
    """Separating input pairs of one state, unordered, alphabet ordered."""

    pairs: tuple[tuple[str, str], ...]
    deterministic_subset: tuple[tuple[str, str], ...]

    @property
    def reactive(self) -> bool:
        return bool(self.pairs)


def separating_pairs(
    sys: SynchronousSystem, q: str, oracle: Optional[BisimOracle] = None
) -> SepPairSet:
    """Separating pairs of q: inputs whose successors are non-bisimilar.

    (a1, a2) is separating iff some a1-successor is non-bisimilar to
    every a2-successor, or symmetrically.  It is deterministic iff every
    a1-successor is non-bisimilar to every a2-successor.  Pairs are
    reported with symbols in input declaration order.
    """
    sys.check_state(q)
    if oracle is None:
        oracle = BisimOracle(sys, sys)
    pairs = []
    deterministic = []
    for (a1, a2) in sys.inputs.unordered_pairs():
        s1 = sys.successors(q, a1)
        s2 = sys.successors(q, a2)
        forward = any(all(oracle.distinct(x, y) for y in s2) for x in s1)
        backward = any(all(oracle.distinct(x, y) for x in s1) for y in s2)
        if forward or backward:
            pairs.append((a1, a2))
            if all(oracle.distinct(x, y) for x in s1 for y in s2):
                deterministic.append((a1, a2))
    return SepPairSet(tuple(pairs), tuple(deterministic))


def reactive(sys: SynchronousSystem, q: str, oracle: Optional[BisimOracle] = None) -> bool:
    return separating_pairs(sys, q, oracle).reactive


def separator_pair_orientations(
    sys: SynchronousSystem, q: str, pair: tuple[str, str], oracle: BisimOracle
) -> list[tuple[str, str]]:
    """Orientations (a_exists, a_forall) under which the pair separates q."""
    a1, a2 = pair
    out = []
    s1 = sys.successors(q, a1)
    s2 = sys.successors(q, a2)
    if any(all(oracle.distinct(x, y) for y in s2) for x in s1):
        out.append((a1, a2))
    if any(all(oracle.distinct(x, y) for x in s1) for y in s2):
        out.append((a2, a1))
    return out


def separators(
    sys_a: SynchronousSystem,
    p: str,
    sys_b: SynchronousSystem,
    q: str,
    max_len: int,
) -> list[tuple[tuple[str, ...], bool]]:
    """Minimal separators of (p, q) up to max_len, each flagged deterministic.

    A word separates when some pair of synchronized runs on it emits
    different output words (outputs of all visited states, including the
    last); it is deterministic when every pair of runs does.  Words
    extending a deterministic separator are pruned: they carry no new
    information because every extension still separates.
    """
    graph = PairGraph(sys_a, sys_b, (p, q))
    results: list[tuple[tuple[str, ...], bool]] = []
    # Frontier state per candidate word: nodes reached along all-EQ
    # paths and nodes reached along paths that already saw a DIFF node.
    root = graph.origin
    if graph.is_eq(root):
        start = (frozenset({root}), frozenset())
    else:
        start = (frozenset(), frozenset({root}))
    frontier: list[tuple[tuple[str, ...], frozenset, frozenset]] = [
        ((), start[0], start[1])
    ]
    if start[1]:
        # The empty word already separates: output at index 0 differs.
        results.append(((), True))
        return results
    for _ in range(max_len):
        next_frontier = []
        for (word, eq_nodes, diff_nodes) in frontier:
            for sym in sys_a.inputs:
                new_eq = set()
                new_diff = set()
                for node in eq_nodes:
                    for succ in graph.successors(node, sym):
                        (new_eq if graph.is_eq(succ) else new_diff).add(succ)
                for node in diff_nodes:
                    for succ in graph.successors(node, sym):
                        new_diff.add(succ)
                new_word = word + (sym,)
                is_separator = bool(new_diff)
                is_deterministic = is_separator and not new_eq
                if is_separator:
                    results.append((new_word, is_deterministic))
                if not is_deterministic:
                    next_frontier.append((new_word, frozenset(new_eq), frozenset(new_diff)))
        frontier = next_frontier
    return results


@dataclass(frozen=True)
class StrongSepResult:
    """Verdict plus certificate for strong separability of a state pair.

    When separable, ``bound`` is the length of the longest run pair that
    has not yet differed, so every input word of that length plus one is
    a deterministic separator.  When not separable, ``cycle`` is a lasso
    of EQ nodes witnessing an infinite input word with no difference.
    """

    separable: bool
    bound: Optional[int] = None
    cycle: Optional[tuple[tuple[Pair, str], ...]] = None


def strongly_separable(
    sys_a: SynchronousSystem, p: str, sys_b: SynchronousSystem, q: str
) -> StrongSepResult:
    """True iff every infinite input word has a deterministic separator prefix.

    On finite complete systems this reduces to acyclicity of the
    EQ-classified subgraph reachable from (p, q) through EQ nodes.
    """
    graph = PairGraph(sys_a, sys_b, (p, q))
    root = graph.origin
    if not graph.is_eq(root):
        return StrongSepResult(True, bound=0)
    # Restrict to EQ nodes reachable through EQ nodes only.
    eq_succ: dict[Pair, list[tuple[str, Pair]]] = {}
    stack = [root]
    reach = {root}
    while stack:
        node = stack.pop()
        succs = []
        for sym in sys_a.inputs:
            for t in graph.successors(node, sym):
                if graph.is_eq(t):
                    succs.append((sym, t))
                    if t not in reach:
                        reach.add(t)
                        stack.append(t)
        eq_succ[node] = succs
    cycle = _find_cycle(root, eq_succ)
    if cycle is not None:
        return StrongSepResult(False, cycle=cycle)
    return StrongSepResult(True, bound=_longest_path(root, eq_succ))


def _find_cycle(root, eq_succ):
    """Iterative DFS cycle search; returns the lasso edge list if found."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {node: 0 for node in eq_succ}
    path: list[tuple] = []
    stack: list[tuple] = [("enter", root, None)]
    while stack:
        action, node, via = stack.pop()
        if action == "exit":
            color[node] = BLACK
            path.pop()
            continue
        if color[node] == BLACK:
            continue
        if color[node] == GRAY:
            continue
        color[node] = GRAY
        path.append((node, via))
        stack.append(("exit", node, None))
        for (sym, t) in eq_succ[node]:
            if color[t] == GRAY:
                # Found a back edge: slice the cycle out of the path.
                nodes_on_path = [n for (n, _) in path]
                start = nodes_on_path.index(t)
                cycle = []
                for i in range(start, len(path) - 1):
                    cycle.append((path[i][0], path[i + 1][1]))
                cycle.append((node, sym))
                return tuple(cycle)
            if color[t] == WHITE:
                stack.append(("enter", t, sym))
    return None


def _longest_path(root, eq_succ) -> int:
    """Longest edge count from root in the acyclic EQ subgraph."""
    memo: dict = {}

    def depth(node) -> int:
        if node in memo:
            return memo[node]
        best = 0
        for (_, t) in eq_succ[node]:
            best = max(best, 1 + depth(t))
        memo[node] = best
        return best

    # Postorder guarantees children are memoized before their parents.
    for node in _topological(root, eq_succ):
        depth(node)
    return depth(root)


def _longest_path_witness(root, eq_succ) -> tuple[str, ...]:
    """Input word spelled by one longest all-EQ path from root."""
    memo: dict = {}

    def depth(node) -> int:
        if node in memo:
            return memo[node]
        best = 0
        for (_, t) in eq_succ[node]:
            best = max(best, 1 + depth(t))
        memo[node] = best
        return best

    for node in _topological(root, eq_succ):
        depth(node)
    word = []
    node = root
    while memo[node] > 0:
        for (sym, t) in eq_succ[node]:
            if memo[t] == memo[node] - 1:
                word.append(sym)
                node = t
                break
    return tuple(word)


def _topological(root, eq_succ):
    order = []
    seen = set()
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for (_, t) in eq_succ[node]:
            if t not in seen:
                stack.append((t, False))
    return order


def diff(
    sys_a: SynchronousSystem,
    p: str,
    sys_b: SynchronousSystem,
    q: str,
    word: Sequence[str],
) -> list[set]:
    """Observed effect values of (p, q) along a word, one set per index.

    Index n collects, over every synchronized run pair on the first n
    symbols, the ordered output pair at position n when the outputs
    differ, and the silent symbol when some run pair agrees there.
    Indices run from 0 to len(word) inclusive; a singleton non-silent
    set means a guaranteed effect at that index.
    """
    graph = PairGraph(sys_a, sys_b, (p, q))
    sys_a.check_word(word)
    frontier = {graph.origin}
    result = []
    for i in range(len(word) + 1):
        values: set = set()
        for (r1, r2) in frontier:
            o1, o2 = sys_a.out(r1), sys_b.out(r2)
            values.add((o1, o2) if o1 != o2 else STAR)
        result.append(values)
        if i < len(word):
            frontier = {
                succ for node in frontier for succ in graph.successors(node, word[i])
            }
    return result


@dataclass(frozen=True)
class ReactionTime:
    """Finite worst-case first-effect index with a witness word, or infinite."""

    time: Optional[int]
    witness: Optional[tuple[str, ...]] = None

    @property
    def is_finite(self) -> bool:
        return self.time is not None


def det_reaction_time(sys: SynchronousSystem, q: str) -> ReactionTime:
    """Worst-case transitions until the first guaranteed observable effect.

    Infinite when q has no deterministic separating pair, or when some
    successor pair of one fails strong separability.  Otherwise the
    maximum, over deterministic separating pairs, successor combinations
    and infinite words, of the first index at which every run pair has
    differed: one past the longest all-EQ path of each pair graph.  The
    witness spells a longest all-EQ path plus one forcing symbol.
    """
    sys.check_state(q)
    oracle = BisimOracle(sys, sys)
    sep = separating_pairs(sys, q, oracle)
    if not sep.deterministic_subset:
        return ReactionTime(None)
    best_time = -1
    best_witness: tuple[str, ...] = ()
    for (a1, a2) in sep.deterministic_subset:
        for q1 in sys.successors(q, a1):
            for q2 in sys.successors(q, a2):
                verdict = strongly_separable(sys, q1, sys, q2)
                if not verdict.separable:
                    return ReactionTime(None)
                if sys.out(q1) != sys.out(q2):
                    candidate_t, candidate_w = 0, ()
                else:
                    graph = PairGraph(sys, sys, (q1, q2))
                    eq_succ = _eq_subgraph(graph)
                    path_word = _longest_path_witness((q1, q2), eq_succ)
                    candidate_t = len(path_word) + 1
                    candidate_w = path_word + (sys.inputs.symbols[0],)
                if candidate_t > best_time:
                    best_time = candidate_t
                    best_witness = candidate_w
    return ReactionTime(best_time, best_witness)


def _eq_subgraph(graph: PairGraph):
    root = graph.origin
    eq_succ: dict[Pair, list[tuple[str, Pair]]] = {}
    stack = [root]
    reach = {root}
    while stack:
        node = stack.pop()
        succs = []
        for sym in graph.sys_a.inputs:
            for t in graph.successors(node, sym):
                if graph.is_eq(t):
                    succs.append((sym, t))
                    if t not in reach:
                        reach.add(t)
                        stack.append(t)
        eq_succ[node] = succs
    return eq_succ
