"""Independent brute-force oracles and random system generation.

Everything here recomputes results straight from the definitions, with
no shared code paths with the library algorithms it checks: bisimilarity
as a greatest fixpoint over state pairs, separators by exhaustive word
enumeration over run pairs, and reaction time by per-word guaranteed
difference search.
"""

from __future__ import annotations

import itertools
import random

from syncreact.core import (
    Alphabet,
    Run,
    SynchronousSystem,
    disjoint_union,
    run_outputs,
    runs,
)


def naive_bisimilar_pairs(sys: SynchronousSystem) -> set:
    """Greatest fixpoint of the bisimulation condition over state pairs."""
    rel = {
        (p, q)
        for p in sys.states
        for q in sys.states
        if sys.out(p) == sys.out(q)
    }
    while True:
        keep = set()
        for (p, q) in rel:
            ok = True
            for sym in sys.inputs:
                ps = sys.successors(p, sym)
                qs = sys.successors(q, sym)
                if not all(any((p2, q2) in rel for q2 in qs) for p2 in ps):
                    ok = False
                    break
                if not all(any((p2, q2) in rel for p2 in ps) for q2 in qs):
                    ok = False
                    break
            if ok:
                keep.add((p, q))
        if keep == rel:
            return rel
        rel = keep


def naive_non_bisimilar(sys_a, qa, sys_b, qb) -> bool:
    if sys_a is sys_b:
        return (qa, qb) not in naive_bisimilar_pairs(sys_a)
    union, pa, pb = disjoint_union(sys_a, sys_b)
    return (pa + qa, pb + qb) not in naive_bisimilar_pairs(union)


def all_words(alphabet: Alphabet, length: int):
    return itertools.product(alphabet.symbols, repeat=length)


def brute_separators(sys_a, p, sys_b, q, max_len):
    """Separators by exhaustive run-pair enumeration, minimal ones only.

    A word separates iff some pair of runs emits different inclusive
    output words, deterministically iff every pair does.  Words with a
    proper prefix that separates deterministically are dropped.
    """
    found = {}
    for length in range(0, max_len + 1):
        for word in all_words(sys_a.inputs, length):
            outs_a = [run_outputs(sys_a, r) for r in runs(sys_a, p, word)]
            outs_b = [run_outputs(sys_b, r) for r in runs(sys_b, q, word)]
            pairs = [(o1, o2) for o1 in outs_a for o2 in outs_b]
            some_differ = any(o1 != o2 for (o1, o2) in pairs)
            all_differ = all(o1 != o2 for (o1, o2) in pairs)
            if some_differ:
                found[word] = all_differ
    minimal = []
    for word, det in sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])):
        pruned = any(
            found.get(word[:k]) is True for k in range(0, len(word))
        )
        if not pruned:
            minimal.append((word, det))
    return minimal


def guaranteed_diff_index(sys_a, p, sys_b, q, word):
    """Least n such that every pair of runs on word[:n] differs at n."""
    for n in range(len(word) + 1):
        prefix = word[:n]
        finals_a = {r.states()[-1] for r in runs(sys_a, p, prefix)}
        finals_b = {r.states()[-1] for r in runs(sys_b, q, prefix)}
        if all(
            sys_a.out(r1) != sys_b.out(r2)
            for r1 in finals_a
            for r2 in finals_b
        ):
            return n
    return None


def random_system(
    rng: random.Random,
    name: str,
    max_states: int,
    in_syms: tuple[str, ...],
    out_syms: tuple[str, ...],
    nondet_prob: float = 0.2,
) -> SynchronousSystem:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    transitions = []
    for q in states:
        for sym in in_syms:
            targets = {rng.choice(states)}
            while rng.random() < nondet_prob:
                targets.add(rng.choice(states))
            for t in sorted(targets):
                transitions.append((q, sym, t))
    out_label = {q: rng.choice(out_syms) for q in states}
    return SynchronousSystem(
        name=name,
        inputs=Alphabet(in_syms),
        outputs=Alphabet(out_syms),
        states=states,
        transitions=tuple(transitions),
        out_label=out_label,
        initial="s0",
    )


def chain_sender(
    depth: int,
    feed_syms: tuple[str, ...],
    in_syms: tuple[str, ...] = ("a", "b"),
) -> SynchronousSystem:
    """Deterministic sender with one guaranteed effect at a chosen depth.

    Branches once at the root, runs two silent chains of equal outputs,
    then parks in absorbing states with distinct outputs, producing the
    effect (feed_syms[1], feed_syms[2]) at index ``depth`` forever.
    """
    assert len(feed_syms) >= 3
    silent, x1, x2 = feed_syms[0], feed_syms[1], feed_syms[2]
    states = ["r"]
    out_label = {"r": silent}
    transitions = []
    prev = ("r", "r")
    for level in range(depth):
        left, right = f"l{level}", f"m{level}"
        states += [left, right]
        out_label[left] = silent
        out_label[right] = silent
        if level == 0:
            transitions += [("r", in_syms[0], left), ("r", in_syms[1], right)]
        else:
            for sym in in_syms:
                transitions += [(prev[0], sym, left), (prev[1], sym, right)]
        prev = (left, right)
    states += ["endl", "endr"]
    out_label["endl"] = x1
    out_label["endr"] = x2
    if depth == 0:
        transitions += [("r", in_syms[0], "endl"), ("r", in_syms[1], "endr")]
    else:
        for sym in in_syms:
            transitions += [(prev[0], sym, "endl"), (prev[1], sym, "endr")]
    for sym in in_syms:
        transitions += [("endl", sym, "endl"), ("endr", sym, "endr")]
    return SynchronousSystem(
        name=f"chain{depth}",
        inputs=Alphabet(in_syms),
        outputs=Alphabet(feed_syms),
        states=tuple(states),
        transitions=tuple(transitions),
        out_label=out_label,
        initial="r",
    )
