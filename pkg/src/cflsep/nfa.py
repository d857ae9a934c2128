"""Nondeterministic finite automata with epsilon transitions.

States are dense integers local to each automaton; every operation builds a
fresh value, so automata can be shared freely. Labels are terminal names
(arbitrary strings) or ``None`` for epsilon. Determinization only happens
inside complement/difference/equivalent; everything else stays
nondeterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True)
class Nfa:
    num_states: int
    alphabet: tuple[str, ...]
    transitions: frozenset[tuple[int, str | None, int]]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be unique")
        if not (0 <= self.initial < self.num_states):
            raise ValueError("initial state out of range")
        symbols = set(self.alphabet)
        for q, x, r in self.transitions:
            if not (0 <= q < self.num_states and 0 <= r < self.num_states):
                raise ValueError(f"transition endpoint out of range: {(q, x, r)}")
            if x is not None and x not in symbols:
                raise ValueError(f"transition label {x!r} not in alphabet")
        for q in self.accepting:
            if not (0 <= q < self.num_states):
                raise ValueError("accepting state out of range")

    @property
    def states(self) -> range:
        return range(self.num_states)

    def has_epsilon(self) -> bool:
        return any(x is None for _, x, _ in self.transitions)


def _merge_alphabets(*alphabets: Sequence[str]) -> tuple[str, ...]:
    merged: list[str] = []
    seen: set[str] = set()
    for alpha in alphabets:
        for sym in alpha:
            if sym not in seen:
                seen.add(sym)
                merged.append(sym)
    return tuple(merged)


def epsilon_closure(a: Nfa, states: Iterable[int]) -> frozenset[int]:
    closure = set(states)
    frontier = deque(closure)
    eps: dict[int, list[int]] = {}
    for q, x, r in a.transitions:
        if x is None:
            eps.setdefault(q, []).append(r)
    while frontier:
        q = frontier.popleft()
        for r in eps.get(q, ()):
            if r not in closure:
                closure.add(r)
                frontier.append(r)
    return frozenset(closure)


def word_automaton(word: Sequence[str], alphabet: Sequence[str] | None = None) -> Nfa:
    """Chain automaton recognizing exactly ``word``: one transition per symbol."""
    word = tuple(word)
    alpha = _merge_alphabets(word) if alphabet is None else _merge_alphabets(alphabet, word)
    transitions = frozenset((i, word[i], i + 1) for i in range(len(word)))
    return Nfa(len(word) + 1, alpha, transitions, 0, frozenset({len(word)}))


def accepts(a: Nfa, word: Sequence[str]) -> bool:
    current = epsilon_closure(a, {a.initial})
    step: dict[tuple[int, str], set[int]] = {}
    for q, x, r in a.transitions:
        if x is not None:
            step.setdefault((q, x), set()).add(r)
    for sym in word:
        moved: set[int] = set()
        for q in current:
            moved |= step.get((q, sym), set())
        if not moved:
            return False
        current = epsilon_closure(a, moved)
    return bool(current & a.accepting)


def eliminate_epsilon(a: Nfa) -> Nfa:
    """Equivalent automaton without epsilon transitions; states preserved."""
    if not a.has_epsilon():
        return a
    closures = {q: epsilon_closure(a, {q}) for q in a.states}
    plain = [(q, x, r) for q, x, r in a.transitions if x is not None]
    transitions: set[tuple[int, str | None, int]] = set()
    for q in a.states:
        for mid in closures[q]:
            for src, x, dst in plain:
                if src == mid:
                    transitions.add((q, x, dst))
    accepting = frozenset(q for q in a.states if closures[q] & a.accepting)
    return Nfa(a.num_states, a.alphabet, frozenset(transitions), a.initial, accepting)


def trim(a: Nfa) -> Nfa:
    """Keep only states on some path initial -> accepting; renumber densely."""
    forward: dict[int, set[int]] = {q: set() for q in a.states}
    backward: dict[int, set[int]] = {q: set() for q in a.states}
    for q, _, r in a.transitions:
        forward[q].add(r)
        backward[r].add(q)

    def reach(seeds: Iterable[int], edges: dict[int, set[int]]) -> set[int]:
        seen = set(seeds)
        frontier = deque(seen)
        while frontier:
            q = frontier.popleft()
            for r in edges[q]:
                if r not in seen:
                    seen.add(r)
                    frontier.append(r)
        return seen

    useful = reach({a.initial}, forward) & reach(a.accepting, backward)
    useful.add(a.initial)
    renum = {q: i for i, q in enumerate(sorted(useful))}
    transitions = frozenset(
        (renum[q], x, renum[r])
        for q, x, r in a.transitions
        if q in useful and r in useful
    )
    accepting = frozenset(renum[q] for q in a.accepting if q in useful)
    return Nfa(len(useful), a.alphabet, transitions, renum[a.initial], accepting)


def _determinize_complete(a: Nfa, alphabet: Sequence[str]) -> Nfa:
    """Subset construction over ``alphabet``, completed with a sink state.

    Returns a deterministic automaton (as an Nfa value) whose transition
    function is total, which is what complementation needs.
    """
    a = eliminate_epsilon(a)
    alphabet = tuple(alphabet)
    step: dict[tuple[int, str], set[int]] = {}
    for q, x, r in a.transitions:
        step.setdefault((q, x), set()).add(r)

    start = frozenset({a.initial})
    numbering: dict[frozenset[int], int] = {start: 0}
    queue: deque[frozenset[int]] = deque([start])
    transitions: set[tuple[int, str | None, int]] = set()
    while queue:
        subset = queue.popleft()
        src = numbering[subset]
        for sym in alphabet:
            target: set[int] = set()
            for q in subset:
                target |= step.get((q, sym), set())
            nxt = frozenset(target)
            if nxt not in numbering:
                numbering[nxt] = len(numbering)
                queue.append(nxt)
            transitions.add((src, sym, numbering[nxt]))
    accepting = frozenset(
        idx for subset, idx in numbering.items() if subset & a.accepting
    )
    return Nfa(len(numbering), alphabet, frozenset(transitions), 0, accepting)


def complement(a: Nfa, alphabet: Sequence[str] | None = None) -> Nfa:
    """Automaton for the complement of ``L(a)`` relative to ``alphabet``*.

    Defaults to the automaton's own alphabet; callers comparing languages
    over a wider alphabet must pass it explicitly.
    """
    alpha = a.alphabet if alphabet is None else _merge_alphabets(alphabet, a.alphabet)
    dfa = _determinize_complete(a, alpha)
    flipped = frozenset(q for q in dfa.states if q not in dfa.accepting)
    return Nfa(dfa.num_states, dfa.alphabet, dfa.transitions, dfa.initial, flipped)


def intersect(a: Nfa, b: Nfa) -> Nfa:
    """Product construction; recognizes ``L(a) ∩ L(b)``."""
    a = eliminate_epsilon(a)
    b = eliminate_epsilon(b)
    alpha = _merge_alphabets(a.alphabet, b.alphabet)
    step_a: dict[tuple[int, str], set[int]] = {}
    step_b: dict[tuple[int, str], set[int]] = {}
    for q, x, r in a.transitions:
        step_a.setdefault((q, x), set()).add(r)
    for q, x, r in b.transitions:
        step_b.setdefault((q, x), set()).add(r)

    start = (a.initial, b.initial)
    numbering: dict[tuple[int, int], int] = {start: 0}
    queue: deque[tuple[int, int]] = deque([start])
    transitions: set[tuple[int, str | None, int]] = set()
    while queue:
        qa, qb = queue.popleft()
        src = numbering[(qa, qb)]
        for sym in alpha:
            for ra in step_a.get((qa, sym), ()):
                for rb in step_b.get((qb, sym), ()):
                    pair = (ra, rb)
                    if pair not in numbering:
                        numbering[pair] = len(numbering)
                        queue.append(pair)
                    transitions.add((src, sym, numbering[pair]))
    accepting = frozenset(
        idx
        for (qa, qb), idx in numbering.items()
        if qa in a.accepting and qb in b.accepting
    )
    product = Nfa(len(numbering), alpha, frozenset(transitions), 0, accepting)
    return trim(product)


def union(a: Nfa, b: Nfa) -> Nfa:
    """Recognizes ``L(a) ∪ L(b)`` (fresh initial state with epsilon fan-out)."""
    alpha = _merge_alphabets(a.alphabet, b.alphabet)
    off_a, off_b = 1, 1 + a.num_states
    transitions: set[tuple[int, str | None, int]] = {
        (0, None, off_a + a.initial),
        (0, None, off_b + b.initial),
    }
    transitions |= {(q + off_a, x, r + off_a) for q, x, r in a.transitions}
    transitions |= {(q + off_b, x, r + off_b) for q, x, r in b.transitions}
    accepting = frozenset(q + off_a for q in a.accepting) | frozenset(
        q + off_b for q in b.accepting
    )
    return Nfa(1 + a.num_states + b.num_states, alpha, frozenset(transitions), 0, accepting)


def difference(a: Nfa, b: Nfa) -> Nfa:
    """Recognizes ``L(a) \\ L(b)``; ``b`` is complemented over the joint alphabet."""
    alpha = _merge_alphabets(a.alphabet, b.alphabet)
    return intersect(a, complement(b, alpha))


def is_empty(a: Nfa) -> bool:
    reachable = {a.initial}
    frontier = deque(reachable)
    out: dict[int, list[int]] = {}
    for q, _, r in a.transitions:
        out.setdefault(q, []).append(r)
    while frontier:
        q = frontier.popleft()
        if q in a.accepting:
            return False
        for r in out.get(q, ()):
            if r not in reachable:
                reachable.add(r)
                frontier.append(r)
    return not (reachable & a.accepting)


def shortest_accepted(
    initial: frozenset,
    move: Callable[[frozenset, str], frozenset],
    is_accepting: Callable[[frozenset], bool],
    alphabet: Sequence[str],
) -> tuple[str, ...] | None:
    """Lexicographically least word of minimum length accepted by an
    abstract nondeterministic machine, or ``None`` if the search exhausts.

    Works on the determinized view: nodes are sets of machine states, so a
    breadth-first walk expanding symbols in alphabet order visits words in
    (length, lex) order, and keeping only the first word per set is safe
    because extensions of equal sets behave identically.
    """
    if is_accepting(initial):
        return ()
    seen = {initial}
    queue: deque[tuple[frozenset, tuple[str, ...]]] = deque([(initial, ())])
    while queue:
        subset, word = queue.popleft()
        for sym in alphabet:
            target = move(subset, sym)
            if not target or target in seen:
                continue
            extended = word + (sym,)
            if is_accepting(target):
                return extended
            seen.add(target)
            queue.append((target, extended))
    return None


def shortest_witness(a: Nfa) -> tuple[str, ...] | None:
    """Minimum-length accepted word, lexicographically least per the
    declared alphabet order; ``None`` iff the language is empty."""
    if is_empty(a):
        return None
    a = eliminate_epsilon(a)
    step: dict[tuple[int, str], frozenset[int]] = {}
    collect: dict[tuple[int, str], set[int]] = {}
    for q, x, r in a.transitions:
        collect.setdefault((q, x), set()).add(r)
    step = {key: frozenset(val) for key, val in collect.items()}

    def move(subset: frozenset, sym: str) -> frozenset:
        out: set[int] = set()
        for q in subset:
            out |= step.get((q, sym), frozenset())
        return frozenset(out)

    accepting = a.accepting
    return shortest_accepted(
        frozenset({a.initial}),
        move,
        lambda subset: bool(subset & accepting),
        a.alphabet,
    )


def equivalent(a: Nfa, b: Nfa) -> bool:
    """Language equality via emptiness of both difference directions."""
    return is_empty(difference(a, b)) and is_empty(difference(b, a))


def enumerate_accepted(a: Nfa, max_len: int) -> frozenset[tuple[str, ...]]:
    """All accepted words of length at most ``max_len`` (test oracle helper)."""
    a = eliminate_epsilon(a)
    step: dict[tuple[int, str], set[int]] = {}
    for q, x, r in a.transitions:
        step.setdefault((q, x), set()).add(r)
    found: set[tuple[str, ...]] = set()

    def walk(subset: frozenset[int], word: tuple[str, ...]) -> None:
        if subset & a.accepting:
            found.add(word)
        if len(word) == max_len:
            return
        for sym in a.alphabet:
            target: set[int] = set()
            for q in subset:
                target |= step.get((q, sym), set())
            if target:
                walk(frozenset(target), word + (sym,))

    walk(frozenset({a.initial}), ())
    return frozenset(found)


def to_dot(a: Nfa, name: str = "nfa") -> str:
    """GraphViz rendering: one node per state, doubled circle for accepting."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in a.states:
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f'  q{q} [shape={shape}, label="{q}"];')
    lines.append(f"  __start -> q{a.initial};")
    for q, x, r in sorted(a.transitions, key=lambda t: (t[0], t[2], t[1] or "")):
        label = "ε" if x is None else x
        lines.append(f'  q{q} -> q{r} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
