"""Saturation-based emptiness of L(G) ∩ L(A).

A table of triples (state, symbol, state) is closed under the production
rules of a grammar in normal form (A -> BC | a | B | ε): a triple
(q, X, q') means some word taking the automaton from q to q' is derivable
from X. Epsilon edges of the automaton live in the same table and compose
with every other entry, so generalization edges added later need no
re-elimination. The intersection is nonempty exactly when the start symbol
spans an initial-to-accepting pair.

PrestarSession supports the incremental discipline: tentatively add one
edge, re-saturate, and either commit or revert to the byte-identical
previous table. Sessions are single-owner mutable values.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .grammar import Cfg, GrammarError, is_normal_form, normalize
from .nfa import Nfa, eliminate_epsilon, trim


class _Saturator:
    """Worklist closure of the derivability table over a fixed state set."""

    def __init__(self, gn: Cfg, num_states: int) -> None:
        if not is_normal_form(gn):
            raise GrammarError("saturation requires a grammar in normal form")
        self.num_states = num_states
        self.eps_lhs: list[str] = []
        self.term_rules: dict[str, list[str]] = {}
        self.unit_rules: dict[str, list[str]] = {}
        self.bin_left: dict[str, list[tuple[str, str]]] = {}
        self.bin_right: dict[str, list[tuple[str, str]]] = {}
        for p in gn.productions:
            if len(p.rhs) == 0:
                self.eps_lhs.append(p.lhs)
            elif len(p.rhs) == 1 and p.rhs[0].terminal:
                self.term_rules.setdefault(p.rhs[0].name, []).append(p.lhs)
            elif len(p.rhs) == 1:
                self.unit_rules.setdefault(p.rhs[0].name, []).append(p.lhs)
            else:
                b, c = p.rhs[0].name, p.rhs[1].name
                self.bin_left.setdefault(b, []).append((p.lhs, c))
                self.bin_right.setdefault(c, []).append((p.lhs, b))

        self.table: set[tuple[int, str | None, int]] = set()
        self.by_start: dict[int, dict[str | None, set[int]]] = {
            q: {} for q in range(num_states)
        }
        self.by_end: dict[int, dict[str | None, set[int]]] = {
            q: {} for q in range(num_states)
        }
        self.journal: list[tuple[int, str | None, int]] = []
        self.worklist: deque[tuple[int, str | None, int]] = deque()
        self.steps = 0

    def seed(self, transitions: Sequence[tuple[int, str | None, int]]) -> None:
        for q in range(self.num_states):
            for lhs in self.eps_lhs:
                self.add(q, lhs, q)
        for q, x, r in sorted(
            transitions, key=lambda tr: (tr[0], tr[1] or "", tr[2])
        ):
            self.add(q, x, r)

    def add(self, q: int, sym: str | None, r: int) -> None:
        self.steps += 1
        triple = (q, sym, r)
        if triple in self.table:
            return
        self.table.add(triple)
        self.by_start[q].setdefault(sym, set()).add(r)
        self.by_end[r].setdefault(sym, set()).add(q)
        self.journal.append(triple)
        self.worklist.append(triple)

    def saturate(self) -> None:
        while self.worklist:
            q, sym, r = self.worklist.popleft()
            if sym is None:
                # epsilon composes with everything on either side
                for sym2, targets in list(self.by_start[r].items()):
                    for r2 in list(targets):
                        self.add(q, sym2, r2)
                for sym2, sources in list(self.by_end[q].items()):
                    for q0 in list(sources):
                        self.add(q0, sym2, r)
                continue
            for lhs in self.term_rules.get(sym, ()):
                self.add(q, lhs, r)
            for lhs in self.unit_rules.get(sym, ()):
                self.add(q, lhs, r)
            for lhs, c in self.bin_left.get(sym, ()):
                for r2 in list(self.by_start[r].get(c, ())):
                    self.add(q, lhs, r2)
            for lhs, b in self.bin_right.get(sym, ()):
                for q0 in list(self.by_end[q].get(b, ())):
                    self.add(q0, lhs, r)
            for r2 in list(self.by_start[r].get(None, ())):
                self.add(q, sym, r2)
            for q0 in list(self.by_end[q].get(None, ())):
                self.add(q0, sym, r)

    def mark(self) -> int:
        assert not self.worklist, "mark only valid at a fixpoint"
        return len(self.journal)

    def revert(self, mark: int) -> None:
        while len(self.journal) > mark:
            q, sym, r = self.journal.pop()
            self.table.discard((q, sym, r))
            self.by_start[q][sym].discard(r)
            self.by_end[r][sym].discard(q)
        self.worklist.clear()

    def spans(self, initial: int, accepting: frozenset[int], start: str) -> bool:
        targets = self.by_start[initial].get(start)
        return bool(targets and targets & accepting)


def prestar(g: Cfg, a: Nfa) -> Nfa:
    """Saturated automaton recognizing the derivation predecessors of L(a).

    ``g`` must already be in normal form; states of ``a`` are preserved, and
    the result's alphabet is extended with the grammar's nonterminals (a
    nonterminal-labeled transition (q, A, q') records that A derives some
    word read between q and q').
    """
    if not is_normal_form(g):
        raise GrammarError("prestar requires a grammar in normal form")
    sat = _Saturator(g, a.num_states)
    sat.seed(tuple(a.transitions))
    sat.saturate()
    alphabet = a.alphabet + tuple(v for v in g.variables if v not in set(a.alphabet))
    return Nfa(a.num_states, alphabet, frozenset(sat.table), a.initial, a.accepting)


def intersects(g: Cfg, a: Nfa) -> bool:
    """True iff L(g) ∩ L(a) is nonempty. Accepts any grammar and automaton."""
    gn = normalize(g)
    compact = trim(eliminate_epsilon(a))
    if not compact.accepting:
        return False
    sat = _Saturator(gn, compact.num_states)
    sat.seed(tuple(compact.transitions))
    sat.saturate()
    return sat.spans(compact.initial, compact.accepting, gn.start)


def _chain_word(a: Nfa) -> tuple[str, ...]:
    n = a.num_states - 1
    expected = set()
    word = []
    for i in range(n):
        out = [(x, r) for q, x, r in a.transitions if q == i]
        if len(out) != 1 or out[0][0] is None or out[0][1] != i + 1:
            raise GrammarError("session base must be a single-word chain automaton")
        word.append(out[0][0])
        expected.add((i, out[0][0], i + 1))
    if a.transitions != frozenset(expected) or a.initial != 0 or a.accepting != frozenset({n}):
        raise GrammarError("session base must be a single-word chain automaton")
    return tuple(word)


class PrestarSession:
    """Incremental intersection-emptiness over a growing word automaton.

    The base automaton is the chain for one word; edges added through
    ``try_add`` must have the two generalization shapes: a forward epsilon
    edge (i, ε, j) with i < j, or a backward edge (j-1, w_j, i) with i < j
    that replays the chain's own label. A tentative edge is committed only
    if the start symbol still does not span initial to accepting; otherwise
    the table and the edge are rolled back exactly.
    """

    def __init__(self, grammar: Cfg, base: Nfa) -> None:
        self.word = _chain_word(base)
        self.grammar = normalize(grammar)
        self.base = base
        self.edges: list[tuple[int, str | None, int]] = []
        self._sat = _Saturator(self.grammar, base.num_states)
        self._sat.seed(tuple(base.transitions))
        self._sat.saturate()

    @property
    def steps(self) -> int:
        return self._sat.steps

    def intersects(self) -> bool:
        return self._sat.spans(
            self.base.initial, self.base.accepting, self.grammar.start
        )

    def snapshot(self) -> tuple[int, int]:
        return (self._sat.mark(), len(self.edges))

    def rollback(self, token: tuple[int, int]) -> None:
        table_mark, edge_mark = token
        self._sat.revert(table_mark)
        del self.edges[edge_mark:]

    def _validate(self, edge: tuple[int, str | None, int]) -> None:
        src, label, dst = edge
        n = len(self.word)
        if not (0 <= src <= n and 0 <= dst <= n):
            raise GrammarError(f"edge endpoints out of range: {edge}")
        if label is None:
            if not src < dst:
                raise GrammarError(f"epsilon edges must point forward: {edge}")
        else:
            if src >= n or label != self.word[src]:
                raise GrammarError(
                    f"backward edge must reuse the chain label {self.word[src] if src < n else '?'!r}: {edge}"
                )
            if dst > src:
                raise GrammarError(f"labeled edges must point backward: {edge}")

    def try_add(self, edge: tuple[int, str | None, int]) -> bool:
        """Tentatively add one generalization edge; report acceptance."""
        self._validate(edge)
        if edge in self.edges:
            return True
        token = self.snapshot()
        self._sat.add(*edge)
        self._sat.saturate()
        if self.intersects():
            self.rollback(token)
            return False
        self.edges.append(edge)
        return True

    def automaton(self) -> Nfa:
        """Base chain plus every committed edge."""
        alpha = self.base.alphabet
        return Nfa(
            self.base.num_states,
            alpha,
            self.base.transitions | frozenset(self.edges),
            self.base.initial,
            self.base.accepting,
        )
