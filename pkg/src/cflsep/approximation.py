"""Regular over-approximation of context-free grammars.

Two abstractions: the coarsest one (the full word monoid over the alphabet)
and the strongly-regular construction, which rewrites each mutually
recursive block that is not uniformly left- or right-linear into a
right-linear block, then compiles the result to a finite automaton. The
compiled automaton accepts every word of the grammar, with equality when
the grammar was strongly regular to begin with.
"""

from __future__ import annotations

from .grammar import (
    Cfg,
    Production,
    SccPartition,
    Symbol,
    block_is_recursive,
    fresh_name,
    nt,
    sccs,
)
from .nfa import Nfa, trim


class ApproximationError(ValueError):
    """Raised when make_fa is handed a grammar that is not strongly regular."""


def sigma_star(alphabet: tuple[str, ...] | list[str]) -> Nfa:
    """Single-state automaton accepting every word over ``alphabet``."""
    alpha = tuple(dict.fromkeys(alphabet))
    transitions = frozenset((0, sym, 0) for sym in alpha)
    return Nfa(1, alpha, transitions, 0, frozenset({0}))


def _is_left_linear(prod: Production, block: set[str]) -> bool:
    # block nonterminal allowed only as the very first symbol
    return all(
        sym.terminal or sym.name not in block for sym in prod.rhs[1:]
    )


def _is_right_linear(prod: Production, block: set[str]) -> bool:
    return all(
        sym.terminal or sym.name not in block for sym in prod.rhs[:-1]
    )


def strongly_regular(g: Cfg) -> Cfg:
    """Conservatively break unbounded left/right communication.

    Every mutually recursive block of the result is uniformly left- or
    right-linear when nonterminals outside the block are read as terminals,
    so the result's language is regular and contains ``L(g)``. Blocks that
    are already uniform are copied untouched; the others are rewritten into
    right-linear productions threaded through fresh continuation
    nonterminals (one primed copy per block member, each with an epsilon
    production).
    """
    partition = sccs(g)
    used = set(g.variables) | set(g.terminals)
    variables = list(g.variables)
    productions: list[Production] = []

    for block in partition.blocks:
        members = set(block)
        block_prods = [p for p in g.productions if p.lhs in members]
        uniform = all(_is_left_linear(p, members) for p in block_prods) or all(
            _is_right_linear(p, members) for p in block_prods
        )
        if uniform:
            productions.extend(block_prods)
            continue

        primed = {a: fresh_name(a, used) for a in block}
        for a in block:
            variables.append(primed[a])
            productions.append(Production(primed[a], ()))
        for p in block_prods:
            # split rhs at block members: alpha_0 B_1 alpha_1 ... B_m alpha_m
            segments: list[list[Symbol]] = [[]]
            anchors: list[str] = []
            for sym in p.rhs:
                if not sym.terminal and sym.name in members:
                    anchors.append(sym.name)
                    segments.append([])
                else:
                    segments[-1].append(sym)
            if not anchors:
                productions.append(
                    Production(p.lhs, tuple(segments[0]) + (nt(primed[p.lhs]),))
                )
                continue
            productions.append(
                Production(p.lhs, tuple(segments[0]) + (nt(anchors[0]),))
            )
            for k in range(1, len(anchors)):
                productions.append(
                    Production(
                        primed[anchors[k - 1]],
                        tuple(segments[k]) + (nt(anchors[k]),),
                    )
                )
            productions.append(
                Production(
                    primed[anchors[-1]],
                    tuple(segments[-1]) + (nt(primed[p.lhs]),),
                )
            )

    return Cfg(tuple(variables), g.terminals, tuple(productions), g.start)


class _Builder:
    def __init__(self, grammar: Cfg, partition: SccPartition) -> None:
        self.grammar = grammar
        self.partition = partition
        self.num_states = 0
        self.transitions: set[tuple[int, str | None, int]] = set()
        self._by_lhs: dict[str, list[Production]] = {v: [] for v in grammar.variables}
        for p in grammar.productions:
            self._by_lhs[p.lhs].append(p)
        self._recursive = {
            i: block_is_recursive(grammar, block)
            for i, block in enumerate(partition.blocks)
        }

    def fresh_state(self) -> int:
        self.num_states += 1
        return self.num_states - 1

    def classify(self, block: tuple[str, ...]) -> str:
        members = set(block)
        left_generating = right_generating = False
        for p in self.grammar.productions:
            if p.lhs not in members:
                continue
            for i, sym in enumerate(p.rhs):
                if sym.terminal or sym.name not in members:
                    continue
                if i > 0:
                    left_generating = True
                if i < len(p.rhs) - 1:
                    right_generating = True
        if left_generating and right_generating:
            raise ApproximationError(
                f"block {block} is not uniformly left- or right-linear"
            )
        if right_generating:
            return "left"
        if left_generating:
            return "right"
        return "cyclic"

    def emit(self, q0: int, seq: tuple[Symbol, ...], q1: int) -> None:
        if len(seq) == 0:
            self.transitions.add((q0, None, q1))
            return
        if len(seq) == 1 and seq[0].terminal:
            self.transitions.add((q0, seq[0].name, q1))
            return
        if len(seq) >= 2:
            mid = self.fresh_state()
            self.emit(q0, seq[:1], mid)
            self.emit(mid, seq[1:], q1)
            return
        self.expand_nonterminal(q0, seq[0].name, q1)

    def expand_nonterminal(self, q0: int, var: str, q1: int) -> None:
        block_id = self.partition.index[var]
        block = self.partition.blocks[block_id]
        if not self._recursive[block_id]:
            for p in self._by_lhs[var]:
                self.emit(q0, p.rhs, q1)
            return

        members = set(block)
        state_of = {member: self.fresh_state() for member in block}
        kind = self.classify(block)
        if kind == "left":
            for c in block:
                for p in self._by_lhs[c]:
                    if all(s.terminal or s.name not in members for s in p.rhs):
                        self.emit(q0, p.rhs, state_of[c])
                    else:
                        head = p.rhs[0]
                        if head.terminal or head.name not in members:
                            raise ApproximationError(
                                f"production {p!r} breaks left-linearity of {block}"
                            )
                        self.emit(state_of[head.name], p.rhs[1:], state_of[c])
            self.transitions.add((state_of[var], None, q1))
        else:  # right or cyclic
            for c in block:
                for p in self._by_lhs[c]:
                    if all(s.terminal or s.name not in members for s in p.rhs):
                        self.emit(state_of[c], p.rhs, q1)
                    else:
                        tail = p.rhs[-1]
                        if tail.terminal or tail.name not in members:
                            raise ApproximationError(
                                f"production {p!r} breaks right-linearity of {block}"
                            )
                        self.emit(state_of[c], p.rhs[:-1], state_of[tail.name])
            self.transitions.add((q0, None, state_of[var]))


def make_fa(g: Cfg, part: SccPartition) -> Nfa:
    """Compile a strongly regular grammar into a finite automaton.

    ``part`` must be the SCC partition of ``g`` itself. Recursion is closed
    through one state per block member: "left" blocks hook the member state
    to the caller's final state, "right" and "cyclic" blocks hook the
    caller's initial state to the member state. Each encounter of a
    recursive nonterminal instantiates the block afresh, which is finite
    because the block condensation is acyclic.
    """
    builder = _Builder(g, part)
    q0 = builder.fresh_state()
    qf = builder.fresh_state()
    builder.expand_nonterminal(q0, g.start, qf)
    auto = Nfa(
        builder.num_states,
        g.terminals,
        frozenset(builder.transitions),
        q0,
        frozenset({qf}),
    )
    return trim(auto)


def nederhof(g: Cfg) -> Nfa:
    """Regular over-approximation: strongly-regular rewrite, then make_fa."""
    regular = strongly_regular(g)
    return make_fa(regular, sccs(regular))
