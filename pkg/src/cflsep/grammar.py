"""Context-free grammars: representation, normal form, SCCs, membership.

A grammar is an immutable value; every operation here is a pure function.
Words are tuples of terminal names, so multi-character terminals (token
alphabets) work exactly like single characters.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence


class GrammarError(ValueError):
    """A grammar or word violates a structural precondition."""


@dataclass(frozen=True)
class Symbol:
    """One grammar symbol. ``terminal`` distinguishes the two namespaces."""

    name: str
    terminal: bool

    def __repr__(self) -> str:
        return f'"{self.name}"' if self.terminal else self.name


def t(name: str) -> Symbol:
    return Symbol(name, True)


def nt(name: str) -> Symbol:
    return Symbol(name, False)


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[Symbol, ...]

    def __repr__(self) -> str:
        body = " ".join(repr(s) for s in self.rhs) if self.rhs else "<empty>"
        return f"{self.lhs} -> {body}"


@dataclass(frozen=True)
class Cfg:
    """A context-free grammar.

    ``variables`` and ``terminals`` are stored as tuples to preserve the
    declaration order (fresh-name generation, SCC numbering and witness
    tie-breaking all depend on a stable order), but they behave as sets:
    names are unique and the two namespaces are disjoint.
    """

    variables: tuple[str, ...]
    terminals: tuple[str, ...]
    productions: tuple[Production, ...]
    start: str

    def __post_init__(self) -> None:
        vset, tset = set(self.variables), set(self.terminals)
        if len(vset) != len(self.variables) or len(tset) != len(self.terminals):
            raise GrammarError("duplicate symbol declarations")
        if vset & tset:
            raise GrammarError(
                f"terminal/nonterminal namespaces overlap: {sorted(vset & tset)}"
            )
        if self.start not in vset:
            raise GrammarError(f"start symbol {self.start!r} is not a variable")
        for prod in self.productions:
            if prod.lhs not in vset:
                raise GrammarError(f"production lhs {prod.lhs!r} is not a variable")
            for sym in prod.rhs:
                pool = tset if sym.terminal else vset
                if sym.name not in pool:
                    raise GrammarError(f"undeclared symbol {sym!r} in {prod!r}")

    def productions_of(self, var: str) -> list[Production]:
        return [p for p in self.productions if p.lhs == var]


@dataclass(frozen=True)
class SccPartition:
    """Partition of the nonterminals into mutually recursive blocks.

    ``blocks`` are ordered tuples (member order follows the grammar's
    variable declaration order) and the partition itself is in topological
    order of the block condensation: a block comes before the blocks it
    references.
    """

    blocks: tuple[tuple[str, ...], ...]
    index: dict[str, int]

    def block_of(self, var: str) -> tuple[str, ...]:
        return self.blocks[self.index[var]]


def fresh_name(base: str, used: set[str]) -> str:
    """Deterministic fresh identifier: smallest ``base_k`` not yet used."""
    k = 1
    while f"{base}_{k}" in used:
        k += 1
    name = f"{base}_{k}"
    used.add(name)
    return name


# ---------------------------------------------------------------------------
# Normal form: every production is A -> BC | a | B | <empty>
# ---------------------------------------------------------------------------


def is_normal_form(g: Cfg) -> bool:
    for p in g.productions:
        n = len(p.rhs)
        if n <= 1:
            continue
        if n == 2 and not p.rhs[0].terminal and not p.rhs[1].terminal:
            continue
        return False
    return True


def normalize(g: Cfg) -> Cfg:
    """Rewrite ``g`` so every production is A -> BC, A -> a, A -> B or A -> ε.

    The language is preserved and the grammar grows at most linearly: each
    terminal occurring in a long right-hand side gets one wrapper
    nonterminal, and right-hand sides longer than two are chained through
    fresh binarization nonterminals. Already-normal grammars are returned
    unchanged.
    """
    if is_normal_form(g):
        return g

    used = set(g.variables) | set(g.terminals)
    new_vars = list(g.variables)
    new_prods: list[Production] = []
    wrapper: dict[str, str] = {}  # terminal -> wrapper nonterminal

    def wrap_terminal(sym: Symbol) -> Symbol:
        if sym.name not in wrapper:
            name = fresh_name(sym.name, used)
            wrapper[sym.name] = name
            new_vars.append(name)
            new_prods.append(Production(name, (sym,)))
        return nt(wrapper[sym.name])

    for prod in g.productions:
        rhs = prod.rhs
        if len(rhs) <= 1 or (
            len(rhs) == 2 and not rhs[0].terminal and not rhs[1].terminal
        ):
            new_prods.append(prod)
            continue
        body = tuple(wrap_terminal(s) if s.terminal else s for s in rhs)
        lhs = prod.lhs
        while len(body) > 2:
            helper = fresh_name(prod.lhs, used)
            new_vars.append(helper)
            new_prods.append(Production(lhs, (body[0], nt(helper))))
            lhs, body = helper, body[1:]
        new_prods.append(Production(lhs, body))

    return Cfg(tuple(new_vars), g.terminals, tuple(new_prods), g.start)


# ---------------------------------------------------------------------------
# Strongly connected components of the nonterminal reference graph
# ---------------------------------------------------------------------------


def sccs(g: Cfg) -> SccPartition:
    """Mutually recursive classes of ``g``'s nonterminals (iterative Tarjan)."""
    succ: dict[str, list[str]] = {v: [] for v in g.variables}
    for p in g.productions:
        seen = set(succ[p.lhs])
        for sym in p.rhs:
            if not sym.terminal and sym.name not in seen:
                succ[p.lhs].append(sym.name)
                seen.add(sym.name)

    order = {v: i for i, v in enumerate(g.variables)}
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = 0
    components: list[tuple[str, ...]] = []

    for root in g.variables:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for j in range(i, len(succ[v])):
                w = succ[v][j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if recurse:
                continue
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp, key=order.get)))
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])

    components.reverse()  # Tarjan emits referenced blocks first
    block_index = {v: i for i, block in enumerate(components) for v in block}
    return SccPartition(tuple(components), block_index)


def block_is_recursive(g: Cfg, block: Sequence[str]) -> bool:
    """A block is recursive iff some production of a member uses a member."""
    if len(block) > 1:
        return True
    members = set(block)
    for p in g.productions:
        if p.lhs in members and any(
            not s.terminal and s.name in members for s in p.rhs
        ):
            return True
    return False


def prune_useless(g: Cfg) -> Cfg:
    """Optional pass: drop unproductive and unreachable nonterminals.

    Never applied implicitly; approximation and pre* work on the grammar as
    given.
    """
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in productive and all(
                s.terminal or s.name in productive for s in p.rhs
            ):
                productive.add(p.lhs)
                changed = True

    reachable = {g.start}
    frontier = deque([g.start])
    keep = lambda p: p.lhs in productive and all(
        s.terminal or s.name in productive for s in p.rhs
    )
    while frontier:
        v = frontier.popleft()
        for p in g.productions:
            if p.lhs == v and keep(p):
                for s in p.rhs:
                    if not s.terminal and s.name not in reachable:
                        reachable.add(s.name)
                        frontier.append(s.name)

    live = (reachable & productive) | {g.start}
    variables = tuple(v for v in g.variables if v in live)
    productions = tuple(
        p for p in g.productions if p.lhs in live and keep(p)
    )
    return Cfg(variables, g.terminals, productions, g.start)


# ---------------------------------------------------------------------------
# Membership and bounded enumeration
# ---------------------------------------------------------------------------


def nullable_set(g: Cfg) -> frozenset[str]:
    """Nonterminals that derive the empty word. ``g`` may be any grammar."""
    gn = normalize(g)
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in gn.productions:
            if p.lhs in nullable:
                continue
            if all(not s.terminal and s.name in nullable for s in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return frozenset(nullable)


def _unit_expansion(gn: Cfg, nullable: frozenset[str]) -> dict[str, frozenset[str]]:
    # inverse unit closure: expand[X] = all A with A =>* X using only unit
    # steps, where A -> BC counts as a unit step to B (C nullable) or to C
    # (B nullable)
    direct: dict[str, set[str]] = {v: set() for v in gn.variables}
    for p in gn.productions:
        rhs = p.rhs
        if len(rhs) == 1 and not rhs[0].terminal:
            direct[rhs[0].name].add(p.lhs)
        elif len(rhs) == 2:
            b, c = rhs[0].name, rhs[1].name
            if c in nullable:
                direct[b].add(p.lhs)
            if b in nullable:
                direct[c].add(p.lhs)

    expansion: dict[str, frozenset[str]] = {}
    for x in gn.variables:
        closure = {x}
        frontier = deque([x])
        while frontier:
            y = frontier.popleft()
            for a in direct[y]:
                if a not in closure:
                    closure.add(a)
                    frontier.append(a)
        expansion[x] = frozenset(closure)
    return expansion


def in_language(g: Cfg, word: Sequence[str]) -> bool:
    """Total membership: words using symbols outside the grammar's alphabet
    are simply not in the language (no error). The refinement loop works
    over the union alphabet of several grammars and needs this reading."""
    terms = set(g.terminals)
    if any(sym not in terms for sym in word):
        return False
    return member(g, word)


def member(g: Cfg, word: Sequence[str]) -> bool:
    """Decide ``word in L(g)`` with a CYK-style chart on the normal form."""
    terms = set(g.terminals)
    for sym in word:
        if sym not in terms:
            raise GrammarError(f"word symbol {sym!r} not in the grammar alphabet")

    gn = normalize(g)
    nullable = nullable_set(gn)
    if not word:
        return gn.start in nullable

    expand = _unit_expansion(gn, nullable)
    n = len(word)
    binary = [
        (p.lhs, p.rhs[0].name, p.rhs[1].name)
        for p in gn.productions
        if len(p.rhs) == 2
    ]
    lexical: dict[str, set[str]] = {}
    for p in gn.productions:
        if len(p.rhs) == 1 and p.rhs[0].terminal:
            lexical.setdefault(p.rhs[0].name, set()).add(p.lhs)

    cell: dict[tuple[int, int], frozenset[str]] = {}
    for i in range(n):
        base = lexical.get(word[i], set())
        cell[(i, i + 1)] = frozenset().union(*(expand[a] for a in base)) if base else frozenset()
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            found: set[str] = set()
            for k in range(i + 1, j):
                left, right = cell[(i, k)], cell[(k, j)]
                for a, b, c in binary:
                    if b in left and c in right:
                        found.add(a)
            closed: set[str] = set()
            for a in found:
                closed |= expand[a]
            cell[(i, j)] = frozenset(closed)
    return gn.start in cell[(0, n)]


def enumerate_words(g: Cfg, max_len: int) -> frozenset[tuple[str, ...]]:
    """Exactly the words of ``L(g)`` whose length is at most ``max_len``.

    Bottom-up fixpoint over the normal form; terminates because each
    nonterminal's word set is bounded by the finite set of short words.
    """
    if max_len < 0:
        raise GrammarError("max_len must be nonnegative")
    gn = normalize(g)
    words: dict[str, set[tuple[str, ...]]] = {v: set() for v in gn.variables}
    changed = True
    while changed:
        changed = False
        for p in gn.productions:
            target = words[p.lhs]
            before = len(target)
            rhs = p.rhs
            if len(rhs) == 0:
                target.add(())
            elif len(rhs) == 1 and rhs[0].terminal:
                if max_len >= 1:
                    target.add((rhs[0].name,))
            elif len(rhs) == 1:
                target |= words[rhs[0].name]
            else:
                # snapshot: rhs sets may alias the target (e.g. S -> S S)
                left = tuple(words[rhs[0].name])
                right = tuple(words[rhs[1].name])
                for u in left:
                    budget = max_len - len(u)
                    for v in right:
                        if len(v) <= budget:
                            target.add(u + v)
            if len(target) != before:
                changed = True
    return frozenset(words[gn.start])
