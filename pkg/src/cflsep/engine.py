"""The abstraction / verification / refinement loop over k >= 2 grammars.

Each grammar gets a regular over-approximation; while the joint
intersection of the approximations is nonempty, its shortest witness is
classified against the actual languages. A witness in every language proves
overlap; otherwise every approximation whose language excludes the witness
is tightened by subtracting a generalization of it. Deterministic given the
configuration: witness choice and candidate orders are all fixed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from .approximation import nederhof, sigma_star
from .grammar import Cfg, GrammarError, in_language
from .nfa import Nfa, difference, eliminate_epsilon, shortest_accepted, trim
from .refinement import (
    BudgetExceededError,
    eps_generalize,
    gen_language,
    max_eps_generalize,
    max_star_generalize,
    star_generalize,
)

ABSTRACTIONS = ("sigma-star", "nederhof")
STRATEGIES = ("greedy-star", "greedy-eps", "max-star", "max-eps")


@dataclass(frozen=True)
class Config:
    abstraction: str = "nederhof"
    strategy: str = "greedy-eps"
    max_refinements: int = 100
    maxgen_budget: int = 10**6

    def __post_init__(self) -> None:
        if self.abstraction not in ABSTRACTIONS:
            raise ValueError(f"unknown abstraction {self.abstraction!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be at least 1")


@dataclass(frozen=True)
class Separable:
    """The approximations form a separating family: joint product is empty."""

    approximations: tuple[Nfa, ...]
    iterations: int


@dataclass(frozen=True)
class Overlap:
    """The witness belongs to every input language."""

    witness: tuple[str, ...]
    iterations: int


@dataclass(frozen=True)
class Unknown:
    reason: str  # "iterations" | "budget" | "timeout"
    iterations: int


Verdict = Separable | Overlap | Unknown


def classify_witness(w: Sequence[str], grammars: Sequence[Cfg]) -> list[bool]:
    """Membership of the witness in each grammar's language, in order.

    The witness ranges over the union alphabet, so a symbol foreign to some
    grammar just means the witness is outside that grammar's language.
    """
    word = tuple(w)
    return [in_language(g, word) for g in grammars]


def _joint_witness(approxs: Sequence[Nfa], alphabet: Sequence[str]) -> tuple[str, ...] | None:
    """Shortest, lexicographically least word in the intersection of all
    approximations; None if the joint product is empty.

    The product is walked lazily over state tuples, so the full product
    automaton is never materialized.
    """
    comps = [trim(eliminate_epsilon(a)) for a in approxs]
    if any(not c.accepting for c in comps):
        return None
    steps: list[dict[tuple[int, str], frozenset[int]]] = []
    for c in comps:
        table: dict[tuple[int, str], set[int]] = {}
        for q, x, r in c.transitions:
            table.setdefault((q, x), set()).add(r)
        steps.append({k: frozenset(v) for k, v in table.items()})

    start = tuple(c.initial for c in comps)

    def accepting_tuple(state: tuple[int, ...]) -> bool:
        return all(q in c.accepting for q, c in zip(state, comps))

    # emptiness first: plain reachability over state tuples
    seen = {start}
    frontier = deque(seen)
    hit = accepting_tuple(start)
    while frontier and not hit:
        state = frontier.popleft()
        for sym in alphabet:
            targets = [steps[i].get((state[i], sym), None) for i in range(len(comps))]
            if any(t is None for t in targets):
                continue
            for combo in _tuple_products(targets):
                if combo not in seen:
                    seen.add(combo)
                    if accepting_tuple(combo):
                        hit = True
                    frontier.append(combo)
    if not hit:
        return None

    def move(subset: frozenset, sym: str) -> frozenset:
        out: set[tuple[int, ...]] = set()
        for state in subset:
            targets = [steps[i].get((state[i], sym), None) for i in range(len(comps))]
            if any(t is None for t in targets):
                continue
            out.update(_tuple_products(targets))
        return frozenset(out)

    return shortest_accepted(
        frozenset({start}),
        move,
        lambda subset: any(accepting_tuple(s) for s in subset),
        tuple(alphabet),
    )


def _tuple_products(targets: list[frozenset[int]]) -> list[tuple[int, ...]]:
    combos: list[tuple[int, ...]] = [()]
    for t in targets:
        combos = [c + (q,) for c in combos for q in t]
    return combos


def _generalize(g: Cfg, w: tuple[str, ...], cfg: Config) -> Nfa:
    if cfg.strategy == "greedy-star":
        return gen_language(star_generalize(w, g))
    if cfg.strategy == "greedy-eps":
        return eps_generalize(w, g)
    if cfg.strategy == "max-star":
        return max_star_generalize(g, w, budget=cfg.maxgen_budget)
    return max_eps_generalize(g, w, budget=cfg.maxgen_budget)


def check_disjoint(
    grammars: Sequence[Cfg],
    cfg: Config = Config(),
    should_stop: Callable[[], str | None] | None = None,
    observer: Callable[[int, Sequence[Nfa]], None] | None = None,
) -> "Separable | Overlap | Unknown":
    """Decide whether the grammars' languages have a common word.

    ``should_stop`` is polled between refinement rounds; a non-None return
    value becomes the reason of an Unknown verdict (the CLI uses this for
    its wall-clock timeout). ``observer`` sees the approximations at the
    start of every round, for artifact dumping.
    """
    if len(grammars) < 2:
        raise GrammarError("need at least two grammars")
    alphabet: list[str] = []
    for g in grammars:
        for sym in g.terminals:
            if sym not in alphabet:
                alphabet.append(sym)

    if cfg.abstraction == "sigma-star":
        approxs = [sigma_star(tuple(alphabet)) for _ in grammars]
    else:
        approxs = [nederhof(g) for g in grammars]

    refinements = 0
    while True:
        if should_stop is not None:
            reason = should_stop()
            if reason is not None:
                return Unknown(reason, refinements)
        if observer is not None:
            observer(refinements, tuple(approxs))
        witness = _joint_witness(approxs, alphabet)
        if witness is None:
            return Separable(tuple(approxs), refinements)
        membership = classify_witness(witness, grammars)
        if all(membership):
            return Overlap(witness, refinements)
        if refinements >= cfg.max_refinements:
            return Unknown("iterations", refinements)
        try:
            for i, inside in enumerate(membership):
                if not inside:
                    gen = _generalize(grammars[i], witness, cfg)
                    approxs[i] = difference(approxs[i], gen)
        except BudgetExceededError:
            return Unknown("budget", refinements)
        refinements += 1
