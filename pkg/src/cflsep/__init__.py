"""Disjointness of context-free languages via refinable regular approximations."""

from .approximation import make_fa, nederhof, sigma_star, strongly_regular
from .engine import Config, Overlap, Separable, Unknown, Verdict, check_disjoint, classify_witness
from .grammar import Cfg, GrammarError, Production, Symbol, enumerate_words, in_language, member, normalize, sccs
from .grammar_io import ParseError, parse_file, parse_named, render
from .nfa import (
    Nfa,
    accepts,
    complement,
    difference,
    enumerate_accepted,
    equivalent,
    intersect,
    is_empty,
    shortest_witness,
    to_dot,
    union,
    word_automaton,
)
from .prestar import PrestarSession, intersects, prestar
from .refinement import (
    BudgetExceededError,
    StarGeneralization,
    eps_generalize,
    gen_language,
    max_eps_generalize,
    max_star_generalize,
    refine_approx,
    star_generalize,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Cfg",
    "Config",
    "GrammarError",
    "Nfa",
    "Overlap",
    "ParseError",
    "PrestarSession",
    "Production",
    "Separable",
    "StarGeneralization",
    "Symbol",
    "Unknown",
    "Verdict",
    "accepts",
    "check_disjoint",
    "classify_witness",
    "complement",
    "difference",
    "enumerate_accepted",
    "enumerate_words",
    "eps_generalize",
    "equivalent",
    "gen_language",
    "intersect",
    "in_language",
    "intersects",
    "is_empty",
    "make_fa",
    "max_eps_generalize",
    "max_star_generalize",
    "member",
    "nederhof",
    "normalize",
    "parse_file",
    "parse_named",
    "prestar",
    "refine_approx",
    "render",
    "sccs",
    "shortest_witness",
    "sigma_star",
    "star_generalize",
    "strongly_regular",
    "to_dot",
    "union",
    "word_automaton",
]
