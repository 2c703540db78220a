"""Homogeneous finitely presented monoids: normal words, growth and sandwich decompositions."""

from .automaton import (
    GeneratingSeries,
    GrowthClass,
    NormalWordAutomaton,
    build_automaton,
    classify_growth,
    count_words,
    generating_series,
)
from .oracle import census_counts, enumerate_census
from .presentation import (
    ZERO,
    NonHomogeneous,
    Presentation,
    PresentationError,
    homogeneous,
    infer_weights,
    parse_presentation,
    validate_homogeneous,
)
from .rewriting import RewritingSystem, complete, normal_form, obstruction_set
from .sandwich import (
    GammaBounds,
    Sandwich,
    SandwichDecomposition,
    check_monogenic_plus_finite,
    count_up_to,
    disjointify,
    extract_decomposition,
    gamma_bounds,
    intersect,
    member_word,
    subtract,
)
from .words import Alphabet, Word, compare_graded_lex, conjugacy_offset, primitive_root, weight

__version__ = "0.1.0"
