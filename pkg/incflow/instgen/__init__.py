"""Instance sources: random generators, adversarial families, reductions and file I/O."""

from .families import FAMILY_K_MIN, MATCHING_INSTANCES, PredictedValues, gen_family, gen_matching
from .fileio import describe_instance, format_instance, parse_instance, read_instance, write_instance
from .prng import SplitMix64, derive_seed
from .random_graphs import (
    CORPUS_KINDS, BipartiteParams, GeneralParams, LayeredParams, bipartite_sides, gen_bipartite, gen_general,
    gen_layered, random_corpus,
)
from .x3c import X3CInstance, cover_bound, gen_x3c

__all__ = [
    'FAMILY_K_MIN',
    'MATCHING_INSTANCES',
    'PredictedValues',
    'gen_family',
    'gen_matching',
    'describe_instance',
    'format_instance',
    'parse_instance',
    'read_instance',
    'write_instance',
    'SplitMix64',
    'derive_seed',
    'BipartiteParams',
    'GeneralParams',
    'LayeredParams',
    'bipartite_sides',
    'gen_bipartite',
    'gen_general',
    'gen_layered',
    'random_corpus',
    'CORPUS_KINDS',
    'X3CInstance',
    'cover_bound',
    'gen_x3c',
]
