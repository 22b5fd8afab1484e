from .instances import (
    GroundTruth,
    HardInstance,
    IndexingInput,
    PublicInstance,
    gen_chosen_vertex_instance,
    gen_digraph_instance,
    random_indexing_input,
)
from .protocol import (
    TrialReport,
    beta_for_pagerank,
    beta_for_walks,
    chosen_vertex_success_floor,
    pagerank_sink_mass_floor,
    run_indexing_protocol,
    run_trials,
    walk_success_floor,
)

__all__ = [
    'IndexingInput', 'PublicInstance', 'GroundTruth', 'HardInstance',
    'gen_digraph_instance', 'gen_chosen_vertex_instance', 'random_indexing_input',
    'run_indexing_protocol', 'run_trials', 'TrialReport',
    'beta_for_walks', 'beta_for_pagerank', 'walk_success_floor',
    'chosen_vertex_success_floor', 'pagerank_sink_mass_floor',
]
