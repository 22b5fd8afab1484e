from .generators import FAMILIES, generate_graph
from .graph import Edge, Graph, Walk, edge_key, read_edge_list, validate_graph, validate_walk, write_edge_list
from .stream import Stream, TimestampedEdge, attach_timestamps, gen_order_statistics, make_stream, window
from .templates import WalkTemplate, conforms, enumerate_templates, num_templates, sample_template, template_of

__all__ = [
    'Edge', 'Graph', 'Walk', 'edge_key', 'validate_graph', 'validate_walk',
    'read_edge_list', 'write_edge_list', 'FAMILIES', 'generate_graph',
    'Stream', 'TimestampedEdge', 'make_stream', 'window', 'gen_order_statistics',
    'attach_timestamps', 'WalkTemplate', 'template_of', 'conforms',
    'num_templates', 'enumerate_templates', 'sample_template',
]
