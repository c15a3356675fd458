"""Small-graph engine for Turán-type extremal problems over partitions of all graphs."""

from .coloring import chromatic_number, sigma, sigma_family
from .constructions import MultipartiteSpec, complete_multipartite, parse_graph, turan, turan_plus
from .errors import CapacityError, DomainError, ESSError, InvariantError, ParseError, SizeError
from .graph import Graph, canonical_form, contains_subgraph, count_copies, from_graph6, to_graph6
from .parameters import ParameterSpec, check_balanced, evaluate, p_spectral_radius, parse_param, spectral_radius
from .search import abstract_chi, enumerate_graphs, extremal
from .structures import StructuredGraph, parse_oracle

__version__ = "0.1.0"
