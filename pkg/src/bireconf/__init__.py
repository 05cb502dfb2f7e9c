"""Reconfiguration of cliques, balanced bicliques and connected-component sets."""

from .errors import (
    CapExceeded,
    InvalidSourceSequence,
    NotBipartite,
    OutOfRange,
    ParseError,
    PreconditionViolated,
    PropertyViolated,
    ReconfError,
    SelfLoop,
    SideViolation,
    Unpaddable,
)
from .explorer import Instance, enumerate_configs, reachability_classes, reachable
from .graph_core import (
    BipGraph,
    EdgeVertex,
    Graph,
    OriginalVertex,
    bipartite_complement,
    build_graph,
    build_H,
    complement,
    connected_components,
    find_bipartition,
)
from .properties import (
    Biclique,
    Clique,
    MoveRule,
    MSet,
    biclique_shape,
    component_multiset,
    enumerate_moves,
    is_clique,
    is_move,
    satisfies,
)
from .reductions import (
    ReductionCert,
    explicit_biclique,
    pad_clr,
    reduce_bbr_to_ccr,
    reduce_clr_to_bbr,
)
from .translate import lift_clique_sequence, project_biclique_sequence, verify_sequence

__version__ = "0.1.0"
