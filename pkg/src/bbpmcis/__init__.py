"""Maximum common connected induced subgraphs of outerplanar graphs under the
block and bridge preserving constraint."""

__version__ = "0.1.0"

from .bbp import BBPContext, Isomorphism, bbp_edge, bbp_mcis, bbp_single_vertex, set_sx
from .generator import gen_outerplanar
from .graph import (
    BCTree,
    BNode,
    GraphError,
    LabeledGraph,
    build_bc_tree,
    cc_of,
    connected_components,
    decompose,
)
from .io import (
    RESULT_SCHEMA,
    ParseError,
    ResultRecord,
    parse_graph,
    parse_molfile,
    parse_sdf,
    parse_weights,
    record_from_json,
    record_to_json,
    write_graph,
)
from .matching import BipartiteWeightedGraph, max_weight_matching
from .mcis2 import (
    BiconIso,
    MappingType,
    TableD,
    maximal_iso,
    mcis2_enumerate,
    mcis2_weight,
    split_iso,
    type_valid,
)
from .oracle import IsoReport, brute_2mcis, brute_bbp_mcis, check_iso, is_bbp_subgraph
from .outerplanar import (
    OUTER,
    NotOuterplanar,
    OuterplanarEmbedding,
    canonical_face_pair,
    embed_block,
    is_outerplanar,
)
from .weights import FORBIDDEN, LABEL_EQUALITY, UNIFORM, WeightFn

import types as _types

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, _types.ModuleType)
)
