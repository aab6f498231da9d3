"""Exact verification and solving toolkit for fractional list coloring
((L:a)-coloring) of plane graphs of girth at least five."""

from .canvas import Canvas, PotentialReport, classify, potentials, sub_super, verify_hypcyl
from .coloring import (
    Connection,
    ListAssignment,
    SetColoring,
    check_cor_distflaws_hypotheses,
    check_thm_2flaws_hypotheses,
    check_thm_cyl_hypotheses,
    compute_c,
    connection_status,
    flaws,
    is_aP_valid,
    is_pc_disjoint,
    is_set_coloring,
    rogue_vertices,
)
from .common import FraccolError, HypothesisError, InputError, MapBuildError, Subgraph
from .planemap import (
    PlaneMap,
    build_map,
    cycle_sides,
    distance,
    girth,
    is_tame,
    subgraph_delete,
    validate_plane,
)
from .solver import (
    ExtensionProblem,
    decompose_cut,
    extends_to,
    extract_critical,
    find_critical_subcanvas,
    is_critical,
    reduce_flaw,
    reduce_greedy_vertex,
    solve,
    verify_lemma_sgcrit,
)

__version__ = "0.1.0"
