"""Proper mergings of chains and antichains, checked through formal concept analysis.

The submodules build on each other bottom-up: ``order`` and ``fca`` provide
posets and formal contexts, ``merging`` enumerates mergings through bonds,
``bijections`` and ``generalized`` encode them combinatorially, ``counting``
holds the closed formulas and ``galois`` the dual-bond construction.
"""

from .bijections import (
    MonotoneColoring,
    PlanePartition,
    coloring_to_merging,
    enumerate_monotone_colorings,
    enumerate_plane_partitions,
    flip_component,
    hasse_components,
    merging_to_coloring,
    merging_to_pp,
    pp_to_merging,
)
from .counting import (
    count_antichain_chain,
    count_antichain_mergings,
    count_chain_mergings,
    count_galois_boolean_chain,
    count_galois_chains,
    eta,
    macmahon,
    narayana,
)
from .errors import CapacityError, DimensionError, DomainError, LabelError, PosetMergeError
from .fca import Concept, ConceptLattice, FormalContext, all_concepts, contraordinal_scale, ordinal_scale
from .galois import (
    DualBond,
    GaloisConnection,
    enumerate_galois_boolean_chain,
    enumerate_galois_chains,
    galois_from_dual_bond,
    is_galois_connection,
)
from .generalized import Arrangement, arrangement_to_relation, enumerate_generalized
from .merging import CrossRelation, Merging, classify_merging, enumerate_mergings, merged_order, merging_lattice
from .order import Poset, QuasiOrder, hasse_edges, lattice_check, make_antichain, make_chain, poset_isomorphic

__version__ = "0.1.0"
