"""Virtual knots and links as closed virtual braids, their colorings and state-sums."""

from .braids import (
    ComponentData,
    Letter,
    LoopSpec,
    VirtualBraidWord,
    VirtualLinkDiagram,
    as_diagram,
    components_and_vlk,
    disjoint_union,
    move_variants,
    over_gadget,
    parse_diagram,
    prescribed_vlk_link,
    random_word,
    trefoil,
    twisted_family,
    unknot,
    virtual_hopf,
    word,
)
from .colorings import (
    Coloring,
    ShadowColoring,
    burau_color_matrix,
    check_coloring,
    coloring_from_top,
    cycle_from_coloring,
    enumerate_colorings,
    enumerate_shadow_colorings,
    push_colors,
    push_symbolic,
    reduce_matrix,
    shadow_cycle,
    shadow_from_coloring,
    state_sum,
    trivial_quandle_statesum_formula,
    weight,
)
from .constructions import LinkingFamily, attach_virtual_loops, linking_family, linking_family_coloring

__all__ = [name for name in dir() if not name.startswith("_")]
