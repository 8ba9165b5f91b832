"""Radius-1 sand automata over extended integers.

Simulation of local sandpile rules on bi-infinite configurations with
affine-periodic backgrounds, two-dimensional binary embeddings, and
decision procedures for predecessors, fixed directions, blocking words
and steep-configuration geography.
"""

from .analysis import (
    BlockingResult,
    CornerSignature,
    PredecessorWitness,
    PreservationFlags,
    VipCycle,
    antidiagonal_fraction,
    antidiagonal_profile,
    census_preservation,
    check_vip,
    classify_preservation,
    corner_signature,
    find_blocking_word,
    find_vip_cycle,
    goe_search,
    has_predecessor_word,
    random_cylinder,
    realize_cycle,
    realize_witness,
    verify_blocking,
)
from .automaton import apply, iterate, run_until_fixed
from .config import (
    INF,
    NEG_INF,
    Configuration,
    Distance,
    Height,
    Tail,
    add_configs,
    distance,
    format_config,
    load_config,
    make_config,
    parse_config,
    periodic_config,
    random_configuration,
    save_config,
    scale_config,
    shift,
    vertical,
    zero_config,
)
from .embedding import (
    INDETERMINATE,
    BinaryWindow,
    ColumnReading,
    apply_2d,
    decode,
    embed,
    render_ascii,
    render_pgm,
    shift_window,
)
from .geography import (
    AttractorSeries,
    CycleSegment,
    SegmentGraph,
    attractor_experiment,
    check_linear_orbit,
    extended_segment_graph,
    format_graph,
    gamma_segment_graph,
    is_steep,
    load_graph,
    matches_segment_paths,
    parse_graph,
    random_steep_config,
    realize_segment_cycle,
    save_graph,
    save_series_csv,
    steep_increment,
)
from .rules import (
    CLASSES,
    GradientPair,
    RuleTable,
    format_table,
    gamma_table,
    gradient_word,
    is_latin_square,
    load_table,
    lookup,
    measure,
    omega_table,
    parse_table,
    random_table,
    resolve_table,
    save_table,
    table_from_linear,
)

__version__ = "0.1.0"
