"""Noise-aware initial qubit mapping on square-lattice devices.

Parse a tiny circuit format, extract weighted interaction graphs, sample
lattice coupling graphs with per-element error rates, place circuits with a
greedy noise-aware heuristic (bounded by exhaustive and trivial mappers),
score placements with a multiplicative success-rate metric, and sweep it all
with a reproducible Monte-Carlo experiment runner.
"""

__version__ = "0.1.0"

from .benchmarks import (
    BenchmarkSpec,
    UnknownBenchmarkError,
    gen_linear,
    gen_sequence_i,
    gen_sequence_ii,
    load_realistic,
    max_nonlinear_edges,
)
from .circuit import (
    CircuitIR,
    CircuitParseError,
    CircuitSyntaxError,
    GateEvent,
    GateKind,
    MissingHeaderError,
    QubitIndexError,
    parse_circuit,
    render_circuit,
    tally_gates,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    MissingMapperError,
    SummaryRow,
    TrialRecord,
    derive_seed,
    detect_critical_point,
    load_config,
    read_summary_csv,
    run_experiment,
    summarize,
)
from .graphs import (
    CouplingGraph,
    InteractionGraph,
    InvalidNoiseError,
    NoiseScaling,
    NoiseSpec,
    NoPathError,
    coupling_from_json,
    coupling_to_json,
    interaction_from_json,
    interaction_graph,
    interaction_to_json,
    make_lattice,
    max_degree,
    min_error_distances,
    min_error_path,
    vertex_degrees,
)
from .mappers import (
    DEFAULT_PLACEMENT_LIMIT,
    MapperResult,
    SearchSpaceTooLargeError,
    TooManyQubitsError,
    map_brute_force,
    map_heuristic,
    map_trivial,
    placement_count,
    run_mapper,
)
from .metric import (
    InvalidMappingError,
    Mapping,
    MetricReport,
    SwapRoute,
    evaluate_mapping,
    swap_edge_count,
)
from .plots import emit_plots
