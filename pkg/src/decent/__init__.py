"""Design calculus for finite input-output machines.

Specify machines, build and simulate layered designs of elementary machines,
compute fixed/variable/programming complexities, and search for cost-minimal
decentralizations, including game-theoretic best-reply designs.
"""

from .costs import (
    ABSENT,
    CostReport,
    CostWeights,
    DecisionTree,
    InspectionPolicy,
    NodeCost,
    UNIFORM_WEIGHTS,
    combined_cost,
    fixed_cost,
    node_programming_cost,
    programming_cost,
    variable_cost,
)
from .design import (
    EMPTY,
    Design,
    ImplementsReport,
    PartialInput,
    Trace,
    ValidationReport,
    design_validate,
    implements,
    node_domains,
    simulate,
    trivial_design,
)
from .errors import (
    BadWeights,
    CandidateCapExceeded,
    DesignCalcError,
    FanInTooLarge,
    IndexOutOfRange,
    InputNotInDomain,
    LagExceedsHorizon,
    LengthOverflow,
    MissingProgramEntry,
    NoImplementingDesignWithinBounds,
    NonInjectiveCoding,
    ParseError,
    ShapeMismatch,
    ValidationError,
    Violation,
)
from .fileio import (
    export_dot,
    parse_design_file,
    parse_game_file,
    parse_machine_file,
    serialize_design,
    serialize_game,
    serialize_machine,
)
from .games import (
    LagMatrix,
    NormalFormGame,
    best_reply_design,
    game_domain,
    implemented_machine,
    is_best_reply_program,
    node_profile_table,
)
from .machine import AbstractMachine, Alphabet, Machine, component, encode, machine_validate
from .synthesis import (
    AnnealSchedule,
    SearchBounds,
    SynthesisResult,
    anneal,
    approximate_kappa,
    enumerate_designs,
    kappa,
    optimal_coding,
)

__version__ = "0.1.0"
