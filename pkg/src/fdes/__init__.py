"""Simulation checking and supervisor synthesis for fuzzy discrete event systems."""

from .algebra import (
    DENOMINATOR,
    ONE,
    ZERO,
    FuzzyMatrix,
    Grade,
    fuzzy_tensor,
    godel_residuum,
    grade,
    join,
    matrix_leq,
    maxmin_product,
)
from .automaton import (
    ConfigurationClosure,
    FuzzyAutomaton,
    configuration_closure,
    crisp_approximation,
    eval_generated,
    eval_marked,
    language_included,
    languages_equal,
    parallel_compose,
)
from .errors import (
    AlphabetError,
    FDESError,
    GradeError,
    HypothesisError,
    ModelFormatError,
    ResourceLimitError,
    ShapeError,
)
from .simulation import (
    CandidateGrid,
    SimulationVerdict,
    SimulationWitness,
    candidate_grid,
    check_simulation,
    find_simulation_exhaustive,
    greatest_simulation,
    is_simulated,
    simulation_equivalent,
)
from .synthesis import (
    SynthesisReport,
    UncontrollabilityMap,
    build_plus,
    check_range,
    check_target,
    is_uc_compatible,
    language_controllable,
)

__version__ = "0.1.0"
