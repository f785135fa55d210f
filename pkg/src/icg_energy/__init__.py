"""Exact energies of integral circulant (gcd) graphs of prime power order."""

from .construction import (
    BoundsReport,
    ConstructionResult,
    construct_divisor_set,
    construction_size,
    energy_bracket,
    refined_bracket,
    round_positions,
    rounding_loss,
)
from .energy import (
    EnergyReport,
    ExponentSet,
    PrimePowerOrder,
    closed_form_energy,
    energy_report,
    hyper_threshold,
    is_hyperenergetic,
    min_energy,
    normalized_energy,
    pair_sum,
)
from .relaxation import (
    RelaxationSolution,
    chain_minimizer,
    chain_objective,
    ratio_estimates,
    relax,
    relaxed_energy_bound,
    solve_nu,
)
from .search import (
    EnumerationCapError,
    MaxEnergyResult,
    MinimizerResult,
    enumerate_hyperenergetic,
    max_energy,
    max_energy_of_size,
    min_pair_sum,
)
from .spectrum import (
    GraphSpec,
    SpectrumResult,
    classical_bounds,
    ramanujan_sum,
    spectrum_energy,
    unitary_energy,
)

__version__ = "0.1.0"
