"""Static and dynamical entanglement of an XY spin ring with one field defect."""

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    DefectChainError,
    NoBoundStateError,
    NumericalError,
    ParameterError,
    PoleError,
    SingularityError,
)
from .model import (
    ChainSpec,
    SiteIndex,
    Spectrum,
    WaveFunction,
    build_hamiltonian,
    diagonalize,
    evolve_state,
    transition_amplitude_numeric,
)
from .greens import (
    EnergyArgument,
    LocalizedState,
    band_amplitude,
    full_green,
    g0,
    localized_residue,
    localized_state,
)
from .entanglement import concurrence_profile, localized_concurrence, pair_concurrence
from .dynamics import (
    AmplitudeSeries,
    InfiniteChain,
    TimeGrid,
    amplitude_series,
    transition_amplitude_integral,
)
from .transport import (
    TransportResult,
    analytic_transmission_reference,
    transport_coefficients,
    transport_sweep,
)
