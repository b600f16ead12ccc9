"""Two-qubit dephasing channels with double-peaked Gaussian environments.

Non-Markovianity diagnostics (capacity-based and trace-distance-based) and
the noisy superdense-coding protocol.
"""

from .channels import (
    CapacityTrace,
    DephasingPair,
    apply_dephasing,
    apply_local_dephasing,
    capacity_single,
    capacity_trace,
    capacity_two_qubit,
)
from .measures import (
    Behavior,
    CombinationVerdict,
    MeasureReport,
    NoTransitionError,
    bcm_scan,
    blp_product_bound,
    blp_search,
    classify_combination,
    critical_amplitude,
    measure_report,
    trace_distance_dynamics,
)
from .numerics import (
    DomainError,
    ValidationError,
    binary_entropy,
    distinguish_probability,
    hermitian_eigenvalues,
    positive_increase_sum,
    trace_distance,
)
from .sdc import (
    PRESETS,
    EncodingOp,
    NoiseSchedule,
    SdcCurve,
    conditional_probabilities,
    dilation_oracle,
    effective_coherences,
    encoded_states,
    mutual_information,
    mutual_information_closed_form,
    simulate_configuration,
)
from .spectra import (
    DoublePeakSpectrum,
    TimeGrid,
    characteristic_fn,
    default_grid,
    magnitude,
    monte_carlo_characteristic,
)

__version__ = "0.1.0"
