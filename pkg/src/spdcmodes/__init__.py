"""Two-photon spatial-mode spectra of SPDC pumped by a tunable l = +/-1 vortex superposition."""

__version__ = "0.1.0"

from .modes import (  # noqa: E402
    HGIndex,
    LGIndex,
    WaistConfig,
    assoc_laguerre,
    b_coeff,
    dhg_expand,
    hermite,
    hg_mode,
    lg_mode,
    lg_to_hg,
)
from .pump import JonesOAMState, PumpField, prepare_pump, pump_in_hg  # noqa: E402
from .spectra import (  # noqa: E402
    HGSpectrum,
    LGSpectrum,
    hg_amplitude,
    hg_selection_allowed,
    hg_spectrum,
    lg_amplitude,
    lg_spectrum,
    sweep_theta1,
)
from .analysis import crossing_points, normalize, schmidt_number, subspace_weights  # noqa: E402
