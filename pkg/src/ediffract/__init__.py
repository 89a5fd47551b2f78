"""Electron diffraction integrals, magnetic phase shifts, and old quantum
mechanics spectra, in Gaussian cgs units throughout."""

from .aperture import (
    Aperture,
    ApertureUnion,
    Disk,
    FresnelGeometry,
    QuadratureRule,
    RectSlit,
    fresnel_factor,
    quadrature,
)
from .bessel import bessel_j1, bessel_j1_over_z, j1_first_zero
from .config import RunConfig, parse_config, serialize_config
from .constants import (
    CONSTANT_SETS,
    PAPER,
    PRECISE,
    IncidentBeam,
    PhysicalConstants,
    de_broglie_wavelength,
    dispersion,
    larmor_frequency,
    photo_energy,
)
from .errors import (
    AccuracyError,
    ConfigurationError,
    DivergenceWarning,
    DomainError,
    ParseError,
    PathError,
    SingularityError,
    SplitError,
    UnsupportedOrderError,
    UsageError,
)
from .kirchhoff import (
    AmplitudeField,
    FringeRoot,
    TwoSlitSetup,
    airy_amplitude,
    fraunhofer_amplitude,
    fringe_maxima,
    green0,
    green0_normal_derivative,
    kirchhoff_amplitude,
    kirchhoff_amplitude_converged,
    radiation_residual,
    two_slit_amplitude,
)
from .magnetic import (
    ABPhase,
    FluxResult,
    GaugeSplit,
    MagneticConfig,
    OrientedDisk,
    ab_shift,
    ab_two_slit_amplitude,
    born_term,
    circle_points,
    divergence_metric,
    flux,
    gauge_phase,
    line_integral,
    magnetic_green,
    split_potential,
    surface_flux,
    tube_probe_points,
    uniform_field_potential,
    vector_potential,
)
from .spectra import (
    AngularMomentumState,
    BalmerLevel,
    ClassicalZeeman,
    QuantumNumbers,
    SpectralContext,
    ZeemanLine,
    azimuthal_selection_factor,
    balmer_energy,
    bohr_line,
    classical_zeeman,
    correspondence_check,
    enumerate_states,
    pauli_energy,
    rydberg_constant,
    shell_capacity,
    sommerfeld_action,
    sommerfeld_quantized_energy,
    spatial_quantization,
    zeeman_line,
)
from .tables import ResultTable

__version__ = "0.1.0"
