//! Driven qubit in a lossy Lorentzian cavity: exact single-excitation
//! dynamics, emission spectra, qubit–field entropy, entanglement swapping
//! between two such qubits, and brute-force reference solvers.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod quadrature;
pub mod spectrum;

pub use dynamics::{
    amplitude, amplitude_trajectory, amplitude_zeros, reduced_density, uniform_times,
    AmplitudeTrajectory, Branch, ReducedDensityMatrix,
};
pub use entanglement::{
    concurrence_closed, concurrence_wootters, entangling_power, max_entanglement_condition,
    swapped_state, von_neumann_entropy, PowerEstimate, PowerMethod, PowerSettings, SwappedPair,
    TwoQubitDensity,
};
pub use error::{Error, Result};
pub use model::{dressed_frame, DressedFrame, QubitInitialState, SystemParams};
pub use num_complex::Complex64;
pub use oracle::{
    discretized_mode_solve, schmidt_field_entropy, volterra_solve, DiscretizedReservoir,
    SolverMethod, SolverSettings,
};
pub use spectrum::{emission_spectrum, spectrum_scan, SpectrumCurve};
