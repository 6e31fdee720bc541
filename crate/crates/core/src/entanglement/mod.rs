//! Qubit–field entropy and the entanglement-swapping pipeline.

pub mod entropy;
pub mod power;
pub mod swap;
pub mod wootters;

pub use entropy::{
    araki_lieb_check, binary_entropy, entropy_survival_time, entropy_trajectory,
    von_neumann_entropy, ArakiLiebReport, JointEntropy,
};
pub use power::{
    entangling_power, entangling_power_for_population, power_trajectory, PowerEstimate,
    PowerMethod, PowerSettings,
};
pub use swap::{
    concurrence_closed, max_entanglement_condition, swapped_state, upsilon, upsilon_norm_sqr,
    SwappedPair,
};
pub use wootters::{concurrence_wootters, TwoQubitDensity};
