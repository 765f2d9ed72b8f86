//! Gaussian wiretap channel simulation.

pub mod example2;
pub mod qfunc;
pub mod rng;
pub mod sim;

pub use example2::{pce_4qam, pce_coset_z2};
pub use qfunc::q_function;
pub use sim::{bound_ratio, eve_theta_bound, simulate_wiretap, ChannelParams, Detector, SimResult};
