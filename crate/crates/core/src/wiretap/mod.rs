//! Coset codes over nested lattices, rate accounting and multilevel codes.

pub mod coset_code;
pub mod multilevel;
pub mod rate;

pub use coset_code::{build_coset_code, CosetCode};
pub use multilevel::{multilevel_decode, multilevel_encode_e8, multilevel_encode_z8, Chain, MultilevelCode, MultilevelConfig, MultilevelPoint};
pub use rate::{gsnr, operating_point, random_bit_rate, RatePlan};
