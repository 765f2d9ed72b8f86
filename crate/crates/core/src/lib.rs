//! Lattice coset coding for the Gaussian wiretap channel.
//!
//! The crate covers exact lattice arithmetic ([`lattice`], [`catalog`]),
//! theta series and secrecy gains ([`theta`]), nested-lattice coset codes
//! ([`wiretap`]) and Monte Carlo channel simulation ([`channel`]).

pub mod catalog;
pub mod cli;
pub mod channel;
pub mod code;
pub mod error;
pub mod intmat;
pub mod lattice;
pub mod rational;
pub mod theta;
pub mod wiretap;

pub use code::BinaryCode;
pub use error::{Error, Result};
pub use lattice::{Lattice, LatticePoint};
