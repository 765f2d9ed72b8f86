//! Theta series, modular forms and secrecy gains.

pub mod extremal;
pub mod identities;
pub mod jacobi;
pub mod modular;
pub mod secrecy;
pub mod series;

pub use extremal::{extremal_theta, ThetaPolynomial};
pub use jacobi::jacobi_theta;
pub use modular::{bernoulli, discriminant_delta, eisenstein};
pub use secrecy::{
    secrecy_function, secrecy_gain_lower_bound, strong_secrecy_gain, weak_secrecy_gain, StrongGain, WeakGain,
};
pub use series::{theta_closed_form, theta_enum, ClosedForm, QSeries, ThetaSource};
