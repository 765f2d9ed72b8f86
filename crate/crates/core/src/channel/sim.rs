//! Monte Carlo estimation of Bob's and Eve's correct-coset probabilities.

use rayon::prelude::*;
use serde::Serialize;

use super::rng::{TrialRng, STREAM_BOB, STREAM_EVE, STREAM_TX};
use crate::error::{Error, Result};
use crate::intmat::mat_vec_left;
use crate::lattice::{Lattice, Structure};
use crate::theta::series::LatticeTheta;
use crate::theta::ThetaSource;
use crate::wiretap::CosetCode;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelParams {
    pub sigma_b: f64,
    pub sigma_e: f64,
    pub seed: u64,
    pub trials: u64,
}

impl ChannelParams {
    pub fn new(sigma_b: f64, sigma_e: f64, seed: u64, trials: u64) -> Result<Self> {
        let p = ChannelParams { sigma_b, sigma_e, seed, trials };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_b > 0.0 && self.sigma_b.is_finite()) {
            return Err(Error::Domain(self.sigma_b));
        }
        if !(self.sigma_e > 0.0 && self.sigma_e.is_finite()) {
            return Err(Error::Domain(self.sigma_e));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub p_correct: f64,
    pub stderr: f64,
    pub trials: u64,
    /// Theta-series upper bound on the correct-decision probability, when computed.
    pub bound: Option<f64>,
}

impl SimResult {
    pub fn from_tally(correct: u64, trials: u64, bound: Option<f64>) -> Self {
        let p = correct as f64 / trials as f64;
        SimResult { p_correct: p, stderr: (p * (1.0 - p) / trials as f64).sqrt(), trials, bound }
    }

    /// Whether the estimate is within `3·stderr` of the bound or below it.
    pub fn respects_bound(&self) -> bool {
        self.bound.is_none_or(|b| self.p_correct <= b + 3.0 * self.stderr)
    }
}

/// How receivers detect the transmitted point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    /// Closest point of the infinite fine lattice.
    Lattice,
    /// Closest point among the transmitted constellation (box-shaped; cubic
    /// fine lattice with a diagonal coarse sublattice only).
    Constellation,
}

/// Coordinate box of the encoder's image for a cubic fine lattice.
fn constellation_box(code: &CosetCode) -> Result<Vec<(i64, i64)>> {
    if *code.fine().structure() != Structure::Cubic {
        return Err(Error::InvalidArgument("constellation detection needs a cubic fine lattice".into()));
    }
    let t = code.quotient().transform();
    let n = t.len();
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || t[i][j] == 0));
    if !diagonal {
        return Err(Error::InvalidArgument("constellation detection needs a diagonal sublattice".into()));
    }
    let b = code.offset_range();
    Ok((0..n)
        .map(|i| {
            let lo = code.leaders().iter().map(|l| l.coords[i]).min().unwrap_or(0);
            let hi = code.leaders().iter().map(|l| l.coords[i]).max().unwrap_or(0);
            let step = t[i][i].abs();
            (lo - b * step, hi + b * step)
        })
        .collect())
}

/// Eve's correct-decision bound `vol(Λb)(2πσ²)^{−n/2} Θ_{Λe}(1/2πσ²)`.
pub fn eve_theta_bound(fine: &Lattice, coarse: &Lattice, sigma_e: f64) -> Result<f64> {
    let n = fine.dim() as f64;
    let v = 2.0 * std::f64::consts::PI * sigma_e * sigma_e;
    let theta = LatticeTheta::new(coarse.clone())?;
    let ln = fine.volume().ln() - n / 2.0 * v.ln() + theta.ln_eval(1.0 / v)?;
    Ok(ln.exp())
}

/// `Θ_A(y) / Θ_B(y)` at `y = 1/(2πσ²)`.
pub fn bound_ratio(a: &ThetaSource, b: &ThetaSource, sigma_e: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let y = 1.0 / (2.0 * std::f64::consts::PI * sigma_e * sigma_e);
    Ok((a.ln_eval(y)? - b.ln_eval(y)?).exp())
}

/// Per-trial outcome: whether Bob and Eve recover the coset.
fn run_trial(code: &CosetCode, params: &ChannelParams, detector: Detector, bounds: &Option<Vec<(i64, i64)>>, trial: u64) -> Result<(bool, bool)> {
    let mut tx = TrialRng::new(params.seed, STREAM_TX, trial);
    let label = tx.next_u64() & (code.quotient().index() - 1);
    let b = code.offset_range();
    let offset: Vec<i64> = (0..code.coarse().rank()).map(|_| tx.int_in(-b, b)).collect();
    let shift = mat_vec_left(&offset, code.quotient().transform());
    let coords: Vec<i64> = code.leader(label).coords.iter().zip(&shift).map(|(a, s)| a + s).collect();
    let x = code.fine().ambient_of(&coords);

    let receive = |stream: u64, sigma: f64| -> Result<bool> {
        let mut rng = TrialRng::new(params.seed, stream, trial);
        let y: Vec<f64> = x.iter().map(|v| v + sigma * rng.normal()).collect();
        let decided = match detector {
            Detector::Lattice => code.fine().closest_point(&y)?.coords,
            Detector::Constellation => {
                let boxes = bounds.as_ref().expect("box computed for constellation detection");
                let p = code.fine().closest_point(&y)?;
                p.coords.iter().zip(boxes).map(|(&c, &(lo, hi))| c.clamp(lo, hi)).collect()
            }
        };
        Ok(code.quotient().label(&decided) == label)
    };
    Ok((receive(STREAM_BOB, params.sigma_b)?, receive(STREAM_EVE, params.sigma_e)?))
}

/// Simulate the wiretap channel for `params.trials` independent messages.
/// Returns Bob's and Eve's estimates; Eve's carries the theta bound.
pub fn simulate_wiretap(code: &CosetCode, params: &ChannelParams, detector: Detector) -> Result<(SimResult, SimResult)> {
    params.validate()?;
    let bounds = match detector {
        Detector::Constellation => Some(constellation_box(code)?),
        Detector::Lattice => None,
    };
    let (bob, eve) = (0..params.trials)
        .into_par_iter()
        .map(|t| run_trial(code, params, detector, &bounds, t).map(|(b, e)| (b as u64, e as u64)))
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let eve_bound = eve_theta_bound(code.fine(), code.coarse(), params.sigma_e)?;
    Ok((
        SimResult::from_tally(bob, params.trials, None),
        SimResult::from_tally(eve, params.trials, Some(eve_bound)),
    ))
}
