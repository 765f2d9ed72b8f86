//! Fincke–Pohst sphere enumeration.

use std::collections::BTreeMap;

use super::{Lattice, LatticePoint};
use crate::error::{Error, Result};

pub const DEFAULT_POINT_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationConfig {
    /// Maximum number of points a single enumeration may produce.
    pub cap: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { cap: DEFAULT_POINT_CAP }
    }
}

/// Quadratic form in Fincke–Pohst shape:
/// `Q(x) = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)²`.
pub(crate) struct QuadForm {
    q: Vec<Vec<f64>>,
}

impl QuadForm {
    pub(crate) fn from_gram(g: &[Vec<f64>]) -> Self {
        let m = g.len();
        let mut q = g.to_vec();
        for i in 0..m {
            for j in i + 1..m {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..m {
                for l in k..m {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        QuadForm { q }
    }

    fn dim(&self) -> usize {
        self.q.len()
    }

    /// Visit every integer vector `x` with `Q(x − c) ≤ radius`. The visitor
    /// receives the vector, its value of `Q(x − c)` and may shrink the radius.
    pub(crate) fn search<F>(&self, center: &[f64], radius: f64, mut visit: F)
    where
        F: FnMut(&[i64], f64, &mut f64),
    {
        let m = self.dim();
        let mut x = vec![0i64; m];
        let mut radius = radius;
        self.level(m - 1, center, 0.0, &mut x, &mut radius, &mut visit);
    }

    fn level<F>(&self, i: usize, c: &[f64], partial: f64, x: &mut [i64], radius: &mut f64, visit: &mut F)
    where
        F: FnMut(&[i64], f64, &mut f64),
    {
        let qi = &self.q[i];
        let mut t = c[i];
        for j in i + 1..x.len() {
            t -= qi[j] * (x[j] as f64 - c[j]);
        }
        let base = t.round() as i64;
        // Schnorr–Euchner order: nondecreasing distance from t.
        let up_first = t >= base as f64;
        let mut step = 0i64;
        loop {
            let offset = if step == 0 {
                0
            } else if (step % 2 == 1) == up_first {
                (step + 1) / 2
            } else {
                -(step + 1) / 2
            };
            let xi = base + offset;
            let d = xi as f64 - t;
            let value = partial + qi[i] * d * d;
            if value > *radius {
                break;
            }
            x[i] = xi;
            if i == 0 {
                visit(x, value, radius);
            } else {
                self.level(i - 1, c, value, x, radius, visit);
            }
            step += 1;
        }
        x[i] = 0;
    }
}

impl Lattice {
    pub(crate) fn quad_form(&self) -> QuadForm {
        QuadForm::from_gram(&self.gram_f64())
    }

    /// Slightly enlarged floating radius so boundary points survive rounding;
    /// membership is then decided on exact norms.
    fn search_radius(r: f64) -> f64 {
        r + 1e-9 * r.max(1.0)
    }

    fn exact_within(&self, num: i64, r: f64) -> bool {
        (num as f64) <= r * self.norm_den as f64 * (1.0 + 1e-12)
    }

    /// All lattice points with `‖x‖² ≤ r`, sorted by coordinates.
    pub fn enumerate_points(&self, r: f64) -> Result<Vec<LatticePoint>> {
        self.enumerate_points_with(r, &EnumerationConfig::default())
    }

    pub fn enumerate_points_with(&self, r: f64, config: &EnumerationConfig) -> Result<Vec<LatticePoint>> {
        let mut coords = Vec::new();
        self.for_each_within(r, config, |x, _| coords.push(x.to_vec()))?;
        coords.sort();
        Ok(coords.into_iter().map(|c| self.point(c)).collect())
    }

    /// Calls `f(coords, norm_numerator)` for every point with `‖x‖² ≤ r`.
    pub fn for_each_within<F>(&self, r: f64, config: &EnumerationConfig, mut f: F) -> Result<()>
    where
        F: FnMut(&[i64], i64),
    {
        if !(r >= 0.0) {
            return Err(Error::Domain(r));
        }
        let form = self.quad_form();
        let center = vec![0.0; self.rank()];
        let mut count = 0usize;
        let mut over = false;
        form.search(&center, Self::search_radius(r), |x, _, radius| {
            if over {
                *radius = -1.0;
                return;
            }
            let num = self.norm_numerator(x);
            if self.exact_within(num, r) {
                count += 1;
                if count > config.cap {
                    over = true;
                    *radius = -1.0;
                    return;
                }
                f(x, num);
            }
        });
        if over {
            return Err(Error::EnumerationBudget { cap: config.cap, radius: r });
        }
        Ok(())
    }

    /// Number of lattice vectors at each squared norm `num / den` up to `r`.
    pub fn norm_counts(&self, r: f64, config: &EnumerationConfig) -> Result<BTreeMap<i64, u64>> {
        let mut counts = BTreeMap::new();
        self.for_each_within(r, config, |_, num| *counts.entry(num).or_insert(0) += 1)?;
        Ok(counts)
    }

    /// Minimum nonzero squared norm and the number of vectors achieving it.
    pub fn min_norm_and_kissing(&self) -> Result<(crate::rational::Rational, u64)> {
        let g = self.gram_f64();
        // Any basis vector bounds the minimum from above.
        let r = (0..self.rank()).map(|i| g[i][i]).fold(f64::INFINITY, f64::min);
        let counts = self.norm_counts(r, &EnumerationConfig::default())?;
        let (&num, &tau) = counts.iter().find(|(&k, _)| k > 0).expect("a basis vector lies within radius");
        Ok((crate::rational::rat(num, self.norm_den), tau))
    }

    /// Points `x` with `‖x − center‖² ≤ r` (ambient distance), paired with
    /// that squared distance. Full-rank lattices only.
    pub fn points_near(&self, center: &[f64], r: f64, config: &EnumerationConfig) -> Result<Vec<(LatticePoint, f64)>> {
        if center.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: center.len() });
        }
        if !self.is_full_rank() {
            return Err(Error::UnsupportedRank { rows: self.rank(), cols: self.dim() });
        }
        let c = self.coords_f64(center);
        let form = self.quad_form();
        let mut out = Vec::new();
        let mut over = false;
        form.search(&c, Self::search_radius(r), |x, _, radius| {
            if over {
                return;
            }
            let p = self.point(x.to_vec());
            let d: f64 = p.ambient.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
            if d <= r {
                if out.len() >= config.cap {
                    over = true;
                    *radius = -1.0;
                    return;
                }
                out.push((p, d));
            }
        });
        if over {
            return Err(Error::EnumerationBudget { cap: config.cap, radius: r });
        }
        out.sort_by(|a, b| a.0.coords.cmp(&b.0.coords));
        Ok(out)
    }

    /// Real basis coordinates `c` of the projection of `y` on the lattice
    /// span: solves `c · G = y · Bᵀ` with `B` the ambient basis.
    pub(crate) fn coords_f64(&self, y: &[f64]) -> Vec<f64> {
        let b = self.ambient_basis();
        let m = self.rank();
        let rhs: Vec<f64> = b.iter().map(|row| row.iter().zip(y).map(|(a, v)| a * v).sum()).collect();
        solve_symmetric(self.gram_f64(), rhs, m)
    }
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve_symmetric(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, m: usize) -> Vec<f64> {
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..m {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::int;

    #[test]
    fn z1_radius_one() {
        let pts = catalog::cubic(1).enumerate_points(1.0).unwrap();
        let coords: Vec<i64> = pts.iter().map(|p| p.coords[0]).collect();
        assert_eq!(coords, vec![-1, 0, 1]);
    }

    #[test]
    fn e8_and_d4_shells() {
        assert_eq!(catalog::e8().enumerate_points(2.0).unwrap().len(), 241);
        assert_eq!(catalog::e8_standard().enumerate_points(2.0).unwrap().len(), 241);
        assert_eq!(catalog::d4().enumerate_points(2.0).unwrap().len(), 25);
    }

    #[test]
    fn kissing_numbers() {
        assert_eq!(catalog::cubic(80).min_norm_and_kissing().unwrap(), (int(1), 160));
        assert_eq!(catalog::e8().min_norm_and_kissing().unwrap(), (int(2), 240));
        assert_eq!(catalog::d4().min_norm_and_kissing().unwrap(), (int(2), 24));
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = EnumerationConfig { cap: 100 };
        let err = catalog::cubic(4).enumerate_points_with(9.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { cap: 100, .. }));
    }

    #[test]
    fn points_near_a_shifted_center() {
        let z2 = catalog::cubic(2);
        let near = z2.points_near(&[0.5, 0.5], 0.5, &EnumerationConfig::default()).unwrap();
        assert_eq!(near.len(), 4);
    }
}
