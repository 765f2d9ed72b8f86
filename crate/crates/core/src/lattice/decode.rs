//! Closest-point decoding.


use super::{Lattice, LatticePoint, Structure};
use crate::error::{Error, Result};

/// Relative tolerance under which two distances count as a tie.
const TIE_TOL: f64 = 1e-9;

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.max(b).max(1e-300)
}

/// Round half toward negative infinity, so ties pick the smaller integer.
fn round_half_down(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl Lattice {
    /// The lattice point nearest to `y`. Equidistant candidates resolve to
    /// the lexicographically smallest coordinate vector.
    pub fn closest_point(&self, y: &[f64]) -> Result<LatticePoint> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: y.len() });
        }
        Ok(match self.structure() {
            Structure::Cubic => self.decode_cubic(y),
            Structure::ConstructionA(_) => self.decode_construction_a(y),
            Structure::Generic => self.decode_sphere(y),
        })
    }

    fn unit_scale(&self) -> f64 {
        2f64.powf(self.scale2() as f64 / 2.0)
    }

    fn decode_cubic(&self, y: &[f64]) -> LatticePoint {
        let s = self.unit_scale();
        self.point(y.iter().map(|v| round_half_down(v / s)).collect())
    }

    /// Loop over codewords, round each shifted target onto `2Zⁿ`, keep the
    /// best. The HNF basis is upper triangular with positive pivots, so
    /// lexicographic order on coordinates agrees with order on ambient
    /// integer vectors.
    fn decode_construction_a(&self, y: &[f64]) -> LatticePoint {
        let cache = self.ca_cache.as_ref().expect("construction A cache");
        let s = self.unit_scale();
        let t: Vec<f64> = y.iter().map(|v| v / s).collect();
        let mut best: Option<(f64, Vec<i64>)> = None;
        for c in &cache.codewords {
            let z: Vec<i64> = t
                .iter()
                .zip(c)
                .map(|(&v, &b)| 2 * round_half_down((v - b as f64) / 2.0) + b as i64)
                .collect();
            let d: f64 = t.iter().zip(&z).map(|(v, &zi)| (v - zi as f64).powi(2)).sum();
            let better = match &best {
                None => true,
                Some((bd, bz)) => {
                    if ties(d, *bd) {
                        z < *bz
                    } else {
                        d < *bd
                    }
                }
            };
            if better {
                best = Some((d, z));
            }
        }
        let (_, z) = best.expect("a code has at least one codeword");
        let coords = self.integer_coords_of(&z);
        self.point(coords)
    }

    /// Coordinates of an integer vector of the unscaled lattice.
    fn integer_coords_of(&self, z: &[i64]) -> Vec<i64> {
        // The HNF basis is upper triangular, so solve `u · B = z` column by column.
        let b = &self.ca_cache.as_ref().expect("construction A cache").hnf;
        let mut u = vec![0i64; z.len()];
        for j in 0..z.len() {
            let partial: i64 = (0..j).map(|i| u[i] * b[i][j]).sum();
            let r = z[j] - partial;
            debug_assert_eq!(r % b[j][j], 0, "vector lies in the lattice");
            u[j] = r / b[j][j];
        }
        u
    }

    /// Sphere decoding seeded by the Babai rounding estimate.
    fn decode_sphere(&self, y: &[f64]) -> LatticePoint {
        let c = self.coords_f64(y);
        let babai: Vec<i64> = c.iter().map(|v| v.round() as i64).collect();
        let babai_pt = self.point(babai);
        let mut best_d = dist2(&babai_pt.ambient, y);
        let mut best = babai_pt.coords;
        let form = self.quad_form();
        // The search metric is distance within the span; the orthogonal
        // residual is the same for every candidate.
        let proj = self.ambient_of_f64(&c);
        let residual = dist2(&proj, y);
        let start = (best_d - residual).max(0.0) * (1.0 + 1e-9) + 1e-12;
        form.search(&c, start, |x, _, radius| {
            let p = self.ambient_of(x);
            let d = dist2(&p, y);
            let take = if ties(d, best_d) {
                x < best.as_slice()
            } else {
                d < best_d
            };
            if take {
                best_d = d;
                best = x.to_vec();
            }
            *radius = (best_d - residual).max(0.0) * (1.0 + 1e-9) + 1e-12;
        });
        self.point(best)
    }

    fn ambient_of_f64(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (&u, row) in c.iter().zip(self.ambient_basis()) {
            out.iter_mut().zip(row).for_each(|(o, b)| *o += u * b);
        }
        out
    }
}
