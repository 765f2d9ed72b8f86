use libm::erfc;

/// Gaussian tail `Q(x) = ½ erfc(x/√2)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_and_values() {
        assert_eq!(q_function(0.0), 0.5);
        for x in [0.5, 1.0, 2.0] {
            assert!((q_function(-x) - (1.0 - q_function(x))).abs() < 1e-12);
        }
        assert!((q_function(1.0) - 0.158655253931457).abs() < 1e-12);
    }
}
