use crate::error::{Error, Result};

/// Euler's Γ(x). Errors at the poles x ∈ {0, −1, −2, …}.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            function: "gamma_fn",
            detail: format!("non-finite argument {x}"),
        });
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole {
            function: "gamma_fn",
            at: x,
        });
    }
    Ok(libm::tgamma(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert!(rel(gamma_fn(0.5).unwrap(), std::f64::consts::PI.sqrt()) < 1e-15);
        assert!(rel(gamma_fn(6.0).unwrap(), 120.0) < 1e-15);
    }

    #[test]
    fn factorials_up_to_fifty() {
        let mut fact = 1.0f64;
        for n in 1..50u32 {
            fact *= n as f64;
            assert!(rel(gamma_fn(n as f64 + 1.0).unwrap(), fact) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn half_integer_duplication() {
        // Γ((m−1)/2)/Γ(m−1) = √π / (2^{m−2} Γ(m/2))
        for m in (2..=12).step_by(2) {
            let m = m as f64;
            let lhs = gamma_fn((m - 1.0) / 2.0).unwrap() / gamma_fn(m - 1.0).unwrap();
            let rhs = std::f64::consts::PI.sqrt() / (2f64.powf(m - 2.0) * gamma_fn(m / 2.0).unwrap());
            assert!(rel(lhs, rhs) < 1e-14);
        }
    }

    #[test]
    fn negative_arguments_and_poles() {
        // Γ(−1/2) = −2√π
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * std::f64::consts::PI.sqrt()) < 1e-14);
        for k in 0..5 {
            assert!(matches!(gamma_fn(-(k as f64)), Err(Error::Pole { .. })));
        }
    }
}
