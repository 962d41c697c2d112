use std::f64::consts::PI;

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function, `erfc(x) = (2/√π) ∫_x^∞ e^{−ξ²} dξ`.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complement `e^{x²} erfc(x)`.
///
/// Finite for all x where the result is representable; for large positive
/// x it behaves like `1/(x√π)` instead of overflowing/underflowing.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        // e^{x²}(2 − erfc(−x)); overflows only when the true value does.
        let e = (x * x).exp();
        return 2.0 * e - erfcx(-x);
    }
    if x < 6.0 {
        // erfc has full relative accuracy here and exp(x²) ≤ e^36.
        return (x * x).exp() * erfc(x);
    }
    // Laplace continued fraction
    //   erfcx(x) = (1/√π) · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))
    // evaluated bottom-up; 60 levels are ample for x ≥ 6.
    let mut tail = x;
    for k in (1..=60).rev() {
        tail = x + (k as f64 / 2.0) / tail;
    }
    1.0 / (PI.sqrt() * tail)
}
