//! Parsers for the θ grid and the dimension list.

/// `start:stop:step` (inclusive, step > 0) or a comma-separated list.
/// Range points are start + i·step, never accumulated.
pub fn parse_theta_grid(s: &str) -> Result<Vec<f64>, String> {
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("'{p}' is not a finite number"))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if !(step > 0.0) {
                return Err(format!("step must be positive, got {step}"));
            }
            if b < a {
                return Err(format!("stop {b} is below start {a}"));
            }
            let span = (b - a) / step;
            let n = (span + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return Err(format!("grid of {n} points is too large"));
            }
            (0..=n).map(|i| a + i as f64 * step).collect()
        }
        _ => return Err("expected start:stop:step or a comma-separated list".into()),
    };
    if grid.is_empty() {
        return Err("θ grid is empty".into());
    }
    Ok(grid)
}

/// Comma-separated even dimensions in [2, 12], or an inclusive `lo:hi` range
/// of the even ones.
pub fn parse_m_list(s: &str) -> Result<Vec<u32>, String> {
    let int = |p: &str| {
        p.trim()
            .parse::<u32>()
            .map_err(|_| format!("'{p}' is not a non-negative integer"))
    };
    let ms: Vec<u32> = match s.split_once(':') {
        Some((lo, hi)) => {
            let (lo, hi) = (int(lo)?, int(hi)?);
            (lo..=hi).filter(|m| m % 2 == 0).collect()
        }
        None => s.split(',').map(int).collect::<Result<_, _>>()?,
    };
    if ms.is_empty() {
        return Err("dimension list is empty".into());
    }
    if let Some(m) = ms.iter().find(|&&m| m % 2 != 0 || !(2..=12).contains(&m)) {
        return Err(format!("dimension {m} must be even and in [2, 12]"));
    }
    Ok(ms)
}

/// Comma-separated finite numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let v = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{p}' is not a finite number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(v)
}
